/// Bisection on a sign change of `f` in [a, b] until the bracket is
/// narrower than `width`. Returns the final bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    let mut fa = f(a);
    if fa == 0.0 {
        return (a, a);
    }
    if f(b) == 0.0 {
        return (b, b);
    }
    for _ in 0..200 {
        if b - a <= width {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, mid);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    (a, b)
}

/// Golden-section minimization of `f` on [a, b]; returns (argmin, min).
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    // compare with the interval ends too: minima often sit on a boundary
    let candidates = [(a, f(a)), (b, f(b)), (c, fc), (d, fd)];
    candidates.into_iter().fold((c, fc), |best, x| if x.1 < best.1 { x } else { best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_brackets_root() {
        let (a, b) = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-12);
        assert!(b - a <= 1e-12 && a <= 2f64.sqrt() && 2f64.sqrt() <= b);
    }

    #[test]
    fn golden_section_finds_kink() {
        let (x, v) = golden_section_min(|x| (x - 0.3).abs(), 0.0, 1.0, 1e-14);
        assert!((x - 0.3).abs() < 1e-13 && v < 1e-13);
        let (x, _) = golden_section_min(|x| x, 0.2, 1.0, 1e-12);
        assert_eq!(x, 0.2);
    }
}
