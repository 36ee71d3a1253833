/// Largest n whose factorial is stored exactly.
pub const EXACT_FACTORIAL_LIMIT: usize = 20;

const FACTORIALS: [u64; EXACT_FACTORIAL_LIMIT + 1] = {
    let mut t = [1u64; EXACT_FACTORIAL_LIMIT + 1];
    let mut i = 1;
    while i <= EXACT_FACTORIAL_LIMIT {
        t[i] = t[i - 1] * i as u64;
        i += 1;
    }
    t
};

/// n! exactly, for n ≤ 20.
pub fn factorial_exact(n: usize) -> Option<u64> {
    FACTORIALS.get(n).copied()
}

/// n! as a double (exact up to 20!, product beyond).
pub fn factorial(n: usize) -> f64 {
    match factorial_exact(n) {
        Some(v) => v as f64,
        None => (EXACT_FACTORIAL_LIMIT + 1..=n).fold(FACTORIALS[EXACT_FACTORIAL_LIMIT] as f64, |a, k| a * k as f64),
    }
}

/// ln n!.
pub fn ln_factorial(n: usize) -> f64 {
    match factorial_exact(n) {
        Some(v) => (v as f64).ln(),
        None => (EXACT_FACTORIAL_LIMIT + 1..=n)
            .fold((FACTORIALS[EXACT_FACTORIAL_LIMIT] as f64).ln(), |a, k| a + (k as f64).ln()),
    }
}
