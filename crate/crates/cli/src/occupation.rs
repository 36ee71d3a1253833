use std::collections::HashMap;

use bosonlaw::OccupationVector;

/// Parse `1,2,0`, `(1,2,0)` or a parameterized family such as `m,m,m:m=4`
/// or `3m-2,2,0:m=3`. Entries are integer linear expressions in the bound names.
pub fn parse_occupation(s: &str) -> Result<OccupationVector, String> {
    let (template, bindings) = match s.split_once(':') {
        Some((t, b)) => (t, parse_bindings(b)?),
        None => (s, HashMap::new()),
    };
    let t = template.trim();
    let t = t.strip_prefix('(').unwrap_or(t);
    let t = t.strip_suffix(')').unwrap_or(t);
    if t.trim().is_empty() {
        return Err(format!("empty occupation vector '{s}'"));
    }
    let counts = t
        .split(',')
        .map(|e| {
            let v = eval_linear(e, &bindings).map_err(|msg| format!("{msg} in '{s}'"))?;
            usize::try_from(v).map_err(|_| format!("photon count {e} = {v} is negative in '{s}'"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OccupationVector::new(counts))
}

fn parse_bindings(s: &str) -> Result<HashMap<String, i64>, String> {
    s.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("expected name=value, found '{kv}'"))?;
            let k = k.trim();
            if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphabetic()) {
                return Err(format!("bad parameter name '{k}'"));
            }
            let v = v.trim().parse::<i64>().map_err(|e| format!("bad value for '{k}': {e}"))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

/// Sum of terms `[coef][*]name` or `coef`, joined by `+` and `-`.
fn eval_linear(expr: &str, bindings: &HashMap<String, i64>) -> Result<i64, String> {
    let e: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if e.is_empty() {
        return Err("empty entry".into());
    }
    let mut total = 0i64;
    let mut rest = e.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let sign = if let Some(r) = rest.strip_prefix('+') {
            rest = r;
            1
        } else if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            -1
        } else if first {
            1
        } else {
            return Err(format!("cannot read '{e}'"));
        };
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
        let (coef, name) = term.split_at(digits);
        let name = name.strip_prefix('*').unwrap_or(name);
        let coef = if coef.is_empty() {
            if name.is_empty() {
                return Err(format!("cannot read '{e}'"));
            }
            1
        } else {
            coef.parse::<i64>().map_err(|err| format!("bad number '{coef}': {err}"))?
        };
        let value = if name.is_empty() {
            coef
        } else {
            let v = bindings.get(name).ok_or_else(|| format!("unbound parameter '{name}'"))?;
            coef * v
        };
        total += sign * value;
    }
    Ok(total)
}
