//! Module specs: `p^e1^n1 x p^e2^n2 ...; [row; row; ...]`.
//!
//! `2^2^1 x 2^1^1; [3,0;1,1]` is `Z_4 x Z_2` with `t = [[3,0],[1,1]]`; a
//! factor may drop its multiplicity (`2^2` for `2^2^1`). The zero module is
//! `p; []`.

use lambda_core::{GroupShape, LambdaModule, Prime};

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("bad {what} `{}`", s.trim()))
}

fn parse_shape(s: &str) -> Result<(Prime, Vec<(u32, usize)>), String> {
    let mut prime: Option<u64> = None;
    let mut layers: Vec<(u32, usize)> = Vec::new();
    for factor in s.split('x') {
        let parts: Vec<&str> = factor.split('^').collect();
        let p: u64 = num(parts[0], "prime")?;
        if *prime.get_or_insert(p) != p {
            return Err("all factors must use the same prime".into());
        }
        let (e, m) = match parts.len() {
            1 if s.split('x').count() == 1 => return Ok((prime_of(p)?, Vec::new())),
            2 => (num(parts[1], "exponent")?, 1),
            3 => (num(parts[1], "exponent")?, num(parts[2], "multiplicity")?),
            _ => return Err(format!("bad factor `{}`; expected p^e^n", factor.trim())),
        };
        if e == 0 || m == 0 {
            return Err("exponents and multiplicities must be positive".into());
        }
        match layers.last_mut() {
            Some((le, lm)) if *le == e => *lm += m,
            Some((le, _)) if *le < e => return Err("factors must be listed with non-increasing exponents".into()),
            _ => layers.push((e, m)),
        }
    }
    Ok((prime_of(prime.unwrap_or(0))?, layers))
}

pub fn prime_of(p: u64) -> Result<Prime, String> {
    Prime::new(p).map_err(|_| format!("p must be prime (got {p})"))
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>, String> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| "matrix must be enclosed in [ ]".to_string())?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(';').map(|row| row.split(',').map(|e| num(e, "matrix entry")).collect()).collect()
}

pub fn parse_module(spec: &str) -> Result<LambdaModule, String> {
    let (shape, matrix) =
        spec.split_once(';').ok_or_else(|| format!("`{spec}`: expected `<shape>; [<matrix>]`"))?;
    let (p, layers) = parse_shape(shape)?;
    let rows = parse_matrix(matrix)?;
    let shape = GroupShape::new(p, &layers).map_err(|e| e.to_string())?;
    let r = shape.rank();
    if rows.len() != r || rows.iter().any(|row| row.len() != r) {
        return Err(format!("{shape} needs a {r}x{r} matrix"));
    }
    if r == 0 {
        return Ok(LambdaModule::zero(p));
    }
    let entries: Vec<i64> = rows.concat();
    LambdaModule::from_entries(shape, &entries).map_err(|e| e.to_string())
}

pub fn format_shape(shape: &GroupShape) -> String {
    if shape.is_trivial() {
        return shape.p().to_string();
    }
    let parts: Vec<String> =
        shape.layers().iter().map(|l| format!("{}^{}^{}", shape.p(), l.exponent, l.multiplicity)).collect();
    parts.join(" x ")
}

pub fn format_matrix(rows: &[Vec<u64>]) -> String {
    let rows: Vec<String> =
        rows.iter().map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(",")).collect();
    format!("[{}]", rows.join(";"))
}

pub fn format_module(m: &LambdaModule) -> String {
    format!("{}; {}", format_shape(m.shape()), format_matrix(&m.action().rows()))
}
