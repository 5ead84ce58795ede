use num_complex::Complex64;

use crate::{CliError, CliResult};

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn number(s: &str, flag: &str) -> CliResult<f64> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => usage(format!("{flag}: `{s}` is not a finite number")),
    }
}

/// `start:stop:step` with the last point pinned to `stop`.
fn range(s: &str, flag: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, h] = parts[..] else {
        return usage(format!("{flag}: range `{s}` must be start:stop:step"));
    };
    let (a, b, h) = (number(a, flag)?, number(b, flag)?, number(h, flag)?);
    if h <= 0.0 || b < a {
        return usage(format!(
            "{flag}: range `{s}` needs start <= stop and step > 0"
        ));
    }
    let steps = (b - a) / h;
    let count = steps.round();
    if (steps - count).abs() > 1e-9 * count.max(1.0) {
        return usage(format!("{flag}: step does not divide `{s}` evenly"));
    }
    if count > 1e6 {
        return usage(format!("{flag}: range `{s}` has too many points"));
    }
    let count = count as u32;
    Ok((0..=count)
        .map(|i| {
            if i == count {
                b
            } else {
                a + (b - a) * f64::from(i) / f64::from(count)
            }
        })
        .collect())
}

/// Comma list of values or ranges, sorted and deduplicated.
pub fn real_list(s: &str, flag: &str) -> CliResult<Vec<f64>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        if item.contains(':') {
            out.extend(range(item, flag)?);
        } else {
            out.push(number(item, flag)?);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    Ok(out)
}

pub fn uint_list(s: &str, flag: &str) -> CliResult<Vec<u32>> {
    real_list(s, flag)?
        .into_iter()
        .map(|v| {
            if v >= 0.0 && v.fract() == 0.0 && v <= f64::from(u32::MAX) {
                Ok(v as u32)
            } else {
                usage(format!("{flag}: `{v}` is not a nonnegative integer"))
            }
        })
        .collect()
}

/// `a`, `bi`, `a+bi`, `a-bi`; `j` is accepted in place of `i`.
pub fn complex(s: &str, flag: &str) -> CliResult<Complex64> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(number(t, flag)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let im = |s: &str| -> CliResult<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => number(s, flag),
        }
    };
    match split {
        Some(i) => Ok(Complex64::new(number(&body[..i], flag)?, im(&body[i..])?)),
        None => Ok(Complex64::new(0.0, im(body)?)),
    }
}

pub fn complex_list(s: &str, flag: &str) -> CliResult<Vec<Complex64>> {
    let mut out = s
        .split(',')
        .map(|z| complex(z, flag))
        .collect::<CliResult<Vec<_>>>()?;
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    out.dedup();
    Ok(out)
}
