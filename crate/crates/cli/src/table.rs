//! One-parameter sweeps: `--n 0..10` (integers, inclusive) or
//! `--q 0.1:0.5:0.05` (lo:hi:step, inclusive; `0.8i:1.2i:0.1i` sweeps the imaginary axis).

use serde_json::json;

use crate::complex::format_real;
use crate::params::Params;
use crate::CliError;

const MAX_ROWS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: String,
    pub values: Vec<String>,
}

fn decimals(s: &str) -> usize {
    let mant = s.split(['e', 'E']).next().unwrap_or(s);
    mant.split_once('.').map_or(0, |(_, f)| f.len())
}

pub fn parse_range(key: &str, s: &str) -> Result<Vec<String>, CliError> {
    let bad = |why: &str| CliError::Parse(format!("--{key}: malformed range {s:?}: {why}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad("bounds must be integers"))?;
        let b: i64 = b.trim().parse().map_err(|_| bad("bounds must be integers"))?;
        if b < a {
            return Err(bad("empty range"));
        }
        if (b - a) as u64 >= MAX_ROWS as u64 {
            return Err(bad("too many rows"));
        }
        return Ok((a..=b).map(|n| n.to_string()).collect());
    }
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(bad("expected lo:hi:step or a..b"));
    }
    let imag = parts.iter().filter(|p| p.ends_with('i')).count();
    if imag != 0 && imag != 3 {
        return Err(bad("mixes real and imaginary bounds"));
    }
    let strip = |p: &str| if imag == 3 { p[..p.len() - 1].to_string() } else { p.to_string() };
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| strip(p).parse::<f64>().ok().filter(|x| x.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(|| bad("bounds must be decimal numbers"))?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || hi < lo {
        return Err(bad("need lo <= hi and step > 0"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > MAX_ROWS {
        return Err(bad("too many rows"));
    }
    let prec = parts.iter().map(|p| decimals(&strip(p))).max().unwrap_or(0);
    let unit = if imag == 3 { "i" } else { "" };
    Ok((0..count).map(|k| format!("{:.prec$}{unit}", lo + k as f64 * step)).collect())
}

/// Pulls the single swept parameter out of `p`.
pub fn split_sweep(p: &mut Params) -> Result<Sweep, CliError> {
    let swept: Vec<String> =
        p.entries().filter(|(_, v)| v.contains("..") || v.contains(':')).map(|(k, _)| k.to_string()).collect();
    match swept.as_slice() {
        [key] => {
            let raw = p.take(key).expect("key was just listed");
            Ok(Sweep { key: key.clone(), values: parse_range(key, &raw)? })
        }
        [] => Err(CliError::Parse("table needs one parameter given as a range, e.g. --n 0..10 or --q 0.1:0.5:0.05".into())),
        _ => Err(CliError::Parse(format!("only one parameter may be swept, got {}", swept.join(", ")))),
    }
}

pub struct Row {
    pub param: String,
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

pub fn csv(rows: &[Row]) -> String {
    let mut out = String::from("param,re,im,err\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.param, format_real(r.re), format_real(r.im), format_real(r.err)));
    }
    out
}

pub fn json(rows: &[Row]) -> String {
    let v: Vec<_> = rows
        .iter()
        .map(|r| {
            let param = r.param.parse::<f64>().map_or_else(|_| json!(r.param), |x| json!(x));
            json!({ "param": param, "re": r.re, "im": r.im, "err": r.err })
        })
        .collect();
    serde_json::to_string_pretty(&v).expect("rows serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("n", "0..4").unwrap(), ["0", "1", "2", "3", "4"]);
        assert_eq!(parse_range("q", "0.05:0.30:0.05").unwrap(), ["0.05", "0.10", "0.15", "0.20", "0.25", "0.30"]);
        assert_eq!(parse_range("tau", "0.8i:1.0i:0.1i").unwrap(), ["0.8i", "0.9i", "1.0i"]);
        for s in ["4..0", "a..b", "0.1:0.5", "0.5:0.1:0.1", "0.1:0.5:0", "0.1i:0.5:0.1", "1:2:x"] {
            assert!(parse_range("x", s).is_err(), "{s:?} accepted");
        }
    }
}
