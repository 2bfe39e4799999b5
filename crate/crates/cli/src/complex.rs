//! Complex literals: "a", "a+bi", "a-bi", "bi", with decimal reals.

use qmu::qcore::C64;

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let s = s.trim();
    let bad = || format!("invalid complex literal {s:?}");
    if s.is_empty() {
        return Err(bad());
    }
    let real = |t: &str| -> Result<f64, String> {
        // f64::from_str also takes "inf" and "nan", which are not literals here
        if !t.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
            return Err(bad());
        }
        t.parse::<f64>().map_err(|_| bad())
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(real(s)?, 0.0));
    };
    let b = body.as_bytes();
    let split = (1..b.len()).rev().find(|&k| (b[k] == b'+' || b[k] == b'-') && !matches!(b[k - 1], b'e' | b'E'));
    let unit = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(t),
    };
    match split {
        Some(k) => Ok(C64::new(real(&body[..k])?, unit(&body[k..])?)),
        None => Ok(C64::new(0.0, unit(body)?)),
    }
}

/// Shortest text that parses back to the same f64.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        return format_real(z.re);
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_real(z.re), sign, format_real(z.im.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literals() {
        assert_eq!(parse_complex("0.25").unwrap(), C64::new(0.25, 0.0));
        assert_eq!(parse_complex("0.2+0.05i").unwrap(), C64::new(0.2, 0.05));
        assert_eq!(parse_complex("-0.1-0.02i").unwrap(), C64::new(-0.1, -0.02));
        assert_eq!(parse_complex("0.9i").unwrap(), C64::new(0.0, 0.9));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3-2e-4i").unwrap(), C64::new(1e-3, -2e-4));
        for s in ["", "i2", "1+2", "(1+2i)", "inf", "nan", "1+nani", "0.1j", "1..2"] {
            assert!(parse_complex(s).is_err(), "{s:?} accepted");
        }
    }

    proptest! {
        #[test]
        fn round_trip(re in -1e20f64..1e20, im in -1e20f64..1e20, tiny in any::<bool>()) {
            let z = if tiny { C64::new(re * 1e-30, im * 1e-30) } else { C64::new(re, im) };
            let w = parse_complex(&format_complex(z)).unwrap();
            prop_assert_eq!(w.re.to_bits(), z.re.to_bits());
            prop_assert_eq!(w.im.to_bits(), z.im.to_bits());
        }
    }
}
