//! Basic hypergeometric series ᵣφₛ and ᵣψₛ, the q-Appell double series Φ^(1)
//! and Jackson's second q-Bessel function.

use crate::qcore::{
    qpoch_inf, EvalResult, ModularPoint, QError, Result, Tail, Truncation, C64, FACTOR_EPS, ONE,
    ZERO,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub upper: Vec<C64>,
    pub lower: Vec<C64>,
    pub q: C64,
    pub argument: C64,
}

impl SeriesSpec {
    pub fn new(upper: &[C64], lower: &[C64], q: C64, argument: C64) -> Self {
        SeriesSpec { upper: upper.to_vec(), lower: lower.to_vec(), q, argument }
    }

    fn excess(&self) -> i32 {
        self.lower.len() as i32 - self.upper.len() as i32
    }
}

fn signed_qpow(qn: C64, p: i32) -> C64 {
    // ((−1)^n q^{n(n−1)/2})^p ratio between consecutive n is (−q^n)^p
    (-qn).powi(p)
}

/// ᵣφₛ(a; b; q, x) summed by its term ratio.
pub fn phi(spec: &SeriesSpec, trunc: &Truncation) -> Result<EvalResult> {
    let q = spec.q;
    let p = spec.excess() + 1;
    let mut tail = Tail::new(trunc, "phi");
    let (mut t, mut sum, mut qn) = (ONE, ONE, ONE);
    let mut n = 0usize;
    loop {
        let mut num = ONE;
        for &a in &spec.upper {
            let f = 1.0 - a * qn;
            if f.norm() < FACTOR_EPS {
                return Ok(EvalResult::exact(sum, n + 1));
            }
            num *= f;
        }
        let mut den = 1.0 - q * qn;
        for &b in &spec.lower {
            let f = 1.0 - b * qn;
            if f.norm() < FACTOR_EPS {
                return Err(QError::PoleHit(format!("phi: lower parameter {b} hits q^-{n}")));
            }
            den *= f;
        }
        t *= num / den * signed_qpow(qn, p) * spec.argument;
        sum += t;
        n += 1;
        if tail.push(t.norm(), sum.norm())? {
            break;
        }
        qn *= q;
    }
    Ok(EvalResult { value: sum, err_estimate: tail.err(), terms_used: tail.terms() + 1 })
}

/// ᵣψₛ(a; b; q, x), both tails grown independently from n = 0.
pub fn psi(spec: &SeriesSpec, trunc: &Truncation) -> Result<EvalResult> {
    let q = spec.q;
    let x = spec.argument;
    if x == ZERO {
        return Err(QError::Domain("psi: zero argument".into()));
    }
    let p = spec.excess();
    let mut sum = ONE;
    let mut terms = 1;
    let mut err: f64 = 0.0;

    // n ≥ 0
    let mut tail = Tail::new(trunc, "psi");
    let (mut t, mut qn) = (ONE, ONE);
    'pos: loop {
        let mut num = ONE;
        for &a in &spec.upper {
            let f = 1.0 - a * qn;
            if f.norm() < FACTOR_EPS {
                break 'pos;
            }
            num *= f;
        }
        let mut den = ONE;
        for &b in &spec.lower {
            let f = 1.0 - b * qn;
            if f.norm() < FACTOR_EPS {
                return Err(QError::PoleHit(format!("psi: lower parameter {b} hits a pole")));
            }
            den *= f;
        }
        t *= num / den * signed_qpow(qn, p) * x;
        sum += t;
        if tail.push(t.norm(), sum.norm())? {
            break;
        }
        qn *= q;
    }
    err = err.max(tail.err());
    terms += tail.terms();

    // n < 0: from −n to −n−1 multiply by Π(1−b q^{−n−1})/Π(1−a q^{−n−1}) · (−q^{n+1})^p / x.
    // With p = #lower − #upper the powers of q cancel factor by factor, leaving
    // Π(q^{n+1}−b)/Π(q^{n+1}−a) · (−1)^p / x, which stays finite for small |q|.
    let mut tail = Tail::new(trunc, "psi");
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let mut t = ONE;
    let mut qn1 = q;
    'neg: loop {
        let mut num = ONE;
        for &b in &spec.lower {
            let f = qn1 - b;
            if f.norm() < FACTOR_EPS * qn1.norm() {
                break 'neg;
            }
            num *= f;
        }
        let mut den = ONE;
        for &a in &spec.upper {
            let f = qn1 - a;
            if f.norm() < FACTOR_EPS * qn1.norm() {
                return Err(QError::PoleHit(format!("psi: upper parameter {a} hits a pole")));
            }
            den *= f;
        }
        t *= num / den * sign / x;
        sum += t;
        if tail.push(t.norm(), sum.norm())? {
            break;
        }
        qn1 *= q;
    }
    err = err.max(tail.err());
    terms += tail.terms();
    Ok(EvalResult { value: sum, err_estimate: err, terms_used: terms })
}

/// Φ^(1)(a; b₁, b₂; c; q; x, y), summed over square shells max(m, n) = k.
#[allow(clippy::too_many_arguments)]
pub fn q_appell_phi1(
    a: C64,
    b1: C64,
    b2: C64,
    c: C64,
    q: C64,
    x: C64,
    y: C64,
    trunc: &Truncation,
) -> Result<EvalResult> {
    if x.norm() >= 1.0 || y.norm() >= 1.0 {
        return Err(QError::Domain(format!("q-Appell series needs |x|, |y| < 1, got {x}, {y}")));
    }
    // diag[j] = (a)_j/(c)_j, left[m] = (b1)_m x^m/(q)_m, right[n] = (b2)_n y^n/(q)_n
    let mut diag = vec![ONE];
    let mut left = vec![ONE];
    let mut right = vec![ONE];
    let mut sum = ONE;
    let mut tail = Tail::new(trunc, "q-Appell");
    let mut k = 0usize;
    loop {
        k += 1;
        for _ in 0..2 {
            let j = diag.len() - 1;
            let qj = q.powi(j as i32);
            let dc = 1.0 - c * qj;
            if dc.norm() < FACTOR_EPS {
                return Err(QError::PoleHit(format!("q-Appell: c = {c} hits q^-{j}")));
            }
            diag.push(diag[j] * (1.0 - a * qj) / dc);
        }
        let qk = q.powi(k as i32 - 1);
        let qq = 1.0 - q * qk;
        left.push(left[k - 1] * (1.0 - b1 * qk) / qq * x);
        right.push(right[k - 1] * (1.0 - b2 * qk) / qq * y);
        let mut shell = ZERO;
        let mut big: f64 = 0.0;
        for j in 0..=k {
            let t = diag[k + j] * left[k] * right[j];
            shell += t;
            big = big.max(t.norm());
            if j < k {
                let t = diag[k + j] * left[j] * right[k];
                shell += t;
                big = big.max(t.norm());
            }
        }
        sum += shell;
        if tail.push(big, sum.norm())? {
            break;
        }
    }
    Ok(EvalResult { value: sum, err_estimate: tail.err(), terms_used: (k + 1) * (k + 1) })
}

/// J_ν^{(2)}(x;q) with (x/2)^ν := exp(ν·log_half_x) for a caller-chosen logarithm.
pub fn q_bessel_j2_with_log(
    nu: C64,
    log_half_x: C64,
    tau: &ModularPoint,
    trunc: &Truncation,
) -> Result<EvalResult> {
    let q = tau.q();
    let b = tau.qpow(nu + 1.0);
    let half_x_sq = (2.0 * log_half_x).exp();
    let pre = qpoch_inf(b, q, trunc)?.div(qpoch_inf(q, q, trunc)?);
    let pow = (nu * log_half_x).exp();
    let s = phi(&SeriesSpec::new(&[], &[b], q, -half_x_sq * b), trunc)?;
    Ok(pre.mul(s).scale(pow))
}

/// J_ν^{(2)}(x;q) = (q^{ν+1})_∞/(q)_∞ (x/2)^ν ₀φ₁(−; q^{ν+1}; q, −x²q^{ν+1}/4),
/// principal branch for (x/2)^ν.
pub fn q_bessel_j2(nu: C64, x: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    if x == ZERO {
        let q = tau.q();
        let b = tau.qpow(nu + 1.0);
        let pre = qpoch_inf(b, q, trunc)?.div(qpoch_inf(q, q, trunc)?);
        return if nu == ZERO {
            Ok(pre)
        } else if nu.re > 0.0 {
            Ok(EvalResult::exact(ZERO, 0))
        } else {
            Err(QError::Domain(format!("(x/2)^nu undefined at x = 0 for nu = {nu}")))
        };
    }
    q_bessel_j2_with_log(nu, (x / 2.0).ln(), tau, trunc)
}

/// The ₁φ₁ form (x/2)^ν/(q)_∞ · ₁φ₁(−x²/4; 0; q, q^{ν+1}).
pub fn q_bessel_j2_phi11(
    nu: C64,
    log_half_x: C64,
    tau: &ModularPoint,
    trunc: &Truncation,
) -> Result<EvalResult> {
    let q = tau.q();
    let half_x_sq = (2.0 * log_half_x).exp();
    let s = phi(&SeriesSpec::new(&[-half_x_sq], &[ZERO], q, tau.qpow(nu + 1.0)), trunc)?;
    let pow = (nu * log_half_x).exp();
    Ok(s.div(qpoch_inf(q, q, trunc)?).scale(pow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{qpoch, qpoch_inf_many};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn r(x: f64) -> C64 {
        c(x, 0.0)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / (a.norm() + b.norm() + 1e-300)
    }

    fn t() -> Truncation {
        Truncation::tight()
    }

    #[test]
    fn phi_trivial_and_terminating() {
        let q = r(0.3);
        let s = SeriesSpec::new(&[ZERO], &[r(0.5)], q, ZERO);
        assert_eq!(phi(&s, &t()).unwrap().value, ONE);

        let a = q.powi(-2);
        let x = c(0.4, 0.2);
        let s = SeriesSpec::new(&[a, ZERO], &[], q, x);
        let got = phi(&s, &t()).unwrap();
        assert_eq!(got.terms_used, 3);
        let mut direct = ZERO;
        for n in 0..3 {
            let num = qpoch(a, q, n, &t()).unwrap().value;
            let den = qpoch(q, q, n, &t()).unwrap().value;
            direct += num / den * ((-1.0f64).powi(n as i32) * q.powi((n * (n - 1) / 2) as i32)).powi(-1) * x.powi(n as i32);
        }
        assert!(rel(got.value, direct) < 1e-13);
        assert_eq!(phi(&s, &t()).unwrap().value, got.value);
    }

    #[test]
    fn heine_transformation() {
        let q = r(0.3);
        let heine = |a: C64, b: C64, cc: C64, z: C64| {
            let pre = qpoch_inf_many(&[a * z, cc / a], q, &t()).unwrap().value
                / qpoch_inf_many(&[z, cc], q, &t()).unwrap().value;
            pre * phi(&SeriesSpec::new(&[a, a * b * z / cc], &[a * z], q, cc / a), &t()).unwrap().value
        };
        let (a, b, cc, z) = (r(0.6), r(0.4), r(0.5), r(0.6));
        let lhs = phi(&SeriesSpec::new(&[a, b], &[cc], q, z), &t()).unwrap().value;
        assert!(rel(lhs, heine(a, b, cc, z)) < 1e-11);

        // at a = 0.2, c/a = 2.5 and the first form diverges; iterate twice instead
        let (a, b, cc, z) = (r(0.2), r(0.4), r(0.5), r(0.6));
        let lhs = phi(&SeriesSpec::new(&[a, b], &[cc], q, z), &t()).unwrap().value;
        let pre = qpoch_inf(a * b * z / cc, q, &t()).unwrap().value / qpoch_inf(z, q, &t()).unwrap().value;
        let rhs = pre * phi(&SeriesSpec::new(&[cc / a, cc / b], &[cc], q, a * b * z / cc), &t()).unwrap().value;
        assert!(rel(lhs, rhs) < 1e-11);
        assert!(phi(&SeriesSpec::new(&[a, a * b * z / cc], &[a * z], q, cc / a), &t()).is_err());
    }

    #[test]
    fn ramanujan_sum() {
        let q = r(0.25);
        let (a, b, z) = (r(0.7), r(0.3), r(0.5));
        let lhs = psi(&SeriesSpec::new(&[a], &[b], q, z), &t()).unwrap().value;
        let rhs = qpoch_inf_many(&[a * z, q / (a * z), q, b / a], q, &t()).unwrap().value
            / qpoch_inf_many(&[z, b / (a * z), b, q / a], q, &t()).unwrap().value;
        assert!(rel(lhs, rhs) < 1e-11);
    }

    #[test]
    fn psi_negative_side_matches_pochhammer() {
        let q = c(0.2, 0.1);
        let (a, b, d, z) = (c(0.3, 0.1), c(0.6, -0.2), c(-0.4, 0.3), c(0.45, 0.05));
        let spec = SeriesSpec::new(&[a], &[ZERO, d], q, z);
        let got = psi(&spec, &t()).unwrap().value;
        let mut direct = ZERO;
        for n in -18i64..18 {
            let num = qpoch(a, q, n, &t()).unwrap().value;
            let den = qpoch(d, q, n, &t()).unwrap().value;
            let sg = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            direct += num / den * sg * q.powf((n * (n - 1)) as f64 / 2.0) * z.powi(n as i32);
        }
        assert!(rel(got, direct) < 1e-12, "{got} vs {direct}");
        let _ = b;
    }

    #[test]
    fn appell_degenerate_cases() {
        let q = r(0.3);
        let a = c(0.2, 0.1);
        let cc = r(0.5);
        let v = q_appell_phi1(a, ZERO, ZERO, cc, q, ZERO, ZERO, &t()).unwrap().value;
        assert_eq!(v, ONE);
        let x = c(0.4, -0.2);
        let v = q_appell_phi1(a, ZERO, ZERO, cc, q, x, ZERO, &t()).unwrap().value;
        let s = phi(&SeriesSpec::new(&[a, ZERO], &[cc], q, x), &t()).unwrap().value;
        assert!(rel(v, s) < 1e-14);
    }

    #[test]
    fn andrews_formula() {
        let q = ModularPoint::new(c(0.0, 0.9)).unwrap().q();
        let (a, b, cc, d, ee, x) = (r(0.3), c(0.2, 0.1), r(0.4), r(0.5), r(-0.2), r(0.35));
        let lhs = phi(&SeriesSpec::new(&[a, b, cc], &[d, ee], q, x), &t()).unwrap().value;
        let pre = qpoch_inf_many(&[a * x, b, cc], q, &t()).unwrap().value
            / qpoch_inf_many(&[x, d, ee], q, &t()).unwrap().value;
        let rhs = pre * q_appell_phi1(x, d / b, ee / cc, a * x, q, b, cc, &t()).unwrap().value;
        assert!(rel(lhs, rhs) < 1e-10);
    }

    #[test]
    fn bessel_forms() {
        let tau = ModularPoint::from_nome(r(0.3)).unwrap();
        assert!(rel(q_bessel_j2(ZERO, ZERO, &tau, &t()).unwrap().value, qpoch_inf(q_of(&tau), q_of(&tau), &t()).unwrap().value / qpoch_inf(q_of(&tau), q_of(&tau), &t()).unwrap().value) < 1e-15);
        let nu = r(0.7);
        let l = (r(0.5) / 2.0).ln();
        let a = q_bessel_j2_with_log(nu, l, &tau, &t()).unwrap().value;
        let b = q_bessel_j2_phi11(nu, l, &tau, &t()).unwrap().value;
        assert!(rel(a, b) < 1e-11);

        // ν = 2, x = 0.4: direct summation of the ₀φ₁ terms
        let q = 0.3f64;
        let x = 0.4f64;
        let mut s = 0.0;
        for n in 0..40 {
            let mut pq = 1.0;
            let mut pb = 1.0;
            for j in 0..n {
                pq *= 1.0 - q.powi(j + 1);
                pb *= 1.0 - q.powi(3 + j);
            }
            s += q.powi(n * (n - 1)) * (-x * x * q.powi(3) / 4.0).powi(n) / (pq * pb);
        }
        let mut pre = 1.0;
        for j in 0..200 {
            pre *= (1.0 - q.powi(3 + j)) / (1.0 - q.powi(1 + j));
        }
        let direct = pre * (x / 2.0).powi(2) * s;
        let got = q_bessel_j2(r(2.0), r(x), &tau, &t()).unwrap().value;
        assert!(rel(got, r(direct)) < 1e-12, "{got} vs {direct}");
    }

    fn q_of(t: &ModularPoint) -> C64 {
        t.q()
    }
}
