//! Continuous q-Hermite polynomials, μ at non-positive integer α, the
//! generating function S(r) of μ(u,v;k+1) and the polynomials F_{n+1}.

use std::f64::consts::PI;

use crate::mufun::{mu_general, mu_zwegers, MuPoint};
use crate::qcore::{
    e, qpoch_inf_many, theta11, EvalResult, ModularPoint, QError, Result, Tail, Truncation,
    C64, I, ONE, ZERO,
};
use crate::qhyper::{phi, q_appell_phi1, SeriesSpec};

/// The variable of H_n(x|q), carried as w with x = cos πw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteArg {
    pub w: C64,
    pub q: C64,
}

impl HermiteArg {
    pub fn new(w: C64, q: C64) -> Self {
        HermiteArg { w, q }
    }

    pub fn x(&self) -> C64 {
        (PI * self.w).cos()
    }
}

fn qfact(q: C64, n: usize) -> C64 {
    (1..=n).fold(ONE, |p, j| p * (1.0 - q.powi(j as i32)))
}

/// Gaussian binomial (q)_k/((q)_l (q)_{k−l}).
pub fn q_binomial(k: usize, l: usize, q: C64) -> C64 {
    if l > k {
        return ZERO;
    }
    // product form avoids dividing by a vanishing (q)_n at roots of unity
    let mut c = ONE;
    for j in 0..l {
        c *= (1.0 - q.powi((k - j) as i32)) / (1.0 - q.powi((j + 1) as i32));
    }
    c
}

/// H_k(cos πw|q) = Σ_l [k choose l]_q e^{πi(k−2l)w}.
pub fn hermite_cq(k: usize, arg: &HermiteArg) -> C64 {
    (0..=k)
        .map(|l| q_binomial(k, l, arg.q) * (PI * I * (k as f64 - 2.0 * l as f64) * arg.w).exp())
        .sum()
}

/// H_0..=H_n from 2xH_n = H_{n+1} + (1 − q^n)H_{n−1}.
pub fn hermite_by_recurrence(n: usize, arg: &HermiteArg) -> Vec<C64> {
    let x = arg.x();
    let mut h = vec![ONE, 2.0 * x];
    for m in 1..n {
        let next = 2.0 * x * h[m] - (1.0 - arg.q.powi(m as i32)) * h[m - 1];
        h.push(next);
    }
    h.truncate(n + 1);
    h
}

/// μ(u,v;−k), which equals −iq^{−1/8}H_k(cos π(u−v)|q).
pub fn mu_negative_degree(
    k: usize,
    u: C64,
    v: C64,
    tau: &ModularPoint,
    trunc: &Truncation,
) -> Result<EvalResult> {
    mu_general(&MuPoint::new(u, v, C64::new(-(k as f64), 0.0), *tau)?, trunc)
}

/// H_n as a difference of two ₁φ₁ series over ϑ₁₁(w).
pub fn hermite_two_phi11(n: usize, w: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    tau.check_off_lattice(w, "w")?;
    let q = tau.q();
    let b = q.powi(n as i32 + 1);
    let m = (1.0 + n as f64) * PI * I * w;
    let p1 = phi(&SeriesSpec::new(&[b], &[ZERO], q, e(w) * q), trunc)?.scale(m.exp());
    let p2 = phi(&SeriesSpec::new(&[b], &[ZERO], q, e(-w) * q), trunc)?.scale(-(-m).exp());
    let pre = I * tau.qpow_re(0.125) * qfact(q, n);
    Ok(p1.add(p2).scale(pre).div(theta11(w, tau, trunc)?))
}

/// F_{n+1}(cos πw|q) = (−q)^n Σ_k q^{C(k,2)+C(n−k,2)} e^{πi(n−2k)w}/((q)_k (q)_{n−k}),
/// the r^n coefficient of (re^{πiw}q, re^{−πiw}q)_∞.
#[allow(non_snake_case)]
pub fn F_capital(n: usize, arg: &HermiteArg) -> C64 {
    let q = arg.q;
    let c2 = |m: usize| (m * m.saturating_sub(1) / 2) as i32;
    let s: C64 = (0..=n)
        .map(|k| {
            q.powi(c2(k) + c2(n - k)) * (PI * I * (n as f64 - 2.0 * k as f64) * arg.w).exp()
                / (qfact(q, k) * qfact(q, n - k))
        })
        .sum();
    (-q).powi(n as i32) * s
}

/// Σ of the term magnitudes in `F_capital`, the scale a zero test compares to.
#[allow(non_snake_case)]
pub fn F_capital_scale(n: usize, arg: &HermiteArg) -> f64 {
    let q = arg.q;
    let c2 = |m: usize| (m * m.saturating_sub(1) / 2) as i32;
    let s: f64 = (0..=n)
        .map(|k| {
            (q.powi(c2(k) + c2(n - k)) * (PI * I * (n as f64 - 2.0 * k as f64) * arg.w).exp()
                / (qfact(q, k) * qfact(q, n - k)))
            .norm()
        })
        .sum();
    q.norm().powi(n as i32) * s
}

/// F_{n+1} as the terminating e^{−πinw}₁φ₁(q^{−n}; 0; q, e^{2πiw}q)(−1)^n q^{n(n+1)/2}/(q)_n.
#[allow(non_snake_case)]
pub fn F_capital_phi11(n: usize, arg: &HermiteArg, trunc: &Truncation) -> Result<C64> {
    let q = arg.q;
    let s = phi(&SeriesSpec::new(&[q.powi(-(n as i32))], &[ZERO], q, e(arg.w) * q), trunc)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(s.value * (-PI * I * n as f64 * arg.w).exp() * sign * q.powi((n * (n + 1) / 2) as i32)
        / qfact(q, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SMethod {
    /// Σ_k μ(u,v;k+1) r^k
    Direct,
    /// (A, B)_∞ μ(u,v) − irq^{7/8} ₃φ₂(q, A, B; 0, 0; q, q)
    Closed,
}

fn s_params(r: C64, u: C64, v: C64, tau: &ModularPoint) -> (C64, C64) {
    let ew = (PI * I * (u - v)).exp();
    (r * ew * tau.q(), r / ew * tau.q())
}

/// S(r) = Σ_{k≥0} μ(u,v;k+1) r^k.
#[allow(non_snake_case)]
pub fn gen_S(
    r: C64,
    u: C64,
    v: C64,
    tau: &ModularPoint,
    trunc: &Truncation,
    method: SMethod,
) -> Result<EvalResult> {
    match method {
        SMethod::Direct => {
            let mut sum = ZERO;
            let mut err: f64 = 0.0;
            let mut tail = Tail::new(trunc, "S(r)");
            let mut rk = ONE;
            let mut k = 0.0;
            loop {
                let m = mu_general(&MuPoint::new(u, v, C64::new(k + 1.0, 0.0), *tau)?, trunc)?;
                let t = m.value * rk;
                sum += t;
                err = err.max(m.err_estimate * rk.norm());
                if tail.push(t.norm(), sum.norm())? {
                    break;
                }
                rk *= r;
                k += 1.0;
            }
            Ok(EvalResult { value: sum, err_estimate: err.max(tail.err()), terms_used: tail.terms() })
        }
        SMethod::Closed => {
            let q = tau.q();
            let (a, b) = s_params(r, u, v, tau);
            let m = mu_zwegers(u, v, tau, trunc)?.mul(qpoch_inf_many(&[a, b], q, trunc)?);
            let s = phi(&SeriesSpec::new(&[q, a, b], &[ZERO, ZERO], q, q), trunc)?;
            Ok(m.add(s.scale(-I * r * tau.qpow_re(0.875))))
        }
    }
}

/// S(r) = (A, B)_∞ (μ(u,v) − irq^{7/8}/(1−q) · Φ^(1)(q; 0, 0; q²; q; A, B)).
#[allow(non_snake_case)]
pub fn gen_S_appell(r: C64, u: C64, v: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    let q = tau.q();
    let (a, b) = s_params(r, u, v, tau);
    let ap = q_appell_phi1(q, ZERO, ZERO, q * q, q, a, b, trunc)?;
    let inner = mu_zwegers(u, v, tau, trunc)?.add(ap.scale(-I * r * tau.qpow_re(0.875) / (1.0 - q)));
    Ok(inner.mul(qpoch_inf_many(&[a, b], q, trunc)?))
}

/// S(r) = (A, B)_∞ Σ_m μ(u,v;1−m) q^m r^m/(q)_m.
#[allow(non_snake_case)]
pub fn gen_S_minus_degree(
    r: C64,
    u: C64,
    v: C64,
    tau: &ModularPoint,
    trunc: &Truncation,
) -> Result<EvalResult> {
    let q = tau.q();
    let (a, b) = s_params(r, u, v, tau);
    let mut sum = ZERO;
    let mut err: f64 = 0.0;
    let mut tail = Tail::new(trunc, "S(r) minus-degree form");
    let mut c = ONE;
    let mut m = 0usize;
    loop {
        // μ(u,v;1−m) is μ(u,v) at m = 0 and μ(u,v;−(m−1)) after that
        let mu = if m == 0 {
            mu_zwegers(u, v, tau, trunc)?
        } else {
            mu_negative_degree(m - 1, u, v, tau, trunc)?
        };
        let t = mu.value * c;
        sum += t;
        err = err.max(mu.err_estimate * c.norm());
        if tail.push(t.norm(), sum.norm())? {
            break;
        }
        m += 1;
        c *= q * r / (1.0 - q.powi(m as i32));
    }
    let p = qpoch_inf_many(&[a, b], q, trunc)?;
    Ok(EvalResult { value: sum, err_estimate: err.max(tail.err()), terms_used: tail.terms() }.mul(p))
}

/// (Σ_{k=0}^{2N} e^{2πik²/(2N+1)}, Π_{j=1}^{N} (e^{2πi(2j−1)/(2N+1)} − e^{−2πi(2j−1)/(2N+1)})).
/// The sum runs over a full residue system; dropping k = 0 shifts it by 1.
pub fn gauss_sum_product(n: usize) -> Result<(C64, C64)> {
    if n == 0 || n > 500 {
        return Err(QError::Domain(format!("Gauss sum needs 1 <= N <= 500, got {n}")));
    }
    let m = (2 * n + 1) as u64;
    let ph = |k: u64| (2.0 * PI * I * ((k % m) as f64) / m as f64).exp();
    let sum = (0..=2 * n as u64).map(|k| ph(k * k % m)).sum();
    let prod = (1..=n as u64).fold(ONE, |p, j| {
        let z = ph(2 * j - 1);
        p * (z - 1.0 / z)
    });
    Ok((sum, prod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::qpoch;

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
    fn hermite_low_degrees() {
        let arg = HermiteArg::new(r(0.25), r(0.3));
        assert_eq!(hermite_cq(0, &arg), ONE);
        assert!((hermite_cq(1, &arg) - 2.0 * (0.25 * PI).cos()).norm() < 1e-15);
        let x = arg.x();
        assert!((hermite_cq(2, &arg) - (4.0 * x * x - 0.7)).norm() < 1e-14);
    }

    #[test]
    fn recurrence_matches_sum() {
        let arg = HermiteArg::new(c(0.17, 0.05), c(0.4, 0.2));
        let rec = hermite_by_recurrence(20, &arg);
        for (n, h) in rec.iter().enumerate() {
            assert!(rel(*h, hermite_cq(n, &arg)) < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn gauss_evaluation() {
        let q = c(0.3, 0.1);
        let arg = HermiteArg::new(r(0.5), q);
        for n in 1..=6 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let want = sign * qpoch(q, q * q, n as i64, &t()).unwrap().value;
            assert!((hermite_cq(2 * n, &arg) - want).norm() < 1e-12);
            assert!(hermite_cq(2 * n - 1, &arg).norm() < 1e-12);
        }
    }

    #[test]
    fn negative_degree_mu() {
        let tau = ModularPoint::new(c(0.0, 0.9)).unwrap();
        let (u, v) = (c(0.2, 0.05), c(-0.3, 0.02));
        let arg = HermiteArg::new(u - v, tau.q());
        let pre = -I * tau.qpow_re(-0.125);
        for k in [0, 1, 5, 12] {
            let m = mu_negative_degree(k, u, v, &tau, &t()).unwrap().value;
            assert!(rel(m, pre * hermite_cq(k, &arg)) < 1e-9, "k = {k}");
        }
    }

    #[test]
    fn f_capital_forms() {
        let arg = HermiteArg::new(r(0.2), r(0.3));
        assert_eq!(F_capital(0, &arg), ONE);
        for n in 0..8 {
            let a = F_capital(n, &arg);
            let b = F_capital_phi11(n, &arg, &t()).unwrap();
            assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()), "n = {n}");
        }
        let rr = 0.3;
        let ew = (PI * I * arg.w).exp();
        let want = qpoch_inf_many(&[rr * ew * arg.q, rr / ew * arg.q], arg.q, &t()).unwrap().value;
        let got: C64 = (0..40).map(|n| F_capital(n, &arg) * rr.powi(n as i32)).sum();
        assert!(rel(got, want) < 1e-10);
    }

    #[test]
    fn s_forms_agree() {
        let tau = ModularPoint::new(c(0.0, 0.9)).unwrap();
        let (u, v) = (c(0.2, 0.05), c(-0.3, 0.02));
        let rr = r(0.3);
        let d = gen_S(rr, u, v, &tau, &t(), SMethod::Direct).unwrap().value;
        let cl = gen_S(rr, u, v, &tau, &t(), SMethod::Closed).unwrap().value;
        let ap = gen_S_appell(rr, u, v, &tau, &t()).unwrap().value;
        let md = gen_S_minus_degree(rr, u, v, &tau, &t()).unwrap().value;
        assert!(rel(d, cl) < 1e-8);
        assert!(rel(cl, ap) < 1e-9);
        assert!(rel(d, md) < 1e-8);
        let s0 = gen_S(ZERO, u, v, &tau, &t(), SMethod::Direct).unwrap().value;
        assert!(rel(s0, mu_zwegers(u, v, &tau, &t()).unwrap().value) < 1e-14);
    }

    #[test]
    fn two_phi11_expression() {
        let tau = ModularPoint::new(c(0.0, 0.9)).unwrap();
        let w = c(0.5, 0.03);
        let arg = HermiteArg::new(w, tau.q());
        for n in 0..=8 {
            let a = hermite_two_phi11(n, w, &tau, &t()).unwrap().value;
            assert!(rel(a, hermite_cq(n, &arg)) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn gauss_sums() {
        for (n, tol) in [(1, 1e-12), (5, 1e-11), (30, 1e-10)] {
            let (s, p) = gauss_sum_product(n).unwrap();
            assert!((s - p).norm() <= tol, "N = {n}: {s} vs {p}");
        }
        assert!(gauss_sum_product(0).is_err());
    }
}
