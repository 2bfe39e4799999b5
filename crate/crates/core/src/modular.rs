//! The non-holomorphic completion μ̃ of μ and the modified completion ν̃ of
//! μ(u,v;k+1), with their transformations under τ ↦ τ+1 and τ ↦ −1/τ.

use std::f64::consts::PI;

use crate::mufun::{mu_general, mu_zwegers, MuPoint};
use crate::qcore::{bilateral, EvalResult, ModularPoint, QError, Result, Truncation, C64, I};
use crate::qhermite::{hermite_cq, F_capital, F_capital_scale, HermiteArg};

/// E(x) = 2∫₀^x e^{−πz²}dz = erf(√π x).
#[allow(non_snake_case)]
pub fn E_func(x: f64) -> f64 {
    libm::erf(PI.sqrt() * x)
}

/// ln erfc(x) for x ≥ 0, past the point where erfc itself underflows.
fn ln_erfc(x: f64) -> f64 {
    if x < 25.0 {
        return libm::erfc(x).ln();
    }
    // erfc(x) = e^{−x²}/(x√π) Σ (−1)^k (2k−1)!!/(2x²)^k
    let t = 1.0 / (2.0 * x * x);
    let (mut s, mut c) = (1.0, 1.0);
    for k in 1..8 {
        c *= -((2 * k - 1) as f64) * t;
        s += c;
    }
    -x * x - (x * PI.sqrt()).ln() + s.ln()
}

/// t = Im τ and a = Im u/Im τ, the data the completion depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletionContext {
    pub u: C64,
    pub tau: ModularPoint,
    pub t: f64,
    pub a_ratio: f64,
}

impl CompletionContext {
    pub fn new(u: C64, tau: ModularPoint) -> Self {
        let t = tau.tau().im;
        CompletionContext { u, tau, t, a_ratio: u.im / t }
    }
}

/// R(u;τ) = Σ_{ν∈Z+1/2} {sgn ν − E((ν+a)√(2t))}(−1)^{ν−1/2} e^{−πiν²τ−2πiνu}.
/// sgn ν − E(z) is ±erfc(±√π z), so both tails use erfc of a positive
/// argument and the Gaussian decay is combined with the exponential in logs.
#[allow(non_snake_case)]
pub fn R_func(u: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    let ctx = CompletionContext::new(u, *tau);
    let s2t = (2.0 * ctx.t).sqrt();
    let warm = ctx.a_ratio.abs().ceil() as usize + 2;
    bilateral(trunc, "R", warm, |n| {
        let nu = n as f64 + 0.5;
        let z = PI.sqrt() * (nu + ctx.a_ratio) * s2t;
        let (sign, lz) = if nu > 0.0 { (1.0, ln_erfc_signed(z)) } else { (-1.0, ln_erfc_signed(-z)) };
        let sg = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let ex = -PI * I * nu * nu * tau.tau() - 2.0 * PI * I * nu * u;
        Ok(sign * sg * (ex + lz).exp())
    })
}

/// ln erfc for any real argument; erfc(x) ∈ (1, 2) for x < 0.
fn ln_erfc_signed(x: f64) -> f64 {
    if x >= 0.0 {
        ln_erfc(x)
    } else {
        libm::erfc(x).ln()
    }
}

/// μ̃(u,v;τ) = μ(u,v;τ) + (i/2)R(u−v;τ).
pub fn mu_tilde(u: C64, v: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    let m = mu_zwegers(u, v, tau, trunc)?;
    let r = R_func(u - v, tau, trunc)?;
    Ok(m.add(r.scale(0.5 * I)))
}

/// Which closed form of the ν̃ correction to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuVariant {
    /// μ(k+1)/F_{k+1} + (i/2)(R + 2q^{−1/8}Σ_l q^l/(q)_l·F_{k−l+1}/F_{k+1}·H_{l−1})
    Consistent,
    /// μ(k+1)/F_{k+1} + (1/2i)(R − 2q^{−1/8}Σ_l …), the printed sign pattern
    Printed,
}

/// ν̃(u,v;k,τ), the completion rebuilt from μ(u,v;k+1).
pub fn nu_tilde(
    u: C64,
    v: C64,
    k: usize,
    tau: &ModularPoint,
    variant: NuVariant,
    trunc: &Truncation,
) -> Result<EvalResult> {
    if k == 0 {
        return Err(QError::Domain("nu_tilde needs k >= 1".into()));
    }
    let q = tau.q();
    let w = u - v;
    let arg = HermiteArg::new(w, q);
    let fk = F_capital(k, &arg);
    if fk.norm() < 1e-6 * F_capital_scale(k, &arg) {
        return Err(QError::PoleHit(format!("F_{} vanishes at u - v", k + 1)));
    }
    let mut qfact = C64::new(1.0, 0.0);
    let mut corr = C64::new(0.0, 0.0);
    for l in 1..=k {
        qfact *= 1.0 - q.powi(l as i32);
        corr += q.powi(l as i32) / qfact * F_capital(k - l, &arg) / fk * hermite_cq(l - 1, &arg);
    }
    corr *= 2.0 * tau.qpow_re(-0.125);
    let base = mu_general(&MuPoint::new(u, v, C64::new((k + 1) as f64, 0.0), *tau)?, trunc)?.scale(1.0 / fk);
    let r = R_func(w, tau, trunc)?;
    Ok(match variant {
        NuVariant::Consistent => EvalResult { value: r.value + corr, ..r }.scale(0.5 * I).add(base),
        NuVariant::Printed => EvalResult { value: r.value - corr, ..r }.scale(-0.5 * I).add(base),
    })
}

/// τ ↦ τ + 1.
pub fn t_image(tau: &ModularPoint) -> Result<ModularPoint> {
    ModularPoint::new(tau.tau() + 1.0)
}

/// (u, v, τ) ↦ (u/τ, v/τ, −1/τ).
pub fn s_image(u: C64, v: C64, tau: &ModularPoint) -> Result<(C64, C64, ModularPoint)> {
    let t = tau.tau();
    Ok((u / t, v / t, ModularPoint::new(-1.0 / t)?))
}

/// The factor f with μ̃(u/τ, v/τ; −1/τ) = f·μ̃(u,v;τ).
/// `printed` selects −i√(−iτ)e^{πi(u−v)²/τ}; otherwise −√(−iτ)e^{−πi(u−v)²/τ}.
pub fn s_factor(u: C64, v: C64, tau: &ModularPoint, printed: bool) -> C64 {
    let t = tau.tau();
    let root = (-I * t).sqrt();
    let w2 = (u - v) * (u - v) / t;
    if printed {
        -I * root * (PI * I * w2).exp()
    } else {
        -root * (-PI * I * w2).exp()
    }
}

/// e^{−πi/4}, the τ ↦ τ+1 multiplier.
pub fn t_factor() -> C64 {
    (-PI * I / 4.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / (a.norm() + b.norm() + 1e-300)
    }

    fn t() -> Truncation {
        Truncation::tight()
    }

    fn simpson_e(x: f64, n: usize) -> f64 {
        let h = x / n as f64;
        let f = |z: f64| (-PI * z * z).exp();
        let mut s = f(0.0) + f(x);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        2.0 * s * h / 3.0
    }

    #[test]
    fn e_func_values() {
        assert_eq!(E_func(0.0), 0.0);
        assert!((1.0 - E_func(5.0)).abs() < 1e-12);
        let mut prev = -1.0;
        for i in -40..=40 {
            let x = i as f64 * 0.1;
            assert_eq!(E_func(-x), -E_func(x));
            assert!(E_func(x) >= prev && E_func(x).abs() <= 1.0);
            prev = E_func(x);
            assert!((E_func(x) - simpson_e(x, 4000)).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn ln_erfc_continues() {
        let a = ln_erfc(24.999_999);
        let b = ln_erfc(25.0);
        assert!((a - b).abs() < 1e-4);
        assert!((ln_erfc(3.0) - libm::erfc(3.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn r_window_doubling() {
        let tau = ModularPoint::new(c(0.0, 1.0)).unwrap();
        let u = c(0.2, 0.1);
        let a = R_func(u, &tau, &Truncation::default()).unwrap().value;
        let b = R_func(u, &tau, &Truncation::tight()).unwrap().value;
        assert!(rel(a, b) < 1e-11);
        assert!(a.is_finite());
    }

    #[test]
    fn r_elliptic_relations() {
        let tau = ModularPoint::new(c(0.0, 1.1)).unwrap();
        let u = c(0.2, 0.05);
        let r = |u| R_func(u, &tau, &t()).unwrap().value;
        assert!(rel(r(u + 1.0), -r(u)) < 1e-13);
        assert!(rel(r(-u), r(u)) < 1e-13);
        let tt = tau.tau();
        let lhs = r(u) + (-2.0 * PI * I * u - PI * I * tt).exp() * r(u + tt);
        assert!(rel(lhs, 2.0 * (-PI * I * u - PI * I * tt / 4.0).exp()) < 1e-12);
    }

    #[test]
    fn mu_tilde_transformations() {
        let (u, v) = (c(0.2, 0.05), c(-0.1, 0.03));
        let tau = ModularPoint::new(c(0.0, 1.2)).unwrap();
        let a = mu_tilde(u, v, &t_image(&tau).unwrap(), &t()).unwrap().value;
        let b = mu_tilde(u, v, &tau, &t()).unwrap().value;
        assert!(rel(a, t_factor() * b) < 1e-7);
        assert!(rel(mu_tilde(v, u, &tau, &t()).unwrap().value, b) < 1e-8);

        let tau = ModularPoint::new(c(0.0, 1.1)).unwrap();
        let (us, vs, ts) = s_image(u, v, &tau).unwrap();
        let lhs = mu_tilde(us, vs, &ts, &t()).unwrap().value;
        let m = mu_tilde(u, v, &tau, &t()).unwrap().value;
        assert!(rel(lhs, s_factor(u, v, &tau, false) * m) < 1e-6);
        assert!(rel(lhs, s_factor(u, v, &tau, true) * m) > 0.1);
    }

    #[test]
    fn nu_tilde_matches_mu_tilde() {
        let (u, v) = (c(0.2, 0.05), c(-0.1, 0.03));
        let tau = ModularPoint::new(c(0.0, 1.1)).unwrap();
        let m = mu_tilde(u, v, &tau, &t()).unwrap().value;
        for k in 1..=3 {
            let n = nu_tilde(u, v, k, &tau, NuVariant::Consistent, &t()).unwrap().value;
            assert!(rel(m, n) < 1e-7, "k = {k}");
            let p = nu_tilde(u, v, k, &tau, NuVariant::Printed, &t()).unwrap().value;
            assert!(rel(m, p) > 1e-3, "k = {k}");
        }
        assert!(nu_tilde(u, v, 0, &tau, NuVariant::Consistent, &t()).is_err());
    }

    #[test]
    fn nu_tilde_transformations() {
        let (u, v) = (c(0.13, -0.04), c(0.31, 0.08));
        let tau = ModularPoint::new(c(0.0, 1.1)).unwrap();
        let nu = |u, v, tau: &ModularPoint| nu_tilde(u, v, 2, tau, NuVariant::Consistent, &t()).unwrap().value;
        let base = nu(u, v, &tau);
        assert!(rel(nu(u, v, &t_image(&tau).unwrap()), t_factor() * base) < 1e-7);
        let (us, vs, ts) = s_image(u, v, &tau).unwrap();
        assert!(rel(nu(us, vs, &ts), s_factor(u, v, &tau, false) * base) < 1e-6);
    }
}
