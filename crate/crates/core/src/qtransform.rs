//! q-Borel and q-Laplace transforms, fundamental solutions of the
//! q-Hermite–Weber equation and their connection formulas.

use std::f64::consts::PI;

use crate::qcore::{
    bilateral, e, qpoch_inf, qpoch_inf_many, qpoch_ratio_inf, theta_q, EvalResult, ModularPoint,
    QError, Result, Truncation, C64, I, ONE, ZERO,
};
use crate::qhyper::{phi, SeriesSpec};

/// Truncated power series c₀ + c₁x + … + c_N x^N.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalPowerSeries {
    pub coeffs: Vec<C64>,
}

impl FormalPowerSeries {
    pub fn new(coeffs: Vec<C64>) -> Self {
        FormalPowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Horner evaluation; the error estimate is the last term |c_N x^N|.
    pub fn eval(&self, x: C64) -> EvalResult {
        let v = self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c);
        let last = self.coeffs.last().map_or(0.0, |c| (c * x.powi(self.order() as i32)).norm());
        EvalResult { value: v, err_estimate: last, terms_used: self.coeffs.len() }
    }

    /// x^m f(x).
    pub fn shift_up(&self, m: usize) -> Self {
        let mut c = vec![ZERO; m];
        c.extend_from_slice(&self.coeffs);
        FormalPowerSeries::new(c)
    }

    /// f(q^n x).
    pub fn q_dilate(&self, n: i32, q: C64) -> Self {
        let qn = q.powi(n);
        let mut p = ONE;
        let c = self
            .coeffs
            .iter()
            .map(|&c| {
                let t = c * p;
                p *= qn;
                t
            })
            .collect();
        FormalPowerSeries::new(c)
    }
}

/// B⁺: c_n ↦ c_n q^{n(n−1)/2}.
pub fn q_borel(f: &FormalPowerSeries, q: C64) -> FormalPowerSeries {
    let mut w = ONE;
    let mut qn = ONE;
    let c = f
        .coeffs
        .iter()
        .map(|&c| {
            let t = c * w;
            w *= qn;
            qn *= q;
            t
        })
        .collect();
    FormalPowerSeries::new(c)
}

/// Coefficients of the divergent solution ₂φ₀(a, 0; −; q, x/a) up to x^order.
pub fn hw_formal_solution(a: C64, q: C64, order: usize) -> FormalPowerSeries {
    let mut c = vec![ONE];
    for n in 0..order {
        // ((−1)^n q^{C(n,2)})^{−1} ratio is −q^{−n}
        let r = (1.0 - a * q.powi(n as i32)) / (1.0 - q.powi(n as i32 + 1)) * (-q.powi(-(n as i32))) / a;
        let last = c[n];
        c.push(last * r);
    }
    FormalPowerSeries::new(c)
}

/// L⁺(f)(x,λ) = Σ_n f(λq^n)/θ_q(λq^n/x). The theta values come from
/// θ_q(q^n z) = q^{−n(n−1)/2} z^{−n} θ_q(z), so the huge and tiny factors meet
/// inside one exponential.
pub fn q_laplace(
    f: impl Fn(C64) -> Result<C64>,
    x: C64,
    lambda: C64,
    q: C64,
    trunc: &Truncation,
) -> Result<EvalResult> {
    if x == ZERO || lambda == ZERO {
        return Err(QError::Domain("q-Laplace needs x, lambda nonzero".into()));
    }
    let m = ModularPoint::from_nome(q)?;
    let z0 = lambda / x;
    m.check_off_nome_lattice(-z0, "-lambda/x")?;
    let th0 = theta_q(z0, q, trunc)?;
    let (lq, lz) = (q.ln(), z0.ln());
    // |q^{n(n−1)/2} z0^n| is largest near n = 1/2 − ln|z0|/ln|q|
    let peak = 0.5 - lz.re / lq.re;
    let warm = peak.abs().ceil() as usize + 3;
    let s = bilateral(trunc, "q-Laplace", warm, |n| {
        let nf = n as f64;
        let w = (nf * (nf - 1.0) / 2.0 * lq + nf * lz).exp();
        if w == ZERO {
            return Ok(ZERO);
        }
        Ok(f(lambda * q.powi(n as i32))? * w)
    })?;
    Ok(s.div(th0))
}

/// α, τ and the Laplace direction λ of the q-Hermite–Weber equation
/// [T_x² − (1 − xq)q^{α/2}T_x − xq]f = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HWParams {
    pub alpha: C64,
    pub tau: ModularPoint,
    pub lambda: C64,
}

impl HWParams {
    pub fn new(alpha: C64, tau: ModularPoint, lambda: C64) -> Result<Self> {
        if lambda == ZERO {
            return Err(QError::Domain("lambda must be nonzero".into()));
        }
        Ok(HWParams { alpha, tau, lambda })
    }

    pub fn with_lambda(&self, lambda: C64) -> Result<Self> {
        HWParams::new(self.alpha, self.tau, lambda)
    }

    pub fn a(&self) -> C64 {
        self.tau.qpow(self.alpha)
    }
}

/// Additive coordinate of x on the principal branch.
pub fn principal_w(x: C64) -> Result<C64> {
    if x == ZERO {
        return Err(QError::Domain("x must be nonzero".into()));
    }
    Ok(x.ln() / (2.0 * PI * I))
}

/// f₀ at x = e^{2πiw}: x^{α/2} L⁺((−ξ)_∞/(−ξ/a)_∞)(x,λ).
pub fn f0_at(w: C64, p: &HWParams, trunc: &Truncation) -> Result<EvalResult> {
    let q = p.tau.q();
    let a = p.a();
    let s = q_laplace(|xi| Ok(qpoch_ratio_inf(-xi, -xi / a, q, trunc)?.value), e(w), p.lambda, q, trunc)?;
    Ok(s.scale((PI * I * p.alpha * w).exp()))
}

/// g₀ at x = e^{2πiw}: x^{1−α/2}/θ_q(−x) ₁φ₁(q/a; 0; q, xq).
pub fn g0_at(w: C64, p: &HWParams, trunc: &Truncation) -> Result<EvalResult> {
    let q = p.tau.q();
    let x = e(w);
    p.tau.check_off_nome_lattice(-x, "-x")?;
    let s = phi(&SeriesSpec::new(&[q / p.a()], &[ZERO], q, x * q), trunc)?;
    Ok(s.div(theta_q(-x, q, trunc)?).scale((2.0 * PI * I * (1.0 - p.alpha / 2.0) * w).exp()))
}

/// f_∞(x) = f₀(1/x).
pub fn f_inf_at(w: C64, p: &HWParams, trunc: &Truncation) -> Result<EvalResult> {
    f0_at(-w, p, trunc)
}

/// g_∞(x) = g₀(1/x).
pub fn g_inf_at(w: C64, p: &HWParams, trunc: &Truncation) -> Result<EvalResult> {
    g0_at(-w, p, trunc)
}

pub fn f0_solution(x: C64, p: &HWParams, trunc: &Truncation) -> Result<EvalResult> {
    f0_at(principal_w(x)?, p, trunc)
}

pub fn g0_solution(x: C64, p: &HWParams, trunc: &Truncation) -> Result<EvalResult> {
    g0_at(principal_w(x)?, p, trunc)
}

pub fn f_inf_solution(x: C64, p: &HWParams, trunc: &Truncation) -> Result<EvalResult> {
    f_inf_at(principal_w(x)?, p, trunc)
}

pub fn g_inf_solution(x: C64, p: &HWParams, trunc: &Truncation) -> Result<EvalResult> {
    g_inf_at(principal_w(x)?, p, trunc)
}

/// The two sides of an identity, plus the largest error estimate that went into them.
/// `scale` is the summed magnitude of the terms combined on both sides; when the
/// sides are much smaller than their terms, the residual is measured against it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub lhs: C64,
    pub rhs: C64,
    pub err: f64,
    pub scale: f64,
}

impl Residual {
    pub fn rel(&self) -> f64 {
        (self.lhs - self.rhs).norm() / (self.lhs.norm() + self.rhs.norm()).max(self.scale).max(1e-300)
    }
}

/// f(w+2τ) against (1 − xq)q^{α/2}f(w+τ) + xq f(w), three independent evaluations.
pub fn hw_residual(
    f: impl Fn(C64) -> Result<EvalResult>,
    w: C64,
    alpha: C64,
    tau: &ModularPoint,
) -> Result<Residual> {
    let t = tau.tau();
    let (f0, f1, f2) = (f(w)?, f(w + t)?, f(w + 2.0 * t)?);
    let xq = e(w) * tau.q();
    let (t1, t0) = ((1.0 - xq) * tau.qpow(alpha / 2.0) * f1.value, xq * f0.value);
    let err = f0.rel_err().max(f1.rel_err()).max(f2.rel_err());
    Ok(Residual { lhs: f2.value, rhs: t1 + t0, err, scale: f2.value.norm() + t1.norm() + t0.norm() })
}

fn th(x: C64, q: C64, trunc: &Truncation) -> Result<C64> {
    Ok(theta_q(x, q, trunc)?.value)
}

fn check_thetas(tau: &ModularPoint, args: &[(C64, &str)]) -> Result<()> {
    for &(z, name) in args {
        tau.check_off_nome_lattice(-z, name)?;
    }
    Ok(())
}

/// Both rows of the connection matrix expressing f₀ and f_∞ through g₀ and g_∞.
pub fn connection_residual_basis(w: C64, p: &HWParams, trunc: &Truncation) -> Result<[Residual; 2]> {
    let q = p.tau.q();
    let (a, lam, x) = (p.a(), p.lambda, e(w));
    check_thetas(&p.tau, &[(lam / a, "lambda/a"), (x / lam, "x/lambda"), (x * lam, "x lambda")])?;
    let (f0, fi, g0, gi) = (f0_at(w, p, trunc)?, f_inf_at(w, p, trunc)?, g0_at(w, p, trunc)?, g_inf_at(w, p, trunc)?);
    let pre = -qpoch_inf(q, q, trunc)?.value / qpoch_inf(q / a, q, trunc)?.value;
    let xa = (2.0 * PI * I * p.alpha * w).exp();
    let c1 = th(lam, q, trunc)? * th(a * x / lam, q, trunc)? * xa
        / (th(lam / a, q, trunc)? * th(x / lam, q, trunc)? * a);
    let c2 = th(lam, q, trunc)? * th(x * lam / a, q, trunc)? / (th(lam / a, q, trunc)? * th(x * lam, q, trunc)?) / xa;
    let err = [f0, fi, g0, gi].iter().map(|r| r.rel_err()).fold(0.0, f64::max);
    Ok([
        Residual {
            lhs: f0.value,
            rhs: pre * (c1 * g0.value + gi.value),
            err,
            scale: f0.value.norm() + (pre * c1 * g0.value).norm() + (pre * gi.value).norm(),
        },
        Residual {
            lhs: fi.value,
            rhs: pre * (g0.value + c2 * gi.value),
            err,
            scale: fi.value.norm() + (pre * g0.value).norm() + (pre * c2 * gi.value).norm(),
        },
    ])
}

/// f₀(x,λ′) through f_∞(x,λ) and g_∞(x).
pub fn connection_residual_direction(w: C64, lambda_prime: C64, p: &HWParams, trunc: &Truncation) -> Result<Residual> {
    let q = p.tau.q();
    let (a, lam, lp, x) = (p.a(), p.lambda, lambda_prime, e(w));
    check_thetas(
        &p.tau,
        &[(lp / a, "lambda'/a"), (lp / x, "lambda'/x"), (x * lam, "x lambda"), (a / lam, "a/lambda")],
    )?;
    let pp = p.with_lambda(lp)?;
    let lhs = f0_at(w, &pp, trunc)?;
    let fi = f_inf_at(w, p, trunc)?;
    let gi = g_inf_at(w, p, trunc)?;
    let xa = (2.0 * PI * I * p.alpha * w).exp();
    let c1 = th(lp, q, trunc)? * th(a * x / lp, q, trunc)? * xa / (th(lp / a, q, trunc)? * th(x / lp, q, trunc)? * a);
    let q3 = qpoch_inf_many(&[a, q, q], q, trunc)?.value;
    let c2 = q3 * th(-lp / (x * lam), q, trunc)? * th(-x, q, trunc)? * th(-lam * lp / a, q, trunc)?
        / (th(x * lam, q, trunc)? * th(lp / x, q, trunc)? * th(lp / a, q, trunc)? * th(a / lam, q, trunc)?);
    let err = lhs.rel_err().max(fi.rel_err()).max(gi.rel_err());
    let (t1, t2) = (c1 * fi.value, c2 * gi.value);
    Ok(Residual { lhs: lhs.value, rhs: t1 - t2, err, scale: lhs.value.norm() + t1.norm() + t2.norm() })
}

/// Parameters of the ₂φ₀-level equation [(1−abxq)T_x² − (1−(a+b)xq)T_x − xq]f = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phi20Equation {
    pub a: C64,
    pub b: C64,
    pub q: C64,
    pub lambda: C64,
}

impl Phi20Equation {
    pub fn new(a: C64, b: C64, q: C64, lambda: C64) -> Result<Self> {
        let m = ModularPoint::from_nome(q)?;
        if a == ZERO || b == ZERO || lambda == ZERO {
            return Err(QError::Domain("a, b, lambda must be nonzero".into()));
        }
        m.check_off_nome_lattice(b / a, "b/a")?;
        if b.norm() >= 1.0 {
            return Err(QError::Domain("the continuation of 2phi1(a,b;0;z) needs |b| < 1".into()));
        }
        Ok(Phi20Equation { a, b, q, lambda })
    }

    fn nome(&self) -> ModularPoint {
        ModularPoint::from_nome(self.q).expect("checked in new")
    }

    fn th(&self, x: C64, trunc: &Truncation) -> Result<C64> {
        self.nome().check_off_nome_lattice(-x, "theta argument")?;
        th(x, self.q, trunc)
    }

    fn p(&self, x: C64, trunc: &Truncation) -> Result<C64> {
        Ok(qpoch_inf(x, self.q, trunc)?.value)
    }

    /// ₂φ₁(a, b; 0; q, z), continued by Heine's transformation for |z| ≥ 1/2.
    pub fn phi21_0(&self, z: C64, trunc: &Truncation) -> Result<C64> {
        let (a, b, q) = (self.a, self.b, self.q);
        if z.norm() < 0.5 {
            return Ok(phi(&SeriesSpec::new(&[a, b], &[ZERO], q, z), trunc)?.value);
        }
        self.nome().check_off_nome_lattice(z, "z")?;
        let s = phi(&SeriesSpec::new(&[ZERO, z], &[a * z], q, b), trunc)?.value;
        Ok(self.p(b, trunc)? * self.p(a * z, trunc)? / self.p(z, trunc)? * s)
    }

    /// L⁺∘B⁺ of the formal solution at 0.
    pub fn lb(&self, x: C64, trunc: &Truncation) -> Result<C64> {
        Ok(q_laplace(|xi| self.phi21_0(-xi, trunc), x, self.lambda, self.q, trunc)?.value)
    }

    pub fn f2(&self, x: C64, trunc: &Truncation) -> Result<C64> {
        let (a, b, q) = (self.a, self.b, self.q);
        let s = phi(&SeriesSpec::new(&[q / a, q / b], &[ZERO], q, a * b * x), trunc)?.value;
        Ok(self.p(a * b * x, trunc)? / self.th(-x * q, trunc)? * s)
    }

    fn g(&self, a: C64, b: C64, x: C64, trunc: &Truncation) -> Result<C64> {
        let q = self.q;
        let z = q / (a * b * x);
        let s = phi(&SeriesSpec::new(&[q / b], &[a * q / b], q, a * z), trunc)?.value;
        Ok(self.th(-a * x * q, trunc)? / self.th(-x * q, trunc)? / self.p(z, trunc)? * s)
    }

    pub fn g1(&self, x: C64, trunc: &Truncation) -> Result<C64> {
        self.g(self.a, self.b, x, trunc)
    }

    pub fn g2(&self, x: C64, trunc: &Truncation) -> Result<C64> {
        self.g(self.b, self.a, x, trunc)
    }

    /// (1 − abxq)f(q²x) against (1 − (a+b)xq)f(qx) + xq f(x).
    pub fn residual(&self, f: impl Fn(C64) -> Result<C64>, x: C64) -> Result<Residual> {
        let (a, b, q) = (self.a, self.b, self.q);
        let (f0, f1, f2) = (f(x)?, f(q * x)?, f(q * q * x)?);
        let (l, t1, t0) = ((1.0 - a * b * x * q) * f2, (1.0 - (a + b) * x * q) * f1, x * q * f0);
        Ok(Residual { lhs: l, rhs: t1 + t0, err: 0.0, scale: l.norm() + t1.norm() + t0.norm() })
    }

    /// L⁺∘B⁺ solution expanded in G₁, G₂.
    pub fn connection_lb(&self, x: C64, trunc: &Truncation) -> Result<Residual> {
        let (a, b, q, lam) = (self.a, self.b, self.q, self.lambda);
        let c = |a: C64, b: C64| -> Result<C64> {
            Ok(self.p(b, trunc)? * self.th(a * lam, trunc)? * self.th(a * x * q / lam, trunc)?
                * self.th(-x * q, trunc)?
                / (self.p(b / a, trunc)? * self.th(lam, trunc)? * self.th(x * q / lam, trunc)?
                    * self.th(-a * x * q, trunc)?))
        };
        let rhs = c(a, b)? * self.g1(x, trunc)? + c(b, a)? * self.g2(x, trunc)?;
        let _ = q;
        Ok(Residual { lhs: self.lb(x, trunc)?, rhs, err: 0.0, scale: 0.0 })
    }

    /// F₂ expanded in G₁, G₂.
    pub fn connection_f2(&self, x: C64, trunc: &Truncation) -> Result<Residual> {
        let (a, b, q) = (self.a, self.b, self.q);
        let pq = self.p(q, trunc)?;
        let c1 = self.p(q / a, trunc)? / (self.p(b / a, trunc)? * pq);
        let c2 = self.p(q / b, trunc)? / (self.p(a / b, trunc)? * pq);
        let rhs = c1 * self.g1(x, trunc)? + c2 * self.g2(x, trunc)?;
        Ok(Residual { lhs: self.f2(x, trunc)?, rhs, err: 0.0, scale: 0.0 })
    }
}
