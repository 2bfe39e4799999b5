//! Zwegers' μ, the one-parameter family μ(u,v;α), the Kronecker function,
//! the Bessel-type j(w;α), g₃ and three of Ramanujan's mock theta functions.

use std::f64::consts::PI;

use crate::qcore::{
    bilateral, ln_one_minus_exp, qpoch_inf, qpoch_inf_many, qpoch_ratio_inf, recip_one_minus_exp,
    theta11, theta_q, EvalResult, ModularPoint, QError, Result, Tail, Truncation, C64,
    FACTOR_EPS, I, ONE, POLE_EPS, ZERO,
};
use crate::qhyper::{phi, psi, q_bessel_j2_with_log, SeriesSpec};

/// Admissible point for μ(u,v;α): u − ατ and v stay off Z + Zτ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuPoint {
    pub u: C64,
    pub v: C64,
    pub alpha: C64,
    pub tau: ModularPoint,
}

impl MuPoint {
    pub fn new(u: C64, v: C64, alpha: C64, tau: ModularPoint) -> Result<Self> {
        tau.check_off_lattice(v, "v")?;
        tau.check_off_lattice(u - alpha * tau.tau(), "u - alpha tau")?;
        Ok(MuPoint { u, v, alpha, tau })
    }

    pub fn with_alpha(&self, alpha: C64) -> Result<Self> {
        MuPoint::new(self.u, self.v, alpha, self.tau)
    }

    pub fn x(&self) -> C64 {
        crate::qcore::e(self.u)
    }

    pub fn y(&self) -> C64 {
        crate::qcore::e(self.v)
    }

    pub fn a(&self) -> C64 {
        self.tau.qpow(self.alpha)
    }
}

fn warm_up(u: C64, v: C64, alpha: C64, tau: &ModularPoint) -> usize {
    let t = tau.tau().im;
    (alpha.re.abs() + alpha.im.abs() + (u.im.abs() + v.im.abs()) / t).ceil() as usize + 3
}

/// α as an integer, if it is one.
pub(crate) fn as_integer(alpha: C64) -> Option<i64> {
    let k = alpha.re.round();
    ((alpha - k).norm() < 1e-12).then_some(k as i64)
}

/// μ(u,v;τ) = e^{πiu}/ϑ₁₁(v) Σ_n (−1)^n e^{2πinv} q^{n(n+1)/2}/(1 − e^{2πiu}q^n).
pub fn mu_zwegers(u: C64, v: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    tau.check_off_lattice(u, "u")?;
    tau.check_off_lattice(v, "v")?;
    let t = tau.tau();
    let warm = warm_up(u, v, ZERO, tau);
    let s = bilateral(trunc, "mu", warm, |n| {
        let n = n as f64;
        let phase = PI * I * (n * (n + 1.0) * t + 2.0 * n * v + n);
        Ok(phase.exp() * recip_one_minus_exp(2.0 * PI * I * (u + n * t)))
    })?;
    let th = theta11(v, tau, trunc)?;
    Ok(s.scale((PI * I * u).exp()).div(th))
}

/// μ(u,v;α) from its defining bilateral series. The quotient
/// (xq^{n+1})_∞/(xq^{n+1−α})_∞ is carried as a logarithm so that neither
/// side of the window overflows.
pub fn mu_general(p: &MuPoint, trunc: &Truncation) -> Result<EvalResult> {
    let (u, v, alpha, tau) = (p.u, p.v, p.alpha, &p.tau);
    let t = tau.tau();
    let lf = |s: C64| ln_one_minus_exp(2.0 * PI * I * (u + s * t));
    let small = |s: C64| (1.0 - (2.0 * PI * I * (u + s * t)).exp()).norm() < 1e-8;
    let phase = |n: f64| PI * I * (n * (n + 1.0) * t + (2.0 * n + 1.0) * v + n);

    let direct = |n: i64| -> Result<C64> {
        let mut tail = Tail::new(trunc, "mu Pochhammer quotient");
        let mut lr = ZERO;
        let mut j = 0.0;
        loop {
            let s = C64::new(n as f64 + 1.0 + j, 0.0);
            let d = lf(s) - lf(s - alpha);
            lr += d;
            if tail.push(d.norm(), 1.0)? {
                return Ok(lr);
            }
            j += 1.0;
        }
    };

    let warm = warm_up(u, v, alpha, tau);
    let s = match as_integer(alpha) {
        Some(k) => bilateral(trunc, "mu", warm, |n| {
            let nf = n as f64;
            let mut lr = ZERO;
            if k > 0 {
                for j in 0..k {
                    lr -= lf(C64::new(nf + 1.0 - k as f64 + j as f64, 0.0));
                }
            } else {
                for i in 0..(-k) {
                    lr += lf(C64::new(nf + 1.0 + i as f64, 0.0));
                }
            }
            Ok((phase(nf) + lr).exp())
        })?,
        None => {
            let lr0 = direct(0)?;
            let (mut up, mut down) = (lr0, lr0);
            bilateral(trunc, "mu", warm, |n| {
                let lr = if n == 0 {
                    lr0
                } else if n > 0 {
                    let s = C64::new(n as f64, 0.0);
                    up = if small(s) { direct(n)? } else { up + lf(s - alpha) - lf(s) };
                    up
                } else {
                    let s = C64::new(n as f64 + 1.0, 0.0);
                    down = down + lf(s) - lf(s - alpha);
                    down
                };
                Ok((phase(n as f64) + lr).exp())
            })?
        }
    };
    let th = theta11(v, tau, trunc)?;
    Ok(s.scale((PI * I * alpha * (u - v)).exp()).div(th))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuForm {
    /// (x)_∞/(x/a)_∞ ₁ψ₂(x/a; 0, x; q, y) over θ_q(−y)
    Def,
    /// (aq/y)_∞/(q/y)_∞ ₁ψ₂(y/a; 0, y; q, x) over θ_q(−x/a)
    Alt1,
    /// ₂ψ₂(x/a, y/a; 0, 0; q, a), needs |a| < 1
    Alt2,
    /// ₀ψ₂(−; x, y; q, xy/a), needs |a| < 1
    Alt3,
}

/// μ(u,v;α) through one of its four bilateral q-series expressions.
pub fn mu_general_expr(p: &MuPoint, form: MuForm, trunc: &Truncation) -> Result<EvalResult> {
    let tau = &p.tau;
    let q = tau.q();
    let (x, y, a) = (p.x(), p.y(), p.a());
    let pref = -I * tau.qpow_re(-0.125) * (PI * I * p.alpha * (p.u - p.v)).exp();
    let need_small_a = || {
        if a.norm() >= 1.0 {
            Err(QError::Domain(format!("this form needs |q^alpha| < 1, got {}", a.norm())))
        } else {
            Ok(())
        }
    };
    let r = match form {
        MuForm::Def => {
            let s = psi(&SeriesSpec::new(&[x / a], &[ZERO, x], q, y), trunc)?;
            qpoch_ratio_inf(x, x / a, q, trunc)?.mul(s).div(theta_q(-y, q, trunc)?)
        }
        MuForm::Alt1 => {
            tau.check_off_lattice(p.v, "v")?;
            let s = psi(&SeriesSpec::new(&[y / a], &[ZERO, y], q, x), trunc)?;
            qpoch_ratio_inf(a * q / y, q / y, q, trunc)?.mul(s).div(theta_q(-x / a, q, trunc)?)
        }
        MuForm::Alt2 => {
            need_small_a()?;
            let s = psi(&SeriesSpec::new(&[x / a, y / a], &[ZERO, ZERO], q, a), trunc)?;
            let th = theta_q(-y, q, trunc)?.mul(theta_q(-x / a, q, trunc)?);
            qpoch_inf_many(&[a, q, a * q / x, a * q / y], q, trunc)?.mul(s).div(th)
        }
        MuForm::Alt3 => {
            need_small_a()?;
            tau.check_off_lattice(p.u, "u")?;
            let s = psi(&SeriesSpec::new(&[], &[x, y], q, x * y / a), trunc)?;
            let th = theta_q(-y, q, trunc)?.mul(theta_q(-x / a, q, trunc)?);
            qpoch_inf_many(&[a, q, x, y], q, trunc)?.mul(s).div(th)
        }
    };
    Ok(r.scale(pref))
}

/// Φ(u,v;α) = ϑ₁₁(v−ατ)ϑ₁₁(u)/(ϑ₁₁(u−ατ)ϑ₁₁(v)) · e^{2πiα(u−v)}.
pub fn phi_factor(p: &MuPoint, trunc: &Truncation) -> Result<C64> {
    let tau = &p.tau;
    let at = p.alpha * tau.tau();
    for (z, name) in [(p.u, "u"), (p.v, "v"), (p.u - at, "u - alpha tau"), (p.v - at, "v - alpha tau")] {
        tau.check_off_lattice(z, name)?;
    }
    let th = |z| theta11(z, tau, trunc).map(|r| r.value);
    Ok(th(p.v - at)? * th(p.u)? / (th(p.u - at)? * th(p.v)?)
        * (2.0 * PI * I * p.alpha * (p.u - p.v)).exp())
}

fn check_off_q_powers(x: C64, q: C64, name: &str) -> Result<ModularPoint> {
    let m = ModularPoint::from_nome(q)?;
    if x == ZERO {
        return Err(QError::Domain(format!("{name} must be nonzero")));
    }
    m.check_off_nome_lattice(x, name)?;
    Ok(m)
}

/// k(x,y) = (q,q,xy,q/xy)_∞/(x,q/x,y,q/y)_∞.
pub fn kronecker_k(x: C64, y: C64, q: C64, trunc: &Truncation) -> Result<EvalResult> {
    check_off_q_powers(x, q, "x")?;
    check_off_q_powers(y, q, "y")?;
    let num = qpoch_inf_many(&[q, q, x * y, q / (x * y)], q, trunc)?;
    let den = qpoch_inf_many(&[x, q / x, y, q / y], q, trunc)?;
    Ok(num.div(den))
}

/// Σ_n y^n/(1 − xq^n), convergent for |q| < |y| < 1.
pub fn kronecker_sum(x: C64, y: C64, q: C64, trunc: &Truncation) -> Result<EvalResult> {
    check_off_q_powers(x, q, "x")?;
    if !(y.norm() < 1.0 && y.norm() > q.norm()) {
        return Err(QError::Domain(format!("Kronecker sum needs |q| < |y| < 1, got y = {y}")));
    }
    let (lx, lq, ly) = (x.ln(), q.ln(), y.ln());
    bilateral(trunc, "Kronecker sum", 2, |n| {
        let n = n as f64;
        Ok((n * ly).exp() * recip_one_minus_exp(lx + n * lq))
    })
}

/// j(w;α) = iq^{1/8}(q)_∞/(q^{1−α})_∞ · e^{πi(1−α)w}/ϑ₁₁(w) · ₁φ₁(q^{1−α}; 0; q, e^{2πiw}q).
pub fn j_alpha(w: C64, alpha: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    check_j(w, alpha, tau)?;
    let q = tau.q();
    let b = tau.qpow(1.0 - alpha);
    let s = phi(&SeriesSpec::new(&[b], &[ZERO], q, crate::qcore::e(w) * q), trunc)?;
    let pre = I * tau.qpow_re(0.125) * (PI * I * (1.0 - alpha) * w).exp();
    let th = theta11(w, tau, trunc)?;
    Ok(qpoch_inf(q, q, trunc)?.mul(s).div(qpoch_inf(b, q, trunc)?).div(th).scale(pre))
}

/// j(w;α) through Jackson's J^{(2)}_{w/τ}(2ie^{πi(1−α)τ}; q).
pub fn j_alpha_bessel(w: C64, alpha: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    check_j(w, alpha, tau)?;
    let q = tau.q();
    let t = tau.tau();
    let log_half_x = I * PI / 2.0 + PI * I * (1.0 - alpha) * t;
    let jb = q_bessel_j2_with_log(w / t, log_half_x, tau, trunc)?;
    let q2 = qpoch_inf(q, q, trunc)?;
    let den = theta11(w, tau, trunc)?.mul(qpoch_inf(tau.qpow(1.0 - alpha), q, trunc)?);
    let pre = I * tau.qpow_re(0.125) * (-PI * I * w / (2.0 * t)).exp();
    Ok(q2.mul(q2).mul(jb).div(den).scale(pre))
}

fn check_j(w: C64, alpha: C64, tau: &ModularPoint) -> Result<()> {
    tau.check_off_lattice(w, "w")?;
    let k = alpha.re.round();
    if k >= 1.0 && (alpha - k).norm() < POLE_EPS {
        return Err(QError::PoleHit(format!("alpha within 1e-6 of the positive integer {k}")));
    }
    Ok(())
}

/// g₃(x;q) = Σ_{n≥1} q^{n(n−1)}/((x)_n (q/x)_n).
pub fn g3(x: C64, q: C64, trunc: &Truncation) -> Result<EvalResult> {
    check_off_q_powers(x, q, "x")?;
    let mut t = 1.0 / ((1.0 - x) * (1.0 - q / x));
    let mut sum = t;
    let mut tail = Tail::new(trunc, "g3");
    let mut qn = q;
    loop {
        let d = (1.0 - x * qn) * (1.0 - qn * q / x);
        if d.norm() < FACTOR_EPS {
            return Err(QError::PoleHit("g3: denominator vanishes".into()));
        }
        t *= qn * qn / d;
        sum += t;
        if tail.push(t.norm(), sum.norm())? {
            break;
        }
        qn *= q;
    }
    Ok(EvalResult { value: sum, err_estimate: tail.err(), terms_used: tail.terms() + 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MockTheta {
    F0,
    Phi,
    Psi,
}

impl std::str::FromStr for MockTheta {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f0" => Ok(MockTheta::F0),
            "phi" => Ok(MockTheta::Phi),
            "psi" => Ok(MockTheta::Psi),
            _ => Err(QError::Domain(format!("unknown mock theta function {s:?}"))),
        }
    }
}

/// f₀(q) = Σ q^{n²}/(−q;q)_n, φ(q) = Σ q^{n²}/(−q²;q²)_n, ψ(q) = Σ_{n≥1} q^{n²}/(q;q²)_n.
pub fn mock_theta(which: MockTheta, q: C64, trunc: &Truncation) -> Result<EvalResult> {
    if !(q.norm() < 1.0) {
        return Err(QError::Domain(format!("mock theta functions need |q| < 1, got {q}")));
    }
    let (mut t, first) = match which {
        MockTheta::F0 | MockTheta::Phi => (ONE, 0),
        MockTheta::Psi => (q / (1.0 - q), 1),
    };
    if q == ZERO {
        return Ok(EvalResult::exact(if first == 0 { ONE } else { ZERO }, 1));
    }
    let mut sum = t;
    let mut tail = Tail::new(trunc, "mock theta");
    let mut n = first;
    loop {
        // ratio from n to n + 1
        let q2n1 = q.powi(2 * n + 1);
        let d = match which {
            MockTheta::F0 => 1.0 + q.powi(n + 1),
            MockTheta::Phi => 1.0 + q.powi(2 * n + 2),
            MockTheta::Psi => 1.0 - q.powi(2 * n + 3),
        };
        t *= q2n1 / d;
        sum += t;
        n += 1;
        if tail.push(t.norm(), sum.norm())? {
            break;
        }
    }
    Ok(EvalResult { value: sum, err_estimate: tail.err(), terms_used: tail.terms() + 1 })
}
