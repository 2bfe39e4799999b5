//! Parameter types, q-Pochhammer symbols, theta functions and the shared
//! truncation machinery.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

/// Distance below which a point counts as sitting on an excluded lattice.
pub const POLE_EPS: f64 = 1e-6;

/// A factor `1 - c` smaller than this in modulus is treated as an exact zero
/// (terminating numerator or vanishing denominator).
pub(crate) const FACTOR_EPS: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("{0}")]
    PoleHit(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Divergent(String),
    #[error("{0}")]
    BudgetExceeded(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("duplicate identity name {0:?}")]
    DuplicateName(String),
}

impl QError {
    /// Pole and domain errors mark a rejectable sample, not a numerical failure.
    pub fn is_rejectable(&self) -> bool {
        matches!(self, QError::PoleHit(_) | QError::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, QError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub settle_count: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { rel_tol: 1e-12, max_terms: 20_000, settle_count: 3 }
    }
}

impl Truncation {
    pub fn new(rel_tol: f64, max_terms: usize, settle_count: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(QError::Domain(format!("rel_tol must be positive, got {rel_tol}")));
        }
        if settle_count == 0 || max_terms < settle_count {
            return Err(QError::Domain(format!(
                "need max_terms >= settle_count >= 1, got {max_terms} and {settle_count}"
            )));
        }
        Ok(Truncation { rel_tol, max_terms, settle_count })
    }

    /// Runs every series to the limit of double precision.
    pub fn tight() -> Self {
        Truncation { rel_tol: 1e-17, ..Default::default() }
    }

    pub fn with_max_terms(self, max_terms: usize) -> Self {
        Truncation { max_terms: max_terms.max(self.settle_count), ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: C64,
    pub err_estimate: f64,
    pub terms_used: usize,
}

impl EvalResult {
    pub fn exact(value: C64, terms_used: usize) -> Self {
        EvalResult { value, err_estimate: 0.0, terms_used }
    }

    /// Multiplies by an exactly known factor.
    pub fn scale(self, c: C64) -> Self {
        EvalResult { value: self.value * c, err_estimate: self.err_estimate * c.norm(), ..self }
    }

    /// Relative error, 0 for an exact zero.
    pub fn rel_err(&self) -> f64 {
        let m = self.value.norm();
        if m > 0.0 {
            self.err_estimate / m
        } else {
            self.err_estimate
        }
    }

    /// Product with first-order error propagation.
    pub fn mul(self, o: EvalResult) -> Self {
        EvalResult {
            value: self.value * o.value,
            err_estimate: self.err_estimate * o.value.norm() + o.err_estimate * self.value.norm(),
            terms_used: self.terms_used + o.terms_used,
        }
    }

    pub fn div(self, o: EvalResult) -> Self {
        let v = self.value / o.value;
        EvalResult {
            value: v,
            err_estimate: v.norm() * (self.rel_err() + o.rel_err()),
            terms_used: self.terms_used + o.terms_used,
        }
    }

    pub fn add(self, o: EvalResult) -> Self {
        EvalResult {
            value: self.value + o.value,
            err_estimate: self.err_estimate + o.err_estimate,
            terms_used: self.terms_used + o.terms_used,
        }
    }
}

/// Stopping rule shared by every series and product: stop after
/// `settle_count` consecutive terms below `rel_tol` relative to the partial
/// sum, flag growth past n = 50 as divergence.
#[derive(Debug)]
pub(crate) struct Tail {
    trunc: Truncation,
    what: &'static str,
    n: usize,
    small: usize,
    grow: usize,
    prev: f64,
    recent: Vec<f64>,
}

impl Tail {
    pub(crate) fn new(trunc: &Truncation, what: &'static str) -> Self {
        Tail {
            trunc: *trunc,
            what,
            n: 0,
            small: 0,
            grow: 0,
            prev: f64::INFINITY,
            recent: Vec::with_capacity(trunc.settle_count),
        }
    }

    /// Feeds one term magnitude; `scale` is the magnitude it is compared to.
    /// Returns `Ok(true)` once the tail has settled.
    pub(crate) fn push(&mut self, term: f64, scale: f64) -> Result<bool> {
        self.n += 1;
        if !term.is_finite() {
            return Err(QError::Divergent(format!("{}: non-finite term at n = {}", self.what, self.n)));
        }
        if self.recent.len() == self.trunc.settle_count {
            self.recent.remove(0);
        }
        self.recent.push(term);
        if term <= self.trunc.rel_tol * scale {
            self.small += 1;
        } else {
            self.small = 0;
        }
        if self.n > 50 && term > self.prev && term > self.trunc.rel_tol * scale {
            self.grow += 1;
            if self.grow >= self.trunc.settle_count {
                return Err(QError::Divergent(format!(
                    "{}: terms growing past n = {}",
                    self.what, self.n
                )));
            }
        } else {
            self.grow = 0;
        }
        self.prev = term;
        if self.small >= self.trunc.settle_count {
            return Ok(true);
        }
        if self.n >= self.trunc.max_terms {
            return Err(QError::BudgetExceeded(format!(
                "{}: no convergence within {} terms",
                self.what, self.trunc.max_terms
            )));
        }
        Ok(false)
    }

    pub(crate) fn err(&self) -> f64 {
        self.recent.iter().cloned().fold(0.0, f64::max)
    }

    pub(crate) fn terms(&self) -> usize {
        self.n
    }
}

/// Bilateral sum Σ_{n∈Z} term(n). Calls `term` in the order 0, 1, 2, … and
/// then −1, −2, …, so stateful recurrences can run outward on each side.
/// Neither side may settle before `warm` terms, which covers sums whose terms
/// peak away from n = 0.
pub(crate) fn bilateral(
    trunc: &Truncation,
    what: &'static str,
    warm: usize,
    mut term: impl FnMut(i64) -> Result<C64>,
) -> Result<EvalResult> {
    let mut sum = ZERO;
    let mut err: f64 = 0.0;
    let mut terms = 0;
    for dir in [1i64, -1] {
        let mut tail = Tail::new(trunc, what);
        let mut n = if dir > 0 { 0 } else { -1 };
        let mut k = 0;
        loop {
            let t = term(n)?;
            sum += t;
            k += 1;
            if !t.is_finite() {
                return Err(QError::Divergent(format!("{what}: non-finite term at n = {n}")));
            }
            if k > warm {
                if tail.push(t.norm(), sum.norm())? {
                    break;
                }
            } else if k >= trunc.max_terms {
                return Err(QError::BudgetExceeded(format!("{what}: warm-up exceeds max_terms")));
            }
            n += dir;
        }
        err = err.max(tail.err());
        terms += k;
    }
    Ok(EvalResult { value: sum, err_estimate: err, terms_used: terms })
}

/// ln(1 − e^l), finite for any l off the zero set.
pub(crate) fn ln_one_minus_exp(l: C64) -> C64 {
    if l.re > 0.0 {
        l + ((-l).exp() - 1.0).ln()
    } else {
        (1.0 - l.exp()).ln()
    }
}

/// e(z) = exp(2πiz).
pub fn e(z: C64) -> C64 {
    (2.0 * PI * I * z).exp()
}

/// `1/(1 - exp(l))` without overflow when |exp(l)| is huge.
pub(crate) fn recip_one_minus_exp(l: C64) -> C64 {
    if l.re > 0.0 {
        let m = (-l).exp();
        -m / (1.0 - m)
    } else {
        1.0 / (1.0 - l.exp())
    }
}

/// The upper half-plane parameter τ together with its nome q = e^{2πiτ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularPoint {
    tau: C64,
    q: C64,
}

impl ModularPoint {
    pub fn new(tau: C64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() {
            return Err(QError::Domain(format!("Im tau must be positive, got tau = {tau}")));
        }
        Ok(ModularPoint { tau, q: e(tau) })
    }

    /// Builds τ = log(q)/(2πi) with the principal logarithm.
    pub fn from_nome(q: C64) -> Result<Self> {
        let r = q.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(QError::Domain(format!("nome must satisfy 0 < |q| < 1, got {q}")));
        }
        let tau = q.ln() / (2.0 * PI * I);
        Ok(ModularPoint { tau, q })
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    pub fn q(&self) -> C64 {
        self.q
    }

    /// q^c := e^{2πiτc}, the branch every fractional power in the crate uses.
    pub fn qpow(&self, c: C64) -> C64 {
        (2.0 * PI * I * self.tau * c).exp()
    }

    pub fn qpow_re(&self, c: f64) -> C64 {
        self.qpow(C64::new(c, 0.0))
    }

    /// Distance from `z` to the lattice Z + Zτ.
    pub fn lattice_distance(&self, z: C64) -> f64 {
        lattice_distance(z, self.tau)
    }

    /// Distance of `x` from q^Z, measured additively (log x / 2πi against Z + Zτ).
    pub fn nome_lattice_distance(&self, x: C64) -> f64 {
        if x == ZERO || !x.is_finite() {
            return 0.0;
        }
        lattice_distance(x.ln() / (2.0 * PI * I), self.tau)
    }

    /// `PoleHit` if `z` is within [`POLE_EPS`] of Z + Zτ.
    pub fn check_off_lattice(&self, z: C64, name: &str) -> Result<()> {
        if self.lattice_distance(z) < POLE_EPS {
            Err(QError::PoleHit(format!("{name} within 1e-6 of Z+Z tau")))
        } else {
            Ok(())
        }
    }

    /// `PoleHit` if `x` is within [`POLE_EPS`] of q^Z in additive distance.
    pub fn check_off_nome_lattice(&self, x: C64, name: &str) -> Result<()> {
        if self.nome_lattice_distance(x) < POLE_EPS {
            Err(QError::PoleHit(format!("{name} within 1e-6 of q^Z")))
        } else {
            Ok(())
        }
    }
}

pub fn lattice_distance(z: C64, tau: C64) -> f64 {
    let m = (z.im / tau.im).round();
    let w = z - tau * m;
    let n = w.re.round();
    let mut best = f64::INFINITY;
    for dm in -1..=1 {
        for dn in -1..=1 {
            let p = tau * (m + dm as f64) + (n + dn as f64);
            best = best.min((z - p).norm());
        }
    }
    best
}

/// (x;q)_∞.
pub fn qpoch_inf(x: C64, q: C64, trunc: &Truncation) -> Result<EvalResult> {
    if x == ZERO {
        return Ok(EvalResult::exact(ONE, 0));
    }
    // the neglected factors change the product by about |xq^J| relative,
    // whatever the size of x
    let mut tail = Tail::new(trunc, "(x;q)_inf");
    let mut p = ONE;
    let mut xq = x;
    loop {
        p *= 1.0 - xq;
        if tail.push(xq.norm(), 1.0)? {
            break;
        }
        xq *= q;
    }
    Ok(EvalResult { value: p, err_estimate: p.norm() * tail.err(), terms_used: tail.terms() })
}

/// (x;q)_n for any integer n, by the explicit finite product.
pub fn qpoch(x: C64, q: C64, n: i64, _trunc: &Truncation) -> Result<EvalResult> {
    let mut p = ONE;
    if n >= 0 {
        let mut xq = x;
        for _ in 0..n {
            p *= 1.0 - xq;
            xq *= q;
        }
    } else {
        let qi = 1.0 / q;
        let mut xq = x * qi;
        for j in 1..=(-n) {
            let f = 1.0 - xq;
            if f.norm() < 1e-300 {
                return Err(QError::PoleHit(format!("(x;q)_{n}: factor j = {j} vanishes")));
            }
            p /= f;
            xq *= qi;
        }
    }
    Ok(EvalResult::exact(p, n.unsigned_abs() as usize))
}

/// (x;q)_∞ / (y;q)_∞ multiplied factor by factor, so that neither side has
/// to be representable on its own.
pub fn qpoch_ratio_inf(x: C64, y: C64, q: C64, trunc: &Truncation) -> Result<EvalResult> {
    let mut tail = Tail::new(trunc, "(x;q)_inf/(y;q)_inf");
    let mut p = ONE;
    let (mut xq, mut yq) = (x, y);
    loop {
        let d = 1.0 - yq;
        if d.norm() < FACTOR_EPS {
            return Err(QError::PoleHit("(y;q)_inf vanishes in a denominator".into()));
        }
        p *= (1.0 - xq) / d;
        if tail.push(xq.norm().max(yq.norm()), 1.0)? {
            break;
        }
        xq *= q;
        yq *= q;
    }
    Ok(EvalResult { value: p, err_estimate: p.norm() * tail.err(), terms_used: tail.terms() })
}

/// Product of several (x_i;q)_∞.
pub fn qpoch_inf_many(xs: &[C64], q: C64, trunc: &Truncation) -> Result<EvalResult> {
    let mut acc = EvalResult::exact(ONE, 0);
    for &x in xs {
        acc = acc.mul(qpoch_inf(x, q, trunc)?);
    }
    Ok(acc)
}

/// θ_q(x) = (q, −x, −q/x)_∞.
pub fn theta_q(x: C64, q: C64, trunc: &Truncation) -> Result<EvalResult> {
    if x == ZERO {
        return Err(QError::Domain("theta_q(0) is undefined".into()));
    }
    qpoch_inf_many(&[q, -x, -q / x], q, trunc)
}

/// θ_q(x) = Σ_n x^n q^{n(n−1)/2}, kept as an oracle for the product form.
pub fn theta_q_sum(x: C64, q: C64, trunc: &Truncation) -> Result<EvalResult> {
    if x == ZERO {
        return Err(QError::Domain("theta_q(0) is undefined".into()));
    }
    let mut sum = ONE;
    let mut tail_p = Tail::new(trunc, "theta_q sum");
    let (mut t, mut qn) = (ONE, ONE);
    loop {
        t *= x * qn;
        qn *= q;
        sum += t;
        if tail_p.push(t.norm(), sum.norm())? {
            break;
        }
    }
    let mut tail_m = Tail::new(trunc, "theta_q sum");
    let (mut t, mut qn) = (ONE, q);
    let xi = 1.0 / x;
    loop {
        t *= xi * qn;
        qn *= q;
        sum += t;
        if tail_m.push(t.norm(), sum.norm())? {
            break;
        }
    }
    Ok(EvalResult {
        value: sum,
        err_estimate: tail_p.err().max(tail_m.err()),
        terms_used: tail_p.terms() + tail_m.terms() + 1,
    })
}

/// ϑ₁₁(u,τ) = −iq^{1/8}e^{−πiu}(q, e^{2πiu}, qe^{−2πiu};q)_∞.
pub fn theta11(u: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    let q = tau.q();
    let pre = -I * tau.qpow_re(0.125) * (-PI * I * u).exp();
    Ok(qpoch_inf_many(&[q, e(u), q * e(-u)], q, trunc)?.scale(pre))
}

fn theta11_terms(
    u: C64,
    tau: &ModularPoint,
    trunc: &Truncation,
    weight: impl Fn(f64) -> C64,
) -> Result<EvalResult> {
    let t = tau.tau();
    let term = |nu: f64| (PI * I * nu * nu * t + 2.0 * PI * I * nu * (u + 0.5)).exp() * weight(nu);
    let mut sum = term(0.5) + term(-0.5);
    let mut tails = [Tail::new(trunc, "theta11 sum"), Tail::new(trunc, "theta11 sum")];
    let mut done = [false, false];
    let mut k = 1.0;
    while !(done[0] && done[1]) {
        for (side, s) in [(0usize, 1.0), (1, -1.0)] {
            if done[side] {
                continue;
            }
            let z = term(s * (k + 0.5));
            sum += z;
            done[side] = tails[side].push(z.norm(), sum.norm())?;
        }
        k += 1.0;
    }
    Ok(EvalResult {
        value: sum,
        err_estimate: tails[0].err().max(tails[1].err()),
        terms_used: tails[0].terms() + tails[1].terms() + 2,
    })
}

/// ϑ₁₁ from its defining sum over ν ∈ Z + 1/2.
pub fn theta11_sum(u: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    theta11_terms(u, tau, trunc, |_| ONE)
}

/// ϑ₁₁′(u)/ϑ₁₁(u), differentiating the defining sum term by term.
pub fn theta11_logderiv(u: C64, tau: &ModularPoint, trunc: &Truncation) -> Result<EvalResult> {
    tau.check_off_lattice(u, "u")?;
    let d = theta11_terms(u, tau, trunc, |nu| 2.0 * PI * I * nu)?;
    let th = theta11(u, tau, trunc)?;
    Ok(d.div(th))
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

    #[test]
    fn qpoch_inf_examples() {
        let t = Truncation::tight();
        let q = c(0.3, 0.0);
        assert_eq!(qpoch_inf(ZERO, q, &t).unwrap().value, ONE);
        assert_eq!(qpoch_inf(ONE, q, &t).unwrap().value, ZERO);
        let brute = (0..500).fold(ONE, |p, j| p * (1.0 - 0.2 * 0.3f64.powi(j)));
        assert!(rel(qpoch_inf(c(0.2, 0.0), q, &t).unwrap().value, brute) < 1e-14);
    }

    #[test]
    fn qpoch_finite_examples() {
        let t = Truncation::tight();
        let q = c(0.3, 0.0);
        let x = c(0.7, 0.0);
        assert_eq!(qpoch(x, q, 0, &t).unwrap().value, ONE);
        let two = qpoch(x, q, 2, &t).unwrap().value;
        assert!(rel(two, c((1.0 - 0.7) * (1.0 - 0.21), 0.0)) < 1e-15);
        let neg = qpoch(x, q, -2, &t).unwrap().value;
        let direct = 1.0 / ((1.0 - 0.7 / 0.3) * (1.0 - 0.7 / 0.09));
        assert!(rel(neg, c(direct, 0.0)) < 1e-14);
        let oracle = qpoch_inf(x, q, &t).unwrap().value / qpoch_inf(x / 0.09, q, &t).unwrap().value;
        assert!(rel(neg, oracle) < 1e-12);
    }

    #[test]
    fn qpoch_negative_pole() {
        let q = c(0.5, 0.0);
        assert!(matches!(qpoch(q, q, -1, &Truncation::default()), Err(QError::PoleHit(_))));
    }

    #[test]
    fn theta_q_examples() {
        let t = Truncation::tight();
        let q = c(0.3, 0.0);
        assert_eq!(theta_q(-ONE, q, &t).unwrap().value, ZERO);
        let a = theta_q(q, q, &t).unwrap().value;
        let b = theta_q(ONE, q, &t).unwrap().value;
        assert!(rel(a, b) < 1e-15);
        let x = c(0.4, 0.1);
        let q = c(0.25, 0.0);
        assert!(rel(theta_q(x, q, &t).unwrap().value, theta_q_sum(x, q, &t).unwrap().value) < 1e-12);
        assert!(matches!(theta_q(ZERO, q, &t), Err(QError::Domain(_))));
    }

    #[test]
    fn theta11_examples() {
        let t = Truncation::tight();
        let tau = ModularPoint::new(c(0.0, 0.8)).unwrap();
        assert_eq!(theta11(ZERO, &tau, &t).unwrap().value.norm(), 0.0);
        let a = theta11(c(0.3, 0.0), &tau, &t).unwrap().value;
        let b = theta11(c(-0.3, 0.0), &tau, &t).unwrap().value;
        assert!(rel(a, -b) < 1e-14);
        let tau = ModularPoint::new(c(0.1, 0.9)).unwrap();
        let u = c(0.23, 0.11);
        assert!(rel(theta11(u, &tau, &t).unwrap().value, theta11_sum(u, &tau, &t).unwrap().value) < 1e-12);
    }

    #[test]
    fn theta11_quasi_periods() {
        let t = Truncation::tight();
        let tau = ModularPoint::new(c(0.15, 0.85)).unwrap();
        let u = c(0.17, -0.06);
        let th = theta11(u, &tau, &t).unwrap().value;
        assert!(rel(theta11(u + 1.0, &tau, &t).unwrap().value, -th) < 1e-13);
        let shifted = theta11(u + tau.tau(), &tau, &t).unwrap().value;
        let expect = -e(-u) * tau.qpow_re(-0.5) * th;
        assert!(rel(shifted, expect) < 1e-13);
    }

    #[test]
    fn logderiv_examples() {
        let t = Truncation::tight();
        let tau = ModularPoint::new(c(0.0, 0.9)).unwrap();
        assert!(theta11_logderiv(c(0.5, 0.0), &tau, &t).unwrap().value.norm() < 1e-13);
        let u = c(0.31, 0.04);
        let a = theta11_logderiv(u, &tau, &t).unwrap().value;
        let b = theta11_logderiv(-u, &tau, &t).unwrap().value;
        assert!(rel(a, -b) < 1e-13);
        let tau = ModularPoint::new(c(0.0, 0.85)).unwrap();
        let h = 1e-5;
        let lp = theta11(u + h, &tau, &t).unwrap().value.ln();
        let lm = theta11(u - h, &tau, &t).unwrap().value.ln();
        let fd = (lp - lm) / (2.0 * h);
        assert!(rel(theta11_logderiv(u, &tau, &t).unwrap().value, fd) < 1e-8);
        assert!(matches!(theta11_logderiv(tau.tau() + 1e-8, &tau, &t), Err(QError::PoleHit(_))));
    }

    #[test]
    fn nome_round_trip() {
        let p = ModularPoint::from_nome(c(0.25, 0.0)).unwrap();
        assert!(rel(p.q(), c(0.25, 0.0)) < 1e-15);
        assert!((e(p.tau()) - p.q()).norm() < 1e-15);
        assert!(ModularPoint::new(c(0.3, -0.1)).is_err());
        assert!(ModularPoint::from_nome(c(1.2, 0.0)).is_err());
    }

    #[test]
    fn lattice_distance_sees_shifted_points() {
        let tau = c(0.15, 0.85);
        assert!(lattice_distance(tau * 3.0 - 2.0 + c(1e-9, 0.0), tau) < 1e-8);
        assert!((lattice_distance(c(0.5, 0.0), tau) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn truncation_validation() {
        assert!(Truncation::new(0.0, 10, 3).is_err());
        assert!(Truncation::new(1e-10, 2, 3).is_err());
        assert!(Truncation::new(1e-10, 10, 3).is_ok());
    }
}
