//! Registry of identities checked by numerical residuals at sampled points,
//! and the runner that turns them into reports.

mod appell;
mod bessel;
mod classical;
mod completion;
mod hermite;
mod mu;
mod transform;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::qcore::{EvalResult, ModularPoint, QError, Result, Truncation, C64};

pub const REPORT_SCHEMA: &str = "qmu-report/1";

/// Checked-in list of identities that must each have a registered case.
pub const MANIFEST: &str = include_str!("manifest.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Pass,
    Fail,
}

/// One side-by-side comparison produced by a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub lhs: C64,
    pub rhs: C64,
    pub tags: Vec<(String, f64)>,
    /// Summed magnitude of the terms on both sides; 0 when the sides are single terms.
    pub scale: f64,
}

impl Row {
    pub fn new(lhs: C64, rhs: C64) -> Self {
        Row { lhs, rhs, tags: Vec::new(), scale: 0.0 }
    }

    /// Measures the residual against `scale` when the sides are smaller than
    /// the terms they are built from.
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    /// Marks the row with a discrete parameter such as a degree.
    pub fn tag(mut self, name: &str, value: f64) -> Self {
        self.tags.push((name.to_string(), value));
        self
    }
}

pub type ResidualFn = fn(&mut Draw, &Truncation) -> Result<Vec<Row>>;

pub struct IdentityCase {
    pub name: &'static str,
    /// Short formula description, matched against the manifest.
    pub anchor: &'static str,
    /// Human-readable sampling domain.
    pub sampler: &'static str,
    pub tol: f64,
    pub expected: Expect,
    pub residual: ResidualFn,
}

impl IdentityCase {
    pub fn suite(&self) -> &'static str {
        self.name.split('.').next().unwrap_or(self.name)
    }
}

/// Random source for one case. Every drawn value is logged as a sample input,
/// and every evaluation routed through [`Draw::v`] feeds the error budget.
pub struct Draw {
    rng: ChaCha8Rng,
    inputs: BTreeMap<String, [f64; 2]>,
    err: f64,
}

pub const DEFAULT_TAUS: [(f64, f64); 3] = [(0.0, 0.9), (0.0, 1.2), (0.15, 0.85)];

impl Draw {
    fn new(seed: u64) -> Self {
        Draw { rng: ChaCha8Rng::seed_from_u64(seed), inputs: BTreeMap::new(), err: 0.0 }
    }

    fn reset(&mut self) {
        self.inputs.clear();
        self.err = 0.0;
    }

    pub fn record(&mut self, name: &str, z: C64) -> C64 {
        self.inputs.insert(name.to_string(), [z.re, z.im]);
        z
    }

    pub fn real(&mut self, name: &str, lo: f64, hi: f64) -> f64 {
        let x = self.rng.gen_range(lo..hi);
        self.record(name, C64::new(x, 0.0));
        x
    }

    pub fn int(&mut self, name: &str, lo: i64, hi: i64) -> i64 {
        let k = self.rng.gen_range(lo..=hi);
        self.record(name, C64::new(k as f64, 0.0));
        k
    }

    pub fn complex(&mut self, name: &str, re: (f64, f64), im: (f64, f64)) -> C64 {
        let z = C64::new(self.rng.gen_range(re.0..re.1), self.rng.gen_range(im.0..im.1));
        self.record(name, z)
    }

    /// Elliptic variable: Re in (−0.45, 0.45), Im in (−0.15, 0.15).
    pub fn uv(&mut self, name: &str) -> C64 {
        self.complex(name, (-0.45, 0.45), (-0.15, 0.15))
    }

    /// Modulus in [rmin, rmax), argument in (−phmax, phmax).
    pub fn polar(&mut self, name: &str, rmin: f64, rmax: f64, phmax: f64) -> C64 {
        let r = self.rng.gen_range(rmin..rmax);
        let ph = self.rng.gen_range(-phmax..phmax);
        self.record(name, C64::from_polar(r, ph))
    }

    /// Uniform point of the unit disc, not logged; callers record what they build from it.
    pub fn unit_disc(&mut self) -> C64 {
        let r = self.rng.gen_range(0.0f64..1.0).sqrt();
        let ph = self.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        C64::from_polar(r, ph)
    }

    /// A real α in (lo, hi) at least 1e-3 away from every integer.
    pub fn alpha_nonint(&mut self, lo: f64, hi: f64) -> C64 {
        loop {
            let a: f64 = self.rng.gen_range(lo..hi);
            if (a - a.round()).abs() >= 1e-3 {
                return self.record("alpha", C64::new(a, 0.0));
            }
        }
    }

    pub fn tau_from(&mut self, choices: &[(f64, f64)]) -> Result<ModularPoint> {
        let (re, im) = choices[self.rng.gen_range(0..choices.len())];
        let t = self.record("tau", C64::new(re, im));
        ModularPoint::new(t)
    }

    pub fn tau(&mut self) -> Result<ModularPoint> {
        self.tau_from(&DEFAULT_TAUS)
    }

    /// Real nome in [lo, hi).
    pub fn nome(&mut self, lo: f64, hi: f64) -> C64 {
        let q = self.rng.gen_range(lo..hi);
        self.record("q", C64::new(q, 0.0))
    }

    /// Charges an externally tracked relative error.
    pub fn charge(&mut self, rel_err: f64) {
        self.err = self.err.max(rel_err);
    }

    /// Unwraps an evaluation and charges its relative error to the sample.
    pub fn v(&mut self, r: Result<EvalResult>) -> Result<C64> {
        let r = r?;
        self.err = self.err.max(r.rel_err());
        Ok(r.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub inputs: BTreeMap<String, [f64; 2]>,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub abs_residual: f64,
    pub rel_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub anchor: String,
    pub expected: Expect,
    pub tol: f64,
    pub seed: u64,
    pub samples: Vec<SampleRecord>,
    pub rejected: usize,
    pub max_rel_residual: f64,
    /// 10³ × the largest relative error estimate among the evaluations.
    pub err_budget: f64,
    pub pass: bool,
    /// `pass` agrees with `expected`.
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunInfo {
    pub seed: u64,
    pub samples: usize,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub run: RunInfo,
    pub cases: Vec<IdentityReport>,
}

impl RunReport {
    pub fn all_ok(&self) -> bool {
        self.cases.iter().all(|c| c.ok)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol_override: Option<f64>,
    pub trunc: Truncation,
}

impl RunConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        // series run to full double precision so residuals measure the identity
        RunConfig { samples, seed, tol_override: None, trunc: Truncation::tight() }
    }
}

pub struct Registry {
    cases: Vec<IdentityCase>,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn rel(a: C64, b: C64, scale: f64) -> f64 {
    (a - b).norm() / (a.norm() + b.norm()).max(scale).max(1e-300)
}

impl Registry {
    pub fn new() -> Self {
        Registry { cases: Vec::new() }
    }

    pub fn add(&mut self, case: IdentityCase) -> Result<()> {
        if self.get(case.name).is_some() {
            return Err(QError::DuplicateName(case.name.to_string()));
        }
        self.cases.push(case);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCase> {
        self.cases.iter().find(|c| c.name == name)
    }

    pub fn cases(&self) -> &[IdentityCase] {
        &self.cases
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    /// Cases selected by "all", a suite prefix or an exact name, sorted by name.
    pub fn select(&self, selector: &str) -> Result<Vec<&IdentityCase>> {
        let mut v: Vec<&IdentityCase> = self
            .cases
            .iter()
            .filter(|c| selector == "all" || c.name == selector || c.suite() == selector)
            .collect();
        if v.is_empty() {
            return Err(QError::UnknownIdentity(selector.to_string()));
        }
        v.sort_by_key(|c| c.name);
        Ok(v)
    }

    pub fn run(&self, names: &[&str], cfg: &RunConfig) -> Result<RunReport> {
        let mut chosen: Vec<&IdentityCase> = Vec::new();
        for n in names {
            for c in self.select(n)? {
                if !chosen.iter().any(|d| d.name == c.name) {
                    chosen.push(c);
                }
            }
        }
        chosen.sort_by_key(|c| c.name);
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(chosen.len().max(1));
        let mut out: Vec<Option<IdentityReport>> = vec![None; chosen.len()];
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let chosen = &chosen;
                    s.spawn(move || {
                        (w..chosen.len())
                            .step_by(workers)
                            .map(|i| (i, run_case(chosen[i], cfg)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("identity worker panicked") {
                    out[i] = Some(r);
                }
            }
        });
        Ok(RunReport {
            schema: REPORT_SCHEMA,
            run: RunInfo { seed: cfg.seed, samples: cfg.samples, tol: cfg.tol_override },
            cases: out.into_iter().map(|r| r.expect("every case ran")).collect(),
        })
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

/// Evaluates one case at `cfg.samples` admissible points. Pole and domain
/// errors reject the draw; anything else fails the case.
pub fn run_case(case: &IdentityCase, cfg: &RunConfig) -> IdentityReport {
    let seed = cfg.seed ^ fnv1a(case.name);
    let tol = cfg.tol_override.unwrap_or(case.tol);
    let mut d = Draw::new(seed);
    let mut samples = Vec::new();
    let mut rejected = 0;
    let mut err: f64 = 0.0;
    let mut error = None;
    let mut index = 0;
    while index < cfg.samples {
        d.reset();
        match (case.residual)(&mut d, &cfg.trunc) {
            Ok(rows) => {
                err = err.max(d.err);
                for row in rows {
                    let mut inputs = d.inputs.clone();
                    for (k, v) in &row.tags {
                        inputs.insert(k.clone(), [*v, 0.0]);
                    }
                    samples.push(SampleRecord {
                        index,
                        inputs,
                        lhs: [row.lhs.re, row.lhs.im],
                        rhs: [row.rhs.re, row.rhs.im],
                        abs_residual: (row.lhs - row.rhs).norm(),
                        rel_residual: rel(row.lhs, row.rhs, row.scale),
                    });
                }
                index += 1;
            }
            Err(e) if e.is_rejectable() => {
                rejected += 1;
                if rejected > 100 * cfg.samples.max(1) {
                    error = Some(format!("too many rejected draws, last: {e}"));
                    break;
                }
            }
            Err(e) => {
                error = Some(e.to_string());
                break;
            }
        }
    }
    // NaN residuals count as failures
    let max_rel = samples.iter().map(|s| s.rel_residual).fold(0.0, |m: f64, r| if r.is_nan() { f64::INFINITY } else { m.max(r) });
    let pass = error.is_none() && !samples.is_empty() && max_rel <= tol;
    IdentityReport {
        name: case.name.to_string(),
        anchor: case.anchor.to_string(),
        expected: case.expected,
        tol,
        seed,
        samples,
        rejected,
        max_rel_residual: max_rel,
        err_budget: 1e3 * err,
        pass,
        ok: pass == (case.expected == Expect::Pass),
        error,
    }
}

/// Every registered identity.
pub fn register_all() -> Result<Registry> {
    let mut r = Registry::new();
    for case in mu::cases()
        .into_iter()
        .chain(hermite::cases())
        .chain(transform::cases())
        .chain(appell::cases())
        .chain(classical::cases())
        .chain(bessel::cases())
        .chain(completion::cases())
    {
        r.add(case)?;
    }
    Ok(r)
}

/// Manifest entries with no case carrying that anchor.
pub fn coverage_gaps(reg: &Registry) -> Vec<&'static str> {
    MANIFEST
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter(|l| !reg.cases().iter().any(|c| c.anchor == *l))
        .collect()
}

pub(crate) fn case(
    name: &'static str,
    anchor: &'static str,
    sampler: &'static str,
    tol: f64,
    residual: ResidualFn,
) -> IdentityCase {
    IdentityCase { name, anchor, sampler, tol, expected: Expect::Pass, residual }
}

pub(crate) fn failing(
    name: &'static str,
    anchor: &'static str,
    sampler: &'static str,
    tol: f64,
    residual: ResidualFn,
) -> IdentityCase {
    IdentityCase { name, anchor, sampler, tol, expected: Expect::Fail, residual }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        let reg = register_all().unwrap();
        assert!(reg.len() >= 30);
        assert_eq!(coverage_gaps(&reg), Vec::<&str>::new());
        assert!(reg.get("hermite.minus-degree").is_some());
        assert!(reg.get("appell.system-shift").is_some());
        assert!(matches!(reg.select("no-such-suite"), Err(QError::UnknownIdentity(_))));
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut reg = Registry::new();
        let f: ResidualFn = |_, _| Ok(vec![]);
        reg.add(case("x.y", "a", "s", 1.0, f)).unwrap();
        assert!(matches!(reg.add(case("x.y", "a", "s", 1.0, f)), Err(QError::DuplicateName(_))));
    }

    #[test]
    fn draws_are_reproducible() {
        let mut a = Draw::new(7);
        let mut b = Draw::new(7);
        assert_eq!(a.uv("u"), b.uv("u"));
        assert_eq!(a.alpha_nonint(-2.5, 2.5), b.alpha_nonint(-2.5, 2.5));
        assert_eq!(a.inputs, b.inputs);
    }

    #[test]
    fn rejections_redraw() {
        let f: ResidualFn = |d, _| {
            let x = d.real("x", 0.0, 1.0);
            if x < 0.5 {
                Err(QError::PoleHit("x".into()))
            } else {
                Ok(vec![Row::new(C64::new(x, 0.0), C64::new(x, 0.0))])
            }
        };
        let r = run_case(&case("t.reject", "a", "s", 1e-12, f), &RunConfig::new(10, 1));
        assert!(r.pass && r.rejected > 0 && r.samples.len() == 10);
    }

    #[test]
    fn impossible_tolerance_fails() {
        let reg = register_all().unwrap();
        let mut cfg = RunConfig::new(2, 42);
        cfg.tol_override = Some(1e-30);
        let rep = reg.run(&["mu-special"], &cfg).unwrap();
        assert!(rep.cases.iter().all(|c| !c.pass));
    }
}
