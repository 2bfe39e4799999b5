//! The completions μ̃ and ν̃ and their modular transformations.

use super::{case, failing, Draw, IdentityCase, Row};
use crate::modular::{mu_tilde, nu_tilde, s_factor, s_image, t_factor, t_image, NuVariant};
use crate::qcore::{ModularPoint, Result, Truncation, C64};

const TAUS: [(f64, f64); 2] = [(0.0, 1.1), (0.0, 1.2)];
const DOM: &str = "tau in {1.1i, 1.2i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15); k = 1..3 where listed";

fn point(d: &mut Draw) -> Result<(ModularPoint, C64, C64)> {
    let tau = d.tau_from(&TAUS)?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    tau.check_off_lattice(u, "u")?;
    tau.check_off_lattice(v, "v")?;
    Ok((tau, u, v))
}

fn nu_rows(d: &mut Draw, tr: &Truncation, variant: NuVariant) -> Result<Vec<Row>> {
    let (tau, u, v) = point(d)?;
    let m = d.v(mu_tilde(u, v, &tau, tr))?;
    let mut rows = Vec::new();
    for k in 1..=3 {
        rows.push(Row::new(d.v(nu_tilde(u, v, k, &tau, variant, tr))?, m).tag("k", k as f64));
    }
    Ok(rows)
}

fn mu_t(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = point(d)?;
    let a = d.v(mu_tilde(u, v, &t_image(&tau)?, tr))?;
    Ok(vec![Row::new(a, t_factor() * d.v(mu_tilde(u, v, &tau, tr))?)])
}

fn mu_s_rows(d: &mut Draw, tr: &Truncation, printed: bool) -> Result<Vec<Row>> {
    let (tau, u, v) = point(d)?;
    let (us, vs, ts) = s_image(u, v, &tau)?;
    ts.check_off_lattice(us, "u/tau")?;
    ts.check_off_lattice(vs, "v/tau")?;
    let a = d.v(mu_tilde(us, vs, &ts, tr))?;
    Ok(vec![Row::new(a, s_factor(u, v, &tau, printed) * d.v(mu_tilde(u, v, &tau, tr))?)])
}

fn nu_t(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = point(d)?;
    let t1 = t_image(&tau)?;
    let mut rows = Vec::new();
    for k in 1..=3 {
        let a = d.v(nu_tilde(u, v, k, &t1, NuVariant::Consistent, tr))?;
        let b = d.v(nu_tilde(u, v, k, &tau, NuVariant::Consistent, tr))?;
        rows.push(Row::new(a, t_factor() * b).tag("k", k as f64));
    }
    Ok(rows)
}

fn nu_s(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = point(d)?;
    let (us, vs, ts) = s_image(u, v, &tau)?;
    ts.check_off_lattice(us, "u/tau")?;
    ts.check_off_lattice(vs, "v/tau")?;
    let f = s_factor(u, v, &tau, false);
    let mut rows = Vec::new();
    for k in 1..=3 {
        let a = d.v(nu_tilde(us, vs, k, &ts, NuVariant::Consistent, tr))?;
        let b = d.v(nu_tilde(u, v, k, &tau, NuVariant::Consistent, tr))?;
        rows.push(Row::new(a, f * b).tag("k", k as f64));
    }
    Ok(rows)
}

fn mu_symmetry(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = point(d)?;
    let a = d.v(mu_tilde(v, u, &tau, tr))?;
    let b = d.v(mu_tilde(u, v, &tau, tr))?;
    let c = d.v(mu_tilde(-u, -v, &tau, tr))?;
    Ok(vec![Row::new(a, b).tag("relation", 0.0), Row::new(c, b).tag("relation", 1.0)])
}

pub(super) fn cases() -> Vec<IdentityCase> {
    vec![
        case("completion.nu-equals-mu", "nu-tilde(u,v;k) = mu-tilde(u,v)", DOM, 1e-6, |d, tr| nu_rows(d, tr, NuVariant::Consistent)),
        failing("completion.nu-printed", "nu-tilde with the correction (1/2i) R_(k+1)", DOM, 1e-6, |d, tr| nu_rows(d, tr, NuVariant::Printed)),
        case("completion.mu-T", "mu-tilde(u,v;tau+1) = e^(-pi i/4) mu-tilde(u,v;tau)", DOM, 1e-6, mu_t),
        case("completion.mu-S", "mu-tilde(u/tau,v/tau;-1/tau) = -sqrt(-i tau) e^(-pi i(u-v)^2/tau) mu-tilde(u,v;tau)", DOM, 1e-6, |d, tr| mu_s_rows(d, tr, false)),
        failing("completion.mu-S-printed", "S-transformation with multiplier -i sqrt(-i tau) e^(pi i(u-v)^2/tau)", DOM, 1e-6, |d, tr| mu_s_rows(d, tr, true)),
        case("completion.nu-T", "nu-tilde(u,v;k,tau+1) = e^(-pi i/4) nu-tilde(u,v;k,tau)", DOM, 1e-6, nu_t),
        case("completion.nu-S", "S-transformation of nu-tilde", DOM, 1e-6, nu_s),
        case("completion.mu-symmetry", "mu-tilde(v,u) = mu-tilde(-u,-v) = mu-tilde(u,v)", DOM, 1e-6, mu_symmetry),
    ]
}
