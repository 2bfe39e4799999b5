//! The Jackson q-Bessel side of μ(u,v;α): the j-decomposition, its
//! translation, the α → 1 limit and the half-period reductions.

use std::f64::consts::PI;

use super::mu::{mu, mz, th, re};
use super::{case, Draw, IdentityCase, Row};
use crate::mufun::{j_alpha, j_alpha_bessel, phi_factor, MuPoint};
use crate::qcore::{qpoch_inf_many, theta11_logderiv, ModularPoint, Result, Truncation, C64, I, ZERO};
use crate::qhyper::{q_bessel_j2_phi11, q_bessel_j2_with_log};

const GEN: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15); real alpha in (-2.5, 2.5) off the integers";
const ZW: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15)";
const HALF: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u with Re in (-0.45, 0.45), Im in (-0.15, 0.15), v = u + 1/2";

fn point(d: &mut Draw) -> Result<(ModularPoint, C64, C64, C64)> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    let al = d.alpha_nonint(-2.5, 2.5);
    MuPoint::new(u, v, al, tau)?;
    tau.check_off_lattice(u - v, "u-v")?;
    Ok((tau, u, v, al))
}

fn j_forms(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v, al) = point(d)?;
    let w = u - v;
    let a = d.v(j_alpha(w, al, &tau, tr))?;
    Ok(vec![Row::new(a, d.v(j_alpha_bessel(w, al, &tau, tr))?)])
}

fn j_decomposition(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v, al) = point(d)?;
    let p = MuPoint::new(u, v, al, tau)?;
    let lhs = I * tau.qpow_re(0.125) * mu(d, u, v, al, &tau, tr)?;
    let t1 = phi_factor(&p, tr)? * d.v(j_alpha(u - v, al, &tau, tr))?;
    let t2 = d.v(j_alpha(v - u, al, &tau, tr))?;
    Ok(vec![Row::new(lhs, t1 + t2).with_scale(lhs.norm() + t1.norm() + t2.norm())])
}

fn j_translation(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v, al) = point(d)?;
    let z = d.uv("z");
    let at = al * tau.tau();
    let num = th(d, at, &tau, tr)? * th(d, u - v, &tau, tr)? * th(d, z, &tau, tr)? * th(d, u + v + z - at, &tau, tr)?;
    let den = th(d, u - at, &tau, tr)? * th(d, v, &tau, tr)? * th(d, u + z - at, &tau, tr)? * th(d, v + z, &tau, tr)?;
    let lhs = num / den * (2.0 * PI * I * al * (u - v)).exp() * d.v(j_alpha(u - v, al + 1.0, &tau, tr))?;
    let c = I * tau.qpow_re(0.125);
    let m1 = c * mu(d, u + z, v + z, al + 1.0, &tau, tr)?;
    let m0 = c * mu(d, u, v, al + 1.0, &tau, tr)?;
    Ok(vec![Row::new(lhs, m1 - m0).with_scale(lhs.norm() + m1.norm() + m0.norm())])
}

fn theta_logderiv(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    tau.check_off_lattice(u, "u")?;
    tau.check_off_lattice(v, "v")?;
    let q = tau.q();
    let lhs = th(d, u - v, &tau, tr)? * mz(d, u, v, &tau, tr)?;
    let ld = (d.v(theta11_logderiv(u, &tau, tr))? - d.v(theta11_logderiv(v, &tau, tr))?) / (2.0 * PI * I);
    let w = crate::qcore::e(u - v);
    let mut s = ZERO;
    let mut scale = lhs.norm() + ld.norm();
    for n in (-60i32..=60).filter(|&n| n != 0) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let t = sign * q.powi(n * (n + 1) / 2) / (1.0 - q.powi(n)) * w.powi(n);
        s += t;
        scale += t.norm();
    }
    Ok(vec![Row::new(lhs, ld + s).with_scale(scale)])
}

fn half_point(d: &mut Draw) -> Result<(ModularPoint, C64)> {
    let tau = d.tau()?;
    let u = d.uv("u");
    tau.check_off_lattice(u, "u")?;
    tau.check_off_lattice(u + 0.5, "u+1/2")?;
    tau.check_off_lattice(2.0 * u, "2u")?;
    Ok((tau, u))
}

fn half_reduction(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u) = half_point(d)?;
    let al = d.alpha_nonint(-2.5, 2.5);
    let lhs = mu(d, u, u + 0.5, al - 1.0, &tau, tr)?;
    let rhs = (tau.qpow(-al) - 1.0) * mu(d, u, u + 0.5, al + 1.0, &tau, tr)?;
    Ok(vec![Row::new(lhs, rhs)])
}

fn half_closed(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u) = half_point(d)?;
    let q = tau.q();
    let base = mz(d, u, u + 0.5, &tau, tr)?;
    let mut rows = Vec::new();
    let (mut odd, mut even) = (C64::new(1.0, 0.0), C64::new(1.0, 0.0));
    for k in 0..=4i32 {
        if k > 0 {
            odd *= 1.0 - q.powi(2 * k - 1);
            even *= 1.0 - q.powi(2 * k);
        }
        let m_even = mu(d, u, u + 0.5, re(2.0 * k as f64), &tau, tr)?;
        rows.push(Row::new(m_even, -I * tau.qpow_re(-0.125) * q.powi(k * k) / odd).tag("k", (2 * k) as f64));
        let m_odd = mu(d, u, u + 0.5, re(2.0 * k as f64 + 1.0), &tau, tr)?;
        rows.push(Row::new(m_odd, q.powi(k * (k + 1)) / even * base).tag("k", (2 * k + 1) as f64));
    }
    Ok(rows)
}

fn half_zwegers(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u) = half_point(d)?;
    let q = tau.q();
    let m = mz(d, u, u + 0.5, &tau, tr)?;
    let p = d.v(qpoch_inf_many(&[q, q, q, q, -q, -q], q, tr))?;
    let tu = th(d, u, &tau, tr)?;
    let th2 = th(d, u + 0.5, &tau, tr)?;
    let rhs = I * tau.qpow_re(0.25) * p * th(d, 2.0 * u, &tau, tr)? / (tu * tu * th2 * th2);
    let half = th(d, re(0.5), &tau, tr)?;
    let half_prod = -2.0 * tau.qpow_re(0.125) * d.v(qpoch_inf_many(&[q, -q, -q], q, tr))?;
    Ok(vec![Row::new(m, rhs).tag("relation", 0.0), Row::new(half, half_prod).tag("relation", 1.0)])
}

fn bessel_forms(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let tau = d.tau()?;
    let nu = d.complex("nu", (-1.5, 2.5), (-0.5, 0.5));
    let x = d.polar("x", 0.2, 2.0, 3.0);
    let lh = (x / 2.0).ln();
    let a = d.v(q_bessel_j2_with_log(nu, lh, &tau, tr))?;
    Ok(vec![Row::new(a, d.v(q_bessel_j2_phi11(nu, lh, &tau, tr))?)])
}

pub(super) fn cases() -> Vec<IdentityCase> {
    vec![
        case("bessel.j-forms", "j(w;alpha) through 1phi1 and through Jackson's J2", GEN, 1e-9, j_forms),
        case("bessel.j-decomposition", "i q^(1/8) mu(u,v;alpha) = Phi(u,v;alpha) j(u-v;alpha) + j(v-u;alpha)", GEN, 1e-9, j_decomposition),
        case("bessel.j-translation", "theta quotient times j(u-v;alpha+1) = i q^(1/8) (mu(u+z,v+z;alpha+1) - mu(u,v;alpha+1))", GEN, 1e-9, j_translation),
        case("bessel.theta-logderiv", "theta11(u-v) mu(u,v) through theta11'/theta11", ZW, 1e-9, theta_logderiv),
        case("bessel.half-period-reduction", "mu(u,u+1/2;alpha-1) = (q^(-alpha)-1) mu(u,u+1/2;alpha+1)", HALF, 1e-9, half_reduction),
        case("bessel.half-period-closed", "closed forms of mu(u,u+1/2;2k) and mu(u,u+1/2;2k+1)", HALF, 1e-9, half_closed),
        case("bessel.half-period-zwegers", "mu(u,u+1/2) as a theta quotient", HALF, 1e-9, half_zwegers),
        case("bessel.bessel-forms", "J2 through 0phi1 and through 1phi1", "tau in {0.9i, 1.2i, 0.15+0.85i}; nu with Re in (-1.5, 2.5), Im in (-0.5, 0.5); |x| in (0.2, 2), |arg x| < 3", 1e-9, bessel_forms),
    ]
}
