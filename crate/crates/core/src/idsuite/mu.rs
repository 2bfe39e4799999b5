//! μ(u,v;α) and Zwegers' μ: special values, shifts, symmetries, integer α,
//! the four series expressions and the two statement/proof discrepancies.

use std::f64::consts::PI;

use super::{case, failing, Draw, IdentityCase, Row};
use crate::mufun::{mu_general, mu_general_expr, mu_zwegers, phi_factor, MuForm, MuPoint};
use crate::qcore::{
    bilateral, e, ln_one_minus_exp, qpoch, qpoch_inf, qpoch_inf_many, theta11, theta_q, ModularPoint,
    Result, Truncation, C64, I, ONE, ZERO,
};
use crate::qhyper::{phi, psi, SeriesSpec};

pub(super) fn mu(d: &mut Draw, u: C64, v: C64, al: C64, tau: &ModularPoint, tr: &Truncation) -> Result<C64> {
    d.v(mu_general(&MuPoint::new(u, v, al, *tau)?, tr))
}

pub(super) fn mz(d: &mut Draw, u: C64, v: C64, tau: &ModularPoint, tr: &Truncation) -> Result<C64> {
    d.v(mu_zwegers(u, v, tau, tr))
}

pub(super) fn th(d: &mut Draw, z: C64, tau: &ModularPoint, tr: &Truncation) -> Result<C64> {
    d.v(theta11(z, tau, tr))
}

pub(super) fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// (q;q)_j as a finite product.
pub(super) fn qf(q: C64, j: usize) -> C64 {
    (1..=j).fold(ONE, |p, i| p * (1.0 - q.powi(i as i32)))
}

struct Pt {
    tau: ModularPoint,
    u: C64,
    v: C64,
    al: C64,
}

fn generic(d: &mut Draw) -> Result<Pt> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    let al = d.alpha_nonint(-2.5, 2.5);
    MuPoint::new(u, v, al, tau)?;
    Ok(Pt { tau, u, v, al })
}

fn zw_point(d: &mut Draw) -> Result<(ModularPoint, C64, C64)> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    tau.check_off_lattice(u, "u")?;
    tau.check_off_lattice(v, "v")?;
    Ok((tau, u, v))
}

const GENERIC: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15); real alpha in (-2.5, 2.5) off the integers";
const ZW: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15)";
const INTEGER: &str = "as for Zwegers' mu, with each integer k listed in the rows";

fn alpha_zero(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = zw_point(d)?;
    let m = mu(d, u, v, ZERO, &tau, tr)?;
    Ok(vec![Row::new(m, -I * tau.qpow_re(-0.125))])
}

fn alpha_one(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = zw_point(d)?;
    Ok(vec![Row::new(mu(d, u, v, ONE, &tau, tr)?, mz(d, u, v, &tau, tr)?)])
}

fn hw_recurrence(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let t = tau.tau();
    let (m0, m1, m2) = (mu(d, u, v, al, &tau, tr)?, mu(d, u + t, v, al, &tau, tr)?, mu(d, u + 2.0 * t, v, al, &tau, tr)?);
    let xq = e(u - v) * tau.q();
    Ok(vec![Row::new(m2, (1.0 - xq) * tau.qpow(al / 2.0) * m1 + xq * m0)])
}

fn periodicity(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let m = mu(d, u, v, al, &tau, tr)?;
    let a = mu(d, u + 1.0, v, al, &tau, tr)?;
    let b = mu(d, u, v + 1.0, al, &tau, tr)?;
    Ok(vec![
        Row::new(m, (-PI * I * al).exp() * a),
        Row::new(m, (PI * I * al).exp() * b),
    ])
}

fn forward_shift(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let qa2 = tau.qpow(al / 2.0);
    let lhs = mu(d, u + tau.tau(), v, al, &tau, tr)?;
    let rhs = -e(u - v) * qa2 * mu(d, u, v, al, &tau, tr)?
        + (PI * I * (u - v)).exp() * qa2 * mu(d, u, v, al - 1.0, &tau, tr)?;
    Ok(vec![Row::new(lhs, rhs)])
}

fn backward_shift(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let lhs = mu(d, u - tau.tau(), v, al, &tau, tr)?;
    let rhs = tau.qpow(al / 2.0) * mu(d, u, v, al, &tau, tr)?
        - 2.0 * I * (-PI * I * (u - v)).exp() * (PI * al * tau.tau()).sin() * mu(d, u, v, al + 1.0, &tau, tr)?;
    Ok(vec![Row::new(lhs, rhs)])
}

/// Right side of the translation formula for μ(u+z, v+z; α).
pub(super) fn translation_rhs(
    d: &mut Draw,
    u: C64,
    v: C64,
    z: C64,
    al: C64,
    tau: &ModularPoint,
    tr: &Truncation,
) -> Result<C64> {
    let q = tau.q();
    let at = al * tau.tau();
    let t1 = th(d, u + z, tau, tr)? * th(d, v + z - at, tau, tr)? / (th(d, u + z - at, tau, tr)? * th(d, v + z, tau, tr)?)
        * e(al * (u - v))
        * mu(d, v, u, al, tau, tr)?;
    let qq = d.v(qpoch_inf(q, q, tr))?;
    let s = d.v(phi(&SeriesSpec::new(&[tau.qpow(1.0 - al)], &[ZERO], q, e(v - u) * q), tr))?;
    let t2 = I * d.v(qpoch_inf(tau.qpow(al), q, tr))? * qq * qq * tau.qpow((1.0 - 4.0 * al) / 8.0)
        * th(d, z, tau, tr)?
        * th(d, u + v + z - at, tau, tr)?
        / (th(d, u, tau, tr)? * th(d, v - at, tau, tr)? * th(d, u + z - at, tau, tr)? * th(d, v + z, tau, tr)?)
        * (PI * I * (al - 1.0) * (u - v)).exp()
        * s;
    Ok(t1 - t2)
}

fn translation(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let z = d.uv("z");
    let lhs = mu(d, u + z, v + z, al, &tau, tr)?;
    Ok(vec![Row::new(lhs, translation_rhs(d, u, v, z, al, &tau, tr)?)])
}

fn tau_periodicity(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let t = tau.tau();
    Ok(vec![Row::new(mu(d, u, v, al, &tau, tr)?, mu(d, u + t, v + t, al, &tau, tr)?)])
}

fn symmetry(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let p = phi_factor(&MuPoint::new(u, v, al, tau)?, tr)?;
    Ok(vec![Row::new(mu(d, u, v, al, &tau, tr)?, p * mu(d, v, u, al, &tau, tr)?)])
}

fn pseudo_periodicity(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let p = phi_factor(&MuPoint::new(u, v, al, tau)?, tr)?;
    let at = al * tau.tau();
    Ok(vec![Row::new(mu(d, u, v, al, &tau, tr)?, p * mu(d, at - u, at - v, al, &tau, tr)?)])
}

fn cos_recurrence(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Pt { tau, u, v, al } = generic(d)?;
    let lhs = 2.0 * (PI * (u - v)).cos() * mu(d, u, v, al, &tau, tr)?;
    let rhs = (1.0 - tau.qpow(-al)) * mu(d, u, v, al + 1.0, &tau, tr)? + mu(d, u, v, al - 1.0, &tau, tr)?;
    Ok(vec![Row::new(lhs, rhs)])
}

fn forms(d: &mut Draw, tr: &Truncation, form: MuForm) -> Result<Vec<Row>> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    let al = d.alpha_nonint(0.1, 2.5);
    let p = MuPoint::new(u, v, al, tau)?;
    let def = d.v(mu_general_expr(&p, MuForm::Def, tr))?;
    let other = match form {
        MuForm::Def => d.v(mu_general(&p, tr))?,
        f => d.v(mu_general_expr(&p, f, tr))?,
    };
    Ok(vec![Row::new(def, other)])
}

fn integer_rows(
    d: &mut Draw,
    tr: &Truncation,
    ks: std::ops::RangeInclusive<i64>,
    mut f: impl FnMut(&mut Draw, &Truncation, &ModularPoint, C64, C64, i64) -> Result<Vec<(C64, C64)>>,
) -> Result<Vec<Row>> {
    let (tau, u, v) = zw_point(d)?;
    let mut rows = Vec::new();
    for k in ks {
        for (l, r) in f(d, tr, &tau, u, v, k)? {
            rows.push(Row::new(l, r).tag("k", k as f64));
        }
    }
    Ok(rows)
}

fn int_periodicity(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    integer_rows(d, tr, -3..=3, |d, tr, tau, u, v, k| {
        let kk = re(k as f64);
        let m = mu(d, u, v, kk, tau, tr)?;
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        Ok(vec![(mu(d, u + 1.0, v, kk, tau, tr)?, s * m), (mu(d, u, v + 1.0, kk, tau, tr)?, s * m)])
    })
}

fn int_forward(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    integer_rows(d, tr, -3..=3, |d, tr, tau, u, v, k| {
        let kk = re(k as f64);
        let qk2 = tau.qpow_re(k as f64 / 2.0);
        let lhs = mu(d, u + tau.tau(), v, kk, tau, tr)?;
        let rhs = -e(u - v) * qk2 * mu(d, u, v, kk, tau, tr)? + (PI * I * (u - v)).exp() * qk2 * mu(d, u, v, kk - 1.0, tau, tr)?;
        Ok(vec![(lhs, rhs)])
    })
}

fn int_backward(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    integer_rows(d, tr, -3..=3, |d, tr, tau, u, v, k| {
        let kk = re(k as f64);
        let lhs = mu(d, u - tau.tau(), v, kk, tau, tr)?;
        let rhs = tau.qpow_re(k as f64 / 2.0) * mu(d, u, v, kk, tau, tr)?
            - 2.0 * I * (-PI * I * (u - v)).exp() * (PI * kk * tau.tau()).sin() * mu(d, u, v, kk + 1.0, tau, tr)?;
        Ok(vec![(lhs, rhs)])
    })
}

fn int_translation(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let z = d.uv("z");
    integer_rows(d, tr, 0..=3, |d, tr, tau, u, v, k| {
        let q = tau.q();
        let kk = re((k + 1) as f64);
        let lhs = mu(d, u + z, v + z, kk, tau, tr)?;
        let qq = d.v(qpoch_inf(q, q, tr))?;
        let qmk = q.powi(-(k as i32));
        let s = d.v(phi(&SeriesSpec::new(&[qmk], &[ZERO], q, e(u - v) * q), tr))?;
        let corr = I * tau.qpow_re(0.125) * qq * qq * qq * th(d, z, tau, tr)? * th(d, u + v + z, tau, tr)?
            / (th(d, u, tau, tr)? * th(d, v, tau, tr)? * th(d, u + z, tau, tr)? * th(d, v + z, tau, tr)?)
            * (-PI * I * k as f64 * (u - v)).exp()
            / d.v(qpoch(qmk, q, k, tr))?
            * s;
        Ok(vec![(lhs, mu(d, u, v, kk, tau, tr)? + corr)])
    })
}

fn int_symmetry(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    integer_rows(d, tr, -3..=3, |d, tr, tau, u, v, k| {
        let kk = re(k as f64);
        let t = tau.tau();
        let m = mu(d, u, v, kk, tau, tr)?;
        Ok(vec![
            (m, mu(d, u + t, v + t, kk, tau, tr)?),
            (m, mu(d, v, u, kk, tau, tr)?),
            (m, mu(d, -u, -v, kk, tau, tr)?),
        ])
    })
}

fn int_cos(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    integer_rows(d, tr, -3..=3, |d, tr, tau, u, v, k| {
        let kk = re(k as f64);
        let lhs = 2.0 * (PI * (u - v)).cos() * mu(d, u, v, kk, tau, tr)?;
        let rhs = (1.0 - tau.qpow(-kk)) * mu(d, u, v, kk + 1.0, tau, tr)? + mu(d, u, v, kk - 1.0, tau, tr)?;
        Ok(vec![(lhs, rhs)])
    })
}

fn int_product(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    integer_rows(d, tr, 1..=3, |d, tr, tau, u, v, k| {
        let t = tau.tau();
        let s = bilateral(tr, "finite-product form", k as usize + 3, |n| {
            let nf = n as f64;
            let mut l = PI * I * (nf * (nf + 1.0) * t + (2.0 * nf + 1.0) * v + nf);
            for j in 0..k {
                l -= ln_one_minus_exp(2.0 * PI * I * (u + (nf - j as f64) * t));
            }
            Ok(l.exp())
        })?;
        let rhs = (PI * I * k as f64 * (u - v)).exp() / th(d, v, tau, tr)? * d.v(Ok(s))?;
        Ok(vec![(mu(d, u, v, re(k as f64), tau, tr)?, rhs)])
    })
}

fn partial_fraction_sum(d: &mut Draw, tr: &Truncation, tau: &ModularPoint, u: C64, v: C64, k: i64) -> Result<C64> {
    let q = tau.q();
    let mut s = ZERO;
    for j in 0..k {
        let m = (k - 1 - j) as usize;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        s += sign / (qf(q, j as usize) * qf(q, m)) * tau.qpow_re((m * m) as f64 / 2.0)
            * mz(d, u - j as f64 * tau.tau(), v, tau, tr)?;
    }
    Ok(s)
}

fn partial_fraction(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    integer_rows(d, tr, 1..=3, |d, tr, tau, u, v, k| {
        let s = partial_fraction_sum(d, tr, tau, u, v, k)?;
        let pre = (PI * I * (k - 1) as f64 * (u - v + tau.tau())).exp();
        Ok(vec![(mu(d, u, v, re(k as f64), tau, tr)?, pre * s)])
    })
}

fn partial_fraction_printed(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    integer_rows(d, tr, 2..=3, |d, tr, tau, u, v, k| {
        let s = partial_fraction_sum(d, tr, tau, u, v, k)?;
        let pre = (-PI * I * (k - 1) as f64 * (u - v - tau.tau())).exp();
        Ok(vec![(mu(d, u, v, re(k as f64), tau, tr)?, pre * s)])
    })
}

fn zw_periodicity(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = zw_point(d)?;
    let m = mz(d, u, v, &tau, tr)?;
    Ok(vec![Row::new(mz(d, u + 1.0, v, &tau, tr)?, -m), Row::new(mz(d, u, v + 1.0, &tau, tr)?, -m)])
}

fn zw_pseudo(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = zw_point(d)?;
    let m = mz(d, u, v, &tau, tr)?;
    let rhs = -e(u - v) * tau.qpow_re(0.5) * m - I * (PI * I * (u - v)).exp() * tau.qpow_re(0.375);
    Ok(vec![Row::new(mz(d, u + tau.tau(), v, &tau, tr)?, rhs)])
}

fn zw_translation(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = zw_point(d)?;
    let z = d.uv("z");
    let q = tau.q();
    let qq = d.v(qpoch_inf(q, q, tr))?;
    let corr = I * tau.qpow_re(0.125) * qq * qq * qq * th(d, z, &tau, tr)? * th(d, u + v + z, &tau, tr)?
        / (th(d, u, &tau, tr)? * th(d, v, &tau, tr)? * th(d, u + z, &tau, tr)? * th(d, v + z, &tau, tr)?);
    Ok(vec![Row::new(mz(d, u + z, v + z, &tau, tr)?, mz(d, u, v, &tau, tr)? + corr)])
}

fn zw_symmetries(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = zw_point(d)?;
    let t = tau.tau();
    let m = mz(d, u, v, &tau, tr)?;
    Ok(vec![
        Row::new(m, mz(d, u + t, v + t, &tau, tr)?),
        Row::new(m, mz(d, v, u, &tau, tr)?),
        Row::new(m, mz(d, -u, -v, &tau, tr)?),
    ])
}

fn zw_series(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = zw_point(d)?;
    let q = tau.q();
    let (x, y) = (e(u), e(v));
    let m = mz(d, u, v, &tau, tr)?;
    let pre = I * tau.qpow_re(-0.125) * (PI * I * (u + v)).exp();
    let s1 = d.v(psi(&SeriesSpec::new(&[y], &[ZERO, q * y], q, q * x), tr))?;
    let s2 = d.v(psi(&SeriesSpec::new(&[x, y], &[ZERO, ZERO], q, q), tr))?;
    let s3 = d.v(psi(&SeriesSpec::new(&[], &[q * x, q * y], q, q * x * y), tr))?;
    let f1 = pre / d.v(theta_q(-x, q, tr))? / (1.0 - y) * s1;
    let f2 = pre / d.v(qpoch_inf_many(&[x, y], q, tr))? * s2;
    let f3 = pre / d.v(qpoch_inf_many(&[q / x, q / y], q, tr))? / ((1.0 - x) * (1.0 - y)) * s3;
    Ok(vec![Row::new(m, f1), Row::new(m, f2), Row::new(m, f3)])
}

pub(super) fn cases() -> Vec<IdentityCase> {
    vec![
        case("mu-special.alpha-zero", "mu(u,v;0) = -i q^(-1/8)", ZW, 1e-10, alpha_zero),
        case("mu-special.alpha-one", "mu(u,v;1) = Zwegers mu(u,v)", ZW, 1e-10, alpha_one),
        case("mu-alpha.hermite-weber", "mu(u+2tau,v;alpha) three-term q-difference equation", GENERIC, 1e-8, hw_recurrence),
        case("mu-alpha.periodicity", "mu(u+1,v;alpha) and mu(u,v+1;alpha) phase factors", GENERIC, 1e-8, periodicity),
        case("mu-alpha.forward-shift", "mu(u+tau,v;alpha) through mu(u,v;alpha) and mu(u,v;alpha-1)", GENERIC, 1e-8, forward_shift),
        case("mu-alpha.backward-shift", "mu(u-tau,v;alpha) through mu(u,v;alpha) and mu(u,v;alpha+1)", GENERIC, 1e-8, backward_shift),
        case("mu-alpha.translation", "mu(u+z,v+z;alpha) translation with 1phi1 remainder", GENERIC, 1e-8, translation),
        case("mu-alpha.tau-periodicity", "mu(u+tau,v+tau;alpha) = mu(u,v;alpha)", GENERIC, 1e-8, tau_periodicity),
        case("mu-alpha.symmetry", "mu(u,v;alpha) = Phi(u,v;alpha) mu(v,u;alpha)", GENERIC, 1e-8, symmetry),
        case("mu-alpha.pseudo-periodicity", "mu(u,v;alpha) = Phi(u,v;alpha) mu(alpha tau-u,alpha tau-v;alpha)", GENERIC, 1e-8, pseudo_periodicity),
        case("mu-alpha.cos-recurrence", "2cos pi(u-v) mu(u,v;alpha) three-term recurrence in alpha", GENERIC, 1e-8, cos_recurrence),
        case("mu-forms.definition", "mu(x,y;a) as (x)/(x/a) 1psi2 over theta_q(-y)", GENERIC, 1e-10, |d, tr| forms(d, tr, MuForm::Def)),
        case("mu-forms.alt-1psi2", "mu(x,y;a) as 1psi2(y/a;0,y;q,x) expression", GENERIC, 1e-10, |d, tr| forms(d, tr, MuForm::Alt1)),
        case("mu-forms.alt-2psi2", "mu(x,y;a) as 2psi2(x/a,y/a;0,0;q,a) expression", GENERIC, 1e-10, |d, tr| forms(d, tr, MuForm::Alt2)),
        case("mu-forms.alt-0psi2", "mu(x,y;a) as 0psi2(-;x,y;q,xy/a) expression", GENERIC, 1e-10, |d, tr| forms(d, tr, MuForm::Alt3)),
        case("mu-integer.periodicity", "mu(u+1,v;k) = mu(u,v+1;k) = (-1)^k mu(u,v;k)", INTEGER, 1e-8, int_periodicity),
        case("mu-integer.forward-shift", "mu(u+tau,v;k) integer forward shift", INTEGER, 1e-8, int_forward),
        case("mu-integer.backward-shift", "mu(u-tau,v;k) integer backward shift", INTEGER, 1e-8, int_backward),
        case("mu-integer.translation", "mu(u+z,v+z;k+1) translation with terminating 1phi1", INTEGER, 1e-8, int_translation),
        case("mu-integer.symmetry", "mu(u,v;k) = mu(u+tau,v+tau;k) = mu(v,u;k) = mu(-u,-v;k)", INTEGER, 1e-8, int_symmetry),
        case("mu-integer.cos-recurrence", "2cos pi(u-v) mu(u,v;k) integer recurrence", INTEGER, 1e-8, int_cos),
        case("mu-integer.product-form", "mu(u,v;k) as bilateral sum with finite product", INTEGER, 1e-8, int_product),
        case("mu-integer.partial-fraction", "mu(u,v;k) as combination of mu(u-j tau,v), proof prefactor", INTEGER, 1e-8, partial_fraction),
        failing("mu-integer.partial-fraction-printed", "mu(u,v;k) partial fractions, statement prefactor", INTEGER, 1e-8, partial_fraction_printed),
        case("zwegers.periodicity", "Zwegers mu(u+1,v) = mu(u,v+1) = -mu(u,v)", ZW, 1e-9, zw_periodicity),
        case("zwegers.pseudo-periodicity", "Zwegers mu(u+tau,v) pseudo-periodicity", ZW, 1e-9, zw_pseudo),
        case("zwegers.translation", "Zwegers mu(u+z,v+z) translation", ZW, 1e-9, zw_translation),
        case("zwegers.symmetries", "Zwegers mu symmetries under tau-shift, swap and negation", ZW, 1e-9, zw_symmetries),
        case("zwegers.series-forms", "Zwegers mu as 1psi2, 2psi2 and 0psi2 expressions", ZW, 1e-9, zw_series),
    ]
}
