//! μ(x,y;a) as a bilateral q-Appell function: the difference system of
//! ν(x,y;a), the positive/negative splits and the Φ^(1) expressions.

use std::f64::consts::PI;

use super::mu::{mu, mz};
use super::{case, failing, Draw, IdentityCase, Row};
use crate::qcore::{e, qpoch_inf, qpoch_inf_many, theta_q, ModularPoint, Result, Truncation, C64, I, ONE, ZERO};
use crate::qhyper::{phi, psi, q_appell_phi1, SeriesSpec};

const SYS: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15); real alpha in (-2.5, 2.5) off the integers";
const ZW: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15); alpha = 1";
const SPLIT: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15); real alpha in (0.1, 0.8), so |a| < 1 and the Appell arguments lie in the unit disc";

/// ν(x,y;a) = e^{−πiα(u−v)} θ_q(−ay)/θ_q(−y) μ(ax,ay;a).
fn nu(d: &mut Draw, u: C64, v: C64, al: C64, tau: &ModularPoint, tr: &Truncation) -> Result<C64> {
    let q = tau.q();
    let (y, a) = (e(v), tau.qpow(al));
    tau.check_off_nome_lattice(-y, "-y")?;
    let ratio = d.v(theta_q(-a * y, q, tr))? / d.v(theta_q(-y, q, tr))?;
    let at = al * tau.tau();
    Ok((-PI * I * al * (u - v)).exp() * ratio * mu(d, u + at, v + at, al, tau, tr)?)
}

fn nu_rows(d: &mut Draw, tr: &Truncation, tau: &ModularPoint, u: C64, v: C64, al: C64) -> Result<Vec<Row>> {
    let t = tau.tau();
    let n0 = nu(d, u, v, al, tau, tr)?;
    let shifted = nu(d, u + t, v + t, al, tau, tr)?;
    let nx = nu(d, u + t, v, al, tau, tr)?;
    let ny = nu(d, u, v + t, al, tau, tr)?;
    let (x, y) = (e(u), e(v));
    let (cx, cy) = (x * (n0 - ny), y * (n0 - nx));
    Ok(vec![
        Row::new(n0, tau.qpow(al) * shifted).tag("equation", 0.0),
        Row::new(cx, cy).with_scale(x.norm() * (n0.norm() + ny.norm()) + y.norm() * (n0.norm() + nx.norm())).tag("equation", 1.0),
    ])
}

fn generic(d: &mut Draw) -> Result<(ModularPoint, C64, C64)> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    tau.check_off_lattice(u, "u")?;
    tau.check_off_lattice(v, "v")?;
    Ok((tau, u, v))
}

fn system_shift(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = generic(d)?;
    let al = d.alpha_nonint(-2.5, 2.5);
    Ok(nu_rows(d, tr, &tau, u, v, al)?.into_iter().take(1).collect())
}

fn system_cross(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = generic(d)?;
    let al = d.alpha_nonint(-2.5, 2.5);
    Ok(nu_rows(d, tr, &tau, u, v, al)?.into_iter().skip(1).collect())
}

fn system_zwegers(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (tau, u, v) = generic(d)?;
    let mut rows = nu_rows(d, tr, &tau, u, v, ONE)?;
    let n = nu(d, u, v, ONE, &tau, tr)?;
    let z = -(-PI * I * (u + v)).exp() * mz(d, u, v, &tau, tr)?;
    rows.push(Row::new(n, z).tag("equation", 2.0));
    Ok(rows)
}

/// Sample point for the split and Φ^(1) identities, with the shared factors.
struct Sp {
    q: C64,
    x: C64,
    y: C64,
    a: C64,
    /// i q^{1/8} μ(x,y;a)
    m: C64,
    /// e^{πiα(u−v)}
    ex: C64,
    /// θ_q(−y) θ_q(−x/a)
    den: C64,
}

fn split_point(d: &mut Draw, tr: &Truncation) -> Result<Sp> {
    let (tau, u, v) = generic(d)?;
    let al = C64::new(d.real("alpha", 0.1, 0.8), 0.0);
    let q = tau.q();
    let (x, y, a) = (e(u), e(v), tau.qpow(al));
    tau.check_off_nome_lattice(-x / a, "-x/a")?;
    tau.check_off_nome_lattice(x, "x")?;
    tau.check_off_nome_lattice(y, "y")?;
    let m = I * tau.qpow_re(0.125) * mu(d, u, v, al, &tau, tr)?;
    let den = d.v(theta_q(-y, q, tr))? * d.v(theta_q(-x / a, q, tr))?;
    Ok(Sp { q, x, y, a, m, ex: (PI * I * al * (u - v)).exp(), den })
}

fn ser(d: &mut Draw, upper: &[C64], lower: &[C64], q: C64, arg: C64, tr: &Truncation) -> Result<C64> {
    d.v(phi(&SeriesSpec::new(upper, lower, q, arg), tr))
}

fn prod(d: &mut Draw, xs: &[C64], q: C64, tr: &Truncation) -> Result<C64> {
    d.v(qpoch_inf_many(xs, q, tr))
}

fn split_psi22(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Sp { q, x, y, a, .. } = split_point(d, tr)?;
    let lhs = d.v(psi(&SeriesSpec::new(&[x / a, y / a], &[ZERO, ZERO], q, a), tr))?;
    let pos = x * y / a * (1.0 - a / x) * (1.0 - a / y) * ser(d, &[x * q / a, y * q / a, q], &[ZERO, ZERO], q, a, tr)?;
    let neg = ser(d, &[q], &[a * q / x, a * q / y], q, a * q * q / (x * y), tr)?;
    Ok(vec![Row::new(lhs, pos + neg).with_scale(lhs.norm() + pos.norm() + neg.norm())])
}

fn split_psi02_rows(d: &mut Draw, tr: &Truncation, printed: bool) -> Result<Vec<Row>> {
    let Sp { q, x, y, a, .. } = split_point(d, tr)?;
    let lhs = d.v(psi(&SeriesSpec::new(&[], &[x, y], q, x * y / a), tr))?;
    let c = if printed { ONE } else { x * y / a };
    let pos = c / ((1.0 - x) * (1.0 - y)) * ser(d, &[q], &[x * q, y * q], q, x * y * q * q / a, tr)?;
    let neg = ser(d, &[q / x, q / y, q], &[ZERO, ZERO], q, a, tr)?;
    Ok(vec![Row::new(lhs, pos + neg).with_scale(lhs.norm() + pos.norm() + neg.norm())])
}

/// (a,q,aq/x,aq/y)_∞/(θθ) ₁φ₂(q; aq/x, aq/y; q, aq²/(xy)), the negative half of ₂ψ₂.
fn neg22_term(d: &mut Draw, s: &Sp, tr: &Truncation) -> Result<C64> {
    let Sp { q, x, y, a, den, .. } = *s;
    let p = prod(d, &[a, q, a * q / x, a * q / y], q, tr)?;
    Ok(p / den * ser(d, &[q], &[a * q / x, a * q / y], q, a * q * q / (x * y), tr)?)
}

/// xy/a (a,q,xq,yq)_∞/(θθ) ₁φ₂(q; xq, yq; q, xyq²/a), the positive half of ₀ψ₂.
fn pos02_term(d: &mut Draw, s: &Sp, tr: &Truncation, printed: bool) -> Result<C64> {
    let Sp { q, x, y, a, den, .. } = *s;
    let c = if printed { ONE } else { x * y / a };
    let p = prod(d, &[a, q, x * q, y * q], q, tr)?;
    Ok(c * p / den * ser(d, &[q], &[x * q, y * q], q, x * y * q * q / a, tr)?)
}

fn rewrite_1(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let s = split_point(d, tr)?;
    let Sp { q, x, y, a, den, .. } = s;
    let p = prod(d, &[a, q, a / x, a / y], q, tr)?;
    let t1 = x * y / a * p / den * ser(d, &[x * q / a, y * q / a, q], &[ZERO, ZERO], q, a, tr)?;
    let t2 = neg22_term(d, &s, tr)?;
    Ok(vec![Row::new(s.m, s.ex * (t1 + t2)).with_scale(s.m.norm() + (s.ex * t1).norm() + (s.ex * t2).norm())])
}

fn rewrite_2(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let s = split_point(d, tr)?;
    let Sp { q, x, y, a, den, .. } = s;
    let t1 = pos02_term(d, &s, tr, false)?;
    let p = prod(d, &[a, q, x, y], q, tr)?;
    let t2 = p / den * ser(d, &[q / x, q / y, q], &[ZERO, ZERO], q, a, tr)?;
    Ok(vec![Row::new(s.m, s.ex * (t1 + t2)).with_scale(s.m.norm() + (s.ex * t1).norm() + (s.ex * t2).norm())])
}

fn appell(d: &mut Draw, s: &Sp, x: C64, y: C64, tr: &Truncation) -> Result<C64> {
    d.v(q_appell_phi1(s.a, ZERO, ZERO, s.a * s.q, s.q, x, y, tr))
}

fn phi1_expression_1_rows(d: &mut Draw, tr: &Truncation, printed: bool) -> Result<Vec<Row>> {
    let s = split_point(d, tr)?;
    let Sp { q, x, y, a, den, .. } = s;
    let f = appell(d, &s, x * q / a, y * q / a, tr)?;
    let pq = d.v(qpoch_inf(q, q, tr))?;
    let paq = d.v(qpoch_inf(a * q, q, tr))?;
    let (t1, t2) = if printed {
        let c = -paq * d.v(theta_q(-y * q / a, q, tr))? / (pq * d.v(theta_q(-y * q, q, tr))?);
        let p = prod(d, &[a, q, a * q / x, a * q / y], q, tr)?;
        let t2 = p / den * ser(d, &[ZERO, q], &[a * q / x, a * q / y], q, -a * q * q / (x * y), tr)?;
        (c * f, t2)
    } else {
        let c = a * paq * d.v(theta_q(-y / a, q, tr))? / (pq * d.v(theta_q(-y, q, tr))?);
        (c * f, neg22_term(d, &s, tr)?)
    };
    Ok(vec![Row::new(s.m, s.ex * (t1 + t2)).with_scale(s.m.norm() + (s.ex * t1).norm() + (s.ex * t2).norm())])
}

fn phi1_expression_2_rows(d: &mut Draw, tr: &Truncation, printed: bool) -> Result<Vec<Row>> {
    let s = split_point(d, tr)?;
    let Sp { q, x, a, .. } = s;
    let t1 = pos02_term(d, &s, tr, printed)?;
    let f = appell(d, &s, q / x, q / s.y, tr)?;
    let c = d.v(qpoch_inf(a * q, q, tr))? * d.v(theta_q(-x, q, tr))?
        / (d.v(qpoch_inf(q, q, tr))? * d.v(theta_q(-x / a, q, tr))?);
    let t2 = c * f;
    Ok(vec![Row::new(s.m, s.ex * (t1 + t2)).with_scale(s.m.norm() + (s.ex * t1).norm() + (s.ex * t2).norm())])
}

fn andrews(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let q = d.nome(0.1, 0.5);
    let a = d.polar("a", 0.1, 0.9, PI);
    let b = d.polar("b", 0.1, 0.7, PI);
    let c = d.polar("c", 0.1, 0.7, PI);
    let dd = d.polar("d", 0.1, 0.9, PI);
    let ee = d.polar("e", 0.1, 0.9, PI);
    let x = d.polar("x", 0.1, 0.7, PI);
    let lhs = ser(d, &[a, b, c], &[dd, ee], q, x, tr)?;
    let pre = prod(d, &[a * x, b, c], q, tr)? / prod(d, &[x, dd, ee], q, tr)?;
    let f = d.v(q_appell_phi1(x, dd / b, ee / c, a * x, q, b, c, tr))?;
    Ok(vec![Row::new(lhs, pre * f)])
}

pub(super) fn cases() -> Vec<IdentityCase> {
    vec![
        case("appell.system-shift", "(1 - a T_x T_y) nu(x,y;a) = 0", SYS, 1e-8, system_shift),
        case("appell.system-cross", "[x(1 - T_y) - y(1 - T_x)] nu(x,y;a) = 0", SYS, 1e-8, system_cross),
        case("appell.system-zwegers", "nu(x,y;q) = -e^(-pi i(u+v)) mu(x,y) solves the system at a = q", ZW, 1e-8, system_zwegers),
        case("appell.split-psi22", "2psi2(x/a,y/a;0,0;q,a) split into 3phi2 and 1phi2 halves", SPLIT, 1e-10, split_psi22),
        case("appell.split-psi02", "0psi2(-;x,y;q,xy/a) split into 1phi2 and 3phi2 halves", SPLIT, 1e-10, |d, tr| split_psi02_rows(d, tr, false)),
        failing("appell.split-psi02-printed", "0psi2 split without the factor xy/a", SPLIT, 1e-10, |d, tr| split_psi02_rows(d, tr, true)),
        case("appell.rewrite-1", "i q^(1/8) mu(x,y;a) through the 2psi2 halves", SPLIT, 1e-10, rewrite_1),
        case("appell.rewrite-2", "i q^(1/8) mu(x,y;a) through the 0psi2 halves", SPLIT, 1e-10, rewrite_2),
        case("appell.phi1-expression-1", "i q^(1/8) mu(x,y;a) with Phi1(a;0,0;aq;q;xq/a,yq/a)", SPLIT, 1e-8, |d, tr| phi1_expression_1_rows(d, tr, false)),
        failing("appell.phi1-expression-1-printed", "Phi1(xq/a,yq/a) expression with coefficient -(aq)theta(-yq/a)/((q)theta(-yq))", SPLIT, 1e-8, |d, tr| phi1_expression_1_rows(d, tr, true)),
        case("appell.phi1-expression-2", "i q^(1/8) mu(x,y;a) with Phi1(a;0,0;aq;q;q/x,q/y)", SPLIT, 1e-8, |d, tr| phi1_expression_2_rows(d, tr, false)),
        failing("appell.phi1-expression-2-printed", "Phi1(q/x,q/y) expression without the factor xy/a", SPLIT, 1e-8, |d, tr| phi1_expression_2_rows(d, tr, true)),
        case("appell.andrews", "3phi2(a,b,c;d,e;q,x) = (ax,b,c)_inf/(x,d,e)_inf Phi1(x;d/b,e/c;ax;q;b,c)", "real q in [0.1, 0.5); |a|, |d|, |e| in (0.1, 0.9); |b|, |c|, |x| in (0.1, 0.7)", 1e-10, andrews),
    ]
}
