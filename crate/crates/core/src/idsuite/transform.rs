//! Borel–Laplace resummation of the q-Hermite–Weber equation, its local
//! solutions and connection formulas.

use std::f64::consts::PI;

use super::mu::{mu, translation_rhs};
use super::{case, failing, Draw, IdentityCase, Row};
use crate::mufun::mu_zwegers;
use crate::qcore::{e, qpoch_ratio_inf, ModularPoint, Result, Truncation, C64, I, ONE};
use crate::qtransform::{
    connection_residual_basis, connection_residual_direction, f0_at, f_inf_at, g0_at, g_inf_at,
    hw_formal_solution, hw_residual, principal_w, q_borel, q_laplace, FormalPowerSeries, HWParams,
    Phi20Equation, Residual,
};

const HW: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; real alpha in (-2.5, 2.5) off the integers; lambda with |lambda| in (0.5, 1.5); x with |x| in (0.3, 0.9), |arg x| < 2.5";
const BL: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15); real alpha in (-2.5, 2.5) off the integers; lambda = -e(u)";
const PHI20: &str = "real q in [0.1, 0.4); |a| in (0.2, 0.6), |b| in (0.3, 0.7), both with |arg| < 0.5; |lambda| in (0.5, 1.2); |x| in (0.4, 0.9), |arg x| < 2.5";
const NOME: &str = "real q in [0.1, 0.5); |a| in (0.3, 0.9); |x| in (0.3, 0.9); |lambda| in (0.5, 1.5)";

fn row(d: &mut Draw, r: Residual) -> Row {
    d.charge(r.err);
    Row::new(r.lhs, r.rhs).with_scale(r.scale)
}

struct Hw {
    p: HWParams,
    w: C64,
}

fn hw_point(d: &mut Draw) -> Result<Hw> {
    let tau = d.tau()?;
    let al = d.alpha_nonint(-2.5, 2.5);
    let lam = d.polar("lambda", 0.5, 1.5, PI);
    let x = d.polar("x", 0.3, 0.9, 2.5);
    Ok(Hw { p: HWParams::new(al, tau, lam)?, w: principal_w(x)? })
}

fn hw_f0(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Hw { p, w } = hw_point(d)?;
    let r = hw_residual(|w| f0_at(w, &p, tr), w, p.alpha, &p.tau)?;
    Ok(vec![row(d, r)])
}

fn hw_g0(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Hw { p, w } = hw_point(d)?;
    let r = hw_residual(|w| g0_at(w, &p, tr), w, p.alpha, &p.tau)?;
    Ok(vec![row(d, r)])
}

fn hw_finf(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Hw { p, w } = hw_point(d)?;
    let r = hw_residual(|w| f_inf_at(w, &p, tr), w, p.alpha, &p.tau)?;
    Ok(vec![row(d, r)])
}

fn hw_ginf(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Hw { p, w } = hw_point(d)?;
    let r = hw_residual(|w| g_inf_at(w, &p, tr), w, p.alpha, &p.tau)?;
    Ok(vec![row(d, r)])
}

fn mu_qdiff(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    // Zwegers' μ(v+w, v) in w solves the equation at α = 1
    let tau = d.tau()?;
    let (w, v) = (d.uv("w"), d.uv("v"));
    tau.check_off_lattice(v, "v")?;
    for k in 0..3 {
        tau.check_off_lattice(v + w + k as f64 * tau.tau(), "u")?;
    }
    let r = hw_residual(|w| mu_zwegers(v + w, v, &tau, tr), w, ONE, &tau)?;
    Ok(vec![row(d, r)])
}

fn borel_laplace_rows(d: &mut Draw, tr: &Truncation, printed: bool) -> Result<Vec<Row>> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    let al = d.alpha_nonint(-2.5, 2.5);
    let p = HWParams::new(al, tau, -e(u))?;
    let m = mu(d, u, v, al, &tau, tr)?;
    let f = d.v(f0_at(u - v, &p, tr))?;
    let c = if printed { ONE } else { I * tau.qpow_re(0.125) };
    Ok(vec![Row::new(f, c * m)])
}

fn borel_coefficients(d: &mut Draw, _tr: &Truncation) -> Result<Vec<Row>> {
    let q = d.nome(0.1, 0.5);
    let a = d.polar("a", 0.3, 0.9, PI);
    let b = q_borel(&hw_formal_solution(a, q, 16), q);
    let mut want = ONE;
    let mut rows = Vec::new();
    for n in 0..=16usize {
        rows.push(Row::new(b.coeffs[n], want).tag("n", n as f64));
        want *= (1.0 - a * q.powi(n as i32)) / (1.0 - q.powi(n as i32 + 1)) * (-1.0 / a);
    }
    Ok(rows)
}

fn intertwining(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let q = d.nome(0.1, 0.5);
    let coeffs: Vec<C64> = (0..4).map(|j| d.complex(&format!("c{j}"), (-1.0, 1.0), (-1.0, 1.0))).collect();
    let f = FormalPowerSeries::new(coeffs);
    let x = d.polar("x", 0.3, 0.9, PI);
    let lam = d.polar("lambda", 0.5, 1.5, PI);
    let mut lb = |g: &FormalPowerSeries, x: C64| -> Result<C64> {
        let bg = q_borel(g, q);
        d.v(q_laplace(|xi| Ok(bg.eval(xi).value), x, lam, q, tr))
    };
    let mut rows = Vec::new();
    for m in 0..3 {
        for n in 0..3 {
            let lhs = lb(&f.q_dilate(n, q).shift_up(m as usize), x)?;
            let rhs = x.powi(m) * lb(&f, q.powi(n) * x)?;
            rows.push(Row::new(lhs, rhs).tag("m", m as f64).tag("n", n as f64));
        }
    }
    Ok(rows)
}

fn laplace_shift(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let q = d.nome(0.1, 0.5);
    let a = d.polar("a", 0.3, 0.9, PI);
    let x = d.polar("x", 0.3, 0.9, PI);
    let lam = d.polar("lambda", 0.5, 1.5, PI);
    let f = |xi: C64| Ok(qpoch_ratio_inf(-xi, -xi / a, q, tr)?.value);
    let l0 = d.v(q_laplace(f, x, lam, q, tr))?;
    let l1 = d.v(q_laplace(f, x, lam * q, q, tr))?;
    Ok(vec![Row::new(l0, l1)])
}

fn phi20_point(d: &mut Draw) -> Result<(Phi20Equation, C64)> {
    let q = d.nome(0.1, 0.4);
    let a = d.polar("a", 0.2, 0.6, 0.5);
    let b = d.polar("b", 0.3, 0.7, 0.5);
    let lam = d.polar("lambda", 0.5, 1.2, PI);
    let x = d.polar("x", 0.4, 0.9, 2.5);
    Ok((Phi20Equation::new(a, b, q, lam)?, x))
}

fn phi20_closed(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (l, x) = phi20_point(d)?;
    Ok(vec![
        row(d, l.residual(|x| l.f2(x, tr), x)?).tag("solution", 0.0),
        row(d, l.residual(|x| l.g1(x, tr), x)?).tag("solution", 1.0),
        row(d, l.residual(|x| l.g2(x, tr), x)?).tag("solution", 2.0),
    ])
}

fn phi20_resummed(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (l, x) = phi20_point(d)?;
    Ok(vec![row(d, l.residual(|x| l.lb(x, tr), x)?)])
}

fn phi20_connection(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let (l, x) = phi20_point(d)?;
    Ok(vec![
        row(d, l.connection_lb(x, tr)?).tag("row", 0.0),
        row(d, l.connection_f2(x, tr)?).tag("row", 1.0),
    ])
}

fn connection_matrix(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Hw { p, w } = hw_point(d)?;
    let [r0, r1] = connection_residual_basis(w, &p, tr)?;
    Ok(vec![row(d, r0).tag("row", 0.0), row(d, r1).tag("row", 1.0)])
}

fn connection_direction(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let Hw { p, w } = hw_point(d)?;
    let lp = d.polar("lambda'", 0.5, 1.5, PI);
    Ok(vec![row(d, connection_residual_direction(w, lp, &p, tr)?)])
}

fn connection_translation(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let tau: ModularPoint = d.tau()?;
    let (u, v, z) = (d.uv("u"), d.uv("v"), d.uv("z"));
    let al = d.alpha_nonint(-2.5, 2.5);
    let p = HWParams::new(al, tau, -e(v))?;
    let r = connection_residual_direction(u - v, -e(u + z), &p, tr)?;
    d.charge(r.err);
    let c = I * tau.qpow_re(0.125);
    let t = translation_rhs(d, u, v, z, al, &tau, tr)?;
    let m = mu(d, u + z, v + z, al, &tau, tr)?;
    Ok(vec![Row::new(r.rhs, c * t).tag("side", 1.0), Row::new(r.lhs, c * m).tag("side", 0.0)])
}

pub(super) fn cases() -> Vec<IdentityCase> {
    vec![
        case("transform.hw-f0", "f0 = x^(alpha/2) L+B+ of the formal solution solves the q-Hermite-Weber equation", HW, 1e-8, hw_f0),
        case("transform.hw-g0", "g0 = x^(1-alpha/2)/theta(-x) 1phi1(q/a;0;q,xq) solves the q-Hermite-Weber equation", HW, 1e-9, hw_g0),
        case("transform.hw-finf", "f_inf(x) = f0(1/x) solves the q-Hermite-Weber equation", HW, 1e-8, hw_finf),
        case("transform.hw-ginf", "g_inf(x) = g0(1/x) solves the q-Hermite-Weber equation", HW, 1e-8, hw_ginf),
        case("transform.mu-qdiff", "Zwegers mu solves the q-Hermite-Weber equation at alpha = 1", "tau in {0.9i, 1.2i, 0.15+0.85i}; v, w with Re in (-0.45, 0.45), Im in (-0.15, 0.15)", 1e-8, mu_qdiff),
        case("transform.borel-laplace", "f0(e(u-v), -e(u)) = i q^(1/8) mu(u,v;alpha)", BL, 1e-8, |d, tr| borel_laplace_rows(d, tr, false)),
        failing("transform.borel-laplace-printed", "f0(e(u-v), -e(u)) = mu(u,v;alpha)", BL, 1e-8, |d, tr| borel_laplace_rows(d, tr, true)),
        case("transform.borel-coefficients", "B+ of the formal solution is sum (a)_n (-xi/a)^n/(q)_n", "real q in [0.1, 0.5); |a| in (0.3, 0.9)", 1e-12, borel_coefficients),
        case("transform.intertwining", "L+B+ (x^m f(q^n x)) = x^m (L+B+ f)(q^n x)", NOME, 1e-10, intertwining),
        case("transform.laplace-shift", "L+(f)(x, lambda q) = L+(f)(x, lambda)", NOME, 1e-10, laplace_shift),
        case("transform.phi20-closed-solutions", "F2, G1, G2 solve the 2phi0-level equation", PHI20, 1e-9, phi20_closed),
        case("transform.phi20-resummed", "L+B+ of the 2phi0 formal solution solves its equation", PHI20, 1e-8, phi20_resummed),
        case("transform.phi20-connection", "L+B+ F1 and F2 in the basis G1, G2", PHI20, 1e-8, phi20_connection),
        case("transform.connection-matrix", "f0, f_inf in the basis g0, g_inf", HW, 1e-8, connection_matrix),
        case("transform.connection-direction", "f0(x, lambda') through f_inf(x, lambda) and g_inf(x)", HW, 1e-8, connection_direction),
        case("transform.connection-translation", "connection formula at lambda = -e(v), lambda' = -e(u+z) is the translation formula", BL, 1e-8, connection_translation),
    ]
}
