//! Continuous q-Hermite polynomials at μ(u,v;−k), the generating function
//! S(r) and its convolution identities.

use std::f64::consts::PI;

use super::mu::{mu, qf, re};
use super::{case, failing, Draw, IdentityCase, Row};
use crate::qcore::{qpoch_inf_many, Result, Truncation, C64, I, ONE, ZERO};
use crate::qhermite::{
    gauss_sum_product, gen_S, gen_S_appell, gen_S_minus_degree, hermite_by_recurrence, hermite_cq,
    hermite_two_phi11, mu_negative_degree, F_capital, HermiteArg, SMethod,
};

const UV: &str = "tau in {0.9i, 1.2i, 0.15+0.85i}; u, v with Re in (-0.45, 0.45), Im in (-0.15, 0.15)";
const SR: &str = "as for mu, plus r with |r| in (0.05, 0.5) and |arg r| < pi";
const WQ: &str = "w with Re in (-0.45, 0.45), Im in (-0.15, 0.15); real q in [0.1, 0.5)";

fn minus_degree(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    let arg = HermiteArg::new(u - v, tau.q());
    let mut rows = Vec::new();
    for k in 0..=12usize {
        let m = d.v(mu_negative_degree(k, u, v, &tau, tr))?;
        let h = -I * tau.qpow_re(-0.125) * hermite_cq(k, &arg);
        rows.push(Row::new(m, h).tag("k", k as f64));
    }
    Ok(rows)
}

fn gauss_value(d: &mut Draw, _tr: &Truncation) -> Result<Vec<Row>> {
    let q = d.nome(0.1, 0.5);
    let arg = HermiteArg::new(re(0.5), q);
    let mut rows = Vec::new();
    for n in 1..=6usize {
        let h = hermite_cq(2 * n, &arg) * if n % 2 == 0 { 1.0 } else { -1.0 };
        let p = (0..n).fold(ONE, |p, j| p * (1.0 - q.powi(2 * j as i32 + 1)));
        rows.push(Row::new(h, p).tag("N", n as f64));
    }
    Ok(rows)
}

fn recurrence(d: &mut Draw, _tr: &Truncation) -> Result<Vec<Row>> {
    let w = d.uv("w");
    let q = d.nome(0.1, 0.5);
    let arg = HermiteArg::new(w, q);
    let rec = hermite_by_recurrence(20, &arg);
    Ok((0..=20).map(|n| Row::new(hermite_cq(n, &arg), rec[n]).tag("n", n as f64)).collect())
}

fn generating(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let w = d.uv("w");
    let q = d.nome(0.1, 0.5);
    let r = d.polar("r", 0.05, 0.4, PI);
    let arg = HermiteArg::new(w, q);
    let ew = (PI * I * w).exp();
    let rhs = ONE / d.v(qpoch_inf_many(&[r * ew, r / ew], q, tr))?;
    let (mut s, mut c) = (ZERO, ONE);
    for n in 0..400usize {
        let t = hermite_cq(n, &arg) * c;
        s += t;
        if t.norm() < 1e-18 * s.norm() && n > 10 {
            break;
        }
        c *= r / (1.0 - q.powi(n as i32 + 1));
    }
    Ok(vec![Row::new(s, rhs)])
}

fn two_phi11(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let tau = d.tau()?;
    let w = d.uv("w");
    tau.check_off_lattice(w, "w")?;
    let arg = HermiteArg::new(w, tau.q());
    let mut rows = Vec::new();
    for n in 0..=8usize {
        rows.push(Row::new(d.v(hermite_two_phi11(n, w, &tau, tr))?, hermite_cq(n, &arg)).tag("n", n as f64));
    }
    Ok(rows)
}

fn f_generating(d: &mut Draw, _tr: &Truncation) -> Result<Vec<Row>> {
    let w = d.uv("w");
    let q = d.nome(0.1, 0.5);
    let r = d.polar("r", 0.05, 0.5, PI);
    let arg = HermiteArg::new(w, q);
    let ew = (PI * I * w).exp();
    let rhs = d.v(qpoch_inf_many(&[r * ew * q, r / ew * q], q, &Truncation::tight()))?;
    let (mut s, mut rn) = (ZERO, ONE);
    for n in 0..60usize {
        s += F_capital(n, &arg) * rn;
        rn *= r;
    }
    Ok(vec![Row::new(s, rhs)])
}

fn gauss_sum(_d: &mut Draw, _tr: &Truncation) -> Result<Vec<Row>> {
    (1..=30usize)
        .map(|n| {
            let (s, p) = gauss_sum_product(n)?;
            Ok(Row::new(s, p).tag("N", n as f64))
        })
        .collect()
}

fn gauss_sum_printed(_d: &mut Draw, _tr: &Truncation) -> Result<Vec<Row>> {
    (1..=30usize)
        .map(|n| {
            let (s, p) = gauss_sum_product(n)?;
            // the k = 0 term is 1
            Ok(Row::new(s - 1.0, p).tag("N", n as f64))
        })
        .collect()
}

struct SPt {
    tau: crate::qcore::ModularPoint,
    u: C64,
    v: C64,
    r: C64,
}

fn s_point(d: &mut Draw) -> Result<SPt> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    let r = d.polar("r", 0.05, 0.5, PI);
    tau.check_off_lattice(u, "u")?;
    tau.check_off_lattice(v, "v")?;
    Ok(SPt { tau, u, v, r })
}

fn s_closed(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let SPt { tau, u, v, r } = s_point(d)?;
    let a = d.v(gen_S(r, u, v, &tau, tr, SMethod::Direct))?;
    Ok(vec![Row::new(a, d.v(gen_S(r, u, v, &tau, tr, SMethod::Closed))?)])
}

fn s_appell(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let SPt { tau, u, v, r } = s_point(d)?;
    let a = d.v(gen_S(r, u, v, &tau, tr, SMethod::Direct))?;
    Ok(vec![Row::new(a, d.v(gen_S_appell(r, u, v, &tau, tr))?)])
}

fn s_minus_degree(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let SPt { tau, u, v, r } = s_point(d)?;
    let a = d.v(gen_S(r, u, v, &tau, tr, SMethod::Direct))?;
    Ok(vec![Row::new(a, d.v(gen_S_minus_degree(r, u, v, &tau, tr))?)])
}

fn s_qdiff_first(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let SPt { tau, u, v, r } = s_point(d)?;
    let q = tau.q();
    let ew = (PI * I * (u - v)).exp();
    let s0 = d.v(gen_S(r, u, v, &tau, tr, SMethod::Direct))?;
    let s1 = d.v(gen_S(r * q, u, v, &tau, tr, SMethod::Direct))?;
    let rhs = (1.0 - r * ew * q) * (1.0 - r / ew * q) * s1 - I * r * tau.qpow_re(0.875);
    Ok(vec![Row::new(s0, rhs)])
}

fn s_qdiff_second(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let SPt { tau, u, v, r } = s_point(d)?;
    let q = tau.q();
    let ew = (PI * I * (u - v)).exp();
    let s0 = d.v(gen_S(r, u, v, &tau, tr, SMethod::Direct))?;
    let s1 = d.v(gen_S(r * q, u, v, &tau, tr, SMethod::Direct))?;
    let s2 = d.v(gen_S(r * q * q, u, v, &tau, tr, SMethod::Direct))?;
    let c1 = (1.0 - r * ew * q * q) * (1.0 - r / ew * q * q);
    let c2 = -(1.0 + q * (1.0 - r * ew * q) * (1.0 - r / ew * q));
    Ok(vec![Row::new(c1 * s2 + c2 * s1, -q * s0)])
}

fn f_convolution(d: &mut Draw, tr: &Truncation) -> Result<Vec<Row>> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    tau.check_off_lattice(u, "u")?;
    let q = tau.q();
    let arg = HermiteArg::new(u - v, q);
    // μ(u,v;1−l) for l = 0..=6, through the generic series
    let minus: Vec<C64> = (0..=6).map(|l| mu(d, u, v, re(1.0 - l as f64), &tau, tr)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for k in 0..=6usize {
        let lhs = mu(d, u, v, re(k as f64 + 1.0), &tau, tr)?;
        let terms: Vec<C64> = (0..=k).map(|l| q.powi(l as i32) / qf(q, l) * F_capital(k - l, &arg) * minus[l]).collect();
        let scale = terms.iter().map(|t| t.norm()).sum();
        rows.push(Row::new(lhs, terms.iter().sum()).with_scale(scale).tag("k", k as f64));
    }
    Ok(rows)
}

fn h_convolution_rows(d: &mut Draw, tr: &Truncation, printed: bool) -> Result<Vec<Row>> {
    let tau = d.tau()?;
    let (u, v) = (d.uv("u"), d.uv("v"));
    tau.check_off_lattice(u, "u")?;
    let q = tau.q();
    let arg = HermiteArg::new(u - v, q);
    let plus: Vec<C64> = (0..=6).map(|k| mu(d, u, v, re(k as f64 + 1.0), &tau, tr)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for m in if printed { 2..=6usize } else { 1..=6usize } {
        let lhs: C64 = (0..=m)
            .map(|k| plus[k] * hermite_cq(m - k, &arg) / qf(q, m - k) * q.powi((m - k) as i32))
            .sum();
        let power = if printed { 0.875 } else { m as f64 - 0.125 };
        let rhs = -I * tau.qpow_re(power) * hermite_cq(m - 1, &arg) / qf(q, m);
        rows.push(Row::new(lhs, rhs).tag("m", m as f64));
    }
    Ok(rows)
}

pub(super) fn cases() -> Vec<IdentityCase> {
    vec![
        case("hermite.minus-degree", "mu(u,v;-k) = -i q^(-1/8) H_k(cos pi(u-v)|q)", UV, 1e-9, minus_degree),
        case("hermite.gauss-value", "i^(-2N) H_2N(0|q) = (q;q^2)_N", "real q in [0.1, 0.5); N = 1..6", 1e-12, gauss_value),
        case("hermite.recurrence", "2x H_n = H_(n+1) + (1-q^n) H_(n-1)", WQ, 1e-13, recurrence),
        case("hermite.generating", "sum H_n r^n/(q)_n = 1/(r e^(i theta), r e^(-i theta))_inf", WQ, 1e-10, generating),
        case("hermite.two-phi11", "H_n as a theta quotient of two 1phi1", UV, 1e-9, two_phi11),
        case("hermite.F-generating", "sum F_(n+1) r^n = (r e^(i theta) q, r e^(-i theta) q)_inf", WQ, 1e-10, f_generating),
        case("hermite.gauss-sum", "quadratic Gauss sum product formula", "N = 1..30", 1e-10, gauss_sum),
        failing("hermite.gauss-sum-printed", "quadratic Gauss sum from k = 1", "N = 1..30", 1e-10, gauss_sum_printed),
        case("s-gen.closed", "S(r) direct sum = closed form with 3phi2", SR, 1e-8, s_closed),
        case("s-gen.appell", "S(r) = (A,B)_inf (mu - i r q^(7/8)/(1-q) Phi1)", SR, 1e-8, s_appell),
        case("s-gen.minus-degree", "S(r) = (A,B)_inf sum mu(u,v;1-m) q^m r^m/(q)_m", SR, 1e-8, s_minus_degree),
        case("s-gen.qdiff-first", "S(r) first-order q-difference equation", SR, 1e-8, s_qdiff_first),
        case("s-gen.qdiff-second", "S(r) second-order q-difference equation", SR, 1e-8, s_qdiff_second),
        case("s-gen.F-convolution", "mu(u,v;k+1) = sum q^l/(q)_l F_(k-l+1) mu(u,v;1-l)", UV, 1e-9, f_convolution),
        case("s-gen.H-convolution", "sum mu(u,v;k+1) H_(m-k) q^(m-k)/(q)_(m-k) = -i q^(m-1/8) H_(m-1)/(q)_m", UV, 1e-9, |d, tr| h_convolution_rows(d, tr, false)),
        failing("s-gen.H-convolution-printed", "convolution with constant -i q^(7/8)", UV, 1e-9, |d, tr| h_convolution_rows(d, tr, true)),
    ]
}
