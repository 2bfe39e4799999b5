use proptest::prelude::*;

use qmu::mufun::{mu_general, mu_zwegers, MuPoint};
use qmu::qcore::{qpoch, qpoch_inf, theta11, theta_q, ModularPoint, Truncation, C64};
use qmu::qhermite::{hermite_by_recurrence, hermite_cq, HermiteArg};

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / (a.norm() + b.norm()).max(1e-300)
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_splits(xr in -0.9f64..0.9, xi in -0.9f64..0.9, q in 0.05f64..0.6, n in -6i64..6, m in 0i64..6) {
        let tr = Truncation::tight();
        let (x, q) = (c(xr, xi), c(q, 0.0));
        let left = qpoch(x, q, n, &tr);
        let right = qpoch(x * q.powi(n as i32), q, m, &tr);
        let whole = qpoch(x, q, n + m, &tr);
        // negative n may hit a pole; then nothing to compare
        if let (Ok(l), Ok(r), Ok(w)) = (left, right, whole) {
            prop_assert!(rel(l.value * r.value, w.value) < 1e-12);
        }
    }

    #[test]
    fn theta_q_quasi_periodic(r in 0.2f64..3.0, ph in -3.0f64..3.0, q in 0.05f64..0.6) {
        let tr = Truncation::tight();
        let (x, q) = (C64::from_polar(r, ph), c(q, 0.0));
        if let (Ok(a), Ok(b)) = (theta_q(x * q, q, &tr), theta_q(x, q, &tr)) {
            // θ(xq) = θ(x)/x
            prop_assert!(rel(a.value, b.value / x) < 1e-11);
        }
    }

    #[test]
    fn theta11_is_odd(ur in -0.5f64..0.5, ui in -0.3f64..0.3, t in 0.5f64..1.5) {
        let tr = Truncation::tight();
        let tau = ModularPoint::new(c(0.1, t)).unwrap();
        let (a, b) = (theta11(c(ur, ui), &tau, &tr).unwrap(), theta11(c(-ur, -ui), &tau, &tr).unwrap());
        prop_assert!((a.value + b.value).norm() <= 1e-13 * (a.value.norm() + 1e-300));
    }

    #[test]
    fn hermite_closed_form_matches_recurrence(wr in -1.0f64..1.0, wi in -0.3f64..0.3, q in -0.7f64..0.7) {
        let arg = HermiteArg::new(c(wr, wi), c(q, 0.0));
        let rec = hermite_by_recurrence(15, &arg);
        for (n, h) in rec.iter().enumerate() {
            prop_assert!((hermite_cq(n, &arg) - h).norm() <= 1e-11 * (1.0 + h.norm()));
        }
    }

    #[test]
    fn mu_at_alpha_one_is_zwegers(ur in -0.45f64..0.45, ui in -0.15f64..0.15, vr in -0.45f64..0.45, vi in -0.15f64..0.15) {
        let tr = Truncation::tight();
        let tau = ModularPoint::new(c(0.15, 0.85)).unwrap();
        let (u, v) = (c(ur, ui), c(vr, vi));
        if let Ok(p) = MuPoint::new(u, v, c(1.0, 0.0), tau) {
            let a = mu_general(&p, &tr).unwrap().value;
            let b = mu_zwegers(u, v, &tau, &tr).unwrap().value;
            prop_assert!(rel(a, b) < 1e-10);
        }
    }

    #[test]
    fn finite_products_approach_the_infinite_one(x in -0.9f64..0.9, q in 0.05f64..0.5) {
        let tr = Truncation::tight();
        let (x, q) = (c(x, 0.1), c(q, 0.0));
        let fin = qpoch(x, q, 80, &tr).unwrap().value;
        let inf = qpoch_inf(x, q, &tr).unwrap().value;
        prop_assert!(rel(fin, inf) < 1e-13);
    }
}
