//! The functions reachable from `eval` and `table`, with their parameters.

use qmu::modular::{mu_tilde, nu_tilde, R_func, NuVariant};
use qmu::mufun::{g3, kronecker_k, kronecker_sum, mock_theta, mu_general, mu_zwegers, MuPoint};
use qmu::qcore::{qpoch, qpoch_inf, theta11, theta_q, EvalResult, QError, Truncation};
use qmu::qhermite::{gauss_sum_product, gen_S, gen_S_appell, gen_S_minus_degree, hermite_cq, HermiteArg, SMethod};
use qmu::qhyper::{phi, psi, q_appell_phi1, q_bessel_j2, SeriesSpec};
use qmu::qtransform::{f0_solution, g0_solution, HWParams};

use crate::params::Params;
use crate::CliError;

pub struct Func {
    pub name: &'static str,
    /// Accepted parameters; `tau` also admits `q` in its place.
    pub keys: &'static [&'static str],
    pub about: &'static str,
}

const TAU: &[&str] = &["tau", "q"];

macro_rules! keys {
    ($($k:literal),* ; tau) => { &[$($k,)* "tau", "q"] };
    ($($k:literal),*) => { &[$($k),*] };
}

pub const FUNCTIONS: &[Func] = &[
    Func { name: "mu", keys: keys!("u", "v"; tau), about: "Zwegers mu(u,v;tau)" },
    Func { name: "mu_alpha", keys: keys!("u", "v", "alpha"; tau), about: "generalized mu(u,v;alpha)" },
    Func { name: "theta11", keys: keys!("u"; tau), about: "Jacobi theta11(u,tau)" },
    Func { name: "theta_q", keys: keys!("x", "q"), about: "theta_q(x) = (q,-x,-q/x)_inf" },
    Func { name: "qpoch", keys: keys!("x", "q", "n"), about: "(x;q)_n, n an integer or inf (default)" },
    Func { name: "phi", keys: keys!("upper", "lower", "q", "x"), about: "unilateral r phi s; upper, lower comma-separated" },
    Func { name: "psi", keys: keys!("upper", "lower", "q", "x"), about: "bilateral r psi s; upper, lower comma-separated" },
    Func { name: "appell_phi1", keys: keys!("a", "b1", "b2", "c", "q", "x", "y"), about: "q-Appell Phi1(a;b1,b2;c;q;x,y)" },
    Func { name: "bessel_j2", keys: keys!("nu", "x"; tau), about: "Jackson's J2(x;q) of order nu" },
    Func { name: "hermite", keys: keys!("n", "w", "q"), about: "continuous q-Hermite H_n(cos(pi w)|q)" },
    Func { name: "g3", keys: keys!("x", "q"), about: "universal mock theta function g3(x;q)" },
    Func { name: "mock_theta", keys: keys!("which", "q"), about: "mock theta f0, phi or psi (--which)" },
    Func { name: "S", keys: keys!("r", "u", "v", "method"; tau), about: "sum of mu(u,v;k+1) r^k; --method direct|closed|appell|minus-degree" },
    Func { name: "f0", keys: keys!("x", "alpha", "lambda"; tau), about: "resummed q-Hermite-Weber solution at 0" },
    Func { name: "g0", keys: keys!("x", "alpha"; tau), about: "convergent q-Hermite-Weber solution at 0" },
    Func { name: "R", keys: keys!("u"; tau), about: "completion series R(u;tau)" },
    Func { name: "mu_tilde", keys: keys!("u", "v"; tau), about: "completed mu(u,v;tau)" },
    Func { name: "nu_tilde", keys: keys!("u", "v", "k", "variant"; tau), about: "completion rebuilt from mu(u,v;k+1); --variant consistent|printed" },
    Func { name: "kronecker", keys: keys!("x", "y", "q", "form"), about: "Kronecker k(x,y); --form product (default) or sum" },
    Func { name: "gauss_sum", keys: keys!("N"), about: "quadratic Gauss sum mod 2N+1; err is |sum - product|" },
];

pub fn lookup(name: &str) -> Result<&'static Func, CliError> {
    FUNCTIONS
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| CliError::Parse(format!("unknown function {name:?}; `qmu eval list` shows them")))
}

fn check_keys(f: &Func, p: &Params) -> Result<(), CliError> {
    for k in p.keys() {
        if !f.keys.contains(&k) {
            return Err(CliError::Parse(format!("{} takes no --{k}", f.name)));
        }
    }
    if f.keys.ends_with(TAU) {
        p.tau()?;
    }
    Ok(())
}

pub fn evaluate(name: &str, p: &Params, tr: &Truncation) -> Result<EvalResult, CliError> {
    let f = lookup(name)?;
    check_keys(f, p)?;
    let r = match f.name {
        "mu" => mu_zwegers(p.c("u")?, p.c("v")?, &p.tau()?, tr)?,
        "mu_alpha" => mu_general(&MuPoint::new(p.c("u")?, p.c("v")?, p.c("alpha")?, p.tau()?)?, tr)?,
        "theta11" => theta11(p.c("u")?, &p.tau()?, tr)?,
        "theta_q" => theta_q(p.c("x")?, p.c("q")?, tr)?,
        "qpoch" => match p.opt("n") {
            None | Some("inf") => qpoch_inf(p.c("x")?, p.c("q")?, tr)?,
            Some(s) => {
                let n: i64 = s.parse().map_err(|_| CliError::Parse(format!("--n: expected an integer or inf, got {s:?}")))?;
                qpoch(p.c("x")?, p.c("q")?, n, tr)?
            }
        },
        "phi" | "psi" => {
            let spec = SeriesSpec::new(&p.list("upper")?, &p.list("lower")?, p.c("q")?, p.c("x")?);
            if f.name == "phi" { phi(&spec, tr)? } else { psi(&spec, tr)? }
        }
        "appell_phi1" => q_appell_phi1(
            p.c("a")?,
            p.c("b1")?,
            p.c("b2")?,
            p.c("c")?,
            p.c("q")?,
            p.c("x")?,
            p.c("y")?,
            tr,
        )?,
        "bessel_j2" => q_bessel_j2(p.c("nu")?, p.c("x")?, &p.tau()?, tr)?,
        "hermite" => {
            let n = p.uint("n")?;
            EvalResult::exact(hermite_cq(n, &HermiteArg::new(p.c("w")?, p.c("q")?)), n + 1)
        }
        "g3" => g3(p.c("x")?, p.c("q")?, tr)?,
        "mock_theta" => {
            let which = p.opt("which").unwrap_or("f0").parse().map_err(|e: QError| CliError::Parse(format!("--which: {e}")))?;
            mock_theta(which, p.c("q")?, tr)?
        }
        "S" => {
            let (r, u, v, tau) = (p.c("r")?, p.c("u")?, p.c("v")?, p.tau()?);
            match p.opt("method").unwrap_or("direct") {
                "direct" => gen_S(r, u, v, &tau, tr, SMethod::Direct)?,
                "closed" => gen_S(r, u, v, &tau, tr, SMethod::Closed)?,
                "appell" => gen_S_appell(r, u, v, &tau, tr)?,
                "minus-degree" => gen_S_minus_degree(r, u, v, &tau, tr)?,
                m => return Err(CliError::Parse(format!("--method: unknown method {m:?}"))),
            }
        }
        "f0" => {
            let hw = HWParams::new(p.c("alpha")?, p.tau()?, p.c("lambda")?)?;
            f0_solution(p.c("x")?, &hw, tr)?
        }
        "g0" => {
            // g0 does not involve the resummation direction
            let hw = HWParams::new(p.c("alpha")?, p.tau()?, qmu::qcore::ONE)?;
            g0_solution(p.c("x")?, &hw, tr)?
        }
        "R" => R_func(p.c("u")?, &p.tau()?, tr)?,
        "mu_tilde" => mu_tilde(p.c("u")?, p.c("v")?, &p.tau()?, tr)?,
        "nu_tilde" => {
            let variant = match p.opt("variant").unwrap_or("consistent") {
                "consistent" => NuVariant::Consistent,
                "printed" => NuVariant::Printed,
                v => return Err(CliError::Parse(format!("--variant: unknown variant {v:?}"))),
            };
            nu_tilde(p.c("u")?, p.c("v")?, p.uint("k")?, &p.tau()?, variant, tr)?
        }
        "kronecker" => match p.opt("form").unwrap_or("product") {
            "product" => kronecker_k(p.c("x")?, p.c("y")?, p.c("q")?, tr)?,
            "sum" => kronecker_sum(p.c("x")?, p.c("y")?, p.c("q")?, tr)?,
            m => return Err(CliError::Parse(format!("--form: unknown form {m:?}"))),
        },
        "gauss_sum" => {
            let n = p.uint("N")?;
            let (s, prod) = gauss_sum_product(n)?;
            EvalResult { value: s, err_estimate: (s - prod).norm(), terms_used: 2 * n + 1 }
        }
        _ => unreachable!("every listed function is dispatched"),
    };
    Ok(r)
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        CliError::Q(e)
    }
}
