//! Numerics for the generalized Appell–Lerch function μ(u,v;α) and the
//! q-series around it.

pub mod qcore;
pub mod qhyper;
pub mod mufun;
pub mod qhermite;
pub mod qtransform;
pub mod modular;
pub mod idsuite;
