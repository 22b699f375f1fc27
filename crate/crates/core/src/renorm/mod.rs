//! Renormalization of Laurent-valued characters: Birkhoff decomposition,
//! residue and β-function, the `d_n` tower, the renormalization-group limit
//! and the finite-time scattering integrals.

mod beta;
mod birkhoff;
mod rg;
mod scattering;

pub use beta::{
    beta, build_special_loop, coefficient_table, dn_recursive, dn_simplex, dn_tower, residue, simplex_weight,
};
pub use birkhoff::{
    birkhoff_decompose, pole_budget, reconstruction_witness, required_truncation, rota_baxter_t, verify_birkhoff,
    BirkhoffPair,
};
pub use rg::{rg_limit_check, PoleWitness, RgReport};
pub use scattering::{finite_time_value, scattering_check, simplex_integral, ExpSum, ScatteringReport, ScatteringTerm};
