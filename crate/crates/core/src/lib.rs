//! Symmetric presentations of the simply laced Weyl groups `W(A_n)`,
//! `W(D_n)` and `W(E_6)`, `W(E_7)`, `W(E_8)` as images of progenitors
//! `2^{*C(n,k)} : S_n` by the single relator `(t_{1..k} (k,k+1))^3`,
//! checked against exact matrix representations.

pub mod bfs;
pub mod cli;
pub mod coset_enum;
pub mod error;
pub mod exact;
pub mod expected;
pub mod gf2;
pub mod matrix_reps;
pub mod oracles;
pub mod perm;
pub mod progenitor;
pub mod report;

pub use error::{Error, Result};
