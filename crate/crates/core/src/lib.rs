//! Separating sets of symmetric polynomials over finite fields.
//!
//! The crate answers three families of questions about the algebra of
//! symmetric polynomials `F_q[x_1, ..., x_n]^{S_n}`:
//!
//! * how small a separating set can be (`gamma_q(n)`, see [`exactcount`]),
//! * up to which `n` the elementary symmetric polynomials `s_1, ..., s_n`
//!   already form a smallest separating set (`chi_q`, see [`chi`]),
//! * how far the sparse set `S_3(n)` is from optimal over `F_3` (see [`f3`]).
//!
//! Every counting statement is computed with exact big-integer arithmetic and
//! can be cross-checked by brute force over the `S_n`-orbits of `F_q^n`
//! ([`gf`], [`orbits`], [`esym`], [`separating`]).

pub mod chi;
pub mod error;
pub mod esym;
pub mod exactcount;
pub mod f3;
pub mod gf;
pub mod orbits;
pub mod separating;

pub use error::{Error, Result};
pub use exactcount::Nat;
