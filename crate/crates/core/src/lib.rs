//! Left weak composition quasi-symmetric functions and the free commutative
//! nonunitary Rota–Baxter algebra on one generator, with exact products,
//! basis changes, a truncated power-series oracle, and numeric evaluation of
//! LWC multiple zeta values and their q-analogs.

pub mod arith;
pub mod basis;
pub mod closed_forms;
pub mod composition;
pub mod error;
pub mod lincomb;
pub mod mzv;
pub mod nested;
pub mod poset;
pub mod qmzv;
pub mod qpoly;
pub mod rota_baxter;
pub mod series;
pub mod shuffle;
pub mod standard_rba;
pub mod stuffle;

pub use arith::{binomial, Rational, StirlingTable};
pub use composition::{Block, Composition, Lwc, WeakComposition};
pub use error::{Error, Result};
pub use lincomb::{Basis, JsonTerm, LinComb, TextKey};
pub use stuffle::{quasi_shuffle, quasi_shuffle_with, Limits};
pub use rota_baxter::{diamond, p_q, rb_residual, MbarElement};
pub use series::{expand_f, expand_m, expand_mbar, gamma_p, Monomial, TruncatedSeries};
pub use basis::{coeff_c, f_to_m, m_to_f, transition_matrix, Direction};
pub use mzv::{Relation, RelationReport, ZetaProduct, ZetaSymbol};
pub use nested::{EvalOptions, Evaluation};
pub use qmzv::{qshuffle, zeta_q, RhoYWord};
pub use qpoly::QPoly;
pub use standard_rba::{iterate_pn, p_r, power_sum_seq, waring_check, PolySeq};
