//! Computable Iwasawa-theoretic calculus at fixed precision.
//!
//! The crate implements, at desk scale and with every formula paired
//! against a brute-force oracle:
//!
//! - [`padic`]: exact fixed-precision arithmetic in the ring of integers of
//!   an unramified extension of `Q_p` (Teichmüller lifts, the Iwasawa
//!   logarithm, Hensel roots);
//! - [`lambda`]: the Iwasawa algebra `Λ = O[[T]]` truncated in `T`, with
//!   Weierstrass preparation and division, `μ`/`λ` invariants, divisibility
//!   in `Λ` and `Λ[1/p]`, cyclotomic-type polynomials `ω_n` and
//!   constant-term orders;
//! - [`modcalc`]: characteristic series of torsion modules from square
//!   presentations, pseudo-nullity, coinvariant ranks along the cyclotomic
//!   tower and the control-equation check;
//! - [`bivar`]: truncated two-variable series, the weight grid
//!   `(k(n), y_n)`, specialization compatibility of determinants, and the
//!   limit-divisibility harness;
//! - [`artin`]: character idempotents and isotypic orders, trivial-zero
//!   counts, p-adic regulators, Hecke-root stabilization and predicted
//!   constant terms;
//! - [`exact`] / [`zmat`]: the exact integer side (polynomial gcds over Q,
//!   rational rank, Smith-style cokernel counts) backing the oracles;
//! - [`json`]: the stable decimal-string wire formats used by the CLI.
//!
//! Everything is immutable and pure; contexts and values can be shared
//! freely across threads.

pub mod artin;
pub mod bivar;
pub mod error;
pub mod exact;
pub mod json;
pub mod lambda;
pub mod modcalc;
pub mod omatrix;
pub mod padic;
pub mod zmat;

pub use artin::{
    hecke_roots, idempotent_coeffs, isotypic_component, predicted_constant_term, regulator,
    sel_sharp_order, trivial_zero_count, CharacterData, ConstantTermPrediction, GModule,
    HeckeRoots, RegulatorData, StabilizationData,
};
pub use bivar::{
    char_specialization_check, limit_divisibility_check, weight_grid, BivariatePresentation,
    BivariateSeries, GridEntry, LimitDivReport, SpecializationReport, WeightGrid,
};
pub use error::{Error, Result};
pub use exact::ExactPoly;
pub use lambda::{
    canonical_form, constant_quotient_order, coprime_to_cyclotomic, divides, mu_lambda, omega,
    order_of_vanishing_at_zero, weierstrass_divide, weierstrass_prepare, ExtendedOrder,
    IwasawaSeries, WeierstrassData,
};
pub use modcalc::{
    char_series, coinvariant_rank, coinvariant_rank_bruteforce, constant_term_check,
    control_check, finite_quotient_order, pseudo_null_test, ConstantTermReport, ControlEntry,
    ControlReport, ModulePresentation, StructureData,
};
pub use omatrix::OMatrix;
pub use padic::{PadicContext, PadicElement};
