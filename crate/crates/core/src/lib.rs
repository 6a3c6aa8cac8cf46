//! Point counting on diagonal (Fermat-type) hypersurfaces
//! a_1 x_1^{d_1} + ... + a_s x_s^{d_s} = b over finite fields, with
//! Gauss/Jacobi sum machinery, the Weil bound, and a classifier deciding
//! when the count sits exactly on a bound endpoint.
//!
//! The counting pipeline offers three independent routes (additive
//! convolution brute force, the character-sum expansion, and an exact
//! closed formula valid under admissibility hypotheses) so every result
//! can be cross-validated.

pub mod arith;
pub mod char_sums;
pub mod characters;
pub mod count;
pub mod error;
pub mod field;
pub(crate) mod intmath;

pub use arith::{
    i_count_direct, i_count_inclusion_exclusion, i_count_lcm, i_is_zero_sun,
    minimal_admissible_r, weil_bound, AdmissibilityResult, WeilBoundResult,
};
pub use char_sums::{
    davenport_hasse_check, gauss_purity_suite, gauss_sum, gauss_sum_by_index, identity_suite,
    jacobi_b_reduction,
    jacobi_from_gauss, jacobi_sum_direct, purity_order, quadratic_gauss_closed_form,
    GaussSumCache, GaussSumResult, IdentityReport, PurityReport,
};
pub use characters::{
    char_eval, is_dth_power, theta, CanonicalAdditiveCharacter, ComplexValue,
    MultiplicativeCharacter,
};
pub use count::{
    attainment_check, classify, count_bruteforce, count_bruteforce_profile, count_charsum,
    count_charsum_cached, count_formula, count_naive,
    Attainment, AttainmentResult, ClassificationResult, CountMethod, CountResult,
    HypersurfaceSpec, Reason, Status,
};
pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement, FieldParams, DEFAULT_Q_CAP};
