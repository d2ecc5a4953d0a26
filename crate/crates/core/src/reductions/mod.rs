//! Reductions from NP-hard problems to winner determination, and the
//! randomized algorithms that use them.

mod algorithm1;
mod dodgson;
mod efas;
mod extension;
mod x3c;

pub use algorithm1::{
    algorithm1_x3c, build_padded_parameter_profile, exact_dodgson_decider, Algorithm1, Algorithm1Outcome, Answer,
    DodgsonDecider,
};
pub use dodgson::{x3c_to_dodgson, DodgsonLayout, DodgsonReductionOutput};
pub use efas::{
    algorithm2_efas, efas_bruteforce, exact_kemeny_decider, kt_formula, mcgarvey_profile, min_feedback_arcs,
    EfasThresholds, KemenyDecider, ProfileBuilder, MCGARVEY_MULTIPLIER,
};
pub use extension::{
    check_committee_contract, check_young_contract, x3c_to_committee, x3c_to_young, CommitteeConstruction,
    CommitteeReductionOutput, YoungConstruction, YoungReductionOutput,
};
pub use x3c::{x3c_bruteforce, x3c_cover, X3CInstance};
