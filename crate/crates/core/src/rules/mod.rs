//! Exact solvers for Dodgson, Young, Kemeny and committee scores.

mod committee;
mod dodgson;
mod flow;
mod kemeny;
mod young;

pub use committee::{
    best_committee, cc_score, committee_decision, committee_score, monroe_score, Aggregator, Committee,
    CommitteeRule, Dpsf,
};
pub(crate) use dodgson::check_rule_input;
pub use dodgson::{dodgson_score_bfs_oracle, dodgson_score_exact};
pub use kemeny::{kemeny_best, kemeny_decision, kemeny_score_of_alternative, kemeny_scores};
pub use young::young_score_exact;
