//! Pattern containment on permutations and the machinery built on top of it:
//! class enumeration, the shadow-extension engine for discovering isomorphisms
//! between pattern classes, and closed forms for the maximal classes the
//! engine finds.

pub mod classes;
pub mod engine;
pub mod error;
pub mod exotic;
pub mod maps;
pub mod perm;
pub mod seeds;
pub mod series;
pub mod symmetry;
pub mod wedge;

pub use classes::{
    basis_of, downset_of, growth_rate_bound, reduce_antichain, CountSequence, GenConfig,
    MembershipCheck, PatternClass,
};
pub use engine::{
    invert_shadow, run_extension, run_group_extension, ExtensionOutcome, ExtensionReport,
    GroupExtension, LevelSummary, PartialIsomorphism,
};
pub use error::{Error, ParseError};
pub use exotic::{exotic, omega_decode, omega_encode, AbWord};
pub use maps::{aut_group_a3, ClassMap, MapTable};
pub use perm::{Permutation, ShadowSet};
pub use seeds::{classify_seeds, r_elements, SeedBijection, SeedGroup, SeedOrbit};
pub use series::{a2_growth_polynomial, a2_series, series_formula};
pub use symmetry::Symmetry;
pub use wedge::{wedge_membership, Wedge};
