//! Exact and simulated convergence of the squaring random walk on finite
//! permutation groups.
//!
//! Pick `h ∈ G` uniformly and step by `h²`. The step distribution is
//! `P(g) = r(g)/|G|` where `r(g)` counts square roots, and its distance to the
//! uniform distribution after `n` steps is determined by the degrees of the
//! real irreducible characters of `G`.
//!
//! * [`group`]: Cayley tables, conjugacy classes, squares, commutators.
//! * [`character`]: irreducible characters and Frobenius–Schur indicators.
//! * [`walk`]: spectral formulas for convolution powers and convergence tests.
//! * [`oracle`]: brute-force convolution and Monte Carlo, independent of characters.
//! * [`zoo`]: named group families.

pub mod character;
pub mod error;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod walk;
pub mod zoo;

pub use character::{character_table, CharacterTable};
pub use error::Error;
pub use group::{conjugacy_classes, generate_group, squaring_profile, ClassPartition, GroupTable};
pub use perm::{parse_generators, Permutation};
pub use zoo::ZooSpec;

/// Everything derived from one group that the analyses share.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub group: GroupTable,
    pub classes: ClassPartition,
    pub profile: group::SquaringProfile,
    pub table: CharacterTable,
}

impl Analysis {
    pub fn new(group: GroupTable) -> Result<Self, Error> {
        let classes = conjugacy_classes(&group);
        let profile = squaring_profile(&group);
        let table = character_table(&group, &classes)?;
        Ok(Self {
            group,
            classes,
            profile,
            table,
        })
    }

    pub fn from_spec(spec: &ZooSpec, max_order: usize) -> Result<Self, Error> {
        Self::new(spec.build(max_order)?)
    }
}
