//! Small bundled instances used by tests, examples and the CLI docs.

use crate::preflib::{parse_preflib, RankProfile};
use crate::profile::{Alternative, Committee, DeterministicInstance, ProfileKind, ScoreProfile};

pub const EXAMPLE_A: &str = include_str!("../fixtures/example_a.csv");
pub const EXAMPLE_B: &str = include_str!("../fixtures/example_b.csv");
/// Six voters over four candidates, three distinct orders.
pub const SMALL_SOC: &str = include_str!("../fixtures/small.soc");
/// Twenty voters over 25 candidates: noisy rotations of one order.
pub const SYNTHETIC_SOC: &str = include_str!("../fixtures/synthetic_20x25.soc");

/// Six voters and eight candidates where `{c1, c2, c3}` satisfies five
/// voters under majority.
pub fn example_a() -> DeterministicInstance {
    DeterministicInstance::parse(EXAMPLE_A).expect("bundled fixture parses")
}

/// Sparse variant of [`example_a`] where random dictatorship beats majority.
pub fn example_b() -> DeterministicInstance {
    DeterministicInstance::parse(EXAMPLE_B).expect("bundled fixture parses")
}

/// Same approvals as `inst`, with every voter preferring `preferred`.
pub fn with_preferences(
    inst: &DeterministicInstance,
    preferred: Alternative,
) -> DeterministicInstance {
    DeterministicInstance::uniform(inst.approvals().clone(), preferred).expect("sizes match")
}

/// Spatial example on the line: one voter each at 0 (left), 1/2 (centrist)
/// and 1 (right); candidates `L, C1, C2, C3, R`. Entry `(i, c)` is the
/// probability that candidate `c` votes the way voter `i` wants on the
/// issue that voter cares about.
pub fn spatial_example() -> ScoreProfile {
    ScoreProfile::from_rows(
        ProfileKind::General,
        &[
            vec![1.0, 0.5, 0.5, 0.5, 0.0],
            vec![0.5, 1.0, 1.0, 1.0, 0.5],
            vec![0.0, 0.5, 0.5, 0.5, 1.0],
        ],
    )
    .expect("valid probabilities")
}

/// Left, centrist and right candidate: the proportional committee.
pub fn spatial_proportional() -> Committee {
    Committee::new(vec![0, 1, 4]).expect("distinct")
}

/// Three centrist candidates.
pub fn spatial_centrist() -> Committee {
    Committee::new(vec![1, 2, 3]).expect("distinct")
}

pub fn synthetic_preflib() -> RankProfile {
    parse_preflib(SYNTHETIC_SOC).expect("bundled fixture parses")
}
