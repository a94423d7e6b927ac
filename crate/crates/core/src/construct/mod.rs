//! Relabellings `h = π ∘ f ∘ π⁻¹` that keep the synchronous dynamics up to
//! isomorphism while shaping the asynchronous one.

pub mod coloring;
pub mod fixed;
pub mod order;
pub mod packing;
pub mod patterns;
pub mod small;
pub mod strong;
pub mod surgery;

pub use coloring::{h4_coloring, H4Coloring};
pub use fixed::{converge_to_fixed_points, FixedPointOutcome, FixedPointRoute};
pub use order::{decreasing_construct, good_order, is_good_order, DecreasingOutcome, GoodOrder};
pub use packing::{many_attractors, ManyAttractorsOutcome};
pub use patterns::{contains_pattern, plug_pattern, properly_contains, Pattern, PatternId};
pub use small::{converge_to_small_attractor, SmallAttractorOutcome, SmallRoute};
pub use strong::{strongly_connected_variant, StrongOutcome};
pub use surgery::{break_async_iso, DeltaWitness, SurgeryOutcome};
