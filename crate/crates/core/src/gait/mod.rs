//! Gaits as ordered leg partitions and the max-plus systems they induce.

mod closed_form;
mod dsl;
mod ordering;
mod params;
mod system;

pub use closed_form::{
    closed_form_a0_star, closed_form_eigenpair, closed_form_power, closed_form_system_matrix, structural_blocks,
    StructuralBlocks,
};
pub use dsl::{parse_gait_dsl, parse_gait_spec, GaitConfig};
pub use ordering::{all_gaits, validate_gait, Gait};
pub use params::{check_assumptions, Assumptions, GaitParams, GaitWarning};
pub use system::{build_a0_a1, build_p_q, system_matrix, GaitMatrices};
