//! Crease sets of embedded spheres in ℝ²×ℝ.

pub mod branched;
pub mod canon;
pub mod composer;
pub mod config;
pub mod enumerate;
pub mod io;
pub mod ltg;
pub mod models;
pub mod realization;
pub mod signs;
pub mod weighting;

pub use canon::{canonical_form, config_isomorphic};
pub use config::{CornerAngle, CornerData, CreaseConfig, Curve, Region, Violation};
pub use enumerate::enumerate_configs;
pub use io::{config_to_json, parse_config, SchemaError};
pub use signs::{sign_feasibility, Feasibility, Sign, SignAssignment};
pub use weighting::{
    opposite_side_weight, solve_weighting, verify_weighting, CurveWeight, Weighting,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/ltg.md")]
    mod ltg {}
    #[doc = include_str!("../../../book/src/realization.md")]
    mod realization {}
    #[doc = include_str!("../../../book/src/branched.md")]
    mod branched {}
    #[doc = include_str!("../../../book/src/composer.md")]
    mod composer {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
