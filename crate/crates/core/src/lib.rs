//! Pattern order on Shi tableaux and Dyck paths.
//!
//! Paths are the canonical representation; Shi tableaux, area vectors, run
//! forms and `2 × n` standard tableaux are derived views. All step, row and
//! column indices are 1-based.

pub mod avoidance;
pub mod covers;
pub mod decompose;
pub mod enumerate;
pub mod path;
pub mod poset;
pub mod tableau;

pub use avoidance::{
    avoids_characterized, ballot_count, bounded_height_count, count_avoiders_brute,
    count_avoiders_closed, f_count, f_count_oracle, pattern, wilf_check, zeta, AvoidanceError,
    PatternFamily,
};
pub use covers::{
    column_subpath_ucount, count_lower_covers, count_upper_covers, CoversError, LowerBranch,
    UpperBranch,
};
pub use decompose::{
    irreducible_decomposition, strongly_irreducible_decomposition, Component, ComponentClass,
    Decomposition, DecompositionError, DecompositionKind,
};
pub use enumerate::{catalan, DyckPaths};
pub use path::{parse_path, DyckPath, ParseError, RunForm, RunFormError, Step, Turn};
pub use poset::{
    avoids, bounce_delete, contains_pattern, export_dot, hasse, lower_covers, upper_covers,
    Containment, Deletion, HasseGraph, PosetError,
};
pub use tableau::{parse_area, Inequality, ShiTableau, StandardTableau2, TableauError};
