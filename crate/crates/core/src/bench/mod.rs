//! Test-problem registry: classical base functions with optional shift and
//! random rotation on `[-100, 100]^D`, every one with optimum value 0 at the
//! shift vector.

mod functions;
mod problem;
mod rotation;
mod suite;

pub use functions::BaseFunction;
pub use problem::Problem;
pub use rotation::{random_rotation, Rotation};
pub use suite::{make_suite, load_problem_file, ProblemFile, ProblemSpec, ProblemSuite};
