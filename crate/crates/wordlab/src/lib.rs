//! The `wordlab` command-line front end, usable as a library for testing.
//!
//! [`parse_args`] validates arguments into a [`CommandPlan`];
//! [`execute_plan`] runs it and returns output bytes with an exit status.

pub mod exec;
pub mod plan;
pub mod report;

pub use exec::{execute_plan, run, threads_from_env, Execution};
pub use plan::{parse_args, CliError, Command, CommandPlan, Format};
