//! Command-line front end: theory and program files in, verdict reports out.

pub mod error;
pub mod exec;
pub mod lines;
pub mod program;
pub mod report;
pub mod theory;

use serde_json::Value;

pub use error::CliError;
pub use exec::Options as ExecOptions;
pub use program::Strategy;
pub use report::{render, Format};

const DEFAULT_BOUND: usize = 2;

#[derive(Debug, Clone, Copy)]
pub struct Options {
    /// Default strategy for `equiv` queries without `with`.
    pub strategy: Strategy,
    /// Overrides the theory's bound.
    pub bound: Option<usize>,
    /// Overrides the theory's tolerance.
    pub tolerance: Option<f64>,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { strategy: Strategy::Auto, bound: None, tolerance: None, timing: false }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub backend: &'static str,
    pub reports: Vec<Value>,
    pub failures: usize,
}

impl Outcome {
    /// 0 when every query ran, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failures == 0 {
            0
        } else {
            3
        }
    }
}

pub fn run_sources(theory_src: &str, program_src: &str, opts: &Options) -> Result<Outcome, CliError> {
    let decl = theory::parse_theory(theory_src)?;
    let backend = decl.build(opts.tolerance)?;
    let program = program::parse_program(program_src)?;
    let exec_opts = ExecOptions {
        strategy: opts.strategy,
        bound: opts.bound.or(decl.bound).unwrap_or(DEFAULT_BOUND),
        timing: opts.timing,
    };
    let out = exec::run_any(&backend, &program, exec_opts)?;
    Ok(Outcome { backend: exec::backend_kind(&backend), reports: out.reports, failures: out.failures })
}

pub fn run_files(theory: &str, program: &str, opts: &Options) -> Result<Outcome, CliError> {
    let read = |p: &str| std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.to_string(), source });
    run_sources(&read(theory)?, &read(program)?, opts)
}
