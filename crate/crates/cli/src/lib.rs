//! Script runner and reproduction drivers for the `liaison` algebra kernel.

pub mod harness;
pub mod interp;
pub mod output;
pub mod repro;
pub mod script;

pub use interp::{Flags, Interpreter, RunOutcome};
pub use output::{emit, OutputRecord};
pub use script::{parse_script, ParseError, Script};

/// Exit status for usage and parse errors.
pub const EXIT_PARSE: i32 = 2;
/// Exit status for failed preconditions and internal errors.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Setup(#[from] liaison::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Parse(_) => EXIT_PARSE,
            RunError::Setup(_) => EXIT_PARSE,
        }
    }
}

/// Parses and runs `source`.
pub fn run_source(source: &str, flags: &Flags) -> Result<RunOutcome, RunError> {
    let field = flags.field()?;
    let script = parse_script(source, field)?;
    let mut interp = Interpreter::new(flags.clone())?;
    Ok(interp.run(&script))
}
