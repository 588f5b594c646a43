//! Script front end for the tancat engine.

pub mod report;
pub mod run;
pub mod script;

pub use report::{Payload, Report, Status};
pub use run::execute;
pub use script::{parse, Format, Script};

/// Parses and runs a script, returning the report. Parse failures become
/// error reports with the matching exit code.
pub fn run_text(text: &str, side: tancat::Side) -> (Report, Option<Format>) {
    match parse(text) {
        Ok(s) => (execute(&s, side), s.command.format),
        Err(e) => (Report { payload: report::error(&e), ms: 0 }, None),
    }
}
