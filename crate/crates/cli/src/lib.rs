//! Session language and command dispatch for the `primavoid` binary.

pub mod commands;
pub mod session;

pub use commands::{classgroup_report, ddverdict_report, run_command, run_session};
pub use session::{parse_session, Command, Entry, Session, SessionError};
