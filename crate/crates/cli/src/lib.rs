//! Catalog, algebra file format, and report plumbing for the `carnot`
//! command-line tool. All algebraic and numerical work happens in
//! `carnot-core`; this crate only parses, dispatches, and formats.

pub mod catalog;
pub mod format;
pub mod report;
