//! File formats, SVG export, analysis reports and the command line front-end
//! for `convexdraw-core`.
//!
//! `.cdrw` is the JSON interchange format for drawings; `.pts` holds point
//! sets with exact rational coordinates. A machine-readable report is a
//! `.cdrw` document with a `report` field, so one reader handles both.

pub mod analysis;
pub mod commands;
pub mod format;
pub mod points;
pub mod report;
pub mod svg;

pub use format::{Document, FormatError, Validation};
pub use points::PointsError;
pub use report::{Report, ReportBody};
