//! Reading-order prediction for vertically written historical Japanese pages.
//!
//! A page is a set of character bounding boxes; a model turns it into a
//! [`ReadingOrder`], a permutation of the character ids. The crate provides
//!
//! - two rule-based models, [`rules::simple_order`] and
//!   [`rules::adaptive_order`];
//! - edit-distance accuracy and query recall ([`metrics`]) and the union of
//!   several models' predictions ([`ensemble`]);
//! - file formats and a coordinate-table importer ([`ingest`]);
//! - a synthetic page generator with known ground truth ([`synth`]);
//! - SVG overlays of reading paths ([`render`]) and a command line ([`cli`]).

pub mod cli;
pub mod ensemble;
pub mod error;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod render;
pub mod report;
pub mod rules;
pub mod synth;

pub use error::{Error, Result};
pub use model::{center, mean_char_width, x_overlap, Book, CharBox, Page, Point, ReadingOrder};
