//! Pipelines for mining health chatter on social media:
//!
//! * therapy sentiment as sentence-pair classification: tweets are
//!   normalized ([`preprocess`]), paired with a templated hypothesis about
//!   the therapy ([`pairing`]), rebalanced and split ([`sampling`]), then fed
//!   to a pair classifier ([`model`]);
//! * adverse drug event normalization: spans produced by a text-to-text
//!   generator are anchored in the tweet and linked to lexicon concepts by
//!   cosine retrieval ([`linker`]).
//!
//! [`metrics`] scores both; [`data_io`] holds the file formats.

pub mod data_io;
pub mod error;
pub mod labels;
pub mod linker;
pub mod metrics;
pub mod model;
pub mod pairing;
pub mod preprocess;
pub mod sampling;

pub use error::{Error, Result};
pub use labels::{Labeled, SentimentLabel};
