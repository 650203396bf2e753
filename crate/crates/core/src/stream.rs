//! Stream source conventions.
//!
//! A stream source is any iterator of [`StreamItem`]s: labeled samples in
//! a fixed order, possibly failing per item (file decode errors). Finite
//! prefixes come from the standard `Iterator::take` adapter, generators
//! are unbounded iterators, and seeded generators replay identical
//! sequences for identical seeds.

use crate::error::Error;
use crate::estimator::Label;
use crate::feature::FeatureVector;

/// One labeled sample.
pub type LabeledSample = (FeatureVector, Label);

/// What a stream source yields.
pub type StreamItem = Result<LabeledSample, Error>;
