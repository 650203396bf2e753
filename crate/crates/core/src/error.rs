use std::path::PathBuf;

use thiserror::Error;

use crate::estimator::Label;
use crate::feature::FeatureName;

/// Everything that can go wrong in this crate.
///
/// Algebra and learning reject bad inputs loudly instead of coercing;
/// parse errors carry the offending line so a malformed row in a 45k-line
/// file can actually be found.
#[derive(Debug, Error)]
pub enum Error {
    #[error("feature names must be non-empty")]
    EmptyFeatureName,

    #[error("numeric feature values must be finite, got {0}")]
    NonFiniteValue(f64),

    #[error("feature '{0}' holds a categorical value where a number is required")]
    CategoricalValue(FeatureName),

    #[error("division by zero on feature '{0}'")]
    DivisionByZero(FeatureName),

    #[error(
        "cannot raise negative base {base} (feature '{name}') to fractional exponent {exponent}"
    )]
    FractionalPowerOfNegative {
        name: FeatureName,
        base: f64,
        exponent: f64,
    },

    #[error("class weight for label '{label}' must be finite and nonnegative, got {weight}")]
    InvalidClassWeight { label: Label, weight: f64 },

    #[error("cannot normalize an empty set of class weights")]
    EmptyDistribution,

    #[error("entropy requires at least one positive count")]
    AllZeroCounts,

    #[error("batch row {row} has no label")]
    MissingLabel { row: usize },

    #[error(
        "binary classifier already tracks labels '{first}' and '{second}'; cannot learn '{third}'"
    )]
    ExtraBinaryLabel {
        first: Label,
        second: Label,
        third: Label,
    },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("a pipeline needs at least one step")]
    EmptyPipeline,

    #[error(
        "pipeline step {index} ({step}) is not a transformer; only the final step may be a model"
    )]
    MidPipelineModel { index: usize, step: &'static str },

    #[error("pipeline ends in {step}, which is not a classifier")]
    NotAClassifier { step: &'static str },

    #[error("pipeline ends in {step}, which is not a transformer")]
    NotATransformer { step: &'static str },

    #[error("stream error at sample {index}: {source}")]
    AtSample {
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("cannot read '{path}': {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: expected {expected} comma-separated columns, got {got}")]
    ColumnCount {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("line {line}: column '{column}' is not numeric: '{value}'")]
    NumericField {
        line: usize,
        column: &'static str,
        value: String,
    },

    #[error("line {line}: unknown class label '{value}'")]
    UnknownLabel { line: usize, value: String },
}
