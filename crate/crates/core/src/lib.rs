//! Instance-incremental machine learning on sparse, name-keyed feature
//! vectors.
//!
//! Models learn from one sample at a time and can answer queries at any
//! point, which makes prequential (test-then-train) evaluation the natural
//! benchmark loop: see [`evaluate::progressive_val_score`]. The crate
//! ships an online standard scaler, binary logistic regression, Gaussian
//! naive Bayes, a Hoeffding tree classifier, linear pipelines, a seedable
//! waveform generator and a reader for the electricity pricing dataset.
//!
//! ```
//! use streamml::evaluate::progressive_val_score;
//! use streamml::metrics::Accuracy;
//! use streamml::synth::Waveform;
//! use streamml::tree::HoeffdingTreeClassifier;
//!
//! let stream = Waveform::new(42).take(1000);
//! let mut model = HoeffdingTreeClassifier::default();
//! let mut metric = Accuracy::new();
//! let report = progressive_val_score(stream, &mut model, &mut metric).unwrap();
//! assert!(report.accuracy > 0.5);
//! ```

pub mod datasets;
pub mod error;
pub mod estimator;
pub mod evaluate;
pub mod feature;
pub mod linear_model;
pub mod metrics;
pub mod naive_bayes;
pub mod pipeline;
pub mod preprocessing;
pub mod stats;
pub mod stream;
pub mod synth;
pub mod tree;

pub use error::Error;
pub use estimator::{ClassDistribution, Classifier, Label, SampleBatch, Transformer};
pub use feature::{FeatureName, FeatureValue, FeatureVector};
pub use stream::{LabeledSample, StreamItem};
