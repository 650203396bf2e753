//! Contracts shared by every learner and transformer.
//!
//! Models learn from one sample at a time via `learn_one` and answer
//! queries via `predict_one` / `predict_proba_one`; transformers rewrite
//! feature vectors via `transform_one`. Prediction never mutates state.
//! Mini-batches are handled by `learn_many`, a thin ordered fold over
//! `learn_one` kept for interface uniformity.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::feature::FeatureVector;

/// Class label: a text token or an integer id, compared exactly. The label
/// universe is discovered incrementally from the stream.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl Label {
    pub fn int(id: i64) -> Self {
        Label::Int(id)
    }

    pub fn text(token: impl Into<String>) -> Self {
        Label::Text(token.into())
    }
}

impl From<i64> for Label {
    fn from(id: i64) -> Self {
        Label::Int(id)
    }
}

impl From<&str> for Label {
    fn from(token: &str) -> Self {
        Label::Text(token.to_string())
    }
}

impl From<String> for Label {
    fn from(token: String) -> Self {
        Label::Text(token)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(id) => write!(f, "{id}"),
            Label::Text(token) => f.write_str(token),
        }
    }
}

/// Probabilities per class label. Either empty (unfitted model) or summing
/// to 1 within 1e-9, with no negative entries.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClassDistribution {
    probs: BTreeMap<Label, f64>,
}

impl ClassDistribution {
    /// The empty distribution an unfitted model answers with.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Divides every weight by the total. An all-zero input falls back to
    /// the uniform distribution over the given labels; negative or
    /// non-finite weights are rejected.
    pub fn normalize(raw: BTreeMap<Label, f64>) -> Result<Self, Error> {
        if raw.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (label, weight) in &raw {
            if !weight.is_finite() || *weight < 0.0 {
                return Err(Error::InvalidClassWeight {
                    label: label.clone(),
                    weight: *weight,
                });
            }
        }
        let total: f64 = raw.values().sum();
        let probs = if total > 0.0 {
            raw.into_iter().map(|(l, w)| (l, w / total)).collect()
        } else {
            let uniform = 1.0 / raw.len() as f64;
            raw.into_keys().map(|l| (l, uniform)).collect()
        };
        Ok(ClassDistribution { probs })
    }

    /// Label with the highest probability; ties break toward the smallest
    /// label, `None` when the distribution is empty.
    pub fn argmax(&self) -> Option<&Label> {
        let mut best: Option<(&Label, f64)> = None;
        for (label, p) in &self.probs {
            match best {
                Some((_, bp)) if *p <= bp => {}
                _ => best = Some((label, *p)),
            }
        }
        best.map(|(label, _)| label)
    }

    pub fn get(&self, label: &Label) -> Option<f64> {
        self.probs.get(label).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, f64)> {
        self.probs.iter().map(|(l, p)| (l, *p))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Ordered sequence of (features, optional label) rows. Row order is
/// significant and preserved.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SampleBatch {
    rows: Vec<(FeatureVector, Option<Label>)>,
}

impl SampleBatch {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: FeatureVector, y: Option<Label>) {
        self.rows.push((x, y));
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(FeatureVector, Option<Label>)> {
        self.rows.iter()
    }
}

impl From<Vec<(FeatureVector, Option<Label>)>> for SampleBatch {
    fn from(rows: Vec<(FeatureVector, Option<Label>)>) -> Self {
        SampleBatch { rows }
    }
}

/// Rejects the batch up front when any row lacks a label, so a failed
/// `learn_many` never leaves a model half-updated.
fn check_labels(batch: &SampleBatch) -> Result<(), Error> {
    for (row, (_, y)) in batch.iter().enumerate() {
        if y.is_none() {
            return Err(Error::MissingLabel { row });
        }
    }
    Ok(())
}

/// A classifier that learns one labeled sample at a time.
pub trait Classifier {
    /// Updates internal state with a single labeled sample.
    fn learn_one(&mut self, x: &FeatureVector, y: &Label) -> Result<(), Error>;

    /// Class probabilities for `x`; empty when the model is unfitted.
    /// Must not mutate state.
    fn predict_proba_one(&self, x: &FeatureVector) -> Result<ClassDistribution, Error>;

    /// Most probable label, `None` when the model is unfitted.
    fn predict_one(&self, x: &FeatureVector) -> Result<Option<Label>, Error> {
        Ok(self.predict_proba_one(x)?.argmax().cloned())
    }

    /// Ordered fold of `learn_one` over the batch.
    fn learn_many(&mut self, batch: &SampleBatch) -> Result<(), Error> {
        check_labels(batch)?;
        for (x, y) in batch.iter() {
            self.learn_one(x, y.as_ref().expect("labels checked"))?;
        }
        Ok(())
    }
}

/// A stateful transformation learned from the stream. Transformers here
/// are unsupervised: they never see labels.
pub trait Transformer {
    fn learn_one(&mut self, x: &FeatureVector) -> Result<(), Error>;

    /// Rewrites `x` using the statistics learned so far, without mutating
    /// them.
    fn transform_one(&self, x: &FeatureVector) -> Result<FeatureVector, Error>;

    /// Ordered fold of `learn_one`. Labels are required for interface
    /// uniformity with models, then ignored.
    fn learn_many(&mut self, batch: &SampleBatch) -> Result<(), Error> {
        check_labels(batch)?;
        for (x, _) in batch.iter() {
            self.learn_one(x)?;
        }
        Ok(())
    }
}
