//! Incremental Gaussian naive Bayes.

use std::collections::BTreeMap;

use indexmap::IndexMap;

use crate::error::Error;
use crate::estimator::{ClassDistribution, Classifier, Label};
use crate::feature::{FeatureName, FeatureVector};
use crate::stats::{gaussian_log_pdf, RunningMoments};

/// Ratio applied to the largest observed variance to floor every Gaussian,
/// so constant features cannot produce infinite densities.
pub(crate) const VARIANCE_FLOOR_RATIO: f64 = 1e-9;

/// Gaussian naive Bayes over numeric features, updated one sample at a
/// time. Class priors come from running class counts; each (class,
/// feature) pair keeps its own running mean and population variance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GaussianNB {
    class_counts: BTreeMap<Label, u64>,
    moments: BTreeMap<Label, IndexMap<FeatureName, RunningMoments>>,
    total: u64,
}

impl GaussianNB {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn class_count(&self, label: &Label) -> u64 {
        self.class_counts.get(label).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn feature_moments(&self, label: &Label, name: &FeatureName) -> Option<&RunningMoments> {
        self.moments.get(label).and_then(|m| m.get(name))
    }

    fn variance_floor(&self) -> f64 {
        variance_floor(
            self.moments
                .values()
                .flat_map(|per_feature| per_feature.values().map(RunningMoments::variance)),
        )
    }
}

impl Classifier for GaussianNB {
    fn learn_one(&mut self, x: &FeatureVector, y: &Label) -> Result<(), Error> {
        let entries = x.numeric_entries()?;
        *self.class_counts.entry(y.clone()).or_insert(0) += 1;
        self.total += 1;
        let per_feature = self.moments.entry(y.clone()).or_default();
        for (name, value) in entries {
            per_feature.entry(name.clone()).or_default().update(value);
        }
        Ok(())
    }

    fn predict_proba_one(&self, x: &FeatureVector) -> Result<ClassDistribution, Error> {
        if self.total == 0 {
            return Ok(ClassDistribution::empty());
        }
        // Categorical values carry no Gaussian likelihood; skip them.
        let features: Vec<(&FeatureName, f64)> = x
            .iter()
            .filter_map(|(name, value)| value.as_numeric().map(|v| (name, v)))
            .collect();
        let floor = self.variance_floor();
        let scores = gaussian_class_log_scores(
            self.class_counts.iter().map(|(l, c)| (l, *c)),
            self.total,
            &features,
            floor,
            |label, name| {
                self.feature_moments(label, name)
                    .map(|m| (m.mean(), m.variance()))
            },
        );
        softmax_distribution(scores)
    }
}

/// `1e-9 * max(observed variances)`, or `1e-9` when no positive variance
/// has been observed.
pub(crate) fn variance_floor(variances: impl Iterator<Item = f64>) -> f64 {
    let base = variances.fold(0.0f64, f64::max);
    let base = if base > 0.0 { base } else { 1.0 };
    VARIANCE_FLOOR_RATIO * base
}

/// Per class: log prior plus the sum of Gaussian log-likelihoods of the
/// sample's features. A (class, feature) pair never observed scores with
/// the floor-only Gaussian centered at 0.
pub(crate) fn gaussian_class_log_scores<'a, F>(
    class_counts: impl Iterator<Item = (&'a Label, u64)>,
    total: u64,
    features: &[(&FeatureName, f64)],
    floor: f64,
    moments: F,
) -> BTreeMap<Label, f64>
where
    F: Fn(&Label, &FeatureName) -> Option<(f64, f64)>,
{
    let mut scores = BTreeMap::new();
    for (label, count) in class_counts {
        if count == 0 {
            continue;
        }
        let mut score = (count as f64 / total as f64).ln();
        for (name, value) in features {
            score += match moments(label, name) {
                Some((mean, variance)) => gaussian_log_pdf(*value, mean, variance + floor),
                None => gaussian_log_pdf(*value, 0.0, floor),
            };
        }
        scores.insert(label.clone(), score);
    }
    scores
}

/// Shifts by the maximum before exponentiating, then normalizes.
pub(crate) fn softmax_distribution(
    scores: BTreeMap<Label, f64>,
) -> Result<ClassDistribution, Error> {
    if scores.is_empty() {
        return Ok(ClassDistribution::empty());
    }
    let max = scores.values().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: BTreeMap<Label, f64> = scores
        .into_iter()
        .map(|(label, s)| (label, (s - max).exp()))
        .collect();
    ClassDistribution::normalize(raw)
}
