//! Incremental decision tree for classification.
//!
//! Numeric features only, binary splits. Each leaf keeps class counts and
//! one [`GaussianObserver`] per feature. Every `grace_period` samples an
//! impure leaf evaluates candidate splits by information gain and installs
//! the best one when the Hoeffding bound says the lead over the runner-up
//! is statistically safe, or when the bound has shrunk below the tie
//! threshold. Split nodes retain the counts observed before the split so
//! no sample ever disappears from the tree's books.

pub mod observer;

use std::collections::BTreeMap;

use crate::error::Error;
use crate::estimator::{ClassDistribution, Classifier, Label};
use crate::feature::{FeatureName, FeatureValue, FeatureVector};
use crate::naive_bayes::{gaussian_class_log_scores, softmax_distribution, variance_floor};

pub use observer::GaussianObserver;

pub const DEFAULT_GRACE_PERIOD: u64 = 200;
pub const DEFAULT_SPLIT_CONFIDENCE: f64 = 1e-7;
pub const DEFAULT_TIE_THRESHOLD: f64 = 0.05;

/// Candidate thresholds evaluated per feature, equally spaced strictly
/// inside the observed value range.
const SPLIT_CANDIDATES: usize = 10;

/// How a leaf turns its statistics into a prediction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LeafPrediction {
    /// Normalized class counts.
    MajorityClass,
    /// Leaf-local Gaussian naive Bayes posterior.
    NaiveBayes,
    /// Whichever of the two has been right more often at this leaf so far;
    /// ties go to majority counts.
    #[default]
    NaiveBayesAdaptive,
}

/// Candidate binary split: route `feature <= threshold` left, the rest
/// right. `merit` is the estimated information gain in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitSuggestion {
    pub feature: FeatureName,
    pub threshold: f64,
    pub merit: f64,
}

/// One record per split attempt, for audits.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitAttempt {
    pub leaf: usize,
    pub samples: u64,
    pub best_merit: f64,
    pub second_merit: f64,
    pub bound: f64,
    pub did_split: bool,
    pub feature: Option<FeatureName>,
    pub threshold: Option<f64>,
}

impl SplitAttempt {
    /// One `key=value` line per attempt.
    pub fn to_line(&self) -> String {
        format!(
            "leaf={} n={} best={} second={} bound={} split={} feature={} threshold={}",
            self.leaf,
            self.samples,
            self.best_merit,
            self.second_merit,
            self.bound,
            self.did_split,
            self.feature
                .as_ref()
                .map(|f| f.as_str().to_string())
                .unwrap_or_else(|| "-".to_string()),
            self.threshold
                .map(|t| t.to_string())
                .unwrap_or_else(|| "-".to_string()),
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
struct LeafNode {
    class_counts: BTreeMap<Label, u64>,
    observers: BTreeMap<FeatureName, GaussianObserver>,
    total: u64,
    last_attempt_total: u64,
    majority_record: u64,
    bayes_record: u64,
}

impl LeafNode {
    fn majority_label(&self) -> Option<&Label> {
        let mut best: Option<(&Label, u64)> = None;
        for (label, count) in &self.class_counts {
            match best {
                Some((_, bc)) if *count <= bc => {}
                _ => best = Some((label, *count)),
            }
        }
        best.map(|(label, _)| label)
    }

    fn observed_classes(&self) -> usize {
        self.class_counts.values().filter(|c| **c > 0).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct SplitNode {
    feature: FeatureName,
    threshold: f64,
    left: usize,
    right: usize,
    /// Class counts the replaced leaf had accumulated, kept for the books.
    retained: BTreeMap<Label, u64>,
    retained_total: u64,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Leaf(LeafNode),
    Split(SplitNode),
}

/// Hoeffding tree classifier over numeric features.
#[derive(Debug, Clone, PartialEq)]
pub struct HoeffdingTreeClassifier {
    grace_period: u64,
    split_confidence: f64,
    tie_threshold: f64,
    leaf_prediction: LeafPrediction,
    nodes: Vec<Node>,
    samples_seen: u64,
    split_count: usize,
    trace: Option<Vec<SplitAttempt>>,
}

impl Default for HoeffdingTreeClassifier {
    fn default() -> Self {
        Self::new(
            DEFAULT_GRACE_PERIOD,
            DEFAULT_SPLIT_CONFIDENCE,
            DEFAULT_TIE_THRESHOLD,
            LeafPrediction::default(),
        )
        .expect("default parameters are valid")
    }
}

impl HoeffdingTreeClassifier {
    pub fn new(
        grace_period: u64,
        split_confidence: f64,
        tie_threshold: f64,
        leaf_prediction: LeafPrediction,
    ) -> Result<Self, Error> {
        if grace_period == 0 {
            return Err(Error::InvalidParameter {
                name: "grace_period",
                reason: "must be a positive integer".to_string(),
            });
        }
        if !(split_confidence > 0.0 && split_confidence < 1.0) {
            return Err(Error::InvalidParameter {
                name: "split_confidence",
                reason: format!("must lie in (0, 1), got {split_confidence}"),
            });
        }
        if !(tie_threshold >= 0.0 && tie_threshold.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "tie_threshold",
                reason: format!("must be a nonnegative real, got {tie_threshold}"),
            });
        }
        Ok(HoeffdingTreeClassifier {
            grace_period,
            split_confidence,
            tie_threshold,
            leaf_prediction,
            nodes: Vec::new(),
            samples_seen: 0,
            split_count: 0,
            trace: None,
        })
    }

    pub fn with_leaf_prediction(leaf_prediction: LeafPrediction) -> Self {
        Self::new(
            DEFAULT_GRACE_PERIOD,
            DEFAULT_SPLIT_CONFIDENCE,
            DEFAULT_TIE_THRESHOLD,
            leaf_prediction,
        )
        .expect("default parameters are valid")
    }

    /// Start recording one [`SplitAttempt`] per split attempt.
    pub fn enable_split_trace(&mut self) {
        if self.trace.is_none() {
            self.trace = Some(Vec::new());
        }
    }

    pub fn split_trace(&self) -> &[SplitAttempt] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn samples_seen(&self) -> u64 {
        self.samples_seen
    }

    pub fn split_count(&self) -> usize {
        self.split_count
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf(_)))
            .count()
    }

    /// Samples accounted for across the tree: live leaf counts plus the
    /// counts retained by split nodes. Always equals `samples_seen`.
    pub fn accounted_samples(&self) -> u64 {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Leaf(leaf) => leaf.total,
                Node::Split(split) => split.retained_total,
            })
            .sum()
    }

    /// Longest root-to-leaf path, counted in split nodes.
    pub fn depth(&self) -> usize {
        if self.nodes.is_empty() {
            return 0;
        }
        let mut max_depth = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some((idx, depth)) = stack.pop() {
            match &self.nodes[idx] {
                Node::Leaf(_) => max_depth = max_depth.max(depth),
                Node::Split(split) => {
                    stack.push((split.left, depth + 1));
                    stack.push((split.right, depth + 1));
                }
            }
        }
        max_depth
    }

    /// Index of the leaf `x` routes to. Absent or non-numeric values at a
    /// split go left.
    fn route(&self, x: &FeatureVector) -> usize {
        let mut idx = 0;
        loop {
            match &self.nodes[idx] {
                Node::Leaf(_) => return idx,
                Node::Split(split) => {
                    let value = x.get(&split.feature).and_then(FeatureValue::as_numeric);
                    idx = match value {
                        Some(v) if v > split.threshold => split.right,
                        _ => split.left,
                    };
                }
            }
        }
    }

    fn attempt_split(&mut self, leaf_idx: usize) {
        let (suggestions, samples, classes) = {
            let Node::Leaf(leaf) = &self.nodes[leaf_idx] else {
                unreachable!("split attempts run on leaves");
            };
            (
                feature_suggestions(&leaf.observers, &leaf.class_counts),
                leaf.total,
                leaf.observed_classes(),
            )
        };

        let range = (classes.max(2) as f64).log2();
        let bound = hoeffding_bound(range, self.split_confidence, samples);

        let mut best: Option<&SplitSuggestion> = None;
        let mut second_merit = 0.0;
        for suggestion in &suggestions {
            match best {
                None => best = Some(suggestion),
                Some(current) if suggestion.merit > current.merit => {
                    second_merit = current.merit;
                    best = Some(suggestion);
                }
                _ => second_merit = second_merit.max(suggestion.merit),
            }
        }

        let did_split = match best {
            Some(b) => {
                b.merit > 0.0 && (b.merit - second_merit > bound || bound < self.tie_threshold)
            }
            None => false,
        };

        if let Some(trace) = &mut self.trace {
            trace.push(SplitAttempt {
                leaf: leaf_idx,
                samples,
                best_merit: best.map(|b| b.merit).unwrap_or(0.0),
                second_merit,
                bound,
                did_split,
                feature: best.map(|b| b.feature.clone()),
                threshold: best.map(|b| b.threshold),
            });
        }

        if did_split {
            let chosen = best.expect("splits require a suggestion").clone();
            let (retained, retained_total) = {
                let Node::Leaf(leaf) = &self.nodes[leaf_idx] else {
                    unreachable!();
                };
                (leaf.class_counts.clone(), leaf.total)
            };
            let left = self.nodes.len();
            self.nodes.push(Node::Leaf(LeafNode::default()));
            let right = self.nodes.len();
            self.nodes.push(Node::Leaf(LeafNode::default()));
            self.nodes[leaf_idx] = Node::Split(SplitNode {
                feature: chosen.feature,
                threshold: chosen.threshold,
                left,
                right,
                retained,
                retained_total,
            });
            self.split_count += 1;
        } else {
            let Node::Leaf(leaf) = &mut self.nodes[leaf_idx] else {
                unreachable!();
            };
            leaf.last_attempt_total = leaf.total;
        }
    }
}

impl Classifier for HoeffdingTreeClassifier {
    fn learn_one(&mut self, x: &FeatureVector, y: &Label) -> Result<(), Error> {
        let features = x.numeric_entries()?;
        if self.nodes.is_empty() {
            self.nodes.push(Node::Leaf(LeafNode::default()));
        }
        let leaf_idx = self.route(x);

        {
            let Node::Leaf(leaf) = &mut self.nodes[leaf_idx] else {
                unreachable!("route returns leaves");
            };
            // Score both leaf predictors on this sample before it updates
            // the statistics, so the adaptive record stays prequential.
            if self.leaf_prediction == LeafPrediction::NaiveBayesAdaptive && leaf.total > 0 {
                if leaf.majority_label() == Some(y) {
                    leaf.majority_record += 1;
                }
                let bayes = bayes_distribution(leaf, &features)?;
                if bayes.argmax() == Some(y) {
                    leaf.bayes_record += 1;
                }
            }
            *leaf.class_counts.entry(y.clone()).or_insert(0) += 1;
            leaf.total += 1;
            for (name, value) in &features {
                leaf.observers
                    .entry((*name).clone())
                    .or_default()
                    .observe(*value, y);
            }
        }
        self.samples_seen += 1;

        let (due, impure) = {
            let Node::Leaf(leaf) = &self.nodes[leaf_idx] else {
                unreachable!();
            };
            (
                leaf.total - leaf.last_attempt_total >= self.grace_period,
                leaf.observed_classes() >= 2,
            )
        };
        if due && impure {
            self.attempt_split(leaf_idx);
        }
        Ok(())
    }

    fn predict_proba_one(&self, x: &FeatureVector) -> Result<ClassDistribution, Error> {
        if self.nodes.is_empty() {
            return Ok(ClassDistribution::empty());
        }
        let Node::Leaf(leaf) = &self.nodes[self.route(x)] else {
            unreachable!("route returns leaves");
        };
        if leaf.total == 0 {
            return Ok(ClassDistribution::empty());
        }
        let features: Vec<(&FeatureName, f64)> = x
            .iter()
            .filter_map(|(name, value)| value.as_numeric().map(|v| (name, v)))
            .collect();
        match self.leaf_prediction {
            LeafPrediction::MajorityClass => majority_distribution(leaf),
            LeafPrediction::NaiveBayes => bayes_distribution(leaf, &features),
            LeafPrediction::NaiveBayesAdaptive => {
                if leaf.bayes_record > leaf.majority_record {
                    bayes_distribution(leaf, &features)
                } else {
                    majority_distribution(leaf)
                }
            }
        }
    }
}

fn majority_distribution(leaf: &LeafNode) -> Result<ClassDistribution, Error> {
    ClassDistribution::normalize(
        leaf.class_counts
            .iter()
            .map(|(label, count)| (label.clone(), *count as f64))
            .collect(),
    )
}

fn bayes_distribution(
    leaf: &LeafNode,
    features: &[(&FeatureName, f64)],
) -> Result<ClassDistribution, Error> {
    let floor = variance_floor(
        leaf.observers
            .values()
            .flat_map(|o| o.classes().map(|(_, stats)| stats.moments().variance())),
    );
    let scores = gaussian_class_log_scores(
        leaf.class_counts.iter().map(|(label, c)| (label, *c)),
        leaf.total,
        features,
        floor,
        |label, name| {
            leaf.observers
                .get(name)
                .and_then(|o| o.class_stats(label))
                .map(|stats| (stats.moments().mean(), stats.moments().variance()))
        },
    );
    softmax_distribution(scores)
}

/// Shannon entropy of the normalized counts, in bits. All-zero counts are
/// an error; negative or non-finite counts are rejected.
pub fn entropy(counts: &BTreeMap<Label, f64>) -> Result<f64, Error> {
    for (label, weight) in counts {
        if !weight.is_finite() || *weight < 0.0 {
            return Err(Error::InvalidClassWeight {
                label: label.clone(),
                weight: *weight,
            });
        }
    }
    let masses: Vec<f64> = counts.values().copied().collect();
    if masses.iter().sum::<f64>() <= 0.0 {
        return Err(Error::AllZeroCounts);
    }
    Ok(entropy_of_masses(&masses))
}

fn entropy_of_masses(masses: &[f64]) -> f64 {
    let total: f64 = masses.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    masses
        .iter()
        .filter(|m| **m > 0.0)
        .map(|m| {
            let p = m / total;
            -p * p.log2()
        })
        .sum()
}

/// One-sided deviation bound for an n-sample mean of a variable with the
/// given range, at confidence 1 - delta:
/// `sqrt(range^2 * ln(1/delta) / (2n))`.
pub fn hoeffding_bound(range: f64, delta: f64, samples: u64) -> f64 {
    debug_assert!(range > 0.0);
    debug_assert!(delta > 0.0 && delta < 1.0);
    debug_assert!(samples > 0);
    (range * range * (1.0 / delta).ln() / (2.0 * samples as f64)).sqrt()
}

/// Highest-merit split across all observed features, or `None` when no
/// feature admits a threshold (single class, constant values).
pub fn observer_best_split(
    observers: &BTreeMap<FeatureName, GaussianObserver>,
    pre_split: &BTreeMap<Label, u64>,
) -> Option<SplitSuggestion> {
    let mut best: Option<SplitSuggestion> = None;
    for suggestion in feature_suggestions(observers, pre_split) {
        match &best {
            Some(current) if suggestion.merit <= current.merit => {}
            _ => best = Some(suggestion),
        }
    }
    best
}

/// Best candidate per feature, in ascending feature-name order.
fn feature_suggestions(
    observers: &BTreeMap<FeatureName, GaussianObserver>,
    pre_split: &BTreeMap<Label, u64>,
) -> Vec<SplitSuggestion> {
    observers
        .iter()
        .filter_map(|(name, obs)| best_split_for_feature(name, obs, pre_split))
        .collect()
}

fn best_split_for_feature(
    name: &FeatureName,
    obs: &GaussianObserver,
    pre_split: &BTreeMap<Label, u64>,
) -> Option<SplitSuggestion> {
    let observed: Vec<(&Label, u64)> = pre_split
        .iter()
        .filter(|(_, count)| **count > 0)
        .map(|(label, count)| (label, *count))
        .collect();
    if observed.len() < 2 {
        return None;
    }
    let (lo, hi) = obs.global_range()?;
    if hi <= lo {
        return None;
    }

    let pre_masses: Vec<f64> = observed.iter().map(|(_, c)| *c as f64).collect();
    let pre_entropy = entropy_of_masses(&pre_masses);
    let total: f64 = pre_masses.iter().sum();

    let mut best: Option<(f64, f64)> = None; // (threshold, merit)
    for step in 1..=SPLIT_CANDIDATES {
        let threshold = lo + (hi - lo) * step as f64 / (SPLIT_CANDIDATES + 1) as f64;
        let mut left = Vec::with_capacity(observed.len());
        let mut right = Vec::with_capacity(observed.len());
        for (label, count) in &observed {
            let count = *count as f64;
            match obs.class_stats(label) {
                None => {
                    // This class never showed the feature; at routing time
                    // its samples would go left.
                    left.push(count);
                    right.push(0.0);
                }
                Some(stats) => {
                    let seen = stats.moments().count() as f64;
                    debug_assert!(seen <= count);
                    let below = stats.mass_below(threshold);
                    left.push((count - seen) + below);
                    right.push(seen - below);
                }
            }
        }
        let left_total: f64 = left.iter().sum();
        let right_total: f64 = right.iter().sum();
        let weighted = (left_total / total) * entropy_of_masses(&left)
            + (right_total / total) * entropy_of_masses(&right);
        let merit = (pre_entropy - weighted).max(0.0);
        match best {
            Some((_, bm)) if merit <= bm => {}
            _ => best = Some((threshold, merit)),
        }
    }

    best.map(|(threshold, merit)| SplitSuggestion {
        feature: name.clone(),
        threshold,
        merit,
    })
}
