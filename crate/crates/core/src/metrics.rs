//! Streaming classification metrics.

use std::collections::BTreeMap;

use crate::estimator::Label;

/// Running accuracy: fraction of scored predictions that matched the true
/// label. 0 by convention before anything has been scored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Accuracy {
    correct: u64,
    total: u64,
}

impl Accuracy {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn update(&mut self, y_true: &Label, y_pred: &Label) {
        self.total += 1;
        if y_true == y_pred {
            self.correct += 1;
        }
    }

    pub fn value(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }

    pub fn correct(&self) -> u64 {
        self.correct
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Counts of (true label, predicted label) pairs. Diagnostic companion to
/// [`Accuracy`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfusionMatrix {
    cells: BTreeMap<(Label, Label), u64>,
}

impl ConfusionMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn update(&mut self, y_true: &Label, y_pred: &Label) {
        *self
            .cells
            .entry((y_true.clone(), y_pred.clone()))
            .or_insert(0) += 1;
    }

    pub fn count(&self, y_true: &Label, y_pred: &Label) -> u64 {
        self.cells
            .get(&(y_true.clone(), y_pred.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.cells.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Label, Label), u64)> {
        self.cells.iter().map(|(k, v)| (k, *v))
    }
}
