//! Per-leaf, per-feature summaries of numeric attribute values.

use std::collections::BTreeMap;

use crate::estimator::Label;
use crate::stats::{gaussian_cdf, RunningMoments};

/// What one leaf knows about one numeric feature for one class: running
/// moments plus the observed value range.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassStats {
    moments: RunningMoments,
    min: f64,
    max: f64,
}

impl ClassStats {
    fn new(value: f64) -> Self {
        let mut moments = RunningMoments::new();
        moments.update(value);
        ClassStats {
            moments,
            min: value,
            max: value,
        }
    }

    fn observe(&mut self, value: f64) {
        self.moments.update(value);
        self.min = self.min.min(value);
        self.max = self.max.max(value);
    }

    pub fn moments(&self) -> &RunningMoments {
        &self.moments
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    /// Estimated number of this class's observed samples with value <=
    /// `threshold`. Exact outside the observed range, Gaussian inside.
    pub(crate) fn mass_below(&self, threshold: f64) -> f64 {
        let count = self.moments.count() as f64;
        if threshold < self.min {
            0.0
        } else if threshold >= self.max {
            count
        } else {
            // min < threshold < max implies two distinct values, so the
            // variance is positive.
            count * gaussian_cdf(threshold, self.moments.mean(), self.moments.std())
        }
    }
}

/// Gaussian estimator of one numeric feature's per-class value
/// distribution at a leaf.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GaussianObserver {
    per_class: BTreeMap<Label, ClassStats>,
}

impl GaussianObserver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(&mut self, value: f64, label: &Label) {
        match self.per_class.get_mut(label) {
            Some(stats) => stats.observe(value),
            None => {
                self.per_class.insert(label.clone(), ClassStats::new(value));
            }
        }
    }

    pub fn class_stats(&self, label: &Label) -> Option<&ClassStats> {
        self.per_class.get(label)
    }

    pub fn classes(&self) -> impl Iterator<Item = (&Label, &ClassStats)> {
        self.per_class.iter()
    }

    /// Smallest and largest value observed across all classes.
    pub fn global_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for stats in self.per_class.values() {
            range = Some(match range {
                None => (stats.min, stats.max),
                Some((lo, hi)) => (lo.min(stats.min), hi.max(stats.max)),
            });
        }
        range
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracks_min_mean_max_per_class() {
        let mut obs = GaussianObserver::new();
        let a = Label::text("A");
        for v in [2.0, 4.0, 6.0] {
            obs.observe(v, &a);
        }
        let stats = obs.class_stats(&a).unwrap();
        assert_eq!(stats.min(), 2.0);
        assert_eq!(stats.max(), 6.0);
        assert_eq!(stats.moments().mean(), 4.0);
        assert!(stats.min() <= stats.moments().mean());
        assert!(stats.moments().mean() <= stats.max());
    }

    #[test]
    fn global_range_spans_classes() {
        let mut obs = GaussianObserver::new();
        obs.observe(0.0, &Label::text("A"));
        obs.observe(1.0, &Label::text("A"));
        obs.observe(9.0, &Label::text("B"));
        assert_eq!(obs.global_range(), Some((0.0, 9.0)));
    }

    #[test]
    fn mass_below_is_exact_outside_the_range() {
        let mut obs = GaussianObserver::new();
        let a = Label::text("A");
        for v in [1.0, 2.0, 3.0] {
            obs.observe(v, &a);
        }
        let stats = obs.class_stats(&a).unwrap();
        assert_eq!(stats.mass_below(0.5), 0.0);
        assert_eq!(stats.mass_below(3.0), 3.0);
        assert_eq!(stats.mass_below(7.0), 3.0);
        let inside = stats.mass_below(2.0);
        assert!(inside > 0.0 && inside < 3.0);
    }
}
