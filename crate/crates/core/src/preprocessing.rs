//! Feature scaling for scale-sensitive models.

use indexmap::IndexMap;

use crate::error::Error;
use crate::estimator::Transformer;
use crate::feature::{FeatureName, FeatureValue, FeatureVector};
use crate::stats::RunningMoments;

/// Online z-score scaler. Keeps running per-feature moments and maps each
/// value to `(v - mean) / std`. Features never seen, features with zero
/// variance and non-numeric values all map to 0, so new features appearing
/// mid-stream are tolerated.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StandardScaler {
    moments: IndexMap<FeatureName, RunningMoments>,
}

impl StandardScaler {
    pub fn new() -> Self {
        Self::default()
    }

    /// Running moments for one feature; `None` until it has been seen.
    pub fn moments(&self, name: &FeatureName) -> Option<&RunningMoments> {
        self.moments.get(name)
    }

    pub fn feature_count(&self) -> usize {
        self.moments.len()
    }
}

impl Transformer for StandardScaler {
    fn learn_one(&mut self, x: &FeatureVector) -> Result<(), Error> {
        // Validate the whole sample first so a categorical value cannot
        // leave the scaler half-updated.
        let entries = x.numeric_entries()?;
        for (name, value) in entries {
            self.moments.entry(name.clone()).or_default().update(value);
        }
        Ok(())
    }

    fn transform_one(&self, x: &FeatureVector) -> Result<FeatureVector, Error> {
        let mut out = FeatureVector::new();
        for (name, value) in x.iter() {
            let z = match (value.as_numeric(), self.moments.get(name)) {
                (Some(v), Some(m)) if m.std() > 0.0 => (v - m.mean()) / m.std(),
                _ => 0.0,
            };
            out.insert(name.clone(), FeatureValue::numeric(z)?)?;
        }
        Ok(out)
    }
}
