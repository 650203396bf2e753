//! Linear models trained by stochastic gradient descent.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::Error;
use crate::estimator::{ClassDistribution, Classifier, Label};
use crate::feature::{FeatureName, FeatureValue, FeatureVector};

/// Binary logistic regression on sparse feature vectors.
///
/// Weights for features never seen are implicitly 0. The label universe is
/// the first two distinct labels observed; in ascending order they become
/// the negative and positive class. Each `learn_one` takes a single SGD
/// step on the log-loss with constant learning rate:
/// `g = p - [y == pos]`, `w_f -= eta * (g * x_f + l2 * w_f)`,
/// `bias -= eta * g`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticRegression {
    weights: FeatureVector,
    bias: f64,
    learning_rate: f64,
    l2: f64,
    labels: BTreeSet<Label>,
}

impl Default for LogisticRegression {
    fn default() -> Self {
        Self::with_params(0.01, 0.0).expect("default parameters are valid")
    }
}

impl LogisticRegression {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_params(learning_rate: f64, l2: f64) -> Result<Self, Error> {
        if !(learning_rate > 0.0 && learning_rate.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "learning_rate",
                reason: format!("must be a positive real, got {learning_rate}"),
            });
        }
        if !(l2 >= 0.0 && l2.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "l2",
                reason: format!("must be a nonnegative real, got {l2}"),
            });
        }
        Ok(LogisticRegression {
            weights: FeatureVector::new(),
            bias: 0.0,
            learning_rate,
            l2,
            labels: BTreeSet::new(),
        })
    }

    pub fn weight(&self, name: &FeatureName) -> f64 {
        self.weights
            .get(name)
            .and_then(FeatureValue::as_numeric)
            .unwrap_or(0.0)
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    /// P(positive class | x) under the current weights.
    pub fn raw_probability(&self, x: &FeatureVector) -> Result<f64, Error> {
        Ok(sigmoid(self.weights.dot(x)? + self.bias))
    }

    fn positive_label(&self) -> Option<&Label> {
        self.labels.iter().next_back()
    }
}

impl Classifier for LogisticRegression {
    fn learn_one(&mut self, x: &FeatureVector, y: &Label) -> Result<(), Error> {
        if !self.labels.contains(y) {
            if self.labels.len() == 2 {
                let mut seen = self.labels.iter();
                return Err(Error::ExtraBinaryLabel {
                    first: seen.next().expect("two labels").clone(),
                    second: seen.next().expect("two labels").clone(),
                    third: y.clone(),
                });
            }
            self.labels.insert(y.clone());
        }
        let entries = x.numeric_entries()?;

        let p = self.raw_probability(x)?;
        let target = if Some(y) == self.positive_label() {
            1.0
        } else {
            0.0
        };
        let g = p - target;

        for (name, value) in entries {
            let w = self.weight(name);
            let updated = w - self.learning_rate * (g * value + self.l2 * w);
            self.weights
                .insert(name.clone(), FeatureValue::numeric(updated)?)?;
        }
        self.bias -= self.learning_rate * g;
        Ok(())
    }

    fn predict_proba_one(&self, x: &FeatureVector) -> Result<ClassDistribution, Error> {
        match self.labels.len() {
            0 => Ok(ClassDistribution::empty()),
            1 => {
                let only = self.labels.iter().next().expect("one label").clone();
                ClassDistribution::normalize(BTreeMap::from([(only, 1.0)]))
            }
            _ => {
                let mut iter = self.labels.iter();
                let neg = iter.next().expect("two labels").clone();
                let pos = iter.next().expect("two labels").clone();
                let p = self.raw_probability(x)?;
                ClassDistribution::normalize(BTreeMap::from([(neg, 1.0 - p), (pos, p)]))
            }
        }
    }
}

/// Numerically stable logistic function; no overflow for any finite input.
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(pairs: &[(&str, f64)]) -> FeatureVector {
        FeatureVector::from_numeric(pairs.iter().map(|&(n, v)| (n, v))).unwrap()
    }

    fn name(s: &str) -> FeatureName {
        FeatureName::new(s).unwrap()
    }

    fn pos() -> Label {
        Label::text("pos")
    }

    fn neg() -> Label {
        Label::text("neg")
    }

    #[test]
    fn fresh_model_predicts_nothing() {
        let m = LogisticRegression::new();
        assert!(m.predict_proba_one(&fv(&[("a", 1.0)])).unwrap().is_empty());
    }

    #[test]
    fn zero_state_probability_is_half() {
        // zero weights, zero bias
        let m = LogisticRegression::new();
        assert_eq!(m.raw_probability(&fv(&[("a", 1.0)])).unwrap(), 0.5);
        // weights {a: 1}, bias 0, x {a: 0}
        let mut m = LogisticRegression::new();
        m.weights = fv(&[("a", 1.0)]);
        assert_eq!(m.raw_probability(&fv(&[("a", 0.0)])).unwrap(), 0.5);
    }

    #[test]
    fn sigma_of_one_matches_scalar_oracle() {
        // weights {a: 2}, bias -1, x {a: 1}: z = 1.
        let mut m = LogisticRegression::new();
        m.weights = fv(&[("a", 2.0)]);
        m.bias = -1.0;
        let p = m.raw_probability(&fv(&[("a", 1.0)])).unwrap();
        let oracle = 1.0 / (1.0 + (-1.0f64).exp());
        assert!((p - oracle).abs() < 1e-15);
        assert!((p - 0.731_058_578_630_004_9).abs() < 1e-12);
    }

    #[test]
    fn first_gradient_step_matches_hand_computation() {
        // Fresh model, eta 0.01, l2 0, x {a: 1}, y positive:
        // p = 0.5, g = -0.5, w_a = 0.005, bias = 0.005.
        let mut m = LogisticRegression::new();
        m.learn_one(&fv(&[("a", 1.0)]), &pos()).unwrap();
        assert_eq!(m.weight(&name("a")), 0.005);
        assert_eq!(m.bias(), 0.005);
    }

    #[test]
    fn gradient_matches_central_finite_differences() {
        // Log-loss at random states; perturb one weight both ways and
        // compare the analytic gradient g * x_f against the quotient.
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut uniform = move || {
            // xorshift64, plenty for test fixtures
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        let mut states = Vec::new();
        for round in 0..20 {
            states.push((
                vec![("a", uniform()), ("b", uniform())],
                uniform(),
                vec![("a", uniform()), ("b", uniform())],
                round % 2 == 0,
            ));
        }
        let h = 1e-6;
        for (weights, bias, x, label_is_pos) in states {
            let x = fv(&x);
            let target = if label_is_pos { 1.0 } else { 0.0 };
            let loss = |w: &FeatureVector, b: f64| -> f64 {
                let p = sigmoid(w.dot(&x).unwrap() + b);
                -(target * p.ln() + (1.0 - target) * (1.0 - p).ln())
            };
            let w0 = fv(&weights);
            let p = sigmoid(w0.dot(&x).unwrap() + bias);
            let g = p - target;
            for (fname, _) in &weights {
                let n = name(fname);
                let xf = x.numeric(&n).unwrap().unwrap();
                let mut wp = w0.clone();
                wp.insert(
                    n.clone(),
                    FeatureValue::numeric(w0.numeric(&n).unwrap().unwrap() + h).unwrap(),
                )
                .unwrap();
                let mut wm = w0.clone();
                wm.insert(
                    n.clone(),
                    FeatureValue::numeric(w0.numeric(&n).unwrap().unwrap() - h).unwrap(),
                )
                .unwrap();
                let numeric = (loss(&wp, bias) - loss(&wm, bias)) / (2.0 * h);
                assert!(
                    (numeric - g * xf).abs() < 1e-6,
                    "finite difference {numeric} vs analytic {}",
                    g * xf
                );
            }
            // bias gradient is g
            let numeric = (loss(&w0, bias + h) - loss(&w0, bias - h)) / (2.0 * h);
            assert!((numeric - g).abs() < 1e-6);
        }
    }

    #[test]
    fn empty_vector_updates_only_the_bias() {
        let mut m = LogisticRegression::new();
        m.learn_one(&FeatureVector::new(), &pos()).unwrap();
        assert_eq!(m.bias(), 0.005);
        assert!(m.weights.is_empty());
    }

    #[test]
    fn repeated_positive_updates_increase_probability() {
        let mut m = LogisticRegression::new();
        let x = fv(&[("a", 1.0)]);
        m.learn_one(&x, &neg()).unwrap();
        m.learn_one(&fv(&[("a", -1.0)]), &pos()).unwrap();
        let mut last = m.raw_probability(&x).unwrap();
        for _ in 0..5 {
            m.learn_one(&x, &pos()).unwrap();
            let p = m.raw_probability(&x).unwrap();
            assert!(p > last, "p must strictly increase: {p} vs {last}");
            last = p;
        }
    }

    #[test]
    fn third_distinct_label_is_rejected() {
        let mut m = LogisticRegression::new();
        m.learn_one(&fv(&[("a", 1.0)]), &Label::text("UP")).unwrap();
        m.learn_one(&fv(&[("a", 2.0)]), &Label::text("DOWN"))
            .unwrap();
        assert!(matches!(
            m.learn_one(&fv(&[("a", 3.0)]), &Label::text("SIDEWAYS")),
            Err(Error::ExtraBinaryLabel { .. })
        ));
    }

    #[test]
    fn single_observed_label_predicts_it_with_certainty() {
        let mut m = LogisticRegression::new();
        m.learn_one(&fv(&[("a", 1.0)]), &Label::text("UP")).unwrap();
        let d = m.predict_proba_one(&fv(&[("a", 1.0)])).unwrap();
        assert_eq!(d.get(&Label::text("UP")), Some(1.0));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn sigmoid_is_stable_for_extreme_inputs() {
        assert_eq!(sigmoid(800.0), 1.0);
        assert_eq!(sigmoid(-800.0), 0.0);
        assert!(sigmoid(-800.0) >= 0.0);
        assert!(sigmoid(750.0).is_finite());
        let mut m = LogisticRegression::new();
        m.weights = fv(&[("a", 1000.0)]);
        m.labels.insert(neg());
        m.labels.insert(pos());
        let d = m.predict_proba_one(&fv(&[("a", 1.0)])).unwrap();
        assert_eq!(d.get(&pos()), Some(1.0));
    }
}
