//! Sequential composition of transformers terminated by an estimator.
//!
//! All steps but the last must be transformers; the last may be any
//! estimator. During learning each transformer is updated with the current
//! representation and then applied to it before the next step sees the
//! sample; prediction applies the transformers read-only. Transformers are
//! unsupervised, so only the terminal step ever sees the label.

use crate::error::Error;
use crate::estimator::{ClassDistribution, Classifier, Label, Transformer};
use crate::feature::FeatureVector;
use crate::linear_model::LogisticRegression;
use crate::naive_bayes::GaussianNB;
use crate::preprocessing::StandardScaler;
use crate::tree::HoeffdingTreeClassifier;

/// One pipeline step. Nested pipelines compose associatively: wrapping
/// steps in an inner pipeline does not change what any step sees.
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Scaler(StandardScaler),
    LogisticRegression(LogisticRegression),
    GaussianNB(GaussianNB),
    HoeffdingTree(HoeffdingTreeClassifier),
    Pipeline(Box<Pipeline>),
}

impl Step {
    fn name(&self) -> &'static str {
        match self {
            Step::Scaler(_) => "standard scaler",
            Step::LogisticRegression(_) => "logistic regression",
            Step::GaussianNB(_) => "gaussian naive bayes",
            Step::HoeffdingTree(_) => "hoeffding tree",
            Step::Pipeline(_) => "pipeline",
        }
    }

    fn is_transformer(&self) -> bool {
        match self {
            Step::Scaler(_) => true,
            Step::Pipeline(p) => p.is_transformer(),
            _ => false,
        }
    }

    fn learn_unsupervised(&mut self, x: &FeatureVector) -> Result<(), Error> {
        match self {
            Step::Scaler(s) => s.learn_one(x),
            Step::Pipeline(p) => Transformer::learn_one(p.as_mut(), x),
            other => Err(Error::NotATransformer { step: other.name() }),
        }
    }

    fn transform(&self, x: &FeatureVector) -> Result<FeatureVector, Error> {
        match self {
            Step::Scaler(s) => s.transform_one(x),
            Step::Pipeline(p) => p.transform_one(x),
            other => Err(Error::NotATransformer { step: other.name() }),
        }
    }

    fn learn_supervised(&mut self, x: &FeatureVector, y: &Label) -> Result<(), Error> {
        match self {
            Step::Scaler(s) => s.learn_one(x),
            Step::LogisticRegression(m) => m.learn_one(x, y),
            Step::GaussianNB(m) => m.learn_one(x, y),
            Step::HoeffdingTree(m) => m.learn_one(x, y),
            Step::Pipeline(p) => Classifier::learn_one(p.as_mut(), x, y),
        }
    }

    fn predict_proba(&self, x: &FeatureVector) -> Result<ClassDistribution, Error> {
        match self {
            Step::LogisticRegression(m) => m.predict_proba_one(x),
            Step::GaussianNB(m) => m.predict_proba_one(x),
            Step::HoeffdingTree(m) => m.predict_proba_one(x),
            Step::Pipeline(p) => p.predict_proba_one(x),
            other => Err(Error::NotAClassifier { step: other.name() }),
        }
    }
}

impl From<StandardScaler> for Step {
    fn from(s: StandardScaler) -> Self {
        Step::Scaler(s)
    }
}

impl From<LogisticRegression> for Step {
    fn from(m: LogisticRegression) -> Self {
        Step::LogisticRegression(m)
    }
}

impl From<GaussianNB> for Step {
    fn from(m: GaussianNB) -> Self {
        Step::GaussianNB(m)
    }
}

impl From<HoeffdingTreeClassifier> for Step {
    fn from(m: HoeffdingTreeClassifier) -> Self {
        Step::HoeffdingTree(m)
    }
}

impl From<Pipeline> for Step {
    fn from(p: Pipeline) -> Self {
        Step::Pipeline(Box::new(p))
    }
}

/// An ordered list of steps whose first n-1 members are transformers.
/// Step order is fixed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Pipeline {
    steps: Vec<Step>,
}

impl Pipeline {
    pub fn new(steps: Vec<Step>) -> Result<Self, Error> {
        if steps.is_empty() {
            return Err(Error::EmptyPipeline);
        }
        for (index, step) in steps[..steps.len() - 1].iter().enumerate() {
            if !step.is_transformer() {
                return Err(Error::MidPipelineModel {
                    index,
                    step: step.name(),
                });
            }
        }
        Ok(Pipeline { steps })
    }

    /// Appends a step, revalidating the transformer-prefix rule.
    pub fn then(self, step: impl Into<Step>) -> Result<Self, Error> {
        let mut steps = self.steps;
        steps.push(step.into());
        Pipeline::new(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Whether the pipeline as a whole acts as a transformer.
    pub fn is_transformer(&self) -> bool {
        self.steps.last().map(Step::is_transformer).unwrap_or(false)
    }

    fn terminal(&self) -> &Step {
        self.steps.last().expect("pipelines are never empty")
    }

    /// Runs `x` through the first n-1 transformers read-only.
    fn feed_forward(&self, x: &FeatureVector) -> Result<FeatureVector, Error> {
        let mut current = x.clone();
        for step in &self.steps[..self.steps.len() - 1] {
            current = step.transform(&current)?;
        }
        Ok(current)
    }
}

impl Classifier for Pipeline {
    /// Updates every transformer with the representation it is given, then
    /// transforms it and hands the final representation (with the label)
    /// to the terminal step.
    fn learn_one(&mut self, x: &FeatureVector, y: &Label) -> Result<(), Error> {
        let mut current = x.clone();
        let last = self.steps.len() - 1;
        for step in &mut self.steps[..last] {
            step.learn_unsupervised(&current)?;
            current = step.transform(&current)?;
        }
        self.steps[last].learn_supervised(&current, y)
    }

    fn predict_proba_one(&self, x: &FeatureVector) -> Result<ClassDistribution, Error> {
        let current = self.feed_forward(x)?;
        self.terminal().predict_proba(&current)
    }
}

impl Transformer for Pipeline {
    fn learn_one(&mut self, x: &FeatureVector) -> Result<(), Error> {
        if !self.is_transformer() {
            return Err(Error::NotATransformer {
                step: self.terminal().name(),
            });
        }
        let mut current = x.clone();
        let last = self.steps.len() - 1;
        for step in &mut self.steps[..last] {
            step.learn_unsupervised(&current)?;
            current = step.transform(&current)?;
        }
        self.steps[last].learn_unsupervised(&current)
    }

    fn transform_one(&self, x: &FeatureVector) -> Result<FeatureVector, Error> {
        let current = self.feed_forward(x)?;
        self.terminal().transform(&current)
    }
}
