//! Prequential (progressive validation) evaluation.
//!
//! Each sample is used to test the model first, then to train it. A cold
//! model's absent prediction is skipped, not counted as an error. The
//! predict and learn calls are timed separately on a monotonic clock;
//! stream decoding and metric updates stay outside both timers.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::Error;
use crate::estimator::{Classifier, Label};
use crate::metrics::{Accuracy, ConfusionMatrix};
use crate::stream::StreamItem;

/// Outcome of one prequential run.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Final metric value.
    pub accuracy: f64,
    /// Samples consumed from the stream.
    pub samples: u64,
    /// Predictions actually scored (cold-start non-answers are skipped).
    pub predictions: u64,
    /// Cumulative wall time spent inside learn calls.
    pub learn_time: Duration,
    /// Cumulative wall time spent inside predict calls.
    pub predict_time: Duration,
    /// Diagnostic (true, predicted) counts.
    pub confusion: ConfusionMatrix,
}

/// One scored prediction, for offline replay of the metric.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRecord {
    pub index: u64,
    pub truth: Label,
    pub predicted: Label,
}

impl PredictionRecord {
    /// `index,true,predicted` — one record per line.
    pub fn to_line(&self) -> String {
        format!("{},{},{}", self.index, self.truth, self.predicted)
    }
}

impl FromStr for PredictionRecord {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let mut parts = line.splitn(3, ',');
        let index = parts
            .next()
            .ok_or("missing index")?
            .parse::<u64>()
            .map_err(|e| e.to_string())?;
        let truth = parts.next().ok_or("missing true label")?;
        let predicted = parts.next().ok_or("missing predicted label")?;
        Ok(PredictionRecord {
            index,
            truth: Label::text(truth),
            predicted: Label::text(predicted),
        })
    }
}

impl fmt::Display for PredictionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Runs test-then-train over the stream, mutating `model` and `metric` in
/// place. Stream errors abort the run, tagged with the sample index.
pub fn progressive_val_score<I, M>(
    stream: I,
    model: &mut M,
    metric: &mut Accuracy,
) -> Result<EvalReport, Error>
where
    I: IntoIterator<Item = StreamItem>,
    M: Classifier + ?Sized,
{
    run(stream, model, metric, None)
}

/// Same loop, additionally appending every scored prediction to `log`.
pub fn progressive_val_score_logged<I, M>(
    stream: I,
    model: &mut M,
    metric: &mut Accuracy,
    log: &mut Vec<PredictionRecord>,
) -> Result<EvalReport, Error>
where
    I: IntoIterator<Item = StreamItem>,
    M: Classifier + ?Sized,
{
    run(stream, model, metric, Some(log))
}

fn run<I, M>(
    stream: I,
    model: &mut M,
    metric: &mut Accuracy,
    mut log: Option<&mut Vec<PredictionRecord>>,
) -> Result<EvalReport, Error>
where
    I: IntoIterator<Item = StreamItem>,
    M: Classifier + ?Sized,
{
    let mut samples = 0u64;
    let mut predictions = 0u64;
    let mut learn_time = Duration::ZERO;
    let mut predict_time = Duration::ZERO;
    let mut confusion = ConfusionMatrix::new();

    for item in stream {
        let (x, y) = item.map_err(|source| Error::AtSample {
            index: samples,
            source: Box::new(source),
        })?;

        let started = Instant::now();
        let predicted = model.predict_one(&x)?;
        predict_time += started.elapsed();

        if let Some(predicted) = predicted {
            metric.update(&y, &predicted);
            confusion.update(&y, &predicted);
            if let Some(log) = log.as_deref_mut() {
                log.push(PredictionRecord {
                    index: samples,
                    truth: y.clone(),
                    predicted,
                });
            }
            predictions += 1;
        }

        let started = Instant::now();
        model.learn_one(&x, &y)?;
        learn_time += started.elapsed();

        samples += 1;
    }

    Ok(EvalReport {
        accuracy: metric.value(),
        samples,
        predictions,
        learn_time,
        predict_time,
        confusion,
    })
}
