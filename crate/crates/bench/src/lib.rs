//! Benchmark harness: run a model matrix over a dataset with repeated
//! timed prequential passes and render the aggregate table.
//!
//! Accuracy is deterministic given the configuration, so it is taken from
//! the first repeat and asserted identical across the rest; learn and
//! predict wall times are aggregated as mean ± standard deviation over
//! repeats. Repeats always run sequentially; distinct models may run on
//! separate threads unless the single-thread flag asks for fully
//! sequential execution.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use streamml::datasets::load_elec2;
use streamml::evaluate::progressive_val_score;
use streamml::linear_model::LogisticRegression;
use streamml::metrics::Accuracy;
use streamml::naive_bayes::GaussianNB;
use streamml::pipeline::Pipeline;
use streamml::preprocessing::StandardScaler;
use streamml::synth::Waveform;
use streamml::tree::HoeffdingTreeClassifier;
use streamml::{Classifier, LabeledSample};

#[derive(Debug)]
pub enum BenchError {
    Usage(String),
    Data(streamml::Error),
    NonDeterministic {
        model: ModelKind,
        repeat: usize,
        first: f64,
        got: f64,
    },
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::Usage(msg) => write!(f, "usage error: {msg}"),
            BenchError::Data(err) => write!(f, "dataset error: {err}"),
            BenchError::NonDeterministic {
                model,
                repeat,
                first,
                got,
            } => write!(
                f,
                "model {model} was not deterministic: repeat {repeat} scored {got}, first repeat {first}"
            ),
        }
    }
}

impl std::error::Error for BenchError {}

impl From<streamml::Error> for BenchError {
    fn from(err: streamml::Error) -> Self {
        BenchError::Data(err)
    }
}

/// The three benchmarked learners. `lr` runs as a scaler|regression
/// pipeline since linear models are scale-sensitive; `gnb` and `ht`
/// consume raw features.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Gnb,
    Lr,
    Ht,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Gnb, ModelKind::Lr, ModelKind::Ht];

    pub fn build(self) -> Box<dyn Classifier> {
        match self {
            ModelKind::Gnb => Box::new(GaussianNB::new()),
            ModelKind::Lr => Box::new(
                Pipeline::new(vec![
                    StandardScaler::new().into(),
                    LogisticRegression::new().into(),
                ])
                .expect("scaler|lr is a valid pipeline"),
            ),
            ModelKind::Ht => Box::new(HoeffdingTreeClassifier::default()),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Gnb => "gnb",
            ModelKind::Lr => "lr",
            ModelKind::Ht => "ht",
        })
    }
}

impl FromStr for ModelKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gnb" => Ok(ModelKind::Gnb),
            "lr" => Ok(ModelKind::Lr),
            "ht" => Ok(ModelKind::Ht),
            other => Err(BenchError::Usage(format!(
                "unknown model '{other}' (expected gnb, lr or ht)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSpec {
    Elec2 { path: PathBuf },
    Waveform { seed: u64, count: usize },
}

impl DatasetSpec {
    /// Short descriptor used in table rows; never contains a comma so csv
    /// rows stay flat.
    pub fn name(&self) -> String {
        match self {
            DatasetSpec::Elec2 { .. } => "elec2".to_string(),
            DatasetSpec::Waveform { seed, count } => format!("waveform(seed={seed} n={count})"),
        }
    }

    fn materialize(&self) -> Result<Vec<LabeledSample>, BenchError> {
        match self {
            DatasetSpec::Elec2 { path } => Ok(load_elec2(path)?.collect::<Result<_, _>>()?),
            DatasetSpec::Waveform { seed, count } => Ok(Waveform::new(*seed)
                .take(*count)
                .map(Result::unwrap)
                .collect()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Markdown,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" => Ok(OutputFormat::Markdown),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(BenchError::Usage(format!(
                "unknown format '{other}' (expected markdown or csv)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub models: Vec<ModelKind>,
    pub dataset: DatasetSpec,
    pub repeats: usize,
    pub format: OutputFormat,
    pub single_thread: bool,
}

impl BenchConfig {
    fn validate(&self) -> Result<(), BenchError> {
        if self.models.is_empty() {
            return Err(BenchError::Usage("at least one model is required".into()));
        }
        if self.repeats == 0 {
            return Err(BenchError::Usage("repeats must be at least 1".into()));
        }
        Ok(())
    }
}

/// One (model, dataset) cell of the benchmark matrix. Times are seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub model: ModelKind,
    pub dataset: String,
    pub accuracy: f64,
    pub learn_mean: f64,
    pub learn_std: f64,
    pub predict_mean: f64,
    pub predict_std: f64,
    pub repeats: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub cells: Vec<CellResult>,
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, variance.sqrt())
}

fn run_cell(
    model: ModelKind,
    dataset: &str,
    data: &[LabeledSample],
    repeats: usize,
) -> Result<CellResult, BenchError> {
    let mut accuracy = None;
    let mut learn = Vec::with_capacity(repeats);
    let mut predict = Vec::with_capacity(repeats);
    for repeat in 0..repeats {
        let mut estimator = model.build();
        let mut metric = Accuracy::new();
        let report = progressive_val_score(
            data.iter().cloned().map(Ok),
            estimator.as_mut(),
            &mut metric,
        )?;
        match accuracy {
            None => accuracy = Some(report.accuracy),
            Some(first) if report.accuracy != first => {
                return Err(BenchError::NonDeterministic {
                    model,
                    repeat,
                    first,
                    got: report.accuracy,
                })
            }
            _ => {}
        }
        learn.push(report.learn_time.as_secs_f64());
        predict.push(report.predict_time.as_secs_f64());
    }
    let (learn_mean, learn_std) = mean_std(&learn);
    let (predict_mean, predict_std) = mean_std(&predict);
    Ok(CellResult {
        model,
        dataset: dataset.to_string(),
        accuracy: accuracy.expect("repeats >= 1"),
        learn_mean,
        learn_std,
        predict_mean,
        predict_std,
        repeats,
    })
}

/// Runs every configured model over the dataset. The dataset is decoded
/// once up front; repeats replay the decoded samples so only learn and
/// predict calls land inside the timers.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    config.validate()?;
    let data = config.dataset.materialize()?;
    let dataset = config.dataset.name();

    let cells = if config.single_thread || config.models.len() == 1 {
        let mut cells = Vec::with_capacity(config.models.len());
        for &model in &config.models {
            cells.push(run_cell(model, &dataset, &data, config.repeats)?);
        }
        cells
    } else {
        std::thread::scope(|scope| {
            let data = &data;
            let dataset = &dataset;
            let handles: Vec<_> = config
                .models
                .iter()
                .map(|&model| scope.spawn(move || run_cell(model, dataset, data, config.repeats)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("benchmark cell panicked"))
                .collect::<Result<Vec<_>, _>>()
        })?
    };

    Ok(BenchReport { cells })
}

/// Renders the report; one row per (model, dataset) cell.
pub fn render_table(report: &BenchReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Markdown => render_markdown(report),
        OutputFormat::Csv => render_csv(report),
    }
}

fn render_markdown(report: &BenchReport) -> String {
    let mut out = String::new();
    out.push_str("| model | dataset | accuracy (%) | learn (s) | predict (s) |\n");
    out.push_str("|---|---|---:|---:|---:|\n");
    for cell in &report.cells {
        out.push_str(&format!(
            "| {} | {} | {:.2} | {:.3} ± {:.3} | {:.3} ± {:.3} |\n",
            cell.model,
            cell.dataset,
            cell.accuracy * 100.0,
            cell.learn_mean,
            cell.learn_std,
            cell.predict_mean,
            cell.predict_std,
        ));
    }
    out
}

const CSV_HEADER: &str =
    "model,dataset,accuracy_pct,learn_mean_s,learn_std_s,predict_mean_s,predict_std_s,repeats";

fn render_csv(report: &BenchReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for cell in &report.cells {
        out.push_str(&format!(
            "{},{},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{}\n",
            cell.model,
            cell.dataset,
            cell.accuracy * 100.0,
            cell.learn_mean,
            cell.learn_std,
            cell.predict_mean,
            cell.predict_std,
            cell.repeats,
        ));
    }
    out
}

/// Parses text produced by the csv renderer back into a report.
pub fn parse_csv_report(text: &str) -> Result<BenchReport, BenchError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == CSV_HEADER => {}
        other => {
            return Err(BenchError::Usage(format!(
                "unexpected csv header: {other:?}"
            )))
        }
    }
    let mut cells = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(BenchError::Usage(format!(
                "csv row {} has {} fields, expected 8",
                i + 2,
                fields.len()
            )));
        }
        let number = |idx: usize| -> Result<f64, BenchError> {
            fields[idx]
                .parse()
                .map_err(|_| BenchError::Usage(format!("bad number '{}' in csv", fields[idx])))
        };
        cells.push(CellResult {
            model: fields[0].parse()?,
            dataset: fields[1].to_string(),
            accuracy: number(2)? / 100.0,
            learn_mean: number(3)?,
            learn_std: number(4)?,
            predict_mean: number(5)?,
            predict_std: number(6)?,
            repeats: fields[7]
                .parse()
                .map_err(|_| BenchError::Usage(format!("bad repeats '{}' in csv", fields[7])))?,
        });
    }
    Ok(BenchReport { cells })
}
