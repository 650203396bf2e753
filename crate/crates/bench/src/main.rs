//! Benchmark CLI.
//!
//! ```text
//! bench run --dataset elec2 --data-path elec2.csv [--models gnb,lr,ht]
//! bench run --dataset waveform [--seed 42] [--count 1000]
//!           [--repeats 7] [--format markdown|csv] [--out path]
//!           [--single-thread]
//! ```

use std::process::ExitCode;
use std::str::FromStr;

use streamml_bench::{
    render_table, run_benchmark, BenchConfig, BenchError, DatasetSpec, ModelKind, OutputFormat,
};

fn print_usage() {
    eprintln!("Usage: bench run [OPTIONS]");
    eprintln!();
    eprintln!("  --dataset <name>    elec2 or waveform (required)");
    eprintln!("  --data-path <file>  comma-separated elec2 file (required for elec2)");
    eprintln!("  --seed <u64>        waveform generator seed (default: 42)");
    eprintln!("  --count <n>         waveform samples to draw (default: 1000)");
    eprintln!("  --models <list>     comma-separated subset of gnb,lr,ht (default: all)");
    eprintln!("  --repeats <k>       timed repeats per model (default: 7)");
    eprintln!("  --format <name>     markdown or csv (default: markdown)");
    eprintln!("  --out <file>        write the table to a file instead of stdout");
    eprintln!("  --single-thread     run models sequentially for clean timings");
    eprintln!("  --help              show this help");
}

fn parse_args(args: &[String]) -> Result<(BenchConfig, Option<String>), String> {
    let mut dataset_name: Option<String> = None;
    let mut data_path: Option<String> = None;
    let mut seed: u64 = 42;
    let mut count: usize = 1000;
    let mut models = ModelKind::ALL.to_vec();
    let mut repeats: usize = 7;
    let mut format = OutputFormat::default();
    let mut out: Option<String> = None;
    let mut single_thread = false;

    let mut i = 0;
    while i < args.len() {
        let flag = args[i].as_str();
        let value = |i: &mut usize| -> Result<String, String> {
            *i += 1;
            args.get(*i)
                .cloned()
                .ok_or_else(|| format!("{flag} expects a value"))
        };
        match flag {
            "--dataset" => dataset_name = Some(value(&mut i)?),
            "--data-path" => data_path = Some(value(&mut i)?),
            "--seed" => {
                seed = value(&mut i)?
                    .parse()
                    .map_err(|_| "--seed expects an unsigned integer".to_string())?
            }
            "--count" => {
                count = value(&mut i)?
                    .parse()
                    .map_err(|_| "--count expects an unsigned integer".to_string())?
            }
            "--models" => {
                models = value(&mut i)?
                    .split(',')
                    .map(|name| ModelKind::from_str(name.trim()).map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
            }
            "--repeats" => {
                repeats = value(&mut i)?
                    .parse()
                    .map_err(|_| "--repeats expects a positive integer".to_string())?
            }
            "--format" => {
                format = value(&mut i)?
                    .parse()
                    .map_err(|e: BenchError| e.to_string())?
            }
            "--out" => out = Some(value(&mut i)?),
            "--single-thread" => single_thread = true,
            other => return Err(format!("unknown flag: {other}")),
        }
        i += 1;
    }

    let dataset = match dataset_name.as_deref() {
        Some("elec2") => DatasetSpec::Elec2 {
            path: data_path
                .ok_or_else(|| "--dataset elec2 requires --data-path".to_string())?
                .into(),
        },
        Some("waveform") => DatasetSpec::Waveform { seed, count },
        Some(other) => return Err(format!("unknown dataset '{other}'")),
        None => return Err("--dataset is required".to_string()),
    };

    Ok((
        BenchConfig {
            models,
            dataset,
            repeats,
            format,
            single_thread,
        },
        out,
    ))
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        print_usage();
        return ExitCode::SUCCESS;
    }
    match args.first().map(String::as_str) {
        Some("run") => {}
        Some(other) => {
            eprintln!("unknown command: {other}");
            print_usage();
            return ExitCode::FAILURE;
        }
        None => {
            print_usage();
            return ExitCode::FAILURE;
        }
    }

    let (config, out) = match parse_args(&args[1..]) {
        Ok(parsed) => parsed,
        Err(message) => {
            eprintln!("{message}");
            print_usage();
            return ExitCode::FAILURE;
        }
    };

    let report = match run_benchmark(&config) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("{err}");
            return ExitCode::FAILURE;
        }
    };

    let table = render_table(&report, config.format);
    match out {
        None => print!("{table}"),
        Some(path) => {
            if let Err(err) = std::fs::write(&path, &table) {
                eprintln!("cannot write '{path}': {err}");
                return ExitCode::FAILURE;
            }
        }
    }
    ExitCode::SUCCESS
}
