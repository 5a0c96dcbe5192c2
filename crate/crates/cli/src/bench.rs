//! Corpus benchmark rows.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use budgeted_core::eptas::approximate;
use budgeted_core::io::load_instance;
use budgeted_core::oracles::brute_force_opt;
use budgeted_core::rational::{self, Rational};
use budgeted_core::repset::Options;
use budgeted_core::{Constraint, Error, Result};

const HEADER: [&str; 8] = ["instance", "epsilon", "profit", "opt", "ratio", "repset_size", "repset_bound", "wall_ms"];

/// Instance files named directly or found (non-recursively) in directories,
/// sorted by path.
fn collect_files(corpus: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for path in corpus {
        if path.is_dir() {
            let entries = std::fs::read_dir(path).map_err(|e| Error::input(format!("cannot list {}: {e}", path.display())))?;
            for entry in entries {
                let p = entry.map_err(|e| Error::input(e.to_string()))?.path();
                if p.extension().is_some_and(|x| x == "json") {
                    files.push(p);
                }
            }
        } else if path.is_file() {
            files.push(path.clone());
        } else {
            return Err(Error::input(format!("no such file {}", path.display())));
        }
    }
    files.sort();
    files.dedup();
    Ok(files)
}

fn row(path: &Path, epsilon: &Rational, opts: &Options, timing: bool) -> Result<Vec<String>> {
    let (_, inst) = load_instance(path)?;
    let start = Instant::now();
    let run = approximate(&inst, epsilon, opts)?;
    let wall = start.elapsed();
    let opt = if inst.len() <= opts.max_exhaustive {
        Some(brute_force_opt(&inst, opts.max_exhaustive)?.profit)
    } else {
        None
    };
    let profit = &run.solution().profit;
    let ratio = opt.as_ref().map(|o| {
        if *o == Rational::from_integer(0.into()) {
            "1".to_string()
        } else {
            rational::format(&(profit / o))
        }
    });
    let bound = matches!(inst.constraint(), Constraint::Matching(_)).then(|| run.repset.matching_bound().to_string());
    Ok(vec![
        path.display().to_string(),
        rational::format(epsilon),
        rational::format(profit),
        opt.map(|o| rational::format(&o)).unwrap_or_default(),
        ratio.unwrap_or_default(),
        run.repset.union.len().to_string(),
        bound.unwrap_or_default(),
        if timing { wall.as_millis().to_string() } else { String::new() },
    ])
}

/// One row per `(instance, ε)` pair, sorted by instance then ε.
pub fn run(corpus: &[PathBuf], epsilons: &[Rational], opts: &Options, timing: bool) -> Result<String> {
    let files = collect_files(corpus)?;
    let jobs: Vec<(usize, usize)> = (0..files.len()).flat_map(|f| (0..epsilons.len()).map(move |e| (f, e))).collect();
    let mut rows: Vec<((usize, Rational), Vec<String>)> = jobs
        .par_iter()
        .map(|&(f, e)| row(&files[f], &epsilons[e], opts, timing).map(|r| ((f, epsilons[e].clone()), r)))
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invariant(format!("csv output failed: {e}"));
    out.write_record(HEADER).map_err(io)?;
    for (_, r) in rows {
        out.write_record(&r).map_err(io)?;
    }
    let bytes = out.into_inner().map_err(|e| Error::Invariant(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv fields are UTF-8"))
}
