use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use budgeted_core::eptas::approximate;
use budgeted_core::generate::{corpus_bi_spec, corpus_bm_spec, generate, GeneratorSpec, MatroidKind};
use budgeted_core::io::load_instance;
use budgeted_core::lagrangian::{non_profitable_solve, Strategy};
use budgeted_core::model::scheme_params;
use budgeted_core::oracles::{brute_force_opt, check_exchange_set, check_representative, DEFAULT_BOUND};
use budgeted_core::rational::{self, RatStr, Rational};
use budgeted_core::repset::{alpha_of, repset, AlphaMode, Options, RepSetResult};
use budgeted_core::{Constraint, Error, Instance, Result, SchemeParams, Solution};

mod bench;

#[derive(Parser)]
#[command(name = "budgeted", version, about = "Budgeted matching and matroid intersection solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Tuning {
    /// Residual solver: auto, exhaustive or lagrangian.
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Source of α: two-approx or exact.
    #[arg(long, default_value = "two-approx", value_parser = parse_alpha)]
    alpha: AlphaMode,
    /// Largest ground set searched exhaustively.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    max_exhaustive: usize,
}

impl Tuning {
    fn options(&self) -> Options {
        Options {
            strategy: self.strategy,
            alpha: self.alpha,
            max_exhaustive: self.max_exhaustive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Approximate the optimum within a factor 1 − ε.
    Solve {
        instance: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        epsilon: Rational,
        #[command(flatten)]
        tuning: Tuning,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exact optimum by exhaustive search.
    Exact {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        max_exhaustive: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Solver for instances without profitable elements.
    Nps {
        instance: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_strategy)]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        max_exhaustive: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Representative set summary.
    Repset {
        instance: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        epsilon: Rational,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Exchange set of every profit class.
    Exset {
        instance: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        epsilon: Rational,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check a candidate set against an instance.
    Verify {
        instance: PathBuf,
        /// JSON file holding an id array or an object with a `members` array.
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long, value_enum, default_value = "solution")]
        check: Check,
        #[arg(long, value_parser = parse_rational)]
        epsilon: Option<Rational>,
        /// Profit class index for the exchange check.
        #[arg(long)]
        class: Option<usize>,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long, value_enum, default_value = "bm")]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the standard corpus parameters for this seed; other shape flags are ignored.
        #[arg(long)]
        standard: bool,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value = "1/2", value_parser = parse_rational)]
        edge_prob: Rational,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Two comma-separated matroid kinds.
        #[arg(long, default_value = "partition,partition")]
        kinds: String,
        #[arg(long, default_value = "0:20", value_parser = parse_range)]
        profits: (u32, u32),
        #[arg(long, default_value = "0:20", value_parser = parse_range)]
        costs: (u32, u32),
        #[arg(long, default_value = "1/3", value_parser = parse_rational)]
        budget_fraction: Rational,
        /// Write the instance here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// CSV comparison over instance files or directories.
    Bench {
        corpus: Vec<PathBuf>,
        /// Comma-separated accuracies.
        #[arg(long, default_value = "1/2,1/3")]
        epsilon: String,
        #[command(flatten)]
        tuning: Tuning,
        /// Add a wall-time column, which makes the output nondeterministic.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Solution,
    Exchange,
    Representative,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Bm,
    Bi,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn parse_strategy(s: &str) -> std::result::Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_alpha(s: &str) -> std::result::Result<AlphaMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    Ok((
        lo.trim().parse().map_err(|_| format!("bad bound {lo:?}"))?,
        hi.trim().parse().map_err(|_| format!("bad bound {hi:?}"))?,
    ))
}

fn fmt(v: &Rational) -> String {
    rational::format(v)
}

fn params_json(p: &SchemeParams) -> Value {
    json!({
        "epsilon": fmt(&p.epsilon),
        "q_nominal": p.q_nominal.to_string(),
        "q_eff": p.q_eff,
        "k_eff": p.k_eff,
        "n_eff": p.n_eff,
        "class_count": p.class_count,
    })
}

fn constraint_name(inst: &Instance) -> &'static str {
    match inst.constraint() {
        Constraint::Matching(_) => "matching",
        Constraint::Intersection(..) => "matroid_intersection",
    }
}

fn repset_json(inst: &Instance, rep: &RepSetResult) -> Value {
    let sizes: serde_json::Map<String, Value> =
        rep.per_class.iter().map(|(r, x)| (r.to_string(), json!(x.len()))).collect();
    let bound = matches!(inst.constraint(), Constraint::Matching(_)).then(|| rep.matching_bound());
    json!({
        "alpha": fmt(&rep.alpha),
        "estimate": rep.estimate,
        "params": params_json(&rep.params),
        "class_sizes": sizes,
        "size": rep.union.len(),
        "members": rep.union,
        "bound": bound,
        "within_bound": bound.map(|b| rep.union.len() <= b),
    })
}

fn read_candidate(path: &Path) -> Result<Vec<usize>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::input(format!("invalid candidate JSON: {e}")))?;
    let list = match &value {
        Value::Object(map) => map.get("members").cloned().unwrap_or(Value::Null),
        other => other.clone(),
    };
    serde_json::from_value(list).map_err(|_| Error::input("candidate must be an id array or an object with \"members\""))
}

/// The exact optimum when the instance is small enough to search.
fn optimum_if_small(inst: &Instance, bound: usize) -> Result<Option<Solution>> {
    if inst.len() > bound {
        return Ok(None);
    }
    brute_force_opt(inst, bound).map(Some)
}

fn run(cmd: Command) -> Result<(Value, Option<PathBuf>)> {
    Ok(match cmd {
        Command::Solve {
            instance,
            epsilon,
            tuning,
            report,
        } => {
            let (_, inst) = load_instance(&instance)?;
            let run = approximate(&inst, &epsilon, &tuning.options())?;
            run.solution().verify(&inst)?;
            let value = json!({
                "command": "solve",
                "constraint": constraint_name(&inst),
                "epsilon": fmt(&epsilon),
                "internal_epsilon": fmt(&run.epsilon),
                "options": tuning.options(),
                "repset": repset_json(&inst, &run.repset),
                "max_guess": run.max_guess,
                "branches": run.branches,
                "fallbacks": run.fallbacks,
                "winning_guess": run.best.fixed,
                "solution": run.solution(),
            });
            (value, report)
        }
        Command::Exact {
            instance,
            max_exhaustive,
            report,
        } => {
            let (_, inst) = load_instance(&instance)?;
            let opt = brute_force_opt(&inst, max_exhaustive)?;
            (json!({"command": "exact", "constraint": constraint_name(&inst), "solution": opt}), report)
        }
        Command::Nps {
            instance,
            strategy,
            max_exhaustive,
            report,
        } => {
            let (_, inst) = load_instance(&instance)?;
            let out = non_profitable_solve(&inst, strategy, max_exhaustive)?;
            out.solution.verify(&inst)?;
            let opt = optimum_if_small(&inst, max_exhaustive)?;
            let two_max = inst.max_profit() * rational::int(2);
            // margin above the guarantee OPT − 2·max p(e)
            let slack = opt.as_ref().map(|o| fmt(&(&out.solution.profit - (&o.profit - &two_max))));
            let cert = out.certificate.as_ref().map(|c| {
                json!({
                    "lambda": fmt(&c.lambda),
                    "value": fmt(&c.value),
                    "s_minus": c.s_minus,
                    "s_plus": c.s_plus,
                    "exact": c.exact,
                    "probes": c.probes.len(),
                })
            });
            let value = json!({
                "command": "nps",
                "constraint": constraint_name(&inst),
                "strategy": out.strategy,
                "solution": out.solution,
                "certificate": cert,
                "optimum": opt.map(|o| fmt(&o.profit)),
                "slack": slack,
            });
            (value, report)
        }
        Command::Repset {
            instance,
            epsilon,
            tuning,
            report,
        } => {
            let (_, inst) = load_instance(&instance)?;
            let rep = repset(&inst, &epsilon, &tuning.options())?;
            (json!({"command": "repset", "constraint": constraint_name(&inst), "repset": repset_json(&inst, &rep)}), report)
        }
        Command::Exset {
            instance,
            epsilon,
            tuning,
            report,
        } => {
            let (_, inst) = load_instance(&instance)?;
            let rep = repset(&inst, &epsilon, &tuning.options())?;
            let classes: serde_json::Map<String, Value> = rep
                .per_class
                .iter()
                .map(|(r, x)| {
                    let class = rep.classing.as_ref().map(|c| c.class(*r).to_vec()).unwrap_or_default();
                    (r.to_string(), json!({"class": class, "exchange_set": x}))
                })
                .collect();
            let value = json!({
                "command": "exset",
                "constraint": constraint_name(&inst),
                "alpha": fmt(&rep.alpha),
                "params": params_json(&rep.params),
                "classes": classes,
            });
            (value, report)
        }
        Command::Verify {
            instance,
            candidate,
            check,
            epsilon,
            class,
            tuning,
            report,
        } => {
            let (_, inst) = load_instance(&instance)?;
            let members = read_candidate(&candidate)?;
            let need_eps = || epsilon.clone().ok_or_else(|| Error::input("this check needs --epsilon"));
            let body = match check {
                Check::Solution => {
                    let feasible = inst.feasible(&members)?;
                    let sol = Solution::of(&inst, members);
                    let opt = optimum_if_small(&inst, tuning.max_exhaustive)?;
                    let ratio = opt
                        .as_ref()
                        .filter(|o| o.profit > Rational::from_integer(0.into()))
                        .map(|o| fmt(&(&sol.profit / &o.profit)));
                    json!({
                        "check": "solution",
                        "verdict": feasible,
                        "candidate": sol,
                        "optimum": opt.map(|o| fmt(&o.profit)),
                        "ratio": ratio,
                    })
                }
                Check::Exchange => {
                    let eps = need_eps()?;
                    let r = class.ok_or_else(|| Error::input("the exchange check needs --class"))?;
                    let params = scheme_params(&inst, &eps)?;
                    let (alpha, _) = alpha_of(&inst, &tuning.options())?;
                    let classing = budgeted_core::model::profit_classes(&inst, &params, &alpha)?;
                    if r == 0 || r > params.class_count {
                        return Err(Error::input(format!("class must lie in 1..={}", params.class_count)));
                    }
                    let out = check_exchange_set(&inst, &params, classing.class(r), &members, tuning.max_exhaustive)?;
                    json!({"check": "exchange", "alpha": fmt(&alpha), "class": r, "report": out})
                }
                Check::Representative => {
                    let eps = need_eps()?;
                    let out = check_representative(&inst, &eps, &members, tuning.max_exhaustive)?;
                    json!({"check": "representative", "epsilon": fmt(&eps), "report": out})
                }
            };
            (json!({"command": "verify", "result": body}), report)
        }
        Command::Gen {
            family,
            seed,
            standard,
            vertices,
            edge_prob,
            max_edges,
            n,
            kinds,
            profits,
            costs,
            budget_fraction,
            report,
        } => {
            let spec = match (family, standard) {
                (Family::Bm, true) => corpus_bm_spec(seed),
                (Family::Bi, true) => corpus_bi_spec(seed),
                (Family::Bm, false) => GeneratorSpec::RandomBm {
                    vertices,
                    edge_prob: RatStr(edge_prob),
                    max_edges,
                    profit_range: profits,
                    cost_range: costs,
                    budget_fraction: RatStr(budget_fraction),
                },
                (Family::Bi, false) => {
                    let parsed: Vec<MatroidKind> = kinds.split(',').map(|k| k.trim().parse()).collect::<Result<_>>()?;
                    let [a, b] = parsed[..] else {
                        return Err(Error::input("--kinds needs exactly two matroid kinds"));
                    };
                    GeneratorSpec::RandomBi {
                        kinds: [a, b],
                        n,
                        profit_range: profits,
                        cost_range: costs,
                        budget_fraction: RatStr(budget_fraction),
                    }
                }
            };
            let doc = generate(&spec, seed)?;
            doc.build()?;
            return Ok((Value::String(doc.to_json()), report));
        }
        Command::Bench {
            corpus,
            epsilon,
            tuning,
            timing,
            report,
        } => {
            let eps: Vec<Rational> = epsilon
                .split(',')
                .map(|e| rational::parse(e.trim()))
                .collect::<Result<_>>()?;
            let csv = bench::run(&corpus, &eps, &tuning.options(), timing)?;
            return Ok((Value::String(csv), report));
        }
    })
}

fn emit(value: &Value, report: Option<&Path>) -> Result<()> {
    let text = match value {
        Value::String(s) => s.clone(),
        other => {
            let mut s = serde_json::to_string_pretty(other).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    match report {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
            if !matches!(value, Value::String(_)) {
                print!("{text}");
            }
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(value, report)| emit(&value, report.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("budgeted: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
