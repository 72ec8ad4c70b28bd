use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use matchshap::fpras::{self, EstimateMode};
use matchshap::number::{parse_rational, to_decimal_string};
use matchshap::reduction;
use matchshap::shapley::{shapley_with_method, Method};
use matchshap::{coalition_value, Coalition, Error, ExactConfig, Rational, WeightedGraph};

use crate::args::{ApproxArgs, BenchArgs, CountArgs, ExactArgs, InputArgs};
use crate::report::{
    BenchRow, ComponentReport, ReductionRow, RunReport, SamplingReport, VertexResult,
};

/// Significant digits of sampled estimates.
const DECIMAL_DIGITS: usize = 12;

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CAPABILITY: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. }
            | Error::VertexOutOfRange { .. }
            | Error::UniverseMismatch { .. }
            | Error::WeightedInput
            | Error::PlayerInCoalition(_)
            | Error::InvalidArgument(_) => EXIT_USAGE,
            Error::WeightRange
            | Error::TooLarge { .. }
            | Error::ExactIntractable { .. }
            | Error::NotApplicable { .. } => EXIT_CAPABILITY,
            Error::Inconsistent(_) | Error::Singular => EXIT_VERIFY,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Standard output text, the JSON report, and the exit status.
pub struct Outcome {
    pub text: String,
    pub report: RunReport,
    pub code: u8,
}

pub struct Loaded {
    pub bytes: Vec<u8>,
    pub graph: WeightedGraph,
}

pub fn load(input: &InputArgs) -> Result<Loaded, CliError> {
    let bytes = read_input(&input.input)
        .map_err(|e| CliError::usage(format!("{}: {e}", input.input.display())))?;
    let graph = WeightedGraph::parse(&bytes)
        .map_err(|e| CliError::usage(format!("{}: {e}", input.input.display())))?;
    Ok(Loaded { bytes, graph })
}

fn read_input(path: &Path) -> std::io::Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read(path)
    }
}

fn rational_flag(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text)
        .ok_or_else(|| CliError::usage(format!("--{name}: `{text}` is not a rational number")))
}

fn check_player(g: &WeightedGraph, player: Option<usize>) -> Result<(), CliError> {
    match player {
        Some(p) if p >= g.vertex_count() => Err(CliError::usage(format!(
            "--player {p}: graph has {} vertices",
            g.vertex_count()
        ))),
        _ => Ok(()),
    }
}

pub fn exact(args: &ExactArgs) -> Result<Outcome, CliError> {
    let method: Method = args.method.parse()?;
    let Loaded { bytes, graph } = load(&args.input)?;
    check_player(&graph, args.player)?;
    let result = shapley_with_method(&graph, method, &ExactConfig::from_env())?;

    let n = graph.vertex_count();
    let grand = coalition_value(&graph, &Coalition::full(n))?;
    if result.values.total() != grand {
        return Err(CliError {
            code: EXIT_VERIFY,
            message: format!(
                "efficiency check failed: values sum to {} but v(N) = {grand}",
                result.values.total()
            ),
        });
    }

    let mut report = RunReport::new("exact", &bytes, n);
    let mut text = String::new();
    for v in (0..n).filter(|&v| args.player.is_none_or(|p| p == v)) {
        let value = result.values[v].to_string();
        let method = result.methods[v].name();
        writeln!(text, "{v}\t{value}\t{method}").unwrap();
        report.results.push(VertexResult {
            vertex: v,
            value,
            method: Some(method),
            samples_used: None,
        });
    }
    report.components = result
        .components(&graph)
        .into_iter()
        .map(|(vertices, m)| ComponentReport {
            vertices,
            method: m.name(),
        })
        .collect();
    Ok(Outcome {
        text,
        report,
        code: 0,
    })
}

pub fn approx(args: &ApproxArgs) -> Result<Outcome, CliError> {
    let epsilon = rational_flag("eps", &args.eps)?;
    let delta = rational_flag("delta", &args.delta)?;
    let runs = fpras::amplification_runs(&delta)?;
    let Loaded { bytes, graph } = load(&args.input)?;
    check_player(&graph, args.player)?;
    let mode = if args.raw {
        EstimateMode::Raw
    } else {
        EstimateMode::Normalized
    };
    let estimates = match args.player {
        Some(p) => vec![fpras::estimate(&graph, p, &epsilon, &delta, args.seed, mode)?],
        None => fpras::estimate_all(&graph, &epsilon, &delta, args.seed, mode)?,
    };
    let samples_per_run = estimates.iter().map(|e| e.samples_used).max().unwrap_or(0);

    let mut report = RunReport::new("approx", &bytes, graph.vertex_count());
    let mut text = format!(
        "# epsilon={epsilon} delta={delta} seed={} runs={runs} mode={}\n",
        args.seed,
        mode.name()
    );
    for e in &estimates {
        let value = to_decimal_string(&e.estimate, DECIMAL_DIGITS);
        writeln!(text, "{}\t{value}\t{}\t{}", e.player, e.samples_used, e.seed).unwrap();
        report.results.push(VertexResult {
            vertex: e.player,
            value,
            method: None,
            samples_used: Some(e.samples_used),
        });
    }
    report.sampling = Some(SamplingReport {
        epsilon: epsilon.to_string(),
        delta: delta.to_string(),
        seed: args.seed,
        runs,
        samples_per_run,
        mode: mode.name(),
    });
    Ok(Outcome {
        text,
        report,
        code: 0,
    })
}

pub fn count_matchable(args: &CountArgs) -> Result<Outcome, CliError> {
    let Loaded { bytes, graph } = load(&args.input)?;
    let n = graph.vertex_count();
    let mut report = RunReport::new("count-matchable", &bytes, n);
    let text = if let Some(k) = args.selection.k {
        if k > n {
            return Err(CliError::usage(format!("-k {k}: graph has {n} vertices")));
        }
        if k % 2 == 1 {
            eprintln!("note: no set of odd size has a perfect matching");
        }
        let count = reduction::count_matchable_subsets(&graph, k)?;
        report.alpha = Some(vec![count.to_string()]);
        format!("{count}\n")
    } else {
        let alpha = reduction::count_matchable_all(&graph)?;
        report.alpha = Some(alpha.alpha.iter().map(ToString::to_string).collect());
        format!("{alpha}\n")
    };
    Ok(Outcome {
        text,
        report,
        code: 0,
    })
}

pub fn verify_reduction(args: &InputArgs) -> Result<Outcome, CliError> {
    let Loaded { bytes, graph } = load(args)?;
    let outcome = reduction::verify_reduction(&graph)?;
    let mut report = RunReport::new("verify-reduction", &bytes, graph.vertex_count());
    let mut text = String::from("k\tkappa_tail\trecovered\tcounted\tstatus\n");
    for k in 0..outcome.recovered.len() {
        let row = ReductionRow {
            k,
            raw_value: outcome.raw_values[k].to_string(),
            recovered: outcome.recovered[k].to_string(),
            counted: outcome.counted.alpha[k].to_string(),
            agrees: outcome.agrees(k),
        };
        writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}",
            row.k,
            row.raw_value,
            row.recovered,
            row.counted,
            if row.agrees { "ok" } else { "MISMATCH" }
        )
        .unwrap();
        report.reduction.push(row);
    }
    let passed = outcome.passed();
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    report.passed = Some(passed);
    report.alpha = Some(outcome.counted.alpha.iter().map(ToString::to_string).collect());
    Ok(Outcome {
        text,
        report,
        code: if passed { 0 } else { EXIT_VERIFY },
    })
}

/// Runs every exact method (and optionally the sampler) and checks that the
/// exact ones agree. Timings go to standard error, and into the report only
/// when `timing` is set, so standard output stays reproducible.
pub fn bench(args: &BenchArgs, timing: bool) -> Result<Outcome, CliError> {
    let epsilon = args
        .eps
        .as_deref()
        .map(|e| rational_flag("eps", e))
        .transpose()?;
    let Loaded { bytes, graph } = load(&args.input)?;
    let config = ExactConfig::from_env();
    let mut report = RunReport::new("bench", &bytes, graph.vertex_count());
    let mut reference = None;
    let push = |report: &mut RunReport, method: &'static str, status: String, start: Instant| {
        let millis = start.elapsed().as_millis() as u64;
        eprintln!("{method}\t{millis} ms");
        report.bench.push(BenchRow {
            method,
            status,
            millis: timing.then_some(millis),
        });
    };
    for method in Method::ALL {
        let start = Instant::now();
        let status = match shapley_with_method(&graph, method, &config) {
            Ok(r) => match &reference {
                None => {
                    reference = Some(r.values);
                    "ok".to_string()
                }
                Some(values) if *values == r.values => "ok".to_string(),
                Some(_) => "DISAGREES".to_string(),
            },
            Err(e) => format!("skipped: {e}"),
        };
        push(&mut report, method.name(), status, start);
    }
    if let Some(epsilon) = epsilon {
        let start = Instant::now();
        let delta = Rational::new(1.into(), 4.into());
        let status =
            match fpras::estimate_all(&graph, &epsilon, &delta, args.seed, EstimateMode::Normalized) {
                Ok(_) => "ok".to_string(),
                Err(e) => format!("skipped: {e}"),
            };
        push(&mut report, "approx", status, start);
    }
    let mut text = String::new();
    for row in &report.bench {
        writeln!(text, "{}\t{}", row.method, row.status).unwrap();
    }
    let disagree = report.bench.iter().any(|r| r.status == "DISAGREES");
    Ok(Outcome {
        text,
        report,
        code: if disagree { EXIT_VERIFY } else { 0 },
    })
}
