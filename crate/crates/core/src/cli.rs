//! Command-line front end. Exit codes: 0 success, 1 a check failed, 2 bad usage or input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify;
use crate::corpus;
use crate::families::{self, FamilySpec};
use crate::ring::{validate, FusionRing, ObjectVec};
use crate::structure;
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "fuskit", version, about = "Fusion ring toolkit: validation, invariants and classification checks")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fusion ring axioms; exits 1 on a violation.
    Validate {
        #[arg(default_value = "-")]
        ring: String,
    },
    /// Rank, duals, dimensions and subrings.
    Info {
        #[arg(default_value = "-")]
        ring: String,
    },
    /// Generalized near-group type, GTY and near-group detection.
    Classify {
        #[arg(default_value = "-")]
        ring: String,
    },
    /// Universal grading and component dimensions.
    Grading {
        #[arg(default_value = "-")]
        ring: String,
    },
    /// Build a family member, e.g. `psu2_6` or `fib_extension(Z3)` or a JSON spec.
    Construct {
        #[arg(long)]
        family: String,
    },
    /// Tensor two objects (`"X + 2*Y"`) of a ring, or with `--with` form the Deligne product of two rings.
    Product {
        /// Ring file, or `-` for standard input.
        ring: String,
        /// Left factor as a sum of simples.
        left: Option<String>,
        /// Right factor as a sum of simples.
        right: Option<String>,
        /// Second ring file for the Deligne product.
        #[arg(long = "with", conflicts_with_all = ["left", "right"])]
        with: Option<String>,
    },
    /// Test whether two subrings form an exact factorization. Defaults: the
    /// adjoint subring and the pointed subring.
    Factorize {
        #[arg(default_value = "-")]
        ring: String,
        /// Comma-separated generators of the first subring.
        #[arg(long)]
        left: Option<String>,
        /// Comma-separated generators of the second subring.
        #[arg(long)]
        right: Option<String>,
    },
    /// Integer solutions of the cosine-square equations with target (5+√5)/8.
    #[command(name = "solve-lemma41")]
    CosineSearch {
        #[arg(long, default_value_t = 10)]
        bound: u32,
    },
    /// Run every check over the corpus (FUSKIT_CORPUS overrides the built-in one).
    Verify {
        /// Restrict to one or more check ids.
        #[arg(long)]
        only: Vec<String>,
        /// Worker threads for the per-ring checks.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the built-in corpus to this directory and exit.
        #[arg(long)]
        dump_corpus: Option<PathBuf>,
    },
}

/// Failure classes mapped onto exit codes.
enum Outcome {
    Done(String),
    Failed(String),
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_ring(source: &str, stdin: &mut dyn Read) -> Result<FusionRing, UsageError> {
    let text = if source == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| UsageError(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(source).map_err(|e| UsageError(format!("{source}: {e}")))?
    };
    FusionRing::from_json(&text).map_err(|e| UsageError(format!("{source}: {e}")))
}

/// Parses `"X + 2*Y"`. A term that is itself a label is taken whole, so
/// numeric labels such as `"2"` need no multiplicity prefix.
fn parse_object(ring: &FusionRing, text: &str) -> Result<ObjectVec, UsageError> {
    let mut v = ObjectVec::zero();
    for term in text.split('+').map(str::trim) {
        let (count, label) = match (ring.index_of(term), term.split_once('*')) {
            (Some(_), _) | (None, None) => (1, term),
            (None, Some((count, label))) => (count.trim().parse()?, label.trim()),
        };
        let i = ring.index_of(label).ok_or_else(|| UsageError(format!("unknown simple {label:?}")))?;
        v.add_simple(i, count);
    }
    Ok(v)
}

fn parse_seed(ring: &FusionRing, text: &str) -> Result<Vec<usize>, UsageError> {
    text.split(',')
        .map(|l| ring.index_of(l.trim()).ok_or_else(|| UsageError(format!("unknown simple {:?}", l.trim()))))
        .collect()
}

fn render(format: Format, value: &Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json value");
            s.push('\n');
            s
        }
        Format::Text => text(),
    }
}

fn info_value(ring: &FusionRing) -> Result<Value, UsageError> {
    let dims = ring.fpdims()?;
    let inv = structure::invertibles(ring)?;
    Ok(json!({
        "name": ring.name(),
        "rank": ring.rank(),
        "basis": ring.labels(),
        "unit": ring.label(ring.unit()),
        "dual": ring.basis().map(|i| ring.label(ring.dual(i))).collect::<Vec<_>>(),
        "fpdims": dims,
        "fpdim": ring.fpdim_ring()?,
        "commutative": ring.is_commutative(),
        "invertibles": inv.group.labels(),
        "pointed_subring": structure::pointed_subring(ring).labels(ring),
        "adjoint_subring": structure::adjoint_subring(ring).labels(ring),
        "nonzero_constants": ring.nonzero_count(),
    }))
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn text_of(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flat_table(value: &Value) -> String {
    let rows: Vec<(String, String)> =
        value.as_object().map(|m| m.iter().map(|(k, v)| (k.clone(), text_of(v))).collect()).unwrap_or_default();
    table(&rows)
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, UsageError> {
    let fmt = cli.format;
    Ok(match &cli.command {
        Command::Validate { ring } => {
            let r = read_ring(ring, stdin)?;
            let report = validate(&r);
            let value = serde_json::to_value(&report)?;
            let out = render(fmt, &value, || {
                let mut rows = vec![("ring".to_string(), report.ring.clone())];
                for a in &report.axioms {
                    let mut v = if a.pass { "pass".to_string() } else { "FAIL".to_string() };
                    if let Some(w) = &a.witness {
                        let _ = write!(v, " at ({})", w.join(", "));
                    }
                    if let Some(d) = &a.detail {
                        let _ = write!(v, ": {d}");
                    }
                    rows.push((a.axiom.name().to_string(), v));
                }
                table(&rows)
            });
            if report.pass {
                Outcome::Done(out)
            } else {
                Outcome::Failed(out)
            }
        }
        Command::Info { ring } => {
            let r = read_ring(ring, stdin)?;
            let value = info_value(&r)?;
            Outcome::Done(render(fmt, &value, || flat_table(&value)))
        }
        Command::Classify { ring } => {
            let r = read_ring(ring, stdin)?;
            let value = classify::classify(&r)?;
            Outcome::Done(render(fmt, &value, || flat_table(&value)))
        }
        Command::Grading { ring } => {
            let r = read_ring(ring, stdin)?;
            let g = structure::universal_grading(&r)?;
            let dims = structure::graded_component_dims(&g, &r)?;
            let mut value = serde_json::to_value(&g)?;
            value["component_dims"] = json!(dims);
            Outcome::Done(render(fmt, &value, || {
                let mut rows = vec![("order".to_string(), g.group.order().to_string())];
                for (c, members) in g.components.iter().enumerate() {
                    let labels: Vec<&str> = members.iter().map(|&i| r.label(i)).collect();
                    rows.push((g.component_label(c).to_string(), format!("{} (dim {})", labels.join(", "), dims[c])));
                }
                table(&rows)
            }))
        }
        Command::Construct { family } => {
            let ring = FamilySpec::parse(family)?.build()?;
            Outcome::Done(match fmt {
                Format::Json => ring.to_json(),
                Format::Text => flat_table(&info_value(&ring)?),
            })
        }
        Command::Product { ring, left, right, with } => {
            let r = read_ring(ring, stdin)?;
            if let Some(other) = with {
                let o = read_ring(other, stdin)?;
                let p = families::deligne_product(&r, &o)?;
                return Ok(Outcome::Done(p.to_json()));
            }
            let (Some(left), Some(right)) = (left, right) else {
                return Err(UsageError("product needs two objects or --with".into()));
            };
            let (x, y) = (parse_object(&r, left)?, parse_object(&r, right)?);
            let p = r.tensor(&x, &y)?;
            let value = json!({
                "left": r.format_object(&x),
                "right": r.format_object(&y),
                "product": r.format_object(&p),
                "fpdim": r.fpdim_object(&p)?,
            });
            Outcome::Done(render(fmt, &value, || format!("{}\n", r.format_object(&p))))
        }
        Command::Factorize { ring, left, right } => {
            let r = read_ring(ring, stdin)?;
            let a = match left {
                Some(s) => structure::subring_closure(&r, &parse_seed(&r, s)?),
                None => structure::adjoint_subring(&r),
            };
            let b = match right {
                Some(s) => structure::subring_closure(&r, &parse_seed(&r, s)?),
                None => structure::pointed_subring(&r),
            };
            let exact = classify::exact_factorization(&r, &a, &b);
            let value = json!({"left": a.labels(&r), "right": b.labels(&r), "exact": exact});
            let out = render(fmt, &value, || flat_table(&value));
            if exact {
                Outcome::Done(out)
            } else {
                Outcome::Failed(out)
            }
        }
        Command::CosineSearch { bound } => {
            let res = classify::lemma41_search(*bound)?;
            let value = serde_json::to_value(&res)?;
            Outcome::Done(match fmt {
                Format::Json => format!("{}\n", serde_json::to_string(&value)?),
                Format::Text => flat_table(&value),
            })
        }
        Command::Verify { only, jobs, dump_corpus } => {
            if let Some(dir) = dump_corpus {
                let written = corpus::write_dir(dir).map_err(|e| UsageError(e.to_string()))?;
                return Ok(Outcome::Done(format!("wrote {} rings to {}\n", written.len(), dir.display())));
            }
            let (source, entries) = corpus::active().map_err(|e| UsageError(e.to_string()))?;
            let report = verify::run(&source, &entries, &verify::Options { only: only.clone(), jobs: *jobs })?;
            let out = match fmt {
                Format::Json => report.to_json(),
                Format::Text => {
                    let rows: Vec<(String, String)> = report
                        .results
                        .iter()
                        .map(|e| (format!("{} {}", e.check, e.subject), format!("{:?}", e.status).to_lowercase()))
                        .collect();
                    let mut t = table(&rows);
                    let s = &report.summary;
                    let _ = writeln!(
                        t,
                        "{} checks: {} passed, {} failed, {} skipped",
                        s.total, s.passed, s.failed, s.skipped
                    );
                    t
                }
            };
            if report.pass() {
                Outcome::Done(out)
            } else {
                Outcome::Failed(out)
            }
        }
    })
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (code, body) = match execute(&cli, stdin) {
        Ok(Outcome::Done(s)) => (EXIT_OK, s),
        Ok(Outcome::Failed(s)) => (EXIT_CHECK_FAILED, s),
        Err(UsageError(msg)) => {
            let line = msg.lines().next().unwrap_or("error");
            let _ = writeln!(stderr, "fuskit: {line}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &body),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "fuskit: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}
