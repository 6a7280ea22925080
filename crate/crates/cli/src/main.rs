//! `tpa`: check, solve for, construct and search transposed Poisson type
//! structures stored as `tpa-algebra/1` JSON files.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the report on
//! stdout carries a witness), 2 for usage or input errors, 3 for a breached
//! internal invariant.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tpa_core::algebra::{AlgebraBundle, Element, Field};
use tpa_core::axioms::{self, Axiom, Binding, CheckReport, Profile};
use tpa_core::catalog;
use tpa_core::constructions::{self, ConstructionError, Kind, Params, TensorRoles};
use tpa_core::io::{self, ReportItem};
use tpa_core::linalg::{self, ProductRule};
use tpa_core::search::{self, AntimorphismSearch, Generator, LadderSetup, SearchError, SearchReport, Verdict};

#[derive(Parser)]
#[command(name = "tpa", version, about = "Exact checks and constructions for transposed Poisson algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a profile or a single identity.
    Check {
        file: PathBuf,
        #[arg(long, conflicts_with = "axiom", required_unless_present = "axiom")]
        profile: Option<String>,
        #[arg(long)]
        axiom: Option<String>,
        /// Bind a role to an op or map, e.g. `--bind bracket=lie`.
        #[arg(long = "bind", value_name = "ROLE=NAME")]
        bind: Vec<String>,
    },
    /// Compute the space of common derivations of some ops.
    Derivations {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "mul")]
        ops: Vec<String>,
        #[arg(long)]
        commuting_with: Option<String>,
    },
    /// Solve a linear problem on structure constants.
    Solve {
        #[command(subcommand)]
        problem: SolveProblem,
    },
    /// Build a derived structure.
    Construct {
        kind: String,
        file: PathBuf,
        #[command(flatten)]
        names: Names,
        #[arg(long, default_value = "D")]
        map: String,
        #[arg(long, default_value = "D2")]
        map2: String,
        /// Maps for `wedge`, `Id` meaning the identity.
        #[arg(long, value_delimiter = ',')]
        maps: Vec<String>,
        /// An element: a basis label or comma-separated coefficients.
        #[arg(long)]
        h: Option<String>,
        /// Second algebra for `tensor`.
        #[arg(long)]
        other: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tensor two algebras and check the result.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "mul")]
        mul: String,
        /// The second op paired with `mul`: an alternating bracket or a pre-Lie product.
        #[arg(long, default_value = "bracket")]
        paired: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Climb the n-Lie ladder and check each rung.
    Ladder {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        levels: usize,
        #[arg(long, default_value = "mul")]
        mul: String,
        #[arg(long, default_value = "nary")]
        nary: String,
        #[arg(long, default_value = "D")]
        map: String,
    },
    /// Seeded search over sampled or enumerated structures.
    Fuzz {
        #[arg(long, value_enum)]
        target: FuzzTarget,
        /// `Q` or `gf:p`.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Search this algebra instead of sampled ones.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Built-in example algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum SolveProblem {
    /// Symmetric products compatible with a fixed bracket.
    CompatibleProducts {
        file: PathBuf,
        #[arg(long, default_value = "bracket")]
        bracket: String,
        #[arg(long, default_value = "transposed")]
        rule: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entry ids with their claims and whether they verify.
    List,
    /// Print an entry as `tpa-algebra/1`.
    Emit { id: String },
}

#[derive(clap::Args)]
struct Names {
    #[arg(long, default_value = "mul")]
    mul: String,
    #[arg(long, default_value = "bracket")]
    bracket: String,
    #[arg(long, default_value = "circ")]
    circ: String,
    #[arg(long, default_value = "nary")]
    nary: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FuzzTarget {
    /// Sample truncated polynomial algebras with derivation brackets and
    /// check the identities every transposed Poisson algebra satisfies.
    Tpa,
    /// Enumerate involutive antimorphisms over GF(p).
    Antimorphisms,
    /// Run one ladder rung on sampled instances.
    Ladder,
}

/// Why a run stopped before producing a verdict.
enum Failure {
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// What a successful run prints and how it exits.
struct Outcome {
    passed: bool,
    stdout: Vec<u8>,
    summary: String,
}

type Run = Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(out) => {
            use std::io::Write;
            let _ = std::io::stdout().write_all(&out.stdout);
            if !out.summary.is_empty() {
                eprintln!("{}", out.summary);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Internal(m) => eprintln!("internal error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn dispatch(cmd: Command) -> Run {
    match cmd {
        Command::Check {
            file,
            profile,
            axiom,
            bind,
        } => check(&file, profile.as_deref(), axiom.as_deref(), &bind),
        Command::Derivations {
            file,
            ops,
            commuting_with,
        } => derivations(&file, &ops, commuting_with.as_deref()),
        Command::Solve {
            problem: SolveProblem::CompatibleProducts { file, bracket, rule },
        } => compatible_products(&file, &bracket, &rule),
        Command::Construct {
            kind,
            file,
            names,
            map,
            map2,
            maps,
            h,
            other,
            out,
        } => {
            let kind = Kind::parse(&kind).ok_or_else(|| {
                let all: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
                usage(format!("unknown construction {kind:?}; expected one of {}", all.join(", ")))
            })?;
            let bundle = load(&file)?;
            let h = h.map(|t| parse_element(&bundle, &t)).transpose()?;
            let other = other.map(|p| load(&p)).transpose()?;
            let params = Params {
                mul: names.mul,
                bracket: names.bracket,
                circ: names.circ,
                nary: names.nary,
                map,
                map2,
                maps,
                h,
                other,
                ..Params::default()
            };
            construct(kind, &file, &bundle, &params, out.as_deref())
        }
        Command::Tensor { a, b, mul, paired, out } => tensor(&a, &b, &mul, &paired, out.as_deref()),
        Command::Ladder {
            file,
            levels,
            mul,
            nary,
            map,
        } => {
            let bundle = load(&file)?;
            let setup = LadderSetup {
                mul,
                nary,
                map,
                ..LadderSetup::default()
            };
            ladder(&file.display().to_string(), &bundle, &setup, levels)
        }
        Command::Fuzz {
            target,
            field,
            dim,
            seed,
            count,
            file,
        } => fuzz(target, &field, dim, seed, count, file.as_deref()),
        Command::Catalog { action } => catalog_cmd(action),
    }
}

fn load(path: &Path) -> Result<AlgebraBundle, Failure> {
    let bytes = fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    io::parse_algebra(&bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_field(text: &str) -> Result<Field, Failure> {
    if text == "Q" {
        return Ok(Field::Rational);
    }
    let p = text
        .strip_prefix("gf:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| usage(format!("field must be Q or gf:p, got {text:?}")))?;
    Field::prime(p).map_err(usage)
}

/// A basis label, or comma-separated coefficients.
fn parse_element(bundle: &AlgebraBundle, text: &str) -> Result<Element, Failure> {
    let dim = bundle.dim();
    if let Some(i) = bundle.space().index_of(text.trim()) {
        return Ok(Element::basis(bundle.field(), dim, i));
    }
    let parts: Vec<&str> = text.trim().trim_matches(|c| c == '[' || c == ']').split(',').collect();
    if parts.len() != dim {
        return Err(usage(format!("{text:?} is neither a basis label nor {dim} coefficients")));
    }
    let coeffs = parts
        .iter()
        .map(|p| bundle.field().parse(p.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    Ok(Element::from_coeffs(coeffs))
}

fn summarize(reports: &[CheckReport]) -> String {
    reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
}

fn check(file: &Path, profile: Option<&str>, axiom: Option<&str>, bind: &[String]) -> Run {
    let bundle = load(file)?;
    let binding = Binding::parse(bind.iter().map(String::as_str)).map_err(usage)?;
    let reports = match (profile, axiom) {
        (Some(p), None) => {
            let p = Profile::parse(p).map_err(usage)?;
            axioms::check_profile(&bundle, p, &binding).map_err(usage)?
        }
        (None, Some(a)) => {
            let a = Axiom::parse(a).map_err(usage)?;
            vec![axioms::check_identity(&bundle, a, &binding).map_err(usage)?]
        }
        _ => return Err(usage("give exactly one of --profile and --axiom")),
    };
    let items: Vec<ReportItem> = reports.iter().cloned().map(ReportItem::Check).collect();
    Ok(Outcome {
        passed: axioms::all_hold(&reports),
        stdout: io::emit_report(&file.display().to_string(), &items),
        summary: summarize(&reports),
    })
}

fn derivations(file: &Path, ops: &[String], commuting_with: Option<&str>) -> Run {
    let bundle = load(file)?;
    let names: Vec<&str> = ops.iter().map(String::as_str).collect();
    let m = commuting_with
        .map(|n| bundle.map(n).ok_or_else(|| usage(format!("no map named {n:?}"))))
        .transpose()?;
    let space = linalg::joint_derivation_space(&bundle, &names, m).map_err(usage)?;
    if !linalg::verify_derivations(&bundle, &names, &space).map_err(usage)? {
        return Err(Failure::Internal("a computed derivation fails the Leibniz rule".into()));
    }
    let label = format!("derivations of {}", names.join(", "));
    let summary = format!("{label}: dimension {}", space.dimension());
    Ok(Outcome {
        passed: true,
        stdout: io::emit_report(&file.display().to_string(), &[ReportItem::Solution { label, space }]),
        summary,
    })
}

fn compatible_products(file: &Path, bracket: &str, rule: &str) -> Run {
    let bundle = load(file)?;
    let rule = ProductRule::parse(rule).ok_or_else(|| usage(format!("unknown rule {rule:?}; use transposed or leibniz")))?;
    let op = bundle.op(bracket).ok_or_else(|| usage(format!("no op named {bracket:?}")))?;
    let space = linalg::compatible_symmetric_products(op, rule).map_err(usage)?;
    let label = format!("symmetric products satisfying {} with {bracket}", rule.axiom());
    let summary = format!("{label}: dimension {}", space.dimension());
    Ok(Outcome {
        passed: true,
        stdout: io::emit_report(&file.display().to_string(), &[ReportItem::Solution { label, space }]),
        summary,
    })
}

fn construction_failure(subject: &str, e: ConstructionError) -> Run {
    match e {
        ConstructionError::Precondition { condition, report } => Ok(Outcome {
            passed: false,
            stdout: io::emit_report(subject, &[ReportItem::Check(*report.clone())]),
            summary: format!("precondition failed: {condition}\n{report}"),
        }),
        ConstructionError::Internal(m) => Err(Failure::Internal(m)),
        other => Err(usage(other)),
    }
}

fn construct(kind: Kind, file: &Path, bundle: &AlgebraBundle, params: &Params, out: Option<&Path>) -> Run {
    let subject = format!("{} of {}", kind.name(), file.display());
    let built = match constructions::construct(kind, bundle, params) {
        Ok(b) => b,
        Err(e) => return construction_failure(&subject, e),
    };
    let passed = axioms::all_hold(&built.reports);
    let summary = if built.reports.is_empty() {
        format!("{subject}: done")
    } else {
        summarize(&built.reports)
    };
    match out {
        Some(path) => {
            write_out(path, &io::emit_algebra(&built.bundle))?;
            let mut items: Vec<ReportItem> = built.reports.iter().cloned().map(ReportItem::Check).collect();
            items.push(ReportItem::Construction {
                kind: kind.name().into(),
                output: Some(path.display().to_string()),
                bundle: built.bundle,
            });
            Ok(Outcome {
                passed,
                stdout: io::emit_report(&subject, &items),
                summary,
            })
        }
        None => Ok(Outcome {
            passed,
            stdout: io::emit_algebra(&built.bundle),
            summary,
        }),
    }
}

fn tensor(a: &Path, b: &Path, mul: &str, paired: &str, out: Option<&Path>) -> Run {
    let (ba, bb) = (load(a)?, load(b)?);
    let subject = format!("{} ⊗ {}", a.display(), b.display());
    let roles = TensorRoles {
        mul: mul.into(),
        paired: paired.into(),
    };
    let t = match constructions::tensor_mixed(&ba, &bb, &roles) {
        Ok(t) => t,
        Err(e) => return construction_failure(&subject, e),
    };
    let op = t.op(paired).ok_or_else(|| Failure::Internal("tensor lost the paired op".into()))?;
    let (profile, binding) = if op.symmetry() == tpa_core::algebra::Symmetry::Alternating {
        (Profile::TransposedPoisson, Binding::new().bind(axioms::Role::Mul, mul).bind(axioms::Role::Bracket, paired))
    } else {
        (Profile::PreLiePoisson, Binding::new().bind(axioms::Role::Mul, mul).bind(axioms::Role::Circ, paired))
    };
    let reports = axioms::check_profile(&t, profile, &binding).map_err(usage)?;
    if let Some(path) = out {
        write_out(path, &io::emit_algebra(&t))?;
    }
    let items: Vec<ReportItem> = reports.iter().cloned().map(ReportItem::Check).collect();
    Ok(Outcome {
        passed: axioms::all_hold(&reports),
        stdout: io::emit_report(&subject, &items),
        summary: summarize(&reports),
    })
}

fn search_outcome(subject: &str, reports: Vec<SearchReport>) -> Run {
    for r in &reports {
        for c in &r.counterexamples {
            if !c.replays().map_err(|e| Failure::Internal(e.to_string()))? {
                return Err(Failure::Internal("a recorded counterexample does not replay".into()));
            }
        }
    }
    let passed = reports.iter().all(|r| r.verdict != Verdict::CounterexampleFound);
    let summary = reports
        .iter()
        .map(|r| format!("{}: {} ({} candidates, {} hits)", r.target, r.verdict, r.candidates, r.hits.len()))
        .collect::<Vec<_>>()
        .join("\n");
    let items: Vec<ReportItem> = reports.into_iter().map(ReportItem::Search).collect();
    Ok(Outcome {
        passed,
        stdout: io::emit_report(subject, &items),
        summary,
    })
}

fn ladder(subject: &str, bundle: &AlgebraBundle, setup: &LadderSetup, levels: usize) -> Run {
    match search::test_conjecture_ladder(bundle, setup, levels) {
        Ok(r) => search_outcome(subject, vec![r]),
        Err(SearchError::Precondition { what, report }) => Ok(Outcome {
            passed: false,
            stdout: io::emit_report(subject, &[ReportItem::Check(*report.clone())]),
            summary: format!("precondition failed: {what}\n{report}"),
        }),
        Err(SearchError::Construction(e)) => construction_failure(subject, e),
        Err(e) => Err(usage(e)),
    }
}

fn sampled(field: Field, dim: usize, seed: u64, count: usize) -> Result<Vec<AlgebraBundle>, Failure> {
    // dimension d: k[x]/(x^d), or k[x,y]/(x^2,y^2) as well when d = 4
    let mut shapes = vec![vec![dim]];
    if dim == 4 {
        shapes.push(vec![2, 2]);
    }
    let gen = Generator::TruncatedPoly { field, shapes, count };
    let s = search::sample_tpa_instances(&gen, seed).map_err(usage)?;
    if let Some(r) = s.rejected.first() {
        return Err(Failure::Internal(format!("sampled instance is not transposed Poisson: {r}")));
    }
    Ok(s.instances)
}

fn fuzz(target: FuzzTarget, field: &str, dim: usize, seed: u64, count: usize, file: Option<&Path>) -> Run {
    let field = parse_field(field)?;
    if dim < 2 {
        return Err(usage("--dim must be at least 2"));
    }
    let instances = match file {
        Some(p) => vec![load(p)?],
        None => sampled(field, dim, seed, count)?,
    };
    let subject = match file {
        Some(p) => p.display().to_string(),
        None => format!("fuzz seed={seed} field={field} dim={dim} count={count}"),
    };
    let mut reports = Vec::new();
    for (n, b) in instances.iter().enumerate() {
        let name = b.metadata.get("sample").cloned().unwrap_or_else(|| format!("instance {n}"));
        let mut r = match target {
            FuzzTarget::Tpa => implied_identities(b)?,
            FuzzTarget::Antimorphisms => {
                search::find_involutive_antimorphisms(b, &AntimorphismSearch::default()).map_err(usage)?
            }
            FuzzTarget::Ladder => {
                let mut inst = b.clone();
                if inst.op("nary").is_none() {
                    let br = inst.op("bracket").ok_or_else(|| usage("instance has no bracket"))?.clone();
                    inst.add_op(br.with_name("nary")).map_err(usage)?;
                }
                match search::test_conjecture_ladder(&inst, &LadderSetup::default(), 1) {
                    Ok(r) => r,
                    Err(SearchError::Precondition { what, report }) => {
                        return Ok(Outcome {
                            passed: false,
                            stdout: io::emit_report(&subject, &[ReportItem::Check(*report.clone())]),
                            summary: format!("{name}: precondition failed: {what}\n{report}"),
                        })
                    }
                    Err(e) => return Err(usage(e)),
                }
            }
        };
        r.seed = seed;
        r.target = format!("{} on {name}", r.target);
        reports.push(r);
    }
    search_outcome(&subject, reports)
}

/// gi1..gi6 on one instance, reported as a search over those identities.
fn implied_identities(b: &AlgebraBundle) -> Result<SearchReport, Failure> {
    let mut report = SearchReport {
        target: "tpa-identities".into(),
        candidates: 0,
        hits: Vec::new(),
        counterexamples: Vec::new(),
        seed: 0,
        verdict: Verdict::AllPass,
        partial: false,
        notes: Vec::new(),
    };
    for a in [Axiom::Gi1, Axiom::Gi2, Axiom::Gi3, Axiom::Gi4, Axiom::Gi5, Axiom::Gi6] {
        report.candidates += 1;
        let r = axioms::check_identity(b, a, &Binding::default()).map_err(usage)?;
        report.notes.push(r.to_string());
        if let Some(w) = r.witness {
            report.counterexamples.push(search::Counterexample {
                instance: b.clone(),
                axiom: a,
                binding: Binding::default(),
                witness: w,
            });
            report.verdict = Verdict::CounterexampleFound;
        }
    }
    Ok(report)
}

fn catalog_cmd(action: CatalogAction) -> Run {
    match action {
        CatalogAction::List => {
            let mut text = String::new();
            for e in catalog::all_entries() {
                let claims: Vec<&str> = e.claimed_profiles.iter().map(|p| p.name()).collect();
                let status = match e.verify() {
                    Ok(()) => "verified".to_string(),
                    Err(r) => format!("FAILS {r}"),
                };
                text.push_str(&format!("{}\tdim {}\t{}\t{status}\n", e.id, e.bundle.dim(), claims.join(",")));
            }
            Ok(Outcome {
                passed: true,
                stdout: text.into_bytes(),
                summary: String::new(),
            })
        }
        CatalogAction::Emit { id } => {
            let e = catalog::entry(&id).ok_or_else(|| usage(format!("no catalog entry {id:?}")))?;
            Ok(Outcome {
                passed: true,
                stdout: io::emit_algebra(&e.bundle),
                summary: String::new(),
            })
        }
    }
}
