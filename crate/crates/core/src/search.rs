//! Finite-field enumeration and seeded sampling of structures.
//!
//! Every hit and every counterexample in a [`SearchReport`] is re-checked
//! through the axiom engine before it is recorded.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::algebra::{AlgebraBundle, Field, LinearMap, MultiLinearOp, Scalar};
use crate::axioms::{check_identity, check_profile, check_roles, Axiom, AxiomError, Binding, CheckOptions, CheckReport, Profile, Role, Roles, ViolationWitness};
use crate::catalog::{self, truncated_polynomial_algebra};
use crate::constructions::{self, ConstructionError, LadderLimits};
use crate::linalg::{self, LinalgError, ProductRule};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("enumeration needs a prime field, got {0}")]
    NotPrimeField(Field),
    #[error("no op named {0:?}")]
    MissingOp(String),
    #[error("no map named {0:?}")]
    MissingMap(String),
    #[error("instance does not satisfy {what}: {report}")]
    Precondition { what: String, report: Box<CheckReport> },
    #[error("{0}")]
    Generator(String),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AllPass,
    CounterexampleFound,
    NoCandidates,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::AllPass => "all-pass",
            Verdict::CounterexampleFound => "counterexample-found",
            Verdict::NoCandidates => "no-candidates",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A linear map found by enumeration, with its position in the enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hit {
    pub index: u64,
    pub map: LinearMap,
}

/// An instance together with the identity it violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub instance: AlgebraBundle,
    pub axiom: Axiom,
    pub binding: Binding,
    pub witness: ViolationWitness,
}

impl Counterexample {
    /// Re-run the recorded failure through the axiom engine.
    pub fn replays(&self) -> Result<bool, AxiomError> {
        let roles = Roles::resolve(&self.instance, &self.binding, self.axiom.roles())?;
        crate::axioms::replay_witness(self.axiom, &roles, &self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub target: String,
    pub candidates: u64,
    pub hits: Vec<Hit>,
    pub counterexamples: Vec<Counterexample>,
    pub seed: u64,
    pub verdict: Verdict,
    /// The budget stopped enumeration before the whole space was covered.
    pub partial: bool,
    pub notes: Vec<String>,
}

impl SearchReport {
    fn new(target: impl Into<String>, seed: u64) -> Self {
        SearchReport {
            target: target.into(),
            candidates: 0,
            hits: Vec::new(),
            counterexamples: Vec::new(),
            seed,
            verdict: Verdict::NoCandidates,
            partial: false,
            notes: Vec::new(),
        }
    }
}

/// Names and budget for [`find_involutive_antimorphisms`].
#[derive(Debug, Clone)]
pub struct AntimorphismSearch {
    pub mul: String,
    pub bracket: String,
    /// Largest number of matrices examined.
    pub budget: u64,
    /// Largest dimension enumerated.
    pub max_dim: usize,
}

impl Default for AntimorphismSearch {
    fn default() -> Self {
        AntimorphismSearch {
            mul: "mul".into(),
            bracket: "bracket".into(),
            budget: 1 << 22,
            max_dim: 3,
        }
    }
}

/// All `f` over GF(p) with `f² = Id`, `f(x·y) = f(x)·f(y)` and
/// `f[x,y] = −[f(x),f(y)]`.
///
/// Matrices are enumerated row-major: candidate `k` has entry `(i,j)` equal to
/// base-p digit `i·d + j` of `k`, most significant digit first.
pub fn find_involutive_antimorphisms(bundle: &AlgebraBundle, opts: &AntimorphismSearch) -> Result<SearchReport, SearchError> {
    let Field::Prime(p) = bundle.field() else {
        return Err(SearchError::NotPrimeField(bundle.field()));
    };
    let mul = bundle.op(&opts.mul).ok_or_else(|| SearchError::MissingOp(opts.mul.clone()))?;
    let bracket = bundle
        .op(&opts.bracket)
        .ok_or_else(|| SearchError::MissingOp(opts.bracket.clone()))?;
    let d = bundle.dim();
    let cells = (d * d) as u32;
    let mut report = SearchReport::new("involutive-antimorphisms", 0);
    if d > opts.max_dim {
        report.partial = true;
        report.notes.push(format!("dimension {d} exceeds the limit {}", opts.max_dim));
        return Ok(report);
    }
    let total = p.checked_pow(cells);
    let limit = match total {
        Some(t) if t <= opts.budget => t,
        _ => {
            report.partial = true;
            opts.budget
        }
    };

    let field = bundle.field();
    let mut digits = vec![0u64; d * d];
    for index in 0..limit {
        report.candidates += 1;
        let mut k = index;
        for c in (0..d * d).rev() {
            digits[c] = k % p;
            k /= p;
        }
        if !squares_to_identity(&digits, d, p) {
            continue;
        }
        let rows = (0..d)
            .map(|i| (0..d).map(|j| field.from_i64(digits[i * d + j] as i64)).collect())
            .collect();
        let f = LinearMap::from_rows(rows).expect("square by construction");
        let roles = Roles::new(field, d)
            .with_op(Role::Mul, mul)?
            .with_op(Role::Bracket, bracket)?
            .with_map(Role::Map, &f)?;
        let ok = [Axiom::Endomorphism, Axiom::Anti]
            .iter()
            .map(|&a| check_roles(a, &roles, CheckOptions::default()).map(|r| r.holds))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|b| b);
        if ok {
            report.hits.push(Hit { index, map: f });
        }
    }
    report.verdict = if report.hits.is_empty() {
        Verdict::NoCandidates
    } else {
        Verdict::AllPass
    };
    if report.partial {
        report.notes.push(format!(
            "examined {} of {} matrices",
            report.candidates,
            total.map_or("more than 2^64".to_string(), |t| t.to_string())
        ));
    }
    Ok(report)
}

fn squares_to_identity(m: &[u64], d: usize, p: u64) -> bool {
    for i in 0..d {
        for j in 0..d {
            let s = (0..d).fold(0u64, |acc, k| (acc + m[i * d + k] * m[k * d + j]) % p);
            if s != u64::from(i == j) {
                return false;
            }
        }
    }
    true
}

/// Source of sampled instances.
#[derive(Debug, Clone)]
pub enum Generator {
    /// The two-dimensional transposed Poisson lists.
    Catalog { field: Field },
    /// `k[x..]/(x^c..)` with bracket `x·D(y) − D(x)·y` for a random integer
    /// combination `D` of the Euler derivations. Each instance picks one of
    /// `shapes` (a list of caps).
    TruncatedPoly { field: Field, shapes: Vec<Vec<usize>>, count: usize },
    /// Random points of the space of symmetric products compatible with a
    /// fixed bracket, coordinates drawn from `-range..=range`.
    SolverFamily {
        bracket: MultiLinearOp,
        rule: ProductRule,
        range: i64,
        associative: bool,
        count: usize,
    },
}

/// Instances that passed verification, and how many draws were discarded.
#[derive(Debug, Clone)]
pub struct Sample {
    pub instances: Vec<AlgebraBundle>,
    pub rejected: Vec<String>,
}

impl Sample {
    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }
}

/// Draw instances from a generator; each one is checked against
/// TransposedPoisson before it is returned.
pub fn sample_tpa_instances(generator: &Generator, seed: u64) -> Result<Sample, SearchError> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut sample = Sample {
        instances: Vec::new(),
        rejected: Vec::new(),
    };
    let emit = |sample: &mut Sample, label: String, b: AlgebraBundle| -> Result<(), SearchError> {
        let reports = check_profile(&b, Profile::TransposedPoisson, &Binding::default())?;
        match reports.iter().find(|r| !r.holds) {
            None => sample.instances.push(b.with_meta("sample", &label)),
            Some(r) => sample.rejected.push(format!("{label}: {r}")),
        }
        Ok(())
    };
    match generator {
        Generator::Catalog { field } => {
            for e in catalog::catalog_2d_transposed(*field) {
                emit(&mut sample, e.id.clone(), e.bundle)?;
            }
        }
        Generator::TruncatedPoly { field, shapes, count } => {
            if shapes.is_empty() {
                return Err(SearchError::Generator("no shapes given".into()));
            }
            let names = ["x", "y", "z", "w", "v", "u"];
            for n in 0..*count {
                let caps = &shapes[rng.gen_range(0..shapes.len())];
                if caps.len() > names.len() {
                    return Err(SearchError::Generator(format!("at most {} variables", names.len())));
                }
                let vars = &names[..caps.len()];
                let base = truncated_polynomial_algebra(*field, vars, caps).map_err(SearchError::Generator)?;
                let coeffs: Vec<i64> = loop {
                    let c: Vec<i64> = vars.iter().map(|_| rng.gen_range(-2..=2)).collect();
                    if c.iter().any(|&x| x != 0) {
                        break c;
                    }
                };
                let mut d = LinearMap::zero(*field, base.dim());
                for (v, &c) in vars.iter().zip(&coeffs) {
                    let e = base.map(&format!("E_{v}")).expect("Euler maps are present");
                    d = d.add(&e.scale(&field.from_i64(c)));
                }
                let mul = base.op("mul").expect("truncated algebra has mul");
                let br = constructions::derivation_bracket(mul, &d)?;
                let label = format!("poly#{n} caps={caps:?} D={coeffs:?}");
                let b = base.with_op(br).with_map("D", d);
                emit(&mut sample, label, b)?;
            }
        }
        Generator::SolverFamily {
            bracket,
            rule,
            range,
            associative,
            count,
        } => {
            let space = linalg::compatible_symmetric_products(bracket, *rule)?;
            if space.dimension() == 0 {
                sample.rejected.push("the solution space is zero".into());
                return Ok(sample);
            }
            let field = bracket.field();
            for n in 0..*count {
                let coords: Vec<Scalar> = (0..space.dimension())
                    .map(|_| field.from_i64(rng.gen_range(-*range..=*range)))
                    .collect();
                let mul = space.op_at("mul", &coords)?;
                let label = format!("family#{n} coords={}", show(&coords));
                let b = AlgebraBundle::new(crate::algebra::BasisSpace::standard(bracket.dim()), field)
                    .with_op(mul)
                    .with_op(bracket.clone().with_name("bracket"));
                if *associative && !check_identity(&b, Axiom::Associativity, &Binding::default())?.holds {
                    sample.rejected.push(format!("{label}: not associative"));
                    continue;
                }
                emit(&mut sample, label, b)?;
            }
        }
    }
    Ok(sample)
}

fn show(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Which ops and map drive the ladder.
#[derive(Debug, Clone)]
pub struct LadderSetup {
    pub mul: String,
    pub nary: String,
    pub map: String,
    pub limits: LadderLimits,
}

impl Default for LadderSetup {
    fn default() -> Self {
        LadderSetup {
            mul: "mul".into(),
            nary: "nary".into(),
            map: "D".into(),
            limits: LadderLimits::default(),
        }
    }
}

/// Climb `levels` rungs of the n-Lie ladder, checking the fundamental
/// identity and the factor-(n+1) transposed rule at each new arity, and that
/// `D` stays a derivation of the new bracket. Stops at the first failure.
pub fn test_conjecture_ladder(instance: &AlgebraBundle, setup: &LadderSetup, levels: usize) -> Result<SearchReport, SearchError> {
    let mul = instance.op(&setup.mul).ok_or_else(|| SearchError::MissingOp(setup.mul.clone()))?;
    let start = instance.op(&setup.nary).ok_or_else(|| SearchError::MissingOp(setup.nary.clone()))?;
    let d = instance.map(&setup.map).ok_or_else(|| SearchError::MissingMap(setup.map.clone()))?;

    let roles = Roles::new(mul.field(), mul.dim()).with_op(Role::Mul, mul)?.with_op(Role::Nary, start)?;
    for &a in Profile::TpaNLie.axioms() {
        let r = check_roles(a, &roles, CheckOptions::default())?;
        if !r.holds {
            return Err(SearchError::Precondition {
                what: Profile::TpaNLie.to_string(),
                report: Box::new(r),
            });
        }
    }
    for op in [mul, start] {
        let r = Roles::new(mul.field(), mul.dim()).with_op(Role::Op, op)?.with_map(Role::Map, d)?;
        let rep = check_roles(Axiom::DerivationOf, &r, CheckOptions::default())?;
        if !rep.holds {
            return Err(SearchError::Precondition {
                what: format!("{} is a derivation of {}", setup.map, op.name()),
                report: Box::new(rep),
            });
        }
    }

    let mut report = SearchReport::new("ladder", 0);
    let mut current = instance.clone();
    let binding = Binding::new()
        .bind(Role::Mul, &setup.mul)
        .bind(Role::Nary, &setup.nary)
        .bind(Role::Op, &setup.nary)
        .bind(Role::Map, &setup.map);
    for _ in 0..levels {
        let mu = current.op(&setup.nary).expect("kept under the same name");
        let n = mu.arity();
        let next = constructions::nlie_ladder_step(mul, mu, d, setup.limits)?;
        current.set_op(next)?;
        for axiom in [Axiom::FundamentalIdentity, Axiom::TransposedNLie, Axiom::DerivationOf] {
            report.candidates += 1;
            let r = check_identity(&current, axiom, &binding)?;
            report.notes.push(format!("{n}->{}: {r}", n + 1));
            if !r.holds {
                let ce = Counterexample {
                    instance: current.clone(),
                    axiom,
                    binding: binding.clone(),
                    witness: r.witness.expect("failing report has a witness"),
                };
                debug_assert!(ce.replays().unwrap_or(false));
                report.counterexamples.push(ce);
                report.verdict = Verdict::CounterexampleFound;
                return Ok(report);
            }
        }
    }
    report.verdict = if report.candidates == 0 {
        Verdict::NoCandidates
    } else {
        Verdict::AllPass
    };
    Ok(report)
}
