//! Exhaustive verification of multilinear identities on basis tuples.
//!
//! Every identity registered here is multilinear in its variables, so it holds
//! on the whole space iff it holds on every tuple of basis vectors. Tuples are
//! visited in lexicographic order and the first failure is reported.

mod identities;
mod profiles;
mod roles;

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraBundle, AlgebraError, Element, Field};

pub use identities::Axiom;
pub use profiles::Profile;
pub use roles::{Binding, Role, Roles};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error("no {kind} named {name:?} for role {role}")]
    MissingRole { role: Role, kind: &'static str, name: String },
    #[error("role {role} cannot be played by {name:?}: {reason}")]
    RoleMismatch { role: Role, name: String, reason: String },
    #[error("{field} is too small for {axiom}: need characteristic above {needed}")]
    FieldTooSmall { field: Field, axiom: String, needed: u64 },
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
    #[error("unknown profile {0:?}")]
    UnknownProfile(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A basis tuple on which an identity fails, with both evaluated sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationWitness {
    /// Basis indices assigned to the identity's variables, in order.
    pub tuple: Vec<usize>,
    /// Which component of a multi-part identity failed (0 for single equations).
    pub part: usize,
    pub left: Element,
    pub right: Element,
}

/// Outcome of checking one identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub axiom: Axiom,
    /// Arity of the n-ary op for identities that depend on it.
    pub arity: Option<usize>,
    pub holds: bool,
    pub witness: Option<ViolationWitness>,
    pub tuples_checked: u64,
}

impl CheckReport {
    pub fn label(&self) -> String {
        match self.arity {
            Some(n) if self.axiom.is_arity_generic() => format!("{}[n={n}]", self.axiom.name()),
            _ => self.axiom.name().to_string(),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "{}: holds ({} tuples)", self.label(), self.tuples_checked)
        } else {
            let w = self.witness.as_ref().expect("failing report carries a witness");
            write!(f, "{}: FAILS at {:?}", self.label(), w.tuple)
        }
    }
}

/// Knobs for the tuple loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Skip tuples that are permutations of an already-visited one when the
    /// identity is (anti)symmetric in those variables.
    pub prune: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { prune: true }
    }
}

/// Check one identity against ops resolved from a bundle.
pub fn check_identity(bundle: &AlgebraBundle, axiom: Axiom, binding: &Binding) -> Result<CheckReport, AxiomError> {
    check_identity_with(bundle, axiom, binding, CheckOptions::default())
}

pub fn check_identity_with(
    bundle: &AlgebraBundle,
    axiom: Axiom,
    binding: &Binding,
    opts: CheckOptions,
) -> Result<CheckReport, AxiomError> {
    let roles = Roles::resolve(bundle, binding, axiom.roles())?;
    check_roles(axiom, &roles, opts)
}

/// Check every constituent identity of a profile.
pub fn check_profile(bundle: &AlgebraBundle, profile: Profile, binding: &Binding) -> Result<Vec<CheckReport>, AxiomError> {
    check_profile_with(bundle, profile, binding, CheckOptions::default())
}

pub fn check_profile_with(
    bundle: &AlgebraBundle,
    profile: Profile,
    binding: &Binding,
    opts: CheckOptions,
) -> Result<Vec<CheckReport>, AxiomError> {
    let roles = Roles::resolve(bundle, binding, profile.roles())?;
    profile.axioms().iter().map(|&a| check_roles(a, &roles, opts)).collect()
}

/// True when every report holds.
pub fn all_hold(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.holds)
}

/// Convenience: does the bundle pass the profile with default role names?
pub fn passes(bundle: &AlgebraBundle, profile: Profile) -> Result<bool, AxiomError> {
    Ok(all_hold(&check_profile(bundle, profile, &Binding::default())?))
}

/// Does the bundle satisfy the identity with default role names?
pub fn holds(bundle: &AlgebraBundle, axiom: Axiom) -> Result<bool, AxiomError> {
    Ok(check_identity(bundle, axiom, &Binding::default())?.holds)
}

/// Check an identity against already-resolved roles.
pub fn check_roles(axiom: Axiom, roles: &Roles, opts: CheckOptions) -> Result<CheckReport, AxiomError> {
    axiom.validate(roles)?;
    let vars = axiom.var_count(roles);
    let groups = if opts.prune { axiom.groups(roles) } else { Vec::new() };
    let dim = roles.dim();
    let basis: Vec<Element> = (0..dim).map(|i| Element::basis(roles.field(), dim, i)).collect();

    let mut checked = 0u64;
    let mut witness = None;
    let mut tuple = vec![0usize; vars];
    let plan = TuplePlan::new(vars, dim, &groups);
    plan.visit(&mut tuple, 0, &mut |t| {
        checked += 1;
        let args: Vec<&Element> = t.iter().map(|&i| &basis[i]).collect();
        for (part, (left, right)) in axiom.sides(roles, &args).into_iter().enumerate() {
            if left != right {
                witness = Some(ViolationWitness {
                    tuple: t.to_vec(),
                    part,
                    left,
                    right,
                });
                return false;
            }
        }
        true
    });
    Ok(CheckReport {
        axiom,
        arity: axiom.nary_arity(roles),
        holds: witness.is_none(),
        witness,
        tuples_checked: checked,
    })
}

/// Evaluate both sides of every component of an identity on a basis tuple.
/// Used to replay witnesses.
pub fn evaluate_at(axiom: Axiom, roles: &Roles, tuple: &[usize]) -> Result<Vec<(Element, Element)>, AxiomError> {
    axiom.validate(roles)?;
    let vars = axiom.var_count(roles);
    if tuple.len() != vars {
        return Err(AlgebraError::ArityMismatch {
            op: axiom.name().to_string(),
            expected: vars,
            found: tuple.len(),
        }
        .into());
    }
    let dim = roles.dim();
    if let Some(&bad) = tuple.iter().find(|&&i| i >= dim) {
        return Err(AlgebraError::IndexOutOfRange { index: bad, dim }.into());
    }
    let basis: Vec<Element> = tuple.iter().map(|&i| Element::basis(roles.field(), dim, i)).collect();
    let args: Vec<&Element> = basis.iter().collect();
    Ok(axiom.sides(roles, &args))
}

/// Coordinates of `left − right` over every pruned tuple and component,
/// concatenated. Linear in any op or map that enters the identity linearly,
/// which is what the solvers exploit.
pub(crate) fn defect_vector(axiom: Axiom, roles: &Roles) -> Result<Vec<crate::algebra::Scalar>, AxiomError> {
    axiom.validate(roles)?;
    let vars = axiom.var_count(roles);
    let dim = roles.dim();
    let basis: Vec<Element> = (0..dim).map(|i| Element::basis(roles.field(), dim, i)).collect();
    let plan = TuplePlan::new(vars, dim, &axiom.groups(roles));
    let mut out = Vec::new();
    plan.visit(&mut vec![0; vars], 0, &mut |t| {
        let args: Vec<&Element> = t.iter().map(|&i| &basis[i]).collect();
        for (l, r) in axiom.sides(roles, &args) {
            out.extend(l.sub(&r).coeffs().iter().cloned());
        }
        true
    });
    Ok(out)
}

/// Replay a witness: true iff the recorded failure reproduces exactly.
pub fn replay_witness(axiom: Axiom, roles: &Roles, w: &ViolationWitness) -> Result<bool, AxiomError> {
    let sides = evaluate_at(axiom, roles, &w.tuple)?;
    Ok(match sides.get(w.part) {
        Some((l, r)) => l != r && *l == w.left && *r == w.right,
        None => false,
    })
}

/// How a set of variable positions may be permuted without changing the
/// verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum GroupKind {
    /// The defect changes sign: visit strictly increasing assignments only.
    Alternating,
    /// The defect is unchanged: visit non-decreasing assignments only.
    Symmetric,
}

/// Variable positions (ascending) sharing a symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VarGroup {
    pub positions: Vec<usize>,
    pub kind: GroupKind,
}

impl VarGroup {
    pub fn alt(positions: impl IntoIterator<Item = usize>) -> Self {
        VarGroup {
            positions: positions.into_iter().collect(),
            kind: GroupKind::Alternating,
        }
    }

    pub fn sym(positions: impl IntoIterator<Item = usize>) -> Self {
        VarGroup {
            positions: positions.into_iter().collect(),
            kind: GroupKind::Symmetric,
        }
    }
}

/// Depth-first enumeration of tuples in lexicographic order, with each
/// variable bounded below by its predecessor in the same group.
struct TuplePlan {
    dim: usize,
    /// For each position: the previous position in its group and the minimum gap.
    prev: Vec<Option<(usize, usize)>>,
}

impl TuplePlan {
    fn new(vars: usize, dim: usize, groups: &[VarGroup]) -> Self {
        let mut prev = vec![None; vars];
        for g in groups {
            let gap = match g.kind {
                GroupKind::Alternating => 1,
                GroupKind::Symmetric => 0,
            };
            for w in g.positions.windows(2) {
                debug_assert!(w[0] < w[1]);
                prev[w[1]] = Some((w[0], gap));
            }
        }
        TuplePlan { dim, prev }
    }

    /// Returns false once the callback asks to stop.
    fn visit(&self, tuple: &mut [usize], pos: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if pos == tuple.len() {
            return f(tuple);
        }
        let start = match self.prev[pos] {
            Some((p, gap)) => tuple[p] + gap,
            None => 0,
        };
        for v in start..self.dim {
            tuple[pos] = v;
            if !self.visit(tuple, pos + 1, f) {
                return false;
            }
        }
        true
    }
}
