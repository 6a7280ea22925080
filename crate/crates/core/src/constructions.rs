//! New operations built from old ones. Every construction checks its
//! hypotheses first and fails with the offending check report.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraBundle, AlgebraError, BasisSpace, Element, LinearMap, MultiLinearOp, Symmetry};
use crate::axioms::{check_roles, Axiom, AxiomError, CheckOptions, CheckReport, Profile, Role, Roles};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("precondition failed: {condition} ({report})")]
    Precondition { condition: String, report: Box<CheckReport> },
    #[error("{0}")]
    Shape(String),
    #[error("over budget: {0}")]
    Budget(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl ConstructionError {
    /// The failing report, when the error is a precondition failure.
    pub fn report(&self) -> Option<&CheckReport> {
        match self {
            ConstructionError::Precondition { report, .. } => Some(report),
            _ => None,
        }
    }
}

type Result<T> = std::result::Result<T, ConstructionError>;

fn require(axiom: Axiom, roles: &Roles, condition: &str) -> Result<CheckReport> {
    let report = check_roles(axiom, roles, CheckOptions::default())?;
    if report.holds {
        Ok(report)
    } else {
        Err(ConstructionError::Precondition {
            condition: condition.to_string(),
            report: Box::new(report),
        })
    }
}

fn require_profile(profile: Profile, roles: &Roles) -> Result<()> {
    for &a in profile.axioms() {
        require(a, roles, &format!("{profile} ({a})"))?;
    }
    Ok(())
}

fn require_derivation(op: &MultiLinearOp, d: &LinearMap, what: &str) -> Result<()> {
    let roles = Roles::new(op.field(), op.dim()).with_op(Role::Op, op)?.with_map(Role::Map, d)?;
    require(Axiom::DerivationOf, &roles, &format!("{what} is a derivation of {}", op.name()))?;
    Ok(())
}

fn pair_roles<'a>(mul: &'a MultiLinearOp, bracket: &'a MultiLinearOp) -> Result<Roles<'a>> {
    Ok(Roles::new(mul.field(), mul.dim())
        .with_op(Role::Mul, mul)?
        .with_op(Role::Bracket, bracket)?)
}

fn binary(op: &MultiLinearOp) -> Result<()> {
    if op.arity() != 2 {
        return Err(ConstructionError::Shape(format!(
            "{} has arity {}, expected a binary op",
            op.name(),
            op.arity()
        )));
    }
    Ok(())
}

/// `[x,y] = x∘y − y∘x`.
pub fn commutator_bracket(circ: &MultiLinearOp) -> Result<MultiLinearOp> {
    binary(circ)?;
    Ok(MultiLinearOp::from_fn("bracket", 2, circ.dim(), circ.field(), Symmetry::Alternating, |k| {
        circ.eval_basis(k).sub(&circ.eval_basis(&[k[1], k[0]]))
    }))
}

/// `x∘y = x·D(y)` for a derivation `D` of `mul`.
pub fn gelfand_product(mul: &MultiLinearOp, d: &LinearMap) -> Result<MultiLinearOp> {
    binary(mul)?;
    require_derivation(mul, d, "D")?;
    let (f, n) = (mul.field(), mul.dim());
    Ok(MultiLinearOp::from_fn("circ", 2, n, f, Symmetry::None, |k| {
        mul.eval_unchecked(&[&Element::basis(f, n, k[0]), &d.column(k[1])])
    }))
}

/// `[x,y] = x·D(y) − D(x)·y`.
pub fn derivation_bracket(mul: &MultiLinearOp, d: &LinearMap) -> Result<MultiLinearOp> {
    let via_circ = commutator_bracket(&gelfand_product(mul, d)?)?;
    let (f, n) = (mul.field(), mul.dim());
    let direct = MultiLinearOp::from_fn("bracket", 2, n, f, Symmetry::Alternating, |k| {
        let (x, y) = (Element::basis(f, n, k[0]), Element::basis(f, n, k[1]));
        mul.eval_unchecked(&[&x, &d.column(k[1])])
            .sub(&mul.eval_unchecked(&[&d.column(k[0]), &y]))
    });
    if direct != via_circ {
        return Err(ConstructionError::Internal(
            "derivation bracket differs from the commutator of the Gelfand product".into(),
        ));
    }
    Ok(direct)
}

/// `[x,y] = D1(x)·D2(y) − D1(y)·D2(x)` for commuting derivations.
pub fn two_derivation_bracket(mul: &MultiLinearOp, d1: &LinearMap, d2: &LinearMap) -> Result<MultiLinearOp> {
    binary(mul)?;
    require_derivation(mul, d1, "D1")?;
    require_derivation(mul, d2, "D2")?;
    let roles = Roles::new(mul.field(), mul.dim()).with_map(Role::Map, d1)?.with_map(Role::Map2, d2)?;
    require(Axiom::Commuting, &roles, "D1 and D2 commute")?;
    Ok(MultiLinearOp::from_fn("bracket", 2, mul.dim(), mul.field(), Symmetry::Alternating, |k| {
        mul.eval_unchecked(&[&d1.column(k[0]), &d2.column(k[1])])
            .sub(&mul.eval_unchecked(&[&d1.column(k[1]), &d2.column(k[0])]))
    }))
}

/// `[x,y]_h = h·[x,y]` on a transposed Poisson algebra.
pub fn rescaled_bracket(mul: &MultiLinearOp, bracket: &MultiLinearOp, h: &Element) -> Result<MultiLinearOp> {
    require_profile(Profile::TransposedPoisson, &pair_roles(mul, bracket)?)?;
    h.check_dim(mul.dim())?;
    Ok(MultiLinearOp::from_fn(bracket.name(), 2, mul.dim(), mul.field(), Symmetry::Alternating, |k| {
        mul.eval_unchecked(&[h, &bracket.eval_basis(k)])
    }))
}

/// Left multiplication by `h`.
pub fn left_multiplication(mul: &MultiLinearOp, h: &Element) -> LinearMap {
    let n = mul.dim();
    let cols: Vec<Element> = (0..n)
        .map(|j| mul.eval_unchecked(&[h, &Element::basis(mul.field(), n, j)]))
        .collect();
    LinearMap::from_columns(&cols).expect("square")
}

/// `φ_h(x) = h·x`, with reports for the Hom-Lie identities it satisfies.
/// The multiplicativity report is present only when `φ_h² = φ_h`.
pub fn hom_lie_structure(mul: &MultiLinearOp, bracket: &MultiLinearOp, h: &Element) -> Result<(LinearMap, Vec<CheckReport>)> {
    let roles = pair_roles(mul, bracket)?;
    require_profile(Profile::TransposedPoisson, &roles)?;
    h.check_dim(mul.dim())?;
    let phi = left_multiplication(mul, h);
    let roles = roles.with_map(Role::Map, &phi)?;
    let mut reports = vec![
        check_roles(Axiom::HomJacobi, &roles, CheckOptions::default())?,
        check_roles(Axiom::Varphi2, &roles, CheckOptions::default())?,
    ];
    if phi.compose(&phi) == phi {
        reports.push(check_roles(Axiom::HomMultiplicative, &roles, CheckOptions::default())?);
    }
    Ok((phi, reports))
}

/// Names of the two ops a tensor factor contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorRoles {
    pub mul: String,
    pub paired: String,
}

impl Default for TensorRoles {
    fn default() -> Self {
        TensorRoles {
            mul: "mul".into(),
            paired: "bracket".into(),
        }
    }
}

/// Tensor product of two algebras with a product and a paired op:
/// `(a⊗b)·(c⊗d) = ac⊗bd` and `(a⊗b)*(c⊗d) = (a*c)⊗(bd) + (ac)⊗(b*d)`.
pub fn tensor_mixed(a: &AlgebraBundle, b: &AlgebraBundle, names: &TensorRoles) -> Result<AlgebraBundle> {
    if a.field() != b.field() {
        return Err(AlgebraError::FieldMismatch.into());
    }
    let get = |bundle: &'_ AlgebraBundle, n: &str| -> Result<MultiLinearOp> {
        let op = bundle
            .op(n)
            .ok_or_else(|| ConstructionError::Shape(format!("no op named {n:?}")))?;
        binary(op)?;
        Ok(op.clone())
    };
    let (ma, pa) = (get(a, &names.mul)?, get(a, &names.paired)?);
    let (mb, pb) = (get(b, &names.mul)?, get(b, &names.paired)?);
    if pa.symmetry() != pb.symmetry() || pa.symmetry() == Symmetry::Symmetric {
        return Err(ConstructionError::Shape(format!(
            "paired ops must both be alternating or both unconstrained, got {} and {}",
            pa.symmetry(),
            pb.symmetry()
        )));
    }
    let (da, db) = (a.dim(), b.dim());
    let field = a.field();
    let n = da * db;
    let tensor = |x: &Element, y: &Element| -> Element {
        let mut coeffs = vec![field.zero(); n];
        for i in x.support() {
            for j in y.support() {
                coeffs[i * db + j] = x.coeff(i).mul(y.coeff(j));
            }
        }
        Element::from_coeffs(coeffs)
    };
    let split = |k: usize| (k / db, k % db);
    let mul_sym = if ma.symmetry() == Symmetry::Symmetric && mb.symmetry() == Symmetry::Symmetric {
        Symmetry::Symmetric
    } else {
        Symmetry::None
    };
    let mut mul_raw = Vec::new();
    let mut pair_raw = Vec::new();
    for k1 in 0..n {
        for k2 in 0..n {
            let ((a1, b1), (a2, b2)) = (split(k1), split(k2));
            let prod_a = ma.eval_basis(&[a1, a2]);
            let prod_b = mb.eval_basis(&[b1, b2]);
            mul_raw.push((vec![k1, k2], tensor(&prod_a, &prod_b)));
            let p = tensor(&pa.eval_basis(&[a1, a2]), &prod_b).add(&tensor(&prod_a, &pb.eval_basis(&[b1, b2])));
            pair_raw.push((vec![k1, k2], p));
        }
    }
    let mut labels = Vec::with_capacity(n);
    for la in a.space().labels() {
        for lb in b.space().labels() {
            labels.push(format!("{la}⊗{lb}"));
        }
    }
    let mut out = AlgebraBundle::new(BasisSpace::new(labels)?, field);
    out.add_op(MultiLinearOp::normalize(&names.mul, 2, n, field, mul_sym, mul_raw)?)?;
    out.add_op(MultiLinearOp::normalize(&names.paired, 2, n, field, pa.symmetry(), pair_raw)?)?;
    Ok(out)
}

/// `[x,y,z] = g(x)·[y,z] + g(y)·[z,x] + g(z)·[x,y]` for a linear map `g`.
fn cyclic_ternary(mul: &MultiLinearOp, bracket: &MultiLinearOp, g: &LinearMap) -> MultiLinearOp {
    let (f, n) = (mul.field(), mul.dim());
    MultiLinearOp::from_fn("nary", 3, n, f, Symmetry::Alternating, |k| {
        let term = |a: usize, b: usize, c: usize| mul.eval_unchecked(&[&g.column(a), &bracket.eval_basis(&[b, c])]);
        term(k[0], k[1], k[2]).add(&term(k[1], k[2], k[0])).add(&term(k[2], k[0], k[1]))
    })
}

/// 3-Lie bracket `D(x)·[y,z] + D(y)·[z,x] + D(z)·[x,y]` from a derivation of
/// both operations of a transposed Poisson algebra or of a strong Poisson
/// algebra. When neither profile holds the transposed Poisson failure is
/// reported.
pub fn three_lie_from_derivation(mul: &MultiLinearOp, bracket: &MultiLinearOp, d: &LinearMap) -> Result<MultiLinearOp> {
    let roles = pair_roles(mul, bracket)?;
    if let Err(tp) = require_profile(Profile::TransposedPoisson, &roles) {
        if require_profile(Profile::StrongPoisson, &roles).is_err() {
            return Err(tp);
        }
    }
    require_derivation(mul, d, "D")?;
    require_derivation(bracket, d, "D")?;
    Ok(cyclic_ternary(mul, bracket, d))
}

/// Output of [`three_lie_from_involution`] with the checks run on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionOutcome {
    pub nary: MultiLinearOp,
    pub fundamental_identity: CheckReport,
    pub const3_extra: CheckReport,
    /// Only reported when the extra condition holds.
    pub transposed_3lie: Option<CheckReport>,
}

/// 3-Lie bracket from an involutive endomorphism that anti-commutes with the
/// bracket.
pub fn three_lie_from_involution(mul: &MultiLinearOp, bracket: &MultiLinearOp, f: &LinearMap) -> Result<InvolutionOutcome> {
    let roles = pair_roles(mul, bracket)?;
    require_profile(Profile::TransposedPoisson, &roles)?;
    let roles = roles.with_map(Role::Map, f)?;
    require(Axiom::Anti, &roles, "f is an involution with f([x,y]) = -[f x, f y]")?;
    require(Axiom::Endomorphism, &roles, "f is an endomorphism of the product")?;
    let nary = cyclic_ternary(mul, bracket, f);
    let extra = check_roles(Axiom::Const3Extra, &roles, CheckOptions::default())?;
    let three = Roles::new(mul.field(), mul.dim())
        .with_op(Role::Mul, mul)?
        .with_op(Role::Nary, &nary)?;
    let fi = check_roles(Axiom::FundamentalIdentity, &three, CheckOptions::default())?;
    let transposed = if extra.holds {
        Some(check_roles(Axiom::Transposed3Lie, &three, CheckOptions::default())?)
    } else {
        None
    };
    Ok(InvolutionOutcome {
        nary,
        fundamental_identity: fi,
        const3_extra: extra,
        transposed_3lie: transposed,
    })
}

/// `[x,y,z] = x·[y,z] + y·[z,x] + z·[x,y]` on a Poisson algebra.
pub fn three_lie_from_poisson(mul: &MultiLinearOp, bracket: &MultiLinearOp) -> Result<MultiLinearOp> {
    require_profile(Profile::Poisson, &pair_roles(mul, bracket)?)?;
    Ok(cyclic_ternary(mul, bracket, &LinearMap::identity(mul.field(), mul.dim())))
}

/// Size limits for the n-Lie ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderLimits {
    pub max_arity: usize,
    pub max_dim: usize,
}

impl Default for LadderLimits {
    fn default() -> Self {
        LadderLimits { max_arity: 5, max_dim: 16 }
    }
}

/// `μ_{n+1}(x1..x_{n+1}) = Σ_i (−1)^{i+1} D(x_i)·μ_n(x1, .., x̂_i, .., x_{n+1})`.
pub fn nlie_ladder_step(mul: &MultiLinearOp, mu: &MultiLinearOp, d: &LinearMap, limits: LadderLimits) -> Result<MultiLinearOp> {
    let n = mu.arity();
    if n + 1 > limits.max_arity {
        return Err(ConstructionError::Budget(format!(
            "arity {} exceeds the limit {}",
            n + 1,
            limits.max_arity
        )));
    }
    if mu.dim() > limits.max_dim {
        return Err(ConstructionError::Budget(format!(
            "dimension {} exceeds the limit {}",
            mu.dim(),
            limits.max_dim
        )));
    }
    let roles = Roles::new(mul.field(), mul.dim()).with_op(Role::Mul, mul)?.with_op(Role::Nary, mu)?;
    require_profile(Profile::TpaNLie, &roles)?;
    require_derivation(mul, d, "D")?;
    require_derivation(mu, d, "D")?;
    Ok(ladder_formula(mul, mu, d))
}

fn ladder_formula(mul: &MultiLinearOp, mu: &MultiLinearOp, d: &LinearMap) -> MultiLinearOp {
    let n = mu.arity();
    MultiLinearOp::from_fn(mu.name(), n + 1, mu.dim(), mu.field(), Symmetry::Alternating, |k| {
        let mut acc = Element::zero(mu.field(), mu.dim());
        for i in 0..=n {
            let rest: Vec<usize> = (0..=n).filter(|&j| j != i).map(|j| k[j]).collect();
            let term = mul.eval_unchecked(&[&d.column(k[i]), &mu.eval_basis(&rest)]);
            acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    })
}

/// `[x1..xn] = det(maps_i(x_j))`, the determinant expanded with `mul`.
/// Each map must be the identity or a derivation of `mul`, and the maps must
/// commute pairwise.
pub fn wedge_bracket(maps: &[&LinearMap], mul: &MultiLinearOp) -> Result<MultiLinearOp> {
    binary(mul)?;
    let n = maps.len();
    if n < 2 {
        return Err(ConstructionError::Shape("a wedge needs at least two maps".into()));
    }
    for (i, m) in maps.iter().enumerate() {
        if !m.is_identity() {
            require_derivation(mul, m, &format!("map {}", i + 1))?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let roles = Roles::new(mul.field(), mul.dim())
                .with_map(Role::Map, maps[i])?
                .with_map(Role::Map2, maps[j])?;
            require(Axiom::Commuting, &roles, &format!("maps {} and {} commute", i + 1, j + 1))?;
        }
    }
    let perms = permutations(n);
    Ok(MultiLinearOp::from_fn("nary", n, mul.dim(), mul.field(), Symmetry::Alternating, |k| {
        let mut acc = Element::zero(mul.field(), mul.dim());
        for (perm, odd) in &perms {
            let mut prod = maps[0].column(k[perm[0]]);
            for i in 1..n {
                prod = mul.eval_unchecked(&[&prod, &maps[i].column(k[perm[i]])]);
            }
            acc = if *odd { acc.sub(&prod) } else { acc.add(&prod) };
        }
        acc
    }))
}

/// All permutations of `0..n` with their parity.
fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // moving n-1 from the end to `pos` passes n-1-pos elements
            out.push((q, odd ^ ((n - 1 - pos) % 2 == 1)));
        }
    }
    out
}

/// The construction kinds exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Commutator,
    Gelfand,
    DerivationBracket,
    TwoDerivationBracket,
    Rescale,
    HomLie,
    Tensor,
    ThreeLieDerivation,
    ThreeLieInvolution,
    ThreeLiePoisson,
    LadderStep,
    Wedge,
}

impl Kind {
    pub const ALL: [Kind; 12] = [
        Kind::Commutator,
        Kind::Gelfand,
        Kind::DerivationBracket,
        Kind::TwoDerivationBracket,
        Kind::Rescale,
        Kind::HomLie,
        Kind::Tensor,
        Kind::ThreeLieDerivation,
        Kind::ThreeLieInvolution,
        Kind::ThreeLiePoisson,
        Kind::LadderStep,
        Kind::Wedge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Commutator => "commutator",
            Kind::Gelfand => "gelfand",
            Kind::DerivationBracket => "derivation-bracket",
            Kind::TwoDerivationBracket => "two-derivation-bracket",
            Kind::Rescale => "rescale",
            Kind::HomLie => "hom-lie",
            Kind::Tensor => "tensor",
            Kind::ThreeLieDerivation => "3lie-derivation",
            Kind::ThreeLieInvolution => "3lie-involution",
            Kind::ThreeLiePoisson => "3lie-poisson",
            Kind::LadderStep => "ladder-step",
            Kind::Wedge => "wedge",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inputs for [`construct`] beyond the bundle itself.
#[derive(Debug, Clone)]
pub struct Params {
    pub mul: String,
    pub bracket: String,
    pub circ: String,
    pub nary: String,
    pub map: String,
    pub map2: String,
    /// Map names for the wedge; `"Id"` denotes the identity.
    pub maps: Vec<String>,
    pub h: Option<Element>,
    pub other: Option<AlgebraBundle>,
    pub limits: LadderLimits,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            mul: "mul".into(),
            bracket: "bracket".into(),
            circ: "circ".into(),
            nary: "nary".into(),
            map: "D".into(),
            map2: "D2".into(),
            maps: Vec::new(),
            h: None,
            other: None,
            limits: LadderLimits::default(),
        }
    }
}

/// A derived bundle plus any reports the construction produced.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub bundle: AlgebraBundle,
    pub reports: Vec<CheckReport>,
}

/// Apply a construction to a bundle, adding or replacing the produced op or map.
pub fn construct(kind: Kind, bundle: &AlgebraBundle, p: &Params) -> Result<Constructed> {
    let op = |name: &str| -> Result<&MultiLinearOp> {
        bundle
            .op(name)
            .ok_or_else(|| ConstructionError::Shape(format!("no op named {name:?}")))
    };
    let map = |name: &str| -> Result<LinearMap> {
        if name == "Id" {
            return Ok(LinearMap::identity(bundle.field(), bundle.dim()));
        }
        bundle
            .map(name)
            .cloned()
            .ok_or_else(|| ConstructionError::Shape(format!("no map named {name:?}")))
    };
    let h = || -> Result<&Element> {
        p.h.as_ref().ok_or_else(|| ConstructionError::Shape("this construction needs --h".into()))
    };
    let mut out = bundle.clone();
    let mut reports = Vec::new();
    match kind {
        Kind::Commutator => out.set_op(commutator_bracket(op(&p.circ)?)?.with_name(&p.bracket))?,
        Kind::Gelfand => out.set_op(gelfand_product(op(&p.mul)?, &map(&p.map)?)?.with_name(&p.circ))?,
        Kind::DerivationBracket => out.set_op(derivation_bracket(op(&p.mul)?, &map(&p.map)?)?.with_name(&p.bracket))?,
        Kind::TwoDerivationBracket => out.set_op(
            two_derivation_bracket(op(&p.mul)?, &map(&p.map)?, &map(&p.map2)?)?.with_name(&p.bracket),
        )?,
        Kind::Rescale => out.set_op(rescaled_bracket(op(&p.mul)?, op(&p.bracket)?, h()?)?.with_name(&p.bracket))?,
        Kind::HomLie => {
            let (phi, r) = hom_lie_structure(op(&p.mul)?, op(&p.bracket)?, h()?)?;
            out.set_map("phi", phi)?;
            reports = r;
        }
        Kind::Tensor => {
            let other = p
                .other
                .as_ref()
                .ok_or_else(|| ConstructionError::Shape("tensor needs a second algebra".into()))?;
            let names = TensorRoles {
                mul: p.mul.clone(),
                paired: if bundle.op(&p.bracket).is_some() { p.bracket.clone() } else { p.circ.clone() },
            };
            out = tensor_mixed(bundle, other, &names)?;
        }
        Kind::ThreeLieDerivation => out.set_op(
            three_lie_from_derivation(op(&p.mul)?, op(&p.bracket)?, &map(&p.map)?)?.with_name(&p.nary),
        )?,
        Kind::ThreeLieInvolution => {
            let o = three_lie_from_involution(op(&p.mul)?, op(&p.bracket)?, &map(&p.map)?)?;
            out.set_op(o.nary.with_name(&p.nary))?;
            reports.push(o.fundamental_identity);
            reports.push(o.const3_extra);
            reports.extend(o.transposed_3lie);
        }
        Kind::ThreeLiePoisson => {
            out.set_op(three_lie_from_poisson(op(&p.mul)?, op(&p.bracket)?)?.with_name(&p.nary))?
        }
        Kind::LadderStep => out.set_op(
            nlie_ladder_step(op(&p.mul)?, op(&p.nary)?, &map(&p.map)?, p.limits)?.with_name(&p.nary),
        )?,
        Kind::Wedge => {
            if p.maps.is_empty() {
                return Err(ConstructionError::Shape("wedge needs --maps".into()));
            }
            let maps: Vec<LinearMap> = p.maps.iter().map(|m| map(m)).collect::<Result<_>>()?;
            let refs: Vec<&LinearMap> = maps.iter().collect();
            out.set_op(wedge_bracket(&refs, op(&p.mul)?)?.with_name(&p.nary))?
        }
    }
    out.metadata.insert("construction".into(), kind.name().into());
    Ok(Constructed { bundle: out, reports })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_parities() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        let odd = perms.iter().filter(|(_, o)| *o).count();
        assert_eq!(odd, 3);
        // parity by inversion count
        for (p, o) in perms {
            let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(inv % 2 == 1, o, "{p:?}");
        }
    }
}
