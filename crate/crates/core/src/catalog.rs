//! Concrete small algebras: the two-dimensional classification lists, the
//! two-dimensional derivation table, a pre-Lie Poisson example, and truncated
//! polynomial algebras with their Euler derivations.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraBundle, BasisSpace, Element, Field, LinearMap, MultiLinearOp, Scalar, Symmetry};
use crate::axioms::{check_profile, Binding, CheckReport, Profile};
use crate::constructions;
use crate::linalg::{self, span_dim, Matrix, SolutionSpace};

/// A named, verified example.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub bundle: AlgebraBundle,
    pub claimed_profiles: Vec<Profile>,
    pub parameters: BTreeMap<String, Scalar>,
    /// For derivation-table entries: maps spanning the stated derivation space.
    pub stated_derivations: Option<Vec<LinearMap>>,
}

impl CatalogEntry {
    fn new(id: &str, bundle: AlgebraBundle, profiles: &[Profile]) -> Self {
        let bundle = bundle.with_meta("id", id);
        CatalogEntry {
            id: id.to_string(),
            bundle,
            claimed_profiles: profiles.to_vec(),
            parameters: BTreeMap::new(),
            stated_derivations: None,
        }
    }

    fn param(mut self, name: &str, value: Scalar) -> Self {
        self.bundle.metadata.insert(format!("param.{name}"), value.to_string());
        self.parameters.insert(name.to_string(), value);
        self
    }

    /// Check every claimed profile; returns the first failing report.
    pub fn verify(&self) -> Result<(), Box<CheckReport>> {
        for &p in &self.claimed_profiles {
            let reports = check_profile(&self.bundle, p, &Binding::default()).expect("catalog bundles bind their roles");
            if let Some(bad) = reports.into_iter().find(|r| !r.holds) {
                return Err(Box::new(bad));
            }
        }
        Ok(())
    }
}

fn e(field: Field, dim: usize, coeffs: &[i64]) -> Element {
    assert_eq!(coeffs.len(), dim);
    Element::from_i64s(field, coeffs)
}

/// Binary op on a 2-dimensional space from `(i, j, [c1, c2])` triples
/// (0-based indices).
fn op2(name: &str, field: Field, sym: Symmetry, entries: &[(usize, usize, [i64; 2])]) -> MultiLinearOp {
    let raw = entries.iter().map(|&(i, j, c)| (vec![i, j], e(field, 2, &c)));
    MultiLinearOp::normalize(name, 2, 2, field, sym, raw).expect("consistent literal table")
}

fn scaled_op2(name: &str, field: Field, sym: Symmetry, entries: &[(usize, usize, [&Scalar; 2])]) -> MultiLinearOp {
    let raw = entries
        .iter()
        .map(|(i, j, c)| (vec![*i, *j], Element::from_coeffs(vec![c[0].clone(), c[1].clone()])));
    MultiLinearOp::normalize(name, 2, 2, field, sym, raw).expect("consistent literal table")
}

fn plane(field: Field) -> AlgebraBundle {
    AlgebraBundle::new(BasisSpace::standard(2), field)
}

fn mul2(field: Field, entries: &[(usize, usize, [i64; 2])]) -> MultiLinearOp {
    op2("mul", field, Symmetry::Symmetric, entries)
}

fn bracket2(field: Field, e2_coeff: i64) -> MultiLinearOp {
    op2("bracket", field, Symmetry::Alternating, &[(0, 1, [0, e2_coeff])])
}

/// Nonabelian entry (d): `e1·e1 = λe1`, `e1·e2 = λe2`, `[e1,e2] = e2`.
pub fn nonabelian_d(field: Field, lambda: &Scalar) -> CatalogEntry {
    let z = field.zero();
    let mul = scaled_op2(
        "mul",
        field,
        Symmetry::Symmetric,
        &[(0, 0, [lambda, &z]), (0, 1, [&z, lambda])],
    );
    CatalogEntry::new(
        "nonabelian-d",
        plane(field).with_op(mul).with_op(bracket2(field, 1)),
        &[Profile::TransposedPoisson],
    )
    .param("lambda", lambda.clone())
}

/// The five transposed Poisson algebras on the 2-dimensional abelian Lie
/// algebra followed by the four on the nonabelian one (λ = 1).
pub fn catalog_2d_transposed(field: Field) -> Vec<CatalogEntry> {
    let tp = [Profile::TransposedPoisson];
    let tp_p = [Profile::TransposedPoisson, Profile::Poisson];
    let abelian = |id: &str, mul: MultiLinearOp| {
        CatalogEntry::new(id, plane(field).with_op(mul).with_op(bracket2(field, 0)), &tp_p)
    };
    let nonabelian = |id: &str, mul: MultiLinearOp| CatalogEntry::new(id, plane(field).with_op(mul).with_op(bracket2(field, 1)), &tp);
    vec![
        abelian("abelian-a", mul2(field, &[])),
        abelian("abelian-b", mul2(field, &[(0, 0, [1, 0]), (1, 1, [0, 1])])),
        abelian("abelian-c", mul2(field, &[(0, 0, [1, 0]), (0, 1, [0, 1])])),
        abelian("abelian-d", mul2(field, &[(0, 0, [1, 0])])),
        abelian("abelian-e", mul2(field, &[(0, 0, [0, 1])])),
        nonabelian("nonabelian-a", mul2(field, &[])),
        nonabelian("nonabelian-b", mul2(field, &[(0, 0, [0, 1])])),
        nonabelian("nonabelian-c", mul2(field, &[(0, 1, [1, 0]), (1, 1, [0, 1])])),
        nonabelian_d(field, &field.one()),
    ]
}

/// Entry `n` (1..=5) of the two-dimensional derivation table, with the
/// stated derivation `D` at parameters `(a, b)` and the stated bracket.
pub fn derivation_entry(field: Field, n: usize, a: &Scalar, b: &Scalar) -> CatalogEntry {
    let z = field.zero();
    let one = field.one();
    let unit = |i: usize, j: usize| {
        let mut flat = vec![z.clone(); 4];
        flat[i * 2 + j] = one.clone();
        LinearMap::from_flat(field, 2, &flat)
    };
    let (mul, stated, d, bracket) = match n {
        1 => (
            mul2(field, &[]),
            vec![unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)],
            LinearMap::from_flat(field, 2, &[a.clone(), z.clone(), b.clone(), z.clone()]),
            bracket2(field, 0),
        ),
        2 => (
            mul2(field, &[(0, 0, [1, 0]), (1, 1, [0, 1])]),
            vec![],
            LinearMap::zero(field, 2),
            bracket2(field, 0),
        ),
        3 => (
            mul2(field, &[(0, 0, [1, 0])]),
            vec![unit(1, 1)],
            unit(1, 1).scale(a),
            bracket2(field, 0),
        ),
        4 => (
            mul2(field, &[(0, 0, [1, 0]), (0, 1, [0, 1])]),
            vec![unit(1, 1)],
            unit(1, 1).scale(a),
            scaled_op2("bracket", field, Symmetry::Alternating, &[(0, 1, [&z, a])]),
        ),
        5 => (
            mul2(field, &[(0, 0, [0, 1])]),
            vec![LinearMap::diagonal(field, &[1, 2]), unit(1, 0)],
            LinearMap::from_flat(field, 2, &[a.clone(), z.clone(), b.clone(), a.add(a)]),
            scaled_op2("bracket", field, Symmetry::Alternating, &[(0, 1, [&z, b])]),
        ),
        _ => panic!("derivation table has entries 1..=5"),
    };
    let bundle = plane(field).with_op(mul).with_op(bracket).with_map("D", d);
    let mut entry = CatalogEntry::new(&format!("der-{n}"), bundle, &[Profile::TransposedPoisson])
        .param("a", a.clone())
        .param("b", b.clone());
    entry.stated_derivations = Some(stated);
    entry
}

/// All five derivation-table entries at `a = b = 1`.
pub fn catalog_2d_derivation_induced(field: Field) -> Vec<CatalogEntry> {
    (1..=5).map(|n| derivation_entry(field, n, &field.one(), &field.one())).collect()
}

/// Pre-Lie product `e1∘e1 = e1`, `e1∘e2 = e2` with `e1·e1 = a e2`.
pub fn prelie_poisson_2d(field: Field, a: &Scalar) -> CatalogEntry {
    let z = field.zero();
    let circ = op2("circ", field, Symmetry::None, &[(0, 0, [1, 0]), (0, 1, [0, 1])]);
    let mul = scaled_op2("mul", field, Symmetry::Symmetric, &[(0, 0, [&z, a])]);
    CatalogEntry::new(
        "prelie-poisson-2d",
        plane(field).with_op(mul).with_op(circ),
        &[Profile::PreLiePoisson],
    )
    .param("a", a.clone())
}

pub fn prelie_poisson_2d_example() -> CatalogEntry {
    prelie_poisson_2d(Field::Rational, &Field::Rational.one())
}

/// `k[x1..xn]/(x1^c1, .., xn^cn)` with the truncated product and the Euler
/// derivations `E_xi = xi ∂/∂xi`, named `E_<var>`.
///
/// Basis monomials are ordered with the first variable's exponent varying
/// fastest: for `k[x,y]/(x²,y²)` the basis is `1, x, y, x*y`.
pub fn truncated_polynomial_algebra(field: Field, vars: &[&str], caps: &[usize]) -> Result<AlgebraBundle, String> {
    if vars.is_empty() {
        return Err("need at least one variable".into());
    }
    if vars.len() != caps.len() {
        return Err(format!("{} variables but {} caps", vars.len(), caps.len()));
    }
    if let Some(c) = caps.iter().find(|&&c| c < 2) {
        return Err(format!("caps must be at least 2, got {c}"));
    }
    let dim: usize = caps.iter().product();
    let exps = |mut k: usize| -> Vec<usize> {
        caps.iter()
            .map(|&c| {
                let x = k % c;
                k /= c;
                x
            })
            .collect()
    };
    let index = |ex: &[usize]| -> Option<usize> {
        let mut k = 0;
        for (&x, &c) in ex.iter().zip(caps).rev() {
            if x >= c {
                return None;
            }
            k = k * c + x;
        }
        Some(k)
    };
    let labels: Vec<String> = (0..dim)
        .map(|k| {
            let parts: Vec<String> = exps(k)
                .iter()
                .zip(vars)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, v)| if x == 1 { v.to_string() } else { format!("{v}^{x}") })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let space = BasisSpace::new(labels).map_err(|e| e.to_string())?;
    let mul = MultiLinearOp::from_fn("mul", 2, dim, field, Symmetry::Symmetric, |k| {
        let (a, b) = (exps(k[0]), exps(k[1]));
        let sum: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        match index(&sum) {
            Some(i) => Element::basis(field, dim, i),
            None => Element::zero(field, dim),
        }
    });
    let mut bundle = AlgebraBundle::new(space, field).with_op(mul);
    for (v, var) in vars.iter().enumerate() {
        let diag: Vec<i64> = (0..dim).map(|k| exps(k)[v] as i64).collect();
        bundle
            .add_map(format!("E_{var}"), LinearMap::diagonal(field, &diag))
            .map_err(|e| e.to_string())?;
    }
    let desc: Vec<String> = vars.iter().zip(caps).map(|(v, c)| format!("{v}^{c}")).collect();
    Ok(bundle.with_meta("truncated", &desc.join(",")))
}

/// Derived examples built from truncated polynomial algebras.
fn polynomial_entries() -> Vec<CatalogEntry> {
    let q = Field::Rational;
    let mut out = Vec::new();

    let x3 = truncated_polynomial_algebra(q, &["x"], &[3]).expect("valid");
    let ex = x3.map("E_x").expect("Euler map").clone();
    let br = constructions::derivation_bracket(x3.op("mul").expect("mul"), &ex).expect("Euler map is a derivation");
    out.push(CatalogEntry::new(
        "poly-x3-euler",
        x3.with_op(br),
        &[Profile::TransposedPoisson],
    ));

    let xy = truncated_polynomial_algebra(q, &["x", "y"], &[2, 2]).expect("valid");
    let (dx, dy) = (xy.map("E_x").expect("E_x").clone(), xy.map("E_y").expect("E_y").clone());
    let mul = xy.op("mul").expect("mul").clone();
    let br = constructions::two_derivation_bracket(&mul, &dx, &dy).expect("commuting derivations");
    out.push(CatalogEntry::new(
        "poly-xy-strong",
        xy.with_op(br),
        &[Profile::Poisson, Profile::StrongPoisson],
    ));

    let xyz = truncated_polynomial_algebra(q, &["x", "y", "z"], &[2, 2, 2]).expect("valid");
    let mul = xyz.op("mul").expect("mul").clone();
    let id = LinearMap::identity(q, 8);
    let (ex, ey, ez) = (
        xyz.map("E_x").expect("E_x").clone(),
        xyz.map("E_y").expect("E_y").clone(),
        xyz.map("E_z").expect("E_z").clone(),
    );
    let mu3 = constructions::wedge_bracket(&[&id, &ex, &ey], &mul).expect("commuting Euler maps");
    out.push(CatalogEntry::new(
        "ladder-xyz",
        xyz.with_op(mu3).with_map("D", ez),
        &[Profile::Tpa3Lie],
    ));
    out
}

/// Every catalog entry over the rationals, in a fixed order.
pub fn all_entries() -> Vec<CatalogEntry> {
    let q = Field::Rational;
    let mut v = catalog_2d_transposed(q);
    v.extend(catalog_2d_derivation_induced(q));
    v.push(prelie_poisson_2d_example());
    v.extend(polynomial_entries());
    v
}

pub fn entry(id: &str) -> Option<CatalogEntry> {
    all_entries().into_iter().find(|e| e.id == id)
}

/// Basis-independent integers distinguishing algebras with a product `mul`
/// and a bracket `bracket`:
/// `[dim L·L, dim [L,L], dim Ann(mul), dim Z(bracket), dim Der(mul, bracket),
/// rank of (x, y) ↦ tr(L_x L_y)]`.
pub fn invariant_fingerprint(bundle: &AlgebraBundle) -> Result<Vec<usize>, String> {
    let mul = bundle.op("mul").ok_or("no op named \"mul\"")?;
    let bracket = bundle.op("bracket").ok_or("no op named \"bracket\"")?;
    if mul.arity() != 2 || bracket.arity() != 2 {
        return Err("fingerprints need binary ops".into());
    }
    let (f, d) = (bundle.field(), bundle.dim());
    let products = |op: &MultiLinearOp| -> Vec<Element> {
        (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| op.eval_basis(&[i, j])).collect()
    };
    // x ↦ (x∘e_1, .., x∘e_d) as a matrix; its kernel is the annihilator
    let kernel_dim = |op: &MultiLinearOp| -> usize {
        let mut m = Matrix::new(f, d);
        for j in 0..d {
            for k in 0..d {
                m.push_row((0..d).map(|i| op.eval_basis(&[i, j]).coeff(k).clone()).collect());
            }
        }
        d - m.rank()
    };
    let left: Vec<LinearMap> = (0..d)
        .map(|i| constructions::left_multiplication(mul, &Element::basis(f, d, i)))
        .collect();
    let mut form = Matrix::new(f, d);
    for i in 0..d {
        form.push_row((0..d).map(|j| left[i].compose(&left[j]).trace()).collect());
    }
    let der = linalg::derivation_space(bundle, &["mul", "bracket"]).map_err(|e| e.to_string())?;
    Ok(vec![
        span_dim(f, d, &products(mul)),
        span_dim(f, d, &products(bracket)),
        kernel_dim(mul),
        kernel_dim(bracket),
        der.dimension(),
        form.rank(),
    ])
}

/// Does the solver's derivation space equal the span of the stated maps?
pub fn derivations_match(space: &SolutionSpace, stated: &[LinearMap]) -> bool {
    let stated_dim = {
        let mut m = Matrix::new(space.field, space.ambient.unknowns());
        for s in stated {
            m.push_row(s.to_flat());
        }
        m.rank()
    };
    stated_dim == space.dimension() && stated.iter().all(|s| space.contains(&s.to_flat()))
}
