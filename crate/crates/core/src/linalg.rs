//! Exact Gaussian elimination and the linear systems built on it: derivation
//! spaces and spaces of compatible commutative products.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraBundle, Element, Field, LinearMap, MultiLinearOp, Scalar, Symmetry};
use crate::axioms::{self, Axiom, AxiomError, Binding, CheckOptions, Role, Roles};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("no op named {0:?}")]
    UnknownOp(String),
    #[error("op {name:?} has arity {arity}; only bilinear ops are supported here")]
    NotBilinear { name: String, arity: usize },
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateLength { expected: usize, found: usize },
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
}

/// A dense matrix of exact scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn new(field: Field, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { field, cols, rows }
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols);
        if row.iter().any(|s| !s.is_zero()) {
            self.rows.push(row);
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduce in place to reduced row-echelon form; returns pivot columns.
    /// Pivots are the first nonzero entry found scanning down each column.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inverse().expect("nonzero pivot");
            for x in self.rows[r].iter_mut() {
                *x = x.mul(&inv);
            }
            let pivot_row = self.rows[r].clone();
            for i in 0..self.rows.len() {
                if i == r || self.rows[i][c].is_zero() {
                    continue;
                }
                let factor = self.rows[i][c].clone();
                for (x, p) in self.rows[i].iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        *x = x.sub(&factor.mul(p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`, in reduced row-echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in m.rows.iter().zip(&pivots) {
                v[pc] = row[free].neg();
            }
            basis.push(v);
        }
        echelon_basis(self.field, self.cols, basis)
    }
}

/// Reduced row-echelon basis of the span of `vectors`.
pub fn echelon_basis(field: Field, len: usize, vectors: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut m = Matrix::new(field, len);
    for v in vectors {
        m.push_row(v);
    }
    m.rref();
    m.rows
}

/// Dimension of the span of some elements.
pub fn span_dim<'a>(field: Field, dim: usize, elems: impl IntoIterator<Item = &'a Element>) -> usize {
    let mut m = Matrix::new(field, dim);
    for e in elems {
        m.push_row(e.coeffs().to_vec());
    }
    m.rank()
}

/// What the coordinates of a solution vector mean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ambient {
    /// Entries of a `dim × dim` matrix, row-major.
    MapEntries { dim: usize },
    /// Structure constants of a symmetric bilinear op: pairs `i ≤ j` in
    /// lexicographic order, then output coordinate `k`.
    SymmetricProduct { dim: usize },
}

impl Ambient {
    pub fn unknowns(&self) -> usize {
        match *self {
            Ambient::MapEntries { dim } => dim * dim,
            Ambient::SymmetricProduct { dim } => dim * dim * (dim + 1) / 2,
        }
    }

    fn dim(&self) -> usize {
        match *self {
            Ambient::MapEntries { dim } | Ambient::SymmetricProduct { dim } => dim,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::MapEntries { dim } => write!(f, "entries of {dim}x{dim} matrices"),
            Ambient::SymmetricProduct { dim } => write!(f, "symmetric products on a {dim}-dimensional space"),
        }
    }
}

/// The solution set of a homogeneous linear system, with an echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    pub ambient: Ambient,
    pub field: Field,
    pub basis: Vec<Vec<Scalar>>,
}

impl SolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `Σ coords[i] · basis[i]`.
    pub fn combine(&self, coords: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if coords.len() != self.basis.len() {
            return Err(LinalgError::CoordinateLength {
                expected: self.basis.len(),
                found: coords.len(),
            });
        }
        let mut v = vec![self.field.zero(); self.ambient.unknowns()];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x = x.add(&c.mul(y));
            }
        }
        Ok(v)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside
    /// the space.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient.unknowns() {
            return None;
        }
        // In an echelon basis the coordinate on basis[i] is v at basis[i]'s pivot.
        let coords: Vec<Scalar> = self
            .basis
            .iter()
            .map(|b| {
                let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
                v[p].clone()
            })
            .collect();
        (self.combine(&coords).ok()? == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Basis members as linear maps (for `MapEntries`).
    pub fn maps(&self) -> Vec<LinearMap> {
        let d = self.ambient.dim();
        self.basis.iter().map(|v| LinearMap::from_flat(self.field, d, v)).collect()
    }

    /// Basis members as symmetric ops (for `SymmetricProduct`).
    pub fn ops(&self, name: &str) -> Vec<MultiLinearOp> {
        let d = self.ambient.dim();
        self.basis.iter().map(|v| product_from_vector(name, self.field, d, v)).collect()
    }

    pub fn map_at(&self, coords: &[Scalar]) -> Result<LinearMap, LinalgError> {
        Ok(LinearMap::from_flat(self.field, self.ambient.dim(), &self.combine(coords)?))
    }

    pub fn op_at(&self, name: &str, coords: &[Scalar]) -> Result<MultiLinearOp, LinalgError> {
        Ok(product_from_vector(name, self.field, self.ambient.dim(), &self.combine(coords)?))
    }
}

fn symmetric_pairs(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |i| (i..dim).map(move |j| (i, j)))
}

/// Symmetric op from its structure-constant vector.
pub fn product_from_vector(name: &str, field: Field, dim: usize, v: &[Scalar]) -> MultiLinearOp {
    assert_eq!(v.len(), dim * dim * (dim + 1) / 2);
    let raw: Vec<(Vec<usize>, Element)> = symmetric_pairs(dim)
        .enumerate()
        .map(|(n, (i, j))| (vec![i, j], Element::from_coeffs(v[n * dim..(n + 1) * dim].to_vec())))
        .collect();
    MultiLinearOp::normalize(name, 2, dim, field, Symmetry::Symmetric, raw).expect("canonical keys")
}

/// Structure-constant vector of a bilinear op, read on pairs `i ≤ j`.
pub fn product_to_vector(op: &MultiLinearOp) -> Vec<Scalar> {
    let d = op.dim();
    symmetric_pairs(d)
        .flat_map(|(i, j)| op.eval_basis(&[i, j]).coeffs().to_vec())
        .collect()
}

/// Kernel of a linear function of the unknowns, sampled on unit vectors.
fn kernel_of(field: Field, unknowns: usize, mut column: impl FnMut(usize) -> Result<Vec<Scalar>, LinalgError>) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    let cols: Vec<Vec<Scalar>> = (0..unknowns).map(&mut column).collect::<Result<_, _>>()?;
    let rows = cols.first().map_or(0, Vec::len);
    let mut m = Matrix::new(field, unknowns);
    for r in 0..rows {
        m.push_row(cols.iter().map(|c| c[r].clone()).collect());
    }
    Ok(m.nullspace())
}

fn unit_map(field: Field, dim: usize, n: usize) -> LinearMap {
    let mut flat = vec![field.zero(); dim * dim];
    flat[n] = field.one();
    LinearMap::from_flat(field, dim, &flat)
}

fn bilinear_ops<'a>(bundle: &'a AlgebraBundle, names: &[&str]) -> Result<Vec<&'a MultiLinearOp>, LinalgError> {
    names
        .iter()
        .map(|&n| {
            let op = bundle.op(n).ok_or_else(|| LinalgError::UnknownOp(n.to_string()))?;
            if op.arity() != 2 {
                return Err(LinalgError::NotBilinear {
                    name: n.to_string(),
                    arity: op.arity(),
                });
            }
            Ok(op)
        })
        .collect()
}

/// All maps that are derivations of every listed bilinear op.
pub fn derivation_space(bundle: &AlgebraBundle, op_names: &[&str]) -> Result<SolutionSpace, LinalgError> {
    joint_derivation_space(bundle, op_names, None)
}

/// Common derivations of the listed ops, optionally restricted to those
/// commuting with a given map.
pub fn joint_derivation_space(
    bundle: &AlgebraBundle,
    op_names: &[&str],
    commuting_with: Option<&LinearMap>,
) -> Result<SolutionSpace, LinalgError> {
    let ops = bilinear_ops(bundle, op_names)?;
    derivations_of_ops(bundle.field(), bundle.dim(), &ops, commuting_with)
}

/// Derivations of arbitrary multilinear ops (any arity) on a common space.
pub fn derivations_of_ops(
    field: Field,
    dim: usize,
    ops: &[&MultiLinearOp],
    commuting_with: Option<&LinearMap>,
) -> Result<SolutionSpace, LinalgError> {
    if let Some(m) = commuting_with {
        if m.dim() != dim || m.field() != field {
            return Err(LinalgError::Mismatch("commuting map lives on a different space".into()));
        }
    }
    let basis = kernel_of(field, dim * dim, |n| {
        let d = unit_map(field, dim, n);
        let mut col = Vec::new();
        for &op in ops {
            let roles = Roles::new(field, dim).with_op(Role::Op, op)?.with_map(Role::Map, &d)?;
            col.extend(axioms::defect_vector(Axiom::DerivationOf, &roles)?);
        }
        if let Some(m) = commuting_with {
            col.extend(d.compose(m).sub(&m.compose(&d)).to_flat());
        }
        Ok(col)
    })?;
    Ok(SolutionSpace {
        ambient: Ambient::MapEntries { dim },
        field,
        basis,
    })
}

/// Which compatibility rule ties the unknown product to the bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductRule {
    TransposedLeibniz,
    Leibniz,
}

impl ProductRule {
    pub fn axiom(self) -> Axiom {
        match self {
            ProductRule::TransposedLeibniz => Axiom::TransposedLeibniz,
            ProductRule::Leibniz => Axiom::Leibniz,
        }
    }

    pub fn parse(s: &str) -> Option<ProductRule> {
        match s.replace('-', "_").as_str() {
            "transposed" | "transposed_leibniz" => Some(ProductRule::TransposedLeibniz),
            "leibniz" => Some(ProductRule::Leibniz),
            _ => None,
        }
    }
}

/// All symmetric bilinear products satisfying `rule` against a fixed
/// alternating bracket.
pub fn compatible_symmetric_products(bracket: &MultiLinearOp, rule: ProductRule) -> Result<SolutionSpace, LinalgError> {
    let (field, dim) = (bracket.field(), bracket.dim());
    let ambient = Ambient::SymmetricProduct { dim };
    let basis = kernel_of(field, ambient.unknowns(), |n| {
        let mut unit = vec![field.zero(); ambient.unknowns()];
        unit[n] = field.one();
        let mul = product_from_vector("mul", field, dim, &unit);
        let roles = Roles::new(field, dim)
            .with_op(Role::Mul, &mul)?
            .with_op(Role::Bracket, bracket)?;
        Ok(axioms::defect_vector(rule.axiom(), &roles)?)
    })?;
    Ok(SolutionSpace { ambient, field, basis })
}

/// Instantiate each sample and keep the associative ones.
pub fn filter_associative(space: &SolutionSpace, samples: &[Vec<Scalar>]) -> Result<Vec<(Vec<Scalar>, MultiLinearOp)>, LinalgError> {
    if !matches!(space.ambient, Ambient::SymmetricProduct { .. }) {
        return Err(LinalgError::Mismatch("associativity filtering needs a product space".into()));
    }
    let mut kept = Vec::new();
    for s in samples {
        let op = space.op_at("mul", s)?;
        let roles = Roles::new(space.field, op.dim()).with_op(Role::Mul, &op)?;
        if axioms::check_roles(Axiom::Associativity, &roles, CheckOptions::default())?.holds {
            kept.push((s.clone(), op));
        }
    }
    Ok(kept)
}

/// Re-check every basis member of a derivation space with the axiom engine.
pub fn verify_derivations(bundle: &AlgebraBundle, op_names: &[&str], space: &SolutionSpace) -> Result<bool, LinalgError> {
    for d in space.maps() {
        let mut b = bundle.clone();
        b.set_map("__D", d).map_err(|e| LinalgError::Mismatch(e.to_string()))?;
        for &n in op_names {
            let binding = Binding::new().bind(Role::Op, n).bind(Role::Map, "__D");
            if !axioms::check_identity(&b, Axiom::DerivationOf, &binding)?.holds {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_and_nullspace() {
        let f = q();
        let row = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let m = Matrix::from_rows(f, 3, vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns, vec![row(&[1, 1, -1])]);
    }

    #[test]
    fn coordinates_round_trip() {
        let f = q();
        let row = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let space = SolutionSpace {
            ambient: Ambient::MapEntries { dim: 2 },
            field: f,
            basis: echelon_basis(f, 4, vec![row(&[1, 0, 0, 2]), row(&[0, 1, 0, 0])]),
        };
        assert_eq!(space.coordinates_of(&row(&[3, -1, 0, 6])), Some(row(&[3, -1])));
        assert_eq!(space.coordinates_of(&row(&[0, 0, 1, 0])), None);
    }

    #[test]
    fn product_vector_round_trip() {
        let f = q();
        let v: Vec<Scalar> = (1..=6).map(|x| f.from_i64(x)).collect();
        let op = product_from_vector("m", f, 2, &v);
        assert_eq!(product_to_vector(&op), v);
        assert_eq!(op.eval_basis(&[1, 0]), Element::from_i64s(f, &[3, 4]));
    }
}
