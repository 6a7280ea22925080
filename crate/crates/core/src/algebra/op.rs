//! Multilinear operations stored as sparse structure constants.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;


use super::{AlgebraError, Element, Field};

/// How an operation behaves under permutation of its arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    None,
    Symmetric,
    Alternating,
}

impl Symmetry {
    pub fn as_str(self) -> &'static str {
        match self {
            Symmetry::None => "none",
            Symmetry::Symmetric => "symmetric",
            Symmetry::Alternating => "alternating",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" => Some(Symmetry::None),
            "symmetric" => Some(Symmetry::Symmetric),
            "alternating" => Some(Symmetry::Alternating),
            _ => None,
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Canonical form of a key under a symmetry: the sorted key and whether the
/// value picks up a minus sign. `None` means the key evaluates to zero
/// (repeated index of an alternating op).
pub(crate) fn canonical_key(sym: Symmetry, key: &[usize]) -> Option<(Vec<usize>, bool)> {
    match sym {
        Symmetry::None => Some((key.to_vec(), false)),
        Symmetry::Symmetric => {
            let mut k = key.to_vec();
            k.sort_unstable();
            Some((k, false))
        }
        Symmetry::Alternating => {
            let mut k = key.to_vec();
            let mut odd = false;
            // insertion sort, counting transpositions
            for i in 1..k.len() {
                let mut j = i;
                while j > 0 && k[j - 1] > k[j] {
                    k.swap(j - 1, j);
                    odd = !odd;
                    j -= 1;
                }
            }
            if k.windows(2).any(|w| w[0] == w[1]) {
                None
            } else {
                Some((k, odd))
            }
        }
    }
}

fn is_canonical(sym: Symmetry, key: &[usize]) -> bool {
    match sym {
        Symmetry::None => true,
        Symmetry::Symmetric => key.windows(2).all(|w| w[0] <= w[1]),
        Symmetry::Alternating => key.windows(2).all(|w| w[0] < w[1]),
    }
}

/// An arity-k multilinear map `L^k -> L` on a based space.
///
/// Only canonical keys are stored (non-decreasing for symmetric ops, strictly
/// increasing for alternating ones) and only nonzero values are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiLinearOp {
    name: String,
    arity: usize,
    dim: usize,
    field: Field,
    symmetry: Symmetry,
    table: BTreeMap<Vec<usize>, Element>,
}

impl MultiLinearOp {
    /// The zero operation.
    pub fn zero(name: impl Into<String>, arity: usize, dim: usize, field: Field, symmetry: Symmetry) -> Self {
        assert!(arity >= 1 && dim >= 1);
        MultiLinearOp {
            name: name.into(),
            arity,
            dim,
            field,
            symmetry,
            table: BTreeMap::new(),
        }
    }

    /// Canonicalize an arbitrary table.
    ///
    /// Keys are sorted (with the permutation sign folded in for alternating
    /// ops). Entries that land on the same canonical key must agree, and an
    /// alternating op may not carry a nonzero value on a repeated index.
    pub fn normalize(
        name: impl Into<String>,
        arity: usize,
        dim: usize,
        field: Field,
        symmetry: Symmetry,
        raw: impl IntoIterator<Item = (Vec<usize>, Element)>,
    ) -> Result<Self, AlgebraError> {
        let name = name.into();
        if arity == 0 {
            return Err(AlgebraError::ZeroArity);
        }
        let mut given: BTreeMap<Vec<usize>, (Vec<usize>, Element)> = BTreeMap::new();
        for (key, value) in raw {
            if key.len() != arity {
                return Err(AlgebraError::ArityMismatch {
                    op: name,
                    expected: arity,
                    found: key.len(),
                });
            }
            if let Some(&bad) = key.iter().find(|&&i| i >= dim) {
                return Err(AlgebraError::IndexOutOfRange { index: bad, dim });
            }
            value.check_dim(dim)?;
            if value.field() != field {
                return Err(AlgebraError::FieldMismatch);
            }
            let Some((canon, negate)) = canonical_key(symmetry, &key) else {
                if !value.is_zero() {
                    return Err(AlgebraError::AlternatingDiagonal { op: name, key });
                }
                continue;
            };
            let value = if negate { value.neg() } else { value };
            match given.entry(canon) {
                Entry::Vacant(v) => {
                    v.insert((key, value));
                }
                Entry::Occupied(o) => {
                    let (first_key, first) = o.get();
                    if *first != value {
                        return Err(AlgebraError::InconsistentSymmetry {
                            op: name,
                            first: first_key.clone(),
                            second: key,
                        });
                    }
                }
            }
        }
        let table = given
            .into_iter()
            .filter(|(_, (_, v))| !v.is_zero())
            .map(|(k, (_, v))| (k, v))
            .collect();
        Ok(MultiLinearOp {
            name,
            arity,
            dim,
            field,
            symmetry,
            table,
        })
    }

    /// Build from a function on canonical basis tuples.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        dim: usize,
        field: Field,
        symmetry: Symmetry,
        mut f: impl FnMut(&[usize]) -> Element,
    ) -> Self {
        let mut op = MultiLinearOp::zero(name, arity, dim, field, symmetry);
        for key in tuples(dim, arity) {
            if !is_canonical(symmetry, &key) {
                continue;
            }
            let v = f(&key);
            debug_assert_eq!(v.dim(), dim);
            if !v.is_zero() {
                op.table.insert(key, v);
            }
        }
        op
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Stored (canonical, nonzero) entries.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Element)> {
        self.table.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Value on a tuple of basis vectors.
    pub fn eval_basis(&self, key: &[usize]) -> Element {
        assert_eq!(key.len(), self.arity);
        match canonical_key(self.symmetry, key) {
            None => Element::zero(self.field, self.dim),
            Some((k, negate)) => match self.table.get(&k) {
                None => Element::zero(self.field, self.dim),
                Some(v) if negate => v.neg(),
                Some(v) => v.clone(),
            },
        }
    }

    /// Multilinear extension of the structure constants.
    pub fn evaluate(&self, args: &[&Element]) -> Result<Element, AlgebraError> {
        if args.len() != self.arity {
            return Err(AlgebraError::ArityMismatch {
                op: self.name.clone(),
                expected: self.arity,
                found: args.len(),
            });
        }
        for a in args {
            a.check_dim(self.dim)?;
            if a.field() != self.field {
                return Err(AlgebraError::FieldMismatch);
            }
        }
        Ok(self.eval_unchecked(args))
    }

    pub(crate) fn eval_unchecked(&self, args: &[&Element]) -> Element {
        let mut out = Element::zero(self.field, self.dim);
        if self.table.is_empty() {
            return out;
        }
        let supports: Vec<Vec<usize>> = args.iter().map(|a| a.support().collect()).collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut key = vec![0usize; self.arity];
        let mut pos = vec![0usize; self.arity];
        loop {
            let mut coeff = self.field.one();
            for (slot, &p) in pos.iter().enumerate() {
                key[slot] = supports[slot][p];
                coeff = coeff.mul(args[slot].coeff(key[slot]));
            }
            if let Some((k, negate)) = canonical_key(self.symmetry, &key) {
                if let Some(v) = self.table.get(&k) {
                    let c = if negate { coeff.neg() } else { coeff };
                    out.add_scaled(&c, v);
                }
            }
            // odometer over the supports
            let mut slot = self.arity;
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                pos[slot] += 1;
                if pos[slot] < supports[slot].len() {
                    break;
                }
                pos[slot] = 0;
            }
        }
    }

    /// Relabel the basis: old basis vector `i` becomes new basis vector `perm[i]`.
    pub fn permute_basis(&self, perm: &[usize]) -> MultiLinearOp {
        let raw = self.table.iter().map(|(k, v)| {
            let key: Vec<usize> = k.iter().map(|&i| perm[i]).collect();
            (key, permute_element(v, perm))
        });
        MultiLinearOp::normalize(self.name.clone(), self.arity, self.dim, self.field, self.symmetry, raw)
            .expect("relabeling preserves consistency")
    }

    /// The same operation with a different (weaker or stronger) symmetry tag.
    /// Fails if the values are inconsistent with the requested tag.
    pub fn retag(&self, symmetry: Symmetry) -> Result<MultiLinearOp, AlgebraError> {
        let raw: Vec<(Vec<usize>, Element)> = tuples(self.dim, self.arity)
            .map(|k| {
                let v = self.eval_basis(&k);
                (k, v)
            })
            .collect();
        MultiLinearOp::normalize(self.name.clone(), self.arity, self.dim, self.field, symmetry, raw)
    }

    /// True when both ops agree on every basis tuple (names and tags ignored).
    pub fn same_values(&self, other: &MultiLinearOp) -> bool {
        self.arity == other.arity
            && self.dim == other.dim
            && tuples(self.dim, self.arity).all(|k| self.eval_basis(&k) == other.eval_basis(&k))
    }
}

pub(crate) fn permute_element(v: &Element, perm: &[usize]) -> Element {
    let mut coeffs = vec![v.field().zero(); v.dim()];
    for (i, c) in v.coeffs().iter().enumerate() {
        coeffs[perm[i]] = c.clone();
    }
    Element::from_coeffs(coeffs)
}

/// All `len`-tuples over `0..dim` in lexicographic order.
pub fn tuples(dim: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.checked_pow(len as u32).expect("tuple count overflow");
    (0..total).map(move |mut n| {
        let mut t = vec![0; len];
        for slot in (0..len).rev() {
            t[slot] = n % dim;
            n /= dim;
        }
        t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn e(i: usize) -> Element {
        Element::basis(q(), 2, i)
    }

    #[test]
    fn symmetric_key_canonicalization() {
        let w = Element::from_i64s(q(), &[3, -1]);
        let op = MultiLinearOp::normalize("mul", 2, 2, q(), Symmetry::Symmetric, [(vec![1, 0], w.clone())]).unwrap();
        assert_eq!(op.entries().collect::<Vec<_>>(), vec![(&[0usize, 1][..], &w)]);
        assert_eq!(op.eval_basis(&[1, 0]), w);
    }

    #[test]
    fn alternating_sign_folding() {
        let w = Element::from_i64s(q(), &[0, 1]);
        let op = MultiLinearOp::normalize("br", 2, 2, q(), Symmetry::Alternating, [(vec![1, 0], w.clone())]).unwrap();
        assert_eq!(op.eval_basis(&[0, 1]), w.neg());
        assert_eq!(op.eval_basis(&[1, 0]), w);
        assert!(op.eval_basis(&[1, 1]).is_zero());
    }

    #[test]
    fn inconsistent_symmetric_table_is_rejected() {
        let raw = [(vec![0, 1], e(0)), (vec![1, 0], e(1))];
        let err = MultiLinearOp::normalize("mul", 2, 2, q(), Symmetry::Symmetric, raw).unwrap_err();
        assert!(matches!(err, AlgebraError::InconsistentSymmetry { .. }));
        // explicit zero against a nonzero partner is also inconsistent
        let raw = [(vec![0, 1], e(0)), (vec![1, 0], Element::zero(q(), 2))];
        assert!(MultiLinearOp::normalize("mul", 2, 2, q(), Symmetry::Symmetric, raw).is_err());
    }

    #[test]
    fn alternating_diagonal_is_rejected() {
        let err = MultiLinearOp::normalize("br", 2, 2, q(), Symmetry::Alternating, [(vec![0, 0], e(1))]).unwrap_err();
        assert!(matches!(err, AlgebraError::AlternatingDiagonal { .. }));
        // a zero diagonal entry is harmless
        assert!(MultiLinearOp::normalize("br", 2, 2, q(), Symmetry::Alternating, [(vec![0, 0], Element::zero(q(), 2))]).is_ok());
    }

    #[test]
    fn consistent_alternating_pair_is_accepted() {
        let raw = [(vec![0, 1], e(1)), (vec![1, 0], e(1).neg())];
        let op = MultiLinearOp::normalize("br", 2, 2, q(), Symmetry::Alternating, raw).unwrap();
        assert_eq!(op.entries().count(), 1);
    }

    #[test]
    fn evaluate_checks_arity_and_dimension() {
        let op = MultiLinearOp::zero("mul", 2, 2, q(), Symmetry::Symmetric);
        assert!(matches!(op.evaluate(&[&e(0)]), Err(AlgebraError::ArityMismatch { .. })));
        let big = Element::basis(q(), 3, 0);
        assert!(matches!(op.evaluate(&[&e(0), &big]), Err(AlgebraError::DimensionMismatch { .. })));
    }

    #[test]
    fn alternating_vanishes_on_repeated_argument() {
        let raw = [(vec![0, 1], Element::from_i64s(q(), &[2, 5]))];
        let op = MultiLinearOp::normalize("br", 2, 2, q(), Symmetry::Alternating, raw).unwrap();
        let v = Element::from_i64s(q(), &[3, -7]);
        assert!(op.evaluate(&[&v, &v]).unwrap().is_zero());
    }

    #[test]
    fn zero_argument_gives_zero() {
        let raw = [(vec![0, 0], e(0)), (vec![0, 1], e(1))];
        let op = MultiLinearOp::normalize("m", 2, 2, q(), Symmetry::None, raw).unwrap();
        let z = Element::zero(q(), 2);
        assert!(op.evaluate(&[&z, &e(0)]).unwrap().is_zero());
    }

    #[test]
    fn tuples_are_lexicographic() {
        let all: Vec<_> = tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
