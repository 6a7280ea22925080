use super::op::permute_element;
use super::{AlgebraError, Element, Field, Scalar};

/// A square matrix acting on column coordinate vectors: column `j` is the
/// image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    field: Field,
    rows: Vec<Vec<Scalar>>,
}

impl LinearMap {
    pub fn zero(field: Field, dim: usize) -> Self {
        LinearMap {
            field,
            rows: vec![vec![field.zero(); dim]; dim],
        }
    }

    pub fn identity(field: Field, dim: usize) -> Self {
        let mut m = LinearMap::zero(field, dim);
        for i in 0..dim {
            m.rows[i][i] = field.one();
        }
        m
    }

    /// From row-major entries.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(AlgebraError::EmptyBasis);
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(AlgebraError::NotSquare { rows: dim, cols: r.len() });
        }
        let field = rows[0][0].field();
        if rows.iter().flatten().any(|s| s.field() != field) {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(LinearMap { field, rows })
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        LinearMap::from_rows(rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
            .expect("square integer matrix")
    }

    /// From the images of the basis vectors.
    pub fn from_columns(columns: &[Element]) -> Result<Self, AlgebraError> {
        let dim = columns.len();
        if dim == 0 {
            return Err(AlgebraError::EmptyBasis);
        }
        for c in columns {
            c.check_dim(dim)?;
        }
        let field = columns[0].field();
        let rows = (0..dim)
            .map(|i| columns.iter().map(|c| c.coeff(i).clone()).collect())
            .collect();
        Ok(LinearMap { field, rows })
    }

    /// Diagonal map with the given integer entries.
    pub fn diagonal(field: Field, diag: &[i64]) -> Self {
        let mut m = LinearMap::zero(field, diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.rows[i][i] = field.from_i64(d);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Image of basis vector `j`.
    pub fn column(&self, j: usize) -> Element {
        Element::from_coeffs(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn apply(&self, v: &Element) -> Result<Element, AlgebraError> {
        v.check_dim(self.dim())?;
        if v.field() != self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &Element) -> Element {
        let support: Vec<usize> = v.support().collect();
        let coeffs = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for &j in &support {
                    if !row[j].is_zero() {
                        acc += &row[j].mul(v.coeff(j));
                    }
                }
                acc
            })
            .collect();
        Element::from_coeffs(coeffs)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.dim(), other.dim());
        let cols: Vec<Element> = (0..self.dim()).map(|j| self.apply_unchecked(&other.column(j))).collect();
        LinearMap::from_columns(&cols).expect("square")
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &Scalar) -> LinearMap {
        LinearMap {
            field: self.field,
            rows: self.rows.iter().map(|r| r.iter().map(|x| x.mul(s)).collect()).collect(),
        }
    }

    fn zip_with(&self, other: &LinearMap, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> LinearMap {
        assert_eq!(self.dim(), other.dim());
        LinearMap {
            field: self.field,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearMap::identity(self.field, self.dim())
    }

    /// `self·other − other·self == 0`.
    pub fn commutes_with(&self, other: &LinearMap) -> bool {
        self.compose(other) == other.compose(self)
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.dim() {
            t += &self.rows[i][i];
        }
        t
    }

    /// Row-major flattening, entry `(i, j)` at `i * dim + j`.
    pub fn to_flat(&self) -> Vec<Scalar> {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn from_flat(field: Field, dim: usize, flat: &[Scalar]) -> LinearMap {
        assert_eq!(flat.len(), dim * dim);
        LinearMap {
            field,
            rows: flat.chunks(dim).map(|c| c.to_vec()).collect(),
        }
    }

    /// Relabel the basis: old basis vector `i` becomes new basis vector `perm[i]`.
    pub fn permute_basis(&self, perm: &[usize]) -> LinearMap {
        let dim = self.dim();
        let mut cols = vec![Element::zero(self.field, dim); dim];
        for j in 0..dim {
            cols[perm[j]] = permute_element(&self.column(j), perm);
        }
        LinearMap::from_columns(&cols).expect("square")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let q = Field::Rational;
        let v = Element::from_i64s(q, &[1, -2, 5]);
        assert_eq!(LinearMap::identity(q, 3).apply(&v).unwrap(), v);
        assert!(LinearMap::zero(q, 3).apply(&v).unwrap().is_zero());
    }

    #[test]
    fn column_convention() {
        let q = Field::Rational;
        // D(e1) = e1 + 3 e2, D(e2) = 2 e2
        let d = LinearMap::from_i64_rows(q, &[&[1, 0], &[3, 2]]);
        assert_eq!(d.apply(&Element::basis(q, 2, 0)).unwrap(), Element::from_i64s(q, &[1, 3]));
        assert_eq!(d.column(1), Element::from_i64s(q, &[0, 2]));
    }

    #[test]
    fn dimension_mismatch() {
        let q = Field::Rational;
        let d = LinearMap::identity(q, 2);
        assert!(matches!(
            d.apply(&Element::basis(q, 3, 0)),
            Err(AlgebraError::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(matches!(
            LinearMap::from_rows(vec![vec![q.one(), q.one()]]),
            Err(AlgebraError::NotSquare { .. })
        ));
    }

    #[test]
    fn compose_matches_sequential_application() {
        let q = Field::Rational;
        let a = LinearMap::from_i64_rows(q, &[&[1, 2], &[0, 1]]);
        let b = LinearMap::from_i64_rows(q, &[&[0, 1], &[1, 0]]);
        let v = Element::from_i64s(q, &[3, 4]);
        assert_eq!(a.compose(&b).apply(&v).unwrap(), a.apply(&b.apply(&v).unwrap()).unwrap());
        assert!(!a.commutes_with(&b));
        assert!(a.commutes_with(&LinearMap::identity(q, 2)));
    }
}
