use std::collections::HashSet;
use std::fmt;

use super::{AlgebraError, Field, Scalar};

/// A finite basis with distinct labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSpace {
    labels: Vec<String>,
}

impl BasisSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.is_empty() {
            return Err(AlgebraError::EmptyBasis);
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        Ok(BasisSpace { labels })
    }

    /// Basis `e1, ..., ed`.
    pub fn standard(dim: usize) -> Self {
        BasisSpace::new((1..=dim).map(|i| format!("e{i}")).collect()).expect("dim >= 1")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A dense coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn zero(field: Field, dim: usize) -> Self {
        Element {
            coeffs: vec![field.zero(); dim],
        }
    }

    pub fn basis(field: Field, dim: usize, i: usize) -> Self {
        let mut e = Element::zero(field, dim);
        e.coeffs[i] = field.one();
        e
    }

    /// Build from coordinates; all must share one field.
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "elements live in spaces of positive dimension");
        let f = coeffs[0].field();
        assert!(coeffs.iter().all(|c| c.field() == f), "mixed fields in element");
        Element { coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        Element::from_coeffs(coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn add_scaled(&mut self, s: &Scalar, other: &Element) {
        debug_assert_eq!(self.dim(), other.dim());
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += &s.mul(b);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&self.field().one(), other);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&self.field().one().neg(), other);
        out
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(|c| c.mul(s)).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<(), AlgebraError> {
        if self.dim() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// Human-readable form using basis labels, e.g. `2*x + -1/2*y`.
    pub fn display_with<'a>(&'a self, space: &'a BasisSpace) -> LabelledElement<'a> {
        LabelledElement { elem: self, space }
    }
}

pub struct LabelledElement<'a> {
    elem: &'a Element,
    space: &'a BasisSpace,
}

impl fmt::Display for LabelledElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.elem.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", self.space.label(i))?;
            } else {
                write!(f, "{}*{}", c, self.space.label(i))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
