use std::collections::BTreeMap;

use super::{AlgebraError, BasisSpace, Field, LinearMap, MultiLinearOp};

/// A based space together with named operations and linear maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraBundle {
    space: BasisSpace,
    field: Field,
    ops: Vec<MultiLinearOp>,
    maps: Vec<(String, LinearMap)>,
    pub metadata: BTreeMap<String, String>,
}

impl AlgebraBundle {
    pub fn new(space: BasisSpace, field: Field) -> Self {
        AlgebraBundle {
            space,
            field,
            ops: Vec::new(),
            maps: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &BasisSpace {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ops(&self) -> &[MultiLinearOp] {
        &self.ops
    }

    pub fn maps(&self) -> &[(String, LinearMap)] {
        &self.maps
    }

    pub fn op(&self, name: &str) -> Option<&MultiLinearOp> {
        self.ops.iter().find(|o| o.name() == name)
    }

    pub fn map(&self, name: &str) -> Option<&LinearMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    fn check_op(&self, op: &MultiLinearOp) -> Result<(), AlgebraError> {
        if op.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: op.dim(),
            });
        }
        if op.field() != self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    fn check_map(&self, map: &LinearMap) -> Result<(), AlgebraError> {
        if map.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: map.dim(),
            });
        }
        if map.field() != self.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    /// Add an op; its name must be new.
    pub fn add_op(&mut self, op: MultiLinearOp) -> Result<(), AlgebraError> {
        self.check_op(&op)?;
        if self.op(op.name()).is_some() {
            return Err(AlgebraError::DuplicateName(op.name().to_string()));
        }
        self.ops.push(op);
        Ok(())
    }

    /// Add or replace an op by name, keeping its position if it existed.
    pub fn set_op(&mut self, op: MultiLinearOp) -> Result<(), AlgebraError> {
        self.check_op(&op)?;
        match self.ops.iter_mut().find(|o| o.name() == op.name()) {
            Some(slot) => *slot = op,
            None => self.ops.push(op),
        }
        Ok(())
    }

    pub fn add_map(&mut self, name: impl Into<String>, map: LinearMap) -> Result<(), AlgebraError> {
        let name = name.into();
        self.check_map(&map)?;
        if self.map(&name).is_some() {
            return Err(AlgebraError::DuplicateName(name));
        }
        self.maps.push((name, map));
        Ok(())
    }

    pub fn set_map(&mut self, name: impl Into<String>, map: LinearMap) -> Result<(), AlgebraError> {
        let name = name.into();
        self.check_map(&map)?;
        match self.maps.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = map,
            None => self.maps.push((name, map)),
        }
        Ok(())
    }

    /// Builder-style `add_op` that panics on a clash; for literal constructions.
    pub fn with_op(mut self, op: MultiLinearOp) -> Self {
        self.add_op(op).expect("consistent op");
        self
    }

    pub fn with_map(mut self, name: &str, map: LinearMap) -> Self {
        self.add_map(name, map).expect("consistent map");
        self
    }

    pub fn with_meta(mut self, key: &str, value: &str) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Relabel the basis: old basis vector `i` becomes new basis vector `perm[i]`.
    pub fn permute_basis(&self, perm: &[usize]) -> Result<AlgebraBundle, AlgebraError> {
        let d = self.dim();
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&p| p >= d || std::mem::replace(&mut seen[p], true)) {
            return Err(AlgebraError::BadPermutation);
        }
        let mut labels = vec![String::new(); d];
        for (i, l) in self.space.labels().iter().enumerate() {
            labels[perm[i]] = l.clone();
        }
        Ok(AlgebraBundle {
            space: BasisSpace::new(labels)?,
            field: self.field,
            ops: self.ops.iter().map(|o| o.permute_basis(perm)).collect(),
            maps: self.maps.iter().map(|(n, m)| (n.clone(), m.permute_basis(perm))).collect(),
            metadata: self.metadata.clone(),
        })
    }
}
