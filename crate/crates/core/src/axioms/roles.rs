use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraBundle, Element, Field, LinearMap, MultiLinearOp, Symmetry};

use super::AxiomError;

/// A slot an identity refers to. Ops fill `Mul`..`Op`, linear maps fill
/// `Map` and `Map2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Mul,
    Bracket,
    Circ,
    Nary,
    Op,
    Map,
    Map2,
}

impl Role {
    pub const ALL: [Role; 7] = [Role::Mul, Role::Bracket, Role::Circ, Role::Nary, Role::Op, Role::Map, Role::Map2];

    pub fn name(self) -> &'static str {
        match self {
            Role::Mul => "mul",
            Role::Bracket => "bracket",
            Role::Circ => "circ",
            Role::Nary => "nary",
            Role::Op => "op",
            Role::Map => "map",
            Role::Map2 => "map2",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        Role::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn is_map(self) -> bool {
        matches!(self, Role::Map | Role::Map2)
    }

    /// Name looked up when the binding does not say otherwise.
    pub fn default_name(self) -> &'static str {
        match self {
            Role::Map => "D",
            Role::Map2 => "D2",
            r => r.name(),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which named op or map plays each role.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Binding {
    names: BTreeMap<Role, String>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn bind(mut self, role: Role, name: impl Into<String>) -> Self {
        self.names.insert(role, name.into());
        self
    }

    pub fn name(&self, role: Role) -> &str {
        self.names.get(&role).map(String::as_str).unwrap_or(role.default_name())
    }

    /// Explicit assignments, in role order.
    pub fn entries(&self) -> impl Iterator<Item = (Role, &str)> {
        self.names.iter().map(|(r, n)| (*r, n.as_str()))
    }

    /// Parse `role=name` assignments.
    pub fn parse<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<Binding, String> {
        let mut b = Binding::new();
        for item in items {
            let (role, name) = item.split_once('=').ok_or_else(|| format!("expected role=name, got {item:?}"))?;
            let role = Role::parse(role.trim()).ok_or_else(|| format!("unknown role {:?}", role.trim()))?;
            b = b.bind(role, name.trim());
        }
        Ok(b)
    }
}

/// Ops and maps resolved for a check, with the evaluation helpers the
/// identities are written in.
#[derive(Debug, Clone)]
pub struct Roles<'a> {
    field: Field,
    dim: usize,
    ops: BTreeMap<Role, &'a MultiLinearOp>,
    maps: BTreeMap<Role, &'a LinearMap>,
}

impl<'a> Roles<'a> {
    pub fn new(field: Field, dim: usize) -> Self {
        Roles {
            field,
            dim,
            ops: BTreeMap::new(),
            maps: BTreeMap::new(),
        }
    }

    /// Attach an op to a role, checking arity and symmetry constraints.
    pub fn with_op(mut self, role: Role, op: &'a MultiLinearOp) -> Result<Self, AxiomError> {
        assert!(!role.is_map(), "role {role} takes a linear map");
        check_op_role(role, op)?;
        if op.dim() != self.dim || op.field() != self.field {
            return Err(AxiomError::RoleMismatch {
                role,
                name: op.name().to_string(),
                reason: "different space or field".into(),
            });
        }
        self.ops.insert(role, op);
        Ok(self)
    }

    pub fn with_map(mut self, role: Role, map: &'a LinearMap) -> Result<Self, AxiomError> {
        assert!(role.is_map(), "role {role} takes an op");
        if map.dim() != self.dim || map.field() != self.field {
            return Err(AxiomError::RoleMismatch {
                role,
                name: role.default_name().to_string(),
                reason: "different space or field".into(),
            });
        }
        self.maps.insert(role, map);
        Ok(self)
    }

    /// Look up the needed roles in a bundle.
    pub fn resolve(bundle: &'a AlgebraBundle, binding: &Binding, needed: &[Role]) -> Result<Self, AxiomError> {
        let mut roles = Roles::new(bundle.field(), bundle.dim());
        for &role in needed {
            let name = binding.name(role);
            if role.is_map() {
                let map = bundle.map(name).ok_or_else(|| AxiomError::MissingRole {
                    role,
                    kind: "map",
                    name: name.to_string(),
                })?;
                roles = roles.with_map(role, map)?;
            } else {
                let op = bundle.op(name).ok_or_else(|| AxiomError::MissingRole {
                    role,
                    kind: "op",
                    name: name.to_string(),
                })?;
                roles = roles.with_op(role, op)?;
            }
        }
        Ok(roles)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn op(&self, role: Role) -> Option<&'a MultiLinearOp> {
        self.ops.get(&role).copied()
    }

    pub fn map(&self, role: Role) -> Option<&'a LinearMap> {
        self.maps.get(&role).copied()
    }

    pub(crate) fn has(&self, role: Role) -> bool {
        self.ops.contains_key(&role) || self.maps.contains_key(&role)
    }

    fn op_or_panic(&self, role: Role) -> &'a MultiLinearOp {
        self.ops.get(&role).unwrap_or_else(|| panic!("role {role} not bound"))
    }

    fn map_or_panic(&self, role: Role) -> &'a LinearMap {
        self.maps.get(&role).unwrap_or_else(|| panic!("role {role} not bound"))
    }

    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        self.op_or_panic(Role::Mul).eval_unchecked(&[a, b])
    }

    pub(crate) fn br(&self, a: &Element, b: &Element) -> Element {
        self.op_or_panic(Role::Bracket).eval_unchecked(&[a, b])
    }

    pub(crate) fn circ(&self, a: &Element, b: &Element) -> Element {
        self.op_or_panic(Role::Circ).eval_unchecked(&[a, b])
    }

    pub(crate) fn nary(&self, args: &[&Element]) -> Element {
        self.op_or_panic(Role::Nary).eval_unchecked(args)
    }

    pub(crate) fn op_eval(&self, args: &[&Element]) -> Element {
        self.op_or_panic(Role::Op).eval_unchecked(args)
    }

    pub(crate) fn phi(&self, v: &Element) -> Element {
        self.map_or_panic(Role::Map).apply_unchecked(v)
    }

    pub(crate) fn phi2(&self, v: &Element) -> Element {
        self.map_or_panic(Role::Map2).apply_unchecked(v)
    }

    pub(crate) fn zero(&self) -> Element {
        Element::zero(self.field, self.dim)
    }

    pub(crate) fn times(&self, n: i64, v: &Element) -> Element {
        v.scale(&self.field.from_i64(n))
    }
}

fn check_op_role(role: Role, op: &MultiLinearOp) -> Result<(), AxiomError> {
    let fail = |reason: String| {
        Err(AxiomError::RoleMismatch {
            role,
            name: op.name().to_string(),
            reason,
        })
    };
    match role {
        Role::Mul | Role::Circ if op.arity() != 2 => fail(format!("needs a binary op, got arity {}", op.arity())),
        Role::Bracket if op.arity() != 2 || op.symmetry() != Symmetry::Alternating => fail(format!(
            "needs an alternating binary op, got {} op of arity {}",
            op.symmetry(),
            op.arity()
        )),
        Role::Nary if op.arity() < 2 || op.symmetry() != Symmetry::Alternating => fail(format!(
            "needs an alternating op of arity at least 2, got {} op of arity {}",
            op.symmetry(),
            op.arity()
        )),
        _ => Ok(()),
    }
}
