use std::fmt;

use crate::algebra::{Element, Field, Symmetry};

use super::{AxiomError, Role, Roles, VarGroup};

/// Every identity the engine knows. All are multilinear in their variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `x·y = y·x`
    Commutativity,
    /// `(x·y)·z = x·(y·z)`
    Associativity,
    /// `[[x,y],z] + [[y,z],x] + [[z,x],y] = 0`
    Jacobi,
    /// `[x, y·z] = [x,y]·z + y·[x,z]`
    Leibniz,
    /// `2 z·[x,y] = [z·x, y] + [x, z·y]`
    TransposedLeibniz,
    /// `x[y,z] + y[z,x] + z[x,y] = 0`
    Gi1,
    /// `[h[x,y],z] + [h[y,z],x] + [h[z,x],y] = 0`
    Gi2,
    /// `[hx,[y,z]] + [hy,[z,x]] + [hz,[x,y]] = 0`
    Gi3,
    /// `[h,x][y,z] + [h,y][z,x] + [h,z][x,y] = 0`
    Gi4,
    /// `[xu,yv] + [xv,yu] = 2 (uv)[x,y]`
    Gi5,
    /// `x[u,yv] + v[xy,u] + (yu)[v,x] = 0`
    Gi6,
    /// `(x∘y)∘z − (y∘x)∘z = x∘(y∘z) − y∘(x∘z)`
    PreLie,
    /// `(x∘y)∘z = (x∘z)∘y`
    NovikovRight,
    /// `(x·y)∘z = x·(y∘z)`
    Np1,
    /// `(x∘y)·z − (y∘x)·z = x∘(y·z) − y∘(x·z)`
    Np2,
    /// `x∘(y·z) = (x∘y)·z + y·(x∘z)`
    PreLieCom,
    /// Same shape as `Gi4`, used in strong Poisson algebras.
    StrongPoisson,
    /// `[[x1..xn], y1..y(n-1)] = Σ_i [x1, .., [xi, y1..y(n-1)], .., xn]`
    FundamentalIdentity,
    /// `[x,y,u·v] = u·[x,y,v] + [x,y,u]·v`
    Poisson3Lie,
    /// `−[x,y,u1][u2,u3,u4] + [x,y,u2][u1,u3,u4] − [x,y,u3][u1,u2,u4] + [x,y,u4][u1,u2,u3] = 0`
    Strong3,
    /// `3 u·[x,y,z] = [xu,y,z] + [x,yu,z] + [x,y,zu]`
    Transposed3Lie,
    /// `n w·[x1..xn] = Σ_i [x1, .., w·xi, .., xn]`
    TransposedNLie,
    /// `[φx,[y,z]] + [φy,[z,x]] + [φz,[x,y]] = 0`
    HomJacobi,
    /// `φ²([x,y]) = [φx, φy]`
    Varphi2,
    /// `φ([x,y]) = [φx, φy]`
    HomMultiplicative,
    /// `x·[y,z] = 0` and `[x·y, z] = 0`
    Inter0,
    /// `u·[x,y,z] = 0` and `[u·x, y, z] = 0`
    Mix3,
    /// `f(f(x)) = x` and `f([x,y]) = −[f x, f y]`
    Anti,
    /// `(f(u) − u)·(f(x)[y,z] + f(y)[z,x] + f(z)[x,y]) = 0`
    Const3Extra,
    /// `Σ_cyc D(x)·D([y,z]) = −Σ_cyc x·[Dy, Dz]`
    AuxIdentity,
    /// `D(μ(x1..xk)) = Σ_i μ(x1, .., D xi, .., xk)`
    DerivationOf,
    /// `f(x·y) = f(x)·f(y)`
    Endomorphism,
    /// `D(D2 x) = D2(D x)`
    Commuting,
}

impl Axiom {
    pub const ALL: [Axiom; 33] = [
        Axiom::Commutativity,
        Axiom::Associativity,
        Axiom::Jacobi,
        Axiom::Leibniz,
        Axiom::TransposedLeibniz,
        Axiom::Gi1,
        Axiom::Gi2,
        Axiom::Gi3,
        Axiom::Gi4,
        Axiom::Gi5,
        Axiom::Gi6,
        Axiom::PreLie,
        Axiom::NovikovRight,
        Axiom::Np1,
        Axiom::Np2,
        Axiom::PreLieCom,
        Axiom::StrongPoisson,
        Axiom::FundamentalIdentity,
        Axiom::Poisson3Lie,
        Axiom::Strong3,
        Axiom::Transposed3Lie,
        Axiom::TransposedNLie,
        Axiom::HomJacobi,
        Axiom::Varphi2,
        Axiom::HomMultiplicative,
        Axiom::Inter0,
        Axiom::Mix3,
        Axiom::Anti,
        Axiom::Const3Extra,
        Axiom::AuxIdentity,
        Axiom::DerivationOf,
        Axiom::Endomorphism,
        Axiom::Commuting,
    ];

    pub fn name(self) -> &'static str {
        use Axiom::*;
        match self {
            Commutativity => "commutativity",
            Associativity => "associativity",
            Jacobi => "jacobi",
            Leibniz => "leibniz",
            TransposedLeibniz => "transposed_leibniz",
            Gi1 => "gi1",
            Gi2 => "gi2",
            Gi3 => "gi3",
            Gi4 => "gi4",
            Gi5 => "gi5",
            Gi6 => "gi6",
            PreLie => "prelie",
            NovikovRight => "novikov_right",
            Np1 => "np1",
            Np2 => "np2",
            PreLieCom => "prelie_com",
            StrongPoisson => "strong_poisson",
            FundamentalIdentity => "fundamental_identity",
            Poisson3Lie => "poisson_3lie",
            Strong3 => "strong_3",
            Transposed3Lie => "transposed_3lie",
            TransposedNLie => "transposed_nlie",
            HomJacobi => "hom_jacobi",
            Varphi2 => "varphi2",
            HomMultiplicative => "hom_multiplicative",
            Inter0 => "inter0",
            Mix3 => "mix3",
            Anti => "anti",
            Const3Extra => "const3_extra",
            AuxIdentity => "aux_identity",
            DerivationOf => "derivation_of",
            Endomorphism => "endomorphism",
            Commuting => "commuting",
        }
    }

    pub fn parse(s: &str) -> Result<Axiom, AxiomError> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| AxiomError::UnknownAxiom(s.to_string()))
    }

    /// Roles this identity reads.
    pub fn roles(self) -> &'static [Role] {
        use Axiom::*;
        use Role::*;
        match self {
            Commutativity | Associativity => &[Mul],
            Jacobi => &[Bracket],
            Leibniz | TransposedLeibniz | Gi1 | Gi2 | Gi3 | Gi4 | Gi5 | Gi6 | StrongPoisson | Inter0 => {
                &[Mul, Bracket]
            }
            PreLie | NovikovRight => &[Circ],
            Np1 | Np2 | PreLieCom => &[Mul, Circ],
            FundamentalIdentity => &[Nary],
            Poisson3Lie | Strong3 | Transposed3Lie | TransposedNLie | Mix3 => &[Mul, Nary],
            HomJacobi | Varphi2 | HomMultiplicative | Anti => &[Bracket, Map],
            Const3Extra | AuxIdentity => &[Mul, Bracket, Map],
            DerivationOf => &[Op, Map],
            Endomorphism => &[Mul, Map],
            Commuting => &[Map, Map2],
        }
    }

    /// Identities whose shape depends on the arity of the bound n-ary op.
    pub fn is_arity_generic(self) -> bool {
        matches!(self, Axiom::FundamentalIdentity | Axiom::TransposedNLie | Axiom::DerivationOf)
    }

    pub(crate) fn nary_arity(self, roles: &Roles) -> Option<usize> {
        if self.roles().contains(&Role::Nary) {
            roles.op(Role::Nary).map(|o| o.arity())
        } else if self == Axiom::DerivationOf {
            roles.op(Role::Op).map(|o| o.arity())
        } else {
            None
        }
    }

    /// Integer factor appearing as a coefficient; GF(p) needs p above it.
    fn integer_factor(self, roles: &Roles) -> u64 {
        match self {
            Axiom::TransposedLeibniz | Axiom::Gi5 => 2,
            Axiom::Transposed3Lie => 3,
            Axiom::TransposedNLie => self.nary_arity(roles).unwrap_or(1) as u64,
            _ => 1,
        }
    }

    /// Confirm the needed roles are bound with usable shapes and the field is
    /// large enough.
    pub(crate) fn validate(self, roles: &Roles) -> Result<(), AxiomError> {
        for &r in self.roles() {
            if !roles.has(r) {
                return Err(AxiomError::MissingRole {
                    role: r,
                    kind: if r.is_map() { "map" } else { "op" },
                    name: r.default_name().to_string(),
                });
            }
        }
        let three_ary = matches!(
            self,
            Axiom::Poisson3Lie | Axiom::Strong3 | Axiom::Transposed3Lie | Axiom::Mix3
        );
        if three_ary {
            let op = roles.op(Role::Nary).expect("validated above");
            if op.arity() != 3 {
                return Err(AxiomError::RoleMismatch {
                    role: Role::Nary,
                    name: op.name().to_string(),
                    reason: format!("{} needs a ternary bracket, got arity {}", self.name(), op.arity()),
                });
            }
        }
        if let Field::Prime(p) = roles.field() {
            let max_arity = self
                .roles()
                .iter()
                .filter_map(|&r| roles.op(r))
                .map(|o| o.arity() as u64)
                .max()
                .unwrap_or(1);
            let needed = max_arity.max(self.integer_factor(roles));
            if p <= needed {
                return Err(AxiomError::FieldTooSmall {
                    field: roles.field(),
                    axiom: self.name().to_string(),
                    needed,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn var_count(self, roles: &Roles) -> usize {
        use Axiom::*;
        match self {
            Commutativity | Varphi2 | HomMultiplicative | Anti | Endomorphism => 2,
            Commuting => 1,
            Associativity | Jacobi | Leibniz | TransposedLeibniz | Gi1 | PreLie | NovikovRight | Np1 | Np2
            | PreLieCom | HomJacobi | Inter0 | AuxIdentity => 3,
            Gi2 | Gi3 | Gi4 | Gi5 | Gi6 | StrongPoisson | Poisson3Lie | Transposed3Lie | Mix3 | Const3Extra => 4,
            Strong3 => 6,
            FundamentalIdentity => {
                let n = self.nary_arity(roles).expect("nary bound");
                2 * n - 1
            }
            TransposedNLie => self.nary_arity(roles).expect("nary bound") + 1,
            DerivationOf => self.nary_arity(roles).expect("op bound"),
        }
    }

    /// Variable groups under which the defect is alternating or symmetric,
    /// given the bound ops' declared symmetries.
    pub(crate) fn groups(self, roles: &Roles) -> Vec<VarGroup> {
        use Axiom::*;
        let mul_sym = roles
            .op(Role::Mul)
            .is_some_and(|m| m.symmetry() == Symmetry::Symmetric);
        let mut g = Vec::new();
        match self {
            Commutativity => g.push(VarGroup::alt([0, 1])),
            Associativity if mul_sym => g.push(VarGroup::alt([0, 2])),
            Jacobi | Gi1 | Gi2 | Gi3 | Gi4 | StrongPoisson | HomJacobi | Const3Extra | AuxIdentity => {
                g.push(VarGroup::alt([0, 1, 2]))
            }
            Leibniz | PreLieCom if mul_sym => g.push(VarGroup::sym([1, 2])),
            TransposedLeibniz | PreLie | Np2 | Varphi2 | HomMultiplicative => g.push(VarGroup::alt([0, 1])),
            NovikovRight | Mix3 => g.push(VarGroup::alt([1, 2])),
            Gi5 | Poisson3Lie => {
                g.push(VarGroup::alt([0, 1]));
                if mul_sym {
                    g.push(VarGroup::sym([2, 3]));
                }
            }
            Strong3 => {
                g.push(VarGroup::alt([0, 1]));
                g.push(VarGroup::alt([2, 3, 4, 5]));
            }
            Transposed3Lie => g.push(VarGroup::alt([0, 1, 2])),
            FundamentalIdentity => {
                let n = self.nary_arity(roles).expect("nary bound");
                g.push(VarGroup::alt(0..n));
                if n > 2 {
                    g.push(VarGroup::alt(n..2 * n - 1));
                }
            }
            TransposedNLie => {
                let n = self.nary_arity(roles).expect("nary bound");
                g.push(VarGroup::alt(0..n));
            }
            DerivationOf => {
                let op = roles.op(Role::Op).expect("op bound");
                if op.arity() > 1 {
                    match op.symmetry() {
                        Symmetry::Alternating => g.push(VarGroup::alt(0..op.arity())),
                        Symmetry::Symmetric => g.push(VarGroup::sym(0..op.arity())),
                        Symmetry::None => {}
                    }
                }
            }
            Endomorphism if mul_sym => g.push(VarGroup::sym([0, 1])),
            _ => {}
        }
        g
    }

    /// Both sides of each component, evaluated on the given arguments.
    pub(crate) fn sides(self, r: &Roles, v: &[&Element]) -> Vec<(Element, Element)> {
        use Axiom::*;
        let zero = || r.zero();
        let one = |l: Element, rt: Element| vec![(l, rt)];
        match self {
            Commutativity => one(r.mul(v[0], v[1]), r.mul(v[1], v[0])),
            Associativity => {
                let (x, y, z) = (v[0], v[1], v[2]);
                one(r.mul(&r.mul(x, y), z), r.mul(x, &r.mul(y, z)))
            }
            Jacobi => {
                let (x, y, z) = (v[0], v[1], v[2]);
                let s = r.br(&r.br(x, y), z).add(&r.br(&r.br(y, z), x)).add(&r.br(&r.br(z, x), y));
                one(s, zero())
            }
            Leibniz => {
                let (x, y, z) = (v[0], v[1], v[2]);
                one(r.br(x, &r.mul(y, z)), r.mul(&r.br(x, y), z).add(&r.mul(y, &r.br(x, z))))
            }
            TransposedLeibniz => {
                let (x, y, z) = (v[0], v[1], v[2]);
                one(
                    r.times(2, &r.mul(z, &r.br(x, y))),
                    r.br(&r.mul(z, x), y).add(&r.br(x, &r.mul(z, y))),
                )
            }
            Gi1 => {
                let (x, y, z) = (v[0], v[1], v[2]);
                let s = r.mul(x, &r.br(y, z)).add(&r.mul(y, &r.br(z, x))).add(&r.mul(z, &r.br(x, y)));
                one(s, zero())
            }
            Gi2 => {
                let (x, y, z, h) = (v[0], v[1], v[2], v[3]);
                let t = |a: &Element, b: &Element, c: &Element| r.br(&r.mul(h, &r.br(a, b)), c);
                one(t(x, y, z).add(&t(y, z, x)).add(&t(z, x, y)), zero())
            }
            Gi3 => {
                let (x, y, z, h) = (v[0], v[1], v[2], v[3]);
                let t = |a: &Element, b: &Element, c: &Element| r.br(&r.mul(h, a), &r.br(b, c));
                one(t(x, y, z).add(&t(y, z, x)).add(&t(z, x, y)), zero())
            }
            Gi4 | StrongPoisson => {
                let (x, y, z, h) = (v[0], v[1], v[2], v[3]);
                let t = |a: &Element, b: &Element, c: &Element| r.mul(&r.br(h, a), &r.br(b, c));
                one(t(x, y, z).add(&t(y, z, x)).add(&t(z, x, y)), zero())
            }
            Gi5 => {
                let (x, y, u, w) = (v[0], v[1], v[2], v[3]);
                one(
                    r.br(&r.mul(x, u), &r.mul(y, w)).add(&r.br(&r.mul(x, w), &r.mul(y, u))),
                    r.times(2, &r.mul(&r.mul(u, w), &r.br(x, y))),
                )
            }
            Gi6 => {
                let (x, y, u, w) = (v[0], v[1], v[2], v[3]);
                let s = r
                    .mul(x, &r.br(u, &r.mul(y, w)))
                    .add(&r.mul(w, &r.br(&r.mul(x, y), u)))
                    .add(&r.mul(&r.mul(y, u), &r.br(w, x)));
                one(s, zero())
            }
            PreLie => {
                let (x, y, z) = (v[0], v[1], v[2]);
                one(
                    r.circ(&r.circ(x, y), z).sub(&r.circ(&r.circ(y, x), z)),
                    r.circ(x, &r.circ(y, z)).sub(&r.circ(y, &r.circ(x, z))),
                )
            }
            NovikovRight => {
                let (x, y, z) = (v[0], v[1], v[2]);
                one(r.circ(&r.circ(x, y), z), r.circ(&r.circ(x, z), y))
            }
            Np1 => {
                let (x, y, z) = (v[0], v[1], v[2]);
                one(r.circ(&r.mul(x, y), z), r.mul(x, &r.circ(y, z)))
            }
            Np2 => {
                let (x, y, z) = (v[0], v[1], v[2]);
                one(
                    r.mul(&r.circ(x, y), z).sub(&r.mul(&r.circ(y, x), z)),
                    r.circ(x, &r.mul(y, z)).sub(&r.circ(y, &r.mul(x, z))),
                )
            }
            PreLieCom => {
                let (x, y, z) = (v[0], v[1], v[2]);
                one(r.circ(x, &r.mul(y, z)), r.mul(&r.circ(x, y), z).add(&r.mul(y, &r.circ(x, z))))
            }
            FundamentalIdentity => {
                let n = v.len().div_ceil(2);
                let (xs, ys) = v.split_at(n);
                let inner = r.nary(xs);
                let mut lhs_args: Vec<&Element> = vec![&inner];
                lhs_args.extend_from_slice(ys);
                let lhs = r.nary(&lhs_args);
                let mut rhs = zero();
                for i in 0..n {
                    let mut in_args: Vec<&Element> = vec![xs[i]];
                    in_args.extend_from_slice(ys);
                    let moved = r.nary(&in_args);
                    let mut args = xs.to_vec();
                    args[i] = &moved;
                    rhs = rhs.add(&r.nary(&args));
                }
                one(lhs, rhs)
            }
            Poisson3Lie => {
                let (x, y, u, w) = (v[0], v[1], v[2], v[3]);
                one(
                    r.nary(&[x, y, &r.mul(u, w)]),
                    r.mul(u, &r.nary(&[x, y, w])).add(&r.mul(&r.nary(&[x, y, u]), w)),
                )
            }
            Strong3 => {
                let (x, y) = (v[0], v[1]);
                let u = &v[2..6];
                let mut s = zero();
                for i in 0..4 {
                    let rest: Vec<&Element> = (0..4).filter(|&j| j != i).map(|j| u[j]).collect();
                    let term = r.mul(&r.nary(&[x, y, u[i]]), &r.nary(&rest));
                    // signs −, +, −, +
                    s = if i % 2 == 0 { s.sub(&term) } else { s.add(&term) };
                }
                one(s, zero())
            }
            Transposed3Lie | TransposedNLie => {
                let n = v.len() - 1;
                let (xs, w) = (&v[..n], v[n]);
                let lhs = r.times(n as i64, &r.mul(w, &r.nary(xs)));
                let mut rhs = zero();
                for i in 0..n {
                    let moved = r.mul(w, xs[i]);
                    let mut args = xs.to_vec();
                    args[i] = &moved;
                    rhs = rhs.add(&r.nary(&args));
                }
                one(lhs, rhs)
            }
            HomJacobi => {
                let (x, y, z) = (v[0], v[1], v[2]);
                let t = |a: &Element, b: &Element, c: &Element| r.br(&r.phi(a), &r.br(b, c));
                one(t(x, y, z).add(&t(y, z, x)).add(&t(z, x, y)), zero())
            }
            Varphi2 => {
                let (x, y) = (v[0], v[1]);
                one(r.phi(&r.phi(&r.br(x, y))), r.br(&r.phi(x), &r.phi(y)))
            }
            HomMultiplicative => {
                let (x, y) = (v[0], v[1]);
                one(r.phi(&r.br(x, y)), r.br(&r.phi(x), &r.phi(y)))
            }
            Inter0 => {
                let (x, y, z) = (v[0], v[1], v[2]);
                vec![(r.mul(x, &r.br(y, z)), zero()), (r.br(&r.mul(x, y), z), zero())]
            }
            Mix3 => {
                let (x, y, z, u) = (v[0], v[1], v[2], v[3]);
                vec![
                    (r.mul(u, &r.nary(&[x, y, z])), zero()),
                    (r.nary(&[&r.mul(u, x), y, z]), zero()),
                ]
            }
            Anti => {
                let (x, y) = (v[0], v[1]);
                vec![
                    (r.phi(&r.phi(x)), x.clone()),
                    (r.phi(&r.br(x, y)), r.br(&r.phi(x), &r.phi(y)).neg()),
                ]
            }
            Const3Extra => {
                let (x, y, z, u) = (v[0], v[1], v[2], v[3]);
                let cyc = r
                    .mul(&r.phi(x), &r.br(y, z))
                    .add(&r.mul(&r.phi(y), &r.br(z, x)))
                    .add(&r.mul(&r.phi(z), &r.br(x, y)));
                one(r.mul(&r.phi(u).sub(u), &cyc), zero())
            }
            AuxIdentity => {
                let (x, y, z) = (v[0], v[1], v[2]);
                let l = |a: &Element, b: &Element, c: &Element| r.mul(&r.phi(a), &r.phi(&r.br(b, c)));
                let rt = |a: &Element, b: &Element, c: &Element| r.mul(a, &r.br(&r.phi(b), &r.phi(c)));
                one(
                    l(x, y, z).add(&l(y, z, x)).add(&l(z, x, y)),
                    rt(x, y, z).add(&rt(y, z, x)).add(&rt(z, x, y)).neg(),
                )
            }
            DerivationOf => {
                let lhs = r.phi(&r.op_eval(v));
                let mut rhs = zero();
                for i in 0..v.len() {
                    let moved = r.phi(v[i]);
                    let mut args = v.to_vec();
                    args[i] = &moved;
                    rhs = rhs.add(&r.op_eval(&args));
                }
                one(lhs, rhs)
            }
            Endomorphism => {
                let (x, y) = (v[0], v[1]);
                one(r.phi(&r.mul(x, y)), r.mul(&r.phi(x), &r.phi(y)))
            }
            Commuting => one(r.phi(&r.phi2(v[0])), r.phi2(&r.phi(v[0]))),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
