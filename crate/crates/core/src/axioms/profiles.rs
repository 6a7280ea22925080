use std::fmt;

use super::{Axiom, AxiomError, Role};

/// A named bundle of identities defining a class of algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Profile {
    Poisson,
    TransposedPoisson,
    NovikovPoisson,
    PreLieCom,
    DifferentialNovikovPoisson,
    PreLiePoisson,
    StrongPoisson,
    Poisson3Lie,
    StrongPoisson3Lie,
    Tpa3Lie,
    TpaNLie,
    HomLie,
}

impl Profile {
    pub const ALL: [Profile; 12] = [
        Profile::Poisson,
        Profile::TransposedPoisson,
        Profile::NovikovPoisson,
        Profile::PreLieCom,
        Profile::DifferentialNovikovPoisson,
        Profile::PreLiePoisson,
        Profile::StrongPoisson,
        Profile::Poisson3Lie,
        Profile::StrongPoisson3Lie,
        Profile::Tpa3Lie,
        Profile::TpaNLie,
        Profile::HomLie,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Poisson => "poisson",
            Profile::TransposedPoisson => "transposed-poisson",
            Profile::NovikovPoisson => "novikov-poisson",
            Profile::PreLieCom => "prelie-com",
            Profile::DifferentialNovikovPoisson => "differential-novikov-poisson",
            Profile::PreLiePoisson => "prelie-poisson",
            Profile::StrongPoisson => "strong-poisson",
            Profile::Poisson3Lie => "poisson-3lie",
            Profile::StrongPoisson3Lie => "strong-poisson-3lie",
            Profile::Tpa3Lie => "tpa-3lie",
            Profile::TpaNLie => "tpa-nlie",
            Profile::HomLie => "hom-lie",
        }
    }

    pub fn parse(s: &str) -> Result<Profile, AxiomError> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| AxiomError::UnknownProfile(s.to_string()))
    }

    pub fn axioms(self) -> &'static [Axiom] {
        use Axiom::*;
        match self {
            Profile::Poisson => &[Commutativity, Associativity, Jacobi, Leibniz],
            Profile::TransposedPoisson => &[Commutativity, Associativity, Jacobi, TransposedLeibniz],
            Profile::NovikovPoisson => &[Commutativity, Associativity, PreLie, NovikovRight, Np1, Np2],
            Profile::PreLieCom => &[Commutativity, Associativity, PreLie, PreLieCom],
            Profile::DifferentialNovikovPoisson => {
                &[Commutativity, Associativity, PreLie, NovikovRight, Np1, Np2, PreLieCom]
            }
            Profile::PreLiePoisson => &[Commutativity, Associativity, PreLie, Np1, Np2],
            Profile::StrongPoisson => &[Commutativity, Associativity, Jacobi, Leibniz, StrongPoisson],
            Profile::Poisson3Lie => &[Commutativity, Associativity, FundamentalIdentity, Poisson3Lie],
            Profile::StrongPoisson3Lie => &[Commutativity, Associativity, FundamentalIdentity, Poisson3Lie, Strong3],
            Profile::Tpa3Lie => &[Commutativity, Associativity, FundamentalIdentity, Transposed3Lie],
            Profile::TpaNLie => &[Commutativity, Associativity, FundamentalIdentity, TransposedNLie],
            Profile::HomLie => &[HomJacobi],
        }
    }

    /// Union of the roles the constituent identities read.
    pub fn roles(self) -> &'static [Role] {
        match self {
            Profile::Poisson | Profile::TransposedPoisson | Profile::StrongPoisson => &[Role::Mul, Role::Bracket],
            Profile::NovikovPoisson
            | Profile::PreLieCom
            | Profile::DifferentialNovikovPoisson
            | Profile::PreLiePoisson => &[Role::Mul, Role::Circ],
            Profile::Poisson3Lie | Profile::StrongPoisson3Lie | Profile::Tpa3Lie | Profile::TpaNLie => {
                &[Role::Mul, Role::Nary]
            }
            Profile::HomLie => &[Role::Bracket, Role::Map],
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
