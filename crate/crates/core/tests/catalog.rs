use tpa_core::algebra::{AlgebraBundle, Element, Field, LinearMap, Scalar};
use tpa_core::axioms::{check_identity, holds, passes, Axiom, Binding, Profile};
use tpa_core::catalog::{self, derivations_match, invariant_fingerprint};
use tpa_core::constructions;
use tpa_core::linalg::derivation_space;

fn q() -> Field {
    Field::Rational
}

#[test]
fn classification_lists_verify() {
    let entries = catalog::catalog_2d_transposed(q());
    assert_eq!(entries.len(), 9);
    for e in entries.iter().filter(|e| e.id != "nonabelian-c") {
        e.verify().unwrap_or_else(|r| panic!("{}: {r}", e.id));
    }
    let ab_e = &entries[4];
    assert!(passes(&ab_e.bundle, Profile::Poisson).unwrap());
    assert!(passes(&ab_e.bundle, Profile::TransposedPoisson).unwrap());
}

/// The listed product e1·e2 = e1, e2·e2 = e2 with [e1,e2] = e2 does not
/// satisfy the transposed Leibniz rule: x = e1, y = e2, z = e1 gives
/// 2 e1·e2 = 2e1 on the left and [0, e2] + [e1, e1] = 0 on the right.
#[test]
fn nonabelian_c_violates_transposed_leibniz() {
    let c = &catalog::catalog_2d_transposed(q())[7];
    assert_eq!(c.id, "nonabelian-c");
    let r = c.verify().unwrap_err();
    assert_eq!(r.axiom, Axiom::TransposedLeibniz);
    let w = r.witness.unwrap();
    assert_eq!(w.tuple, vec![0, 1, 0]);
    assert_eq!(w.left, Element::from_i64s(q(), &[2, 0]));
    assert!(w.right.is_zero());
    // with [e1,e2] = e1 instead the same product is transposed Poisson
    let mut flipped = c.bundle.clone();
    let br = tpa_core::algebra::MultiLinearOp::from_fn("bracket", 2, 2, q(), tpa_core::algebra::Symmetry::Alternating, |_| {
        Element::from_i64s(q(), &[1, 0])
    });
    flipped.set_op(br).unwrap();
    assert!(passes(&flipped, Profile::TransposedPoisson).unwrap());
}

#[test]
fn lambda_family_verifies() {
    for l in [q().from_i64(1), q().from_i64(2), q().from_i64(-1), q().ratio(1, 2)] {
        let e = catalog::nonabelian_d(q(), &l);
        assert!(e.verify().is_ok(), "lambda = {l}");
    }
}

#[test]
fn fingerprints_match_hand_computation() {
    let entries = catalog::catalog_2d_transposed(q());
    let got: Vec<Vec<usize>> = entries.iter().map(|e| invariant_fingerprint(&e.bundle).unwrap()).collect();
    // dim L·L, dim [L,L], dim Ann, dim Z, dim Der, rank tr(L_x L_y), worked out by hand
    let expected: [[usize; 6]; 9] = [
        [0, 0, 2, 2, 4, 0],
        [2, 0, 0, 2, 0, 2],
        [2, 0, 0, 2, 1, 1],
        [1, 0, 1, 2, 1, 1],
        [1, 0, 1, 2, 2, 0],
        [0, 1, 2, 0, 2, 0],
        [1, 1, 1, 0, 1, 0],
        [2, 1, 0, 0, 0, 1],
        [2, 1, 0, 0, 1, 1],
    ];
    for (g, e) in got.iter().zip(expected) {
        assert_eq!(g.as_slice(), e.as_slice());
    }
    for list in [&got[..5], &got[5..]] {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                assert_ne!(list[i], list[j]);
            }
        }
    }
}

#[test]
fn fingerprint_is_permutation_invariant() {
    for e in catalog::catalog_2d_transposed(q()) {
        let swapped = e.bundle.permute_basis(&[1, 0]).unwrap();
        assert_eq!(invariant_fingerprint(&e.bundle).unwrap(), invariant_fingerprint(&swapped).unwrap());
    }
}

#[test]
fn zero_bundle_fingerprint() {
    let e = &catalog::catalog_2d_transposed(q())[0];
    assert_eq!(invariant_fingerprint(&e.bundle).unwrap(), vec![0, 0, 2, 2, 4, 0]);
}

/// Count derivations of a 2-dimensional product over GF(5) by trying every
/// matrix, using plain integer arithmetic.
fn brute_force_derivation_count(table: [[[u64; 2]; 2]; 2]) -> usize {
    let p = 5u64;
    let mul = |x: [u64; 2], y: [u64; 2]| -> [u64; 2] {
        let mut out = [0u64; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out[k] = (out[k] + x[i] * y[j] % p * table[i][j][k]) % p;
                }
            }
        }
        out
    };
    let mut count = 0;
    for code in 0..p.pow(4) {
        // m[row][col], column j = image of e_j
        let m = [[code % p, code / p % p], [code / 25 % p, code / 125 % p]];
        let apply = |v: [u64; 2]| [(m[0][0] * v[0] + m[0][1] * v[1]) % p, (m[1][0] * v[0] + m[1][1] * v[1]) % p];
        let basis = [[1, 0], [0, 1]];
        let ok = basis.iter().all(|&x| {
            basis.iter().all(|&y| {
                let lhs = apply(mul(x, y));
                let a = mul(apply(x), y);
                let b = mul(x, apply(y));
                lhs == [(a[0] + b[0]) % p, (a[1] + b[1]) % p]
            })
        });
        count += ok as usize;
    }
    count
}

#[test]
fn derivation_table_dimensions() {
    let entries = catalog::catalog_2d_derivation_induced(q());
    let dims: Vec<usize> = entries
        .iter()
        .map(|e| derivation_space(&e.bundle, &["mul"]).unwrap().dimension())
        .collect();
    assert_eq!(dims, vec![4, 0, 1, 1, 2]);
    for e in &entries {
        let space = derivation_space(&e.bundle, &["mul"]).unwrap();
        assert!(derivations_match(&space, e.stated_derivations.as_ref().unwrap()), "{}", e.id);
        e.verify().unwrap_or_else(|r| panic!("{}: {r}", e.id));
    }
}

#[test]
fn derivation_dimensions_agree_with_brute_force() {
    // structure constants table[i][j][k] of e_i·e_j
    let z = [[0, 0], [0, 0]];
    let tables: [[[[u64; 2]; 2]; 2]; 5] = [
        [z, z],
        [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
        [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
        [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        [[[0, 1], [0, 0]], [[0, 0], [0, 0]]],
    ];
    let f5 = Field::prime(5).unwrap();
    for (n, t) in tables.iter().enumerate() {
        let e = catalog::derivation_entry(f5, n + 1, &f5.one(), &f5.one());
        let dim = derivation_space(&e.bundle, &["mul"]).unwrap().dimension();
        assert_eq!(brute_force_derivation_count(*t), 5usize.pow(dim as u32), "entry {}", n + 1);
    }
}

#[test]
fn stated_derivation_is_a_derivation() {
    for n in 1..=5 {
        let e = catalog::derivation_entry(q(), n, &q().from_i64(3), &q().from_i64(-2));
        let binding = Binding::new().bind(tpa_core::axioms::Role::Op, "mul");
        assert!(check_identity(&e.bundle, Axiom::DerivationOf, &binding).unwrap().holds, "entry {n}");
    }
}

#[test]
fn induced_brackets_of_table() {
    let entries = catalog::catalog_2d_derivation_induced(q());
    // entry (4): [e1,e2] = a e2 is exactly the bracket built from D
    let e4 = &entries[3];
    let b4 = constructions::derivation_bracket(e4.bundle.op("mul").unwrap(), e4.bundle.map("D").unwrap()).unwrap();
    assert!(b4.same_values(e4.bundle.op("bracket").unwrap()));
    // entry (5): the bracket built from D = [[a,0],[b,2a]] vanishes, while the
    // listed bracket [e1,e2] = b e2 is also transposed Poisson with this product
    let e5 = &entries[4];
    let b5 = constructions::derivation_bracket(e5.bundle.op("mul").unwrap(), e5.bundle.map("D").unwrap()).unwrap();
    assert!(b5.is_zero());
    let mut with_induced = e5.bundle.clone();
    with_induced.set_op(b5).unwrap();
    assert!(passes(&with_induced, Profile::TransposedPoisson).unwrap());
    assert!(passes(&e5.bundle, Profile::TransposedPoisson).unwrap());
    // entry (2): no derivations, zero bracket
    assert!(entries[1].bundle.op("bracket").unwrap().is_zero());
}

#[test]
fn truncated_polynomials() {
    let b = catalog::truncated_polynomial_algebra(q(), &["x"], &[3]).unwrap();
    assert_eq!(b.dim(), 3);
    assert_eq!(b.space().labels(), ["1", "x", "x^2"]);
    let x = Element::basis(q(), 3, 1);
    assert_eq!(b.op("mul").unwrap().evaluate(&[&x, &x]).unwrap(), Element::basis(q(), 3, 2));
    assert!(check_identity(&b, Axiom::Commutativity, &Binding::default()).unwrap().holds);
    assert!(check_identity(&b, Axiom::Associativity, &Binding::default()).unwrap().holds);

    let xy = catalog::truncated_polynomial_algebra(q(), &["x", "y"], &[2, 2]).unwrap();
    assert_eq!(xy.space().labels(), ["1", "x", "y", "x*y"]);
    for m in ["E_x", "E_y"] {
        let binding = Binding::new().bind(tpa_core::axioms::Role::Op, "mul").bind(tpa_core::axioms::Role::Map, m);
        assert!(check_identity(&xy, Axiom::DerivationOf, &binding).unwrap().holds);
    }
    assert!(xy.map("E_x").unwrap().commutes_with(xy.map("E_y").unwrap()));

    let xyz = catalog::truncated_polynomial_algebra(q(), &["x", "y", "z"], &[2, 2, 2]).unwrap();
    assert_eq!(xyz.space().labels(), ["1", "x", "y", "x*y", "z", "x*z", "y*z", "x*y*z"]);
    assert!(catalog::truncated_polynomial_algebra(q(), &[], &[]).is_err());
    assert!(catalog::truncated_polynomial_algebra(q(), &["x"], &[1]).is_err());
}

/// Multiply truncated monomials x^i x^j directly.
fn poly_oracle(cap: usize, i: usize, j: usize) -> Option<usize> {
    (i + j < cap).then_some(i + j)
}

#[test]
fn polynomial_product_matches_oracle() {
    for cap in 2..=6 {
        let b = catalog::truncated_polynomial_algebra(q(), &["x"], &[cap]).unwrap();
        let mul = b.op("mul").unwrap();
        for i in 0..cap {
            for j in 0..cap {
                let expect = match poly_oracle(cap, i, j) {
                    Some(k) => Element::basis(q(), cap, k),
                    None => Element::zero(q(), cap),
                };
                assert_eq!(mul.eval_basis(&[i, j]), expect);
            }
        }
    }
}

#[test]
fn prelie_poisson_example() {
    let e = catalog::prelie_poisson_2d_example();
    assert!(holds(&e.bundle, Axiom::PreLie).unwrap());
    assert!(holds(&e.bundle, Axiom::Commutativity).unwrap());
    assert!(holds(&e.bundle, Axiom::Associativity).unwrap());
    // (e1·e1)∘e1 = e2∘e1 = 0 but e1·(e1∘e1) = e1·e1 = e2
    let np1 = check_identity(&e.bundle, Axiom::Np1, &Binding::default()).unwrap();
    let w = np1.witness.unwrap();
    assert_eq!(w.tuple, vec![0, 0, 0]);
    assert!(w.left.is_zero());
    assert_eq!(w.right, Element::from_i64s(q(), &[0, 1]));
    assert_eq!(e.verify().unwrap_err().axiom, Axiom::Np1);
    // only the zero product satisfies NP1 against this pre-Lie product
    let zero = catalog::prelie_poisson_2d(q(), &q().zero());
    assert!(passes(&zero.bundle, Profile::PreLiePoisson).unwrap());
    let r = check_identity(&e.bundle, Axiom::NovikovRight, &Binding::default()).unwrap();
    assert!(!r.holds);
    assert!(!passes(&e.bundle, Profile::NovikovPoisson).unwrap());
    let br = constructions::commutator_bracket(e.bundle.op("circ").unwrap()).unwrap();
    let mut b = e.bundle.clone();
    b.add_op(br).unwrap();
    assert!(passes(&b, Profile::TransposedPoisson).unwrap());
    let nb = &catalog::catalog_2d_transposed(q())[6];
    assert_eq!(invariant_fingerprint(&b).unwrap(), invariant_fingerprint(&nb.bundle).unwrap());
}

#[test]
fn every_entry_self_verifies() {
    let all = catalog::all_entries();
    let mut ids: Vec<&str> = all.iter().map(|e| e.id.as_str()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), all.len());
    let defective = ["nonabelian-c", "prelie-poisson-2d"];
    for e in &all {
        let v = e.verify();
        if defective.contains(&e.id.as_str()) {
            assert!(v.is_err(), "{}", e.id);
        } else {
            v.unwrap_or_else(|r| panic!("{}: {r}", e.id));
        }
    }
}

#[test]
fn parameters_are_recorded() {
    let e = catalog::nonabelian_d(q(), &q().ratio(1, 2));
    assert_eq!(e.parameters["lambda"], q().ratio(1, 2));
    assert_eq!(e.bundle.metadata["param.lambda"], "1/2");
    let _: &AlgebraBundle = &e.bundle;
    let _: Option<&LinearMap> = e.bundle.map("D");
    let _: Scalar = q().zero();
}
