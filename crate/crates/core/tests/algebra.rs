use proptest::prelude::*;

use tpa_core::algebra::{AlgebraError, BasisSpace, Element, Field, LinearMap, MultiLinearOp, Symmetry};
use tpa_core::catalog::truncated_polynomial_algebra;

fn q() -> Field {
    Field::Rational
}

#[test]
fn scalar_parsing() {
    assert_eq!(q().parse("2/4").unwrap(), q().ratio(1, 2));
    assert_eq!(q().parse("-3").unwrap(), q().from_i64(-3));
    assert_eq!(q().parse("-3").unwrap().to_canonical_string(), "-3");
    let f5 = Field::prime(5).unwrap();
    assert_eq!(f5.parse("7").unwrap(), f5.from_i64(2));
    assert_eq!(f5.parse("-1").unwrap().residue(), Some(4));
    assert_eq!(f5.parse("1/2").unwrap(), f5.from_i64(3));
    assert!(q().parse("1/0").is_err());
    assert!(q().parse("x").is_err());
    assert_eq!(Field::prime(4), Err(AlgebraError::NotPrime(4)));
    assert_eq!(Field::prime(2), Err(AlgebraError::EvenCharacteristic));
}

#[test]
fn truncated_product_and_euler_map() {
    let b = truncated_polynomial_algebra(q(), &["x"], &[3]).unwrap();
    let mul = b.op("mul").unwrap();
    let x = Element::basis(q(), 3, 1);
    let x2 = Element::basis(q(), 3, 2);
    assert_eq!(mul.evaluate(&[&x, &x]).unwrap(), x2);
    assert!(mul.evaluate(&[&x, &x2]).unwrap().is_zero());
    let d = b.map("E_x").unwrap();
    assert_eq!(d.apply(&x2).unwrap(), x2.scale(&q().from_i64(2)));
    let v = Element::from_i64s(q(), &[1, -2, 5]);
    assert_eq!(LinearMap::identity(q(), 3).apply(&v).unwrap(), v);
    assert!(LinearMap::zero(q(), 3).apply(&v).unwrap().is_zero());
}

#[test]
fn apply_rejects_wrong_dimension() {
    let m = LinearMap::identity(q(), 2);
    assert!(m.apply(&Element::zero(q(), 3)).is_err());
}

#[test]
fn normalize_symmetric_and_alternating() {
    let w = Element::from_i64s(q(), &[1, 2]);
    let sym = MultiLinearOp::normalize("m", 2, 2, q(), Symmetry::Symmetric, [(vec![1, 0], w.clone())]).unwrap();
    assert_eq!(sym.eval_basis(&[0, 1]), w);
    assert_eq!(sym.entries().next().unwrap().0, &[0, 1][..]);

    let alt = MultiLinearOp::normalize("b", 2, 2, q(), Symmetry::Alternating, [(vec![1, 0], w.clone())]).unwrap();
    assert_eq!(alt.eval_basis(&[0, 1]), w.neg());
    assert_eq!(alt.eval_basis(&[1, 0]), w);

    let u = Element::from_i64s(q(), &[0, 1]);
    let err = MultiLinearOp::normalize("m", 2, 2, q(), Symmetry::Symmetric, [(vec![0, 1], u), (vec![1, 0], w.clone())]);
    assert!(matches!(err, Err(AlgebraError::InconsistentSymmetry { .. })));

    let diag = MultiLinearOp::normalize("b", 2, 2, q(), Symmetry::Alternating, [(vec![0, 0], w)]);
    assert!(matches!(diag, Err(AlgebraError::AlternatingDiagonal { .. })));
}

#[test]
fn basis_labels_unique() {
    assert!(BasisSpace::new(vec!["a".into(), "a".into()]).is_err());
    assert!(BasisSpace::new(vec![]).is_err());
    assert_eq!(BasisSpace::standard(2).labels(), &["e1".to_string(), "e2".to_string()]);
}

#[test]
fn bundle_names_unique() {
    let mut b = truncated_polynomial_algebra(q(), &["x"], &[2]).unwrap();
    let dup = b.op("mul").unwrap().clone();
    assert!(matches!(b.add_op(dup), Err(AlgebraError::DuplicateName(_))));
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn op_strategy() -> impl Strategy<Value = MultiLinearOp> {
    (1usize..=3, 2usize..=3, prop::bool::ANY).prop_flat_map(|(dim, arity, alt)| {
        let len = dim.pow(arity as u32) * dim;
        prop::collection::vec(-3i64..=3, len).prop_map(move |vals| {
            let sym = if alt { Symmetry::Alternating } else { Symmetry::None };
            MultiLinearOp::from_fn("op", arity, dim, q(), sym, |key| {
                let idx = key.iter().fold(0, |acc, &k| acc * dim + k);
                Element::from_i64s(q(), &vals[idx * dim..(idx + 1) * dim])
            })
        })
    })
}

fn element(dim: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(-4i64..=4, dim).prop_map(|v| Element::from_i64s(Field::Rational, &v))
}

proptest! {
    #[test]
    fn evaluation_is_multilinear(
        op in op_strategy(),
        seed in prop::collection::vec(-4i64..=4, 12),
        a in -3i64..=3,
        b in -3i64..=3,
        slot in 0usize..3,
    ) {
        let d = op.dim();
        let vec_at = |k: usize| Element::from_i64s(q(), &seed[k * 3..k * 3 + d]);
        let args: Vec<Element> = (0..op.arity()).map(vec_at).collect();
        let u = vec_at(3);
        let slot = slot % op.arity();
        let (sa, sb) = (q().from_i64(a), q().from_i64(b));
        let mut mixed = args.clone();
        mixed[slot] = args[slot].scale(&sa).add(&u.scale(&sb));
        let mut with_u = args.clone();
        with_u[slot] = u;
        let eval = |xs: &[Element]| op.evaluate(&xs.iter().collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(eval(&mixed), eval(&args).scale(&sa).add(&eval(&with_u).scale(&sb)));
    }

    #[test]
    fn alternating_ops_change_sign_under_permutation(op in op_strategy()) {
        prop_assume!(op.symmetry() == Symmetry::Alternating);
        for key in tpa_core::algebra::tuples(op.dim(), op.arity()) {
            let base = op.eval_basis(&key);
            for p in permutations(op.arity()) {
                let permuted: Vec<usize> = p.iter().map(|&i| key[i]).collect();
                prop_assert_eq!(op.eval_basis(&permuted), base.scale(&q().from_i64(sign(&p))));
            }
        }
    }

    #[test]
    fn alternating_ops_vanish_on_repeats(op in op_strategy(), v in element(3)) {
        prop_assume!(op.symmetry() == Symmetry::Alternating);
        let v = Element::from_coeffs(v.coeffs()[..op.dim()].to_vec());
        let mut args = vec![v.clone(), v];
        args.extend((2..op.arity()).map(|i| Element::basis(q(), op.dim(), i % op.dim())));
        prop_assert!(op.evaluate(&args.iter().collect::<Vec<_>>()).unwrap().is_zero());
    }

    #[test]
    fn zero_argument_gives_zero(op in op_strategy()) {
        let args: Vec<Element> = (0..op.arity())
            .map(|i| if i == 0 { Element::zero(q(), op.dim()) } else { Element::basis(q(), op.dim(), 0) })
            .collect();
        prop_assert!(op.evaluate(&args.iter().collect::<Vec<_>>()).unwrap().is_zero());
    }

    #[test]
    fn normalize_is_idempotent(op in op_strategy()) {
        let again = MultiLinearOp::normalize(
            op.name(),
            op.arity(),
            op.dim(),
            op.field(),
            op.symmetry(),
            op.entries().map(|(k, v)| (k.to_vec(), v.clone())),
        )
        .unwrap();
        prop_assert_eq!(&again, &op);
    }

    #[test]
    fn map_composition_is_matrix_product(
        a in prop::collection::vec(-3i64..=3, 9),
        b in prop::collection::vec(-3i64..=3, 9),
        v in element(3),
    ) {
        let m = |xs: &[i64]| LinearMap::from_i64_rows(q(), &[&xs[0..3], &xs[3..6], &xs[6..9]]);
        let (ma, mb) = (m(&a), m(&b));
        prop_assert_eq!(ma.compose(&mb).apply(&v).unwrap(), ma.apply(&mb.apply(&v).unwrap()).unwrap());
    }

    #[test]
    fn gf_arithmetic_matches_integer_residues(x in -50i64..50, y in -50i64..50) {
        let f = Field::prime(7).unwrap();
        let r = |n: i64| f.from_i64(n);
        prop_assert_eq!(r(x).mul(&r(y)), r(x * y));
        prop_assert_eq!(r(x).add(&r(y)), r(x + y));
        prop_assert_eq!(r(x).sub(&r(y)), r(x - y));
        if x.rem_euclid(7) != 0 {
            prop_assert!(r(x).mul(&r(x).inverse().unwrap()).is_one());
        }
    }
}
