use num_rational::BigRational;
use num_traits::Zero;

use tpa_core::algebra::{AlgebraBundle, BasisSpace, Element, Field, LinearMap, MultiLinearOp, Scalar, Symmetry};
use tpa_core::axioms::{check_identity, Axiom, Binding, Role};
use tpa_core::catalog::{self, truncated_polynomial_algebra};
use tpa_core::linalg::{
    compatible_symmetric_products, derivation_space, filter_associative, joint_derivation_space, product_to_vector,
    verify_derivations, Matrix, ProductRule,
};

fn q() -> Field {
    Field::Rational
}

/// A bilinear table written out by hand: `t(i, j)` is the coordinate vector of `e_i ∘ e_j`.
type Table = fn(usize, usize) -> Vec<i64>;

/// Rank over Q by plain fraction elimination, kept separate from the crate's solver.
fn oracle_rank(rows: Vec<Vec<i64>>) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rows of the derivation equations `D(x∘y) = Dx∘y + x∘Dy` on unknowns `D[r][c]` (row-major).
fn derivation_rows(d: usize, t: Table, rows: &mut Vec<Vec<i64>>) {
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut row = vec![0i64; d * d];
                for r in 0..d {
                    row[k * d + r] += t(i, j)[r];
                    row[r * d + i] -= t(r, j)[k];
                    row[r * d + j] -= t(i, r)[k];
                }
                rows.push(row);
            }
        }
    }
}

fn oracle_derivation_dim(d: usize, tables: &[Table]) -> usize {
    let mut rows = Vec::new();
    for &t in tables {
        derivation_rows(d, t, &mut rows);
    }
    d * d - oracle_rank(rows)
}

/// Unknown products `e_a·e_b` (a ≤ b) → coordinate k; the transposed rule
/// `2 z·[x,y] = [z·x, y] + [x, z·y]` is linear in them.
fn oracle_compatible_dim(d: usize, br: Table) -> usize {
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a..d).map(move |b| (a, b))).collect();
    let n = pairs.len() * d;
    let unit = |u: usize, a: usize, b: usize| -> Vec<i64> {
        let (pa, pb) = pairs[u / d];
        let mut v = vec![0; d];
        if (a.min(b), a.max(b)) == (pa, pb) {
            v[u % d] = 1;
        }
        v
    };
    let mut rows = Vec::new();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                for comp in 0..d {
                    let row: Vec<i64> = (0..n)
                        .map(|u| {
                            let lhs: i64 = (0..d).map(|r| 2 * br(x, y)[r] * unit(u, z, r)[comp]).sum();
                            let r1: i64 = (0..d).map(|r| unit(u, z, x)[r] * br(r, y)[comp]).sum();
                            let r2: i64 = (0..d).map(|r| unit(u, z, y)[r] * br(x, r)[comp]).sum();
                            lhs - r1 - r2
                        })
                        .collect();
                    rows.push(row);
                }
            }
        }
    }
    n - oracle_rank(rows)
}

fn ex(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

fn bundle_from(d: usize, mul: Table, br: Option<Table>) -> AlgebraBundle {
    let op = |name: &str, sym: Symmetry, t: Table| {
        MultiLinearOp::from_fn(name, 2, d, q(), sym, |k| Element::from_i64s(q(), &t(k[0], k[1])))
    };
    let mut b = AlgebraBundle::new(BasisSpace::standard(d), q()).with_op(op("mul", Symmetry::Symmetric, mul));
    if let Some(t) = br {
        b = b.with_op(op("bracket", Symmetry::Alternating, t));
    }
    b
}

#[test]
fn zero_product_derivations_are_everything() {
    let b = bundle_from(2, |_, _| vec![0, 0], None);
    assert_eq!(derivation_space(&b, &["mul"]).unwrap().dimension(), 4);
}

#[test]
fn square_to_e2_derivations() {
    let t: Table = |i, j| if (i, j) == (0, 0) { ex(2, 1) } else { vec![0, 0] };
    let b = bundle_from(2, t, None);
    let s = derivation_space(&b, &["mul"]).unwrap();
    assert_eq!(s.dimension(), 2);
    assert_eq!(s.dimension(), oracle_derivation_dim(2, &[t]));
    // [[a,0],[b,2a]]
    let m = LinearMap::from_i64_rows(q(), &[&[1, 0], &[0, 2]]);
    assert!(s.contains(&m.to_flat()));
    let m = LinearMap::from_i64_rows(q(), &[&[0, 0], &[1, 0]]);
    assert!(s.contains(&m.to_flat()));
}

#[test]
fn dual_numbers_derivation() {
    let b = truncated_polynomial_algebra(q(), &["x"], &[2]).unwrap();
    let s = derivation_space(&b, &["mul"]).unwrap();
    assert_eq!(s.dimension(), 1);
    let d = &s.maps()[0];
    assert!(d.column(0).is_zero());
    assert_eq!(d.column(1), Element::from_i64s(q(), &[0, 1]));
}

#[test]
fn commuting_restriction() {
    let b = truncated_polynomial_algebra(q(), &["x", "y"], &[2, 2]).unwrap();
    let s = joint_derivation_space(&b, &["mul"], Some(b.map("E_x").unwrap())).unwrap();
    assert!(s.contains(&b.map("E_y").unwrap().to_flat()));
    assert!(s.contains(&b.map("E_x").unwrap().to_flat()));
    let full = derivation_space(&b, &["mul"]).unwrap();
    let with_id = joint_derivation_space(&b, &["mul"], Some(&LinearMap::identity(q(), 4))).unwrap();
    assert_eq!(full, with_id);
    assert!(s.dimension() <= full.dimension());
}

#[test]
fn joint_derivations_of_nonabelian_c_match_oracle() {
    let c = catalog::entry("nonabelian-c").unwrap().bundle;
    let mul: Table = |i, j| match (i.min(j), i.max(j)) {
        (0, 1) => ex(2, 0),
        (1, 1) => ex(2, 1),
        _ => vec![0, 0],
    };
    let br: Table = |i, j| match (i, j) {
        (0, 1) => ex(2, 1),
        (1, 0) => vec![0, -1],
        _ => vec![0, 0],
    };
    let s = joint_derivation_space(&c, &["mul", "bracket"], None).unwrap();
    assert_eq!(s.dimension(), oracle_derivation_dim(2, &[mul, br]));
    assert!(verify_derivations(&c, &["mul", "bracket"], &s).unwrap());
}

fn heisenberg() -> MultiLinearOp {
    MultiLinearOp::from_fn("bracket", 2, 3, q(), Symmetry::Alternating, |k| {
        if k == [0, 1] {
            Element::basis(q(), 3, 2)
        } else {
            Element::zero(q(), 3)
        }
    })
}

#[test]
fn compatible_products_match_oracle() {
    let br2 = MultiLinearOp::from_fn("bracket", 2, 2, q(), Symmetry::Alternating, |_| Element::basis(q(), 2, 1));
    let s = compatible_symmetric_products(&br2, ProductRule::TransposedLeibniz).unwrap();
    let t2: Table = |i, j| match (i, j) {
        (0, 1) => ex(2, 1),
        (1, 0) => vec![0, -1],
        _ => vec![0, 0],
    };
    assert_eq!(s.dimension(), oracle_compatible_dim(2, t2));

    let zero = MultiLinearOp::zero("bracket", 2, 2, q(), Symmetry::Alternating);
    assert_eq!(compatible_symmetric_products(&zero, ProductRule::TransposedLeibniz).unwrap().dimension(), 6);

    let h = compatible_symmetric_products(&heisenberg(), ProductRule::TransposedLeibniz).unwrap();
    let th: Table = |i, j| match (i, j) {
        (0, 1) => ex(3, 2),
        (1, 0) => vec![0, 0, -1],
        _ => vec![0, 0, 0],
    };
    assert_eq!(h.dimension(), oracle_compatible_dim(3, th));
}

#[test]
fn solution_basis_members_satisfy_the_rule() {
    for (br, rule) in [
        (heisenberg(), ProductRule::TransposedLeibniz),
        (heisenberg(), ProductRule::Leibniz),
        (catalog::entry("nonabelian-d").unwrap().bundle.op("bracket").unwrap().clone(), ProductRule::TransposedLeibniz),
    ] {
        let s = compatible_symmetric_products(&br, rule).unwrap();
        for m in s.ops("mul") {
            let b = AlgebraBundle::new(BasisSpace::standard(br.dim()), q()).with_op(m).with_op(br.clone());
            assert!(check_identity(&b, rule.axiom(), &Binding::default()).unwrap().holds);
        }
    }
}

#[test]
fn derivation_basis_members_satisfy_leibniz() {
    for e in catalog::all_entries() {
        let names: Vec<&str> = ["mul", "bracket"].into_iter().filter(|n| e.bundle.op(n).is_some()).collect();
        let s = joint_derivation_space(&e.bundle, &names, None).unwrap();
        for d in s.maps() {
            let b = e.bundle.clone().with_map("__probe", d);
            for n in &names {
                let binding = Binding::new().bind(Role::Op, *n).bind(Role::Map, "__probe");
                assert!(check_identity(&b, Axiom::DerivationOf, &binding).unwrap().holds, "{}", e.id);
            }
        }
    }
}

#[test]
fn dimensions_survive_relabeling() {
    for e in catalog::all_entries() {
        let d = e.bundle.dim();
        let perm: Vec<usize> = (0..d).rev().collect();
        let p = e.bundle.permute_basis(&perm).unwrap();
        let names: Vec<&str> = ["mul", "bracket"].into_iter().filter(|n| e.bundle.op(n).is_some()).collect();
        assert_eq!(
            joint_derivation_space(&e.bundle, &names, None).unwrap().dimension(),
            joint_derivation_space(&p, &names, None).unwrap().dimension(),
            "{}",
            e.id
        );
        if let Some(br) = e.bundle.op("bracket") {
            assert_eq!(
                compatible_symmetric_products(br, ProductRule::TransposedLeibniz).unwrap().dimension(),
                compatible_symmetric_products(p.op("bracket").unwrap(), ProductRule::TransposedLeibniz)
                    .unwrap()
                    .dimension()
            );
        }
    }
}

#[test]
fn associativity_filter() {
    let br2 = MultiLinearOp::from_fn("bracket", 2, 2, q(), Symmetry::Alternating, |_| Element::basis(q(), 2, 1));
    let s = compatible_symmetric_products(&br2, ProductRule::TransposedLeibniz).unwrap();
    // (a,b,c) = (1,0,0): e1·e1 = e1, e1·e2 = e2
    let v: Vec<Scalar> = [1, 0, 0, 1, 0, 0].iter().map(|&x| q().from_i64(x)).collect();
    let coords = s.coordinates_of(&v).unwrap();
    let zero = vec![q().zero(); s.dimension()];
    let kept = filter_associative(&s, &[coords.clone(), zero]).unwrap();
    assert_eq!(kept.len(), 2);
    assert_eq!(product_to_vector(&kept[0].1), v);

    // over the zero bracket: e1·e1 = e2, e2·e2 = e1 is not associative
    let free = compatible_symmetric_products(
        &MultiLinearOp::zero("bracket", 2, 2, q(), Symmetry::Alternating),
        ProductRule::TransposedLeibniz,
    )
    .unwrap();
    let bad: Vec<Scalar> = [0, 1, 0, 0, 1, 0].iter().map(|&x| q().from_i64(x)).collect();
    let c = free.coordinates_of(&bad).unwrap();
    assert!(filter_associative(&free, &[c]).unwrap().is_empty());
    assert!(filter_associative(&derivation_space(&catalog::entry("der-1").unwrap().bundle, &["mul"]).unwrap(), &[]).is_err());
}

#[test]
fn matrix_rref_and_nullspace() {
    let r = |v: &[i64]| v.iter().map(|&x| q().from_i64(x)).collect::<Vec<_>>();
    let m = Matrix::from_rows(q(), 3, vec![r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[1, 0, 1])]);
    assert_eq!(m.rank(), 2);
    let ns = m.nullspace();
    assert_eq!(ns.len(), 1);
    for row in m.rows() {
        let dot = row.iter().zip(&ns[0]).fold(q().zero(), |acc, (a, b)| acc.add(&a.mul(b)));
        assert!(dot.is_zero());
    }
    assert_eq!(oracle_rank(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]), 2);
}
