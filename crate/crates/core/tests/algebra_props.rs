//! Property tests for the exact half: rational linear algebra, stratified
//! algebra validation against an independent Jacobi oracle, quotient
//! functoriality, and the PSD decision against a principal-minor oracle.

use carnot_core::algebra::{free_step3_dim, StratifiedAlgebra};
use carnot_core::goh::{char_poly_minor_sums, is_psd};
use carnot_core::quotient::generic_dim_bound;
use carnot_core::rational::{basis_vec, is_zero_vec, rat, rat_i, Rational, RationalMatrix};
use carnot_core::subspace::{
    is_graded_ideal, is_graded_subalgebra, quotient_algebra, GradedSubspace,
};

use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn catalog_algebras() -> Vec<StratifiedAlgebra> {
    vec![
        StratifiedAlgebra::heisenberg(),
        StratifiedAlgebra::engel(),
        StratifiedAlgebra::filiform(4),
        StratifiedAlgebra::filiform(5),
        StratifiedAlgebra::free_step3(2),
        StratifiedAlgebra::free_step3(3),
    ]
}

/// Independent brute-force Jacobi check: triple loop over all basis
/// quadruples, expanding structure constants directly.
fn jacobi_brute_force(a: &StratifiedAlgebra) -> bool {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut sum = Rational::zero();
                    for m in 0..n {
                        sum += a.structure_constant(i, j, m) * a.structure_constant(m, k, l);
                        sum += a.structure_constant(j, k, m) * a.structure_constant(m, i, l);
                        sum += a.structure_constant(k, i, m) * a.structure_constant(m, j, l);
                    }
                    if !sum.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn validate_matches_brute_force_jacobi() {
    for a in catalog_algebras() {
        let rep = a.validate();
        assert!(rep.is_ok(), "{:?} failed: {rep:?}", a);
        assert!(jacobi_brute_force(&a), "brute force disagrees on {:?}", a);
    }
    // and on a constructed violator
    let bad = StratifiedAlgebra::from_brackets(
        "bad",
        &[2, 1, 1, 1],
        &[
            (0, 1, vec![(2, rat_i(1))]),
            (0, 2, vec![(3, rat_i(1))]),
            (1, 2, vec![(3, rat_i(1))]),
            (0, 3, vec![(4, rat_i(1))]),
        ],
    )
    .unwrap();
    assert!(!bad.validate().jacobi_ok);
    assert!(!jacobi_brute_force(&bad));
}

#[test]
fn quotient_projection_commutes_with_bracket() {
    // Engel mod center, Engel mod (Y,Z), free(2,3) mod its Engel-type
    // ideal span{e5}, filiform(4) mod center
    let cases: Vec<(StratifiedAlgebra, Vec<(usize, Vec<Rational>)>)> = vec![
        (StratifiedAlgebra::engel(), vec![(2, vec![rat_i(1)])]),
        (
            StratifiedAlgebra::engel(),
            vec![(1, vec![rat_i(1)]), (2, vec![rat_i(1)])],
        ),
        (
            StratifiedAlgebra::free_step3(2),
            vec![(2, vec![rat_i(0), rat_i(1)])],
        ),
        (StratifiedAlgebra::filiform(4), vec![(3, vec![rat_i(1)])]),
    ];
    for (a, vectors) in cases {
        let h = GradedSubspace::from_vectors(&a, &vectors).unwrap();
        assert!(is_graded_ideal(&a, &h));
        let (q, proj) = quotient_algebra(&a, &h).unwrap();
        assert!(q.validate().is_ok());
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let lhs = proj.mul_vec(&a.bracket_basis(i, j));
                let rhs = q
                    .bracket(&proj.mul_vec(&basis_vec(n, i)), &proj.mul_vec(&basis_vec(n, j)))
                    .unwrap();
                assert_eq!(lhs, rhs, "{:?} pair ({i},{j})", a);
            }
        }
    }
}

#[test]
fn graded_ideal_implies_subalgebra() {
    let e = StratifiedAlgebra::engel();
    let f = StratifiedAlgebra::free_step3(2);
    let subspaces = |a: &StratifiedAlgebra| -> Vec<GradedSubspace> {
        let mut out = vec![GradedSubspace::zero(a), GradedSubspace::full(a)];
        for st in 0..a.step() {
            for c in 0..a.stratum_dim(st) {
                out.push(
                    GradedSubspace::from_vectors(a, &[(st, basis_vec(a.stratum_dim(st), c))])
                        .unwrap(),
                );
            }
        }
        out
    };
    for a in [&e, &f] {
        for w in subspaces(a) {
            if is_graded_ideal(a, &w) {
                assert!(is_graded_subalgebra(a, &w));
            }
        }
    }
}

#[test]
fn dim_bound_matches_witt_formula() {
    // Witt-formula oracle: k + k(k-1)/2 + (k^3 - k)/3, plus the
    // tensor-space construction as a second, independent cross-check in
    // the small ranks.
    for k in 2..=6i64 {
        let bound = generic_dim_bound(k).unwrap();
        let witt = free_step3_dim(k as usize);
        assert_eq!(bound + rat_i(1), rat_i(witt as i64), "k = {k}");
    }
    for k in 2..=4usize {
        assert_eq!(StratifiedAlgebra::free_step3(k).dim(), free_step3_dim(k));
    }
}

/// Exact determinant by Laplace expansion (test oracle only).
fn det_laplace(m: &RationalMatrix) -> Rational {
    let n = m.rows();
    if n == 0 {
        return rat_i(1);
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Rational::zero();
    for c in 0..n {
        if m.get(0, c).is_zero() {
            continue;
        }
        let mut rows = Vec::with_capacity(n - 1);
        for r in 1..n {
            let mut row = Vec::with_capacity(n - 1);
            for cc in 0..n {
                if cc != c {
                    row.push(m.get(r, cc).clone());
                }
            }
            rows.push(row);
        }
        let minor = det_laplace(&RationalMatrix::from_rows(rows));
        let term = m.get(0, c) * minor;
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// PSD oracle: every principal minor (all index subsets) nonnegative.
fn psd_by_principal_minors(s: &RationalMatrix) -> bool {
    let n = s.rows();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut rows = Vec::with_capacity(idx.len());
        for &r in &idx {
            rows.push(idx.iter().map(|&c| s.get(r, c).clone()).collect());
        }
        if det_laplace(&RationalMatrix::from_rows(rows)).is_negative() {
            return false;
        }
    }
    true
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn kernel_image_rank_nullity(entries in proptest::collection::vec(small_rational(), 1..=30),
                                 cols in 1usize..=6) {
        let rows = entries.len().div_ceil(cols).max(1);
        let mut data = entries;
        data.resize(rows * cols, Rational::zero());
        let rows_vec: Vec<Vec<Rational>> =
            data.chunks(cols).map(|c| c.to_vec()).collect();
        let m = RationalMatrix::from_rows(rows_vec);
        let ki = m.kernel_image();
        prop_assert_eq!(ki.rank + ki.kernel.rows(), m.cols());
        prop_assert_eq!(ki.image.rows(), ki.rank);
        for r in 0..ki.kernel.rows() {
            prop_assert!(is_zero_vec(&m.mul_vec(ki.kernel.row(r))));
        }
    }

    #[test]
    fn psd_rule_matches_principal_minor_oracle(
        diag in proptest::collection::vec(small_rational(), 2..=5),
        off in proptest::collection::vec(small_rational(), 10),
        shift_psd in proptest::bool::ANY,
    ) {
        let n = diag.len();
        let mut s = RationalMatrix::zero(n, n);
        let mut it = off.into_iter();
        for i in 0..n {
            s.set(i, i, diag[i].clone());
            for j in (i + 1)..n {
                let v = it.next().unwrap_or_else(|| rat_i(0));
                s.set(i, j, v.clone());
                s.set(j, i, v);
            }
        }
        if shift_psd {
            // make a PSD instance: S := S^T S
            s = s.transpose().mat_mul(&s);
        }
        prop_assert_eq!(is_psd(&s), psd_by_principal_minors(&s));
        if shift_psd {
            prop_assert!(is_psd(&s));
        }
    }

    #[test]
    fn minor_sums_of_gram_matrices_nonnegative(
        entries in proptest::collection::vec(small_rational(), 4..=12),
    ) {
        let n = 2;
        let rows = entries.len() / n;
        let data: Vec<Vec<Rational>> = entries.chunks(n).take(rows).map(|c| c.to_vec()).collect();
        let b = RationalMatrix::from_rows(data);
        let gram = b.transpose().mat_mul(&b);
        for e in char_poly_minor_sums(&gram) {
            prop_assert!(!e.is_negative());
        }
    }
}
