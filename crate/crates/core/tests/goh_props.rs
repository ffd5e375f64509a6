//! Scale invariance and structural properties of the Goh/Legendre checks.

use carnot_core::algebra::StratifiedAlgebra;
use carnot_core::goh::{
    eval_goh_legendre_step3, goh_solution_space, AbnormalCovector, ConstantControl,
};
use carnot_core::quotient::{h2_of_h3, HyperplaneCertificate};
use carnot_core::rational::{rat, rat_i, zero_vec, Rational};

use proptest::prelude::*;

fn step3_algebras() -> Vec<StratifiedAlgebra> {
    vec![StratifiedAlgebra::engel(), StratifiedAlgebra::free_step3(2), StratifiedAlgebra::free_step3(3)]
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    ((-5i64..=5), (1i64..=4))
        .prop_filter("nonzero", |(p, _)| *p != 0)
        .prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flags_invariant_under_positive_scaling(
        q in nonzero_rational(),
        lam_idx in 0usize..4,
        u_raw in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let e = StratifiedAlgebra::engel();
        let mut lam0 = zero_vec(4);
        lam0[lam_idx] = rat_i(1);
        lam0[3] += rat(1, 2); // keep nonzero and mixed
        let lam = AbnormalCovector::new(&e, lam0.clone()).unwrap();
        let u = ConstantControl::new(&e, u_raw.iter().map(|&x| rat_i(x)).collect()).unwrap();
        let base = eval_goh_legendre_step3(&e, &lam, &u).unwrap();

        let scaled: Vec<Rational> = lam0.iter().map(|x| x * &q * &q).collect(); // q^2 > 0
        let lam_s = AbnormalCovector::new(&e, scaled).unwrap();
        let rep = eval_goh_legendre_step3(&e, &lam_s, &u).unwrap();
        prop_assert_eq!(base.abnormal_ok, rep.abnormal_ok);
        prop_assert_eq!(base.goh_ok, rep.goh_ok);
        prop_assert_eq!(base.legendre_ok, rep.legendre_ok);
        prop_assert_eq!(base.strong_legendre_ok, rep.strong_legendre_ok);

        // abnormal/goh also invariant under any nonzero scaling
        let neg: Vec<Rational> = lam0.iter().map(|x| -(x * &q)).collect();
        let lam_n = AbnormalCovector::new(&e, neg).unwrap();
        let rep_n = eval_goh_legendre_step3(&e, &lam_n, &u).unwrap();
        prop_assert_eq!(base.abnormal_ok, rep_n.abnormal_ok);
        prop_assert_eq!(base.goh_ok, rep_n.goh_ok);
    }

    #[test]
    fn legendre_of_both_signs_forces_zero_form(
        lam3 in nonzero_rational(),
        u_raw in proptest::collection::vec(-2i64..=2, 2),
    ) {
        let e = StratifiedAlgebra::engel();
        let mut lam0 = zero_vec(4);
        lam0[3] = lam3;
        let lam_p = AbnormalCovector::new(&e, lam0.clone()).unwrap();
        let lam_m = AbnormalCovector::new(&e, lam0.iter().map(|x| -x).collect()).unwrap();
        let u = ConstantControl::new(&e, u_raw.iter().map(|&x| rat_i(x)).collect()).unwrap();
        let rp = eval_goh_legendre_step3(&e, &lam_p, &u).unwrap();
        let rm = eval_goh_legendre_step3(&e, &lam_m, &u).unwrap();
        if rp.legendre_ok && rm.legendre_ok {
            prop_assert!(rp.legendre_form.is_zero());
        }
        // strong implies legendre, always
        prop_assert!(!rp.strong_legendre_ok || rp.legendre_ok);
        prop_assert!(!rm.strong_legendre_ok || rm.legendre_ok);
    }

    #[test]
    fn h2_independent_of_certificate_scale(q in nonzero_rational()) {
        let f = StratifiedAlgebra::free_step3(3);
        let lam = vec![rat_i(1), rat_i(0), rat(2, 3), rat_i(0), rat_i(-1), rat_i(0), rat_i(0), rat_i(0)];
        let n3 = f.stratum_dim(2);
        let lam = lam[..n3].to_vec();
        let c1 = HyperplaneCertificate::new(&f, &lam).unwrap();
        let scaled: Vec<Rational> = lam.iter().map(|x| x * &q).collect();
        let c2 = HyperplaneCertificate::new(&f, &scaled).unwrap();
        prop_assert_eq!(h2_of_h3(&f, &c1).unwrap(), h2_of_h3(&f, &c2).unwrap());
    }
}

#[test]
fn trivial_control_legendre_holds_on_top_stratum_covectors() {
    for a in step3_algebras() {
        let u0 = ConstantControl::new(&a, zero_vec(a.rank())).unwrap();
        for sp in goh_solution_space(&a, &u0).unwrap() {
            let rep = eval_goh_legendre_step3(&a, &sp, &u0).unwrap();
            assert!(rep.abnormal_ok && rep.goh_ok && rep.legendre_ok);
            assert!(rep.legendre_form.is_zero());
        }
        // u = 0 kills no constraints: solution space is all of g_3^*
        assert_eq!(
            goh_solution_space(&a, &u0).unwrap().len(),
            a.stratum_dim(2)
        );
    }
}
