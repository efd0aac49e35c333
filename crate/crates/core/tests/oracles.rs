use std::collections::BTreeSet;

use serre_core::breuil::{all_modules, ext_dim, hom_exists, models_of_type, Params, PrincipalSeriesType};
use serre_core::chars::{GaloisChar, InertialChar};
use serre_core::oracle::{
    brute_ext_dim, brute_hom_space, brute_jh, brute_models_of_type, brute_weight_scan, det_weight, module_set,
    BrauerTable, Limits, Presentation,
};
use serre_core::verify::{counterexample_report, generic_pairs};
use serre_core::weights::{enumerate_wss, jh_constituents, partition, tau_of_a, type_indices, SerreWeight};

#[test]
fn ext_and_hom_at_p5() {
    let params = Params::new(5, 1, 1, 1).unwrap();
    let limits = Limits::default();
    let k = params.field();
    let ms = all_modules(&params, k.one());
    for m in &ms {
        let pm = Presentation::normalized(&params, m);
        for n in ms.iter().chain(&all_modules(&params, k.generator())) {
            let pn = Presentation::spread(&params, n);
            let h = brute_hom_space(&params, &pm, &pn, &limits).unwrap();
            assert_eq!(h.is_nonzero(), hom_exists(&params, m, n).is_some(), "{m:?} → {n:?}");
            let rep = brute_ext_dim(&params, &pm, &pn, &limits).unwrap();
            assert_eq!(rep.coker, ext_dim(&params, m, n), "Ext({m:?}, {n:?})");
        }
    }
}

#[test]
fn hom_witness_has_the_predicted_degree() {
    let params = Params::new(3, 2, 1, 1).unwrap();
    let ms = all_modules(&params, params.field().one());
    let limits = Limits::default();
    let mut nonzero = 0;
    for m in ms.iter().step_by(5) {
        for n in ms.iter().step_by(3) {
            if hom_exists(&params, m, n).is_some() {
                let h = brute_hom_space(
                    &params,
                    &Presentation::normalized(&params, m),
                    &Presentation::normalized(&params, n),
                    &limits,
                )
                .unwrap();
                assert_eq!(h.dim, 1);
                nonzero += 1;
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn weight_scan_agrees_everywhere_small() {
    let limits = Limits::default();
    for (p, f, ep) in [(3u32, 2u32, 1u32), (3, 2, 2), (5, 1, 3), (5, 2, 1)] {
        let modulus = (p as i64).pow(f) - 1;
        for s1 in 0..modulus {
            for s2 in (0..modulus).step_by(if f == 2 && p == 5 { 5 } else { 1 }) {
                let (chi1, chi2) = (InertialChar::new(p, f, s1), InertialChar::new(p, f, s2));
                let mut fast = enumerate_wss(&chi1, &chi2, ep);
                for (_, ps) in fast.iter_mut() {
                    ps.sort();
                }
                assert_eq!(brute_weight_scan(&chi1, &chi2, ep, &limits).unwrap(), fast, "({s1}, {s2})");
            }
        }
    }
}

fn check_jh(p: u32, f: u32, ep: u32) -> usize {
    let limits = Limits::default();
    let mut table = BrauerTable::new(p, f, &limits).unwrap();
    let mut n = 0;
    for gen in generic_pairs(p, f, ep) {
        let part = partition(&gen).unwrap();
        for a in type_indices(f as usize, ep as i64) {
            let tau = tau_of_a(&gen, &a).unwrap();
            let jh: BTreeSet<SerreWeight> = jh_constituents(&gen, &a).unwrap().into_iter().collect();
            let brute = table.decompose_induced(&tau.lambda, &tau.lambda_prime).unwrap();
            assert!(brute.iter().all(|(_, m)| *m == 1));
            let brute: BTreeSet<SerreWeight> = brute.into_iter().map(|(w, _)| w).collect();
            if tau.scalar {
                assert_eq!(jh.into_iter().collect::<Vec<_>>(), vec![det_weight(&tau.lambda)]);
                let wp: BTreeSet<SerreWeight> = part.cell(&a).unwrap().w_prime().into_iter().collect();
                assert_eq!(brute, wp);
            } else {
                assert_eq!(jh, brute, "{gen:?}, a = {a:?}");
            }
            n += 1;
        }
    }
    n
}

#[test]
fn jh_formula_against_brauer_characters() {
    assert!(check_jh(3, 2, 1) > 0);
    assert!(check_jh(7, 1, 2) > 0);
    assert!(check_jh(7, 1, 3) > 0);
}

#[test]
fn brute_jh_entry_point() {
    let one = InertialChar::trivial(5, 1);
    let cons = brute_jh(&one, &one, &Limits::default()).unwrap();
    let dims: Vec<i64> = cons.iter().map(|(w, _)| w.dim()).collect();
    assert_eq!(dims.iter().sum::<i64>(), 6);
    assert_eq!(cons.len(), 2);
}

#[test]
fn models_agree_with_the_scan_at_p5() {
    let params = Params::new(5, 1, 1, 1).unwrap();
    let k = params.field();
    let mut nonempty = 0;
    for s in 0..4 {
        for t in 0..4 {
            let tau = PrincipalSeriesType::new(params.inertial(s), params.inertial(t));
            for u in 0..4 {
                let chi = GaloisChar::new(params.inertial(u), k.one());
                let models = models_of_type(&params, &tau, &chi).unwrap();
                let brute = brute_models_of_type(&params, &tau, &chi).unwrap();
                assert_eq!(module_set(models.iter().map(|m| m.module.clone())), module_set(brute));
                nonempty += usize::from(!models.is_empty());
            }
        }
    }
    assert!(nonempty > 0);
}

#[test]
fn counterexample_at_p5() {
    let limits = Limits::default();
    let mut table = BrauerTable::new(5, 2, &limits).unwrap();
    for b in 1..=3 {
        let r = counterexample_report(&mut table, 5, b).unwrap();
        assert_eq!((r.mu_lcris.as_slice(), r.mu_prime_lcris.as_slice()), (&[1][..], &[2][..]));
        assert_eq!(r.types, vec![r.expected_type]);
        assert!(r.mu_prime_in_type);
    }
}
