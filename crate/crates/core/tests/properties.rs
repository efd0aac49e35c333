use proptest::prelude::*;
use proptest::sample::Index;

use serre_core::breuil::{all_modules, chi_dual, ext_dim, generic_fibre, hom_exists, upper_bound_model, Params};
use serre_core::chars::{GaloisChar, InertialChar};
use serre_core::gf::Field;
use serre_core::weights::{
    enumerate_wss, genericity, host_index, lcris_dim, mu_of_jd, partition, type_indices, SerreWeight,
};

fn setting() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(vec![(3u32, 1u32), (3, 2), (5, 1), (5, 2), (7, 2), (3, 3)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn digits_round_trip((p, f) in setting(), t in 0i64..10_000) {
        let chi = InertialChar::new(p, f, t);
        let back = InertialChar::from_digits(p, &chi.digits());
        prop_assert_eq!(back, chi);
        prop_assert!(chi.digits().iter().all(|&d| (0..p as i64).contains(&d)));
    }

    #[test]
    fn characters_form_a_group((p, f) in setting(), s in 0i64..500, t in 0i64..500) {
        let (x, y) = (InertialChar::new(p, f, s), InertialChar::new(p, f, t));
        prop_assert!(x.mul(&x.inv()).is_trivial());
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.div(&y).mul(&y), x);
    }

    #[test]
    fn field_axioms((p, m) in setting(), i in 0u32..729, j in 0u32..729) {
        let k = Field::new(p, m).unwrap();
        let n = k.order();
        let (a, b) = (k.exp(i as i64), k.exp(j as i64));
        prop_assert_eq!(k.mul(a, k.inv(a)), k.one());
        prop_assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.pow(a, n as i64 - 1), k.one());
        prop_assert_eq!(k.dlog(k.exp((i % (n - 1)) as i64)), Some(i % (n - 1)));
    }

    #[test]
    fn weight_equality_is_by_residue((p, f) in setting(), m in prop::collection::vec(0i64..40, 3), k in 0i64..5) {
        let f = f as usize;
        let n = vec![1i64; f];
        let w = SerreWeight::new(p, m[..f].to_vec(), n.clone());
        // shifting m_0 by p^f - 1 does not change the weight
        let q1 = (p as i64).pow(f as u32) - 1;
        let mut m2 = m[..f].to_vec();
        m2[0] += k * q1;
        prop_assert_eq!(&SerreWeight::new(p, m2, n.clone()), &w);
        prop_assert_eq!(&SerreWeight::canonical(p, w.m_residue(), n), &w);
        prop_assert_eq!(SerreWeight::new(p, w.m_digits(), w.n().to_vec()).m_digits(), w.m_digits());
    }
}

fn modules_at(p: u32, f: u32, eprime: u32) -> (Params, Vec<serre_core::breuil::RankOneBreuil>) {
    let params = Params::new(p, f, eprime, 1).unwrap();
    let one = params.field().one();
    let ms = all_modules(&params, one);
    (params, ms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn homs_compose(i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let (params, ms) = modules_at(3, 2, 1);
        let (a, b, c) = (i.get(&ms), j.get(&ms), k.get(&ms));
        prop_assert!(hom_exists(&params, a, a).is_some());
        if hom_exists(&params, a, b).is_some() && hom_exists(&params, b, c).is_some() {
            prop_assert!(hom_exists(&params, a, c).is_some());
        }
    }

    #[test]
    fn upper_bound_receives_both(i in any::<Index>(), j in any::<Index>()) {
        let (params, ms) = modules_at(3, 2, 1);
        let (m, n) = (i.get(&ms), j.get(&ms));
        if generic_fibre(&params, m).unwrap() == generic_fibre(&params, n).unwrap() {
            let up = upper_bound_model(&params, m, n).unwrap();
            for (g, (a, b)) in up.alpha().iter().zip(m.alpha().iter().zip(n.alpha())) {
                prop_assert_eq!(*g, *a.max(b));
            }
            prop_assert!(hom_exists(&params, m, &up).is_some());
            prop_assert!(hom_exists(&params, n, &up).is_some());
        }
    }

    #[test]
    fn dual_is_an_involution(i in any::<Index>(), t in 0i64..8) {
        let (params, ms) = modules_at(3, 2, 1);
        let m = i.get(&ms);
        let chi2 = GaloisChar::new(params.inertial(t), params.field().one());
        let d = chi_dual(&params, m, &chi2).unwrap();
        prop_assert_eq!(generic_fibre(&params, &d).unwrap(), chi2);
        let fibre = generic_fibre(&params, m).unwrap();
        prop_assert_eq!(&chi_dual(&params, &d, &fibre).unwrap(), m);
    }

    #[test]
    fn ext_bounds(i in any::<Index>(), j in any::<Index>()) {
        // at most one slot per residue class, plus the hom slot
        let (params, ms) = modules_at(3, 1, 3);
        let (m, n) = (i.get(&ms), j.get(&ms));
        let d = ext_dim(&params, m, n) as i64;
        let hom = i64::from(hom_exists(&params, m, n).is_some());
        let band = n.r()[0].min(params.e() - m.r()[0]);
        prop_assert!(d >= hom);
        prop_assert!(d - hom <= band / params.ekl() + 1);
    }
}

fn generic_input() -> impl Strategy<Value = (u32, u32, u32, i64, Vec<i64>)> {
    prop::sample::select(vec![(5u32, 1u32, 1u32), (5, 2, 1), (5, 2, 2), (7, 2, 1), (7, 2, 2), (7, 2, 3), (7, 1, 3)])
        .prop_flat_map(|(p, f, ep)| {
            let band = p as i64 - 1 - 2 * ep as i64;
            (Just(p), Just(f), Just(ep), 0i64..1000, prop::collection::vec(0..=band, f as usize))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn partition_invariants((p, f, ep, s, b) in generic_input()) {
        let chi1 = InertialChar::new(p, f, s);
        let q: Vec<i64> = b.iter().map(|x| x + ep as i64).collect();
        let chi2 = chi1.mul(&InertialChar::from_digits(p, &q));
        let gen = genericity(&chi1, &chi2, ep).unwrap();
        prop_assert_eq!(&gen.b, &b);
        let part = partition(&gen).unwrap();
        prop_assert_eq!(part.cells.len(), type_indices(f as usize, ep as i64).len());
        let mut seen = std::collections::BTreeSet::new();
        for cell in &part.cells {
            prop_assert_eq!(cell.w_a.len(), 1usize << (f as usize - cell.delta(ep as i64)));
            for (param, w) in &cell.w_a {
                prop_assert!(seen.insert(w.clone()));
                prop_assert_eq!(&host_index(param), &cell.a);
                prop_assert_eq!(&mu_of_jd(&gen, param).unwrap(), w);
                let want: i64 = cell.a.iter().map(|x| ep as i64 - x).sum();
                prop_assert_eq!(lcris_dim(ep, param), want);
            }
        }
        let scanned = enumerate_wss(&chi1, &chi2, ep).len();
        prop_assert!(scanned >= seen.len() && scanned <= seen.len() + 2);
    }
}
