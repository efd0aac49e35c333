use std::collections::BTreeMap;

use super::Limits;
use crate::chars::InertialChar;
use crate::error::{Error, Result};
use crate::weights::{all_n, legal_params, SerreWeight, WeightParam};

/// Digit tuples in [0, p-1]^f, lexicographic.
fn digit_tuples(p: u32, f: usize) -> Vec<Vec<i64>> {
    all_n(p, f)
}

/// The explicit weight set by a second route: for each (J, d) and n, every digit
/// tuple m is tested with the two congruences written as products of ω_i powers.
/// Weights are merged up to isomorphism. Output ascends in (m-residue, n).
pub fn brute_weight_scan(
    chi1: &InertialChar,
    chi2: &InertialChar,
    eprime: u32,
    limits: &Limits,
) -> Result<Vec<(SerreWeight, Vec<WeightParam>)>> {
    let (p, f) = (chi1.p(), chi1.f() as usize);
    let q = (p as i64).pow(f as u32);
    if q > limits.max_q {
        return Err(Error::SizeLimit(format!("q = {q} exceeds the oracle limit {}", limits.max_q)));
    }
    let ep = eprime as i64;
    let ms = digit_tuples(p, f);
    let mut found: BTreeMap<SerreWeight, Vec<WeightParam>> = BTreeMap::new();
    for param in legal_params(f, ep) {
        for n in all_n(p, f) {
            for m in &ms {
                let e2: Vec<i64> = (0..f)
                    .map(|i| m[i] + ep - param.d[i] + if param.j[i] { n[i] } else { 0 })
                    .collect();
                let e1: Vec<i64> = (0..f)
                    .map(|i| m[i] + param.d[i] + if param.j[i] { 0 } else { n[i] })
                    .collect();
                if InertialChar::from_digits(p, &e2) == *chi2 && InertialChar::from_digits(p, &e1) == *chi1 {
                    let w = SerreWeight::new(p, m.clone(), n.clone());
                    let entry = found.entry(w).or_default();
                    if !entry.contains(&param) {
                        entry.push(param.clone());
                    }
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(w, mut params)| {
            params.sort();
            (SerreWeight::canonical(p, w.m_residue(), w.n().to_vec()), params)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::enumerate_wss;

    #[test]
    fn matches_fast_scan() {
        let chi1 = InertialChar::new(5, 2, 7);
        let chi2 = InertialChar::new(5, 2, 7 + 13);
        let brute = brute_weight_scan(&chi1, &chi2, 1, &Limits::default()).unwrap();
        let mut fast = enumerate_wss(&chi1, &chi2, 1);
        for (_, ps) in fast.iter_mut() {
            ps.sort();
        }
        assert_eq!(brute, fast);
    }

    #[test]
    fn exhaustive_small_never_empty() {
        // J = everything with d = 0 always solves both congruences
        for s1 in 0..4 {
            for s2 in 0..4 {
                let (chi1, chi2) = (InertialChar::new(5, 1, s1), InertialChar::new(5, 1, s2));
                let brute = brute_weight_scan(&chi1, &chi2, 2, &Limits::default()).unwrap();
                let fast: Vec<SerreWeight> = enumerate_wss(&chi1, &chi2, 2).into_iter().map(|(w, _)| w).collect();
                assert_eq!(brute.iter().map(|(w, _)| w.clone()).collect::<Vec<_>>(), fast);
                assert!(!brute.is_empty());
            }
        }
    }
}
