use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::chars::{digits_of, place, InertialChar};

/// The weight μ_{m,n} = ⊗_i (det^{m_i} ⊗ Sym^{n_i}) ⊗_{k,σ_i} k_E. Two weights
/// are equal when n agrees and Σ m_i p^{f-i} agrees mod p^f - 1; `m` is kept
/// only for display.
#[derive(Clone)]
pub struct SerreWeight {
    p: u32,
    m: Vec<i64>,
    m_res: i64,
    n: Vec<i64>,
}

impl SerreWeight {
    pub fn new(p: u32, m: Vec<i64>, n: Vec<i64>) -> SerreWeight {
        let m_res = InertialChar::from_digits(p, &m).scalar();
        SerreWeight { p, m, m_res, n }
    }

    /// The weight with m displayed as the digits of its residue in [0, p^f - 2].
    pub fn canonical(p: u32, m_res: i64, n: Vec<i64>) -> SerreWeight {
        let f = n.len() as u32;
        let m_res = InertialChar::new(p, f, m_res).scalar();
        SerreWeight { p, m: digits_of(p, f, m_res), m_res, n }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.n.len() as u32
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn n(&self) -> &[i64] {
        &self.n
    }

    pub fn m_residue(&self) -> i64 {
        self.m_res
    }

    /// Digits of the residue of m in [0, p^f - 2]; equal weights give equal digits.
    pub fn m_digits(&self) -> Vec<i64> {
        digits_of(self.p, self.f(), self.m_res)
    }

    pub fn dim(&self) -> i64 {
        self.n.iter().map(|&x| x + 1).product()
    }

    /// Scalar of the central character x ↦ Π σ_i(x)^{2m_i + n_i}.
    pub fn central_scalar(&self) -> i64 {
        let f = self.f();
        let ns: i64 = self.n.iter().enumerate().map(|(i, &x)| x * place(self.p, f, i as i64)).sum();
        InertialChar::new(self.p, f, 2 * self.m_res + ns).scalar()
    }

    pub fn twist(&self, by: &[i64]) -> SerreWeight {
        let m = self.m.iter().zip(by).map(|(a, b)| a + b).collect();
        SerreWeight::new(self.p, m, self.n.clone())
    }

    pub fn to_json(&self) -> WeightJson {
        WeightJson { m: self.m_digits(), n: self.n.clone() }
    }
}

impl PartialEq for SerreWeight {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m_res == other.m_res && self.n == other.n
    }
}

impl Eq for SerreWeight {}

impl Hash for SerreWeight {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.p, self.m_res, &self.n).hash(state);
    }
}

impl PartialOrd for SerreWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SerreWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.m_res, &self.n).cmp(&(other.p, other.m_res, &other.n))
    }
}

impl fmt::Debug for SerreWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "μ(m={:?}, n={:?})", self.m, self.n)
    }
}

impl fmt::Display for SerreWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "m=({}) n=({})", join(&self.m_digits()), join(&self.n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
}

/// A pair (J, d) indexing the weight μ(J, d), or the host of an exceptional weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightParam {
    pub j: Vec<bool>,
    pub d: Vec<i64>,
    pub exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightParamJson {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub d: Vec<i64>,
    pub exceptional: bool,
}

impl WeightParam {
    pub fn new(j: Vec<bool>, d: Vec<i64>) -> WeightParam {
        WeightParam { j, d, exceptional: false }
    }

    pub fn from_mask(f: usize, mask: u32, d: Vec<i64>) -> WeightParam {
        WeightParam::new((0..f).map(|i| mask >> i & 1 == 1).collect(), d)
    }

    pub fn mask(&self) -> u32 {
        self.j.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| 1u32 << i).sum()
    }

    pub fn j_indices(&self) -> Vec<usize> {
        self.j.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    pub fn to_json(&self) -> WeightParamJson {
        WeightParamJson { j: self.j_indices(), d: self.d.clone(), exceptional: self.exceptional }
    }

    /// d_i ∈ [0, e'-1] for i ∈ J and d_i ∈ [1, e'] otherwise.
    pub fn is_legal(&self, eprime: i64) -> bool {
        self.j.len() == self.d.len()
            && self.j.iter().zip(&self.d).all(|(&inj, &d)| if inj { (0..eprime).contains(&d) } else { (1..=eprime).contains(&d) })
    }
}

/// All legal (J, d), ordered by J as a bitmask and then d lexicographically.
pub fn legal_params(f: usize, eprime: i64) -> Vec<WeightParam> {
    let mut out = Vec::new();
    for mask in 0..1u32 << f {
        let j: Vec<bool> = (0..f).map(|i| mask >> i & 1 == 1).collect();
        let lo: Vec<i64> = j.iter().map(|&b| if b { 0 } else { 1 }).collect();
        let mut d = lo.clone();
        loop {
            out.push(WeightParam::new(j.clone(), d.clone()));
            let mut i = f;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                if d[i] < lo[i] + eprime - 1 {
                    d[i] += 1;
                    break false;
                }
                d[i] = lo[i];
            };
            if done {
                break;
            }
        }
    }
    out
}

/// All n-tuples in [0, p-1]^f, lexicographic.
pub(crate) fn all_n(p: u32, f: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..f {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p as i64).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// The explicit set of weights for χ₁ ⊕ χ₂ on inertia: every μ_{m,n} admitting
/// some (J, d) with
///   χ₂ = Π_{i∈J} ω_i^{m_i+n_i+e'-d_i} Π_{i∉J} ω_i^{m_i+e'-d_i},
///   χ₁ = Π_{i∈J} ω_i^{m_i+d_i} Π_{i∉J} ω_i^{m_i+n_i+d_i},
/// found by scanning m-residues, n, J and d. Output ascends in (m-residue, n).
pub fn enumerate_wss(chi1: &InertialChar, chi2: &InertialChar, eprime: u32) -> Vec<(SerreWeight, Vec<WeightParam>)> {
    let (p, f) = (chi1.p(), chi1.f());
    let fu = f as usize;
    let modulus = chi1.modulus();
    let ep = eprime as i64;
    let w: Vec<i64> = (0..fu).map(|i| place(p, f, i as i64)).collect();
    let params = legal_params(fu, ep);
    let ns = all_n(p, fu);
    let mut out = Vec::new();
    for m_res in 0..modulus {
        for n in &ns {
            let witnesses: Vec<WeightParam> = params
                .iter()
                .filter(|prm| {
                    let mut s2 = m_res;
                    let mut s1 = m_res;
                    for i in 0..fu {
                        if prm.j[i] {
                            s2 += (n[i] + ep - prm.d[i]) * w[i];
                            s1 += prm.d[i] * w[i];
                        } else {
                            s2 += (ep - prm.d[i]) * w[i];
                            s1 += (n[i] + prm.d[i]) * w[i];
                        }
                    }
                    s2.rem_euclid(modulus) == chi2.scalar() && s1.rem_euclid(modulus) == chi1.scalar()
                })
                .cloned()
                .collect();
            if !witnesses.is_empty() {
                out.push((SerreWeight::canonical(p, m_res, n.clone()), witnesses));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_is_residue_based() {
        let a = SerreWeight::new(5, vec![4, 4], vec![2, 1]);
        let b = SerreWeight::new(5, vec![0, 0], vec![2, 1]);
        assert_eq!(a, b);
        assert_ne!(a, SerreWeight::new(5, vec![0, 0], vec![1, 2]));
        assert_eq!(a.m(), &[4, 4]);
    }

    #[test]
    fn counterexample_weights_present() {
        let chi1 = InertialChar::trivial(5, 2);
        let chi2 = InertialChar::new(5, 2, 14);
        let w: Vec<SerreWeight> = enumerate_wss(&chi1, &chi2, 1).into_iter().map(|(w, _)| w).collect();
        assert!(w.contains(&SerreWeight::new(5, vec![4, 1], vec![4, 2])));
        assert!(w.contains(&SerreWeight::new(5, vec![0, 0], vec![3, 1])));
    }

    #[test]
    fn legal_param_count() {
        // per component: e' choices whether or not i ∈ J
        assert_eq!(legal_params(2, 2).len(), 4 * 4);
        assert!(legal_params(2, 2).iter().all(|p| p.is_legal(2)));
    }
}
