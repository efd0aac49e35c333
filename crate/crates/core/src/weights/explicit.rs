use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::serre::{enumerate_wss, legal_params, SerreWeight, WeightParam, WeightParamJson, WeightJson};
use crate::chars::InertialChar;
use crate::error::{Error, Result};

/// Genericity data for χ₁ ⊕ χ₂: χ₁^{-1}χ₂ = Π ω_i^{b_i + e'} on inertia with
/// e' ≤ b_i + e' ≤ p - 1 - e', and the digits c of χ₁.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityData {
    pub p: u32,
    pub f: u32,
    pub eprime: u32,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

impl GenericityData {
    fn fu(&self) -> usize {
        self.f as usize
    }

    fn ep(&self) -> i64 {
        self.eprime as i64
    }

    fn pi(&self) -> i64 {
        self.p as i64
    }

    pub fn chi1(&self) -> InertialChar {
        InertialChar::from_digits(self.p, &self.c)
    }

    pub fn chi2(&self) -> InertialChar {
        let q: Vec<i64> = self.b.iter().map(|b| b + self.ep()).collect();
        self.chi1().mul(&InertialChar::from_digits(self.p, &q))
    }
}

pub fn genericity(chi1: &InertialChar, chi2: &InertialChar, eprime: u32) -> Result<GenericityData> {
    let (p, f) = (chi1.p(), chi1.f());
    let ep = eprime as i64;
    if 2 * ep > p as i64 - 1 {
        return Err(Error::PreconditionViolation(format!(
            "no character is generic when 2e' = {} exceeds p - 1 = {}",
            2 * ep,
            p - 1
        )));
    }
    let digits = chi2.div(chi1).digits();
    let (lo, hi) = (ep, p as i64 - 1 - ep);
    if let Some(index) = digits.iter().position(|&x| x < lo || x > hi) {
        return Err(Error::NotGeneric { index, digit: digits[index], lo, hi });
    }
    Ok(GenericityData {
        p,
        f,
        eprime,
        b: digits.iter().map(|x| x - ep).collect(),
        c: chi1.digits(),
    })
}

fn check_param(gen: &GenericityData, param: &WeightParam) -> Result<()> {
    if param.j.len() != gen.fu() || param.d.len() != gen.fu() {
        return Err(Error::Length { what: "(J, d)", expected: gen.fu(), got: param.d.len() });
    }
    for (i, (&inj, &d)) in param.j.iter().zip(&param.d).enumerate() {
        let (lo, hi) = if inj { (0, gen.ep() - 1) } else { (1, gen.ep()) };
        if d < lo || d > hi {
            return Err(Error::RangeViolation { what: "d", index: i, value: d, lo, hi });
        }
    }
    Ok(())
}

/// The unique weight μ(J, d) attached to a legal pair.
pub fn mu_of_jd(gen: &GenericityData, param: &WeightParam) -> Result<SerreWeight> {
    check_param(gen, param)?;
    let f = gen.fu();
    let p = gen.pi();
    let (b, c, d) = (&gen.b, &gen.c, &param.d);
    let mut m = vec![0; f];
    let mut n = vec![0; f];
    for i in 0..f {
        let (here, next) = (param.j[i], param.j[(i + 1) % f]);
        (m[i], n[i]) = match (here, next) {
            (true, true) => (c[i] + p - 1 - d[i], b[i] + 2 * d[i]),
            (true, false) => (c[i] + p - 1 - d[i], b[i] + 2 * d[i] + 1),
            (false, true) => (c[i] + b[i] + d[i] - 1, p - b[i] - 2 * d[i]),
            (false, false) => (c[i] + b[i] + d[i], p - 1 - b[i] - 2 * d[i]),
        };
    }
    if let Some(i) = n.iter().position(|&x| !(0..p).contains(&x)) {
        return Err(Error::InternalInconsistency(format!("n_{i} = {} outside [0, p-1]", n[i])));
    }
    Ok(SerreWeight::new(gen.p, m, n))
}

/// The weights μ'(J, d) of W' \ W, with their host parameters.
pub fn exceptional_weights(gen: &GenericityData) -> Vec<(WeightParam, SerreWeight)> {
    let f = gen.fu();
    let p = gen.pi();
    let mut out = Vec::new();
    if gen.b.iter().all(|&x| x == 0) {
        let host = WeightParam { j: vec![true; f], d: vec![0; f], exceptional: true };
        out.push((host, SerreWeight::new(gen.p, gen.c.clone(), vec![p - 1; f])));
    }
    if gen.b.iter().all(|&x| x == p - 1 - 2 * gen.ep()) {
        let host = WeightParam { j: vec![false; f], d: vec![gen.ep(); f], exceptional: true };
        let m = gen.c.iter().map(|c| c - gen.ep()).collect();
        out.push((host, SerreWeight::new(gen.p, m, vec![p - 1; f])));
    }
    out
}

/// All a ∈ A = [0, e']^f in lexicographic order.
pub fn type_indices(f: usize, eprime: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..f {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=eprime).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn index_leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn check_index(gen: &GenericityData, a: &[i64]) -> Result<()> {
    if a.len() != gen.fu() {
        return Err(Error::Length { what: "a", expected: gen.fu(), got: a.len() });
    }
    match a.iter().position(|&x| !(0..=gen.ep()).contains(&x)) {
        Some(i) => Err(Error::RangeViolation { what: "a", index: i, value: a[i], lo: 0, hi: gen.ep() }),
        None => Ok(()),
    }
}

/// τ_a = Π ω^{c+b+a} ⊕ Π ω^{c-a}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauA {
    pub lambda: InertialChar,
    pub lambda_prime: InertialChar,
    pub scalar: bool,
}

fn scalar_case(gen: &GenericityData, a: &[i64]) -> Option<bool> {
    let p = gen.pi();
    if a.iter().all(|&x| x == 0) && gen.b.iter().all(|&x| x == 0) {
        Some(true)
    } else if a.iter().all(|&x| x == gen.ep()) && gen.b.iter().all(|&x| x == p - 1 - 2 * gen.ep()) {
        Some(false)
    } else {
        None
    }
}

pub fn tau_of_a(gen: &GenericityData, a: &[i64]) -> Result<TauA> {
    check_index(gen, a)?;
    let f = gen.fu();
    let lam: Vec<i64> = (0..f).map(|i| gen.c[i] + gen.b[i] + a[i]).collect();
    let lam_p: Vec<i64> = (0..f).map(|i| gen.c[i] - a[i]).collect();
    let tau = TauA {
        lambda: InertialChar::from_digits(gen.p, &lam),
        lambda_prime: InertialChar::from_digits(gen.p, &lam_p),
        scalar: scalar_case(gen, a).is_some(),
    };
    if tau.scalar != (tau.lambda == tau.lambda_prime) {
        return Err(Error::InternalInconsistency(format!("scalar flag disagrees with τ_{a:?}")));
    }
    Ok(tau)
}

/// The Jordan–Hölder constituents ν(a, J') of the reduction of θ_a, ordered by
/// J' as a bitmask; a single constituent in the two scalar cases.
pub fn jh_constituents(gen: &GenericityData, a: &[i64]) -> Result<Vec<SerreWeight>> {
    check_index(gen, a)?;
    let f = gen.fu();
    let p = gen.pi();
    let b = &gen.b;
    let masks: Vec<u32> = match scalar_case(gen, a) {
        Some(true) => vec![(1u32 << f) - 1],
        Some(false) => vec![0],
        None => (0..1u32 << f).collect(),
    };
    let mut out = Vec::new();
    for mask in masks {
        let inj = |i: usize| mask >> (i % f) & 1 == 1;
        let mut m = vec![0; f];
        let mut n = vec![0; f];
        for i in 0..f {
            (m[i], n[i]) = match (inj(i), inj(i + 1)) {
                (true, true) => (p - 1 - a[i], b[i] + 2 * a[i]),
                (true, false) => (p - a[i], b[i] + 2 * a[i] - 1),
                (false, true) => (b[i] + a[i], p - 2 - b[i] - 2 * a[i]),
                (false, false) => (b[i] + a[i], p - 1 - b[i] - 2 * a[i]),
            };
        }
        if n.iter().all(|&x| x >= 0) {
            let w = SerreWeight::new(gen.p, m, n).twist(&gen.c);
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// a from (J, d): a_i = d_i + 1 if i ∈ J, i+1 ∉ J; d_i - 1 if i ∉ J, i+1 ∈ J; d_i otherwise.
pub fn host_index(param: &WeightParam) -> Vec<i64> {
    let f = param.j.len();
    (0..f)
        .map(|i| match (param.j[i], param.j[(i + 1) % f]) {
            (true, false) => param.d[i] + 1,
            (false, true) => param.d[i] - 1,
            _ => param.d[i],
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCell {
    pub a: Vec<i64>,
    pub w_a: Vec<(WeightParam, SerreWeight)>,
    pub extra: Vec<(WeightParam, SerreWeight)>,
}

impl PartitionCell {
    /// W'_a = W_a together with the exceptional weight hosted here, if any.
    pub fn w_prime(&self) -> Vec<SerreWeight> {
        self.w_a.iter().chain(&self.extra).map(|(_, w)| w.clone()).collect()
    }

    /// δ_a = #{i : a_i ∈ {0, e'}}
    pub fn delta(&self, eprime: i64) -> usize {
        self.a.iter().filter(|&&x| x == 0 || x == eprime).count()
    }

    pub fn to_json(&self) -> PartitionCellJson {
        let enc = |v: &[(WeightParam, SerreWeight)]| {
            v.iter().map(|(p, w)| ParamWeightJson { param: p.to_json(), weight: w.to_json() }).collect()
        };
        PartitionCellJson { a: self.a.clone(), w_a: enc(&self.w_a), wprime_extra: enc(&self.extra) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamWeightJson {
    pub param: WeightParamJson,
    pub weight: WeightJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCellJson {
    pub a: Vec<i64>,
    #[serde(rename = "W_a")]
    pub w_a: Vec<ParamWeightJson>,
    #[serde(rename = "Wprime_extra")]
    pub wprime_extra: Vec<ParamWeightJson>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub eprime: i64,
    pub cells: Vec<PartitionCell>,
}

impl Partition {
    pub fn cell(&self, a: &[i64]) -> Option<&PartitionCell> {
        self.cells.iter().find(|c| c.a == a)
    }

    pub fn all_w(&self) -> Vec<SerreWeight> {
        self.cells.iter().flat_map(|c| c.w_a.iter().map(|(_, w)| w.clone())).collect()
    }

    pub fn all_w_prime(&self) -> Vec<SerreWeight> {
        self.cells.iter().flat_map(PartitionCell::w_prime).collect()
    }
}

fn inconsistent(msg: String) -> Error {
    Error::InternalInconsistency(msg)
}

/// Assigns every μ(J, d) to its index a and verifies the partition properties.
pub fn partition(gen: &GenericityData) -> Result<Partition> {
    let f = gen.fu();
    let ep = gen.ep();
    let mut cells: Vec<PartitionCell> = type_indices(f, ep)
        .into_iter()
        .map(|a| PartitionCell { a, w_a: Vec::new(), extra: Vec::new() })
        .collect();
    let mut seen = BTreeSet::new();
    for param in legal_params(f, ep) {
        let w = mu_of_jd(gen, &param)?;
        if !seen.insert(w.clone()) {
            return Err(inconsistent(format!("{w:?} arises from two different (J, d)")));
        }
        let a = host_index(&param);
        if a.iter().sum::<i64>() != param.d.iter().sum::<i64>() {
            return Err(inconsistent(format!("Σa ≠ Σd for {param:?}")));
        }
        let cell = cells
            .iter_mut()
            .find(|c| c.a == a)
            .ok_or_else(|| inconsistent(format!("{param:?} maps to {a:?} outside A")))?;
        cell.w_a.push((param, w));
    }
    for (host, w) in exceptional_weights(gen) {
        if !seen.insert(w.clone()) {
            return Err(inconsistent(format!("exceptional {w:?} coincides with another weight")));
        }
        let a = host_index(&host);
        cells.iter_mut().find(|c| c.a == a).ok_or_else(|| inconsistent("exceptional host outside A".into()))?.extra.push((host, w));
    }
    let all_w: BTreeSet<SerreWeight> =
        cells.iter().flat_map(|c| c.w_a.iter().map(|(_, w)| w.clone())).collect();
    for cell in &cells {
        let expected = 1usize << (f - cell.delta(ep));
        if cell.w_a.len() != expected {
            return Err(inconsistent(format!("|W_{:?}| = {}, expected {expected}", cell.a, cell.w_a.len())));
        }
        let jh = jh_constituents(gen, &cell.a)?;
        let mine: BTreeSet<SerreWeight> = cell.w_a.iter().map(|(_, w)| w.clone()).collect();
        let jh_in_w: BTreeSet<SerreWeight> = jh.into_iter().filter(|w| all_w.contains(w)).collect();
        if mine != jh_in_w {
            return Err(inconsistent(format!("W_{:?} differs from the constituents of θ_a lying in W", cell.a)));
        }
    }
    Ok(Partition { eprime: ep, cells })
}

/// Either the union of W'_a over a ≤ a^max, or the très ramifiée case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeSpec {
    AMax(Vec<i64>),
    TresRamifiee,
}

pub fn wexpl_shape(gen: &GenericityData, spec: &ShapeSpec) -> Result<Vec<SerreWeight>> {
    match spec {
        ShapeSpec::AMax(amax) => {
            check_index(gen, amax)?;
            let part = partition(gen)?;
            let mut out: Vec<SerreWeight> = part
                .cells
                .iter()
                .filter(|c| index_leq(&c.a, amax))
                .flat_map(PartitionCell::w_prime)
                .collect();
            out.sort();
            Ok(out)
        }
        ShapeSpec::TresRamifiee => {
            if gen.b.iter().any(|&x| x != 0) {
                return Err(Error::IllegalFlag(
                    "très ramifiée requires χ₁^{-1}χ₂ to be cyclotomic on inertia".into(),
                ));
            }
            Ok(vec![SerreWeight::new(gen.p, gen.c.clone(), vec![gen.pi() - 1; gen.fu()])])
        }
    }
}

/// dim L_cris for the weight with parameter (J, d): Σ (e' - d_i). The two
/// exceptional hosts give 0 (J = ∅, d = e') and e'f (J = all, d = 0).
pub fn lcris_dim(eprime: u32, param: &WeightParam) -> i64 {
    let ep = eprime as i64;
    if param.exceptional && param.j.iter().all(|&x| !x) {
        return 0;
    }
    if param.exceptional {
        return ep * param.j.len() as i64;
    }
    param.d.iter().map(|d| ep - d).sum()
}

/// The explicit weight set, enumerated and split into W and W'.
pub fn scan_with_params(gen: &GenericityData) -> Vec<(SerreWeight, Vec<WeightParam>)> {
    enumerate_wss(&gen.chi1(), &gen.chi2(), gen.eprime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(p: u32, f: u32, ep: u32, c: &[i64], b: &[i64]) -> GenericityData {
        let chi1 = InertialChar::from_digits(p, c);
        let q: Vec<i64> = b.iter().map(|x| x + ep as i64).collect();
        genericity(&chi1, &chi1.mul(&InertialChar::from_digits(p, &q)), ep).unwrap_or_else(|e| panic!("{e} {f}"))
    }

    #[test]
    fn genericity_examples() {
        let g = genericity(&InertialChar::trivial(5, 2), &InertialChar::new(5, 2, 13), 1).unwrap();
        assert_eq!(g.b, vec![2, 1]);
        assert!(matches!(
            genericity(&InertialChar::trivial(5, 2), &InertialChar::new(5, 2, 5), 1),
            Err(Error::NotGeneric { index: 0, .. })
        ));
        assert!(genericity(&InertialChar::trivial(3, 1), &InertialChar::new(3, 1, 1), 2).is_err());
    }

    #[test]
    fn mu_row_one() {
        let g = GenericityData { p: 5, f: 2, eprime: 1, b: vec![2, 1], c: vec![0, 0] };
        let w = mu_of_jd(&g, &WeightParam::new(vec![true, true], vec![0, 0])).unwrap();
        assert_eq!((w.m(), w.n()), (&[4, 4][..], &[2, 1][..]));
    }

    #[test]
    fn exceptional_cases() {
        let g = gen(7, 1, 1, &[2], &[1]);
        assert!(exceptional_weights(&g).is_empty());
        let g = gen(7, 2, 1, &[1, 2], &[0, 0]);
        let ex = exceptional_weights(&g);
        assert_eq!(ex.len(), 1);
        assert_eq!(ex[0].1, SerreWeight::new(7, vec![1, 2], vec![6, 6]));
        let g = gen(5, 1, 2, &[3], &[0]);
        let ex = exceptional_weights(&g);
        assert_eq!(ex.len(), 2);
        assert_ne!(ex[0].1, ex[1].1);
    }

    #[test]
    fn scalar_flags() {
        let g = gen(5, 2, 1, &[0, 0], &[0, 0]);
        assert!(tau_of_a(&g, &[0, 0]).unwrap().scalar);
        assert_eq!(jh_constituents(&g, &[0, 0]).unwrap().len(), 1);
        assert!(!tau_of_a(&g, &[1, 0]).unwrap().scalar);
    }

    #[test]
    fn partition_p7_f1() {
        let g = gen(7, 1, 1, &[0], &[2]);
        let part = partition(&g).unwrap();
        assert_eq!(part.cells.len(), 2);
        assert!(part.cells.iter().all(|c| c.w_a.len() == 1));
        let scan = scan_with_params(&g);
        assert_eq!(scan.len(), 2);
    }

    #[test]
    fn shapes() {
        let g = gen(5, 2, 1, &[1, 3], &[0, 0]);
        let top = wexpl_shape(&g, &ShapeSpec::AMax(vec![1, 1])).unwrap();
        let mut all = partition(&g).unwrap().all_w_prime();
        all.sort();
        assert_eq!(top, all);
        let tr = wexpl_shape(&g, &ShapeSpec::TresRamifiee).unwrap();
        assert_eq!(tr.len(), 1);
        assert_eq!(tr[0].n(), &[4, 4]);
        let g = gen(5, 2, 1, &[1, 3], &[1, 0]);
        assert!(matches!(wexpl_shape(&g, &ShapeSpec::TresRamifiee), Err(Error::IllegalFlag(_))));
    }

    #[test]
    fn lcris_examples() {
        let p = WeightParam::new(vec![true, false], vec![0, 1]);
        assert_eq!(lcris_dim(1, &p), 1);
        assert_eq!(lcris_dim(2, &WeightParam::new(vec![true, true], vec![0, 0])), 4);
    }
}
