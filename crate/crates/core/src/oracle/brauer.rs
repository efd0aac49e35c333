use std::collections::HashMap;

use super::cyclo::CyclotomicRing;
use super::linalg::ModPrime;
use super::Limits;
use crate::chars::InertialChar;
use crate::error::{Error, Result};
use crate::gf::{is_prime, prime_factors, Field, Fq};
use crate::weights::{all_n, SerreWeight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    Central,
    Split,
    Nonsplit,
}

/// A p-regular class of GL₂(k): eigenvalues g^x, g^y for g the fixed generator
/// of F_{q²}^×, and a representative matrix with entries in k.
#[derive(Clone, Debug)]
pub struct ClassRep {
    pub kind: ClassKind,
    pub x: i64,
    pub y: i64,
    matrix: [[Fq; 2]; 2],
}

/// Brauer characters of GL₂(F_q) on its p-regular classes, with values taken in
/// F_ℓ through a primitive (q²-1)-th root of unity there, and eigenvalue
/// multisets kept exactly as exponents of ζ_{q²-1}.
pub struct BrauerTable {
    p: u32,
    f: u32,
    q: i64,
    n: i64,
    field: Field,
    classes: Vec<ClassRep>,
    points: Vec<[Fq; 2]>,
    point_of: HashMap<u32, usize>,
    modp: ModPrime,
    zeta_pows: Vec<u64>,
    ring: Option<CyclotomicRing>,
    actions: Vec<CosetAction>,
    candidates: HashMap<i64, Vec<(SerreWeight, Vec<u64>)>>,
}

/// g acting on the functions supported on single cosets B\G ≅ P¹(k): the coset
/// moved to, and the logs of the diagonal entries of the Borel element produced.
#[derive(Clone, Debug)]
struct CosetAction {
    next: Vec<usize>,
    diag_logs: Vec<(i64, i64)>,
}

/// A constituent with its multiplicity.
pub type Constituents = Vec<(SerreWeight, u32)>;

impl BrauerTable {
    pub fn new(p: u32, f: u32, limits: &Limits) -> Result<BrauerTable> {
        let q = (p as i64).pow(f);
        if q > limits.max_q {
            return Err(Error::SizeLimit(format!("q = {q} exceeds the oracle limit {}", limits.max_q)));
        }
        let n = q * q - 1;
        let field = Field::new(p, 2 * f)?;
        let g = field.generator();
        let e = |k: i64| field.exp(k);

        let mut classes = Vec::new();
        for k in 0..q - 1 {
            let x = k * (q + 1);
            classes.push(ClassRep { kind: ClassKind::Central, x, y: x, matrix: [[e(x), Fq::ZERO], [Fq::ZERO, e(x)]] });
        }
        for k1 in 0..q - 1 {
            for k2 in k1 + 1..q - 1 {
                let (x, y) = (k1 * (q + 1), k2 * (q + 1));
                classes.push(ClassRep { kind: ClassKind::Split, x, y, matrix: [[e(x), Fq::ZERO], [Fq::ZERO, e(y)]] });
            }
        }
        for t in 0..n {
            let conj = (t * q) % n;
            if t % (q + 1) == 0 || conj < t {
                continue;
            }
            let z = e(t);
            let zq = e(conj);
            let norm = field.mul(z, zq);
            let trace = field.add(z, zq);
            classes.push(ClassRep {
                kind: ClassKind::Nonsplit,
                x: t,
                y: conj,
                matrix: [[Fq::ZERO, field.neg(norm)], [field.one(), trace]],
            });
        }
        let expected = (q - 1) + (q - 1) * (q - 2) / 2 + q * (q - 1) / 2;
        if classes.len() as i64 != expected {
            return Err(Error::InternalInconsistency(format!("{} classes, expected {expected}", classes.len())));
        }
        debug_assert_eq!(field.multiplicative_order(g), n as u64);

        let mut points: Vec<[Fq; 2]> =
            field.elements().filter(|&c| field.in_subfield(c, f)).map(|c| [c, field.one()]).collect();
        points.push([field.one(), Fq::ZERO]);
        let point_of = points.iter().enumerate().filter(|(_, pt)| !pt[1].is_zero()).map(|(k, pt)| (pt[0].index(), k)).collect();

        let (modp, zeta) = find_prime(n as u64)?;
        let mut zeta_pows = Vec::with_capacity(n as usize);
        let mut cur = 1;
        for _ in 0..n {
            zeta_pows.push(cur);
            cur = modp.mul(cur, zeta);
        }
        let ring = if q <= 25 { Some(CyclotomicRing::new(n as u64)?) } else { None };
        let mut table = BrauerTable {
            p,
            f,
            q,
            n,
            field,
            classes,
            points,
            point_of,
            modp,
            zeta_pows,
            ring,
            actions: Vec::new(),
            candidates: HashMap::new(),
        };
        table.actions = table.classes.iter().map(|c| table.coset_action(c)).collect::<Result<_>>()?;
        Ok(table)
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn classes(&self) -> &[ClassRep] {
        &self.classes
    }

    pub fn prime(&self) -> u64 {
        self.modp.l
    }

    fn value(&self, exps: &[i64]) -> u64 {
        exps.iter().fold(0, |acc, &e| self.modp.add(acc, self.zeta_pows[e.rem_euclid(self.n) as usize]))
    }

    /// Eigenvalue exponents of μ_{m,n} at the class: σ_i extended to F_{q²} as
    /// x ↦ x^{p^{f-i}}, applied to det^{m_i} ⊗ Sym^{n_i}.
    pub fn weight_eigen(&self, w: &SerreWeight, cls: &ClassRep) -> Vec<i64> {
        let (p, f, n) = (self.p as i64, self.f as usize, self.n);
        let mut out = vec![(w.m_residue() * (cls.x + cls.y)).rem_euclid(n)];
        for (i, &ni) in w.n().iter().enumerate() {
            let tw = p.pow(((f - i) % f) as u32);
            out = out
                .iter()
                .flat_map(|&base| {
                    (0..=ni).map(move |a| (base + tw * (a * cls.x + (ni - a) * cls.y)).rem_euclid(n))
                })
                .collect();
        }
        out
    }

    fn weight_values(&self, w: &SerreWeight) -> Vec<u64> {
        self.classes.iter().map(|cls| self.value(&self.weight_eigen(w, cls))).collect()
    }

    fn point_index(&self, v: [Fq; 2]) -> usize {
        if v[1].is_zero() {
            self.points.len() - 1
        } else {
            self.point_of[&self.field.div(v[0], v[1]).index()]
        }
    }

    fn coset_rep(&self, k: usize) -> [[Fq; 2]; 2] {
        let fl = &self.field;
        let pt = self.points[k];
        if pt[1].is_zero() {
            [[Fq::ZERO, fl.one()], [fl.one(), Fq::ZERO]]
        } else {
            [[fl.one(), Fq::ZERO], [pt[0], fl.one()]]
        }
    }

    fn mat_mul(&self, a: &[[Fq; 2]; 2], b: &[[Fq; 2]; 2]) -> [[Fq; 2]; 2] {
        let fl = &self.field;
        let mut out = [[Fq::ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = fl.add(fl.mul(a[i][0], b[0][j]), fl.mul(a[i][1], b[1][j]));
            }
        }
        out
    }

    fn mat_inv(&self, a: &[[Fq; 2]; 2]) -> [[Fq; 2]; 2] {
        let fl = &self.field;
        let det = fl.sub(fl.mul(a[0][0], a[1][1]), fl.mul(a[0][1], a[1][0]));
        let d = fl.inv(det);
        [
            [fl.mul(d, a[1][1]), fl.neg(fl.mul(d, a[0][1]))],
            [fl.neg(fl.mul(d, a[1][0])), fl.mul(d, a[0][0])],
        ]
    }

    fn log(&self, x: Fq) -> i64 {
        self.field.dlog(x).expect("nonzero entry") as i64
    }

    fn coset_action(&self, cls: &ClassRep) -> Result<CosetAction> {
        let ginv = self.mat_inv(&cls.matrix);
        let np = self.points.len();
        let mut next = vec![0usize; np];
        let mut diag_logs = vec![(0i64, 0i64); np];
        let fl = &self.field;
        for k in 0..np {
            let rep = self.coset_rep(k);
            let bottom = [
                fl.add(fl.mul(rep[1][0], ginv[0][0]), fl.mul(rep[1][1], ginv[1][0])),
                fl.add(fl.mul(rep[1][0], ginv[0][1]), fl.mul(rep[1][1], ginv[1][1])),
            ];
            let k2 = self.point_index(bottom);
            let b = self.mat_mul(&self.mat_mul(&self.coset_rep(k2), &cls.matrix), &self.mat_inv(&rep));
            if !b[1][0].is_zero() {
                return Err(Error::InternalInconsistency("coset bookkeeping left the Borel".into()));
            }
            next[k] = k2;
            diag_logs[k] = (self.log(b[0][0]), self.log(b[1][1]));
        }
        Ok(CosetAction { next, diag_logs })
    }

    /// Eigenvalue exponents of the k-th class on Ind_B(η₁ ⊗ η₂), read off the
    /// monomial action: a cycle of length ℓ with coefficient product ζ^c
    /// contributes the ℓ roots of λ^ℓ = ζ^c.
    pub fn induced_eigen(&self, s1: i64, s2: i64, k: usize) -> Result<Vec<i64>> {
        let CosetAction { next, diag_logs } = &self.actions[k];
        let np = next.len();
        let coeff: Vec<i64> = diag_logs.iter().map(|&(x, y)| (s1 * x + s2 * y).rem_euclid(self.n)).collect();
        let mut seen = vec![false; np];
        let mut out = Vec::with_capacity(np);
        for start in 0..np {
            if seen[start] {
                continue;
            }
            let (mut k, mut len, mut c) = (start, 0i64, 0i64);
            while !seen[k] {
                seen[k] = true;
                c += coeff[k];
                len += 1;
                k = next[k];
            }
            let c = c.rem_euclid(self.n);
            if self.n % len != 0 || c % len != 0 {
                return Err(Error::InternalInconsistency(format!("cycle of length {len} with product ζ^{c}")));
            }
            out.extend((0..len).map(|j| c / len + j * (self.n / len)));
        }
        Ok(out)
    }

    /// The induction formula: (q+1)η₁η₂(x) central, η₁(x)η₂(y) + η₁(y)η₂(x) split, 0 nonsplit.
    fn formula_terms(&self, s1: i64, s2: i64, cls: &ClassRep) -> Vec<(i64, i64)> {
        match cls.kind {
            ClassKind::Central => vec![(cls.x * (s1 + s2), self.q + 1)],
            ClassKind::Split => vec![(cls.x * s1 + cls.y * s2, 1), (cls.y * s1 + cls.x * s2, 1)],
            ClassKind::Nonsplit => Vec::new(),
        }
    }

    fn candidates_for(&mut self, central: i64) -> &Vec<(SerreWeight, Vec<u64>)> {
        if !self.candidates.contains_key(&central) {
            let modulus = self.q - 1;
            let mut list = Vec::new();
            for n in all_n(self.p, self.f as usize) {
                for m_res in 0..modulus {
                    let w = SerreWeight::canonical(self.p, m_res, n.clone());
                    if w.central_scalar() == central.rem_euclid(modulus) {
                        let vals = self.weight_values(&w);
                        list.push((w, vals));
                    }
                }
            }
            self.candidates.insert(central, list);
        }
        &self.candidates[&central]
    }

    /// The constituents of the reduction of Ind_B(η̃₁ ⊗ η̃₂), with multiplicity.
    /// Multiplicities are solved mod ℓ among the weights with the right central
    /// character, then certified by exact equality of eigenvalue multisets on
    /// every class.
    pub fn decompose_induced(&mut self, eta1: &InertialChar, eta2: &InertialChar) -> Result<Constituents> {
        let (s1, s2) = (eta1.scalar(), eta2.scalar());
        let induced: Vec<Vec<i64>> =
            (0..self.classes.len()).map(|k| self.induced_eigen(s1, s2, k)).collect::<Result<_>>()?;
        for (cls, eig) in self.classes.iter().zip(&induced) {
            let terms = self.formula_terms(s1, s2, cls);
            let formula = terms.iter().fold(0, |acc, &(e, c)| {
                self.modp.add(acc, self.modp.mul(c as u64, self.zeta_pows[e.rem_euclid(self.n) as usize]))
            });
            if formula != self.value(eig) {
                return Err(Error::InternalInconsistency(format!("induced character disagrees with the formula at {cls:?}")));
            }
            if let Some(ring) = &self.ring {
                let mut diff: Vec<(i64, i64)> = eig.iter().map(|&e| (e, 1)).collect();
                diff.extend(terms.iter().map(|&(e, c)| (e, -c)));
                if ring.sum(&diff)?.iter().any(|&x| x != 0) {
                    return Err(Error::InternalInconsistency(format!(
                        "induced character disagrees with the formula in Z[ζ] at {cls:?}"
                    )));
                }
            }
        }
        let rhs: Vec<u64> = induced.iter().map(|e| self.value(e)).collect();
        let modp = self.modp;
        let bound = self.q + 1;
        let nclasses = self.classes.len();
        let cands = self.candidates_for(s1 + s2).clone();
        let rows: Vec<Vec<u64>> = (0..nclasses).map(|k| cands.iter().map(|(_, v)| v[k]).collect()).collect();
        let sol = modp.solve_unique(&rows, &rhs).ok_or_else(|| {
            Error::InternalInconsistency("weight characters are dependent mod ℓ or the system is inconsistent".into())
        })?;
        let mut out = Vec::new();
        for ((w, _), &x) in cands.iter().zip(&sol) {
            if x as i64 > bound {
                return Err(Error::NonIntegralMultiplicity(format!("{w:?} gets {x} mod {}", modp.l)));
            }
            if x > 0 {
                out.push((w.clone(), x as u32));
            }
        }
        let total: i64 = out.iter().map(|(w, k)| w.dim() * *k as i64).sum();
        if total != self.q + 1 {
            return Err(Error::NonIntegralMultiplicity(format!("constituent dimensions sum to {total}")));
        }
        for (cls, eig) in self.classes.iter().zip(&induced) {
            let mut got: Vec<i64> = out
                .iter()
                .flat_map(|(w, k)| std::iter::repeat_n(self.weight_eigen(w, cls), *k as usize).flatten())
                .collect();
            let mut want = eig.clone();
            got.sort_unstable();
            want.sort_unstable();
            if got != want {
                return Err(Error::NonIntegralMultiplicity(format!("eigenvalue multisets differ at {cls:?}")));
            }
        }
        out.sort();
        Ok(out)
    }

    /// All unordered pairs {η₁, η₂} whose induced representation has the weight
    /// as a constituent. Pairs with η₁η₂ different from the weight's central
    /// character are skipped: every constituent shares the central character.
    pub fn types_containing(&mut self, w: &SerreWeight) -> Result<Vec<(InertialChar, InertialChar)>> {
        let modulus = self.q - 1;
        let central = w.central_scalar();
        let mut out = Vec::new();
        for s1 in 0..modulus {
            let s2 = (central - s1).rem_euclid(modulus);
            if s2 < s1 {
                continue;
            }
            let (e1, e2) = (InertialChar::new(self.p, self.f, s1), InertialChar::new(self.p, self.f, s2));
            if self.decompose_induced(&e1, &e2)?.iter().any(|(x, _)| x == w) {
                out.push((e1, e2));
            }
        }
        Ok(out)
    }
}

/// The smallest prime ℓ ≡ 1 mod n below 2^31, with an element of order exactly n.
fn find_prime(n: u64) -> Result<(ModPrime, u64)> {
    let factors = prime_factors(n);
    for k in 1.. {
        let l = k * n + 1;
        if l >= 1 << 31 {
            break;
        }
        if !is_prime(l) {
            continue;
        }
        let modp = ModPrime { l };
        for a in 2..l {
            let z = modp.pow(a, (l - 1) / n);
            if factors.iter().all(|&r| modp.pow(z, n / r) != 1) {
                return Ok((modp, z));
            }
        }
    }
    Err(Error::InternalInconsistency(format!("no prime ≡ 1 mod {n} found")))
}

/// The weight of the one-dimensional η̃ ∘ det.
pub fn det_weight(eta: &InertialChar) -> SerreWeight {
    SerreWeight::canonical(eta.p(), eta.scalar(), vec![0; eta.f() as usize])
}

/// Constituents of the reduction of Ind_B(η̃₁ ⊗ η̃₂) for q ≤ limits.max_q.
pub fn brute_jh(eta1: &InertialChar, eta2: &InertialChar, limits: &Limits) -> Result<Constituents> {
    BrauerTable::new(eta1.p(), eta1.f(), limits)?.decompose_induced(eta1, eta2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let t = BrauerTable::new(3, 1, &Limits::default()).unwrap();
        assert_eq!(t.classes().len(), 6);
        let t = BrauerTable::new(5, 1, &Limits::default()).unwrap();
        assert_eq!(t.classes().len(), 20);
    }

    #[test]
    fn trivial_induction_is_trivial_plus_steinberg() {
        for (p, f) in [(3, 1), (5, 1), (3, 2)] {
            let one = InertialChar::trivial(p, f);
            let got = brute_jh(&one, &one, &Limits::default()).unwrap();
            let st = SerreWeight::new(p, vec![0; f as usize], vec![p as i64 - 1; f as usize]);
            assert_eq!(got, vec![(SerreWeight::new(p, vec![0; f as usize], vec![0; f as usize]), 1), (st, 1)]);
        }
    }

    #[test]
    fn principal_series_f1() {
        // Ind(1 ⊗ ω^k) for GL₂(F_p) has constituents Sym^k and det^k ⊗ Sym^{p-1-k}
        let p = 7;
        for k in 1..6 {
            let got = brute_jh(&InertialChar::new(p, 1, 0), &InertialChar::new(p, 1, k), &Limits::default()).unwrap();
            assert_eq!(got.len(), 2, "k = {k}");
            assert!(got.iter().all(|(_, m)| *m == 1));
            let dims: i64 = got.iter().map(|(w, _)| w.dim()).sum();
            assert_eq!(dims, 8);
            assert!(got.iter().any(|(w, _)| w.n() == [k]));
            assert!(got.iter().any(|(w, _)| w.n() == [6 - k]));
        }
    }

    #[test]
    fn size_limit() {
        assert!(matches!(BrauerTable::new(7, 2, &Limits::default()), Err(Error::SizeLimit(_))));
    }
}
