use super::field::{Field, Fq};
use crate::error::{Error, Result};

/// An element of k ⊗ k_E, written in the idempotent basis: component i is the
/// coefficient of e_i, where (x ⊗ 1)e_i = (1 ⊗ σ_i(x))e_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElt {
    pub comps: Vec<Fq>,
}

impl TensorElt {
    pub fn constant(f: usize, x: Fq) -> TensorElt {
        TensorElt { comps: vec![x; f] }
    }

    pub fn one(f: usize) -> TensorElt {
        TensorElt::constant(f, Fq::from_index(1))
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.comps.iter().all(|c| !c.is_zero())
    }

    pub fn mul(&self, field: &Field, other: &TensorElt) -> TensorElt {
        TensorElt {
            comps: self.comps.iter().zip(&other.comps).map(|(&a, &b)| field.mul(a, b)).collect(),
        }
    }

    pub fn inv(&self, field: &Field) -> TensorElt {
        TensorElt { comps: self.comps.iter().map(|&a| field.inv(a)).collect() }
    }

    /// φ on constants: component i moves to slot i+1.
    pub fn shift(&self) -> TensorElt {
        let f = self.comps.len();
        let mut comps = vec![Fq::ZERO; f];
        for (i, &c) in self.comps.iter().enumerate() {
            comps[(i + 1) % f] = c;
        }
        TensorElt { comps }
    }

    pub fn norm(&self, field: &Field) -> Fq {
        self.comps.iter().fold(field.one(), |acc, &c| field.mul(acc, c))
    }
}

/// An element of (k ⊗ k_E)[u]/u^len, one dense polynomial per idempotent slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncPoly {
    comps: Vec<Vec<Fq>>,
}

impl TruncPoly {
    pub fn zero(f: usize, len: usize) -> TruncPoly {
        TruncPoly { comps: vec![vec![Fq::ZERO; len]; f] }
    }

    pub fn constant(len: usize, a: &TensorElt) -> TruncPoly {
        let mut x = TruncPoly::zero(a.len(), len);
        for (i, &c) in a.comps.iter().enumerate() {
            x.set(i, 0, c);
        }
        x
    }

    pub fn monomial(f: usize, len: usize, i: usize, deg: usize, coeff: Fq) -> TruncPoly {
        let mut x = TruncPoly::zero(f, len);
        if deg < len {
            x.set(i, deg, coeff);
        }
        x
    }

    pub fn from_components(comps: Vec<Vec<Fq>>) -> Result<TruncPoly> {
        let len = comps.first().map_or(0, Vec::len);
        if let Some(bad) = comps.iter().find(|c| c.len() != len) {
            return Err(Error::Length { what: "truncated polynomial component", expected: len, got: bad.len() });
        }
        Ok(TruncPoly { comps })
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    /// The truncation length ep.
    pub fn len(&self) -> usize {
        self.comps.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn component(&self, i: usize) -> &[Fq] {
        &self.comps[i]
    }

    pub fn coeff(&self, i: usize, j: usize) -> Fq {
        self.comps[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Fq) {
        self.comps[i][j] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(|c| c.is_zero())
    }

    /// Degree of component i, None for the zero polynomial.
    pub fn degree(&self, i: usize) -> Option<usize> {
        self.comps[i].iter().rposition(|c| !c.is_zero())
    }

    /// Lowest degree with a nonzero coefficient in component i.
    pub fn valuation(&self, i: usize) -> Option<usize> {
        self.comps[i].iter().position(|c| !c.is_zero())
    }

    pub fn support(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.comps[i].iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, _)| j)
    }

    pub fn add(&self, field: &Field, other: &TruncPoly) -> TruncPoly {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect())
            .collect();
        TruncPoly { comps }
    }

    pub fn sub(&self, field: &Field, other: &TruncPoly) -> TruncPoly {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect())
            .collect();
        TruncPoly { comps }
    }

    pub fn scale(&self, field: &Field, a: &TensorElt) -> TruncPoly {
        let comps = self
            .comps
            .iter()
            .zip(&a.comps)
            .map(|(poly, &c)| poly.iter().map(|&x| field.mul(x, c)).collect())
            .collect();
        TruncPoly { comps }
    }

    pub fn mul(&self, field: &Field, other: &TruncPoly) -> TruncPoly {
        let len = self.len();
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| {
                let mut out = vec![Fq::ZERO; len];
                for (i, &x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (j, &y) in b[..len - i].iter().enumerate() {
                        out[i + j] = field.add(out[i + j], field.mul(x, y));
                    }
                }
                out
            })
            .collect();
        TruncPoly { comps }
    }

    /// Multiply component i by u^{w_i}. Negative shifts divide, discarding
    /// terms that would land in negative degree.
    pub fn shift(&self, w: &[i64]) -> TruncPoly {
        let len = self.len() as i64;
        let comps = self
            .comps
            .iter()
            .zip(w)
            .map(|(poly, &s)| {
                let mut out = vec![Fq::ZERO; len as usize];
                for (j, &c) in poly.iter().enumerate() {
                    let t = j as i64 + s;
                    if (0..len).contains(&t) {
                        out[t as usize] = c;
                    }
                }
                out
            })
            .collect();
        TruncPoly { comps }
    }

    /// u ↦ u^p in every component, then component i moves to slot i+1.
    pub fn phi(&self, p: u32) -> TruncPoly {
        let (f, len) = (self.comps.len(), self.len());
        let mut out = TruncPoly::zero(f, len);
        for (i, poly) in self.comps.iter().enumerate() {
            for (j, &c) in poly.iter().enumerate() {
                let t = j * p as usize;
                if t >= len {
                    break;
                }
                out.comps[(i + 1) % f][t] = c;
            }
        }
        out
    }

    /// Action of the inertia generator g with η̄(g) = ζ, twisted by w: the degree-j
    /// term of component i is multiplied by σ_i(ζ)^{w_i + j}, σ_i(x) = x^{p^{f-i}}.
    pub fn galois_act(&self, field: &Field, zeta: Fq, w: &[i64]) -> Result<TruncPoly> {
        let f = self.comps.len() as u32;
        let p = field.p() as i64;
        let ekl = p.pow(f) - 1;
        if zeta.is_zero() || field.multiplicative_order(zeta) != ekl as u64 {
            return Err(Error::PreconditionViolation(format!(
                "zeta must have multiplicative order {ekl}"
            )));
        }
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, poly)| {
                let sigma = field.pow(zeta, p.pow((f - i as u32) % f));
                poly.iter()
                    .enumerate()
                    .map(|(j, &c)| field.mul(c, field.pow(sigma, (w[i] + j as i64).rem_euclid(ekl))))
                    .collect()
            })
            .collect();
        Ok(TruncPoly { comps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        let field = Field::new(3, 2).unwrap();
        let one = TruncPoly::constant(24, &TensorElt::one(2));
        assert_eq!(one.phi(3), one);
        let ue = TruncPoly::monomial(2, 24, 1, 8, field.one());
        assert!(ue.phi(3).is_zero());
        let x = TruncPoly::monomial(2, 24, 0, 2, field.one());
        assert_eq!(x.phi(3), TruncPoly::monomial(2, 24, 1, 6, field.one()));
    }

    #[test]
    fn galois_action_on_u() {
        let field = Field::new(3, 1).unwrap();
        let zeta = field.generator();
        let one = TruncPoly::constant(6, &TensorElt::one(1));
        assert_eq!(one.galois_act(&field, zeta, &[0]).unwrap(), one);
        let u = TruncPoly::monomial(1, 6, 0, 1, field.one());
        let gu = u.galois_act(&field, zeta, &[0]).unwrap();
        assert_eq!(gu, TruncPoly::monomial(1, 6, 0, 1, zeta));
        assert_ne!(gu, u);
        assert!(one.galois_act(&field, field.one(), &[0]).is_err());
    }

    #[test]
    fn invariant_degrees_below_ekl() {
        let field = Field::new(5, 2).unwrap();
        let zeta = field.generator();
        for i in 0..2 {
            let fixed = (0..24)
                .filter(|&j| {
                    let x = TruncPoly::monomial(2, 30, i, j, field.one());
                    x.galois_act(&field, zeta, &[0, 0]).unwrap() == x
                })
                .count();
            assert_eq!(fixed, 1);
        }
    }

    #[test]
    fn norm_of_f9_pair() {
        let field = Field::new(3, 2).unwrap();
        let g = field.generator();
        let a = TensorElt { comps: vec![g, field.pow(g, 3)] };
        assert_eq!(a.norm(&field), field.pow(g, 4));
        assert_eq!(a.shift().norm(&field), a.norm(&field));
    }
}
