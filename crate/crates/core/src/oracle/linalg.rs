use std::collections::BTreeMap;

use crate::gf::{Field, Fq};

/// A sparse vector over k_E: sorted indices, no zero entries.
pub type SparseVec = Vec<(usize, Fq)>;

fn normalize(field: &Field, mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|&(i, _)| i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d = field.add(*d, c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|&(_, c)| !c.is_zero());
    out
}

/// v - s·w for sorted sparse vectors.
fn axpy(field: &Field, v: &[(usize, Fq)], s: Fq, w: &[(usize, Fq)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        let take_v = b == w.len() || (a < v.len() && v[a].0 < w[b].0);
        let take_w = a == v.len() || (b < w.len() && w[b].0 < v[a].0);
        if take_v {
            out.push(v[a]);
            a += 1;
        } else if take_w {
            out.push((w[b].0, field.neg(field.mul(s, w[b].1))));
            b += 1;
        } else {
            let c = field.sub(v[a].1, field.mul(s, w[b].1));
            if !c.is_zero() {
                out.push((v[a].0, c));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Incremental row echelon form over k_E with sparse rows.
pub struct SparseEchelon<'a> {
    field: &'a Field,
    pivots: BTreeMap<usize, SparseVec>,
}

impl<'a> SparseEchelon<'a> {
    pub fn new(field: &'a Field) -> SparseEchelon<'a> {
        SparseEchelon { field, pivots: BTreeMap::new() }
    }

    /// Adds a row; true if it was independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let field = self.field;
        let mut v = normalize(field, v);
        while let Some(&(lead, c)) = v.first() {
            match self.pivots.get(&lead) {
                Some(row) => v = axpy(field, &v, c, row),
                None => {
                    let inv = field.inv(c);
                    let row = v.into_iter().map(|(i, x)| (i, field.mul(inv, x))).collect();
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A basis of {x ∈ k_E^ncols : row·x = 0 for every row}.
    pub fn kernel(&self, ncols: usize) -> Vec<Vec<Fq>> {
        let field = self.field;
        let free: Vec<usize> = (0..ncols).filter(|k| !self.pivots.contains_key(k)).collect();
        free.iter()
            .map(|&k| {
                let mut x = vec![Fq::ZERO; ncols];
                x[k] = field.one();
                for (&lead, row) in self.pivots.iter().rev() {
                    let mut s = Fq::ZERO;
                    for &(j, c) in &row[1..] {
                        s = field.add(s, field.mul(c, x[j]));
                    }
                    x[lead] = field.neg(s);
                }
                x
            })
            .collect()
    }
}

/// Arithmetic in F_ℓ for a prime ℓ < 2^31.
#[derive(Clone, Copy, Debug)]
pub struct ModPrime {
    pub l: u64,
}

impl ModPrime {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.l - b) % self.l
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.l - 2)
    }

    /// Solves A x = v (A given by rows). None unless the solution exists and is unique.
    pub fn solve_unique(self, rows: &[Vec<u64>], rhs: &[u64]) -> Option<Vec<u64>> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m: Vec<Vec<u64>> =
            rows.iter().zip(rhs).map(|(r, &b)| r.iter().copied().chain([b]).collect()).collect();
        let mut prow = 0;
        for col in 0..ncols {
            let k = (prow..m.len()).find(|&k| m[k][col] != 0)?;
            m.swap(prow, k);
            let inv = self.inv(m[prow][col]);
            for x in m[prow].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot = m[prow].clone();
            for (k, row) in m.iter_mut().enumerate() {
                if k != prow && row[col] != 0 {
                    let s = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = self.sub(*x, self.mul(s, y));
                    }
                }
            }
            prow += 1;
        }
        if m[prow..].iter().any(|row| row[ncols] != 0) {
            return None;
        }
        Some(m[..ncols].iter().map(|row| row[ncols]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_rank_and_kernel() {
        let f = Field::new(3, 1).unwrap();
        let one = f.one();
        let two = f.from_int(2);
        let mut e = SparseEchelon::new(&f);
        assert!(e.insert(vec![(0, one), (1, one)]));
        assert!(e.insert(vec![(1, one), (2, two)]));
        assert!(!e.insert(vec![(0, one), (2, two), (1, two)]));
        assert_eq!(e.rank(), 2);
        let ker = e.kernel(3);
        assert_eq!(ker.len(), 1);
        // x0 + x1 = 0, x1 + 2 x2 = 0
        let x = &ker[0];
        assert!(f.add(x[0], x[1]).is_zero());
        assert!(f.add(x[1], f.mul(two, x[2])).is_zero());
    }

    #[test]
    fn mod_prime_solve() {
        let m = ModPrime { l: 13 };
        let rows = vec![vec![1, 1], vec![1, 12], vec![2, 0]];
        assert_eq!(m.solve_unique(&rows, &[5, 1, 6]), Some(vec![3, 2]));
        assert_eq!(m.solve_unique(&rows, &[5, 1, 7]), None);
        assert_eq!(m.solve_unique(&[vec![1, 1]], &[1]), None);
    }
}
