use std::collections::HashMap;

use crate::error::{Error, Result};

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Exact quotient of a by the monic polynomial b (coefficients low to high).
fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![0; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db];
        quot[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Φ_n with integer coefficients, from x^n - 1 = Π_{d | n} Φ_d.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    fn go(n: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
        if let Some(v) = memo.get(&n) {
            return v.clone();
        }
        let mut num = vec![0i64; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let phi = go(d, memo);
            num = div_exact(&num, &phi);
        }
        memo.insert(n, num.clone());
        num
    }
    go(n, &mut HashMap::new())
}

/// Arithmetic in Z[ζ_n] = Z[x]/Φ_n: x^k mod Φ_n is tabulated for k < n.
pub struct CyclotomicRing {
    n: usize,
    table: Vec<Vec<i64>>,
}

impl CyclotomicRing {
    pub fn new(n: u64) -> Result<CyclotomicRing> {
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        let mut table = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        if deg > 0 {
            cur[0] = 1;
        }
        for _ in 0..n {
            table.push(cur.clone());
            // multiply by x and reduce the x^deg term
            let top = cur[deg - 1];
            for j in (1..deg).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..deg {
                cur[j] = cur[j]
                    .checked_sub(top.checked_mul(phi[j]).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
            }
        }
        Ok(CyclotomicRing { n: n as usize, table })
    }

    pub fn degree(&self) -> usize {
        self.table[0].len()
    }

    /// Σ c_k ζ^{e_k} in the power basis.
    pub fn sum(&self, terms: &[(i64, i64)]) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.degree()];
        for &(e, c) in terms {
            let row = &self.table[e.rem_euclid(self.n as i64) as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                *o = o.checked_add(c.checked_mul(r).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
        }
        Ok(out)
    }
}

fn overflow() -> Error {
    Error::InternalInconsistency("integer overflow in cyclotomic arithmetic".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(24).len() - 1, 8);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        let ring = CyclotomicRing::new(24).unwrap();
        // the cube roots of unity inside μ_24
        let s = ring.sum(&[(0, 1), (8, 1), (16, 1)]).unwrap();
        assert!(s.iter().all(|&x| x == 0));
        let t = ring.sum(&[(3, 1)]).unwrap();
        assert!(t.iter().any(|&x| x != 0));
    }
}
