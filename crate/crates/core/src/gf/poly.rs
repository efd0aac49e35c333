//! Dense polynomials over a prime field, coefficients stored low degree first.
//! Only what the irreducibility test and table construction need.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

fn inv_mod(x: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = x as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p) as u64;
    let mut r: Vec<u32> = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - dm;
        for (j, &c) in m.iter().enumerate() {
            let t = factor * c as u64 % p as u64;
            r[shift + j] = ((r[shift + j] as u64 + p as u64 - t) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut base = rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = inv_mod(x[d], p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    x
}

/// X^(p^d) mod m, by repeated p-th powers.
fn frobenius_power_of_x(d: u32, m: &[u32], p: u32) -> Poly {
    let mut x: Poly = rem(&[0, 1], m, p);
    for _ in 0..d {
        x = powmod(&x, p as u64, m, p);
    }
    x
}

/// Irreducibility of a monic polynomial of degree `deg`: X^(p^deg) = X mod f and
/// gcd(f, X^(p^d) - X) = 1 for every proper divisor d of deg.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = match degree(f) {
        Some(d) if d >= 1 => d as u32,
        _ => return false,
    };
    if deg == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    if sub(&frobenius_power_of_x(deg, f, p), &rem(&x, f, p), p) != Vec::<u32>::new() {
        return false;
    }
    for d in (1..deg).filter(|d| deg % d == 0) {
        let g = gcd(f, &sub(&frobenius_power_of_x(d, f, p), &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        // X^2 + 1 over F_3 is irreducible, over F_5 it splits
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        // X^4 + X^2 + 1 = (X^2 + X + 1)(X^2 - X + 1) has no roots over F_5 but is reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 5));
    }

    #[test]
    fn gcd_is_monic() {
        let a = mul(&[1, 1], &[2, 0, 1], 5);
        let b = mul(&[1, 1], &[3, 1], 5);
        assert_eq!(gcd(&a, &b, 5), vec![1, 1]);
    }
}
