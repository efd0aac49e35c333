use std::fmt;

use super::poly;
use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 22;
const ADD_TABLE_LIMIT: u32 = 1024;

/// An element of a [`Field`], encoded as the integer `sum c_k p^k` of its
/// coefficient vector in the polynomial basis. Zero is encoded as 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn from_index(i: u32) -> Fq {
        Fq(i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The finite field F_{p^m} = F_p[X]/(g) for the first monic irreducible g of
/// degree m, ordered by the integer encoding of its lower coefficients.
pub struct Field {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: Fq,
    exp: Vec<Fq>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn to_poly(x: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    let mut x = x;
    for _ in 0..m {
        out.push(x % p);
        x /= p;
    }
    poly::trim(out)
}

fn from_poly(a: &[u32], p: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field {
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(m).filter(|&o| o <= MAX_ORDER).ok_or_else(|| {
            Error::SizeLimit(format!("field of order {p}^{m} exceeds {MAX_ORDER}"))
        })? as u32;

        let lower = order / p;
        let modulus = (0..lower)
            .map(|k| {
                let mut g = to_poly(k, p, m);
                g.resize(m as usize, 0);
                g.push(1);
                g
            })
            .find(|g| poly::is_irreducible(g, p))
            .ok_or_else(|| Error::InternalInconsistency(format!("no irreducible of degree {m}")))?;

        let n = (order - 1) as u64;
        let factors = prime_factors(n);
        let slow_pow = |x: u32, e: u64| from_poly(&poly::powmod(&to_poly(x, p, m), e, &modulus, p), p);
        let generator = (1..order)
            .find(|&x| factors.iter().all(|&l| slow_pow(x, n / l) != 1))
            .map(Fq)
            .ok_or_else(|| Error::InternalInconsistency("no multiplicative generator".into()))?;

        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![u32::MAX; order as usize];
        let g = to_poly(generator.0, p, m);
        let mut cur: Vec<u32> = vec![1];
        for k in 0..n {
            let idx = from_poly(&cur, p);
            exp.push(Fq(idx));
            log[idx as usize] = k as u32;
            cur = poly::mulmod(&cur, &g, &modulus, p);
        }

        let mut field = Field {
            p,
            degree: m,
            order,
            modulus,
            generator,
            exp,
            log,
            add_table: None,
        };
        if order <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    table[(a * order + b) as usize] = field.add_digits(Fq(a), Fq(b)).0;
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Defining polynomial, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.order).map(Fq)
    }

    fn add_digits(&self, a: Fq, b: Fq) -> Fq {
        let (mut x, mut y, p) = (a.0, b.0, self.p);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.degree {
            out += ((x % p + y % p) % p) * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Fq(out)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        match &self.add_table {
            Some(t) => Fq(t[(a.0 * self.order + b.0) as usize]),
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let (mut x, p) = (a.0, self.p);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.degree {
            out += ((p - x % p) % p) * place;
            place *= p;
            x /= p;
        }
        Fq(out)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        let n = self.order - 1;
        let k = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: Fq) -> Fq {
        assert!(!a.is_zero(), "inverse of zero");
        let n = self.order - 1;
        self.exp[((n - self.log[a.0 as usize]) % n) as usize]
    }

    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    /// a^e for any integer e; 0^e is 0 for e > 0 and 1 for e = 0.
    pub fn pow(&self, a: Fq, e: i64) -> Fq {
        if a.is_zero() {
            assert!(e >= 0, "negative power of zero");
            return if e == 0 { self.one() } else { Fq::ZERO };
        }
        let n = (self.order - 1) as i64;
        let k = (self.log[a.0 as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[k as usize]
    }

    /// Discrete logarithm to the stored generator.
    pub fn dlog(&self, a: Fq) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// generator^k
    pub fn exp(&self, k: i64) -> Fq {
        let n = (self.order - 1) as i64;
        self.exp[k.rem_euclid(n) as usize]
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as i64)
    }

    pub fn multiplicative_order(&self, a: Fq) -> u64 {
        let n = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        n / gcd(n, l)
    }

    /// A generator of the unique subfield of order p^d, which must divide the degree.
    pub fn subfield_generator(&self, d: u32) -> Result<Fq> {
        if d == 0 || self.degree % d != 0 {
            return Err(Error::InvalidField(format!(
                "no subfield of degree {d} in a field of degree {}",
                self.degree
            )));
        }
        let n = (self.order - 1) as i64;
        let sub = (self.p as i64).pow(d) - 1;
        Ok(self.exp(n / sub))
    }

    /// Elements of the prime-power subfield of degree d.
    pub fn in_subfield(&self, a: Fq, d: u32) -> bool {
        let q = (self.p as i64).pow(d);
        self.pow(a, q) == a
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_three() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.generator(), Fq(2));
    }

    #[test]
    fn f9_generator_has_order_eight() {
        let f = Field::new(3, 2).unwrap();
        let g = f.generator();
        assert_ne!(f.pow(g, 4), f.one());
        assert_eq!(f.pow(g, 8), f.one());
        assert_eq!(f.multiplicative_order(g), 8);
    }

    #[test]
    fn f25_modulus_has_no_roots() {
        let f = Field::new(5, 2).unwrap();
        let g = poly::gcd(f.modulus(), &[0, 4, 0, 0, 0, 1], 5);
        assert_eq!(g, vec![1]);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(matches!(Field::new(2, 3), Err(Error::InvalidField(_))));
        assert!(matches!(Field::new(9, 1), Err(Error::InvalidField(_))));
        assert!(matches!(Field::new(3, 0), Err(Error::InvalidField(_))));
    }

    #[test]
    fn deterministic_construction() {
        let a = Field::new(7, 2).unwrap();
        let b = Field::new(7, 2).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.generator(), b.generator());
    }

    #[test]
    fn subfield_of_f81() {
        let f = Field::new(3, 4).unwrap();
        let z = f.subfield_generator(2).unwrap();
        assert_eq!(f.multiplicative_order(z), 8);
        assert!(f.in_subfield(z, 2));
        assert!(!f.in_subfield(f.generator(), 2));
    }
}
