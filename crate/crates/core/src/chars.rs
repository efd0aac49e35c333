//! Tame characters of inertia as residues modulo p^f - 1, their niveau-f digit
//! expansions, Galois characters with an unramified part, and the digit/carry
//! decomposition of a pair of characters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, Fq};

/// p^{(f - i) mod f}, the scalar weight of ω_i; i may be any integer.
pub fn place(p: u32, f: u32, i: i64) -> i64 {
    (p as i64).pow(((f as i64 - i).rem_euclid(f as i64)) as u32)
}

/// A character Π ω_i^{ν_i} of inertia, stored as its scalar Σ ν_i p^{f-i} mod p^f - 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InertialChar {
    p: u32,
    f: u32,
    scalar: i64,
}

impl fmt::Debug for InertialChar {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "ω^{} (p={}, f={})", self.scalar, self.p, self.f)
    }
}

impl InertialChar {
    pub fn new(p: u32, f: u32, scalar: i64) -> InertialChar {
        let m = (p as i64).pow(f) - 1;
        InertialChar { p, f, scalar: scalar.rem_euclid(m) }
    }

    pub fn trivial(p: u32, f: u32) -> InertialChar {
        InertialChar::new(p, f, 0)
    }

    /// The fundamental character ω_i.
    pub fn omega(p: u32, f: u32, i: i64) -> InertialChar {
        InertialChar::new(p, f, place(p, f, i))
    }

    /// Π ω_i^{e_i} for arbitrary integer exponents.
    pub fn from_digits(p: u32, exps: &[i64]) -> InertialChar {
        let f = exps.len() as u32;
        let m = (p as i64).pow(f) - 1;
        let s = exps
            .iter()
            .enumerate()
            .fold(0i64, |acc, (i, &e)| (acc + e.rem_euclid(m) * place(p, f, i as i64)) % m);
        InertialChar::new(p, f, s)
    }

    /// The mod p cyclotomic character on inertia, Π ω_i^{e'}.
    pub fn cyclotomic(p: u32, f: u32, eprime: u32) -> InertialChar {
        InertialChar::from_digits(p, &vec![eprime as i64; f as usize])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn modulus(&self) -> i64 {
        (self.p as i64).pow(self.f) - 1
    }

    pub fn scalar(&self) -> i64 {
        self.scalar
    }

    pub fn is_trivial(&self) -> bool {
        self.scalar == 0
    }

    /// Canonical digits, read off the representative in [1, p^f - 1]; the trivial
    /// character has all digits p - 1.
    pub fn digits(&self) -> Vec<i64> {
        let r = if self.scalar == 0 { self.modulus() } else { self.scalar };
        digits_of(self.p, self.f, r)
    }

    pub fn mul(&self, other: &InertialChar) -> InertialChar {
        InertialChar::new(self.p, self.f, self.scalar + other.scalar)
    }

    pub fn inv(&self) -> InertialChar {
        InertialChar::new(self.p, self.f, -self.scalar)
    }

    pub fn div(&self, other: &InertialChar) -> InertialChar {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> InertialChar {
        let m = self.modulus();
        InertialChar::new(self.p, self.f, (self.scalar * k.rem_euclid(m)) % m)
    }
}

/// Digits ν_i with Σ ν_i p^{(f-i) mod f} = r, for 0 <= r <= p^f - 1.
pub(crate) fn digits_of(p: u32, f: u32, r: i64) -> Vec<i64> {
    let mut base = Vec::with_capacity(f as usize);
    let mut x = r;
    for _ in 0..f {
        base.push(x % p as i64);
        x /= p as i64;
    }
    (0..f as usize).map(|i| base[(f as usize - i) % f as usize]).collect()
}

/// A character of G_L: an inertial part and the value of the unramified twist on
/// arithmetic Frobenius, an element of k_E^×.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GaloisChar {
    pub inertial: InertialChar,
    pub unramified: Fq,
}

impl GaloisChar {
    pub fn new(inertial: InertialChar, unramified: Fq) -> GaloisChar {
        GaloisChar { inertial, unramified }
    }

    pub fn trivial(field: &Field, f: u32) -> GaloisChar {
        GaloisChar::new(InertialChar::trivial(field.p(), f), field.one())
    }

    pub fn is_trivial(&self, field: &Field) -> bool {
        self.inertial.is_trivial() && self.unramified == field.one()
    }

    pub fn mul(&self, field: &Field, other: &GaloisChar) -> GaloisChar {
        GaloisChar::new(self.inertial.mul(&other.inertial), field.mul(self.unramified, other.unramified))
    }

    pub fn inv(&self, field: &Field) -> GaloisChar {
        GaloisChar::new(self.inertial.inv(), field.inv(self.unramified))
    }

    pub fn div(&self, field: &Field, other: &GaloisChar) -> GaloisChar {
        self.mul(field, &other.inv(field))
    }

    pub fn to_json(&self, field: &Field) -> GaloisCharJson {
        GaloisCharJson {
            scalar: self.inertial.scalar(),
            unramified_dlog: field.dlog(self.unramified).unwrap_or(0) as i64,
        }
    }

    pub fn from_json(field: &Field, f: u32, json: &GaloisCharJson) -> GaloisChar {
        GaloisChar::new(InertialChar::new(field.p(), f, json.scalar), field.exp(json.unramified_dlog))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertialCharJson {
    pub scalar: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisCharJson {
    pub scalar: i64,
    #[serde(default)]
    pub unramified_dlog: i64,
}

/// The decomposition ν'_i = δ_i + ν_i - pγ_{i-1} + γ_i of λ' against λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitDecomp {
    pub delta: i64,
    pub delta_digits: Vec<i64>,
    pub carries: Vec<i64>,
}

impl DigitDecomp {
    pub fn carry_set(&self) -> Vec<usize> {
        self.carries.iter().enumerate().filter(|(_, &g)| g == 1).map(|(i, _)| i).collect()
    }

    pub fn in_carry_set(&self, i: usize) -> bool {
        self.carries[i] == 1
    }
}

pub fn decompose(lambda: &InertialChar, lambda_prime: &InertialChar) -> Result<DigitDecomp> {
    let (p, f) = (lambda.p(), lambda.f());
    let fu = f as usize;
    let delta_char = lambda_prime.div(lambda);
    let delta = delta_char.scalar();
    let delta_digits = if delta == 0 { vec![0; fu] } else { delta_char.digits() };
    let nu = lambda.digits();
    let nu_prime = lambda_prime.digits();

    // guess the carry into the last position, then propagate towards index 0
    // and check the wrap-around
    let mut found = Vec::new();
    for guess in 0..=1 {
        let mut gamma = vec![0i64; fu];
        gamma[fu - 1] = guess;
        let mut ok = true;
        for i in (0..fu).rev() {
            let out = delta_digits[i] + nu[i] + gamma[i] - nu_prime[i];
            if out != 0 && out != p as i64 {
                ok = false;
                break;
            }
            let carry = out / p as i64;
            if i == 0 {
                ok = gamma[fu - 1] == carry;
            } else {
                gamma[i - 1] = carry;
            }
        }
        if ok {
            found.push(gamma);
        }
    }
    match found.len() {
        1 => Ok(DigitDecomp { delta, delta_digits, carries: found.pop().unwrap() }),
        n => Err(Error::InternalInconsistency(format!(
            "{n} carry vectors solve the digit identity for {lambda:?}, {lambda_prime:?}"
        ))),
    }
}

/// [p^i δ], the representative of p^i δ in [0, p^f - 2].
pub fn bracket(p: u32, f: u32, delta: i64, i: i64) -> i64 {
    let m = (p as i64).pow(f) - 1;
    let k = i.rem_euclid(f as i64) as u32;
    (delta.rem_euclid(m) * (p as i64).pow(k)).rem_euclid(m)
}
