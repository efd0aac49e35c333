use serde::{Deserialize, Serialize};

use super::module::{generic_fibre, hom_exists, lower_bound_model, upper_bound_model, Params, RankOneBreuil};
use crate::chars::{bracket, decompose, GaloisChar, InertialChar};
use crate::error::{Error, Result};

/// A tame principal series type λ ⊕ λ', kept as an ordered pair for bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalSeriesType {
    pub lambda: InertialChar,
    pub lambda_prime: InertialChar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDigitsJson {
    pub nu: Vec<i64>,
    pub nu_prime: Vec<i64>,
}

impl PrincipalSeriesType {
    pub fn new(lambda: InertialChar, lambda_prime: InertialChar) -> PrincipalSeriesType {
        PrincipalSeriesType { lambda, lambda_prime }
    }

    pub fn from_digits(p: u32, nu: &[i64], nu_prime: &[i64]) -> PrincipalSeriesType {
        PrincipalSeriesType::new(InertialChar::from_digits(p, nu), InertialChar::from_digits(p, nu_prime))
    }

    pub fn nu(&self) -> Vec<i64> {
        self.lambda.digits()
    }

    pub fn nu_prime(&self) -> Vec<i64> {
        self.lambda_prime.digits()
    }

    pub fn is_scalar(&self) -> bool {
        self.lambda == self.lambda_prime
    }

    /// Twist both characters by ψ.
    pub fn twist(&self, psi: &InertialChar) -> PrincipalSeriesType {
        PrincipalSeriesType::new(self.lambda.mul(psi), self.lambda_prime.mul(psi))
    }
}

/// A model of type τ together with the data (J, x) that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelOfType {
    pub module: RankOneBreuil,
    pub j: Vec<bool>,
    pub x: Vec<i64>,
}

/// c_i = Σ_j ν_{i-j} p^j, the exponent with σ_i ∘ η̄^{c_i} = Π ω^ν.
pub(crate) fn descent_exponent(params: &Params, nu: &[i64], i: usize) -> i64 {
    let f = params.fu();
    let p = params.p() as i64;
    params.modk((0..f).map(|j| nu[(i + f - j) % f] * p.pow(j as u32)).sum())
}

/// Does σ_i ∘ η̄^{c_i} equal the character λ?
fn exponent_is(params: &Params, c: i64, i: usize, lambda: &InertialChar) -> bool {
    params.modk(c * params.place(i)) == lambda.scalar()
}

pub fn is_model_of_type(params: &Params, m: &RankOneBreuil, tau: &PrincipalSeriesType) -> bool {
    (0..params.fu()).all(|i| {
        exponent_is(params, m.c()[i], i, &tau.lambda) || exponent_is(params, m.c()[i], i, &tau.lambda_prime)
    })
}

/// Enumerates the models of type τ with generic fibre χ, in lexicographic order
/// of (J as a bitmask, x).
pub fn models_of_type(params: &Params, tau: &PrincipalSeriesType, chi: &GaloisChar) -> Result<Vec<ModelOfType>> {
    let f = params.fu();
    let ekl = params.ekl();
    let ep = params.eprime() as i64;
    let (nu, nu_p) = (tau.nu(), tau.nu_prime());
    let dd = decompose(&tau.lambda, &tau.lambda_prime)?;
    let masks: Vec<u32> = if tau.is_scalar() { vec![0] } else { (0..1u32 << f).collect() };
    let a_norm = params.field().inv(chi.unramified);

    let mut out = Vec::new();
    for mask in masks {
        let in_j: Vec<bool> = (0..f).map(|i| mask >> i & 1 == 1).collect();
        let base: Vec<i64> = (0..f).map(|i| if in_j[i] { nu[i] } else { nu_p[i] }).collect();
        let mut x = vec![0i64; f];
        loop {
            if let Some(m) = model_for(params, &in_j, &x, &dd, &nu, &nu_p, &base, chi, a_norm, ekl, ep)? {
                out.push(ModelOfType { module: m, j: in_j.clone(), x: x.clone() });
            }
            let mut i = f;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if x[i] < ep {
                    x[i] += 1;
                    break;
                }
                x[i] = 0;
            }
            if x.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn model_for(
    params: &Params,
    in_j: &[bool],
    x: &[i64],
    dd: &crate::chars::DigitDecomp,
    nu: &[i64],
    nu_p: &[i64],
    base: &[i64],
    chi: &GaloisChar,
    a_norm: crate::gf::Fq,
    ekl: i64,
    ep: i64,
) -> Result<Option<RankOneBreuil>> {
    let f = params.fu();
    let exps: Vec<i64> = (0..f).map(|i| base[i] + x[i]).collect();
    if InertialChar::from_digits(params.p(), &exps) != chi.inertial {
        return Ok(None);
    }
    let mut r = vec![0i64; f];
    for i in 0..f {
        let (here, next) = (in_j[i], in_j[(i + 1) % f]);
        let carry = dd.in_carry_set(i);
        let br = bracket(params.p(), params.f(), dd.delta, i as i64);
        r[i] = match (here, next, carry) {
            (a, b, _) if a == b => x[i] * ekl,
            (true, false, false) if x[i] != ep => x[i] * ekl + br,
            (false, true, true) if x[i] != ep => x[i] * ekl + (ekl - br),
            (false, true, false) if x[i] != 0 => x[i] * ekl - br,
            (true, false, true) if x[i] != 0 => x[i] * ekl - (ekl - br),
            _ => return Ok(None),
        };
    }
    let c: Vec<i64> = (0..f)
        .map(|i| descent_exponent(params, if in_j[i] { nu } else { nu_p }, i))
        .collect();
    let m = RankOneBreuil::with_norm(params, r, a_norm, c)?;
    if generic_fibre(params, &m)? != *chi {
        return Err(Error::InconsistentInvariants(format!(
            "model {m:?} built for J = {in_j:?}, x = {x:?} has the wrong generic fibre"
        )));
    }
    Ok(Some(m))
}

/// (minimal, maximal) models of type τ with generic fibre χ.
pub fn extremal_models(
    params: &Params,
    tau: &PrincipalSeriesType,
    chi: &GaloisChar,
) -> Result<(RankOneBreuil, RankOneBreuil)> {
    let models = models_of_type(params, tau, chi)?;
    let first = models.first().ok_or(Error::EmptyModelSet)?.module.clone();
    let mut max = first.clone();
    let mut min = first;
    for m in &models[1..] {
        max = upper_bound_model(params, &max, &m.module)?;
        min = lower_bound_model(params, &min, &m.module)?;
    }
    for m in &models {
        if hom_exists(params, &m.module, &max).is_none() || hom_exists(params, &min, &m.module).is_none() {
            return Err(Error::InconsistentInvariants(format!("{:?} is not between the extremal models", m.module)));
        }
    }
    for (name, e) in [("maximal", &max), ("minimal", &min)] {
        if !models.iter().any(|m| &m.module == e) {
            return Err(Error::InconsistentInvariants(format!("the {name} model is not of type τ")));
        }
    }
    Ok((min, max))
}

/// The closed form for the minimal model of type τ with trivial generic fibre:
/// r_i = e(K/L)(p - 1 - ν'_i), a = 1, c_i = Σ_j ν'_{i-j} p^j.
pub fn minimal_trivial_model(params: &Params, tau: &PrincipalSeriesType) -> Result<RankOneBreuil> {
    let (nu, nu_p) = (tau.nu(), tau.nu_prime());
    let p = params.p() as i64;
    let ep = params.eprime() as i64;
    for i in 0..params.fu() {
        if nu_p[i] < p - 1 - ep {
            return Err(Error::HypothesisViolation(format!("ν'_{i} = {} < p - 1 - e'", nu_p[i])));
        }
        if nu[i] > nu_p[i] {
            return Err(Error::HypothesisViolation(format!("ν_{i} = {} > ν'_{i} = {}", nu[i], nu_p[i])));
        }
    }
    let r = nu_p.iter().map(|&v| params.ekl() * (p - 1 - v)).collect();
    let c = (0..params.fu()).map(|i| descent_exponent(params, &nu_p, i)).collect();
    RankOneBreuil::with_norm(params, r, params.field().one(), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_scalar_type_contains_zero_model() {
        let p = Params::new(3, 2, 1, 1).unwrap();
        let triv = InertialChar::trivial(3, 2);
        let tau = PrincipalSeriesType::new(triv, triv);
        let chi = GaloisChar::trivial(p.field(), 2);
        let models = models_of_type(&p, &tau, &chi).unwrap();
        let zero = RankOneBreuil::with_norm(&p, vec![0, 0], p.field().one(), vec![0, 0]).unwrap();
        assert!(models.iter().any(|m| m.module == zero && m.x == vec![0, 0]));
        let (min, _) = extremal_models(&p, &tau, &chi).unwrap();
        assert_eq!(min, zero);
    }

    #[test]
    fn minimal_trivial_matches_fold() {
        let p = Params::new(5, 2, 1, 1).unwrap();
        let chi = GaloisChar::trivial(p.field(), 2);
        for nu_p in [[4, 4], [3, 4], [4, 3], [3, 3]] {
            for nu in [[0, 0], [1, 2], [3, 3]] {
                if nu.iter().zip(&nu_p).any(|(a, b)| a > b) {
                    continue;
                }
                let tau = PrincipalSeriesType::from_digits(5, &nu, &nu_p);
                if tau.nu() != nu || tau.nu_prime() != nu_p {
                    continue;
                }
                let (min, _) = extremal_models(&p, &tau, &chi).unwrap();
                assert_eq!(min, minimal_trivial_model(&p, &tau).unwrap(), "{nu:?} {nu_p:?}");
            }
        }
    }
}
