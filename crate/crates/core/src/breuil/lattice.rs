use serde::{Deserialize, Serialize};

use super::ext::{ext_basis, minimax_transfer, ExtClass};
use super::models::{extremal_models, minimal_trivial_model, PrincipalSeriesType};
use super::module::{chi_dual, generic_fibre, hom_exists, Params, RankOneBreuil};
use crate::chars::{bracket, GaloisChar, InertialChar};
use crate::error::{Error, Result};

/// The space L(1, χ, τ) inside Ext^1 of M(0,1,0) by M(e,b,d†), as monomial slots:
/// component i holds the degrees t(p^f - 1) - [S_i] for the listed t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSlots {
    pub t_values: Vec<Vec<i64>>,
    pub degrees: Vec<Vec<i64>>,
}

impl LatticeSlots {
    pub fn dim(&self) -> usize {
        self.t_values.iter().map(Vec::len).sum()
    }

    pub fn intersect(&self, other: &LatticeSlots) -> LatticeSlots {
        let keep = |a: &[Vec<i64>], b: &[Vec<i64>]| -> Vec<Vec<i64>> {
            a.iter().zip(b).map(|(x, y)| x.iter().copied().filter(|v| y.contains(v)).collect()).collect()
        };
        LatticeSlots {
            t_values: keep(&self.t_values, &other.t_values),
            degrees: keep(&self.degrees, &other.degrees),
        }
    }
}

fn check_hypotheses(params: &Params, tau: &PrincipalSeriesType, chi: &GaloisChar) -> Result<()> {
    let p = params.p() as i64;
    let ep = params.eprime() as i64;
    let (nu, nu_p) = (tau.nu(), tau.nu_prime());
    for i in 0..params.fu() {
        if nu_p[i] < p - 1 - ep {
            return Err(Error::HypothesisViolation(format!("ν'_{i} = {} is below p - 1 - e'", nu_p[i])));
        }
        if nu[i] > nu_p[i] {
            return Err(Error::HypothesisViolation(format!("ν_{i} = {} exceeds ν'_{i} = {}", nu[i], nu_p[i])));
        }
        if nu[i] + nu_p[i] < p - 1 {
            return Err(Error::HypothesisViolation(format!("ν_{i} + ν'_{i} = {} < p - 1", nu[i] + nu_p[i])));
        }
    }
    if chi.is_trivial(params.field()) {
        return Err(Error::HypothesisViolation("χ must be nontrivial".into()));
    }
    let expected = tau
        .lambda
        .mul(&tau.lambda_prime)
        .mul(&InertialChar::cyclotomic(params.p(), params.f(), params.eprime()));
    if chi.inertial != expected {
        return Err(Error::HypothesisViolation("χ restricted to inertia must equal λλ'ε̄".into()));
    }
    Ok(())
}

/// S_i = Σ_j (ν_{i-j} + ν'_{i-j} - (p-1)) p^j, unreduced.
fn twisted_sum(params: &Params, tau: &PrincipalSeriesType, i: usize) -> i64 {
    let f = params.fu();
    let p = params.p() as i64;
    let (nu, nu_p) = (tau.nu(), tau.nu_prime());
    (0..f).map(|j| (nu[(i + f - j) % f] + nu_p[(i + f - j) % f] - (p - 1)) * p.pow(j as u32)).sum()
}

/// L(1, χ, τ) for τ and χ already twisted so that χ₁ = 1. The slots are obtained
/// by transferring the Ext^1 basis of (minimal model, its χ-dual) to the minimax
/// pair, and are checked against the closed form p - 1 - ν'_i < t ≤ e'.
pub fn l_space(params: &Params, tau: &PrincipalSeriesType, chi: &GaloisChar) -> Result<LatticeSlots> {
    check_hypotheses(params, tau, chi)?;
    let f = params.fu();
    let (ekl, ep) = (params.ekl(), params.eprime() as i64);
    let p = params.p() as i64;
    let nu_p = tau.nu_prime();

    let trivial = GaloisChar::trivial(params.field(), params.f());
    let (m, _) = extremal_models(params, tau, &trivial)?;
    if m != minimal_trivial_model(params, tau)? {
        return Err(Error::InconsistentInvariants("minimal model differs from the closed form".into()));
    }
    let n = chi_dual(params, &m, chi)?;
    let basis = ext_basis(params, &m, &n);
    if basis.delta_slot.is_some() {
        return Err(Error::InconsistentInvariants("a nonzero map between different generic fibres".into()));
    }

    let mut t_values = vec![Vec::new(); f];
    let mut degrees = vec![Vec::new(); f];
    for (i, slots) in basis.slots.iter().enumerate() {
        let s_i = twisted_sum(params, tau, i);
        let reduced = bracket(params.p(), params.f(), s_i, 0);
        for &j in slots {
            let ext = ExtClass::monomial(params, m.clone(), n.clone(), i, j)?;
            let (dag, _) = minimax_transfer(params, &ext)?;
            check_minimax_pair(params, &dag, tau)?;
            let d = dag.h().valuation(i).ok_or_else(|| {
                Error::InconsistentInvariants("transferred class lost its monomial".into())
            })? as i64;
            if (d + s_i) % ekl != 0 {
                return Err(Error::InconsistentInvariants(format!("degree {d} is not of the form t·e(K/L) - S")));
            }
            let t = (d + s_i) / ekl;
            t_values[i].push(t);
            degrees[i].push(t * ekl - reduced);
        }
        t_values[i].sort_unstable();
        degrees[i].sort_unstable();
        let expected: Vec<i64> = (p - nu_p[i]..=ep).collect();
        if t_values[i] != expected {
            return Err(Error::InconsistentInvariants(format!(
                "component {i}: t-values {:?}, closed form {expected:?}",
                t_values[i]
            )));
        }
    }
    Ok(LatticeSlots { t_values, degrees })
}

fn check_minimax_pair(params: &Params, dag: &ExtClass, tau: &PrincipalSeriesType) -> Result<()> {
    let source_ok = dag.m().c().iter().all(|&c| c == 0) && dag.m().norm() == params.field().one();
    let target_ok = (0..params.fu()).all(|k| dag.n().c()[k] == params.modk(twisted_sum(params, tau, k)));
    if !source_ok || !target_ok {
        return Err(Error::InconsistentInvariants(format!(
            "transferred pair is not P(0,1,0; e,b,d†): c† = {:?}, d† = {:?}",
            dag.m().c(),
            dag.n().c()
        )));
    }
    Ok(())
}

/// L(χ₁, χ₂, τ), computed after twisting by χ₁^{-1}.
pub fn l_space_for(
    params: &Params,
    chi1: &GaloisChar,
    chi2: &GaloisChar,
    tau: &PrincipalSeriesType,
) -> Result<LatticeSlots> {
    let chi = chi2.div(params.field(), chi1);
    l_space(params, &tau.twist(&chi1.inertial.inv()), &chi)
}

/// The inequality max(α_{i+1}/p - β_i, α_i - β_{i+1}/p - e) ≤ (same for M', N')
/// for all i, which forces L(M', N') ⊆ L(M, N).
pub fn containment(
    params: &Params,
    mp: &RankOneBreuil,
    np: &RankOneBreuil,
    m: &RankOneBreuil,
    n: &RankOneBreuil,
) -> bool {
    let f = params.fu();
    let p = params.p() as i64;
    let e = params.e();
    let side = |a: &RankOneBreuil, b: &RankOneBreuil, i: usize| {
        let (al, be) = (a.alpha(), b.alpha());
        (al[(i + 1) % f] / p - be[i]).max(al[i] - be[(i + 1) % f] / p - e)
    };
    (0..f).all(|i| side(m, n, i) <= side(mp, np, i))
}

/// The sufficient condition by maps: M → M' and N' → N both nonzero.
pub fn containment_by_homs(
    params: &Params,
    mp: &RankOneBreuil,
    np: &RankOneBreuil,
    m: &RankOneBreuil,
    n: &RankOneBreuil,
) -> bool {
    hom_exists(params, m, mp).is_some() && hom_exists(params, np, n).is_some()
}

/// Generic fibres must agree pairwise for containment to be meaningful.
pub fn same_fibres(
    params: &Params,
    mp: &RankOneBreuil,
    np: &RankOneBreuil,
    m: &RankOneBreuil,
    n: &RankOneBreuil,
) -> Result<bool> {
    Ok(generic_fibre(params, mp)? == generic_fibre(params, m)?
        && generic_fibre(params, np)? == generic_fibre(params, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau_a(p: u32, a: &[i64], b: &[i64]) -> PrincipalSeriesType {
        let lam: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let lam_p: Vec<i64> = a.iter().map(|x| -x).collect();
        PrincipalSeriesType::new(InertialChar::from_digits(p, &lam), InertialChar::from_digits(p, &lam_p))
    }

    #[test]
    fn lattice_dimensions_p5_f2() {
        let params = Params::new(5, 2, 1, 1).unwrap();
        let b = [1, 1];
        let chi = GaloisChar::new(
            InertialChar::from_digits(5, &[b[0] + 1, b[1] + 1]),
            params.field().one(),
        );
        for a in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            let l = l_space(&params, &tau_a(5, &a, &b), &chi).unwrap();
            assert_eq!(l.dim() as i64, a.iter().map(|x| 1 - x).sum::<i64>(), "a = {a:?}");
        }
    }

    #[test]
    fn containment_reflexive() {
        let params = Params::new(3, 1, 2, 1).unwrap();
        let one = params.field().one();
        let m = RankOneBreuil::with_norm(&params, vec![2], one, vec![0]).unwrap();
        let n = RankOneBreuil::with_norm(&params, vec![0], one, vec![1]).unwrap();
        assert!(containment(&params, &m, &n, &m, &n));
    }
}
