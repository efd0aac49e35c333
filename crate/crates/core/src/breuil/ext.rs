use serde::{Deserialize, Serialize};

use super::module::{hom_exists, Params, RankOneBreuil};
use crate::error::{Error, Result};
use crate::gf::{Fq, TruncPoly};

/// Monomial slots of the canonical form of Ext^1(M, N): per component, the
/// permitted degrees of h_i, plus the extra slot in component 0 when Hom(M, N) ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtBasis {
    pub slots: Vec<Vec<i64>>,
    pub delta_slot: Option<i64>,
}

impl ExtBasis {
    pub fn dim(&self) -> usize {
        self.slots.iter().map(Vec::len).sum::<usize>() + usize::from(self.delta_slot.is_some())
    }
}

pub fn ext_basis(params: &Params, m: &RankOneBreuil, n: &RankOneBreuil) -> ExtBasis {
    let e = params.e();
    let slots = (0..params.fu())
        .map(|i| {
            let (r, s) = (m.r()[i], n.r()[i]);
            let target = params.modk(r + m.c()[i] - n.c()[i]);
            ((r + s - e).max(0)..s).filter(|&j| params.modk(j) == target).collect()
        })
        .collect();
    let delta_slot = hom_exists(params, m, n).map(|z| m.r()[0] + z[0]);
    ExtBasis { slots, delta_slot }
}

pub fn ext_dim(params: &Params, m: &RankOneBreuil, n: &RankOneBreuil) -> usize {
    ext_basis(params, m, n).dim()
}

/// An extension P(r, a, c; s, b, d; h) of M by N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    m: RankOneBreuil,
    n: RankOneBreuil,
    h: TruncPoly,
}

impl ExtClass {
    /// Checks that u^{max(0, r_i+s_i-e)} divides h_i and that the terms of h_i of
    /// degree below e + s_i have degree ≡ r_i + c_i - d_i.
    pub fn new(params: &Params, m: RankOneBreuil, n: RankOneBreuil, h: TruncPoly) -> Result<ExtClass> {
        if h.num_components() != params.fu() || h.len() as i64 != params.ep() {
            return Err(Error::Length { what: "h", expected: params.ep() as usize, got: h.len() });
        }
        let e = params.e();
        for i in 0..params.fu() {
            let (r, s) = (m.r()[i], n.r()[i]);
            let lo = (r + s - e).max(0);
            let target = params.modk(r + m.c()[i] - n.c()[i]);
            for j in h.support(i).map(|j| j as i64) {
                if j < lo {
                    return Err(Error::PreconditionViolation(format!(
                        "h_{i} has a term of degree {j} below u^{lo}"
                    )));
                }
                if j < e + s && params.modk(j) != target {
                    return Err(Error::PreconditionViolation(format!(
                        "h_{i} has a term of degree {j}, expected ≡ {target} mod {}",
                        params.ekl()
                    )));
                }
            }
        }
        Ok(ExtClass { m, n, h })
    }

    /// The class whose h is a single monomial u^deg in component i.
    pub fn monomial(params: &Params, m: RankOneBreuil, n: RankOneBreuil, i: usize, deg: i64) -> Result<ExtClass> {
        let h = TruncPoly::monomial(params.fu(), params.ep() as usize, i, deg as usize, params.field().one());
        ExtClass::new(params, m, n, h)
    }

    /// The class with coefficient `coeffs[k]` on the k-th slot of `basis`, slots
    /// listed component by component and the extra slot last.
    pub fn from_basis(
        params: &Params,
        m: RankOneBreuil,
        n: RankOneBreuil,
        basis: &ExtBasis,
        coeffs: &[Fq],
    ) -> Result<ExtClass> {
        if coeffs.len() != basis.dim() {
            return Err(Error::Length { what: "coefficients", expected: basis.dim(), got: coeffs.len() });
        }
        let mut h = TruncPoly::zero(params.fu(), params.ep() as usize);
        let mut k = 0;
        for (i, slots) in basis.slots.iter().enumerate() {
            for &j in slots {
                h.set(i, j as usize, coeffs[k]);
                k += 1;
            }
        }
        if let Some(j) = basis.delta_slot {
            h.set(0, j as usize, coeffs[k]);
        }
        ExtClass::new(params, m, n, h)
    }

    pub fn m(&self) -> &RankOneBreuil {
        &self.m
    }

    pub fn n(&self) -> &RankOneBreuil {
        &self.n
    }

    pub fn h(&self) -> &TruncPoly {
        &self.h
    }

    /// deg h_i < s_i everywhere, apart from the extra slot when Hom(M, N) ≠ 0.
    pub fn is_canonical(&self, params: &Params) -> bool {
        let extra = hom_exists(params, &self.m, &self.n).map(|z| self.m.r()[0] + z[0]);
        (0..params.fu()).all(|i| {
            self.h
                .support(i)
                .all(|j| (j as i64) < self.n.r()[i] || (i == 0 && Some(j as i64) == extra))
        })
    }
}

/// P ↦ P† = P(0, a, c†; e, b, d†; u^δ h) with the same generic fibre.
pub fn minimax_transfer(params: &Params, ext: &ExtClass) -> Result<(ExtClass, Vec<i64>)> {
    let f = params.fu();
    let (m, n) = (&ext.m, &ext.n);
    let big = params.ep_over_pm1();
    let delta: Vec<i64> = (0..f).map(|i| big - n.alpha()[i] + m.alpha()[i] - m.r()[i]).collect();
    if let Some(i) = delta.iter().position(|&d| d < 0) {
        return Err(Error::InconsistentInvariants(format!("transfer shift δ_{i} = {} is negative", delta[i])));
    }
    let c_dag: Vec<i64> = (0..f).map(|i| m.c()[i] + m.alpha()[i]).collect();
    let d_dag: Vec<i64> = (0..f).map(|i| n.c()[i] + n.alpha()[i] - big).collect();
    let m_dag = RankOneBreuil::with_norm(params, vec![0; f], m.norm(), c_dag)?;
    let n_dag = RankOneBreuil::with_norm(params, vec![params.e(); f], n.norm(), d_dag)?;
    let h_dag = ext.h.shift(&delta);
    let terms = |h: &TruncPoly| (0..f).map(|i| h.support(i).count()).sum::<usize>();
    if terms(&h_dag) != terms(&ext.h) {
        return Err(Error::InconsistentInvariants("transfer shift truncated h".into()));
    }
    Ok((ExtClass::new(params, m_dag, n_dag, h_dag)?, delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_extension_of_trivial() {
        let p = Params::new(3, 2, 1, 1).unwrap();
        let z = RankOneBreuil::with_norm(&p, vec![0, 0], p.field().one(), vec![0, 0]).unwrap();
        let b = ext_basis(&p, &z, &z);
        assert_eq!(b.dim(), 1);
        assert_eq!(b.delta_slot, Some(0));
    }

    #[test]
    fn three_slot_example() {
        let p = Params::new(3, 1, 3, 1).unwrap();
        let m = RankOneBreuil::with_norm(&p, vec![0], p.field().one(), vec![0]).unwrap();
        let n = RankOneBreuil::with_norm(&p, vec![6], p.field().one(), vec![0]).unwrap();
        let b = ext_basis(&p, &m, &n);
        assert_eq!(b.slots, vec![vec![0, 2, 4]]);
        assert_eq!(b.delta_slot, None);
        assert_eq!(ext_dim(&p, &m, &n), 3);
    }

    #[test]
    fn transfer_fixes_minimax_pairs() {
        let p = Params::new(3, 1, 3, 1).unwrap();
        let m = RankOneBreuil::with_norm(&p, vec![0], p.field().one(), vec![0]).unwrap();
        let n = RankOneBreuil::with_norm(&p, vec![6], p.field().one(), vec![0]).unwrap();
        let basis = ext_basis(&p, &m, &n);
        let coeffs = vec![p.field().one(); basis.dim()];
        let ext = ExtClass::from_basis(&p, m, n, &basis, &coeffs).unwrap();
        assert!(ext.is_canonical(&p));
        let (dag, delta) = minimax_transfer(&p, &ext).unwrap();
        assert_eq!(delta, vec![0]);
        assert_eq!(dag, ext);
    }
}
