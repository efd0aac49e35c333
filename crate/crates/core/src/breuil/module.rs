use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chars::{place, GaloisChar, InertialChar};
use crate::error::{Error, Result};
use crate::gf::{Field, Fq, TensorElt};

/// The ambient setting: p, f = f', e' and k_E = F_{p^{fs}}, with e(K/L) = p^f - 1.
#[derive(Clone, Debug)]
pub struct Params {
    p: u32,
    f: u32,
    eprime: u32,
    s: u32,
    field: Arc<Field>,
    zeta: Fq,
}

impl Params {
    pub fn new(p: u32, f: u32, eprime: u32, s: u32) -> Result<Params> {
        if f == 0 || eprime == 0 || s == 0 {
            return Err(Error::InvalidParams("f, e' and the coefficient degree must be positive".into()));
        }
        let field = Field::new(p, f * s)?;
        let zeta = field.subfield_generator(f)?;
        Ok(Params { p, f, eprime, s, field: Arc::new(field), zeta })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn fu(&self) -> usize {
        self.f as usize
    }

    pub fn eprime(&self) -> u32 {
        self.eprime
    }

    pub fn coefficient_degree(&self) -> u32 {
        self.s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// η̄(g) for the fixed generator g of inertia: a generator of k^× inside k_E.
    pub fn zeta(&self) -> Fq {
        self.zeta
    }

    pub fn q(&self) -> i64 {
        (self.p as i64).pow(self.f)
    }

    /// e(K/L) = p^f - 1
    pub fn ekl(&self) -> i64 {
        self.q() - 1
    }

    pub fn e(&self) -> i64 {
        self.eprime as i64 * self.ekl()
    }

    pub fn ep(&self) -> i64 {
        self.e() * self.p as i64
    }

    /// ep/(p-1), an integer because p - 1 divides e(K/L).
    pub fn ep_over_pm1(&self) -> i64 {
        self.ep() / (self.p as i64 - 1)
    }

    pub fn place(&self, i: usize) -> i64 {
        place(self.p, self.f, i as i64)
    }

    pub fn inertial(&self, scalar: i64) -> InertialChar {
        InertialChar::new(self.p, self.f, scalar)
    }

    /// Residue of x modulo e(K/L), in [0, e(K/L)).
    pub fn modk(&self, x: i64) -> i64 {
        x.rem_euclid(self.ekl())
    }

    /// p^{-1} modulo e(K/L), i.e. p^{f-1}.
    pub fn p_inverse(&self) -> i64 {
        (self.p as i64).pow(self.f - 1) % self.ekl().max(1)
    }
}

/// A rank-one Breuil module M(r, a, c) with descent data. Only Nm(a) matters up
/// to isomorphism, so a is kept normalized to (Nm(a), 1, ..., 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankOneBreuil {
    r: Vec<i64>,
    a_norm: Fq,
    c: Vec<i64>,
    alpha: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOneBreuilJson {
    pub r: Vec<i64>,
    #[serde(default)]
    pub a_norm_dlog: i64,
    pub c: Vec<i64>,
}

fn check_len(what: &'static str, v: &[i64], f: usize) -> Result<()> {
    if v.len() == f {
        Ok(())
    } else {
        Err(Error::Length { what, expected: f, got: v.len() })
    }
}

/// α_i = p(p^{f-1} r_i + ... + r_{i+f-1})/(p^f - 1); None when not integral.
pub(crate) fn alpha_vector(params: &Params, r: &[i64]) -> std::result::Result<Vec<i64>, usize> {
    let (p, f) = (params.p() as i64, r.len());
    (0..f)
        .map(|i| {
            let num: i64 = (0..f).map(|j| p.pow((f - j) as u32) * r[(i + j) % f]).sum();
            if num % params.ekl() == 0 {
                Ok(num / params.ekl())
            } else {
                Err(i)
            }
        })
        .collect()
}

impl RankOneBreuil {
    pub fn make(params: &Params, r: Vec<i64>, a: &TensorElt, c: Vec<i64>) -> Result<RankOneBreuil> {
        if a.len() != params.fu() {
            return Err(Error::Length { what: "a", expected: params.fu(), got: a.len() });
        }
        if !a.is_unit() {
            return Err(Error::PreconditionViolation("a must be a unit".into()));
        }
        RankOneBreuil::with_norm(params, r, a.norm(params.field()), c)
    }

    pub fn with_norm(params: &Params, r: Vec<i64>, a_norm: Fq, c: Vec<i64>) -> Result<RankOneBreuil> {
        let f = params.fu();
        check_len("r", &r, f)?;
        check_len("c", &c, f)?;
        if a_norm.is_zero() {
            return Err(Error::PreconditionViolation("Nm(a) must be nonzero".into()));
        }
        for (i, &ri) in r.iter().enumerate() {
            if !(0..=params.e()).contains(&ri) {
                return Err(Error::RangeViolation { what: "r", index: i, value: ri, lo: 0, hi: params.e() });
            }
        }
        let c: Vec<i64> = c.iter().map(|&x| params.modk(x)).collect();
        for i in 0..f {
            let next = params.modk(params.p() as i64 * (c[i] + r[i]));
            if c[(i + 1) % f] != next {
                return Err(Error::RecurrenceViolation { index: i });
            }
        }
        let alpha = alpha_vector(params, &r).map_err(|index| Error::NonIntegralAlpha { index })?;
        Ok(RankOneBreuil { r, a_norm, c, alpha })
    }

    pub fn from_json(params: &Params, json: &RankOneBreuilJson) -> Result<RankOneBreuil> {
        RankOneBreuil::with_norm(params, json.r.clone(), params.field().exp(json.a_norm_dlog), json.c.clone())
    }

    pub fn to_json(&self, params: &Params) -> RankOneBreuilJson {
        RankOneBreuilJson {
            r: self.r.clone(),
            a_norm_dlog: params.field().dlog(self.a_norm).unwrap_or(0) as i64,
            c: self.c.clone(),
        }
    }

    pub fn r(&self) -> &[i64] {
        &self.r
    }

    pub fn c(&self) -> &[i64] {
        &self.c
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn norm(&self) -> Fq {
        self.a_norm
    }

    /// The normalized unit a = (Nm(a), 1, ..., 1).
    pub fn a(&self, params: &Params) -> TensorElt {
        let mut a = TensorElt::one(params.fu());
        a.comps[0] = self.a_norm;
        a
    }
}

pub fn generic_fibre(params: &Params, m: &RankOneBreuil) -> Result<GaloisChar> {
    let scalars: Vec<i64> =
        (0..params.fu()).map(|i| params.modk((m.c[i] + m.alpha[i]) * params.place(i))).collect();
    if scalars.iter().any(|&s| s != scalars[0]) {
        return Err(Error::InconsistentInvariants(format!(
            "generic fibre exponents {scalars:?} depend on the embedding"
        )));
    }
    Ok(GaloisChar::new(params.inertial(scalars[0]), params.field().inv(m.a_norm)))
}

/// Witness z_i = β_i - α_i for a nonzero map M → N, if one exists.
pub fn hom_exists(params: &Params, m: &RankOneBreuil, n: &RankOneBreuil) -> Option<Vec<i64>> {
    let z: Vec<i64> = n.alpha.iter().zip(&m.alpha).map(|(b, a)| b - a).collect();
    let ok = z.iter().all(|&zi| zi >= 0)
        && (0..params.fu()).all(|i| params.modk(z[i] - m.c[i] + n.c[i]) == 0)
        && m.a_norm == n.a_norm;
    ok.then_some(z)
}

/// The χ-dual: s_i = e - r_i with generic fibre chi2.
pub fn chi_dual(params: &Params, m: &RankOneBreuil, chi2: &GaloisChar) -> Result<RankOneBreuil> {
    let s: Vec<i64> = m.r.iter().map(|&r| params.e() - r).collect();
    let beta = alpha_vector(params, &s).map_err(|index| Error::NonIntegralAlpha { index })?;
    let t = chi2.inertial.scalar();
    let d: Vec<i64> = (0..params.fu())
        .map(|i| params.modk(t * (params.p() as i64).pow(i as u32) - beta[i]))
        .collect();
    let n = RankOneBreuil::with_norm(params, s, params.field().inv(chi2.unramified), d)?;
    debug_assert_eq!(generic_fibre(params, &n)?, *chi2);
    Ok(n)
}

/// The module P = M(t, a, v) receiving nonzero maps from both M and N, with
/// γ_i = max(α_i, β_i).
pub fn upper_bound_model(params: &Params, m: &RankOneBreuil, n: &RankOneBreuil) -> Result<RankOneBreuil> {
    if generic_fibre(params, m)? != generic_fibre(params, n)? {
        return Err(Error::PreconditionViolation("the two modules have different generic fibres".into()));
    }
    let f = params.fu();
    let p = params.p() as i64;
    let gamma: Vec<i64> = (0..f).map(|i| m.alpha[i].max(n.alpha[i])).collect();
    let nn = (0..f)
        .map(|i| {
            let z = (n.alpha[i] - m.alpha[i]).max(0);
            if z % p == 0 {
                Ok(z / p)
            } else {
                Err(Error::InconsistentInvariants(format!("β_{i} - α_{i} = {z} is not divisible by p")))
            }
        })
        .collect::<Result<Vec<i64>>>()?;
    let t: Vec<i64> = (0..f).map(|i| m.r[i] + p * nn[i] - nn[(i + 1) % f]).collect();
    let v: Vec<i64> = (0..f).map(|i| params.modk(m.c[i] + m.alpha[i] - gamma[i])).collect();
    let out = RankOneBreuil::with_norm(params, t, m.a_norm, v)?;
    if out.alpha != gamma || hom_exists(params, m, &out).is_none() || hom_exists(params, n, &out).is_none() {
        return Err(Error::InconsistentInvariants("upper bound model fails to dominate its inputs".into()));
    }
    Ok(out)
}

/// The module mapping nonzero to both M and N with α = min(α_M, α_N), obtained
/// by dualizing, taking the upper bound, and dualizing back.
pub fn lower_bound_model(params: &Params, m: &RankOneBreuil, n: &RankOneBreuil) -> Result<RankOneBreuil> {
    let chi = generic_fibre(params, m)?;
    if chi != generic_fibre(params, n)? {
        return Err(Error::PreconditionViolation("the two modules have different generic fibres".into()));
    }
    let up = upper_bound_model(params, &chi_dual(params, m, &chi)?, &chi_dual(params, n, &chi)?)?;
    let out = chi_dual(params, &up, &chi)?;
    if hom_exists(params, &out, m).is_none() || hom_exists(params, &out, n).is_none() {
        return Err(Error::InconsistentInvariants("lower bound model fails to map to its inputs".into()));
    }
    Ok(out)
}

/// All valid modules for the given params and norm, ordered by (r, c).
pub fn all_modules(params: &Params, a_norm: Fq) -> Vec<RankOneBreuil> {
    let f = params.fu();
    let mut out = Vec::new();
    let mut r = vec![0i64; f];
    loop {
        if alpha_vector(params, &r).is_ok() {
            for c0 in 0..params.ekl() {
                let mut c = vec![c0; f];
                for i in 1..f {
                    c[i] = params.modk(params.p() as i64 * (c[i - 1] + r[i - 1]));
                }
                if let Ok(m) = RankOneBreuil::with_norm(params, r.clone(), a_norm, c) {
                    out.push(m);
                }
            }
        }
        // odometer over [0, e]^f, last index fastest
        let mut i = f;
        loop {
            if i == 0 {
                out.sort_by(|x, y| (&x.r, &x.c).cmp(&(&y.r, &y.c)));
                return out;
            }
            i -= 1;
            if r[i] < params.e() {
                r[i] += 1;
                break;
            }
            r[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(params: &Params) -> Fq {
        params.field().one()
    }

    #[test]
    fn make_examples() {
        let p = Params::new(3, 1, 1, 1).unwrap();
        let m = RankOneBreuil::with_norm(&p, vec![2], one(&p), vec![0]).unwrap();
        assert_eq!(m.alpha(), &[3]);
        let zero = RankOneBreuil::with_norm(&p, vec![0], one(&p), vec![0]).unwrap();
        assert_eq!(zero.alpha(), &[0]);

        let p = Params::new(3, 2, 1, 1).unwrap();
        let m = RankOneBreuil::with_norm(&p, vec![8, 0], one(&p), vec![0, 0]).unwrap();
        assert_eq!(m.alpha(), &[9, 3]);
        assert!(matches!(
            RankOneBreuil::with_norm(&p, vec![8, 0], one(&p), vec![0, 1]),
            Err(Error::RecurrenceViolation { .. })
        ));
        assert!(matches!(
            RankOneBreuil::with_norm(&p, vec![9, 0], one(&p), vec![0, 3]),
            Err(Error::RangeViolation { .. })
        ));
    }

    #[test]
    fn generic_fibre_examples() {
        let p = Params::new(3, 1, 1, 1).unwrap();
        let m = RankOneBreuil::with_norm(&p, vec![2], one(&p), vec![0]).unwrap();
        let chi = generic_fibre(&p, &m).unwrap();
        assert_eq!(chi.inertial.scalar(), 1);
        assert_eq!(chi.unramified, one(&p));
        let zero = RankOneBreuil::with_norm(&p, vec![0], one(&p), vec![0]).unwrap();
        assert!(generic_fibre(&p, &zero).unwrap().is_trivial(p.field()));
    }

    #[test]
    fn hom_examples() {
        let p = Params::new(3, 1, 3, 1).unwrap();
        let m = RankOneBreuil::with_norm(&p, vec![0], one(&p), vec![0]).unwrap();
        let n = RankOneBreuil::with_norm(&p, vec![6], one(&p), vec![0]).unwrap();
        assert_eq!(hom_exists(&p, &m, &m), Some(vec![0]));
        assert_eq!(hom_exists(&p, &m, &n), None);
    }

    #[test]
    fn chi_dual_example() {
        let p = Params::new(3, 1, 1, 1).unwrap();
        let m = RankOneBreuil::with_norm(&p, vec![0], one(&p), vec![0]).unwrap();
        let chi2 = GaloisChar::new(p.inertial(1), one(&p));
        let n = chi_dual(&p, &m, &chi2).unwrap();
        assert_eq!((n.r(), n.c(), n.norm()), (&[2][..], &[0][..], one(&p)));
        let back = chi_dual(&p, &n, &generic_fibre(&p, &m).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn upper_bound_example() {
        let p = Params::new(3, 1, 1, 1).unwrap();
        let m = RankOneBreuil::with_norm(&p, vec![2], one(&p), vec![0]).unwrap();
        let n = RankOneBreuil::with_norm(&p, vec![0], one(&p), vec![1]).unwrap();
        assert_eq!(upper_bound_model(&p, &m, &n).unwrap(), m);
        assert_eq!(upper_bound_model(&p, &m, &m).unwrap(), m);
        assert_eq!(lower_bound_model(&p, &m, &n).unwrap(), n);
    }

    #[test]
    fn module_count_small() {
        let p = Params::new(3, 2, 1, 1).unwrap();
        let all = all_modules(&p, one(&p));
        assert!(all.iter().all(|m| generic_fibre(&p, m).is_ok()));
        assert!(!all.is_empty());
    }
}
