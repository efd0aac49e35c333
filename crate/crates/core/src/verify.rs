//! The acceptance suites. Each returns a pass/fail record with a one-line detail.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::breuil::{
    all_modules, ext_dim, extremal_models, generic_fibre, hom_exists, l_space_for, minimal_trivial_model,
    models_of_type, upper_bound_model, LatticeSlots, Params, PrincipalSeriesType, RankOneBreuil,
};
use crate::chars::{GaloisChar, InertialChar};
use crate::oracle::{
    brute_ext_dim, brute_hom_space, brute_models_of_type, det_weight, module_set, BrauerTable, Limits, Presentation,
};
use crate::weights::{
    enumerate_wss, exceptional_weights, genericity, host_index, index_leq, jh_constituents, lcris_dim, mu_of_jd,
    partition, tau_of_a, type_indices, wexpl_shape, GenericityData, SerreWeight, ShapeSpec, WeightParam,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub limits: Limits,
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "counterexample at p in {5,7}"),
    (2, "ext and hom dimensions vs oracle"),
    (3, "partition of the explicit weights"),
    (4, "lattice dimension and max-law"),
    (5, "constituents vs Brauer oracle"),
    (6, "model structure"),
    (7, "crystalline dimension vs host index"),
    (8, "shape monotonicity and tres ramifiee"),
];

type Check = std::result::Result<String, String>;

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

pub fn run_criterion(id: u8, opts: &VerifyOptions) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => counterexample(opts),
        2 => ext_oracle(opts),
        3 => partition_grid(),
        4 => lattice_law(),
        5 => jh_vs_brauer(opts),
        6 => model_structure(opts),
        7 => lcris_vs_host(),
        8 => shapes(),
        _ => Err(format!("no criterion {id}")),
    };
    let name = CRITERIA.iter().find(|(k, _)| *k == id).map_or("unknown", |(_, n)| n);
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, passed, detail, elapsed_ms: start.elapsed().as_millis() }
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id, opts)).collect()
}

/// The two weights of the non-generic example with χ₁ = 1, χ₂|_I = ω₀^{p-1}ω₁^b.
pub fn counterexample_weights(p: u32, b: i64) -> (SerreWeight, SerreWeight) {
    let pi = p as i64;
    (
        SerreWeight::new(p, vec![pi - 1, b - 1], vec![pi - 1, pi - b - 1]),
        SerreWeight::new(p, vec![0, 0], vec![pi - 2, b - 1]),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub p: u32,
    pub b: i64,
    pub mu_lcris: Vec<i64>,
    pub mu_prime_lcris: Vec<i64>,
    pub types: Vec<(i64, i64)>,
    pub expected_type: (i64, i64),
    pub mu_prime_in_type: bool,
}

/// dim L_cris for each witness (J, d) of the two weights, and the principal
/// series types whose reduction contains μ, as scalar pairs.
pub fn counterexample_report(table: &mut BrauerTable, p: u32, b: i64) -> crate::Result<CounterexampleReport> {
    let pi = p as i64;
    let chi1 = InertialChar::trivial(p, 2);
    let chi2 = InertialChar::from_digits(p, &[pi - 1, b]);
    let (mu, mu_p) = counterexample_weights(p, b);
    let scan = enumerate_wss(&chi1, &chi2, 1);
    let witnesses = |w: &SerreWeight| -> Vec<i64> {
        scan.iter().filter(|(x, _)| x == w).flat_map(|(_, ps)| ps.iter().map(|prm| lcris_dim(1, prm))).collect()
    };
    let types: Vec<(i64, i64)> =
        table.types_containing(&mu)?.into_iter().map(|(a, b)| (a.scalar(), b.scalar())).collect();
    let e1 = InertialChar::from_digits(p, &[pi - 2, pi - 1]).scalar();
    let e2 = InertialChar::from_digits(p, &[pi - 1, b - 1]).scalar();
    let expected_type = (e1.min(e2), e1.max(e2));
    let mu_prime_in_type = table
        .decompose_induced(&InertialChar::new(p, 2, e1), &InertialChar::new(p, 2, e2))?
        .iter()
        .any(|(w, _)| *w == mu_p);
    Ok(CounterexampleReport {
        p,
        b,
        mu_lcris: witnesses(&mu),
        mu_prime_lcris: witnesses(&mu_p),
        types,
        expected_type,
        mu_prime_in_type,
    })
}

fn counterexample(opts: &VerifyOptions) -> Check {
    let limits = Limits { max_q: opts.limits.max_q.max(49), ..opts.limits };
    let mut cases = 0;
    for p in [5u32, 7] {
        let mut table = BrauerTable::new(p, 2, &limits).map_err(fail)?;
        for b in 1..=(p as i64 - 2) {
            let r = counterexample_report(&mut table, p, b).map_err(fail)?;
            ensure!(r.mu_lcris == vec![1], "p={p} b={b}: dim L_cris(μ) over witnesses = {:?}", r.mu_lcris);
            ensure!(r.mu_prime_lcris == vec![2], "p={p} b={b}: dim L_cris(μ') over witnesses = {:?}", r.mu_prime_lcris);
            ensure!(r.types == vec![r.expected_type], "p={p} b={b}: types {:?}, expected {:?}", r.types, r.expected_type);
            ensure!(r.mu_prime_in_type, "p={p} b={b}: μ' is not a constituent of the type");
            cases += 1;
        }
    }
    Ok(format!("{cases} (p, b) cases: dims (1, 2), one type each"))
}

fn ext_grid() -> Vec<(u32, u32)> {
    vec![(1, 1), (1, 2), (1, 3), (2, 1)]
}

fn ext_oracle(opts: &VerifyOptions) -> Check {
    let mut total = 0usize;
    for (f, ep) in ext_grid() {
        let params = Params::new(3, f, ep, 1).map_err(fail)?;
        let field = params.field();
        let same = all_modules(&params, field.one());
        let other = all_modules(&params, field.generator());
        let checked: std::result::Result<Vec<usize>, String> = same
            .par_iter()
            .map(|m| {
                let pm = Presentation::normalized(&params, m);
                let mut k = 0;
                // every N of equal norm, plus the N with the same (s, d) and a distinct norm
                for (n, n_other) in same.iter().zip(&other) {
                    for n in [n, n_other] {
                        let pn = Presentation::spread(&params, n);
                        let h = brute_hom_space(&params, &pm, &pn, &opts.limits).map_err(fail)?;
                        let closed = hom_exists(&params, m, n).is_some();
                        ensure!(h.is_nonzero() == closed, "hom mismatch for {m:?} → {n:?}: oracle dim {}", h.dim);
                        let rep = brute_ext_dim(&params, &pm, &pn, &opts.limits).map_err(fail)?;
                        let d = ext_dim(&params, m, n);
                        ensure!(rep.coker == d, "ext mismatch for {m:?}, {n:?}: oracle {}, closed form {d}", rep.coker);
                        let s: i64 = n.r().iter().sum();
                        ensure!(
                            rep.kernel as i64 == s + i64::from(closed),
                            "dim ker Υ = {} for {m:?}, {n:?}",
                            rep.kernel
                        );
                        k += 1;
                    }
                }
                Ok(k)
            })
            .collect();
        total += checked?.iter().sum::<usize>();
    }
    Ok(format!("{total} module pairs agree"))
}

/// Every generic (χ₁, χ₂) on inertia at the given (p, f, e').
pub fn generic_pairs(p: u32, f: u32, eprime: u32) -> Vec<GenericityData> {
    let modulus = (p as i64).pow(f) - 1;
    let band = p as i64 - 1 - 2 * eprime as i64;
    let mut out = Vec::new();
    if band < 0 {
        return out;
    }
    for s1 in 0..modulus {
        let chi1 = InertialChar::new(p, f, s1);
        for bs in type_indices(f as usize, band) {
            let q: Vec<i64> = bs.iter().map(|b| b + eprime as i64).collect();
            let chi2 = chi1.mul(&InertialChar::from_digits(p, &q));
            if let Ok(g) = genericity(&chi1, &chi2, eprime) {
                out.push(g);
            }
        }
    }
    out
}

fn partition_settings() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for p in [5u32, 7] {
        for f in [1u32, 2] {
            for ep in [1u32, 2] {
                if 2 * ep < p {
                    out.push((p, f, ep));
                }
            }
        }
    }
    out
}

fn check_partition(gen: &GenericityData) -> Check {
    let part = partition(gen).map_err(fail)?;
    let ep = gen.eprime as i64;
    let all_w = part.all_w();
    let distinct: BTreeSet<&SerreWeight> = all_w.iter().collect();
    ensure!(distinct.len() == all_w.len(), "W_a overlap for {gen:?}");
    for cell in &part.cells {
        ensure!(cell.w_a.len() == 1 << (gen.f as usize - cell.delta(ep)), "|W_{:?}| wrong for {gen:?}", cell.a);
        for (param, _) in &cell.w_a {
            ensure!(
                cell.a.iter().sum::<i64>() == param.d.iter().sum::<i64>(),
                "Σa ≠ Σd at {param:?} for {gen:?}"
            );
        }
    }
    let scan = enumerate_wss(&gen.chi1(), &gen.chi2(), gen.eprime);
    let exceptional = exceptional_weights(gen);
    let mut expected: BTreeSet<SerreWeight> = distinct.into_iter().cloned().collect();
    expected.extend(exceptional.iter().map(|(_, w)| w.clone()));
    let scanned: BTreeSet<SerreWeight> = scan.iter().map(|(w, _)| w.clone()).collect();
    ensure!(scanned == expected, "the scan finds {} weights, the partition {}", scanned.len(), expected.len());
    for (w, ps) in &scan {
        if !exceptional.iter().any(|(_, x)| x == w) {
            ensure!(ps.len() == 1, "{w:?} has {} witnesses", ps.len());
            ensure!(mu_of_jd(gen, &ps[0]).map_err(fail)? == *w, "witness of {w:?} does not reproduce it");
        }
    }
    Ok(String::new())
}

fn partition_grid() -> Check {
    let mut count = 0;
    for (p, f, ep) in partition_settings() {
        let gens = generic_pairs(p, f, ep);
        let res: std::result::Result<Vec<String>, String> = gens.par_iter().map(check_partition).collect();
        res?;
        count += gens.len();
    }
    Ok(format!("{count} generic pairs partitioned"))
}

fn lattice_for(params: &Params, gen: &GenericityData, a: &[i64]) -> crate::Result<LatticeSlots> {
    let tau = tau_of_a(gen, a)?;
    let field = params.field();
    let chi1 = GaloisChar::new(gen.chi1(), field.one());
    let chi2 = GaloisChar::new(gen.chi2(), field.one());
    l_space_for(params, &chi1, &chi2, &PrincipalSeriesType::new(tau.lambda, tau.lambda_prime))
}

fn lattice_law() -> Check {
    let mut count = 0;
    for ep in [1u32, 2] {
        let params = Params::new(5, 2, ep, 1).map_err(fail)?;
        for gen in generic_pairs(5, 2, ep) {
            let idx = type_indices(2, ep as i64);
            let slots: Vec<LatticeSlots> =
                idx.iter().map(|a| lattice_for(&params, &gen, a)).collect::<crate::Result<_>>().map_err(fail)?;
            for (a, l) in idx.iter().zip(&slots) {
                let want: i64 = a.iter().map(|x| ep as i64 - x).sum();
                ensure!(l.dim() as i64 == want, "dim L(τ_{a:?}) = {} ≠ {want} for {gen:?}", l.dim());
            }
            for (i, a) in idx.iter().enumerate() {
                for (j, b) in idx.iter().enumerate() {
                    let top: Vec<i64> = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
                    let k = idx.iter().position(|x| *x == top).expect("max stays in A");
                    ensure!(slots[i].intersect(&slots[j]) == slots[k], "max-law fails at {a:?}, {b:?} for {gen:?}");
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} generic pairs, all a and all pairs (a, a')"))
}

fn criterion5_b() -> Vec<Vec<i64>> {
    vec![vec![0, 0], vec![2, 2], vec![1, 1], vec![0, 2], vec![2, 1]]
}

fn jh_vs_brauer(opts: &VerifyOptions) -> Check {
    let p = 5u32;
    let mut table = BrauerTable::new(p, 2, &opts.limits).map_err(fail)?;
    let mut scalar_cases = 0;
    let mut cases = 0;
    for (k, b) in criterion5_b().into_iter().enumerate() {
        let c = if k % 2 == 0 { vec![0, 0] } else { vec![1, 3] };
        let chi1 = InertialChar::from_digits(p, &c);
        let q: Vec<i64> = b.iter().map(|x| x + 1).collect();
        let gen = genericity(&chi1, &chi1.mul(&InertialChar::from_digits(p, &q)), 1).map_err(fail)?;
        let part = partition(&gen).map_err(fail)?;
        for a in type_indices(2, 1) {
            let tau = tau_of_a(&gen, &a).map_err(fail)?;
            let jh: BTreeSet<SerreWeight> = jh_constituents(&gen, &a).map_err(fail)?.into_iter().collect();
            let induced = table.decompose_induced(&tau.lambda, &tau.lambda_prime).map_err(fail)?;
            ensure!(induced.iter().all(|(_, m)| *m == 1), "multiplicity above one at a={a:?}, b={b:?}");
            let brute: BTreeSet<SerreWeight> = induced.into_iter().map(|(w, _)| w).collect();
            if tau.scalar {
                let theta: BTreeSet<SerreWeight> = [det_weight(&tau.lambda)].into_iter().collect();
                ensure!(jh == theta, "scalar θ at a={a:?}, b={b:?}: {jh:?} vs {theta:?}");
                let wprime: BTreeSet<SerreWeight> =
                    part.cell(&a).expect("a in A").w_prime().into_iter().collect();
                ensure!(wprime.len() == 2, "W'_a has {} weights at a={a:?}, b={b:?}", wprime.len());
                ensure!(brute == wprime, "θ' at a={a:?}, b={b:?}: {brute:?} vs W'_a {wprime:?}");
                scalar_cases += 1;
            } else {
                ensure!(jh == brute, "a={a:?}, b={b:?}: formula {jh:?} vs oracle {brute:?}");
            }
            cases += 1;
        }
    }
    ensure!(scalar_cases == 2, "{scalar_cases} scalar cases seen, expected 2");
    Ok(format!("{cases} types agree, {scalar_cases} scalar"))
}

fn model_structure(opts: &VerifyOptions) -> Check {
    let params = Params::new(3, 2, 1, 1).map_err(fail)?;
    let field = params.field();
    let modulus = params.ekl();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut samples, mut minimal_checked, mut models_seen) = (0, 0, 0);
    while samples < 100 {
        let tau = PrincipalSeriesType::new(
            params.inertial(rng.random_range(0..modulus)),
            params.inertial(rng.random_range(0..modulus)),
        );
        let chi = if rng.random_range(0..3) == 0 {
            GaloisChar::trivial(field, 2)
        } else {
            let unr = field.exp(rng.random_range(0..field.order() as i64 - 1));
            GaloisChar::new(params.inertial(rng.random_range(0..modulus)), unr)
        };
        let models = models_of_type(&params, &tau, &chi).map_err(fail)?;
        if models.is_empty() {
            continue;
        }
        samples += 1;
        let brute = brute_models_of_type(&params, &tau, &chi).map_err(fail)?;
        let listed = module_set(models.iter().map(|m| m.module.clone()));
        ensure!(listed == module_set(brute), "models of type {tau:?}, {chi:?} differ from the scan");
        let (min, max) = extremal_models(&params, &tau, &chi).map_err(fail)?;
        let pmax = Presentation::normalized(&params, &max);
        for m in &models {
            let again = RankOneBreuil::with_norm(&params, m.module.r().to_vec(), m.module.norm(), m.module.c().to_vec())
                .map_err(fail)?;
            ensure!(again == m.module, "{:?} fails to revalidate", m.module);
            ensure!(generic_fibre(&params, &m.module).map_err(fail)? == chi, "{:?} has the wrong fibre", m.module);
            let pm = Presentation::spread(&params, &m.module);
            let h = brute_hom_space(&params, &pm, &pmax, &opts.limits).map_err(fail)?;
            ensure!(h.is_nonzero(), "no map {:?} → maximal {max:?}", m.module);
            for n in &models {
                let up = upper_bound_model(&params, &m.module, &n.module).map_err(fail)?;
                let gamma: Vec<i64> = (0..2).map(|i| m.module.alpha()[i].max(n.module.alpha()[i])).collect();
                ensure!(up.alpha() == gamma, "upper bound γ = {:?}, expected {gamma:?}", up.alpha());
                let pu = Presentation::normalized(&params, &up);
                for src in [&m.module, &n.module] {
                    let h = brute_hom_space(&params, &Presentation::normalized(&params, src), &pu, &opts.limits)
                        .map_err(fail)?;
                    ensure!(h.is_nonzero(), "no map {src:?} → upper bound {up:?}");
                }
            }
            models_seen += 1;
        }
        let (nu, nu_p) = (tau.nu(), tau.nu_prime());
        let hyp = chi.is_trivial(field) && (0..2).all(|i| nu_p[i] >= 1 && nu[i] <= nu_p[i]);
        if hyp {
            ensure!(min == minimal_trivial_model(&params, &tau).map_err(fail)?, "minimal model differs for {tau:?}");
            minimal_checked += 1;
        }
    }
    ensure!(minimal_checked > 0, "no sample met the minimal-model hypotheses");
    Ok(format!("{samples} samples, {models_seen} models, {minimal_checked} minimal-model checks"))
}

fn lcris_vs_host() -> Check {
    let mut count = 0;
    for (p, f, ep) in partition_settings() {
        for gen in generic_pairs(p, f, ep) {
            let part = partition(&gen).map_err(fail)?;
            for cell in &part.cells {
                let want: i64 = cell.a.iter().map(|x| ep as i64 - x).sum();
                for (param, w) in cell.w_a.iter().chain(&cell.extra) {
                    ensure!(host_index(param) == cell.a, "{w:?} hosted at {:?}, not {:?}", host_index(param), cell.a);
                    let got = lcris_dim(ep, param);
                    ensure!(got == want, "dim L_cris({w:?}) = {got} ≠ {want} for {gen:?}");
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} weights"))
}

fn shapes() -> Check {
    let mut count = 0;
    for (p, f, ep) in [(5u32, 2u32, 1u32), (7, 1, 2), (7, 2, 1)] {
        for gen in generic_pairs(p, f, ep).into_iter().step_by(7) {
            let idx = type_indices(f as usize, ep as i64);
            let sets: Vec<BTreeSet<SerreWeight>> = idx
                .iter()
                .map(|a| wexpl_shape(&gen, &ShapeSpec::AMax(a.clone())).map(|v| v.into_iter().collect()))
                .collect::<crate::Result<_>>()
                .map_err(fail)?;
            for (i, a) in idx.iter().enumerate() {
                for (j, b) in idx.iter().enumerate() {
                    if index_leq(a, b) {
                        ensure!(sets[i].is_subset(&sets[j]), "shape not monotone at {a:?} ≤ {b:?}");
                    }
                }
            }
            if gen.b.iter().all(|&x| x == 0) {
                let tr = wexpl_shape(&gen, &ShapeSpec::TresRamifiee).map_err(fail)?;
                let want = SerreWeight::new(p, gen.c.clone(), vec![p as i64 - 1; f as usize]);
                ensure!(tr == vec![want.clone()], "très ramifiée gives {tr:?}, expected {want:?}");
            } else {
                ensure!(wexpl_shape(&gen, &ShapeSpec::TresRamifiee).is_err(), "très ramifiée accepted with b = {:?}", gen.b);
            }
            count += 1;
        }
    }
    Ok(format!("{count} generic pairs"))
}

/// Weight parameters in a partition cell, for display.
pub fn cell_params(gen: &GenericityData, a: &[i64]) -> crate::Result<Vec<WeightParam>> {
    Ok(partition(gen)?.cell(a).map(|c| c.w_a.iter().map(|(p, _)| p.clone()).collect()).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_pair_counts() {
        // (q - 1) choices of χ₁ times (p - 2e')^f choices of b
        assert_eq!(generic_pairs(5, 2, 1).len(), 24 * 9);
        assert_eq!(generic_pairs(7, 1, 2).len(), 6 * 3);
        assert!(generic_pairs(3, 1, 2).is_empty());
    }

    #[test]
    fn quick_criteria() {
        for id in [7, 8] {
            let r = run_criterion(id, &VerifyOptions::default());
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
