use serde_json::{json, Value};
use serre_core::breuil::{
    ext_basis, ext_dim, extremal_models, hom_exists, l_space_for, models_of_type, LatticeSlots, Params,
    PrincipalSeriesType,
};
use serre_core::chars::InertialChar;
use serre_core::oracle::{brute_ext_dim, brute_hom_space, BrauerTable, Limits, Presentation};
use serre_core::verify::{counterexample_report, counterexample_weights, run_criterion, VerifyOptions, CRITERIA};
use serre_core::weights::{
    enumerate_wss, jh_constituents, lcris_dim, mu_of_jd, partition, tau_of_a, type_indices, wexpl_shape,
    GenericityData, SerreWeight, WeightParam,
};
use serre_core::Error;

use crate::report::{index_set, tuple, Report, Table};
use crate::scenario::Scenario;
use crate::CliError;

fn weight(w: &SerreWeight) -> String {
    format!("m{} n{}", tuple(&w.m_digits()), tuple(w.n()))
}

fn weight_list(ws: &[SerreWeight]) -> String {
    ws.iter().map(weight).collect::<Vec<_>>().join("; ")
}

fn param(p: &WeightParam) -> String {
    let star = if p.exceptional { "'" } else { "" };
    format!("J={} d={}{star}", index_set(&p.j_indices()), tuple(&p.d))
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn indices(s: &Scenario, f: usize, eprime: i64) -> Vec<Vec<i64>> {
    match &s.a {
        Some(a) => vec![a.clone()],
        None => type_indices(f, eprime),
    }
}

fn digits(c: &InertialChar) -> String {
    tuple(&c.digits())
}

pub fn weights(s: &Scenario) -> Result<Report, CliError> {
    let params = s.params()?;
    let (chi1, chi2) = s.inertial_pair(&params)?;
    let ep = params.eprime();
    let scan = enumerate_wss(&chi1, &chi2, ep);
    let mut table = Table::new("explicit weights", &["m", "n", "dim", "witnesses", "dim L_cris", "provenance"]);
    let mut rows = Vec::new();
    for (w, ps) in &scan {
        let dims: Vec<i64> = ps.iter().map(|p| lcris_dim(ep, p)).collect();
        table.push(vec![
            tuple(&w.m_digits()),
            tuple(w.n()),
            w.dim().to_string(),
            ps.iter().map(param).collect::<Vec<_>>().join(" "),
            tuple(&dims),
            "explicit-weight-congruences".into(),
        ]);
        rows.push(json!({
            "weight": w.to_json(),
            "witnesses": ps.iter().map(WeightParam::to_json).collect::<Vec<_>>(),
            "lcris_dim": dims,
        }));
    }
    let mut doc = json!({ "weights": rows });
    let mut tables = vec![table];
    if s.weight_param().is_some() || s.shape().is_some() {
        let gen = s.generic(&params)?;
        if let Some(p) = s.weight_param() {
            let w = mu_of_jd(&gen, &p)?;
            let dim = lcris_dim(ep, &p);
            let mut t = Table::new("weight of (J, d)", &["J", "d", "weight", "dim L_cris", "provenance"]);
            t.push(vec![index_set(&p.j_indices()), tuple(&p.d), weight(&w), dim.to_string(), "weight-of-J-d".into()]);
            doc["mu_of_jd"] = json!({ "param": p.to_json(), "weight": w.to_json(), "lcris_dim": dim });
            tables.push(t);
        }
        if let Some(spec) = s.shape() {
            let ws = wexpl_shape(&gen, &spec)?;
            let mut t = Table::new("predicted shape", &["m", "n", "provenance"]);
            for w in &ws {
                t.push(vec![tuple(&w.m_digits()), tuple(w.n()), "weight-shape".into()]);
            }
            doc["shape"] = json!(ws.iter().map(SerreWeight::to_json).collect::<Vec<_>>());
            tables.push(t);
        }
    }
    Ok(Report { command: "weights", json: doc, tables, verified: true })
}

pub fn partition_cmd(s: &Scenario) -> Result<Report, CliError> {
    let params = s.params()?;
    let gen = s.generic(&params)?;
    let part = partition(&gen)?;
    let (f, ep) = (params.fu(), params.eprime() as i64);
    let mut table =
        Table::new("partition", &["a", "delta", "|W_a|", "2^(f-delta)", "check", "W_a", "W'_a extra", "provenance"]);
    let mut verified = true;
    for cell in &part.cells {
        let delta = cell.delta(ep);
        let want = 1usize << (f - delta);
        let ok = cell.w_a.len() == want;
        verified &= ok;
        let ws: Vec<SerreWeight> = cell.w_a.iter().map(|(_, w)| w.clone()).collect();
        let extra: Vec<SerreWeight> = cell.extra.iter().map(|(_, w)| w.clone()).collect();
        table.push(vec![
            tuple(&cell.a),
            delta.to_string(),
            cell.w_a.len().to_string(),
            want.to_string(),
            if ok { "ok" } else { "FAIL" }.into(),
            weight_list(&ws),
            weight_list(&extra),
            "partition-cardinality".into(),
        ]);
    }
    let cells: Vec<Value> = part.cells.iter().map(|c| json!(c.to_json())).collect();
    Ok(Report {
        command: "partition",
        json: json!({ "b": gen.b, "c": gen.c, "cells": cells }),
        tables: vec![table],
        verified,
    })
}

pub fn types(s: &Scenario) -> Result<Report, CliError> {
    let params = s.params()?;
    let gen = s.generic(&params)?;
    let mut table = Table::new("types", &["a", "lambda", "lambda'", "scalar", "constituents", "provenance"]);
    let mut rows = Vec::new();
    for a in indices(s, params.fu(), params.eprime() as i64) {
        let tau = tau_of_a(&gen, &a)?;
        let jh = jh_constituents(&gen, &a)?;
        table.push(vec![
            tuple(&a),
            digits(&tau.lambda),
            digits(&tau.lambda_prime),
            yes(tau.scalar),
            weight_list(&jh),
            "type-constituents".into(),
        ]);
        rows.push(json!({
            "a": a,
            "lambda": tau.lambda.digits(),
            "lambda_prime": tau.lambda_prime.digits(),
            "scalar": tau.scalar,
            "constituents": jh.iter().map(SerreWeight::to_json).collect::<Vec<_>>(),
        }));
    }
    Ok(Report { command: "types", json: json!({ "types": rows }), tables: vec![table], verified: true })
}

/// Oracle results are optional: a size limit skips them.
fn within_limits<T>(r: serre_core::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::SizeLimit(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn opt(v: Option<impl ToString>) -> String {
    v.map_or_else(|| "skipped".into(), |x| x.to_string())
}

pub fn ext(s: &Scenario, limits: &Limits) -> Result<Report, CliError> {
    let params = s.params()?;
    let (m, n) = s.modules(&params)?;
    let basis = ext_basis(&params, &m, &n);
    let dim = ext_dim(&params, &m, &n);
    let oracle = within_limits(brute_ext_dim(
        &params,
        &Presentation::normalized(&params, &m),
        &Presentation::spread(&params, &n),
        limits,
    ))?;
    let verified = oracle.as_ref().is_none_or(|o| o.coker == dim);
    let mut table = Table::new("ext", &["component", "degrees", "provenance"]);
    for (i, slots) in basis.slots.iter().enumerate() {
        table.push(vec![i.to_string(), tuple(slots), "ext-slot-count".into()]);
    }
    if let Some(d) = basis.delta_slot {
        table.push(vec!["hom".into(), tuple(&[d]), "ext-slot-count".into()]);
    }
    let mut summary = Table::new("dimension", &["closed form", "oracle", "provenance"]);
    summary.push(vec![dim.to_string(), opt(oracle.as_ref().map(|o| o.coker)), "ext-slot-count".into()]);
    Ok(Report {
        command: "ext",
        json: json!({ "dim": dim, "basis": basis, "oracle": oracle }),
        tables: vec![table, summary],
        verified,
    })
}

pub fn hom(s: &Scenario, limits: &Limits) -> Result<Report, CliError> {
    let params = s.params()?;
    let (m, n) = s.modules(&params)?;
    let z = hom_exists(&params, &m, &n);
    let oracle = within_limits(brute_hom_space(
        &params,
        &Presentation::normalized(&params, &m),
        &Presentation::spread(&params, &n),
        limits,
    ))?;
    let oracle_dim = oracle.as_ref().map(|h| h.dim);
    let verified = oracle.as_ref().is_none_or(|h| h.is_nonzero() == z.is_some());
    let mut table = Table::new("hom", &["exists", "z", "alpha(M)", "alpha(N)", "oracle dim", "provenance"]);
    table.push(vec![
        yes(z.is_some()),
        z.as_deref().map_or_else(|| "-".into(), tuple),
        tuple(m.alpha()),
        tuple(n.alpha()),
        opt(oracle_dim),
        "hom-criterion".into(),
    ]);
    Ok(Report {
        command: "hom",
        json: json!({ "exists": z.is_some(), "z": z, "oracle_dim": oracle_dim }),
        tables: vec![table],
        verified,
    })
}

pub fn models(s: &Scenario) -> Result<Report, CliError> {
    let params = s.params()?;
    let tau = s.tau()?;
    let chi = s.chi(&params)?;
    let models = models_of_type(&params, &tau, &chi)?;
    let extremal = if models.is_empty() { None } else { Some(extremal_models(&params, &tau, &chi)?) };
    let mut table = Table::new("models", &["J", "x", "r", "c", "alpha", "role", "provenance"]);
    let mut rows = Vec::new();
    for m in &models {
        let j: Vec<usize> = (0..params.fu()).filter(|&i| m.j[i]).collect();
        let role = match &extremal {
            Some((lo, hi)) if *lo == m.module && *hi == m.module => "min, max",
            Some((lo, _)) if *lo == m.module => "min",
            Some((_, hi)) if *hi == m.module => "max",
            _ => "",
        };
        table.push(vec![
            index_set(&j),
            tuple(&m.x),
            tuple(m.module.r()),
            tuple(m.module.c()),
            tuple(m.module.alpha()),
            role.into(),
            "model-enumeration".into(),
        ]);
        rows.push(json!({ "J": j, "x": m.x, "module": m.module.to_json(&params) }));
    }
    let ext_json = extremal.as_ref().map(|(lo, hi)| json!({ "min": lo.to_json(&params), "max": hi.to_json(&params) }));
    Ok(Report {
        command: "models",
        json: json!({ "models": rows, "extremal": ext_json }),
        tables: vec![table],
        verified: true,
    })
}

fn lattice_slots(params: &Params, s: &Scenario, gen: &GenericityData, a: &[i64]) -> Result<LatticeSlots, CliError> {
    let tau = tau_of_a(gen, a)?;
    let (chi1, chi2) = (s.chi1(params)?, s.chi2(params)?);
    Ok(l_space_for(params, &chi1, &chi2, &PrincipalSeriesType::new(tau.lambda, tau.lambda_prime))?)
}

pub fn lattice(s: &Scenario) -> Result<Report, CliError> {
    let params = s.params()?;
    let gen = s.generic(&params)?;
    let ep = params.eprime() as i64;
    let idx = type_indices(params.fu(), ep);
    let slots: Vec<LatticeSlots> =
        idx.iter().map(|a| lattice_slots(&params, s, &gen, a)).collect::<Result<_, _>>()?;
    let mut verified = true;
    let mut dims = Table::new("dim L(chi1, chi2, tau_a)", &["a", "dim", "sum(e'-a_i)", "check", "provenance"]);
    let mut dim_rows = Vec::new();
    for (a, l) in idx.iter().zip(&slots) {
        if s.a.as_ref().is_some_and(|x| x != a) {
            continue;
        }
        let want: i64 = a.iter().map(|x| ep - x).sum();
        let ok = l.dim() as i64 == want;
        verified &= ok;
        dims.push(vec![
            tuple(a),
            l.dim().to_string(),
            want.to_string(),
            if ok { "ok" } else { "FAIL" }.into(),
            "lattice-dimension".into(),
        ]);
        dim_rows.push(json!({ "a": a, "dim": l.dim(), "expected": want, "slots": l }));
    }
    let mut law = Table::new("intersections", &["a", "a'", "max", "dim meet", "dim L(max)", "check", "provenance"]);
    let mut law_rows = Vec::new();
    for (i, a) in idx.iter().enumerate() {
        for (j, b) in idx.iter().enumerate().skip(i + 1) {
            let top: Vec<i64> = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
            let k = idx.iter().position(|x| *x == top).expect("A is closed under max");
            let meet = slots[i].intersect(&slots[j]);
            let ok = meet == slots[k];
            verified &= ok;
            law.push(vec![
                tuple(a),
                tuple(b),
                tuple(&top),
                meet.dim().to_string(),
                slots[k].dim().to_string(),
                if ok { "ok" } else { "FAIL" }.into(),
                "lattice-max-law".into(),
            ]);
            law_rows.push(json!({ "a": a, "a_prime": b, "max": top, "meet_dim": meet.dim(), "holds": ok }));
        }
    }
    Ok(Report {
        command: "lattice",
        json: json!({ "dims": dim_rows, "max_law": law_rows }),
        tables: vec![dims, law],
        verified,
    })
}

pub fn counterexample(p: u32, b: i64, limits: &Limits) -> Result<Report, CliError> {
    if p < 5 || !(1..=p as i64 - 2).contains(&b) {
        return Err(Error::PreconditionViolation(format!("need p >= 5 and b in [1, p - 2], got p = {p}, b = {b}")).into());
    }
    let mut table = BrauerTable::new(p, 2, limits)?;
    let r = counterexample_report(&mut table, p, b)?;
    let (mu, mu_p) = counterexample_weights(p, b);
    let verified = r.mu_lcris == vec![1]
        && r.mu_prime_lcris == vec![2]
        && r.types == vec![r.expected_type]
        && r.mu_prime_in_type;
    let mut dims = Table::new("weights", &["weight", "m", "n", "dim L_cris", "provenance"]);
    dims.push(vec!["mu".into(), tuple(&mu.m_digits()), tuple(mu.n()), tuple(&r.mu_lcris), "lcris-dimension".into()]);
    dims.push(vec!["mu'".into(), tuple(&mu_p.m_digits()), tuple(mu_p.n()), tuple(&r.mu_prime_lcris), "lcris-dimension".into()]);
    let mut types = Table::new("principal series types containing mu", &["lambda", "lambda'", "expected", "contains mu'"]);
    let inertial = |x: i64| digits(&InertialChar::new(p, 2, x));
    for (x, y) in &r.types {
        types.push(vec![inertial(*x), inertial(*y), yes((*x, *y) == r.expected_type), yes(r.mu_prime_in_type)]);
    }
    Ok(Report { command: "counterexample", json: json!(r), tables: vec![dims, types], verified })
}

pub fn verify(ids: &[u8], opts: &VerifyOptions) -> Result<Report, CliError> {
    let ids: Vec<u8> = if ids.is_empty() { CRITERIA.iter().map(|(k, _)| *k).collect() } else { ids.to_vec() };
    if let Some(bad) = ids.iter().find(|k| !CRITERIA.iter().any(|(c, _)| c == *k)) {
        return Err(Error::PreconditionViolation(format!("no acceptance criterion {bad}")).into());
    }
    let results: Vec<_> = ids.iter().map(|&k| run_criterion(k, opts)).collect();
    let mut table = Table::new("acceptance", &["criterion", "name", "result", "detail"]);
    for r in &results {
        table.push(vec![r.id.to_string(), r.name.into(), if r.passed { "pass" } else { "FAIL" }.into(), r.detail.clone()]);
    }
    let verified = results.iter().all(|r| r.passed);
    Ok(Report { command: "verify", json: json!({ "seed": opts.seed, "criteria": results }), tables: vec![table], verified })
}
