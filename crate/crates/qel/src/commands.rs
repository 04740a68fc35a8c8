//! Engine calls behind each command, each producing a [`Report`].

use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use qel_core::catalog::{Catalog, VarietyModel};
use qel_core::citation::{self, Citation};
use qel_core::classify::{self, Outcome, Overall};
use qel_core::cremona::{self, Branch};
use qel_core::invariants::LqelInvariants;
use qel_core::probe::{self, Basis, Check, ProbeConfig, Relation, Status};
use qel_core::tower::{self, Rational};
use qel_core::yx;

use crate::model_text::{parse_model, serialize_model, ModelTextError};
use crate::report::{Report, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    ModelText { path: String, source: ModelTextError },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Engine(#[from] qel_core::Error),
}

impl CommandError {
    /// Exit status: computed negative outcomes are 1, input problems 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Engine(qel_core::Error::NoLinesDetected) => 1,
            _ => 2,
        }
    }
}

pub type CommandResult = Result<Report, CommandError>;

/// A catalog name or family such as `segre(1,4)`, or a path to a model file.
pub fn resolve_model(catalog: &Catalog, name: &str) -> Result<VarietyModel, CommandError> {
    let path = Path::new(name);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|source| CommandError::Io { path: name.to_string(), source })?;
        return parse_model(&text).map_err(|source| CommandError::ModelText { path: name.to_string(), source });
    }
    Ok(catalog.resolve(name)?)
}

fn anchors(m: &VarietyModel) -> Vec<Citation> {
    if m.notes.is_empty() {
        vec![citation::COMPUTED]
    } else {
        m.notes.clone()
    }
}

fn seeded(report: &mut Report, cfg: &ProbeConfig) {
    report.seed = Some(cfg.seed);
    report.input("trials", cfg.trials);
    if let Some(p) = cfg.prime {
        report.input("prime", p);
    }
}

fn rational(r: &Rational) -> Value {
    if r.is_integer() {
        json!(i64::try_from(*r.numer()).unwrap_or(i64::MAX))
    } else {
        json!(r.to_string())
    }
}

fn invariants_value(inv: &LqelInvariants) -> Value {
    json!({
        "n": inv.n,
        "N": inv.ambient,
        "delta": inv.delta,
        "secant_dim": inv.secant_dim,
    })
}

pub fn catalog_list(catalog: &Catalog) -> CommandResult {
    let mut r = Report::new("catalog list");
    for m in catalog.entries() {
        let inv = m.claimed.as_ref().map_or(Value::Null, invariants_value);
        let value = json!({
            "claimed": inv,
            "parametrized": m.map.is_some(),
            "yx_link": m.yx_link,
        });
        r.claim(m.name.clone(), value, &anchors(m));
    }
    Ok(r)
}

pub fn catalog_show(catalog: &Catalog, name: &str) -> CommandResult {
    let m = resolve_model(catalog, name)?;
    let mut r = Report::new("catalog show");
    r.input("model", m.name.clone());
    let src = anchors(&m);
    if let Some(a) = m.params() {
        r.claim("params", a, &src);
    }
    if let Some(inv) = &m.claimed {
        r.claim("n", inv.n, &src);
        if let Some(a) = inv.ambient {
            r.claim("N", a, &src);
        }
        r.claim("delta", inv.delta, &src);
        r.claim("secant_dim", inv.secant_dim, &[citation::SECANT_DEFECT]);
        r.claim("tangential_image_dim", inv.tangential_image_dim, &[citation::TANGENTIAL_IMAGE]);
        if let Some(v) = inv.r_x {
            r.claim("r_x", v, &[citation::R_X]);
        }
        if let Some(v) = inv.conic_degree {
            r.claim("conic_degree", v, &[citation::CONIC_DEGREE]);
        }
        if let Some(v) = inv.conic_family_dim {
            r.claim("conic_family_dim", v, &[citation::CONIC_FAMILY]);
        }
        if let Some(v) = inv.conics_through_point {
            r.claim("conics_through_point", v, &[citation::CONICS_THROUGH_POINT]);
        }
        if let Some(v) = inv.index {
            r.claim("index", v, &[citation::FANO_INDEX]);
        }
        if let Some(s) = inv.line_splitting {
            r.claim("line_splitting", json!({"2": 1, "1": s.ones, "0": s.zeros}), &[citation::LINE_SPLITTING]);
        }
        if let Some(v) = inv.line_family_dim {
            r.claim("line_family_dim", v, &[citation::LINE_SPLITTING]);
        }
        if let Some((d, t)) = inv.yx {
            r.claim("yx", json!({"dim": d, "delta": t}), &[citation::YX_MODEL]);
        }
    }
    if let Some(q) = m.claimed_quadrics {
        r.claim("quadrics", q, &src);
    }
    if let Some(l) = &m.yx_link {
        r.claim("yx_link", l.clone(), &[citation::YX_MODEL]);
    }
    if m.map.is_none() {
        r.warn(format!("{} is invariants-only: no parametrization", m.name));
    }
    Ok(r)
}

pub fn catalog_export(catalog: &Catalog, name: &str) -> Result<String, CommandError> {
    let m = resolve_model(catalog, name)?;
    serialize_model(&m).ok_or_else(|| CommandError::Engine(qel_core::Error::NoParametrization(m.name.clone())))
}

fn check_value(c: &Check) -> Value {
    json!({
        "relation": match c.relation { Relation::Equal => "=", Relation::AtMost => "<=" },
        "basis": match c.basis { Basis::Claimed => "claimed", Basis::Theorem => "theorem" },
        "expected": c.expected,
        "computed": c.computed,
        "status": match c.status { Status::Match => "match", Status::Mismatch => "mismatch", Status::Unavailable => "unavailable" },
    })
}

fn push_checks(r: &mut Report, prefix: &str, checks: &[Check]) {
    for c in checks {
        r.claim(format!("{prefix}check.{}", c.field), check_value(c), &[c.citation]);
        if c.status != Status::Match {
            r.downgrade(Verdict::Mismatch);
        }
    }
}

fn result_value<T: Into<Value> + Clone>(v: &qel_core::Result<T>) -> Value {
    match v {
        Ok(x) => x.clone().into(),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Geometry and claim checks for one model; `catalog` supplies link targets.
fn verify_into(
    r: &mut Report,
    catalog: &Catalog,
    m: &VarietyModel,
    cfg: &ProbeConfig,
    prefix: &str,
) -> Result<(), CommandError> {
    let mut link_base = None;
    if m.map.is_some() {
        let g = probe::verify_model(m, cfg)?;
        r.claim(format!("{prefix}n"), result_value(&g.n), &[citation::COMPUTED]);
        r.claim(format!("{prefix}N"), g.ambient, &[citation::COMPUTED]);
        r.claim(format!("{prefix}secant_dim"), result_value(&g.secant_dim), &[citation::TERRACINI]);
        r.claim(format!("{prefix}delta"), result_value(&g.delta), &[citation::SECANT_DEFECT]);
        r.claim(format!("{prefix}second_form_dim"), result_value(&g.second_form_dim), &[citation::OSCULATING_RANK]);
        r.claim(format!("{prefix}quadrics"), result_value(&g.quadrics), &[citation::QUADRIC_SPACE]);
        push_checks(r, prefix, &g.checks);
        for (field, e) in g.errors() {
            r.warn(format!("{}{field}: {e}", prefix));
            r.downgrade(Verdict::Mismatch);
        }
        if let (Ok(n), Ok(d)) = (&g.n, &g.delta) {
            link_base = Some((*n, *d));
        }
    } else {
        r.warn(format!("{} is invariants-only; only its tower link is checked", m.name));
    }
    if let Some(link) = &m.yx_link {
        match catalog.get(link) {
            Some(child) => {
                let computed = link_base.filter(|(_, d)| *d >= 3);
                match probe::tower_link_checks(m, child, computed) {
                    Ok(checks) => {
                        r.claim(format!("{prefix}yx_link"), link.clone(), &[citation::YX_MODEL]);
                        push_checks(r, prefix, &checks);
                    }
                    Err(e) => r.warn(format!("{prefix}yx_link: {e}")),
                }
            }
            None => r.warn(format!("{prefix}yx_link `{link}` is not in the catalog")),
        }
    }
    Ok(())
}

pub fn verify(catalog: &Catalog, target: &str, cfg: &ProbeConfig) -> CommandResult {
    let mut r = Report::new("verify");
    r.input("model", target);
    seeded(&mut r, cfg);
    if target == "all" {
        let parts: Vec<Result<Report, CommandError>> = catalog
            .entries()
            .par_iter()
            .map(|m| {
                let mut part = Report::new("verify");
                verify_into(&mut part, catalog, m, cfg, &format!("{}.", m.name))?;
                Ok(part)
            })
            .collect();
        for part in parts {
            let part = part?;
            r.results.extend(part.results);
            r.warnings.extend(part.warnings);
            for c in part.citations {
                if let Err(pos) = r.citations.binary_search(&c) {
                    r.citations.insert(pos, c);
                }
            }
            r.downgrade(part.verdict);
        }
    } else {
        let m = resolve_model(catalog, target)?;
        verify_into(&mut r, catalog, &m, cfg, "")?;
    }
    Ok(r)
}

pub fn defect(catalog: &Catalog, name: &str, cfg: &ProbeConfig) -> CommandResult {
    let m = resolve_model(catalog, name)?;
    let mut r = Report::new("defect");
    r.input("model", m.name.clone());
    seeded(&mut r, cfg);
    let n = probe::variety_dim(&m, cfg)?;
    let s = probe::secant_dim(&m, cfg)?;
    r.claim("n", n, &[citation::COMPUTED]);
    r.claim("secant_dim", s, &[citation::TERRACINI]);
    r.claim("delta", 2 * i64::from(n) + 1 - i64::from(s), &[citation::SECANT_DEFECT]);
    Ok(r)
}

pub fn iiform(catalog: &Catalog, name: &str, cfg: &ProbeConfig) -> CommandResult {
    let m = resolve_model(catalog, name)?;
    let mut r = Report::new("iiform");
    r.input("model", m.name.clone());
    seeded(&mut r, cfg);
    let n = i64::from(probe::variety_dim(&m, cfg)?);
    let osc = i64::from(probe::osculating_dim(&m, cfg)?);
    let delta = 2 * n + 1 - i64::from(probe::secant_dim(&m, cfg)?);
    let ambient = m.output_count().map_or(0, |c| c as i64 - 1);
    let ii = osc - n - 1;
    r.claim("n", n, &[citation::COMPUTED]);
    r.claim("osculating_dim", osc, &[citation::OSCULATING_RANK]);
    r.claim("second_form_dim", ii, &[citation::OSCULATING_RANK]);
    if delta >= 1 {
        r.claim("expected", ambient - n - 1, &[citation::SECOND_FORM]);
        if ii != ambient - n - 1 {
            r.downgrade(Verdict::Mismatch);
        }
    }
    Ok(r)
}

fn quadric_text(monomials: &[(usize, usize)], coeffs: &[i64]) -> String {
    let mut s = String::new();
    for (&(i, j), &c) in monomials.iter().zip(coeffs).filter(|(_, c)| **c != 0) {
        let mono = if i == j { format!("z{i}^2") } else { format!("z{i}*z{j}") };
        let sign = if c < 0 { "-" } else { "+" };
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            s.push_str(&format!("{}*", c.abs()));
        }
        s.push_str(&mono);
    }
    s
}

pub fn quadrics(catalog: &Catalog, name: &str, cfg: &ProbeConfig) -> CommandResult {
    let m = resolve_model(catalog, name)?;
    let mut r = Report::new("quadrics");
    r.input("model", m.name.clone());
    seeded(&mut r, cfg);
    let space = probe::quadric_space(&m, cfg)?;
    r.claim("h0_quadrics", space.dim(), &[citation::QUADRIC_SPACE]);
    match space.integer_basis() {
        Some(basis) => {
            let texts: Vec<String> = basis.iter().map(|q| quadric_text(&space.monomials, q)).collect();
            r.claim("basis", texts, &[citation::COMPUTED]);
        }
        None => r.warn("quadric basis does not lift to small integers; basis omitted"),
    }
    Ok(r)
}

pub fn yx_dim(catalog: &Catalog, name: &str, primes: &[u64], cfg: &ProbeConfig) -> CommandResult {
    let m = resolve_model(catalog, name)?;
    let mut r = Report::new("yx-dim");
    r.input("model", m.name.clone()).input("primes", primes.to_vec());
    seeded(&mut r, cfg);
    let e = yx::yx_dim_estimate(&m, cfg, primes)?;
    r.claim("n", e.n, &[citation::COMPUTED]);
    r.claim("quadrics", e.quadrics, &[citation::QUADRIC_SPACE]);
    let counts: Vec<Value> = e.counts.iter().map(|(q, c)| json!({"q": q, "count": c})).collect();
    r.claim("counts", counts, &[citation::COMPUTED]);
    r.claim("estimate", e.estimate, &[citation::YX_MODEL]);
    r.warn("HEURISTIC: point-count slope, not a proof");
    Ok(r)
}

/// Catalog models with exactly these invariants that carry a parametrization.
fn geometric_match(catalog: &Catalog, n: i64, delta: i64, ambient: i64) -> Option<&VarietyModel> {
    catalog.entries().iter().find(|m| {
        m.map.is_some()
            && m.claimed.as_ref().is_some_and(|c| {
                i64::from(c.n) == n && i64::from(c.delta) == delta && c.ambient.map(i64::from) == Some(ambient)
            })
    })
}

pub fn tower(catalog: &Catalog, n: u32, delta: u32, model: Option<&str>, cfg: &ProbeConfig) -> CommandResult {
    let mut r = Report::new("tower");
    if let Some(name) = model {
        r.input("model", name);
    }
    r.input("n", n).input("delta", delta);
    seeded(&mut r, cfg);
    let t = tower::tower(n, delta)?;
    r.claim("r_x", t.r_x, &[citation::R_X]);
    let mut chain = Vec::new();
    for level in &t.levels {
        let key = format!("X^{}", level.k);
        r.claim(
            key.clone(),
            json!({
                "dim": rational(&level.dim),
                "delta": level.delta,
                "ambient": rational(&level.ambient),
                "codim": rational(&level.codim),
                "integral": level.integral,
                "terminal": level.terminal,
                "recursive_agrees": level.recursive_agrees,
            }),
            &[citation::TOWER, citation::YX_MODEL],
        );
        chain.push(format!("({},{},P^{})", level.dim, level.delta, level.ambient));
        if !level.integral {
            r.downgrade(Verdict::Infeasible);
            continue;
        }
        let (dim, amb) = (rational_int(&level.dim), rational_int(&level.ambient));
        if let Some(m) = geometric_match(catalog, dim, level.delta, amb) {
            let g =
                (probe::variety_dim(m, cfg)?, probe::secant_defect(m, cfg)?, m.output_count().unwrap_or(0) as i64 - 1);
            let agrees = i64::from(g.0) == dim && g.1 == level.delta && g.2 == amb;
            r.claim(
                format!("{key}.geometric"),
                json!({"model": m.name, "n": g.0, "delta": g.1, "N": g.2, "status": if agrees { "match" } else { "mismatch" }}),
                &[citation::TERRACINI, citation::SECANT_DEFECT],
            );
            if !agrees {
                r.downgrade(Verdict::Mismatch);
            }
        }
    }
    r.claim("chain", chain.join(" -> "), &[citation::TOWER]);
    let w = tower::divisibility_check(n.into(), delta.into())?;
    r.claim(
        "divisibility",
        json!({"r_x": w.r_x, "n_minus_delta": w.difference, "remainder": w.remainder, "passes": w.passes}),
        &[citation::DIVISIBILITY],
    );
    if !w.passes {
        r.downgrade(Verdict::Infeasible);
    }
    if t.levels.last().is_some_and(|l| l.terminal) {
        r.warn("the last level has type below 3; descent stops there");
    }
    Ok(r)
}

fn rational_int(r: &Rational) -> i64 {
    i64::try_from(r.to_integer()).unwrap_or(i64::MAX)
}

pub fn tower_of_model(catalog: &Catalog, name: &str, cfg: &ProbeConfig) -> CommandResult {
    let m = resolve_model(catalog, name)?;
    let inv = m
        .claimed
        .as_ref()
        .ok_or_else(|| CommandError::Input(format!("`{}` has no claimed invariants; pass --n and --delta", m.name)))?;
    tower(catalog, inv.n, inv.delta, Some(&m.name), cfg)
}

fn outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::NotApplicable => "n/a",
    }
}

pub fn admissible(n: u32, delta: u32, ambient: Option<u32>) -> CommandResult {
    let mut r = Report::new("admissible");
    r.input("n", n).input("delta", delta);
    if let Some(a) = ambient {
        r.input("ambient", a);
    }
    let v = classify::admissibility(n, delta, ambient)?;
    for rule in &v.rules {
        r.claim(
            format!("rule.{}", rule.id),
            json!({"outcome": outcome(rule.outcome), "detail": rule.detail}),
            &[rule.citation],
        );
    }
    let overall = match &v.overall {
        Overall::Feasible => json!("feasible"),
        Overall::Infeasible => json!("infeasible"),
        Overall::ConstrainedTo(cases) => json!({ "constrained_to": cases }),
    };
    r.claim("overall", overall, &[citation::COMPUTED]);
    if v.is_infeasible() {
        r.downgrade(Verdict::Infeasible);
    }
    Ok(r)
}

pub fn enumerate_high_defect() -> CommandResult {
    let mut r = Report::new("enumerate high-defect");
    let cases = classify::enumerate_high_defect();
    for c in &cases {
        r.claim(
            format!("({},{})", c.n, c.delta),
            json!({"multiplier": c.multiplier, "identification": c.identification}),
            &[citation::HIGH_DEFECT],
        );
    }
    let pairs: Vec<[u32; 2]> = cases.iter().map(|c| [c.n, c.delta]).collect();
    r.claim("pairs", pairs, &[citation::HIGH_DEFECT, citation::DIVISIBILITY]);
    Ok(r)
}

pub fn enumerate_half_defect(n_max: u32) -> CommandResult {
    let mut r = Report::new("enumerate half-defect");
    r.input("nmax", n_max);
    r.claim("n", classify::enumerate_half_defect(n_max), &[citation::HALF_DEFECT, citation::DIVISIBILITY]);
    Ok(r)
}

fn cremona_value(c: &cremona::CremonaReport) -> Value {
    let failed: Vec<&str> = c.rules.iter().filter(|x| x.outcome == Outcome::Fail).map(|x| x.citation.anchor).collect();
    json!({
        "N": c.ambient,
        "n": c.n,
        "delta": c.delta,
        "secant_degree": c.secant_degree,
        "branch": match c.branch { Branch::DeltaZero => "delta-zero", Branch::FanoCandidate => "fano-candidate", Branch::Infeasible => "infeasible" },
        "fano_index": c.fano_index.map(|i| i.to_string()),
        "failed": failed,
    })
}

pub fn cremona(d1: u32, d2: u32, n_max: Option<u32>) -> CommandResult {
    if d1 != 2 {
        return Err(CommandError::Input(format!("only type (2, d) is classified, got ({d1}, {d2})")));
    }
    let mut r = Report::new("cremona");
    let bound = cremona::fano_dimension_bound(d2);
    let n_max = n_max.unwrap_or(bound.max(d2.saturating_sub(2)));
    r.input("type", vec![d1, d2]).input("nmax", n_max);
    let c = cremona::classify_type2d(d2, n_max)?;
    r.claim("dimension_bound", c.dimension_bound, &[citation::CREMONA_EVEN_BOUND]);
    for cand in &c.candidates {
        let cites: Vec<Citation> = cand.rules.iter().map(|x| x.citation).collect();
        r.claim(format!("candidate.n={}", cand.n), cremona_value(cand), &cites);
    }
    let triples: Vec<Value> = c.candidates.iter().map(|x| json!([x.ambient, x.n, x.delta])).collect();
    r.claim("candidates", triples, &[citation::CREMONA_TYPE]);
    let rejected: Vec<Value> = c
        .rejected
        .iter()
        .filter(|x| x.delta.is_some())
        .map(|x| json!({"n": x.n, "delta": x.delta, "failed": cremona_value(x)["failed"]}))
        .collect();
    r.claim("rejected", rejected, &[citation::CREMONA_TYPE]);
    if n_max < bound {
        r.warn(format!("nmax = {n_max} is below the dimension bound {bound}; the list may be incomplete"));
    }
    if c.candidates.iter().any(|x| x.branch == Branch::FanoCandidate) {
        r.warn("Fano-branch entries satisfy necessary conditions only; existence is not claimed");
    }
    Ok(r)
}

pub fn cremona_2n_plus_1() -> CommandResult {
    let mut r = Report::new("cremona-2nplus1");
    let t = cremona::classify_2n_plus_1(64);
    let sols: Vec<Value> = t.solutions.iter().map(|s| json!({"d1": s.d1, "d2": s.d2, "n": s.n})).collect();
    r.claim("solutions", sols, &[citation::CREMONA_2N_PLUS_1]);
    let rejected: Vec<Value> =
        t.rejected.iter().map(|(s, why)| json!({"d1": s.d1, "d2": s.d2, "n": s.n, "reason": why})).collect();
    r.claim("rejected", rejected, &[citation::CREMONA_DELTA_ONE]);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_formatting() {
        let monos = [(0, 0), (0, 1), (1, 1)];
        assert_eq!(quadric_text(&monos, &[1, -2, 0]), "z0^2 - 2*z0*z1");
        assert_eq!(quadric_text(&monos, &[0, -1, 3]), "-z0*z1 + 3*z1^2");
    }

    #[test]
    fn only_type_two_cremona() {
        assert_eq!(cremona(3, 3, None).unwrap_err().exit_code(), 2);
    }
}
