//! The full battery of checks for one root order, run on a bounded pool.

use rayon::prelude::*;
use serde_json::json;

use qsaa_core::cyclo::{q_power, CycloNum};
use qsaa_core::identities::{
    ageing_commutation, central_candidates, phi_identities, smash_commutation, NamedIdentity,
};
use qsaa_core::linalg::Matrix;
use qsaa_core::parse::parse_cyclo_list;
use qsaa_core::pbw::{is_central, Generator, Presentation};
use qsaa_core::pi_degree::{
    image_cardinality_bruteforce, pi_degree_from_factors, pideg_qsaa, pideg_smash, qsaa_exponents,
    skew_normal_form, smash_exponents,
};
use qsaa_core::rep::{MatrixModule, Simplicity};
use qsaa_core::simple_mods::{build, classify, iso, SimpleParams, SimpleType};
use qsaa_core::smash::{build_n1, eigendata_of, lift_to_a, restrict_to_b, BModuleParams};
use qsaa_core::verma::{build_q, chain_submodules, verdicts, VermaParams};

use crate::commands::{closed_form_pideg, simple_params, strategies_agree, Guards};
use crate::error::CliError;
use crate::report::{Check, Report};

type Body = Box<dyn Fn() -> Result<Check, CliError> + Send + Sync>;
type IdentityFamily = fn(u32, u32) -> qsaa_core::Result<Vec<NamedIdentity>>;

/// Pool sized by `QSAA_WORKERS` when set.
pub fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("QSAA_WORKERS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("QSAA_WORKERS must be a positive integer, got '{v}'")))?;
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}

const KINDS: [SimpleType; 3] = [SimpleType::M1, SimpleType::M2, SimpleType::M3];

fn grid(kind: SimpleType) -> [&'static str; 3] {
    match kind {
        SimpleType::M1 => ["1,2,1,1", "q,q,2,1", "2,3,q,1"],
        SimpleType::M2 => ["1,2,3", "q,1,2", "2,q,1"],
        SimpleType::M3 => ["1,1", "q,3", "2,q^2"],
    }
}

fn iso_grid(kind: SimpleType) -> [&'static str; 4] {
    match kind {
        SimpleType::M1 => ["1,1,1,1", "q^2,1,1,1", "1,q,1,1", "2,1,1,1"],
        SimpleType::M2 => ["1,1,1", "q,1,1", "1,q,1", "1,1,2"],
        SimpleType::M3 => ["1,1", "q,1", "1,q", "2,1"],
    }
}

fn show(p: &SimpleParams) -> String {
    let parts: Vec<String> = p.mu().iter().map(ToString::to_string).collect();
    format!("{}({})", p.kind(), parts.join(", "))
}

/// Conjugation by a unipotent matrix with a `q` band, so that the input
/// to classification is not already in standard form.
fn scramble(m: &MatrixModule) -> Result<MatrixModule, CliError> {
    let l = m.order();
    let d = m.dim();
    let u = Matrix::from_fn(l, d, d, |i, j| {
        if i == j || j == i + 1 {
            CycloNum::one(l)
        } else if j == i + 3 {
            q_power(l, 1)
        } else {
            CycloNum::zero(l)
        }
    });
    Ok(m.conjugate(&u)?)
}

fn all_words(pres: Presentation, max: usize) -> Vec<Vec<Generator>> {
    let gens = pres.generators();
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<Generator>> = vec![vec![]];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| {
                gens.iter().map(move |&g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn pideg_jobs(l: u32, guards: Guards, jobs: &mut Vec<(String, Body)>) {
    jobs.push((
        "pideg closed form".into(),
        Box::new(move || {
            let (a, b, want) = (pideg_qsaa(l)?, pideg_smash(l)?, closed_form_pideg(l));
            Ok(Check::verdict(
                "pideg closed form",
                a == want && b == want,
                format!("qsaa {a}, extension {b}, expected {want}"),
            ))
        }),
    ));
    for (name, h) in [("qsaa", qsaa_exponents()), ("extension", smash_exponents())] {
        let title = format!("pideg brute force {name}");
        jobs.push((
            title.clone(),
            Box::new(move || {
                let card = image_cardinality_bruteforce(&h, l as i64, guards.max_enumeration)?;
                let pd = pi_degree_from_factors(&skew_normal_form(&h).factors, l as i64);
                Ok(Check::verdict(
                    &title,
                    (pd * pd) as u64 == card,
                    format!("image has {card} elements, pideg {pd}"),
                ))
            }),
        ));
    }
}

fn identity_jobs(l: u32, jobs: &mut Vec<(String, Body)>) {
    let families: [(&str, IdentityFamily); 2] = [("ageing", ageing_commutation), ("extension", smash_commutation)];
    for (name, f) in families {
        let title = format!("commutation identities {name}");
        jobs.push((
            title.clone(),
            Box::new(move || {
                let mut n = 0;
                for i in 1..=2 * l {
                    for id in f(l, i)? {
                        if !id.holds() {
                            return Ok(Check::fail(&title, format!("{} fails", id.name)));
                        }
                        n += 1;
                    }
                }
                Ok(Check::pass(&title, format!("{n} identities for exponents 1..{}", 2 * l)))
            }),
        ));
    }
    jobs.push((
        "phi identities".into(),
        Box::new(move || {
            let ids = phi_identities(l)?;
            Ok(match ids.iter().find(|id| !id.holds()) {
                Some(id) => Check::fail("phi identities", format!("{} fails", id.name)),
                None => Check::pass("phi identities", format!("{} identities", ids.len())),
            })
        }),
    ));
    for pres in [Presentation::Qsaa, Presentation::Smash, Presentation::Sub] {
        let title = format!("central elements {pres}");
        jobs.push((
            title.clone(),
            Box::new(move || {
                let cands = central_candidates(l, pres)?;
                for (name, x) in &cands {
                    if !is_central(x)? {
                        return Ok(Check::fail(&title, format!("{name} is not central")));
                    }
                }
                Ok(Check::pass(&title, format!("{} elements central", cands.len())))
            }),
        ));
        let title = format!("reduction orders {pres}");
        jobs.push((
            title.clone(),
            Box::new(move || {
                let words = all_words(pres, 3);
                for w in &words {
                    if !strategies_agree(l, pres, w)? {
                        return Ok(Check::fail(&title, format!("normal forms differ for {w:?}")));
                    }
                }
                Ok(Check::pass(&title, format!("{} words of length <= 3 agree", words.len())))
            }),
        ));
    }
}

fn module_jobs(l: u32, guards: Guards, jobs: &mut Vec<(String, Body)>) {
    for kind in KINDS {
        for mu in grid(kind) {
            let title = format!("module {kind}({mu})");
            jobs.push((
                title.clone(),
                Box::new(move || {
                    let p = simple_params(kind, l, mu)?;
                    let m = build(l, &p)?;
                    let n = pideg_qsaa(l)? as usize;
                    if m.dim() != n {
                        return Ok(Check::fail(&title, format!("dimension {} but pideg {n}", m.dim())));
                    }
                    guards.closure("module", m.dim())?;
                    let s = m.is_simple();
                    let c = m.algebra_closure_dim();
                    Ok(Check::verdict(
                        &title,
                        s == Simplicity::Simple && c == n * n,
                        format!("dimension {n}, {}, closure {c}", s.label()),
                    ))
                }),
            ));
        }
        let title = format!("isomorphism decider {kind}");
        jobs.push((
            title.clone(),
            Box::new(move || {
                let vals = iso_grid(kind)
                    .iter()
                    .map(|s| simple_params(kind, l, s))
                    .collect::<Result<Vec<_>, _>>()?;
                let mods = vals.iter().map(|p| build(l, p)).collect::<Result<Vec<_>, _>>()?;
                guards.closure("module", mods[0].dim())?;
                let mut positive = 0;
                for (i, a) in vals.iter().enumerate() {
                    for (j, b) in vals.iter().enumerate() {
                        let homs = mods[i].hom_space(&mods[j])?;
                        let oracle = homs.len() == 1 && homs[0].is_invertible();
                        let w = iso(l, a, b)?;
                        if w.is_some() != oracle {
                            return Ok(Check::fail(
                                &title,
                                format!("decider says {} for {} vs {}", w.is_some(), show(a), show(b)),
                            ));
                        }
                        positive += usize::from(oracle);
                    }
                }
                Ok(Check::pass(&title, format!("16 pairs agree with Hom, {positive} isomorphic")))
            }),
        ));
        let title = format!("classification {kind}");
        jobs.push((
            title.clone(),
            Box::new(move || {
                let p = simple_params(kind, l, grid(kind)[1])?;
                let input = scramble(&build(l, &p)?)?;
                guards.closure("module", input.dim())?;
                let c = classify(&input, &[])?;
                let model = build(l, &c.params)?;
                let ok = c.kind == kind
                    && iso(l, &c.params, &p)?.is_some()
                    && c.intertwiner.is_invertible()
                    && model.is_homomorphism(&input, &c.intertwiner);
                Ok(Check::verdict(&title, ok, format!("{} recognised as {}", show(&p), show(&c.params))))
            }),
        ));
    }
}

fn verma_jobs(l: u32, guards: Guards, jobs: &mut Vec<(String, Body)>) {
    for p in 1..=2u32 {
        let title = format!("verma quotient p={p}");
        jobs.push((
            title.clone(),
            Box::new(move || {
                let params = VermaParams::new(CycloNum::one(l), CycloNum::one(l))?;
                guards.closure("quotient", (p * l * l) as usize)?;
                build_q(l, p, &params)?;
                let v = verdicts(l, p, &params)?;
                let chain = chain_submodules(l, p)?;
                let witness_ok = v.witness.as_ref().is_none_or(|w| chain.contains(w));
                let ok = v.simple == (p == 1)
                    && v.semisimple == (p == 1)
                    && v.indecomposable
                    && witness_ok
                    && v.complements.iter().all(|c| !c);
                Ok(Check::verdict(
                    &title,
                    ok,
                    format!(
                        "simple {}, semisimple {}, indecomposable {}",
                        v.simple, v.semisimple, v.indecomposable
                    ),
                ))
            }),
        ));
    }
}

fn smash_jobs(l: u32, guards: Guards, jobs: &mut Vec<(String, Body)>) {
    for params in ["1,1,0,1,1", "1,1,q,2,1", "2,q,1,q,2"] {
        let title = format!("subalgebra module ({params})");
        jobs.push((
            title.clone(),
            Box::new(move || {
                let v = parse_cyclo_list(l, params)?;
                let p = BModuleParams::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone())?;
                let n1 = build_n1(l, &p)?;
                guards.closure("module", n1.dim())?;
                let target = pideg_smash(l)? as usize;
                let lifted = lift_to_a(&n1)?;
                let back = restrict_to_b(&lifted)?;
                let d = eigendata_of(&n1, &[])?;
                let (cb, ca) = (n1.algebra_closure_dim(), lifted.algebra_closure_dim());
                let ok = n1.dim() == target
                    && cb == target * target
                    && ca == target * target
                    && back.matrices() == n1.matrices()
                    && d.alpha == p.alpha
                    && d.xi == p.xi;
                Ok(Check::verdict(
                    &title,
                    ok,
                    format!("closure {cb} over the subalgebra, {ca} after lifting"),
                ))
            }),
        ));
    }
}

pub fn run(echo: &str, l: u32, guards: Guards) -> Result<Report, CliError> {
    if l < 3 {
        return Err(qsaa_core::Error::InvalidOrder(l as i64).into());
    }
    let mut jobs: Vec<(String, Body)> = Vec::new();
    pideg_jobs(l, guards, &mut jobs);
    identity_jobs(l, &mut jobs);
    module_jobs(l, guards, &mut jobs);
    let odd = l % 2 == 1;
    if odd {
        verma_jobs(l, guards, &mut jobs);
        smash_jobs(l, guards, &mut jobs);
    }
    let results: Vec<Check> = pool()?.install(|| {
        jobs.par_iter()
            .map(|(name, body)| Check::from_result(name, body()))
            .collect()
    });
    let mut r = Report::new(echo, Some(l));
    for c in results {
        r.push(c);
    }
    r.set("checks", json!(r.results.len()));
    if !odd {
        r.set("skipped", json!(["verma quotients", "subalgebra modules"]));
    }
    Ok(r)
}
