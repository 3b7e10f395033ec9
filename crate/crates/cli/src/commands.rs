use serde_json::{json, Value};

use qsaa_core::cyclo::CycloNum;
use qsaa_core::io::{cyclo_to_json, module_from_str, module_to_json};
use qsaa_core::parse::{parse_cyclo, parse_cyclo_list, parse_element};
use qsaa_core::pbw::{normal_form, Presentation, Strategy};
use qsaa_core::pi_degree::{
    image_cardinality_bruteforce, pi_degree_from_factors, qsaa_exponents, skew_normal_form, smash_exponents,
    SkewIntMatrix,
};
use qsaa_core::rep::{MatrixModule, Simplicity};
use qsaa_core::simple_mods::{build, classify, explicit_iso, iso, iso_coarse, SimpleParams, SimpleType};
use qsaa_core::smash::{build_n1, eigendata_of, lift_to_a, BModuleParams};
use qsaa_core::verma::{build_q, spin_up_census, verdicts, ChainMember, VermaParams};

use crate::error::CliError;
use crate::report::{Check, Report, Status};
use crate::{suite, Algebra, Cli, Command, Output, SmashCommand};

/// Size limits shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Guards {
    pub max_closure_dim: usize,
    pub max_enumeration: u64,
}

impl Guards {
    pub fn closure(&self, what: &str, dim: usize) -> Result<(), CliError> {
        if dim > self.max_closure_dim {
            return Err(CliError::ClosureGuard {
                what: what.to_string(),
                dim,
                limit: self.max_closure_dim,
            });
        }
        Ok(())
    }
}

pub fn run(cli: &Cli, echo: &str) -> Result<Output, CliError> {
    let guards = Guards {
        max_closure_dim: cli.max_closure_dim,
        max_enumeration: cli.max_enumeration,
    };
    match &cli.command {
        Command::Pideg {
            algebra,
            l,
            matrix,
            bruteforce,
        } => pideg(echo, *algebra, *l, matrix.as_deref(), *bruteforce, guards).map(Output::Report),
        Command::Build { kind, l, mu } => {
            let p = simple_params(*kind, *l, mu)?;
            Ok(Output::Module(module_to_json(&build(*l, &p)?)))
        }
        Command::Verify { module, expect_simple } => verify(echo, module, *expect_simple, guards).map(Output::Report),
        Command::Iso {
            kind,
            l,
            mu,
            gamma,
            oracle,
        } => iso_command(echo, *kind, *l, mu, gamma, *oracle, guards).map(Output::Report),
        Command::Classify { module, hints } => classify_command(echo, module, hints.as_deref(), guards).map(Output::Report),
        Command::Verma {
            l,
            p,
            lambda1,
            lambda2,
            census,
        } => verma(echo, *l, *p, lambda1, lambda2, *census, guards).map(Output::Report),
        Command::Smash { command } => smash(echo, command, guards),
        Command::NormalForm { algebra, l, expr } => {
            let mut r = Report::new(echo, Some(*l));
            let x = parse_element(*l, presentation(*algebra), expr)?;
            r.set("normal_form", json!(x.to_string()));
            Ok(Output::Report(r))
        }
        Command::Suite { l } => suite::run(echo, *l, guards).map(Output::Report),
    }
}

fn presentation(a: Algebra) -> Presentation {
    match a {
        Algebra::Qsaa => Presentation::Qsaa,
        Algebra::Extended => Presentation::Smash,
        Algebra::Sub => Presentation::Sub,
    }
}

pub fn simple_params(kind: SimpleType, l: u32, s: &str) -> Result<SimpleParams, CliError> {
    Ok(SimpleParams::new(kind, parse_cyclo_list(l, s)?)?)
}

fn hint_list(l: u32, hints: Option<&str>) -> Result<Vec<CycloNum>, CliError> {
    match hints {
        Some(s) => Ok(parse_cyclo_list(l, s)?),
        None => Ok(Vec::new()),
    }
}

fn read_source(path: &str) -> Result<String, CliError> {
    let read = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|source| CliError::Read {
        path: path.to_string(),
        source,
    })
}

fn load_module(path: &str, check: bool) -> Result<MatrixModule, CliError> {
    Ok(module_from_str(&read_source(path)?, check)?)
}

fn cyclo_list(xs: &[CycloNum]) -> Value {
    Value::Array(xs.iter().map(|c| json!(c.to_string())).collect())
}

/// `l^2` for odd `l`, `l^2 / 2` for even `l`.
pub fn closed_form_pideg(l: u32) -> i64 {
    let sq = (l as i64) * (l as i64);
    if l.is_multiple_of(2) {
        sq / 2
    } else {
        sq
    }
}

fn parse_matrix(src: &str) -> Result<SkewIntMatrix, CliError> {
    let text = if src.trim_start().starts_with('[') {
        src.to_string()
    } else {
        read_source(src)?
    };
    let rows: Vec<Vec<i64>> = serde_json::from_str(&text)?;
    Ok(SkewIntMatrix::new(rows)?)
}

fn pideg(
    echo: &str,
    algebra: Algebra,
    l: u32,
    matrix: Option<&str>,
    bruteforce: bool,
    guards: Guards,
) -> Result<Report, CliError> {
    let mut r = Report::new(echo, Some(l));
    let h = match matrix {
        Some(src) => {
            if l < 2 {
                return Err(CliError::Usage(format!("modulus {l} must be at least 2")));
            }
            parse_matrix(src)?
        }
        None => {
            if l < 3 {
                return Err(qsaa_core::Error::InvalidOrder(l as i64).into());
            }
            match algebra {
                Algebra::Qsaa => qsaa_exponents(),
                Algebra::Extended | Algebra::Sub => smash_exponents(),
            }
        }
    };
    let nf = skew_normal_form(&h);
    let pd = pi_degree_from_factors(&nf.factors, l as i64);
    let doubled: Vec<i64> = nf.factors.iter().flat_map(|&f| [f, f]).collect();
    r.set("factors", json!(doubled));
    r.set("kernel_dim", json!(nf.kernel_dim));
    r.set("pideg", json!(pd));
    if matrix.is_none() {
        let want = closed_form_pideg(l);
        r.push(Check::verdict("closed form", pd == want, format!("pideg {pd}, expected {want}")));
    }
    if bruteforce {
        let card = image_cardinality_bruteforce(&h, l as i64, guards.max_enumeration)?;
        r.set("bruteforce_h", json!(card));
        r.push(Check::verdict(
            "brute force",
            (pd as u64).pow(2) == card,
            format!("image has {card} elements, pideg squared is {}", pd * pd),
        ));
    }
    Ok(r)
}

fn simplicity_json(s: &Simplicity) -> Value {
    match s {
        Simplicity::NotSimple(w) => json!({"verdict": s.label(), "submodule_dim": w.dim()}),
        _ => json!({"verdict": s.label()}),
    }
}

fn verify(echo: &str, path: &str, expect_simple: bool, guards: Guards) -> Result<Report, CliError> {
    let m = load_module(path, false)?;
    let mut r = Report::new(echo, Some(m.order()));
    r.set("presentation", json!(m.presentation().name()));
    r.set("dim", json!(m.dim()));
    let violations = m.verify_relations();
    let details = match violations.first() {
        None => format!("all defining relations hold on dimension {}", m.dim()),
        Some(v) => format!(
            "{} relations fail; first {} at ({}, {}) with residual {}",
            violations.len(),
            v.relation,
            v.row,
            v.col,
            v.residual
        ),
    };
    r.push(Check::verdict("relations", violations.is_empty(), details));
    if !violations.is_empty() {
        return Ok(r);
    }
    match guards.closure("module", m.dim()) {
        Ok(()) => {
            let s = m.is_simple();
            if s == Simplicity::Simple {
                r.set("closure_dim", json!(m.dim() * m.dim()));
            }
            r.set("simplicity", simplicity_json(&s));
            if expect_simple {
                let status = match s {
                    Simplicity::Simple => Status::Pass,
                    Simplicity::NotSimple(_) => Status::Fail,
                    Simplicity::Undetermined => Status::Undetermined,
                };
                r.push(Check::new("simple", status, s.label()));
            }
        }
        Err(e) => r.push(Check::guarded("structure", e.to_string())),
    }
    Ok(r)
}

fn witness_json(kind: SimpleType, w: Option<qsaa_core::simple_mods::IsoWitness>) -> Value {
    match (kind, w) {
        (_, None) => Value::Null,
        (SimpleType::M3, Some(w)) => json!({"r": w.r2}),
        (_, Some(w)) => json!({"r1": w.r1, "r2": w.r2}),
    }
}

fn iso_command(
    echo: &str,
    kind: SimpleType,
    l: u32,
    mu: &str,
    gamma: &str,
    oracle: bool,
    guards: Guards,
) -> Result<Report, CliError> {
    let a = simple_params(kind, l, mu)?;
    let b = simple_params(kind, l, gamma)?;
    let mut r = Report::new(echo, Some(l));
    let w = iso(l, &a, &b)?;
    r.set("isomorphic", json!(w.is_some()));
    if let Some(w) = w {
        if kind != SimpleType::M3 {
            r.set("r1", json!(w.r1));
        }
        r.set("r2", json!(w.r2));
    }
    r.set("witness", witness_json(kind, w));
    r.set("coarse_criterion", json!(iso_coarse(l, &a, &b)?.is_some()));
    let need_modules = w.is_some() || oracle;
    if need_modules {
        let ma = build(l, &a)?;
        let mb = build(l, &b)?;
        if let Some(w) = w {
            let p = explicit_iso(l, &a, &b, w)?;
            let good = p.is_invertible() && ma.is_homomorphism(&mb, &p);
            r.push(Check::verdict(
                "explicit isomorphism",
                good,
                "the map sending e(a1,a2) to the shifted basis vector intertwines the actions",
            ));
        }
        if oracle {
            match guards.closure("module", ma.dim()) {
                Ok(()) => {
                    let homs = ma.hom_space(&mb)?;
                    let found = homs.len() == 1 && homs[0].is_invertible();
                    r.push(Check::verdict(
                        "hom oracle",
                        found == w.is_some(),
                        format!("Hom space has dimension {}", homs.len()),
                    ));
                }
                Err(e) => r.push(Check::guarded("hom oracle", e.to_string())),
            }
        }
    }
    Ok(r)
}

fn classify_command(echo: &str, path: &str, hints: Option<&str>, guards: Guards) -> Result<Report, CliError> {
    let m = load_module(path, true)?;
    let l = m.order();
    guards.closure("module", m.dim())?;
    let c = classify(&m, &hint_list(l, hints)?)?;
    let mut r = Report::new(echo, Some(l));
    let model = build(l, &c.params)?;
    r.push(Check::verdict(
        "intertwiner",
        c.intertwiner.is_invertible() && model.is_homomorphism(&m, &c.intertwiner),
        format!("isomorphism from the standard {} module onto the input", c.kind),
    ));
    r.set("type", json!(c.kind.name()));
    r.set("params", cyclo_list(c.params.mu()));
    r.set("e_shift", json!(c.e_shift));
    r.set("explicit", json!(c.explicit));
    let opt = |x: &Option<CycloNum>| x.as_ref().map(|c| json!(c.to_string())).unwrap_or(Value::Null);
    r.set(
        "eigen",
        json!({
            "alpha": c.eigen.alpha.to_string(),
            "beta": c.eigen.beta.to_string(),
            "xi": c.eigen.xi.to_string(),
            "lambda1": c.eigen.lambda1.to_string(),
            "lambda2": c.eigen.lambda2.to_string(),
            "alpha_prime": opt(&c.eigen.alpha_prime),
            "beta_prime": opt(&c.eigen.beta_prime),
        }),
    );
    Ok(r)
}

fn verma(
    echo: &str,
    l: u32,
    p: u32,
    lambda1: &str,
    lambda2: &str,
    census: bool,
    guards: Guards,
) -> Result<Report, CliError> {
    let params = VermaParams::new(parse_cyclo(l, lambda1)?, parse_cyclo(l, lambda2)?)?;
    let q = build_q(l, p, &params)?;
    guards.closure("quotient", q.dim())?;
    let mut r = Report::new(echo, Some(l));
    r.push(Check::pass("relations", format!("defining relations hold on dimension {}", q.dim())));
    let v = verdicts(l, p, &params)?;
    r.push(Check::pass("chain", format!("{} chain members are submodules", p - 1)));
    r.set(
        "verdicts",
        json!({
            "simple": v.simple,
            "semisimple": v.semisimple,
            "indecomposable": v.indecomposable,
            "witness_dim": v.witness.as_ref().map(|w| w.dim()),
            "complements": v.complements,
            "end_quotient_dim": v.end_quotient_dim,
        }),
    );
    if census {
        let rows = spin_up_census(l, p, &params)?;
        r.push(Check::pass("census", "every spun-up basis vector is a chain member"));
        r.set(
            "census",
            Value::Array(
                rows.iter()
                    .map(|(label, m)| {
                        let member = match m {
                            ChainMember::Full => json!("full"),
                            ChainMember::Tail(k) => json!(k),
                        };
                        json!({"vector": label, "member": member})
                    })
                    .collect(),
            ),
        );
    }
    r.set("module", module_to_json(&q));
    Ok(r)
}

fn smash(echo: &str, cmd: &SmashCommand, guards: Guards) -> Result<Output, CliError> {
    match cmd {
        SmashCommand::BuildN1 { l, params } => {
            let v = parse_cyclo_list(*l, params)?;
            let [l1, l2, l3, xi, alpha]: [CycloNum; 5] = v.try_into().map_err(|v: Vec<CycloNum>| {
                CliError::Usage(format!("expected 5 parameters lambda1,lambda2,lambda3,xi,alpha, got {}", v.len()))
            })?;
            let p = BModuleParams::new(l1, l2, l3, xi, alpha)?;
            Ok(Output::Module(module_to_json(&build_n1(*l, &p)?)))
        }
        SmashCommand::Lift { module } => Ok(Output::Module(module_to_json(&lift_to_a(&load_module(module, true)?)?))),
        SmashCommand::Eigen { module, hints } => {
            let m = load_module(module, true)?;
            let l = m.order();
            guards.closure("module", m.dim())?;
            let d = eigendata_of(&m, &hint_list(l, hints.as_deref())?)?;
            let mut r = Report::new(echo, Some(l));
            let vector_ok = !d.vector.iter().all(CycloNum::is_zero);
            r.push(Check::verdict("eigenvector", vector_ok, "joint eigenvector of K, YX and psi*phi"));
            let p = d.params()?;
            r.set(
                "params",
                Value::Object(p.named().iter().map(|(k, v)| (k.to_string(), json!(v.to_string()))).collect()),
            );
            r.set("beta", json!(d.beta.to_string()));
            r.set("vector", Value::Array(d.vector.iter().map(cyclo_to_json).collect()));
            Ok(Output::Report(r))
        }
        SmashCommand::Pideg { l } => {
            if *l < 3 {
                return Err(qsaa_core::Error::InvalidOrder(*l as i64).into());
            }
            let mut r = Report::new(echo, Some(*l));
            let a = qsaa_core::pi_degree::pideg_smash(*l)?;
            let q = qsaa_core::pi_degree::pideg_qsaa(*l)?;
            r.set("pideg", json!(a));
            r.set("qsaa_pideg", json!(q));
            r.push(Check::verdict(
                "closed form",
                a == closed_form_pideg(*l),
                format!("pideg {a}, expected {}", closed_form_pideg(*l)),
            ));
            r.push(Check::verdict("equal to qsaa", a == q, format!("{a} vs {q}")));
            Ok(Output::Report(r))
        }
    }
}

/// Normal forms of one word under all three reduction orders.
pub fn strategies_agree(l: u32, pres: Presentation, word: &[qsaa_core::Generator]) -> Result<bool, CliError> {
    let a = normal_form(l, pres, word, Strategy::Cached)?;
    let b = normal_form(l, pres, word, Strategy::Leftmost)?;
    let c = normal_form(l, pres, word, Strategy::Rightmost)?;
    Ok(a == b && b == c)
}
