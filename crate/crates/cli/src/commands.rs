use std::fmt::Write as _;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use jetfrob::certificates::{
    build_m_monomial, extract_matrix_a, grid_min_max_rowsum, lp_min_max_rowsum, matrix_c,
    multinomial_p_valuation, rational_text, verify_m_membership,
};
use jetfrob::fpt::{fpt_sequence, jet_fpt_compare};
use jetfrob::frobenius::{
    check_frobenius_power, default_panel, f_regular_probe, good_monomial, variable_panel,
    ProbeVerdict,
};
use jetfrob::general::gen_general_type;
use jetfrob::geometry::{irreducibility_verdict, HypothesisFlags, Verdict};
use jetfrob::jet::{jet_equations, trivial_jet_variables, JetSystem};
use jetfrob::{Error, PolyMod};

use crate::error::{CliError, CliResult};
use crate::input::{check_prime, parse_in, PolyInput};
use crate::report::{self, value, yes, Report};

fn frobenius_q(p: u32, e: u32) -> CliResult<u32> {
    let q = (p as u64).checked_pow(e).filter(|&q| q <= u32::MAX as u64).ok_or_else(|| {
        Error::Range(format!("{p}^{e} exceeds the supported maximum 256"))
    })? as u32;
    check_frobenius_power(p, q)?;
    Ok(q)
}

fn system(input: &PolyInput, p: u32, m: usize) -> CliResult<(JetSystem, serde_json::Value)> {
    let loaded = input.load(p)?;
    let sys = jet_equations(&loaded.polys, m)?;
    Ok((sys, value(&loaded.echo)))
}

fn with(mut inputs: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    if let (Some(a), Some(b)) = (inputs.as_object_mut(), extra.as_object()) {
        for (k, v) in b {
            a.insert(k.clone(), v.clone());
        }
    }
    inputs
}

#[derive(Debug, Clone, Args)]
pub struct JetsArgs {
    #[arg(long)]
    pub p: u32,
    /// Jet level.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[command(flatten)]
    pub input: PolyInput,
}

pub fn jets(a: &JetsArgs) -> CliResult<Report> {
    let (sys, inputs) = system(&a.input, a.p, a.m)?;
    let view = report::jet_system(&sys);
    let mut text = String::new();
    for e in &view.equations {
        writeln!(text, "F{}^({}) = {}", e.equation + 1, e.j, e.text).unwrap();
    }
    let weights_ok = sys.degree().is_some_and(|d| {
        sys.all_equations().all(|((_, j), f)| {
            f.terms().iter().all(|(mono, _)| mono.degree() == d && mono.weight(sys.table()) as usize == j)
        })
    });
    Ok(Report {
        command: "jets",
        inputs: with(inputs, json!({ "m": a.m })),
        result: value(&view),
        text,
        checks: vec![("homogeneous", sys.degree().is_some()), ("degree-weight", weights_ok)],
    })
}

#[derive(Debug, Clone, Args)]
pub struct FedderArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Frobenius exponent: the test runs at q = p^e.
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[command(flatten)]
    pub input: PolyInput,
}

pub fn fedder(a: &FedderArgs) -> CliResult<Report> {
    let (sys, inputs) = system(&a.input, a.p, a.m)?;
    let q = frobenius_q(a.p, a.e)?;
    let cert = good_monomial(&sys, q)?;
    let check = cert.as_ref().map(|c| c.revalidate(&sys)).transpose()?;
    let f_pure = cert.is_some();
    let verdict = if f_pure { "F-pure" } else { "not F-pure" };
    let mut text = format!("verdict: {verdict}\nq: {q}\n");
    if let (Some(c), Some(chk)) = (&cert, &check) {
        writeln!(text, "good monomial: {}", c.monomial.render(sys.table())).unwrap();
        writeln!(text, "coefficient: {}", c.coefficient).unwrap();
        writeln!(text, "certificate revalidates: {}", yes(chk.passed())).unwrap();
    }
    let result = json!({
        "verdict": verdict,
        "q": q,
        "certificate": cert.as_ref().map(|c| report::certificate(c, sys.table())),
        "revalidation": check.as_ref().map(report::check),
    });
    Ok(Report {
        command: "fedder",
        inputs: with(inputs, json!({ "m": a.m, "e": a.e })),
        result,
        text,
        checks: vec![
            ("f-pure", f_pure),
            ("not-f-pure", !f_pure),
            ("certificate-valid", check.is_some_and(|c| c.passed())),
        ],
    })
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Panel {
    /// Every variable and every nonzero partial derivative.
    Default,
    /// Every variable.
    Variables,
    /// Only the elements given with --g.
    None,
}

#[derive(Debug, Clone, Args)]
pub struct FregularArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Largest Frobenius exponent tried.
    #[arg(long, default_value_t = 1)]
    pub emax: u32,
    /// Test element in the jet ring; repeatable.
    #[arg(long = "g", value_name = "POLY")]
    pub g: Vec<String>,
    #[arg(long, value_enum, default_value_t = Panel::Default)]
    pub panel: Panel,
    #[command(flatten)]
    pub input: PolyInput,
}

#[derive(Serialize)]
struct ProbeEntry {
    g: String,
    #[serde(flatten)]
    outcome: ProbeOutcome,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ProbeOutcome {
    Verdict(ProbeVerdict),
    Rejected { verdict: &'static str, reason: String },
}

pub fn fregular(a: &FregularArgs) -> CliResult<Report> {
    let (sys, inputs) = system(&a.input, a.p, a.m)?;
    frobenius_q(a.p, a.emax)?;
    let mut panel: Vec<PolyMod> = match a.panel {
        Panel::Default => default_panel(&sys),
        Panel::Variables => variable_panel(&sys),
        Panel::None => Vec::new(),
    };
    for src in &a.g {
        let g = parse_in(src, a.p, *sys.table())?;
        if !panel.contains(&g) {
            panel.push(g);
        }
    }
    if panel.is_empty() {
        return Err(CliError::Usage("the test panel is empty".into()));
    }
    let entries = panel
        .par_iter()
        .map(|g| {
            let outcome = match f_regular_probe(&sys, g, a.emax) {
                Ok(v) => ProbeOutcome::Verdict(v),
                Err(Error::Precondition(reason)) => ProbeOutcome::Rejected { verdict: "rejected", reason },
                Err(e) => return Err(CliError::from(e)),
            };
            Ok(ProbeEntry { g: g.render(), outcome })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut text = String::new();
    let mut all = true;
    for e in &entries {
        let line = match &e.outcome {
            ProbeOutcome::Verdict(ProbeVerdict::CertifiedRegularForG { e: k, q, witness_text, headroom, .. }) => {
                format!("witnessed at e = {k} (q = {q}): {witness_text}, headroom {headroom}")
            }
            ProbeOutcome::Verdict(ProbeVerdict::Inconclusive { e_max }) => {
                all = false;
                format!("inconclusive up to e = {e_max}")
            }
            ProbeOutcome::Rejected { reason, .. } => format!("rejected: {reason}"),
        };
        writeln!(text, "g = {}: {line}", e.g).unwrap();
    }
    Ok(Report {
        command: "fregular",
        inputs: with(inputs, json!({ "m": a.m, "emax": a.emax, "g": a.g })),
        result: json!({ "probes": entries }),
        text,
        checks: vec![("all-witnessed", all)],
    })
}

#[derive(Debug, Clone, Args)]
pub struct GoodMonomialArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[command(flatten)]
    pub input: PolyInput,
}

pub fn good_monomial_cmd(a: &GoodMonomialArgs) -> CliResult<Report> {
    let (sys, inputs) = system(&a.input, a.p, a.m)?;
    let q = frobenius_q(a.p, a.e)?;
    let inputs = with(inputs, json!({ "m": a.m, "e": a.e }));
    let Some(cert) = good_monomial(&sys, q)? else {
        return Ok(Report {
            command: "good-monomial",
            inputs,
            result: json!({ "certificate": null }),
            text: format!("no good monomial: F^{{q-1}} lies in m^[{q}]\n"),
            checks: vec![("certificate-valid", false), ("conditions-hold", false)],
        });
    };
    let check = cert.revalidate(&sys)?;
    let extraction = (q == a.p && sys.codim() == 1).then(|| extract_matrix_a(&cert, &sys)).transpose()?;
    let mut text = format!(
        "q: {q}\nmonomial: {}\ncoefficient: {}\nrevalidates: {}\n",
        cert.monomial.render(sys.table()),
        cert.coefficient,
        yes(check.passed())
    );
    for c in &cert.provenance {
        let picks: Vec<String> = c.terms.iter().map(|(m, a)| format!("{a} {}", m.render(sys.table()))).collect();
        writeln!(text, "  F{}^({}): {}", c.equation + 1, c.j, picks.join(" | ")).unwrap();
    }
    let conditions_ok = extraction.as_ref().is_some_and(|x| report::conditions_hold(&x.conditions) && x.row_sums_agree());
    if let Some(x) = &extraction {
        writeln!(text, "matrix A:\n{}", report::matrix_text(&x.matrix)).unwrap();
        writeln!(text, "conditions (1)-(4) hold: {}", yes(conditions_ok)).unwrap();
    }
    let result = json!({
        "certificate": report::certificate(&cert, sys.table()),
        "revalidation": report::check(&check),
        "matrix_a": extraction.as_ref().map(|x| json!({
            "matrix": report::matrix(&x.matrix),
            "raw_row_sums": report::rationals(&x.raw_row_sums),
            "row_sums_agree": x.row_sums_agree(),
            "conditions": x.conditions,
        })),
    });
    Ok(Report {
        command: "good-monomial",
        inputs,
        result,
        text,
        checks: vec![("certificate-valid", check.passed()), ("conditions-hold", conditions_ok)],
    })
}

#[derive(Debug, Clone, Args)]
pub struct FptArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub emax: u32,
    /// `origin` (every jet variable) or `trivial-jet:<level>`.
    #[arg(long, default_value = "origin")]
    pub center: String,
    #[command(flatten)]
    pub input: PolyInput,
}

fn center(spec: &str, sys: &JetSystem) -> CliResult<Vec<usize>> {
    if spec == "origin" {
        return Ok((0..sys.table().nvars()).collect());
    }
    let level = spec
        .strip_prefix("trivial-jet:")
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| CliError::Usage(format!("unknown center `{spec}`")))?;
    Ok(trivial_jet_variables(sys, level)?)
}

pub fn fpt(a: &FptArgs) -> CliResult<Report> {
    let (sys, inputs) = system(&a.input, a.p, a.m)?;
    let center = center(&a.center, &sys)?;
    let table = fpt_sequence(&sys, &center, a.emax)?;
    let mut text = String::from("e\tq\tr_q\tr_q/q\n");
    for r in &table.rows {
        let rq = r.r_q.map_or("-".to_string(), |v| v.to_string());
        writeln!(text, "{}\t{}\t{rq}\t{}", r.e, r.q, r.ratio.as_deref().unwrap_or("-")).unwrap();
    }
    Ok(Report {
        command: "fpt",
        inputs: with(inputs, json!({ "m": a.m, "emax": a.emax, "center": a.center })),
        result: value(&table),
        text,
        checks: vec![("defined", table.rows.iter().all(|r| r.r_q.is_some()))],
    })
}

#[derive(Debug, Clone, Args)]
pub struct CompareFptArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub mprime: usize,
    #[arg(long, default_value_t = 1)]
    pub emax: u32,
    #[command(flatten)]
    pub input: PolyInput,
}

pub fn compare_fpt(a: &CompareFptArgs) -> CliResult<Report> {
    let loaded = a.input.load(a.p)?;
    let cmp = jet_fpt_compare(&loaded.polys, a.m, a.mprime, a.emax)?;
    let mut text = format!("sum of (ord f - 1): {}\nq\tr_q\tr'_q\tr'_q + corr <= r_q\tgap\n", cmp.order_excess);
    let show = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
    for r in &cmp.rows {
        let ok = r.inequality_holds.map_or("-", yes);
        let gap = r.ratio_gap.as_deref().unwrap_or("-");
        writeln!(text, "{}\t{}\t{}\t{ok}\t{gap}", r.q, show(r.r_q), show(r.r_prime_q)).unwrap();
    }
    let holds = cmp.rows.iter().all(|r| r.inequality_holds == Some(true));
    Ok(Report {
        command: "compare-fpt",
        inputs: with(value(&loaded.echo), json!({ "m": a.m, "mprime": a.mprime, "emax": a.emax })),
        result: value(&cmp),
        text,
        checks: vec![("inequality-holds", holds)],
    })
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 2)]
    pub e: u32,
    /// First seed of the coefficient panel.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of consecutive seeds in the panel.
    #[arg(long, default_value_t = 8)]
    pub seeds: u64,
    /// Compute the coefficient of M for every seed of the panel.
    #[arg(long)]
    pub verify: bool,
}

pub fn certify(a: &CertifyArgs) -> CliResult<Report> {
    check_prime(a.p)?;
    let mm = build_m_monomial(a.d, a.n, a.m, a.p as u64, a.e)?;
    let invariants = mm.lset.check_invariants();
    let dec = mm.decomposition;
    let valuation = multinomial_p_valuation(&[dec.a, dec.b, dec.c], dec.p);
    let mut membership = Vec::new();
    if a.verify {
        membership = (0..a.seeds)
            .into_par_iter()
            .map(|k| {
                let seed = a.seed.wrapping_add(k);
                let f = gen_general_type(a.d, a.n, a.p, seed)?.to_poly()?;
                Ok(json!({ "seed": seed, "coefficient": verify_m_membership(&mm, &f)? }))
            })
            .collect::<CliResult<Vec<_>>>()?;
    }
    let nonzero = membership.iter().filter(|v| v["coefficient"] != 0).count();
    let h = &mm.headroom;
    let mut text = format!(
        "(a, b, c) = ({}, {}, {}), v_p = {valuation}\nM = {}\nL invariants hold: {}\n",
        dec.a,
        dec.b,
        dec.c,
        mm.render(),
        yes(invariants.passed())
    );
    writeln!(
        text,
        "weight-0 max {} (bound {}), positive-weight max {} (bound {}), q = {}, outside m^[q]: {}",
        h.weight_zero_max,
        h.weight_zero_bound,
        h.positive_weight_max,
        h.positive_weight_bound,
        h.q,
        yes(h.outside_bracket)
    )
    .unwrap();
    for v in &membership {
        writeln!(text, "seed {}: coefficient {}", v["seed"], v["coefficient"]).unwrap();
    }
    let inputs = json!({
        "d": a.d, "N": a.n, "m": a.m, "p": a.p, "e": a.e,
        "seed": a.seed, "seeds": a.seeds, "verify": a.verify,
    });
    let result = json!({
        "decomposition": dec,
        "valuation": valuation,
        "l_monomials": mm.lset,
        "invariants": invariants,
        "m_monomial": mm.render(),
        "m_exponents": mm.exponents,
        "headroom": mm.headroom,
        "membership": a.verify.then_some(&membership),
        "membership_nonzero": a.verify.then_some(nonzero),
    });
    Ok(Report {
        command: "certify",
        inputs,
        result,
        text,
        checks: vec![
            ("invariants-hold", invariants.passed()),
            ("valuation-zero", valuation == 0),
            ("outside-bracket", h.outside_bracket),
            ("membership-nonzero", a.verify && nonzero == membership.len()),
        ],
    })
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixMode {
    /// Matrix A of a good-monomial certificate (needs a polynomial and --p).
    #[value(name = "A", alias = "a")]
    A,
    /// Reference matrix C.
    #[value(name = "C", alias = "c")]
    C,
    /// Exact LP optimum of the largest row sum.
    #[value(name = "lp")]
    Lp,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    #[arg(long, value_enum)]
    pub mode: MatrixMode,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Prime for mode A, or the grid denominator p − 1 for mode lp.
    #[arg(long)]
    pub p: Option<u32>,
    #[command(flatten)]
    pub input: PolyInput,
}

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("this mode needs {flag}")))
}

pub fn matrix(a: &MatrixArgs) -> CliResult<Report> {
    match a.mode {
        MatrixMode::A => {
            let p = need(a.p, "--p")?;
            let (sys, inputs) = system(&a.input, p, a.m)?;
            let cert = good_monomial(&sys, p)?
                .ok_or_else(|| Error::Precondition("the system is not F-pure: no certificate".into()))?;
            let x = extract_matrix_a(&cert, &sys)?;
            let ok = report::conditions_hold(&x.conditions) && x.row_sums_agree();
            Ok(Report {
                command: "matrix",
                inputs: with(inputs, json!({ "mode": "A", "m": a.m })),
                result: json!({
                    "certificate": report::certificate(&cert, sys.table()),
                    "matrix": report::matrix(&x.matrix),
                    "raw_row_sums": report::rationals(&x.raw_row_sums),
                    "row_sums_agree": x.row_sums_agree(),
                    "conditions": x.conditions,
                }),
                text: format!("{}\nconditions (1)-(4) hold: {}\n", report::matrix_text(&x.matrix), yes(ok)),
                checks: vec![("conditions-hold", ok)],
            })
        }
        MatrixMode::C => {
            let d = need(a.d, "--d")?;
            let c = matrix_c(d, a.m)?;
            let ok = report::conditions_hold(&c.conditions);
            let gamma = report::rationals(&c.gamma);
            Ok(Report {
                command: "matrix",
                inputs: json!({ "mode": "C", "d": d, "m": a.m }),
                result: json!({
                    "matrix": report::matrix(&c.matrix),
                    "gamma": gamma,
                    "conditions": c.conditions,
                    "gamma_formula": c.gamma_formula,
                }),
                text: format!("{}\ngamma = [{}]\n", report::matrix_text(&c.matrix), gamma.join(", ")),
                checks: vec![("conditions-hold", ok), ("gamma-formula", c.gamma_formula != Some(false))],
            })
        }
        MatrixMode::Lp => {
            let d = need(a.d, "--d")?;
            let r = lp_min_max_rowsum(d, a.m)?;
            let grid = match a.p {
                Some(p) => match grid_min_max_rowsum(d, a.m, p) {
                    Ok((best, w)) => json!({ "denominator": p - 1, "optimum": rational_text(&best), "witness": report::matrix(&w) }),
                    Err(Error::SizeLimit(msg)) => json!({ "denominator": p - 1, "skipped": msg }),
                    Err(e) => return Err(e.into()),
                },
                None => serde_json::Value::Null,
            };
            let mut text = format!(
                "optimum: {}\nlower bound: {}\nC upper bound: {}\nwitness:\n{}\n",
                rational_text(&r.optimum),
                r.lower_bound.as_ref().map_or("-".into(), rational_text),
                rational_text(&r.c_upper_bound),
                report::matrix_text(&r.witness)
            );
            if let Some(opt) = grid.get("optimum") {
                writeln!(text, "grid optimum: {}", opt.as_str().unwrap_or("-")).unwrap();
            }
            Ok(Report {
                command: "matrix",
                inputs: json!({ "mode": "lp", "d": d, "m": a.m, "p": a.p }),
                result: json!({
                    "optimum": rational_text(&r.optimum),
                    "lower_bound": r.lower_bound.as_ref().map(rational_text),
                    "c_upper_bound": rational_text(&r.c_upper_bound),
                    "within_bracket": r.within_bracket(),
                    "witness": report::matrix(&r.witness),
                    "grid": grid,
                }),
                text,
                checks: vec![("within-bracket", r.within_bracket() != Some(false))],
            })
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long = "N", visible_alias = "n")]
    pub n: u64,
    /// A level `m` or an inclusive range `a..b`.
    #[arg(long)]
    pub m: String,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub homogeneous: bool,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub isolated: bool,
}

fn levels(spec: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::Usage(format!("--m expects a level or a range a..b, got `{spec}`"));
    match spec.split_once("..") {
        Some((lo, hi)) => {
            let (lo, hi): (u64, u64) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
            if lo > hi {
                return Err(bad());
            }
            Ok((lo..=hi).collect())
        }
        None => Ok(vec![spec.parse().map_err(|_| bad())?]),
    }
}

pub fn dims(a: &DimsArgs) -> CliResult<Report> {
    let flags = HypothesisFlags { homogeneous: a.homogeneous, isolated_singularity: a.isolated };
    let reports = levels(&a.m)?
        .into_iter()
        .map(|m| irreducibility_verdict(a.d, a.n, m, flags))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::from("m\tfiber dim\tthreshold\tverdict\n");
    for r in &reports {
        let dim = match (r.fiber_dim, r.fiber_dim_lower_bound) {
            (Some(x), _) => x.to_string(),
            (None, Some(lb)) => format!(">= {lb}"),
            (None, None) => "-".into(),
        };
        let verdict = value(&r.verdict);
        writeln!(text, "{}\t{dim}\t{}\t{}", r.m, r.threshold, verdict.as_str().unwrap_or("")).unwrap();
    }
    let all = |v: Verdict| reports.iter().all(|r| r.verdict == v);
    Ok(Report {
        command: "dims",
        inputs: json!({ "d": a.d, "N": a.n, "m": a.m, "homogeneous": a.homogeneous, "isolated": a.isolated }),
        result: json!({ "levels": reports }),
        text,
        checks: vec![
            ("irreducible", all(Verdict::IrreducibleCompleteIntersection)),
            ("not-irreducible", all(Verdict::NotIrreducible)),
        ],
    })
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of consecutive seeds.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
}

pub fn gen(a: &GenArgs) -> CliResult<Report> {
    let panel = (0..a.seeds)
        .map(|k| gen_general_type(a.d, a.n, a.p, a.seed.wrapping_add(k)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    let mut polys = Vec::new();
    for g in &panel {
        let f = g.to_poly()?;
        writeln!(text, "seed {}: {}", g.seed, f.render()).unwrap();
        polys.push(json!({ "seed": g.seed, "poly": f.render(), "coefficients": g.coefficients }));
    }
    let mut maps: Vec<&Vec<(Vec<usize>, u32)>> = panel.iter().map(|g| &g.coefficients).collect();
    maps.sort();
    maps.dedup();
    let collisions = panel.len() - maps.len();
    if panel.len() > 1 {
        writeln!(text, "collisions: {collisions}").unwrap();
    }
    Ok(Report {
        command: "gen",
        inputs: json!({ "d": a.d, "N": a.n, "p": a.p, "seed": a.seed, "seeds": a.seeds }),
        result: json!({ "polynomials": polys, "collisions": collisions }),
        text,
        checks: vec![("distinct", collisions == 0)],
    })
}
