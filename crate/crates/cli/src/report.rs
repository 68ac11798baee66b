//! JSON views of library values and the report envelope.

use serde::Serialize;
use serde_json::Value;

use jetfrob::certificates::{rational_text, ExponentMatrix, MatrixConditions, MatrixRole};
use jetfrob::frobenius::{CertificateCheck, GoodMonomialCertificate};
use jetfrob::jet::JetSystem;
use jetfrob::{PolyMod, VarTable};

pub const SCHEMA_VERSION: u32 = 1;

/// A computed report: echoed inputs, the result, a text rendering and the
/// named expectations available to `--assert`.
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub text: String,
    pub checks: Vec<(&'static str, bool)>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    inputs: &'a Value,
    result: &'a Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            inputs: &self.inputs,
            result: &self.result,
        };
        let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

#[derive(Serialize)]
pub struct TermView {
    pub monomial: String,
    pub coefficient: u32,
}

pub fn terms(poly: &PolyMod) -> Vec<TermView> {
    poly.terms()
        .iter()
        .map(|(m, c)| TermView { monomial: m.render(poly.table()), coefficient: *c })
        .collect()
}

#[derive(Serialize)]
pub struct EquationView {
    pub equation: usize,
    pub j: usize,
    pub text: String,
    pub terms: Vec<TermView>,
}

#[derive(Serialize)]
pub struct JetSystemView {
    pub n: usize,
    pub m: usize,
    pub p: u32,
    pub degree: Option<u32>,
    pub equations: Vec<EquationView>,
}

pub fn jet_system(sys: &JetSystem) -> JetSystemView {
    JetSystemView {
        n: sys.n(),
        m: sys.level(),
        p: sys.p(),
        degree: sys.degree(),
        equations: sys
            .all_equations()
            .map(|((l, j), f)| EquationView { equation: l, j, text: f.render(), terms: terms(f) })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct FactorView {
    pub equation: usize,
    pub j: usize,
    pub terms: Vec<TermView>,
}

#[derive(Serialize)]
pub struct CertificateView {
    pub q: u32,
    pub monomial: String,
    pub coefficient: u32,
    pub provenance: Vec<FactorView>,
}

pub fn certificate(cert: &GoodMonomialCertificate, table: &VarTable) -> CertificateView {
    CertificateView {
        q: cert.q,
        monomial: cert.monomial.render(table),
        coefficient: cert.coefficient,
        provenance: cert
            .provenance
            .iter()
            .map(|c| FactorView {
                equation: c.equation,
                j: c.j,
                terms: c
                    .terms
                    .iter()
                    .map(|(m, a)| TermView { monomial: m.render(table), coefficient: *a })
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct CheckView {
    pub passed: bool,
    pub below_bracket: bool,
    pub provenance_complete: bool,
    pub provenance_terms_valid: bool,
    pub product_matches: bool,
    pub coefficient_matches: bool,
}

pub fn check(c: &CertificateCheck) -> CheckView {
    CheckView {
        passed: c.passed(),
        below_bracket: c.below_bracket,
        provenance_complete: c.provenance_complete,
        provenance_terms_valid: c.provenance_terms_valid,
        product_matches: c.product_matches,
        coefficient_matches: c.coefficient_matches,
    }
}

#[derive(Serialize)]
pub struct MatrixView {
    pub role: MatrixRole,
    pub entries: Vec<Vec<String>>,
    pub row_sums: Vec<String>,
    pub column_sums: Vec<String>,
    pub weighted_column_sums: Vec<String>,
}

fn texts(v: &[num_rational::BigRational]) -> Vec<String> {
    v.iter().map(rational_text).collect()
}

pub fn matrix(m: &ExponentMatrix) -> MatrixView {
    MatrixView {
        role: m.role,
        entries: m.text_rows(),
        row_sums: texts(&m.row_sums()),
        column_sums: texts(&m.column_sums()),
        weighted_column_sums: texts(&m.weighted_column_sums()),
    }
}

pub fn rationals(v: &[num_rational::BigRational]) -> Vec<String> {
    texts(v)
}

pub fn conditions_hold(c: &MatrixConditions) -> bool {
    c.nonnegative
        && c.upper_triangular
        && c.column_sums != Some(false)
        && c.weighted_column_sums
        && c.row_sums_within_n != Some(false)
}

pub fn matrix_text(m: &ExponentMatrix) -> String {
    let rows = m.text_rows();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
            format!("  [ {} ]", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn yes(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}
