use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use jetfrob::field;
use jetfrob::general::{gen_general_type, GeneralTypePolynomial};
use jetfrob::poly::text;
use jetfrob::{PolyMod, VarTable};

use crate::error::{CliError, CliResult};

/// Where the defining polynomials come from.
#[derive(Debug, Clone, Args)]
pub struct PolyInput {
    /// A defining polynomial; repeat for a complete intersection.
    #[arg(long = "f", value_name = "POLY")]
    pub f: Vec<String>,
    /// File with polynomials separated by `;`.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// A seeded general-type form `d,N,seed` over F_p.
    #[arg(long, value_name = "d,N,SEED")]
    pub general: Option<String>,
    /// Number of base variables (default: largest index used).
    #[arg(long = "n", visible_alias = "N", value_name = "N")]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EchoedInput {
    pub p: u32,
    pub n: usize,
    pub f: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub general: Option<GeneralTypePolynomial>,
}

pub struct Loaded {
    pub polys: Vec<PolyMod>,
    pub echo: EchoedInput,
}

pub fn check_prime(p: u32) -> CliResult<u32> {
    Ok(field::check_prime(p as u64)?)
}

fn parse_general(spec: &str) -> CliResult<(usize, usize, u64)> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("--general expects d,N,seed, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
    ))
}

impl PolyInput {
    pub fn load(&self, p: u32) -> CliResult<Loaded> {
        check_prime(p)?;
        let mut sources: Vec<String> = self.f.clone();
        if let Some(path) = &self.input {
            let content = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            sources.extend(
                content.split(';').filter(|s| !s.trim().is_empty()).map(|s| s.trim().to_string()),
            );
        }
        let mut general = None;
        let mut polys = Vec::new();
        if let Some(spec) = &self.general {
            let (d, n, seed) = parse_general(spec)?;
            let g = gen_general_type(d, n, p, seed)?;
            polys.push(g.to_poly()?);
            general = Some(g);
        }
        for src in &sources {
            polys.push(text::parse(src, p, None)?);
        }
        if polys.is_empty() {
            return Err(CliError::Usage("no polynomial given (use --f, --input or --general)".into()));
        }
        let inferred = polys.iter().map(|f| f.table().n).max().unwrap_or(1);
        let level = polys.iter().map(|f| f.table().m).max().unwrap_or(0);
        let n = match self.n {
            Some(n) if n < inferred => {
                return Err(CliError::Core(jetfrob::Error::Malformed(format!(
                    "--n {n} is smaller than the largest variable index {inferred}"
                ))))
            }
            Some(n) => n,
            None => inferred,
        };
        let table = VarTable::new(n, level)?;
        let polys: Vec<PolyMod> = polys
            .iter()
            .map(|f| f.remap(table, |k| Some(table.index(f.table().var(k).0, f.table().var(k).1))))
            .collect();
        let echo = EchoedInput { p, n, f: polys.iter().map(PolyMod::render).collect(), general };
        Ok(Loaded { polys, echo })
    }
}

/// Parses a test element or other polynomial inside a given table.
pub fn parse_in(src: &str, p: u32, table: VarTable) -> CliResult<PolyMod> {
    Ok(text::parse(src, p, Some(table))?)
}
