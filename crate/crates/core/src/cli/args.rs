use std::path::PathBuf;

use clap::Parser;

use super::config::{parse_config, parse_degree, Command, RunConfig};
use crate::error::{Error, Result};

/// Exact equivariant local mirror symmetry checks.
#[derive(Debug, Clone, Parser)]
#[command(name = "localmirror", version, about)]
pub struct Args {
    /// One of gw, verify-conj1, verify-conj2, verify-prop1, verify-conj3,
    /// pf-check, genus1-fit, an, trivalent, a2-genus1.
    pub command: Option<String>,
    /// Builtin geometry: x_k, x_k_factored, d1, a_n, trivalent, y_k.
    #[arg(long)]
    pub geometry: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<i64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// antidiagonal, diagonal or generic.
    #[arg(long)]
    pub action: Option<String>,
    /// `D` or a box `D1,D2,…`.
    #[arg(long)]
    pub degree: Option<String>,
    #[arg(long)]
    pub lambda_depth: Option<u32>,
    /// `key = value` config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Path of the structured report.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// json-like or text.
    #[arg(long)]
    pub format: Option<String>,
}

impl Args {
    pub fn to_config(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                let pairs = parse_config(&text)?;
                match (&self.command, pairs.contains_key("command")) {
                    (_, true) => RunConfig::from_pairs(&pairs)?,
                    (Some(cmd), false) => {
                        let mut c = RunConfig::new(cmd.parse()?);
                        c.apply_pairs(&pairs)?;
                        c
                    }
                    (None, false) => return Err(Error::Config("no command given".into())),
                }
            }
            None => RunConfig::new(self.command.as_deref().ok_or_else(|| Error::Config("no command given".into()))?.parse::<Command>()?),
        };
        if let Some(cmd) = &self.command {
            c.command = cmd.parse()?;
        }
        if let Some(g) = &self.geometry {
            c.geometry = Some(g.clone());
            c.explicit = None;
        }
        if self.k.is_some() {
            c.k = self.k;
        }
        if self.n.is_some() {
            c.n = self.n;
        }
        if let Some(a) = &self.action {
            c.action = Some(a.parse()?);
        }
        if let Some(d) = &self.degree {
            c.degree = Some(parse_degree(d)?);
        }
        if self.lambda_depth.is_some() {
            c.lambda_depth = self.lambda_depth;
        }
        if let Some(o) = &self.out {
            c.out = Some(o.clone());
        }
        if let Some(f) = &self.format {
            c.format = f.parse()?;
        }
        Ok(c)
    }
}
