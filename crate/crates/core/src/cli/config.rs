//! Run configuration: a flat `key = value` file, overridable by flags.
//!
//! ```text
//! # comment
//! command = gw
//! geometry = x_k
//! k = 1
//! action = antidiagonal
//! degree = 3
//! charges = [[1, 1, 1, -1, -1, -1]]
//! ```
//!
//! Values may span several lines while brackets are open.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_traits::Zero;

use crate::closed::WindowOverride;
use crate::error::{Error, Result};
use crate::exact::rational::parse_rational;
use crate::exact::{Poly, Rational};
use crate::givental::{builtin, Action, Expansion, GeometrySpec, Readout, Restriction, BUILTIN_NAMES};
use crate::series::DegreeBound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Gw,
    VerifyConj1,
    VerifyConj2,
    VerifyProp1,
    VerifyConj3,
    PfCheck,
    Genus1Fit,
    An,
    Trivalent,
    A2Genus1,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::Gw,
        Command::VerifyConj1,
        Command::VerifyConj2,
        Command::VerifyProp1,
        Command::VerifyConj3,
        Command::PfCheck,
        Command::Genus1Fit,
        Command::An,
        Command::Trivalent,
        Command::A2Genus1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Gw => "gw",
            Command::VerifyConj1 => "verify-conj1",
            Command::VerifyConj2 => "verify-conj2",
            Command::VerifyProp1 => "verify-prop1",
            Command::VerifyConj3 => "verify-conj3",
            Command::PfCheck => "pf-check",
            Command::Genus1Fit => "genus1-fit",
            Command::An => "an",
            Command::Trivalent => "trivalent",
            Command::A2Genus1 => "a2-genus1",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Config(format!("unknown command '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    JsonLike,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json-like" | "json" => Ok(OutputFormat::JsonLike),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::Config(format!("unknown format '{s}'"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::JsonLike => "json-like",
            OutputFormat::Text => "text",
        })
    }
}

/// A geometry given by its toric data rather than a builtin name.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitGeometry {
    pub charges: Vec<Vec<i64>>,
    /// Per column, coefficients on `lambdas`.
    pub weights: Vec<Vec<Rational>>,
    pub lambdas: Vec<String>,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub expansions: Option<Vec<Expansion>>,
    /// `(basis monomial, λ monomial, scale)` read for every curve.
    pub readout: Option<(Vec<u32>, Vec<i32>, Rational)>,
}

impl ExplicitGeometry {
    pub fn to_spec(&self) -> Result<GeometrySpec> {
        let relations = self.relations.iter().map(|r| Poly::parse(r, &self.generators)).collect::<Result<Vec<_>>>()?;
        let ncols = self.charges.first().map_or(0, Vec::len);
        let expansions = match &self.expansions {
            Some(e) => e.clone(),
            None => (0..ncols)
                .map(|j| {
                    let col: Vec<i64> = self.charges.iter().map(|r| r.get(j).copied().unwrap_or(0)).collect();
                    GeometrySpec::default_expansion(&col, self.weights.get(j).map_or(&[][..], Vec::as_slice))
                })
                .collect(),
        };
        let readouts = match &self.readout {
            Some((basis, lambda, scale)) => (0..self.charges.len())
                .map(|curve| Readout {
                    curve,
                    restriction: Restriction::identity(&self.lambdas),
                    basis_monomial: basis.clone(),
                    lambda_monomial: lambda.clone(),
                    scale: scale.clone(),
                })
                .collect(),
            None => Vec::new(),
        };
        let spec = GeometrySpec {
            name: "explicit".into(),
            charges: self.charges.clone(),
            weights: self.weights.clone(),
            lambda_names: self.lambdas.clone(),
            generator_names: self.generators.clone(),
            relations,
            expansions,
            readouts,
            action: Action::Generic,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Builtin name; ignored when `explicit` is set.
    pub geometry: Option<String>,
    pub explicit: Option<ExplicitGeometry>,
    pub k: Option<i64>,
    pub n: Option<usize>,
    pub action: Option<Action>,
    /// One entry per variable, or a single entry applied to all.
    pub degree: Option<Vec<u32>>,
    pub lambda_depth: Option<u32>,
    pub hbar_window: Option<(i32, i32)>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

pub const DEFAULT_DEGREE: u32 = 5;

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            geometry: None,
            explicit: None,
            k: None,
            n: None,
            action: None,
            degree: None,
            lambda_depth: None,
            hbar_window: None,
            out: None,
            format: OutputFormat::Text,
        }
    }

    /// Builds a config from parsed `key = value` pairs.
    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self> {
        let command = pairs.get("command").ok_or_else(|| Error::Config("missing 'command'".into()))?.parse()?;
        let mut c = RunConfig::new(command);
        c.apply_pairs(pairs)?;
        Ok(c)
    }

    /// Overwrites fields present in `pairs`.
    pub fn apply_pairs(&mut self, pairs: &BTreeMap<String, String>) -> Result<()> {
        const KNOWN: &[&str] = &[
            "command",
            "geometry",
            "k",
            "n",
            "action",
            "degree",
            "lambda_depth",
            "hbar_window",
            "out",
            "format",
            "charges",
            "weights",
            "lambdas",
            "generators",
            "relations",
            "expansions",
            "readout_basis",
            "readout_lambda",
            "readout_scale",
        ];
        if let Some(k) = pairs.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown key '{k}'")));
        }
        if let Some(v) = pairs.get("command") {
            self.command = v.parse()?;
        }
        if let Some(v) = pairs.get("geometry") {
            self.geometry = Some(v.clone());
        }
        if let Some(v) = pairs.get("k") {
            self.k = Some(parse_int(v, "k")?);
        }
        if let Some(v) = pairs.get("n") {
            self.n = Some(parse_int(v, "n")?);
        }
        if let Some(v) = pairs.get("action") {
            self.action = Some(v.parse()?);
        }
        if let Some(v) = pairs.get("degree") {
            self.degree = Some(parse_degree(v)?);
        }
        if let Some(v) = pairs.get("lambda_depth") {
            self.lambda_depth = Some(parse_int(v, "lambda_depth")?);
        }
        if let Some(v) = pairs.get("hbar_window") {
            let w: Vec<i32> = parse_list(v)?.iter().map(|s| parse_int(s, "hbar_window")).collect::<Result<_>>()?;
            match w[..] {
                [lo, hi] if lo <= hi => self.hbar_window = Some((lo, hi)),
                _ => return Err(Error::Config("hbar_window must be [min, max]".into())),
            }
        }
        if let Some(v) = pairs.get("out") {
            self.out = Some(PathBuf::from(v));
        }
        if let Some(v) = pairs.get("format") {
            self.format = v.parse()?;
        }
        if pairs.contains_key("charges") {
            self.explicit = Some(parse_explicit(pairs)?);
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(g) = &self.geometry {
            if self.explicit.is_none() && g != "explicit" && !BUILTIN_NAMES.contains(&g.as_str()) {
                return Err(Error::Config(format!("unknown geometry '{g}'; expected one of {}", BUILTIN_NAMES.join(", "))));
            }
        }
        if let Some(d) = &self.degree {
            if d.is_empty() || d.contains(&0) {
                return Err(Error::Config("degree must be at least 1 in every variable".into()));
            }
        }
        Ok(())
    }

    /// The geometry named by the config.
    pub fn spec(&self) -> Result<GeometrySpec> {
        if let Some(e) = &self.explicit {
            return e.to_spec();
        }
        let name = self.geometry.as_deref().ok_or_else(|| Error::Config("no geometry given".into()))?;
        let action = self.action.unwrap_or(match name {
            "a_n" | "y_k" => Action::Generic,
            _ => Action::Antidiagonal,
        });
        builtin(name, self.k, self.n, action)
    }

    /// Degree bound for `nvars` variables; a single entry applies to all.
    pub fn bound(&self, nvars: usize, default: u32) -> Result<DegreeBound> {
        let d = self.degree.clone().unwrap_or_else(|| vec![default]);
        match (d.len(), nvars) {
            (1, 1) => Ok(DegreeBound::single(d[0])),
            (1, _) => Ok(DegreeBound::Box(vec![d[0]; nvars])),
            (m, r) if m == r => Ok(DegreeBound::Box(d)),
            (m, r) => Err(Error::Config(format!("degree has {m} entries, geometry has {r} curves"))),
        }
    }

    /// Single total degree for one-variable commands.
    pub fn single_degree(&self, default: u32) -> Result<u32> {
        match self.degree.as_deref() {
            None => Ok(default),
            Some([d]) => Ok(*d),
            Some(_) => Err(Error::Config(format!("{} takes a single degree", self.command))),
        }
    }

    pub fn window_override(&self) -> WindowOverride {
        WindowOverride { lambda_depth: self.lambda_depth, hbar: self.hbar_window }
    }

    /// `key = value` echo of every set field.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("command".into(), self.command.to_string());
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.into(), v);
            }
        };
        put("geometry", if self.explicit.is_some() { Some("explicit".into()) } else { self.geometry.clone() });
        put("k", self.k.map(|x| x.to_string()));
        put("n", self.n.map(|x| x.to_string()));
        put("action", self.action.map(|x| x.to_string()));
        put("degree", self.degree.as_ref().map(|d| d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")));
        put("lambda_depth", self.lambda_depth.map(|x| x.to_string()));
        put("hbar_window", self.hbar_window.map(|(a, b)| format!("[{a}, {b}]")));
        if let Some(e) = &self.explicit {
            put("charges", Some(format!("{:?}", e.charges)));
        }
        m
    }
}

fn parse_int<T: FromStr>(s: &str, key: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Config(format!("'{key}' expects an integer, got '{s}'")))
}

fn parse_rat(s: &str, key: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Config(format!("'{key}' expects a rational, got '{s}'")))
}

/// `5`, `3,3` or `[3, 3]`.
pub fn parse_degree(s: &str) -> Result<Vec<u32>> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',').map(|x| parse_int(x, "degree")).collect()
}

/// Top-level comma-separated items of a bracketed list.
pub fn parse_list(s: &str) -> Result<Vec<String>> {
    let s = s.trim();
    let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| Error::Config(format!("expected a bracketed list, got '{s}'")))?;
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                items.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Config(format!("unbalanced brackets in '{s}'")));
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(Error::Config(format!("unbalanced brackets in '{s}'")));
    }
    if !cur.trim().is_empty() {
        items.push(cur.trim().to_string());
    }
    Ok(items)
}

/// `[[a, b], [c, d]]`.
pub fn parse_matrix<T>(s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<Vec<T>>> {
    parse_list(s)?.iter().map(|row| parse_list(row)?.iter().map(|x| f(x)).collect()).collect()
}

fn names(s: &str) -> Result<Vec<String>> {
    let items = if s.trim().starts_with('[') { parse_list(s)? } else { s.split(',').map(|x| x.trim().to_string()).collect() };
    if items.iter().any(|x| x.is_empty()) {
        return Err(Error::Config(format!("empty name in '{s}'")));
    }
    Ok(items)
}

fn parse_explicit(pairs: &BTreeMap<String, String>) -> Result<ExplicitGeometry> {
    let get = |k: &str| pairs.get(k).ok_or_else(|| Error::Config(format!("explicit geometry needs '{k}'")));
    let charges = parse_matrix(get("charges")?, |x| parse_int::<i64>(x, "charges"))?;
    let ncols = charges.first().map_or(0, Vec::len);
    let lambdas = match pairs.get("lambdas") {
        Some(v) => names(v)?,
        None => Vec::new(),
    };
    let weights = match pairs.get("weights") {
        Some(v) => parse_matrix(v, |x| parse_rat(x, "weights"))?,
        None => vec![Vec::new(); ncols],
    };
    let generators = match pairs.get("generators") {
        Some(v) => names(v)?,
        None => (1..=charges.len()).map(|i| if charges.len() == 1 { "p".to_string() } else { format!("p{i}") }).collect(),
    };
    let relations = names(get("relations")?)?;
    let expansions = match pairs.get("expansions") {
        Some(v) => Some(names(v)?.iter().map(|x| x.parse()).collect::<Result<Vec<Expansion>>>()?),
        None => None,
    };
    let readout = match (pairs.get("readout_basis"), pairs.get("readout_lambda")) {
        (Some(b), Some(l)) => {
            let basis = parse_list(b)?.iter().map(|x| parse_int(x, "readout_basis")).collect::<Result<_>>()?;
            let lambda = parse_list(l)?.iter().map(|x| parse_int(x, "readout_lambda")).collect::<Result<_>>()?;
            let scale = match pairs.get("readout_scale") {
                Some(s) => parse_rat(s, "readout_scale")?,
                None => Rational::from_integer(1.into()),
            };
            if scale.is_zero() {
                return Err(Error::Config("readout_scale must be nonzero".into()));
            }
            Some((basis, lambda, scale))
        }
        (None, None) => None,
        _ => return Err(Error::Config("readout needs both 'readout_basis' and 'readout_lambda'".into())),
    };
    Ok(ExplicitGeometry { charges, weights, lambdas, generators, relations, expansions, readout })
}

fn bracket_balance(s: &str) -> i32 {
    s.chars()
        .map(|c| {
            if c == '[' {
                1
            } else if c == ']' {
                -1
            } else {
                0
            }
        })
        .sum()
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut pending: Option<(usize, String, String)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some((start, key, mut value)) = pending.take() {
            value.push(' ');
            value.push_str(line);
            if bracket_balance(&value) > 0 {
                pending = Some((start, key, value));
            } else {
                out.insert(key, value.trim().to_string());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse { line: line_no, message: format!("expected 'key = value', got '{line}'") })?;
        let key = key.trim().to_string();
        if key.is_empty() {
            return Err(Error::Parse { line: line_no, message: "empty key".into() });
        }
        if out.contains_key(&key) {
            return Err(Error::Parse { line: line_no, message: format!("duplicate key '{key}'") });
        }
        let value = value.trim().to_string();
        if bracket_balance(&value) > 0 {
            pending = Some((line_no, key, value));
        } else {
            out.insert(key, value);
        }
    }
    if let Some((line, key, _)) = pending {
        return Err(Error::Parse { line, message: format!("unterminated bracket in '{key}'") });
    }
    Ok(out)
}
