//! Toric input data: charge matrix, equivariant weights, cohomology relations,
//! and the readouts that turn `W` into Gromov-Witten numbers.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{algebra_from_relations, int, CoeffRing, CohomAlgebra, Poly, Rational, Window};

/// How reciprocal factors of a column are expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    /// Laurent expansion in `1/ħ`.
    HbarInfinity,
    /// Laurent expansion in `1/λ` (the column's weight).
    LambdaInfinity,
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expansion::HbarInfinity => "hbar",
            Expansion::LambdaInfinity => "lambda",
        })
    }
}

impl FromStr for Expansion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hbar" | "h" => Ok(Expansion::HbarInfinity),
            "lambda" | "l" => Ok(Expansion::LambdaInfinity),
            _ => Err(Error::Config(format!("unknown expansion '{s}'"))),
        }
    }
}

/// Torus action preset on the two fibre weights of the X_k family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Generic,
    /// `λ1 = λ, λ2 = -λ`
    Antidiagonal,
    /// `λ1 = λ2 = λ`
    Diagonal,
}

impl Action {
    /// Images `(c1, c2)` of `λ1, λ2` as multiples of `λ`.
    pub fn coefficients(self) -> Option<(i64, i64)> {
        match self {
            Action::Generic => None,
            Action::Antidiagonal => Some((1, -1)),
            Action::Diagonal => Some((1, 1)),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Generic => "generic",
            Action::Antidiagonal => "antidiagonal",
            Action::Diagonal => "diagonal",
        })
    }
}

impl FromStr for Action {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Action::Generic),
            "antidiagonal" | "anti" => Ok(Action::Antidiagonal),
            "diagonal" | "diag" => Ok(Action::Diagonal),
            _ => Err(Error::Config(format!("unknown action '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaImage {
    Zero,
    Scaled { target: usize, coeff: Rational },
}

/// A specialization `p_i → 0`, `λ_j → c·λ'_t` or `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub zero_generators: Vec<usize>,
    pub lambda_images: Vec<LambdaImage>,
    pub target_lambdas: Vec<String>,
}

impl Restriction {
    pub fn identity(lambda_names: &[String]) -> Self {
        Restriction {
            zero_generators: Vec::new(),
            lambda_images: (0..lambda_names.len()).map(|t| LambdaImage::Scaled { target: t, coeff: Rational::one() }).collect(),
            target_lambdas: lambda_names.to_vec(),
        }
    }
}

/// Reads `∂F/∂t_curve` off one restricted monomial of `W`, times `scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Readout {
    pub curve: usize,
    pub restriction: Restriction,
    pub basis_monomial: Vec<u32>,
    pub lambda_monomial: Vec<i32>,
    pub scale: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometrySpec {
    pub name: String,
    /// Rows are curve classes, columns are toric divisors.
    pub charges: Vec<Vec<i64>>,
    /// Per column, the weight as coefficients on `lambda_names`.
    pub weights: Vec<Vec<Rational>>,
    pub lambda_names: Vec<String>,
    pub generator_names: Vec<String>,
    pub relations: Vec<Poly>,
    pub expansions: Vec<Expansion>,
    pub readouts: Vec<Readout>,
    pub action: Action,
}

impl GeometrySpec {
    pub fn nrows(&self) -> usize {
        self.charges.len()
    }

    pub fn ncols(&self) -> usize {
        self.charges.first().map_or(0, Vec::len)
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.charges.iter().map(|r| r[j]).collect()
    }

    pub fn is_weighted(&self, j: usize) -> bool {
        self.weights[j].iter().any(|c| !c.is_zero())
    }

    /// Columns without an equivariant weight.
    pub fn compact_columns(&self) -> Vec<usize> {
        (0..self.ncols()).filter(|j| !self.is_weighted(*j)).collect()
    }

    /// Columns carrying an equivariant weight.
    pub fn noncompact_columns(&self) -> Vec<usize> {
        (0..self.ncols()).filter(|j| self.is_weighted(*j)).collect()
    }

    /// Default rule: a weighted column whose charges are all nonnegative (and
    /// not all zero) is expanded at `λ = ∞`, everything else at `ħ = ∞`.
    pub fn default_expansion(column: &[i64], weight: &[Rational]) -> Expansion {
        let weighted = weight.iter().any(|c| !c.is_zero());
        if weighted && column.iter().all(|c| *c >= 0) && column.iter().any(|c| *c > 0) {
            Expansion::LambdaInfinity
        } else {
            Expansion::HbarInfinity
        }
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.nrows();
        let n = self.ncols();
        if r == 0 || n == 0 {
            return Err(Error::Config("empty charge matrix".into()));
        }
        if self.charges.iter().any(|row| row.len() != n) {
            return Err(Error::Config("charge rows have different lengths".into()));
        }
        if self.weights.len() != n || self.expansions.len() != n {
            return Err(Error::Config(format!("expected {n} weights and expansions")));
        }
        if self.generator_names.len() != r {
            return Err(Error::Config(format!("expected {r} generator names")));
        }
        let m = self.lambda_names.len();
        if self.weights.iter().any(|w| w.len() != m) {
            return Err(Error::Config("weight does not match the λ list".into()));
        }
        for (j, name) in self.lambda_names.iter().enumerate() {
            if !self.weights.iter().any(|w| !w[j].is_zero()) {
                return Err(Error::Config(format!("λ '{name}' is not attached to any column")));
            }
        }
        for (j, e) in self.expansions.iter().enumerate() {
            if *e == Expansion::LambdaInfinity {
                let w = &self.weights[j];
                if w.iter().filter(|c| !c.is_zero()).count() != 1 {
                    return Err(Error::Config(format!("column {} needs exactly one λ for λ-expansion", j + 1)));
                }
            }
        }
        for ro in &self.readouts {
            if ro.curve >= r || ro.restriction.lambda_images.len() != m || ro.basis_monomial.len() != r {
                return Err(Error::Config("malformed readout".into()));
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> Result<CohomAlgebra> {
        algebra_from_relations(&self.generator_names, &self.relations, 4 * self.nrows() as u32 + 8)
    }

    pub fn coefficient_ring(&self, window: Window) -> Result<Arc<CoeffRing>> {
        Ok(CoeffRing::new(Arc::new(self.algebra()?), self.lambda_names.clone(), window))
    }

    /// Substitutes an action preset into a spec with weights on `λ1, λ2`.
    pub fn specialize(&self, action: Action) -> Result<GeometrySpec> {
        let Some((c1, c2)) = action.coefficients() else {
            return Ok(GeometrySpec { action, ..self.clone() });
        };
        if self.lambda_names.len() != 2 {
            return Err(Error::Config(format!("action '{action}' needs exactly two weights, {} has {}", self.name, self.lambda_names.len())));
        }
        let weights = self.weights.iter().map(|w| vec![&w[0] * int(c1) + &w[1] * int(c2)]).collect();
        Ok(GeometrySpec { weights, lambda_names: vec!["l".into()], action, readouts: Vec::new(), ..self.clone() })
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn products_vanish(n: usize) -> Vec<Poly> {
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut e = vec![0; n];
            e[i] += 1;
            e[j] += 1;
            rels.push(Poly::monomial(e, Rational::one()));
        }
    }
    rels
}

fn weight(m: usize, j: Option<usize>, c: i64) -> Vec<Rational> {
    let mut w = vec![Rational::zero(); m];
    if let Some(j) = j {
        w[j] = int(c);
    }
    w
}

fn with_default_expansions(mut spec: GeometrySpec) -> GeometrySpec {
    spec.expansions = (0..spec.ncols()).map(|j| GeometrySpec::default_expansion(&spec.column(j), &spec.weights[j])).collect();
    spec
}

/// Readout for the one-curve families: the scalar `λ1λ2` part of `W`
/// (or `λ2²` when the λ1 bundle is trivial), divided by its specialization.
fn single_curve_readout(spec: &GeometrySpec, trivial_first: bool) -> Vec<Readout> {
    let restriction = Restriction::identity(&spec.lambda_names);
    let (lambda_monomial, scale) = match spec.action.coefficients() {
        None => (if trivial_first { vec![0, 2] } else { vec![1, 1] }, Rational::one()),
        Some((c1, c2)) => {
            let kappa = if trivial_first { c2 * c2 } else { c1 * c2 };
            (vec![2], int(kappa).recip())
        }
    };
    vec![Readout { curve: 0, restriction, basis_monomial: vec![0], lambda_monomial, scale }]
}

fn x_family(name: String, row: Vec<i64>, weights: Vec<Vec<Rational>>, action: Action, trivial_first: bool) -> Result<GeometrySpec> {
    let base = with_default_expansions(GeometrySpec {
        name,
        charges: vec![row],
        weights,
        lambda_names: vec!["l1".into(), "l2".into()],
        generator_names: names("p", 1),
        relations: vec![Poly::monomial(vec![2], Rational::one())],
        expansions: Vec::new(),
        readouts: Vec::new(),
        action: Action::Generic,
    });
    let mut spec = base.specialize(action)?;
    spec.readouts = single_curve_readout(&spec, trivial_first);
    Ok(spec)
}

/// `O(k) ⊕ O(-2-k) → P¹`, weights `(λ1, λ2)` on the two fibres.
pub fn x_k(k: i64, action: Action) -> Result<GeometrySpec> {
    if k < -1 {
        return Err(Error::Config(format!("x_k needs k ≥ -1, got {k}")));
    }
    let w = vec![weight(2, None, 0), weight(2, None, 0), weight(2, Some(0), 1), weight(2, Some(1), 1)];
    x_family(format!("x_k({k})"), vec![1, 1, k, -2 - k], w, action, k == 0)
}

/// `O(1)^k ⊕ O(-1)^{2+k} → P¹`, weight `λ1` on every `O(1)` and `λ2` on every `O(-1)`.
pub fn x_k_factored(k: i64, action: Action) -> Result<GeometrySpec> {
    if k < 0 {
        return Err(Error::Config(format!("x_k_factored needs k ≥ 0, got {k}")));
    }
    let mut row = vec![1, 1];
    let mut w = vec![weight(2, None, 0), weight(2, None, 0)];
    for _ in 0..k {
        row.push(1);
        w.push(weight(2, Some(0), 1));
    }
    for _ in 0..k + 2 {
        row.push(-1);
        w.push(weight(2, Some(1), 1));
    }
    x_family(format!("x_k_factored({k})"), row, w, action, k == 0)
}

/// `O(1) ⊕ O(-1) ⊕ O(-2) → P¹`.
pub fn d1(action: Action) -> Result<GeometrySpec> {
    let w = vec![weight(2, None, 0), weight(2, None, 0), weight(2, Some(0), 1), weight(2, Some(1), 1), weight(2, Some(1), 1)];
    x_family("d1".into(), vec![1, 1, 1, -1, -2], w, action, false)
}

/// Resolved `A_n` surface singularity times `C`, weights `λ_i` on the middle columns.
pub fn a_n(n: usize) -> Result<GeometrySpec> {
    if n == 0 {
        return Err(Error::Config("a_n needs n ≥ 1".into()));
    }
    let cols = n + 2;
    let mut charges = vec![vec![0i64; cols]; n];
    for (i, row) in charges.iter_mut().enumerate() {
        row[i] = 1;
        row[i + 1] = -2;
        row[i + 2] = 1;
    }
    let mut weights = vec![weight(n, None, 0)];
    for j in 0..n {
        weights.push(weight(n, Some(j), 1));
    }
    weights.push(weight(n, None, 0));
    let lambda_names = names("l", n);
    let mut spec = with_default_expansions(GeometrySpec {
        name: format!("a_n({n})"),
        charges,
        weights,
        lambda_names: lambda_names.clone(),
        generator_names: names("p", n),
        relations: products_vanish(n),
        expansions: Vec::new(),
        readouts: Vec::new(),
        action: Action::Generic,
    });
    spec.readouts = (0..n)
        .map(|i| {
            let mut lambda_monomial = vec![0; n];
            lambda_monomial[i] = 2;
            Readout {
                curve: i,
                restriction: Restriction {
                    zero_generators: (0..n).filter(|j| *j != i).collect(),
                    lambda_images: (0..n).map(|j| if j == i { LambdaImage::Scaled { target: j, coeff: Rational::one() } } else { LambdaImage::Zero }).collect(),
                    target_lambdas: lambda_names.clone(),
                },
                basis_monomial: vec![0; n],
                lambda_monomial,
                scale: Rational::one(),
            }
        })
        .collect();
    Ok(spec)
}

/// Three (-1,-1) curves meeting in a point, weights `λ1..λ3` on the
/// noncompact columns. The action selects the restrictions used for readouts:
/// curve `i` is isolated by `λ_i = 0` and `p_j = 0` for `j ≠ i`.
pub fn trivalent(action: Action) -> Result<GeometrySpec> {
    let charges = vec![vec![1, 0, 0, 1, -1, -1], vec![0, 1, 0, -1, 1, -1], vec![0, 0, 1, -1, -1, 1]];
    let mut weights = vec![weight(3, None, 0); 3];
    for j in 0..3 {
        weights.push(weight(3, Some(j), 1));
    }
    let mut spec = with_default_expansions(GeometrySpec {
        name: "trivalent".into(),
        charges,
        weights,
        lambda_names: names("l", 3),
        generator_names: names("p", 3),
        relations: products_vanish(3),
        expansions: Vec::new(),
        readouts: Vec::new(),
        action,
    });
    let signs = match action {
        Action::Generic => None,
        Action::Diagonal => Some((1, 1)),
        Action::Antidiagonal => Some((1, -1)),
    };
    if let Some((ca, cb)) = signs {
        spec.readouts = (0..3)
            .map(|i| {
                let mut images = vec![LambdaImage::Zero; 3];
                images[(i + 1) % 3] = LambdaImage::Scaled { target: 0, coeff: int(ca) };
                images[(i + 2) % 3] = LambdaImage::Scaled { target: 0, coeff: int(cb) };
                Readout {
                    curve: i,
                    restriction: Restriction { zero_generators: (0..3).filter(|j| *j != i).collect(), lambda_images: images, target_lambdas: vec!["l".into()] },
                    basis_monomial: vec![0; 3],
                    lambda_monomial: vec![2],
                    scale: int(ca * cb).recip(),
                }
            })
            .collect();
    }
    Ok(spec)
}

/// Projective bundle `P(O ⊕ O(k)) ⊕ …` form of `X_k` under the diagonal action.
pub fn y_k(k: i64) -> Result<GeometrySpec> {
    let gens = names("p", 2);
    let rel2 = Poly::parse(&format!("p2*({k}*p1+p2)*(p2-{}*p1)", 2 + k), &gens)?;
    let spec = with_default_expansions(GeometrySpec {
        name: format!("y_k({k})"),
        charges: vec![vec![1, 1, k, -2 - k, 0], vec![0, 0, 1, 1, 1]],
        weights: vec![Vec::new(); 5],
        lambda_names: Vec::new(),
        generator_names: gens,
        relations: vec![Poly::monomial(vec![2, 0], Rational::one()), rel2],
        expansions: Vec::new(),
        readouts: vec![Readout {
            curve: 0,
            restriction: Restriction::identity(&[]),
            basis_monomial: vec![0, 2],
            lambda_monomial: Vec::new(),
            scale: Rational::one(),
        }],
        action: Action::Generic,
    });
    Ok(spec)
}

/// Builtin factory by name.
pub fn builtin(name: &str, k: Option<i64>, n: Option<usize>, action: Action) -> Result<GeometrySpec> {
    let need_k = || k.ok_or_else(|| Error::Config(format!("geometry '{name}' needs --k")));
    match name {
        "x_k" => x_k(need_k()?, action),
        "x_k_factored" => x_k_factored(need_k()?, action),
        "d1" => d1(action),
        "a_n" => {
            if action != Action::Generic {
                return Err(Error::Config("a_n supports only the generic action".into()));
            }
            a_n(n.ok_or_else(|| Error::Config("geometry 'a_n' needs --n".into()))?)
        }
        "trivalent" => trivalent(action),
        "y_k" => {
            if action == Action::Antidiagonal {
                return Err(Error::Config("y_k models the diagonal action only".into()));
            }
            y_k(need_k()?)
        }
        _ => Err(Error::Config(format!("unknown geometry '{name}'"))),
    }
}

pub const BUILTIN_NAMES: &[&str] = &["x_k", "x_k_factored", "d1", "a_n", "trivalent", "y_k"];
