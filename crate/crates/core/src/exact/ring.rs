//! The coefficient tower: cohomology algebra ⊗ λ-Laurent ⊗ ħ-Laurent.
//!
//! Every element carries an exactness region. Terms are only trusted for
//! total λ-degree at or above `lambda_floor`, and ħ-degree within
//! `[hbar_floor, hbar_ceil]`. Truncation (window clipping or a finite
//! expansion) narrows the region, and products propagate it:
//! if `a` is exact above `fa` and `b` has top degree `tb`, the product is
//! exact above `max(fa + tb, fb + ta)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::algebra::CohomAlgebra;
use super::rational::{pow, render_compact, Rational};
use crate::error::{Error, Result};

/// Retention window applied after every operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    /// Terms with total λ-degree below `-lambda_depth` are discarded.
    pub lambda_depth: u32,
    pub hbar_min: i32,
    pub hbar_max: i32,
}

impl Window {
    pub fn new(lambda_depth: u32, hbar_min: i32, hbar_max: i32) -> Self {
        Window { lambda_depth, hbar_min, hbar_max }
    }

    /// A window wide enough that nothing in a small computation is clipped.
    pub fn wide() -> Self {
        Window { lambda_depth: 64, hbar_min: -64, hbar_max: 64 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffRing {
    algebra: Arc<CohomAlgebra>,
    lambda_names: Vec<String>,
    window: Window,
}

impl CoeffRing {
    pub fn new(algebra: Arc<CohomAlgebra>, lambda_names: Vec<String>, window: Window) -> Arc<Self> {
        Arc::new(CoeffRing { algebra, lambda_names, window })
    }

    pub fn algebra(&self) -> &CohomAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<CohomAlgebra> {
        &self.algebra
    }

    pub fn lambda_names(&self) -> &[String] {
        &self.lambda_names
    }

    pub fn nlambda(&self) -> usize {
        self.lambda_names.len()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Same algebra and λ-names under a different window.
    pub fn with_window(&self, window: Window) -> Arc<Self> {
        CoeffRing::new(self.algebra.clone(), self.lambda_names.clone(), window)
    }

    /// Rings are compatible when algebra, names and window agree.
    pub fn compatible(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other)
            || ((Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
                && self.lambda_names == other.lambda_names
                && self.window == other.window)
    }
}

/// Monomial index: cohomology basis element, λ-exponents, ħ-exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub basis: usize,
    pub lambda: Vec<i32>,
    pub hbar: i32,
}

impl Key {
    pub fn lambda_degree(&self) -> i32 {
        self.lambda.iter().sum()
    }
}

/// Region in which the stored coefficients are known exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Exactness {
    pub lambda_floor: Option<i32>,
    pub hbar_floor: Option<i32>,
    pub hbar_ceil: Option<i32>,
}

fn max_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn min_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Exactness {
    pub fn exact() -> Self {
        Exactness::default()
    }

    pub fn is_exact(&self) -> bool {
        *self == Exactness::default()
    }

    pub fn covers(&self, lambda_degree: i32, hbar: i32) -> bool {
        self.lambda_floor.is_none_or(|f| lambda_degree >= f) && self.hbar_floor.is_none_or(|f| hbar >= f) && self.hbar_ceil.is_none_or(|c| hbar <= c)
    }

    fn meet(self, o: Exactness) -> Exactness {
        Exactness {
            lambda_floor: max_opt(self.lambda_floor, o.lambda_floor),
            hbar_floor: max_opt(self.hbar_floor, o.hbar_floor),
            hbar_ceil: min_opt(self.hbar_ceil, o.hbar_ceil),
        }
    }
}

#[derive(Clone)]
pub struct RingElem {
    ring: Arc<CoeffRing>,
    terms: BTreeMap<Key, Rational>,
    exact: Exactness,
}

impl PartialEq for RingElem {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && self.exact == o.exact
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if !self.exact.is_exact() {
            write!(f, " [{:?}]", self.exact)?;
        }
        Ok(())
    }
}

impl RingElem {
    pub fn zero(ring: &Arc<CoeffRing>) -> Self {
        RingElem { ring: ring.clone(), terms: BTreeMap::new(), exact: Exactness::exact() }
    }

    pub fn constant(ring: &Arc<CoeffRing>, c: Rational) -> Self {
        let mut e = RingElem::zero(ring);
        e.insert(Key { basis: 0, lambda: vec![0; ring.nlambda()], hbar: 0 }, c);
        e.clip();
        e
    }

    pub fn one(ring: &Arc<CoeffRing>) -> Self {
        RingElem::constant(ring, Rational::one())
    }

    pub fn monomial(ring: &Arc<CoeffRing>, key: Key, c: Rational) -> Self {
        let mut e = RingElem::zero(ring);
        e.insert(key, c);
        e.clip();
        e
    }

    /// `c · λ_j`.
    pub fn lambda(ring: &Arc<CoeffRing>, j: usize, c: Rational) -> Self {
        let mut lambda = vec![0; ring.nlambda()];
        lambda[j] = 1;
        RingElem::monomial(ring, Key { basis: 0, lambda, hbar: 0 }, c)
    }

    /// `c · ħ^k`.
    pub fn hbar(ring: &Arc<CoeffRing>, k: i32, c: Rational) -> Self {
        RingElem::monomial(ring, Key { basis: 0, lambda: vec![0; ring.nlambda()], hbar: k }, c)
    }

    /// `c · p_i` in normal form.
    pub fn generator(ring: &Arc<CoeffRing>, i: usize, c: Rational) -> Self {
        let mut e = RingElem::zero(ring);
        for (b, v) in ring.algebra().generator(i) {
            e.insert(Key { basis: b, lambda: vec![0; ring.nlambda()], hbar: 0 }, v * &c);
        }
        e.clip();
        e
    }

    /// `c · (basis element b)`.
    pub fn basis_element(ring: &Arc<CoeffRing>, b: usize, c: Rational) -> Self {
        RingElem::monomial(ring, Key { basis: b, lambda: vec![0; ring.nlambda()], hbar: 0 }, c)
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exactness(&self) -> Exactness {
        self.exact
    }

    /// True when some truncation has occurred.
    pub fn is_truncated(&self) -> bool {
        !self.exact.is_exact()
    }

    pub fn coefficient(&self, key: &Key) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    fn insert(&mut self, key: Key, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Drops terms outside the window or the exact region, recording the cut.
    fn clip(&mut self) {
        let w = self.ring.window;
        let floor = -(w.lambda_depth as i32);
        let mut cut_lambda = false;
        let mut cut_lo = false;
        let mut cut_hi = false;
        let exact = self.exact;
        self.terms.retain(|k, _| {
            let ld = k.lambda_degree();
            if ld < floor {
                cut_lambda = true;
                return false;
            }
            if k.hbar < w.hbar_min {
                cut_lo = true;
                return false;
            }
            if k.hbar > w.hbar_max {
                cut_hi = true;
                return false;
            }
            exact.covers(ld, k.hbar)
        });
        if cut_lambda {
            self.exact.lambda_floor = max_opt(self.exact.lambda_floor, Some(floor));
        }
        if cut_lo {
            self.exact.hbar_floor = max_opt(self.exact.hbar_floor, Some(w.hbar_min));
        }
        if cut_hi {
            self.exact.hbar_ceil = min_opt(self.exact.hbar_ceil, Some(w.hbar_max));
        }
    }

    fn assert_same(&self, o: &RingElem) {
        assert!(self.ring.compatible(&o.ring), "ring elements from incompatible coefficient rings");
    }

    pub fn lambda_top(&self) -> Option<i32> {
        self.terms.keys().map(Key::lambda_degree).max()
    }

    pub fn hbar_top(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.hbar).max()
    }

    pub fn hbar_bottom(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.hbar).min()
    }

    /// Checked product; errors on mismatched rings.
    pub fn checked_mul(&self, o: &RingElem) -> Result<RingElem> {
        if !self.ring.compatible(&o.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul_unchecked(o))
    }

    pub fn checked_add(&self, o: &RingElem) -> Result<RingElem> {
        if !self.ring.compatible(&o.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.add_unchecked(o, false))
    }

    fn add_unchecked(&self, o: &RingElem, negate: bool) -> RingElem {
        let mut r = self.clone();
        r.exact = self.exact.meet(o.exact);
        for (k, v) in &o.terms {
            r.insert(k.clone(), if negate { -v.clone() } else { v.clone() });
        }
        r.clip();
        r
    }

    fn product_exactness(&self, o: &RingElem) -> Exactness {
        let lam = |fa: Option<i32>, tb: Option<i32>| -> Option<i32> {
            match (fa, tb) {
                (Some(f), Some(t)) => Some(f + t),
                (Some(_), None) => None,
                (None, _) => None,
            }
        };
        let ceil = |ca: Option<i32>, bb: Option<i32>| -> Option<i32> {
            match (ca, bb) {
                (Some(c), Some(b)) => Some(c + b),
                _ => None,
            }
        };
        // a zero factor with an unknown tail still poisons the product region
        let or_tail = |bound: Option<i32>, o: &RingElem, tail: Option<i32>| -> Option<i32> {
            if o.is_zero() {
                tail
            } else {
                bound
            }
        };
        let l1 = lam(self.exact.lambda_floor, or_tail(o.lambda_top(), o, o.exact.lambda_floor.map(|f| f - 1)));
        let l2 = lam(o.exact.lambda_floor, or_tail(self.lambda_top(), self, self.exact.lambda_floor.map(|f| f - 1)));
        let h1 = lam(self.exact.hbar_floor, or_tail(o.hbar_top(), o, o.exact.hbar_ceil));
        let h2 = lam(o.exact.hbar_floor, or_tail(self.hbar_top(), self, self.exact.hbar_ceil));
        let c1 = ceil(self.exact.hbar_ceil, or_tail(o.hbar_bottom(), o, o.exact.hbar_floor));
        let c2 = ceil(o.exact.hbar_ceil, or_tail(self.hbar_bottom(), self, self.exact.hbar_floor));
        Exactness { lambda_floor: max_opt(l1, l2), hbar_floor: max_opt(h1, h2), hbar_ceil: min_opt(c1, c2) }
    }

    fn mul_unchecked(&self, o: &RingElem) -> RingElem {
        let alg = self.ring.algebra();
        let w = self.ring.window;
        let floor = -(w.lambda_depth as i32);
        let exact = self.product_exactness(o);
        let mut acc: BTreeMap<Key, Rational> = BTreeMap::new();
        let mut cut = Exactness::exact();
        for (ka, va) in &self.terms {
            for (kb, vb) in &o.terms {
                let hbar = ka.hbar + kb.hbar;
                let lambda: Vec<i32> = ka.lambda.iter().zip(&kb.lambda).map(|(x, y)| x + y).collect();
                let ld: i32 = lambda.iter().sum();
                if ld < floor {
                    cut.lambda_floor = Some(floor);
                    continue;
                }
                if hbar < w.hbar_min {
                    cut.hbar_floor = Some(w.hbar_min);
                    continue;
                }
                if hbar > w.hbar_max {
                    cut.hbar_ceil = Some(w.hbar_max);
                    continue;
                }
                if !exact.covers(ld, hbar) {
                    continue;
                }
                let prod = alg.product(ka.basis, kb.basis);
                if prod.is_empty() {
                    continue;
                }
                let vv = va * vb;
                for (b, c) in prod {
                    let key = Key { basis: *b, lambda: lambda.clone(), hbar };
                    let slot = acc.entry(key).or_insert_with(Rational::zero);
                    *slot += &vv * c;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        RingElem { ring: self.ring.clone(), terms: acc, exact: exact.meet(cut) }
    }

    pub fn scale(&self, c: &Rational) -> RingElem {
        let mut r = self.clone();
        if c.is_zero() {
            r.terms.clear();
        } else {
            for v in r.terms.values_mut() {
                *v *= c;
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> RingElem {
        let mut r = RingElem::one(&self.ring);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Multiplies by `ħ^k`, shifting the exact region accordingly.
    pub fn shift_hbar(&self, k: i32) -> RingElem {
        let mut r = RingElem::zero(&self.ring);
        r.exact = Exactness {
            lambda_floor: self.exact.lambda_floor,
            hbar_floor: self.exact.hbar_floor.map(|f| f + k),
            hbar_ceil: self.exact.hbar_ceil.map(|c| c + k),
        };
        for (key, v) in &self.terms {
            r.insert(Key { hbar: key.hbar + k, ..key.clone() }, v.clone());
        }
        r.clip();
        r
    }

    /// Coefficient of `ħ^k`, as an element with ħ-exponent 0.
    pub fn hbar_coefficient(&self, k: i32) -> RingElem {
        let mut r = RingElem::zero(&self.ring);
        r.exact.lambda_floor = self.exact.lambda_floor;
        if !self.exact.covers(i32::MAX, k) {
            // nothing at this ħ-order is known
            r.exact.lambda_floor = Some(i32::MAX / 4);
        }
        for (key, v) in &self.terms {
            if key.hbar == k {
                r.insert(Key { hbar: 0, ..key.clone() }, v.clone());
            }
        }
        r
    }

    /// Declares everything below `ħ^floor` unknown.
    pub fn with_hbar_floor(&self, floor: i32) -> RingElem {
        let mut r = self.clone();
        r.exact.hbar_floor = max_opt(r.exact.hbar_floor, Some(floor));
        r.clip();
        r
    }

    /// Terms whose ħ-exponent satisfies `pred`.
    pub fn filter_hbar(&self, pred: impl Fn(i32) -> bool) -> RingElem {
        let mut r = self.clone();
        r.terms.retain(|k, _| pred(k.hbar));
        r
    }

    /// Component along basis element `b`, returned as a scalar multiple of 1.
    pub fn basis_component(&self, b: usize) -> RingElem {
        let mut r = RingElem::zero(&self.ring);
        r.exact = self.exact;
        for (key, v) in &self.terms {
            if key.basis == b {
                r.insert(Key { basis: 0, ..key.clone() }, v.clone());
            }
        }
        r
    }

    /// True when every term lies on the unit basis element.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|k| k.basis == 0)
    }

    /// The value if this is a rational constant (no cohomology, λ or ħ).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (k, v) = self.terms.iter().next()?;
                (k.basis == 0 && k.hbar == 0 && k.lambda.iter().all(|e| *e == 0)).then(|| v.clone())
            }
            _ => None,
        }
    }

    /// Re-expresses the element in another ring over the same algebra,
    /// clipping to its window.
    pub fn rewindow(&self, ring: &Arc<CoeffRing>) -> Result<RingElem> {
        if ring.algebra() != self.ring.algebra() || ring.lambda_names() != self.ring.lambda_names() {
            return Err(Error::RingMismatch);
        }
        let mut r = RingElem { ring: ring.clone(), terms: self.terms.clone(), exact: self.exact };
        r.clip();
        Ok(r)
    }

    /// Fails with `InsufficientDepth` unless the region `λ-degree ≥ lambda_degree`
    /// at ħ-exponent `hbar` is exact.
    pub fn require_exact(&self, lambda_degree: i32, hbar: i32, what: &str) -> Result<()> {
        if self.exact.covers(lambda_degree, hbar) {
            Ok(())
        } else {
            Err(Error::InsufficientDepth(format!("{what}: need λ-degree ≥ {lambda_degree} at ħ^{hbar}, exact region is {:?}", self.exact)))
        }
    }

    /// Applies `f` to every key; the image coefficient is multiplied by the returned factor.
    pub fn map_keys(&self, ring: &Arc<CoeffRing>, f: impl Fn(&Key) -> Option<(Key, Rational)>) -> RingElem {
        let mut r = RingElem::zero(ring);
        r.exact = self.exact;
        for (k, v) in &self.terms {
            if let Some((k2, c)) = f(k) {
                r.insert(k2, v * c);
            }
        }
        r.clip();
        r
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let alg = self.ring.algebra();
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut parts = vec![render_compact(v)];
            if k.basis != 0 {
                parts.push(alg.basis_name(k.basis));
            }
            for (e, n) in k.lambda.iter().zip(self.ring.lambda_names()) {
                match e {
                    0 => {}
                    1 => parts.push(n.clone()),
                    _ => parts.push(format!("{n}^{e}")),
                }
            }
            match k.hbar {
                0 => {}
                1 => parts.push("h".into()),
                e => parts.push(format!("h^{e}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, o: &RingElem) -> RingElem {
        self.assert_same(o);
        self.add_unchecked(o, false)
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, o: &RingElem) -> RingElem {
        self.assert_same(o);
        self.add_unchecked(o, true)
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, o: &RingElem) -> RingElem {
        self.assert_same(o);
        self.mul_unchecked(o)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.scale(&-Rational::one())
    }
}

/// Checked product of two coefficients.
pub fn elem_mul(a: &RingElem, b: &RingElem) -> Result<RingElem> {
    a.checked_mul(b)
}

/// `1/(cλ_j + Y)` expanded at `λ_j = ∞` through `λ_j^{-depth-1}`:
/// `Σ_{i=0}^{depth} (-Y)^i c^{-i-1} λ_j^{-i-1}`. `Y` must be free of λ.
pub fn expand_reciprocal_at_infinity(form: &RingElem, depth: u32) -> Result<RingElem> {
    let ring = form.ring();
    let mut lam: Option<(usize, Rational)> = None;
    let mut rest = RingElem::zero(ring);
    for (k, v) in form.terms() {
        let ld = k.lambda_degree();
        if ld == 0 && k.lambda.iter().all(|e| *e == 0) {
            rest.insert(k.clone(), v.clone());
            continue;
        }
        let unit = k.basis == 0 && k.hbar == 0 && ld == 1 && k.lambda.iter().all(|e| *e == 0 || *e == 1);
        if !unit || lam.is_some() {
            return Err(Error::NotExpandableAtInfinity(format!("{form}")));
        }
        let j = k.lambda.iter().position(|e| *e == 1).expect("degree one");
        lam = Some((j, v.clone()));
    }
    let (j, c) = lam.ok_or_else(|| Error::NotExpandableAtInfinity(format!("no λ in {form}")))?;
    let neg_rest = -&rest;
    let mut out = RingElem::zero(ring);
    let mut power = RingElem::one(ring);
    for i in 0..=depth {
        let mut lambda = vec![0; ring.nlambda()];
        lambda[j] = -(i as i32) - 1;
        let inv = RingElem::monomial(ring, Key { basis: 0, lambda, hbar: 0 }, pow(&c, -(i as i32) - 1));
        out = &out + &(&power * &inv);
        power = &power * &neg_rest;
        if power.is_zero() && !power.is_truncated() {
            return Ok(out);
        }
    }
    out.exact.lambda_floor = max_opt(out.exact.lambda_floor, Some(-(depth as i32) - 1));
    out.clip();
    Ok(out)
}
