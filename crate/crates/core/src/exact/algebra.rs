//! Finite-dimensional graded quotients `Q[p_1..p_r] / I` for homogeneous `I`.
//!
//! The quotient is built degree by degree. In each degree the ideal is
//! spanned by monomial multiples of the relations; a row reduction with the
//! largest monomial as pivot splits the monomials into pivots (rewritten in
//! terms of the rest) and standard monomials, which form the basis.
//! Monomials are compared by degree, then by exponent of the last generator,
//! then the one before it, and so on.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Sparse vector over the basis.
pub type BasisVec = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq)]
pub struct CohomAlgebra {
    generators: Vec<String>,
    basis: Vec<Vec<u32>>,
    table: Vec<Vec<BasisVec>>,
    normal_forms: BTreeMap<Vec<u32>, BasisVec>,
    top_degree: u32,
}

fn monomials(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=deg).rev() {
        for mut rest in monomials(n - 1, deg - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Larger monomial wins the pivot; within one degree compare from the last generator.
fn mono_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

type Row = BTreeMap<usize, Rational>;

fn axpy(row: &mut Row, c: &Rational, other: &Row) {
    for (k, v) in other {
        let slot = row.entry(*k).or_insert_with(Rational::zero);
        *slot -= c * v;
        if slot.is_zero() {
            row.remove(k);
        }
    }
}

/// Builds the quotient algebra; `max_degree` bounds the search for truncation.
pub fn algebra_from_relations(generators: &[String], relations: &[Poly], max_degree: u32) -> Result<CohomAlgebra> {
    let n = generators.len();
    let mut rels = Vec::new();
    for r in relations {
        if r.nvars() != n {
            return Err(Error::VariableMismatch(format!("relation {r} has {} variables, expected {n}", r.nvars())));
        }
        if r.is_zero() {
            continue;
        }
        let d = r.homogeneous_degree().ok_or_else(|| Error::InhomogeneousRelation(r.to_string()))?;
        if d == 0 {
            return Err(Error::InvalidArgument("relation is a nonzero constant; quotient is zero".into()));
        }
        rels.push((d, r));
    }

    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut normal_forms: BTreeMap<Vec<u32>, BasisVec> = BTreeMap::new();
    let mut top = None;
    for d in 0..=max_degree {
        let mut ms = monomials(n, d);
        ms.sort_by(|a, b| mono_cmp(b, a));
        let idx: BTreeMap<&Vec<u32>, usize> = ms.iter().enumerate().map(|(i, m)| (m, i)).collect();

        // pivots keyed by column; column order = decreasing monomial, so the
        // smallest column index in a row is its largest monomial
        let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
        for &(rd, r) in &rels {
            if rd > d {
                continue;
            }
            for m in monomials(n, d - rd) {
                let mut row = Row::new();
                for (e, c) in r.terms() {
                    let mm: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    let slot = row.entry(idx[&mm]).or_insert_with(Rational::zero);
                    *slot += c;
                }
                row.retain(|_, v| !v.is_zero());
                for (p, prow) in &pivots {
                    if let Some(c) = row.get(p).cloned() {
                        axpy(&mut row, &c, prow);
                    }
                }
                let Some((&p, c)) = row.iter().next() else { continue };
                let inv = c.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                for prow in pivots.values_mut() {
                    if let Some(c) = prow.get(&p).cloned() {
                        axpy(prow, &c, &row);
                    }
                }
                pivots.insert(p, row);
            }
        }

        let mut std: Vec<&Vec<u32>> = ms.iter().enumerate().filter(|(i, _)| !pivots.contains_key(i)).map(|(_, m)| m).collect();
        std.sort_by(|a, b| b.cmp(a));
        let offset = basis.len();
        let pos: BTreeMap<&Vec<u32>, usize> = std.iter().enumerate().map(|(i, m)| (*m, offset + i)).collect();
        for (i, m) in ms.iter().enumerate() {
            let nf = match pivots.get(&i) {
                Some(row) => row.iter().filter(|(k, _)| **k != i).map(|(k, v)| (pos[&ms[*k]], -v.clone())).collect(),
                None => vec![(pos[m], Rational::one())],
            };
            normal_forms.insert(m.clone(), nf);
        }
        basis.extend(std.iter().map(|m| (*m).clone()));
        if std.is_empty() && d > 0 {
            top = Some(d);
            break;
        }
    }
    let top_degree = top.ok_or(Error::RelationsDoNotTruncate { bound: max_degree })?;

    let dim = basis.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let m: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
            if m.iter().sum::<u32>() < top_degree {
                table[i][j] = normal_forms[&m].clone();
            }
        }
    }
    Ok(CohomAlgebra { generators: generators.to_vec(), basis, table, normal_forms, top_degree })
}

impl CohomAlgebra {
    /// The algebra `Q[p]/(p^2)`.
    pub fn nilpotent(name: &str) -> CohomAlgebra {
        let g = vec![name.to_string()];
        algebra_from_relations(&g, &[Poly::monomial(vec![2], Rational::one())], 4).expect("p^2 truncates")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Smallest degree in which every monomial vanishes.
    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn product(&self, i: usize, j: usize) -> &BasisVec {
        &self.table[i][j]
    }

    pub fn basis_index(&self, exps: &[u32]) -> Option<usize> {
        self.basis.iter().position(|b| b == exps)
    }

    pub fn basis_degree(&self, i: usize) -> u32 {
        self.basis[i].iter().sum()
    }

    /// Normal form of an arbitrary monomial.
    pub fn monomial(&self, exps: &[u32]) -> BasisVec {
        if exps.iter().sum::<u32>() >= self.top_degree {
            return Vec::new();
        }
        self.normal_forms[exps].clone()
    }

    pub fn generator(&self, i: usize) -> BasisVec {
        let mut e = vec![0; self.generators.len()];
        e[i] = 1;
        self.monomial(&e)
    }

    /// Normal form of a polynomial in the generators.
    pub fn reduce(&self, p: &Poly) -> BasisVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (e, c) in p.terms() {
            for (k, v) in self.monomial(e) {
                *acc.entry(k).or_insert_with(Rational::zero) += c * v;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn basis_name(&self, i: usize) -> String {
        let parts: Vec<String> =
            self.basis[i].iter().zip(&self.generators).filter(|(k, _)| **k > 0).map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") }).collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}
