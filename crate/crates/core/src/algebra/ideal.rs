//! Relation ideals in the truncated parameter algebra.
//!
//! An ideal is represented by generators together with a truncation degree
//! `T`; membership is decided in ℂ[t]⊗Λ[θ] / m^{T+1} by row-reducing the
//! products `m·g` (truncated at degree `T`) over the monomial basis. Pivots
//! are taken at the lowest monomial of each row, so reducing a polynomial
//! only ever introduces terms of higher degree.

use std::collections::HashMap;
use std::fmt;

use super::poly::{ParamSpace, SuperMonomial, SuperPolynomial};
use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 6;

#[derive(Clone, PartialEq, Eq)]
pub struct RelationIdeal {
    params: ParamSpace,
    generators: Vec<SuperPolynomial>,
    truncation: usize,
}

impl RelationIdeal {
    pub fn new(params: ParamSpace, generators: Vec<SuperPolynomial>, truncation: usize) -> Result<Self> {
        for g in &generators {
            params.check_same(&g.params())?;
        }
        Ok(RelationIdeal {
            params,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            truncation,
        })
    }

    pub fn empty(params: ParamSpace, truncation: usize) -> Self {
        RelationIdeal {
            params,
            generators: Vec::new(),
            truncation,
        }
    }

    pub fn params(&self) -> ParamSpace {
        self.params
    }

    pub fn generators(&self) -> &[SuperPolynomial] {
        &self.generators
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with_generator(&self, g: SuperPolynomial) -> Result<RelationIdeal> {
        let mut gens = self.generators.clone();
        gens.push(g);
        RelationIdeal::new(self.params, gens, self.truncation)
    }

    pub fn with_truncation(&self, truncation: usize) -> RelationIdeal {
        RelationIdeal {
            truncation,
            ..self.clone()
        }
    }

    fn homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Echelon basis good for reducing polynomials of degree ≤ `degree`.
    pub fn basis(&self, degree: usize) -> Result<IdealBasis> {
        if degree > self.truncation {
            return Err(Error::DegreeOverflow {
                term: format!("(any term of degree {degree})"),
                degree,
                truncation: self.truncation,
            });
        }
        // Homogeneous generators never push a reduction above the degree of
        // the input, so the span can be cut off there.
        let top = if self.homogeneous() { degree } else { self.truncation };
        Ok(IdealBasis::build(self, top))
    }

    pub fn reduce(&self, p: &SuperPolynomial) -> Result<SuperPolynomial> {
        self.params.check_same(&p.params())?;
        check_degree(p, self.truncation)?;
        Ok(self.basis(p.degree())?.reduce(p))
    }

    pub fn contains(&self, p: &SuperPolynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

fn check_degree(p: &SuperPolynomial, truncation: usize) -> Result<()> {
    if let Some((m, c)) = p.terms().find(|(m, _)| m.degree() > truncation) {
        return Err(Error::DegreeOverflow {
            term: format!("{c}*{m}"),
            degree: m.degree(),
            truncation,
        });
    }
    Ok(())
}

impl fmt::Display for RelationIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "(0)");
        }
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for RelationIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod deg>{}", self.truncation)
    }
}

/// Row-echelon form of a truncated ideal, keyed by leading monomial.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    params: ParamSpace,
    top: usize,
    pivots: HashMap<SuperMonomial, SuperPolynomial>,
}

impl IdealBasis {
    fn build(ideal: &RelationIdeal, top: usize) -> IdealBasis {
        let mut basis = IdealBasis {
            params: ideal.params,
            top,
            pivots: HashMap::new(),
        };
        let mut rows: Vec<SuperPolynomial> = Vec::new();
        for g in &ideal.generators {
            let g = g.truncate(top);
            let Some(low) = g.low_degree() else { continue };
            for k in 0..=top.saturating_sub(low) {
                if low + k > top {
                    break;
                }
                for m in ideal.params.monomials_of_degree(k) {
                    let row = g.mul_monomial(&m).truncate(top);
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
        rows.sort_by(|a, b| a.lead().map(|l| l.0).cmp(&b.lead().map(|l| l.0)));
        for row in rows {
            basis.insert(row);
        }
        basis
    }

    fn insert(&mut self, mut row: SuperPolynomial) {
        while let Some((lead, c)) = row.lead() {
            match self.pivots.get(lead) {
                Some(pivot) => {
                    let k = -c.clone();
                    row.add_scaled(pivot, &k);
                }
                None => {
                    let inv = c.inv().expect("nonzero lead");
                    let lead = lead.clone();
                    self.pivots.insert(lead, row.scale(&inv));
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn top_degree(&self) -> usize {
        self.top
    }

    /// Canonical representative of `p` modulo the truncated ideal: the
    /// unique element of `p + I` with no term on a pivot monomial.
    pub fn reduce(&self, p: &SuperPolynomial) -> SuperPolynomial {
        debug_assert_eq!(p.params(), self.params);
        let mut rest = p.clone();
        let mut out = SuperPolynomial::zero(self.params);
        while let Some((lead, c)) = rest.lead() {
            let (lead, c) = (lead.clone(), c.clone());
            match self.pivots.get(&lead) {
                Some(pivot) => rest.add_scaled(pivot, &-c),
                None => {
                    out.add_term(lead.clone(), &c);
                    rest.add_term(lead, &-c);
                }
            }
            if rest.degree() > self.top {
                rest = rest.truncate(self.top);
            }
        }
        out
    }
}

/// Whether `a` and `b` span the same truncated ideal in every degree ≤ `degree`.
pub fn ideal_equal(a: &RelationIdeal, b: &RelationIdeal, degree: usize) -> Result<bool> {
    a.params.check_same(&b.params)?;
    let a = a.with_truncation(degree);
    let b = b.with_truncation(degree);
    Ok(contained_in(&a, &b, degree)? && contained_in(&b, &a, degree)?)
}

fn contained_in(a: &RelationIdeal, b: &RelationIdeal, degree: usize) -> Result<bool> {
    let basis = b.basis(degree)?;
    Ok(a.generators
        .iter()
        .map(|g| g.truncate(degree))
        .all(|g| basis.reduce(&g).is_zero()))
}

/// Convenience: reduce `p` modulo `ideal`.
pub fn ideal_reduce(p: &SuperPolynomial, ideal: &RelationIdeal) -> Result<SuperPolynomial> {
    ideal.reduce(p)
}
