//! Matrices of the coboundary operator per weight, cocycle and coboundary
//! bases, cohomology dimensions and representatives.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{ParamSpace, Parity, Scalar};
use crate::cochain::{basis_maps, bracket, coboundary, Cochain, ElementaryMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::superspace::GradedSpace;

/// Representatives to use for `H^n`, keyed by weight.
pub type BasisOverride = BTreeMap<usize, Vec<Cochain>>;

/// Everything computed at one weight `n`.
#[derive(Clone, Debug)]
pub struct WeightData {
    pub weight: usize,
    /// Elementary basis of `L_n`.
    pub basis: Vec<ElementaryMap>,
    /// `z_n = dim ker(D: L_n → L_{n+1})`.
    pub z: usize,
    /// `b_n = rank(D: L_n → L_{n+1})`.
    pub b: usize,
    /// `h_n = z_n − b_{n−1}`.
    pub h: usize,
    pub cocycles: Vec<Cochain>,
    /// Basis of `B^n = D(L_{n−1}) ⊂ L_n`; element `k` is `D(preimages[k])`.
    pub coboundaries: Vec<Cochain>,
    /// Elementary maps of `L_{n−1}` whose images form `coboundaries`.
    pub preimages: Vec<Cochain>,
    /// Representatives of `H^n`.
    pub representatives: Vec<Cochain>,
    /// Elementary maps of `L_n` spanning a complement of the cocycles.
    pub complement: Vec<Cochain>,
    /// Inverse of the matrix with columns `representatives | coboundaries | complement`.
    decomposition: Matrix,
}

impl WeightData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a scalar vector of `L_n` against
    /// `representatives | coboundaries | complement`.
    pub fn decompose(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
        let x = self.decomposition.apply(v);
        let h = self.representatives.len();
        let b = self.coboundaries.len();
        (x[..h].to_vec(), x[h..h + b].to_vec(), x[h + b..].to_vec())
    }
}

/// A cohomology representative together with its place in the report.
#[derive(Clone, Debug)]
pub struct Representative {
    pub weight: usize,
    pub cochain: Cochain,
    pub parity: Parity,
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub codifferential: Cochain,
    pub weights: Vec<WeightData>,
}

impl CohomologyReport {
    pub fn space(&self) -> GradedSpace {
        self.codifferential.space()
    }

    pub fn weight(&self, n: usize) -> Option<&WeightData> {
        self.weights.iter().find(|w| w.weight == n)
    }

    pub fn h(&self) -> Vec<usize> {
        self.weights.iter().map(|w| w.h).collect()
    }

    /// All representatives in weight order.
    pub fn representatives(&self) -> Vec<Representative> {
        self.weights
            .iter()
            .flat_map(|w| {
                w.representatives.iter().map(move |c| Representative {
                    weight: w.weight,
                    cochain: c.clone(),
                    parity: c.parity().unwrap_or(Parity::Even),
                })
            })
            .collect()
    }
}

/// Coordinates of a parameter-free cochain over `basis`.
pub fn coordinates(c: &Cochain, index: &HashMap<ElementaryMap, usize>, len: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    for (m, x) in c.terms() {
        if let Some(&k) = index.get(m) {
            v[k] = x.constant_term();
        }
    }
    v
}

fn cochain_from(space: GradedSpace, basis: &[ElementaryMap], v: &[Scalar]) -> Cochain {
    let mut c = Cochain::zero(space, ParamSpace::default());
    for (m, x) in basis.iter().zip(v) {
        c.add_scalar_term(m.clone(), x);
    }
    c
}

fn index_of(basis: &[ElementaryMap]) -> HashMap<ElementaryMap, usize> {
    basis.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect()
}

fn check_quadratic_codifferential(d: &Cochain) -> Result<()> {
    if !d.is_parameter_free() {
        return Err(Error::HasParameters);
    }
    if let Some(n) = d.weights().into_iter().find(|&n| n != 2) {
        return Err(Error::NotQuadratic(format!("{d} has a term of weight {n}")));
    }
    if !d.is_zero() && d.parity() != Some(Parity::Odd) {
        return Err(Error::NotOdd);
    }
    let dd = bracket(d, d)?;
    if !dd.is_zero() {
        return Err(Error::NotCodifferential(dd.to_string()));
    }
    Ok(())
}

fn weight_bound(space: &GradedSpace, n: usize) -> Result<usize> {
    let max = space
        .max_weight()
        .ok_or_else(|| Error::InvalidSpace(format!("{space} has even letters; give an explicit weight bound")))?;
    if n > max {
        return Err(Error::WeightOutOfRange { weight: n, max });
    }
    Ok(max)
}

/// Matrix of `D: L_n → L_{n+1}` in the elementary bases (columns indexed by
/// `L_n`).
pub fn coboundary_matrix(d: &Cochain, n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::WeightOutOfRange { weight: 0, max: 0 });
    }
    if d.space().max_weight().is_some() {
        weight_bound(&d.space(), n)?;
    }
    let space = d.space();
    let rows = basis_maps(&space, n + 1);
    let index = index_of(&rows);
    let cols: Vec<Vec<Scalar>> = basis_maps(&space, n)
        .into_iter()
        .map(|m| {
            let phi = Cochain::elementary(space, d.params(), m)?;
            Ok(coordinates(&coboundary(d, &phi)?, &index, rows.len()))
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(rows.len(), &cols))
}

/// Full report for a quadratic codifferential on a space with finitely many
/// weights. Representatives follow `overrides` where given.
pub fn cohomology_data(d: &Cochain, overrides: &BasisOverride) -> Result<CohomologyReport> {
    let max = weight_bound(&d.space(), 1)?;
    cohomology_up_to(d, max, overrides)
}

/// As [`cohomology_data`], with the complement of the cocycles (and so the
/// preimages of the coboundaries one weight up) fixed by `complements`
/// wherever given.
pub fn cohomology_with_complements(
    d: &Cochain,
    overrides: &BasisOverride,
    complements: &BasisOverride,
) -> Result<CohomologyReport> {
    let max = weight_bound(&d.space(), 1)?;
    build(d, max, overrides, complements)
}

/// Report for weights `1..=max`.
pub fn cohomology_up_to(d: &Cochain, max: usize, overrides: &BasisOverride) -> Result<CohomologyReport> {
    build(d, max, overrides, &BasisOverride::new())
}

fn build(d: &Cochain, max: usize, overrides: &BasisOverride, complements: &BasisOverride) -> Result<CohomologyReport> {
    check_quadratic_codifferential(d)?;
    let space = d.space();
    if let Some(&n) = overrides.keys().chain(complements.keys()).find(|&&n| n == 0 || n > max) {
        return Err(Error::InvalidOverride {
            weight: n,
            reason: format!("weights run from 1 to {max}"),
        });
    }
    // matrices of D on L_1 .. L_max
    let mut matrices = Vec::with_capacity(max);
    for n in 1..=max {
        matrices.push(coboundary_matrix(d, n)?);
    }
    let mut weights: Vec<WeightData> = Vec::with_capacity(max);
    let mut prev: Option<(Vec<Cochain>, Vec<Cochain>)> = None; // (coboundaries in L_n, preimages)
    for n in 1..=max {
        let basis = basis_maps(&space, n);
        let index = index_of(&basis);
        let dim = basis.len();
        let m = &matrices[n - 1];
        let ech = m.rref();
        let kernel = m.kernel();
        let cocycles: Vec<Cochain> = kernel.iter().map(|v| cochain_from(space, &basis, v)).collect();
        let complement: Vec<Cochain> = match complements.get(&n) {
            Some(given) => check_complement(d, n, given, ech.pivots.len())?,
            None => ech
                .pivots
                .iter()
                .map(|&p| Cochain::elementary(space, ParamSpace::default(), basis[p].clone()))
                .collect::<Result<_>>()?,
        };
        let (coboundaries, preimages) = prev.take().unwrap_or_default();
        // coboundaries of the next weight: images of this complement
        let next: Vec<Cochain> = complement.iter().map(|k| coboundary(d, k)).collect::<Result<_>>()?;
        prev = Some((next, complement.clone()));

        let z = kernel.len();
        let b = ech.pivots.len();
        let h = z - coboundaries.len();
        let cob_vectors: Vec<Vec<Scalar>> = coboundaries.iter().map(|c| coordinates(c, &index, dim)).collect();
        let representatives = choose_representatives(
            d,
            n,
            overrides.get(&n).map(Vec::as_slice).unwrap_or(&[]),
            &cob_vectors,
            &kernel,
            h,
            &basis,
            &index,
        )?;
        let mut columns: Vec<Vec<Scalar>> = representatives.iter().map(|c| coordinates(c, &index, dim)).collect();
        columns.extend(cob_vectors);
        columns.extend(complement.iter().map(|c| coordinates(c, &index, dim)));
        let decomposition = Matrix::from_columns(dim, &columns).inverse()?;
        weights.push(WeightData {
            weight: n,
            basis,
            z,
            b,
            h,
            cocycles,
            coboundaries,
            preimages,
            representatives,
            complement,
            decomposition,
        });
    }
    Ok(CohomologyReport {
        codifferential: d.clone(),
        weights,
    })
}

fn check_homogeneous(c: &Cochain, n: usize) -> std::result::Result<(), String> {
    if !c.is_parameter_free() {
        return Err(format!("{c} has parameter coefficients"));
    }
    if c.weights().iter().any(|&w| w != n) {
        return Err(format!("{c} does not lie in weight {n}"));
    }
    if c.parity().is_none() {
        return Err(format!("{c} mixes parities"));
    }
    Ok(())
}

/// A complement of the cocycles must have `rank` elements whose images are
/// independent.
fn check_complement(d: &Cochain, n: usize, given: &[Cochain], rank: usize) -> Result<Vec<Cochain>> {
    let invalid = |reason: String| Error::InvalidOverride { weight: n, reason };
    if given.len() != rank {
        return Err(invalid(format!(
            "a complement of the cocycles needs {rank} elements, got {}",
            given.len()
        )));
    }
    let rows = basis_maps(&d.space(), n + 1);
    let index = index_of(&rows);
    let mut images = Vec::with_capacity(given.len());
    for c in given {
        check_homogeneous(c, n).map_err(invalid)?;
        images.push(coordinates(&coboundary(d, c)?, &index, rows.len()));
    }
    if Matrix::from_columns(rows.len(), &images).rank() < rank {
        return Err(invalid("complement meets the cocycles".into()));
    }
    Ok(given.to_vec())
}

#[allow(clippy::too_many_arguments)]
fn choose_representatives(
    d: &Cochain,
    n: usize,
    given: &[Cochain],
    coboundaries: &[Vec<Scalar>],
    kernel: &[Vec<Scalar>],
    h: usize,
    basis: &[ElementaryMap],
    index: &HashMap<ElementaryMap, usize>,
) -> Result<Vec<Cochain>> {
    let space = d.space();
    let dim = basis.len();
    let invalid = |reason: String| Error::InvalidOverride { weight: n, reason };
    let mut span: Vec<Vec<Scalar>> = coboundaries.to_vec();
    let mut chosen = Vec::new();
    for c in given {
        if c.space() != space {
            return Err(invalid(format!("{c} does not live on {space}")));
        }
        check_homogeneous(c, n).map_err(invalid)?;
        if !coboundary(d, c)?.is_zero() {
            return Err(invalid(format!("{c} is not a cocycle")));
        }
        let v = coordinates(c, index, dim);
        span.push(v);
        if Matrix::from_columns(dim, &span).rank() < span.len() {
            return Err(invalid(format!(
                "{c} is dependent modulo coboundaries and earlier representatives"
            )));
        }
        chosen.push(c.clone());
    }
    // complete from the echelon kernel basis
    for v in kernel {
        if chosen.len() == h {
            break;
        }
        span.push(v.clone());
        if Matrix::from_columns(dim, &span).rank() < span.len() {
            span.pop();
            continue;
        }
        chosen.push(cochain_from(space, basis, v));
    }
    debug_assert_eq!(chosen.len(), h);
    Ok(chosen)
}
