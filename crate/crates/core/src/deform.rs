//! Miniversal deformations: the universal infinitesimal deformation,
//! decomposition of the bracket against cohomology ⊕ coboundaries ⊕
//! complement, correction steps and relation ideals.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{
    ParamSpace, Parameter, Parity, RelationIdeal, Scalar, SuperMonomial, SuperPolynomial, DEFAULT_TRUNCATION,
};
use crate::cochain::{bracket_truncated, Cochain, ElementaryMap};
use crate::cohomology::{cohomology_with_complements, BasisOverride, CohomologyReport};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 8;

/// A deformation parameter and the cohomology class it multiplies.
#[derive(Clone, Debug)]
pub struct ParameterInfo {
    pub parameter: Parameter,
    pub representative: Cochain,
    pub weight: usize,
}

/// Components of a cochain with respect to a cohomology report.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// One coefficient per cohomology representative, in report order.
    pub delta: Vec<SuperPolynomial>,
    /// One coefficient per coboundary basis element, in report order.
    pub beta: Vec<SuperPolynomial>,
    /// The part on the complement of the cocycles.
    pub residual: Cochain,
}

/// Split `c` as `Σ a_i δ_i + Σ b_k β_k + residual`, monomial by monomial.
pub fn decompose_cocycle(c: &Cochain, report: &CohomologyReport) -> Result<Decomposition> {
    let params = c.params();
    let space = report.space();
    let n_delta: usize = report.weights.iter().map(|w| w.representatives.len()).sum();
    let n_beta: usize = report.weights.iter().map(|w| w.coboundaries.len()).sum();
    let mut delta = vec![SuperPolynomial::zero(params); n_delta];
    let mut beta = vec![SuperPolynomial::zero(params); n_beta];
    let mut residual = Cochain::zero(space, params);
    let (mut delta_offset, mut beta_offset) = (0, 0);
    for w in &report.weights {
        let index: HashMap<&ElementaryMap, usize> = w.basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut by_monomial: BTreeMap<SuperMonomial, Vec<Scalar>> = BTreeMap::new();
        for (map, poly) in c.terms() {
            let Some(&k) = index.get(map) else { continue };
            for (m, x) in poly.terms() {
                by_monomial
                    .entry(m.clone())
                    .or_insert_with(|| vec![Scalar::zero(); w.dim()])[k] = x.clone();
            }
        }
        for (m, v) in by_monomial {
            let (a, b, e) = w.decompose(&v);
            let mono = |x: &Scalar| SuperPolynomial::monomial(params, m.clone(), x.clone());
            for (i, x) in a.iter().enumerate() {
                delta[delta_offset + i].add_assign_poly(&mono(x));
            }
            for (i, x) in b.iter().enumerate() {
                beta[beta_offset + i].add_assign_poly(&mono(x));
            }
            for (kappa, x) in w.complement.iter().zip(&e) {
                if !x.is_zero() {
                    residual = residual.add(&kappa.with_params(params).scale(&mono(x)))?;
                }
            }
        }
        delta_offset += w.representatives.len();
        beta_offset += w.coboundaries.len();
    }
    if c.weights().iter().any(|&n| report.weight(n).is_none()) {
        return Err(Error::WeightOutOfRange {
            weight: *c.weights().iter().max().unwrap(),
            max: report.weights.len(),
        });
    }
    Ok(Decomposition { delta, beta, residual })
}

#[derive(Clone, Debug)]
pub struct DeformationState {
    pub base: Cochain,
    pub report: CohomologyReport,
    pub params: ParamSpace,
    pub parameters: Vec<ParameterInfo>,
    pub order: usize,
    /// `dⁿ`, with coefficients in the parameters.
    pub deformation: Cochain,
    /// Terms added at each order; entry 0 is the infinitesimal part.
    pub history: Vec<Cochain>,
    /// `½[dⁿ, dⁿ]`.
    pub half_bracket: Cochain,
    pub decomposition: Decomposition,
    /// Relations read from the cohomology components of `½[dⁿ, dⁿ]`.
    pub relations: RelationIdeal,
    pub truncation: usize,
}

impl DeformationState {
    fn new(
        base: Cochain,
        report: CohomologyReport,
        parameters: Vec<ParameterInfo>,
        order: usize,
        deformation: Cochain,
        history: Vec<Cochain>,
        truncation: usize,
    ) -> Result<Self> {
        let params = deformation.params();
        let half_bracket = half_square(&deformation, truncation)?;
        let decomposition = decompose_cocycle(&half_bracket, &report)?;
        let relations = RelationIdeal::new(params, decomposition.delta.clone(), truncation)?;
        Ok(DeformationState {
            base,
            report,
            params,
            parameters,
            order,
            deformation,
            history,
            half_bracket,
            decomposition,
            relations,
            truncation,
        })
    }

    /// Coboundary coefficients and residual reduced modulo the relations.
    fn reduced_obstruction(&self) -> Result<(Vec<SuperPolynomial>, Cochain)> {
        let top = self
            .decomposition
            .beta
            .iter()
            .chain(self.decomposition.residual.terms().map(|(_, c)| c))
            .map(SuperPolynomial::degree)
            .max()
            .unwrap_or(0);
        let basis = self.relations.basis(top)?;
        let beta = self.decomposition.beta.iter().map(|b| basis.reduce(b)).collect();
        let residual = self.decomposition.residual.map_coefficients(|c| basis.reduce(c));
        Ok((beta, residual))
    }

    /// Whether `½[dⁿ, dⁿ]` vanishes modulo the relations.
    pub fn is_terminal(&self) -> Result<bool> {
        let (beta, residual) = self.reduced_obstruction()?;
        Ok(beta.iter().all(SuperPolynomial::is_zero) && residual.is_zero())
    }
}

/// `½[d, d]` with parameter terms above the truncation dropped.
fn half_square(d: &Cochain, truncation: usize) -> Result<Cochain> {
    Ok(bracket_truncated(d, d, truncation)?.scale_scalar(&Scalar::ratio(1, 2)))
}

/// `d¹ = d + Σ u_i δ_i`, one parameter of opposite parity per representative.
pub fn infinitesimal_deformation(
    d: &Cochain,
    report: &CohomologyReport,
    truncation: usize,
) -> Result<DeformationState> {
    let reps = report.representatives();
    let n_even = reps.iter().filter(|r| r.parity == Parity::Odd).count();
    let params = ParamSpace::new(n_even, reps.len() - n_even)?;
    let (mut te, mut to) = (0, 0);
    let mut parameters = Vec::with_capacity(reps.len());
    let mut infinitesimal = Cochain::zero(d.space(), params);
    for r in &reps {
        let (parameter, u) = if r.parity == Parity::Odd {
            te += 1;
            (Parameter::even(te), SuperPolynomial::t(params, te))
        } else {
            to += 1;
            (Parameter::odd(to), SuperPolynomial::theta(params, to))
        };
        infinitesimal = infinitesimal.add(&r.cochain.with_params(params).scale(&u))?;
        parameters.push(ParameterInfo {
            parameter,
            representative: r.cochain.clone(),
            weight: r.weight,
        });
    }
    let deformation = d.with_params(params).add(&infinitesimal)?;
    DeformationState::new(
        d.clone(),
        report.clone(),
        parameters,
        1,
        deformation,
        vec![infinitesimal],
        truncation,
    )
}

/// One correction step: cancel the coboundary part of `½[dⁿ, dⁿ]` of
/// parameter degree `n+1` using the stored preimages.
pub fn deformation_step(state: &DeformationState) -> Result<DeformationState> {
    let n = state.order;
    let (beta, residual) = state.reduced_obstruction()?;
    let low = residual.map_coefficients(|c| c.truncate(n + 1));
    if !low.is_zero() {
        return Err(Error::NotCocycleModuloRelations {
            order: n,
            detail: format!("non-cocycle part {low}"),
        });
    }
    let mut correction = Cochain::zero(state.base.space(), state.params);
    let preimages = state.report.weights.iter().flat_map(|w| w.preimages.iter());
    for (b, gamma) in beta.iter().zip(preimages) {
        let b = b.truncate(n + 1);
        if b.is_zero() {
            continue;
        }
        // D(−κ) = −β cancels b·β
        correction = correction.sub(&gamma.with_params(state.params).scale(&b))?;
    }
    let deformation = state.deformation.add(&correction)?;
    let mut history = state.history.clone();
    history.push(correction);
    DeformationState::new(
        state.base.clone(),
        state.report.clone(),
        state.parameters.clone(),
        n + 1,
        deformation,
        history,
        state.truncation,
    )
}

#[derive(Clone, Debug)]
pub struct DeformationResult {
    pub state: DeformationState,
    pub terminated: bool,
    /// Order at which `½[dⁿ, dⁿ]` vanished modulo the relations.
    pub termination_order: Option<usize>,
    pub relations: RelationIdeal,
}

impl DeformationResult {
    pub fn deformation(&self) -> &Cochain {
        &self.state.deformation
    }
}

#[derive(Clone, Debug)]
pub struct DeformOptions {
    /// Cohomology representatives per weight.
    pub overrides: BasisOverride,
    /// Complements of the cocycles per weight; these are the preimages used
    /// for corrections.
    pub complements: BasisOverride,
    pub max_order: usize,
    pub truncation: usize,
}

impl Default for DeformOptions {
    fn default() -> Self {
        DeformOptions {
            overrides: BasisOverride::new(),
            complements: BasisOverride::new(),
            max_order: DEFAULT_MAX_ORDER,
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

/// Iterate correction steps until the bracket vanishes modulo the relations
/// or `max_order` is reached.
pub fn miniversal(d: &Cochain, options: &DeformOptions) -> Result<DeformationResult> {
    let report = cohomology_with_complements(d, &options.overrides, &options.complements)?;
    let mut state = infinitesimal_deformation(d, &report, options.truncation)?;
    loop {
        // past the truncation a vanishing bracket proves nothing
        if state.order < options.truncation && state.is_terminal()? {
            let relations = state.relations.clone();
            return Ok(DeformationResult {
                termination_order: Some(state.order),
                terminated: true,
                relations,
                state,
            });
        }
        if state.order >= options.max_order || state.order >= options.truncation {
            let relations = state.relations.clone();
            return Ok(DeformationResult {
                termination_order: None,
                terminated: false,
                relations,
                state,
            });
        }
        state = deformation_step(&state)?;
    }
}

/// Recompute `½[d, d]` from scratch and check it vanishes modulo the stated
/// relations, that the deformation is odd and that it restricts to the base.
pub fn verify_miniversal(result: &DeformationResult) -> bool {
    let d = &result.state.deformation;
    let check = || -> Result<bool> {
        let augmentation = d.map_coefficients(|c| SuperPolynomial::constant(c.params(), c.constant_term()));
        if augmentation != result.state.base.with_params(d.params()) {
            return Ok(false);
        }
        if !d.is_zero() && d.parity() != Some(Parity::Odd) {
            return Ok(false);
        }
        let b = bracket_truncated(d, d, result.relations.truncation())?;
        let top = b.terms().map(|(_, c)| c.degree()).max().unwrap_or(0);
        let basis = result.relations.basis(top)?;
        let ok = b.terms().all(|(_, c)| basis.reduce(c).is_zero());
        Ok(ok)
    };
    check().unwrap_or(false)
}
