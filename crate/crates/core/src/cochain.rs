//! Cochains `L = Hom(S(W), W)` with parameter coefficients: elementary
//! maps, coderivation lifts, the bracket, the coboundary operator, the
//! action of linear automorphisms and inner derivations.
//!
//! A term `c·φ` keeps its coefficient on the left. Moving a coefficient
//! `q` past a map `φ` costs `(-1)^{|φ||q|}`, so
//! `[p·α, q·β] = (-1)^{|α||q|} pq·[α, β]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::algebra::{signed_coefficient, ParamSpace, Parity, Scalar, SuperPolynomial};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::superspace::{unshuffles, GradedSpace, Word};

/// The map `φ^I_j` sending the word `I` to the basis vector `j` and every
/// other word to zero. Targets are zero-based letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryMap {
    source: Word,
    target: usize,
}

impl ElementaryMap {
    pub fn new(source: Word, target: usize) -> Result<Self> {
        let dim = source.exponents().len();
        if target >= dim {
            return Err(Error::InvalidBasisIndex { index: target, dim });
        }
        Ok(ElementaryMap { source, target })
    }

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn weight(&self) -> usize {
        self.source.weight()
    }

    pub fn parity(&self) -> Parity {
        let target = Parity::from_bit(self.target >= self.source.even_dim());
        self.source.parity().add(target)
    }
}

impl fmt::Display for ElementaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi[{}]_{}", self.source.exponent_string(), self.target + 1)
    }
}

impl fmt::Debug for ElementaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All elementary maps of weight `n`: words in basis order, then targets.
pub fn basis_maps(space: &GradedSpace, n: usize) -> Vec<ElementaryMap> {
    space
        .weight_basis(n)
        .into_iter()
        .flat_map(|w| {
            (0..space.dim()).map(move |j| ElementaryMap {
                source: w.clone(),
                target: j,
            })
        })
        .collect()
}

/// An element of `S(W)` with polynomial coefficients.
pub type SVector = BTreeMap<Word, SuperPolynomial>;

#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    space: GradedSpace,
    params: ParamSpace,
    terms: BTreeMap<ElementaryMap, SuperPolynomial>,
}

impl Cochain {
    pub fn zero(space: GradedSpace, params: ParamSpace) -> Self {
        Cochain {
            space,
            params,
            terms: BTreeMap::new(),
        }
    }

    /// A single elementary map with coefficient 1.
    pub fn elementary(space: GradedSpace, params: ParamSpace, map: ElementaryMap) -> Result<Self> {
        check_map(&space, &map)?;
        let mut c = Cochain::zero(space, params);
        c.terms.insert(map, SuperPolynomial::one(params));
        Ok(c)
    }

    /// Parameter-free cochain from scalar entries.
    pub fn from_scalars(
        space: GradedSpace,
        entries: impl IntoIterator<Item = (ElementaryMap, Scalar)>,
    ) -> Result<Self> {
        let params = ParamSpace::default();
        let mut c = Cochain::zero(space, params);
        for (map, x) in entries {
            check_map(&space, &map)?;
            c.add_term(map, &SuperPolynomial::constant(params, x));
        }
        Ok(c)
    }

    pub fn space(&self) -> GradedSpace {
        self.space
    }

    pub fn params(&self) -> ParamSpace {
        self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ElementaryMap, &SuperPolynomial)> {
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

    pub fn coefficient(&self, map: &ElementaryMap) -> SuperPolynomial {
        self.terms
            .get(map)
            .cloned()
            .unwrap_or_else(|| SuperPolynomial::zero(self.params))
    }

    /// Constant coefficient of `map`; meaningful for parameter-free cochains.
    pub fn scalar(&self, map: &ElementaryMap) -> Scalar {
        self.terms.get(map).map(|c| c.constant_term()).unwrap_or_default()
    }

    pub fn add_term(&mut self, map: ElementaryMap, c: &SuperPolynomial) {
        debug_assert_eq!(c.params(), self.params);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(map) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_poly(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scalar_term(&mut self, map: ElementaryMap, x: &Scalar) {
        let c = SuperPolynomial::constant(self.params, x.clone());
        self.add_term(map, &c);
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        self.scale_scalar(&Scalar::from_int(-1))
    }

    pub fn scale_scalar(&self, k: &Scalar) -> Cochain {
        self.map_coefficients(|c| c.scale(k))
    }

    /// Left multiplication `r·(Σ c φ) = Σ (rc) φ`.
    pub fn scale(&self, r: &SuperPolynomial) -> Cochain {
        self.map_coefficients(|c| r * c)
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&SuperPolynomial) -> SuperPolynomial) -> Cochain {
        let mut out = Cochain::zero(self.space, self.params);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    pub fn try_map_coefficients(
        &self,
        mut f: impl FnMut(&SuperPolynomial) -> Result<SuperPolynomial>,
    ) -> Result<Cochain> {
        let mut out = Cochain::zero(self.space, self.params);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Reinterpret over a larger parameter list.
    pub fn with_params(&self, params: ParamSpace) -> Cochain {
        let mut out = Cochain::zero(self.space, params);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.with_params(params));
        }
        out
    }

    pub fn is_parameter_free(&self) -> bool {
        self.terms.values().all(|c| c.as_scalar().is_some())
    }

    /// Total parity of every term (map parity plus coefficient parity), if
    /// they all agree. The zero cochain reports `None`.
    pub fn parity(&self) -> Option<Parity> {
        let mut out = None;
        for (m, c) in &self.terms {
            let p = m.parity().add(c.parity()?);
            match out {
                None => out = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        out
    }

    pub fn weights(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.weight()).collect()
    }

    pub fn weight_part(&self, n: usize) -> Cochain {
        self.filter(|m, _| m.weight() == n)
    }

    pub fn filter(&self, keep: impl Fn(&ElementaryMap, &SuperPolynomial) -> bool) -> Cochain {
        Cochain {
            space: self.space,
            params: self.params,
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest parameter degree of any coefficient.
    pub fn parameter_degree(&self) -> usize {
        self.terms.values().map(|c| c.degree()).max().unwrap_or(0)
    }

    /// `φ(word)` as coefficients on the basis of `W`.
    pub fn apply(&self, word: &Word) -> Vec<SuperPolynomial> {
        let mut out = vec![SuperPolynomial::zero(self.params); self.space.dim()];
        for (m, c) in &self.terms {
            if &m.source == word {
                out[m.target].add_assign_poly(c);
            }
        }
        out
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(self.space.to_string(), other.space.to_string()));
        }
        self.params.check_same(&other.params)
    }
}

fn check_map(space: &GradedSpace, map: &ElementaryMap) -> Result<()> {
    if map.source.exponents().len() != space.dim() || map.source.even_dim() != space.even {
        return Err(Error::SpaceMismatch(space.to_string(), format!("{map}")));
    }
    Ok(())
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (negative, body) = coefficient_text(c);
            let sep = match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            match body {
                Some(b) => write!(f, "{sep}{b}*{m}")?,
                None => write!(f, "{sep}{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sign and prefix for a coefficient written in front of a map; `None`
/// means the coefficient is ±1.
fn coefficient_text(c: &SuperPolynomial) -> (bool, Option<String>) {
    let mut terms = c.terms();
    match (terms.next(), terms.next()) {
        (Some((m, x)), None) => {
            let (negative, body) = signed_coefficient(x);
            let text = match (m.degree(), body.as_str()) {
                (0, "1") => None,
                (0, _) => Some(body),
                (_, "1") => Some(m.to_string()),
                _ => Some(format!("{body}*{m}")),
            };
            (negative, text)
        }
        _ => (false, Some(format!("({c})"))),
    }
}

/// `[α, β]`, bilinear over the coefficients.
pub fn bracket(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    bracket_with(a, b, None)
}

/// `[α, β]` with every coefficient term above `max_degree` dropped.
pub fn bracket_truncated(a: &Cochain, b: &Cochain, max_degree: usize) -> Result<Cochain> {
    bracket_with(a, b, Some(max_degree))
}

fn bracket_with(a: &Cochain, b: &Cochain, max_degree: Option<usize>) -> Result<Cochain> {
    a.check_compatible(b)?;
    let mut cache: HashMap<(&ElementaryMap, &ElementaryMap), Vec<(ElementaryMap, i64)>> = HashMap::new();
    let mut out = Cochain::zero(a.space, a.params);
    for (phi, p) in &a.terms {
        for (psi, q) in &b.terms {
            let e = cache.entry((phi, psi)).or_insert_with(|| elementary_bracket(phi, psi));
            if e.is_empty() {
                continue;
            }
            let twisted;
            let q = if phi.parity().is_odd() {
                twisted = q.parity_twist();
                &twisted
            } else {
                q
            };
            let pq = match max_degree {
                Some(k) => p.mul_truncated(q, k),
                None => p * q,
            };
            if pq.is_zero() {
                continue;
            }
            for (map, k) in e.iter() {
                out.add_term(map.clone(), &pq.scale(&Scalar::from_int(*k)));
            }
        }
    }
    Ok(out)
}

/// Bracket of two elementary maps, read off the two-sum formula over
/// unshuffles. Each sum is supported on a single word.
pub fn elementary_bracket(alpha: &ElementaryMap, beta: &ElementaryMap) -> Vec<(ElementaryMap, i64)> {
    let mut out: BTreeMap<ElementaryMap, i64> = BTreeMap::new();
    insert_composition(alpha, beta, 1, &mut out);
    let sign = if alpha.parity().is_odd() && beta.parity().is_odd() {
        1
    } else {
        -1
    };
    insert_composition(beta, alpha, sign, &mut out);
    out.into_iter().filter(|(_, k)| *k != 0).collect()
}

/// Adds `scale · Σ_{σ∈Sh(n,m-1)} ε(σ) α(β(w_σ(1)…w_σ(n)) w_σ(n+1)…)` for
/// `α ∈ L_m`, `β ∈ L_n`.
fn insert_composition(alpha: &ElementaryMap, beta: &ElementaryMap, scale: i64, out: &mut BTreeMap<ElementaryMap, i64>) {
    let j = beta.target;
    if !alpha.source.contains(j) {
        return;
    }
    // the only word on which the composition can be nonzero
    let word = match alpha.source.without(j) {
        None => beta.source.clone(),
        Some(rest) => match rest.mul(&beta.source) {
            Some((w, _)) => w,
            None => return,
        },
    };
    let space = GradedSpace {
        even: word.even_dim(),
        odd: word.exponents().len() - word.even_dim(),
    };
    let letters = word.letters();
    let parities: Vec<Parity> = letters.iter().map(|&l| space.letter_parity(l)).collect();
    let n = beta.weight();
    let mut total = 0i64;
    for sh in unshuffles(n, letters.len(), &parities).expect("n <= weight") {
        let left: Vec<usize> = sh.left.iter().map(|&p| letters[p]).collect();
        let (lw, _) = space.word_from_letters(&left).expect("sub-word");
        if lw != beta.source {
            continue;
        }
        let right: Vec<usize> = sh.right.iter().map(|&p| letters[p]).collect();
        let (arg, negative) = if right.is_empty() {
            (space.letter(j), false)
        } else {
            let (rw, _) = space.word_from_letters(&right).expect("sub-word");
            match rw.prepend(j) {
                Some(x) => x,
                None => continue,
            }
        };
        if arg == alpha.source {
            total += if negative { -sh.sign as i64 } else { sh.sign as i64 };
        }
    }
    if total != 0 {
        *out.entry(ElementaryMap {
            source: word,
            target: alpha.target,
        })
        .or_default() += scale * total;
    }
}

/// `φ̃(w)`: the coderivation lift of an elementary map applied to a word.
pub fn lift_elementary(space: &GradedSpace, phi: &ElementaryMap, word: &Word) -> BTreeMap<Word, i64> {
    let mut out: BTreeMap<Word, i64> = BTreeMap::new();
    let k = phi.weight();
    let letters = word.letters();
    if k > letters.len() {
        return out;
    }
    let parities: Vec<Parity> = letters.iter().map(|&l| space.letter_parity(l)).collect();
    for sh in unshuffles(k, letters.len(), &parities).expect("1 <= k <= n") {
        let left: Vec<usize> = sh.left.iter().map(|&p| letters[p]).collect();
        let (lw, _) = space.word_from_letters(&left).expect("sub-word");
        if lw != phi.source {
            continue;
        }
        let right: Vec<usize> = sh.right.iter().map(|&p| letters[p]).collect();
        let (image, negative) = if right.is_empty() {
            (space.letter(phi.target), false)
        } else {
            let (rw, _) = space.word_from_letters(&right).expect("sub-word");
            match rw.prepend(phi.target) {
                Some(x) => x,
                None => continue,
            }
        };
        *out.entry(image).or_default() += if negative { -sh.sign as i64 } else { sh.sign as i64 };
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `φ̃(w)` for a cochain with coefficients. A word shorter than every map
/// gives the zero vector.
pub fn lift_apply(phi: &Cochain, word: &Word) -> SVector {
    let mut out: SVector = BTreeMap::new();
    for (m, c) in &phi.terms {
        for (w, k) in lift_elementary(&phi.space, m, word) {
            let entry = out.entry(w).or_insert_with(|| SuperPolynomial::zero(phi.params));
            entry.add_scaled(c, &Scalar::from_int(k));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `α∘β̃ − (−1)^{|α||β|} β∘α̃`, evaluated word by word. Independent of
/// [`bracket`]; restricted to parameter-free cochains.
pub fn bracket_via_lift(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    a.check_compatible(b)?;
    if !a.is_parameter_free() || !b.is_parameter_free() {
        return Err(Error::HasParameters);
    }
    let space = a.space;
    let mut out = Cochain::zero(space, a.params);
    for (phi, p) in &a.terms {
        for (psi, q) in &b.terms {
            let c = &p.constant_term() * &q.constant_term();
            let sign = if phi.parity().is_odd() && psi.parity().is_odd() {
                -1
            } else {
                1
            };
            let weight = phi.weight() + psi.weight() - 1;
            for w in space.weight_basis(weight) {
                let x = lift_elementary(&space, psi, &w).get(&phi.source).copied().unwrap_or(0);
                let y = lift_elementary(&space, phi, &w).get(&psi.source).copied().unwrap_or(0);
                if x != 0 {
                    out.add_scalar_term(ElementaryMap::new(w.clone(), phi.target)?, &(&c * &Scalar::from_int(x)));
                }
                if y != 0 {
                    out.add_scalar_term(
                        ElementaryMap::new(w.clone(), psi.target)?,
                        &(&c * &Scalar::from_int(-sign * y)),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Whether `[d, d] = 0` for an odd, parameter-free cochain.
pub fn is_codifferential(d: &Cochain) -> Result<bool> {
    if !d.is_parameter_free() {
        return Err(Error::HasParameters);
    }
    if !d.is_zero() && d.parity() != Some(Parity::Odd) {
        return Err(Error::NotOdd);
    }
    Ok(bracket(d, d)?.is_zero())
}

/// `D(φ) = [φ, d]`. A parameter-free `d` is lifted to the parameters of `φ`.
pub fn coboundary(d: &Cochain, phi: &Cochain) -> Result<Cochain> {
    if d.params != phi.params && d.is_parameter_free() {
        return bracket(phi, &d.with_params(phi.params));
    }
    bracket(phi, d)
}

/// An invertible, parity-preserving linear map `g` of `W`. Column `a` of the
/// matrix holds the coordinates of `g(e_a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAutomorphism {
    space: GradedSpace,
    matrix: Matrix,
    inverse: Matrix,
}

impl LinearAutomorphism {
    pub fn new(space: GradedSpace, matrix: Matrix) -> Result<Self> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::MatrixShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected: n,
            });
        }
        for row in 0..n {
            for col in 0..n {
                if !matrix[(row, col)].is_zero() && space.letter_parity(row) != space.letter_parity(col) {
                    return Err(Error::MixedParityAutomorphism { row, col });
                }
            }
        }
        let inverse = matrix.inverse()?;
        Ok(LinearAutomorphism { space, matrix, inverse })
    }

    pub fn identity(space: GradedSpace) -> Self {
        let m = Matrix::identity(space.dim());
        LinearAutomorphism {
            space,
            matrix: m.clone(),
            inverse: m,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearAutomorphism {
        LinearAutomorphism {
            space: self.space,
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `ĝ(w) = g(w_1)…g(w_n)` expanded in the word basis.
    pub fn apply_word(&self, word: &Word) -> BTreeMap<Word, Scalar> {
        let mut acc: Option<BTreeMap<Word, Scalar>> = None;
        for a in word.letters() {
            let image: Vec<(Word, Scalar)> = (0..self.space.dim())
                .filter(|&b| !self.matrix[(b, a)].is_zero())
                .map(|b| (self.space.letter(b), self.matrix[(b, a)].clone()))
                .collect();
            acc = Some(match acc {
                None => image.into_iter().collect(),
                Some(prev) => {
                    let mut next: BTreeMap<Word, Scalar> = BTreeMap::new();
                    for (u, x) in &prev {
                        for (v, y) in &image {
                            if let Some((w, negative)) = u.mul(v) {
                                let c = x * y;
                                *next.entry(w).or_default() += &if negative { -c } else { c };
                            }
                        }
                    }
                    next.retain(|_, c| !c.is_zero());
                    next
                }
            });
        }
        acc.unwrap_or_default()
    }
}

/// The pullback `ĝ⁻¹ ∘ d ∘ ĝ`.
pub fn transform(d: &Cochain, g: &LinearAutomorphism) -> Result<Cochain> {
    if g.space != d.space {
        return Err(Error::SpaceMismatch(d.space.to_string(), g.space.to_string()));
    }
    let space = d.space;
    let mut by_source: HashMap<&Word, Vec<(usize, &SuperPolynomial)>> = HashMap::new();
    for (m, c) in &d.terms {
        by_source.entry(&m.source).or_default().push((m.target, c));
    }
    let mut out = Cochain::zero(space, d.params);
    for n in d.weights() {
        for w in space.weight_basis(n) {
            let mut image = vec![SuperPolynomial::zero(d.params); space.dim()];
            for (u, x) in g.apply_word(&w) {
                if let Some(entries) = by_source.get(&u) {
                    for (j, c) in entries {
                        image[*j].add_scaled(c, &x);
                    }
                }
            }
            for j in 0..space.dim() {
                let mut coef = SuperPolynomial::zero(d.params);
                for (b, v) in image.iter().enumerate() {
                    let k = &g.inverse[(j, b)];
                    if !k.is_zero() {
                        coef.add_scaled(v, k);
                    }
                }
                out.add_term(ElementaryMap::new(w.clone(), j)?, &coef);
            }
        }
    }
    Ok(out)
}

/// The `L_1` cochain `x ↦ −d(w·x)` attached to the basis vector `w`.
pub fn inner_derivation(d: &Cochain, w: usize) -> Result<Cochain> {
    let space = d.space;
    if w >= space.dim() {
        return Err(Error::InvalidBasisIndex {
            index: w,
            dim: space.dim(),
        });
    }
    let mut out = Cochain::zero(space, d.params);
    let lw = space.letter(w);
    for x in 0..space.dim() {
        let Some((wx, negative)) = lw.mul(&space.letter(x)) else {
            continue;
        };
        let sign = Scalar::from_int(if negative { 1 } else { -1 });
        for (j, c) in d.apply(&wx).iter().enumerate() {
            out.add_term(ElementaryMap::new(space.letter(x), j)?, &c.scale(&sign));
        }
    }
    Ok(out)
}
