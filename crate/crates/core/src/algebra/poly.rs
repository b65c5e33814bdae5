//! Super-commutative parameter polynomials ℂ[t₁,…]⊗Λ[θ₁,…].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(!self.is_odd())
    }

    pub fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.is_odd() ^ other.is_odd())
    }
}

/// A named deformation parameter. Even parameters are written `t<k>`,
/// odd ones `theta<k>`; `index` counts within its parity, starting at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Parameter {
    pub name: String,
    pub parity: Parity,
    pub index: usize,
}

impl Parameter {
    pub fn even(index: usize) -> Self {
        Parameter {
            name: format!("t{index}"),
            parity: Parity::Even,
            index,
        }
    }

    pub fn odd(index: usize) -> Self {
        Parameter {
            name: format!("theta{index}"),
            parity: Parity::Odd,
            index,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The parameter list of a polynomial ring: `even` commuting generators
/// `t1..` and `odd` anticommuting generators `theta1..`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ParamSpace {
    pub even: usize,
    pub odd: usize,
}

impl ParamSpace {
    pub const EMPTY: ParamSpace = ParamSpace { even: 0, odd: 0 };

    pub fn new(even: usize, odd: usize) -> Result<Self> {
        if odd > 64 {
            return Err(Error::TooManyOddParameters(odd));
        }
        Ok(ParamSpace { even, odd })
    }

    pub fn is_empty(&self) -> bool {
        self.even == 0 && self.odd == 0
    }

    pub fn parameters(&self) -> Vec<Parameter> {
        (1..=self.even)
            .map(Parameter::even)
            .chain((1..=self.odd).map(Parameter::odd))
            .collect()
    }

    pub fn check_same(&self, other: &ParamSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParameterMismatch(self.to_string(), other.to_string()))
        }
    }

    /// Every monomial of total degree exactly `degree`, in canonical order.
    pub fn monomials_of_degree(&self, degree: usize) -> Vec<SuperMonomial> {
        let mut out = Vec::new();
        for odd_count in 0..=degree.min(self.odd) {
            let even_deg = degree - odd_count;
            if self.even == 0 && even_deg > 0 {
                continue;
            }
            let evens = compositions(even_deg, self.even);
            let odds = subsets(self.odd, odd_count);
            for e in &evens {
                for &o in &odds {
                    let mut m = SuperMonomial {
                        even: e.iter().map(|&x| x as u8).collect(),
                        odd: o,
                    };
                    m.trim();
                    out.push(m);
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for ParamSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.parameters().into_iter().map(|p| p.name).collect();
        write!(f, "[{}]", names.join(","))
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            go(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    go(0, n, k, 0, &mut out);
    out
}

/// A monomial `t^a θ_{i1}…θ_{ik}` with the odd factors in increasing order.
///
/// `even` may be shorter than the number of even parameters; missing
/// trailing entries are zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SuperMonomial {
    even: SmallVec<[u8; 12]>,
    odd: u64,
}

impl SuperMonomial {
    pub fn one() -> Self {
        SuperMonomial::default()
    }

    pub fn from_parts(even: &[u8], odd: &[usize]) -> Self {
        let mut m = SuperMonomial {
            even: even.iter().copied().collect(),
            odd: odd.iter().fold(0u64, |acc, &i| acc | (1 << i)),
        };
        m.trim();
        m
    }

    /// The even generator `t_{index+1}` (zero-based index).
    pub fn even_var(index: usize) -> Self {
        let mut even = SmallVec::from_elem(0, index + 1);
        even[index] = 1;
        SuperMonomial { even, odd: 0 }
    }

    /// The odd generator `θ_{index+1}` (zero-based index).
    pub fn odd_var(index: usize) -> Self {
        SuperMonomial {
            even: SmallVec::new(),
            odd: 1 << index,
        }
    }

    fn trim(&mut self) {
        while self.even.last() == Some(&0) {
            self.even.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.even.iter().map(|&e| e as usize).sum::<usize>() + self.odd.count_ones() as usize
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.count_ones() % 2 == 1)
    }

    pub fn even_exponent(&self, index: usize) -> u8 {
        self.even.get(index).copied().unwrap_or(0)
    }

    pub fn even_exponents(&self) -> &[u8] {
        &self.even
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn odd_factors(&self) -> Vec<usize> {
        (0..64).filter(|i| self.odd >> i & 1 == 1).collect()
    }

    pub fn has_odd(&self) -> bool {
        self.odd != 0
    }

    fn fits(&self, params: &ParamSpace) -> bool {
        self.even.len() <= params.even && (params.odd == 64 || self.odd >> params.odd == 0)
    }

    /// Koszul-signed product: `None` when an odd factor repeats, otherwise
    /// the merged monomial and whether the interleaving flips the sign.
    pub fn mul(&self, other: &SuperMonomial) -> Option<(SuperMonomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let mut even = self.even.clone();
        if other.even.len() > even.len() {
            even.resize(other.even.len(), 0);
        }
        for (slot, e) in even.iter_mut().zip(other.even.iter()) {
            *slot += e;
        }
        let negative = merge_sign(self.odd, other.odd);
        Some((
            SuperMonomial {
                even,
                odd: self.odd | other.odd,
            },
            negative,
        ))
    }

    /// `true` if `self` divides `other` (ignoring signs).
    pub fn divides(&self, other: &SuperMonomial) -> bool {
        self.odd & !other.odd == 0 && self.even.iter().enumerate().all(|(i, &e)| e <= other.even_exponent(i))
    }
}

/// Sign of reordering the concatenation `a b` of two odd-factor sets into
/// increasing order: the number of pairs (i in a, j in b) with j < i.
pub(crate) fn merge_sign(a: u64, b: u64) -> bool {
    let mut count = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        count += if j >= 63 { 0 } else { (a >> (j + 1)).count_ones() };
    }
    count % 2 == 1
}

impl Ord for SuperMonomial {
    /// Degree first, then even exponents (higher powers of earlier
    /// parameters first), then odd factors as increasing index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                let n = self.even.len().max(other.even.len());
                for i in 0..n {
                    let c = other.even_exponent(i).cmp(&self.even_exponent(i));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
            .then_with(|| cmp_index_lists(self.odd, other.odd))
    }
}

/// Compare two odd-factor sets as increasing index lists, lexicographically.
fn cmp_index_lists(a: u64, b: u64) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let p = (a ^ b).trailing_zeros();
    let (holder_is_a, other) = if a >> p & 1 == 1 { (true, b) } else { (false, a) };
    let other_continues = p < 63 && other >> (p + 1) != 0;
    let holder_less = other_continues;
    match (holder_is_a, holder_less) {
        (true, true) | (false, false) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

impl PartialOrd for SuperMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.even.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("t{}", i + 1)),
                _ => parts.push(format!("t{}^{}", i + 1, e)),
            }
        }
        for i in self.odd_factors() {
            parts.push(format!("theta{}", i + 1));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of the super-commutative parameter algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperPolynomial {
    params: ParamSpace,
    terms: BTreeMap<SuperMonomial, Scalar>,
}

impl SuperPolynomial {
    pub fn zero(params: ParamSpace) -> Self {
        SuperPolynomial {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(params: ParamSpace, c: Scalar) -> Self {
        Self::monomial(params, SuperMonomial::one(), c)
    }

    pub fn one(params: ParamSpace) -> Self {
        Self::constant(params, Scalar::one())
    }

    pub fn monomial(params: ParamSpace, m: SuperMonomial, c: Scalar) -> Self {
        assert!(m.fits(&params), "monomial {m} outside parameter list {params}");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SuperPolynomial { params, terms }
    }

    /// The generator `t_k` (1-based).
    pub fn t(params: ParamSpace, k: usize) -> Self {
        assert!(k >= 1 && k <= params.even, "t{k} not in {params}");
        Self::monomial(params, SuperMonomial::even_var(k - 1), Scalar::one())
    }

    /// The generator `θ_k` (1-based).
    pub fn theta(params: ParamSpace, k: usize) -> Self {
        assert!(k >= 1 && k <= params.odd, "theta{k} not in {params}");
        Self::monomial(params, SuperMonomial::odd_var(k - 1), Scalar::one())
    }

    pub fn params(&self) -> ParamSpace {
        self.params
    }

    /// Reinterpret over a larger parameter list (same generator names).
    pub fn with_params(&self, params: ParamSpace) -> Self {
        assert!(self.params.even <= params.even && self.params.odd <= params.odd);
        SuperPolynomial {
            params,
            terms: self.terms.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant term if the polynomial is a scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&SuperMonomial::one())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Lowest degree of a nonzero term (`None` for zero).
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.low_degree().is_none_or(|d| d == self.degree())
    }

    /// `Some(parity)` if every term has the same parity.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.fits(&self.params));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_poly(&mut self, other: &SuperPolynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, other: &SuperPolynomial, k: &Scalar) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(c * k));
        }
    }

    pub fn scale(&self, k: &Scalar) -> SuperPolynomial {
        if k.is_zero() {
            return SuperPolynomial::zero(self.params);
        }
        SuperPolynomial {
            params: self.params,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Koszul-signed product.
    pub fn mul(&self, other: &SuperPolynomial) -> Result<SuperPolynomial> {
        self.params.check_same(&other.params)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(self.params);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, negative)) = a.mul(b) {
                    let c = ca * cb;
                    out.add_term(m, &if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// Product with every term above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &SuperPolynomial, max_degree: usize) -> SuperPolynomial {
        assert_eq!(self.params, other.params, "parameter lists differ");
        let mut out = SuperPolynomial::zero(self.params);
        for (a, ca) in &self.terms {
            let da = a.degree();
            if da > max_degree {
                continue;
            }
            for (b, cb) in &other.terms {
                if da + b.degree() > max_degree {
                    continue;
                }
                if let Some((m, negative)) = a.mul(b) {
                    let c = ca * cb;
                    out.add_term(m, &if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &SuperMonomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(self.params);
        for (a, c) in &self.terms {
            if let Some((p, negative)) = m.mul(a) {
                out.add_term(p, &if negative { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// `(-1)^{|m|}` applied termwise: odd terms change sign. This is the
    /// sign picked up when the polynomial moves past an odd object.
    pub fn parity_twist(&self) -> SuperPolynomial {
        SuperPolynomial {
            params: self.params,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.parity().is_odd() { -c } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Terms of degree exactly `k`.
    pub fn homogeneous_part(&self, k: usize) -> SuperPolynomial {
        self.filter(|m| m.degree() == k)
    }

    /// Terms of degree at most `k`.
    pub fn truncate(&self, k: usize) -> SuperPolynomial {
        self.filter(|m| m.degree() <= k)
    }

    /// Set every odd parameter to zero.
    pub fn even_projection(&self) -> SuperPolynomial {
        self.filter(|m| !m.has_odd())
    }

    pub fn filter(&self, keep: impl Fn(&SuperMonomial) -> bool) -> SuperPolynomial {
        SuperPolynomial {
            params: self.params,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute scalars for even parameters (zero-based index → value).
    pub fn substitute_even(&self, index: usize, value: &Scalar) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(self.params);
        for (m, c) in &self.terms {
            let e = m.even_exponent(index);
            if e == 0 {
                out.add_term(m.clone(), c);
                continue;
            }
            let mut stripped = m.clone();
            stripped.even[index] = 0;
            stripped.trim();
            out.add_term(stripped, &(c * value.pow(e as u32)));
        }
        out
    }

    /// Leading term in the local order (lowest degree first).
    pub fn lead(&self) -> Option<(&SuperMonomial, &Scalar)> {
        self.terms.iter().next()
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, o: &SuperPolynomial) -> SuperPolynomial {
        assert_eq!(self.params, o.params, "parameter lists differ");
        let mut out = self.clone();
        out.add_assign_poly(o);
        out
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, o: &SuperPolynomial) -> SuperPolynomial {
        assert_eq!(self.params, o.params, "parameter lists differ");
        let mut out = self.clone();
        out.add_scaled(o, &Scalar::from_int(-1));
        out
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;
    /// Panics on mismatched parameter lists; use [`SuperPolynomial::mul`]
    /// for the fallible form.
    fn mul(self, o: &SuperPolynomial) -> SuperPolynomial {
        SuperPolynomial::mul(self, o).expect("parameter lists differ")
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (negative, body) = signed_coefficient(c);
            let sep = match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let text = match (m.degree(), body.as_str()) {
                (0, _) => body,
                (_, "1") => m.to_string(),
                _ => format!("{body}*{m}"),
            };
            write!(f, "{sep}{text}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Split a coefficient into a sign and a body that can be written after a
/// `+`/`-` separator. Mixed complex numbers keep their sign inside parens.
pub(crate) fn signed_coefficient(c: &Scalar) -> (bool, String) {
    use num_traits::{Signed, Zero};
    if c.is_real() || c.re().is_zero() {
        let negative = if c.is_real() {
            c.re().is_negative()
        } else {
            c.im().is_negative()
        };
        let abs = if negative { -c } else { c.clone() };
        (negative, abs.to_string())
    } else {
        (false, format!("({c})"))
    }
}
