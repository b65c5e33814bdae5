//! ℤ₂-graded spaces, the word basis of the reduced symmetric coalgebra S(W),
//! Koszul signs and unshuffles.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::algebra::Parity;
use crate::error::{Error, Result};

/// An `m|n`-dimensional graded space with even basis `e1..em` and odd basis
/// `f1..fn`. Letters are numbered `0..m+n` with the even ones first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    pub even: usize,
    pub odd: usize,
}

impl GradedSpace {
    pub fn new(even: usize, odd: usize) -> Result<Self> {
        if even + odd == 0 {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        if even + odd > 32 {
            return Err(Error::InvalidSpace(format!("{even}|{odd} is too large")));
        }
        Ok(GradedSpace { even, odd })
    }

    /// The purely odd space `0|n`.
    pub fn odd(n: usize) -> Self {
        GradedSpace::new(0, n).expect("n >= 1")
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn letter_parity(&self, letter: usize) -> Parity {
        Parity::from_bit(letter >= self.even)
    }

    pub fn letter_name(&self, letter: usize) -> String {
        if letter < self.even {
            format!("e{}", letter + 1)
        } else {
            format!("f{}", letter - self.even + 1)
        }
    }

    /// Largest weight with a nonzero symmetric power, if finite.
    pub fn max_weight(&self) -> Option<usize> {
        (self.even == 0).then_some(self.odd)
    }

    pub fn letter(&self, letter: usize) -> Word {
        let mut exps = SmallVec::from_elem(0, self.dim());
        exps[letter] = 1;
        Word {
            even_dim: self.even as u8,
            exps,
        }
    }

    pub fn word(&self, exps: &[u8]) -> Result<Word> {
        if exps.len() != self.dim() {
            return Err(Error::InvalidWord(format!(
                "exponent vector {exps:?} has length {}, space {self} needs {}",
                exps.len(),
                self.dim()
            )));
        }
        if exps[self.even..].iter().any(|&e| e > 1) {
            return Err(Error::InvalidWord(format!("odd exponent above 1 in {exps:?}")));
        }
        if exps.iter().all(|&e| e == 0) {
            return Err(Error::InvalidWord(
                "the empty word is not in the reduced coalgebra".into(),
            ));
        }
        Ok(Word {
            even_dim: self.even as u8,
            exps: exps.iter().copied().collect(),
        })
    }

    /// Build a word from a list of letters (any order); the sign is the
    /// Koszul sign of sorting them. `None` if an odd letter repeats.
    pub fn word_from_letters(&self, letters: &[usize]) -> Option<(Word, bool)> {
        let mut exps: SmallVec<[u8; 8]> = SmallVec::from_elem(0, self.dim());
        let mut negative = false;
        for (k, &a) in letters.iter().enumerate() {
            if a >= self.even {
                if exps[a] > 0 {
                    return None;
                }
                // odd letter a moves left past earlier odd letters b > a
                let passes = letters[..k].iter().filter(|&&b| b >= self.even && b > a).count();
                negative ^= passes % 2 == 1;
            }
            exps[a] += 1;
        }
        if letters.is_empty() {
            return None;
        }
        Some((
            Word {
                even_dim: self.even as u8,
                exps,
            },
            negative,
        ))
    }

    /// All words of the given weight, in lexicographic order of their letter
    /// sequences.
    pub fn weight_basis(&self, weight: usize) -> Vec<Word> {
        let mut out = Vec::new();
        if weight == 0 {
            return out;
        }
        let mut exps = vec![0u8; self.dim()];
        self.fill(0, weight, &mut exps, &mut out);
        out.sort();
        out
    }

    fn fill(&self, letter: usize, remaining: usize, exps: &mut Vec<u8>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word {
                even_dim: self.even as u8,
                exps: exps.iter().copied().collect(),
            });
            return;
        }
        if letter == self.dim() {
            return;
        }
        let cap = if letter < self.even {
            remaining
        } else {
            1.min(remaining)
        };
        for e in (0..=cap).rev() {
            exps[letter] = e as u8;
            self.fill(letter + 1, remaining - e, exps, out);
        }
        exps[letter] = 0;
    }

    /// Reduced coproduct Δ(w) = Σ_{k=1}^{n-1} Σ_{σ ∈ Sh(k,n-k)} ε(σ) w_σ(1..k) ⊗ w_σ(k+1..n),
    /// with equal terms collected.
    pub fn coproduct(&self, word: &Word) -> BTreeMap<(Word, Word), i64> {
        let letters = word.letters();
        let parities: Vec<Parity> = letters.iter().map(|&l| self.letter_parity(l)).collect();
        let n = letters.len();
        let mut out: BTreeMap<(Word, Word), i64> = BTreeMap::new();
        for k in 1..n {
            for sh in unshuffles(k, n, &parities).expect("1 <= k < n") {
                let pick = |pos: &[usize]| pos.iter().map(|&p| letters[p]).collect::<Vec<_>>();
                let (l, s1) = self.word_from_letters(&pick(&sh.left)).expect("sub-word of a word");
                let (r, s2) = self.word_from_letters(&pick(&sh.right)).expect("sub-word of a word");
                debug_assert!(!s1 && !s2);
                *out.entry((l, r)).or_default() += sh.sign as i64;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

impl FromStr for GradedSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::InvalidSpace(format!("expected 'm|n', got '{s}'")))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidSpace(format!("bad dimension '{x}' in '{s}'")))
        };
        GradedSpace::new(parse(a)?, parse(b)?)
    }
}

/// A basis monomial `e1^k1 … em^km f1^l1 … fn^ln` of S(W), stored as its
/// exponent vector (even exponents first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    even_dim: u8,
    exps: SmallVec<[u8; 8]>,
}

impl Word {
    /// Number of even letters of the ambient space.
    pub fn even_dim(&self) -> usize {
        self.even_dim as usize
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn weight(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn parity(&self) -> Parity {
        let odd: usize = self.exps[self.even_dim as usize..].iter().map(|&e| e as usize).sum();
        Parity::from_bit(odd % 2 == 1)
    }

    /// The letter sequence in canonical order, repeated letters expanded.
    pub fn letters(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect()
    }

    pub fn contains(&self, letter: usize) -> bool {
        self.exps.get(letter).is_some_and(|&e| e > 0)
    }

    /// Product `self · other` in S(W): `None` if an odd letter repeats,
    /// otherwise the word and whether the Koszul sign is negative.
    pub fn mul(&self, other: &Word) -> Option<(Word, bool)> {
        let m = self.even_dim as usize;
        let mut negative = false;
        let mut exps = self.exps.clone();
        for (i, &e) in other.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if i >= m {
                if exps[i] > 0 {
                    return None;
                }
                // odd letter i of `other` passes the odd letters of `self` above it
                let passes: u8 = self.exps[i + 1..].iter().sum();
                negative ^= passes % 2 == 1;
            }
            exps[i] += e;
        }
        Some((
            Word {
                even_dim: self.even_dim,
                exps,
            },
            negative,
        ))
    }

    /// `letter · self`, moved into canonical position.
    pub fn prepend(&self, letter: usize) -> Option<(Word, bool)> {
        let m = self.even_dim as usize;
        let mut exps = self.exps.clone();
        let mut negative = false;
        if letter >= m {
            if exps[letter] > 0 {
                return None;
            }
            let passes: u8 = self.exps[m..letter].iter().sum();
            negative = passes % 2 == 1;
        }
        exps[letter] += 1;
        Some((
            Word {
                even_dim: self.even_dim,
                exps,
            },
            negative,
        ))
    }

    /// The word with one copy of `letter` removed (`None` if absent or if
    /// nothing would remain).
    pub fn without(&self, letter: usize) -> Option<Word> {
        if !self.contains(letter) || self.weight() == 1 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[letter] -= 1;
        Some(Word {
            even_dim: self.even_dim,
            exps,
        })
    }

    /// Compact exponent string, e.g. `110`, or `2,0,1` if an exponent
    /// exceeds 9.
    pub fn exponent_string(&self) -> String {
        if self.exps.iter().all(|&e| e < 10) {
            self.exps.iter().map(|e| e.to_string()).collect()
        } else {
            self.exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        // Same weight: lexicographic letter sequences are reverse-lexicographic
        // exponent vectors.
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.even_dim as usize;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if i < m {
                format!("e{}", i + 1)
            } else {
                format!("f{}", i - m + 1)
            };
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse `f1f2`, `e1^2f3` against a space.
pub fn parse_word(space: &GradedSpace, text: &str) -> Result<Word> {
    let bad = || Error::InvalidWord(format!("cannot parse word '{text}'"));
    let bytes = text.trim().as_bytes();
    let mut exps = vec![0u8; space.dim()];
    let mut k = 0;
    let number = |k: &mut usize| -> Option<usize> {
        let start = *k;
        while *k < bytes.len() && bytes[*k].is_ascii_digit() {
            *k += 1;
        }
        std::str::from_utf8(&bytes[start..*k]).ok()?.parse().ok()
    };
    while k < bytes.len() {
        let kind = bytes[k];
        k += 1;
        let idx = number(&mut k).ok_or_else(bad)?;
        let mut power = 1;
        if k < bytes.len() && bytes[k] == b'^' {
            k += 1;
            power = number(&mut k).ok_or_else(bad)?;
        }
        let letter = match kind {
            b'e' if idx >= 1 && idx <= space.even => idx - 1,
            b'f' if idx >= 1 && idx <= space.odd => space.even + idx - 1,
            _ => return Err(bad()),
        };
        exps[letter] += u8::try_from(power).map_err(|_| bad())?;
    }
    space.word(&exps)
}

/// An unshuffle of `{0..n}` into an increasing left block and an increasing
/// right block (positions are zero-based), with its Koszul sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unshuffle {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub sign: i8,
}

/// Koszul sign ε(σ) defined by `w_σ(1)…w_σ(n) = ε(σ) w_1…w_n`, with
/// `permutation[a] = σ(a)` (zero-based).
pub fn koszul_sign(permutation: &[usize], parities: &[Parity]) -> Result<i8> {
    let n = permutation.len();
    if parities.len() != n {
        return Err(Error::LengthMismatch {
            perm: n,
            parities: parities.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in permutation {
        if p >= n || seen[p] {
            return Err(Error::NotAPermutation(permutation.to_vec()));
        }
        seen[p] = true;
    }
    let mut inversions = 0usize;
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (permutation[a], permutation[b]);
            if x > y && parities[x].is_odd() && parities[y].is_odd() {
                inversions += 1;
            }
        }
    }
    Ok(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// All `C(total, k)` unshuffles of type `(k, total-k)`, ordered
/// lexicographically by their left block.
pub fn unshuffles(k: usize, total: usize, parities: &[Parity]) -> Result<Vec<Unshuffle>> {
    if k < 1 || k > total {
        return Err(Error::UnshuffleRange { k, total });
    }
    if parities.len() != total {
        return Err(Error::LengthMismatch {
            perm: total,
            parities: parities.len(),
        });
    }
    let mut out = Vec::new();
    let mut left = Vec::with_capacity(k);
    collect_unshuffles(0, k, total, parities, &mut left, &mut out);
    Ok(out)
}

fn collect_unshuffles(
    start: usize,
    k: usize,
    total: usize,
    parities: &[Parity],
    left: &mut Vec<usize>,
    out: &mut Vec<Unshuffle>,
) {
    if left.len() == k {
        let right: Vec<usize> = (0..total).filter(|p| !left.contains(p)).collect();
        // Each odd left letter passes the odd right letters placed before it.
        let mut inversions = 0;
        for &l in left.iter() {
            if parities[l].is_odd() {
                inversions += right.iter().filter(|&&r| r < l && parities[r].is_odd()).count();
            }
        }
        out.push(Unshuffle {
            left: left.clone(),
            right,
            sign: if inversions % 2 == 0 { 1 } else { -1 },
        });
        return;
    }
    for p in start..total {
        if total - p < k - left.len() {
            break;
        }
        left.push(p);
        collect_unshuffles(p + 1, k, total, parities, left, out);
        left.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Parity::{Even, Odd};

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&[0, 1, 2], &[Odd; 3]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[Odd, Odd]).unwrap(), -1);
        // the cycle (2,3,1) carries + on three odd letters
        assert_eq!(koszul_sign(&[1, 2, 0], &[Odd; 3]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[Even, Odd]).unwrap(), 1);
    }

    #[test]
    fn koszul_rejects_non_bijections() {
        assert!(matches!(
            koszul_sign(&[0, 0], &[Odd, Odd]),
            Err(Error::NotAPermutation(_))
        ));
        assert!(matches!(
            koszul_sign(&[0, 2], &[Odd, Odd]),
            Err(Error::NotAPermutation(_))
        ));
        assert!(matches!(
            koszul_sign(&[0], &[Odd, Odd]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn unshuffle_signs_two_one() {
        let sh = unshuffles(2, 3, &[Odd; 3]).unwrap();
        let lefts: Vec<_> = sh.iter().map(|s| s.left.clone()).collect();
        assert_eq!(lefts, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let signs: Vec<_> = sh.iter().map(|s| s.sign).collect();
        assert_eq!(signs, vec![1, -1, 1]);
    }

    #[test]
    fn unshuffle_trivial_and_even() {
        let sh = unshuffles(1, 1, &[Odd]).unwrap();
        assert_eq!(
            sh,
            vec![Unshuffle {
                left: vec![0],
                right: vec![],
                sign: 1
            }]
        );
        let sh = unshuffles(1, 2, &[Even, Even]).unwrap();
        assert_eq!(sh.len(), 2);
        assert!(sh.iter().all(|s| s.sign == 1));
    }

    #[test]
    fn unshuffle_range_checked() {
        assert!(matches!(unshuffles(0, 2, &[Odd; 2]), Err(Error::UnshuffleRange { .. })));
        assert!(matches!(unshuffles(3, 2, &[Odd; 2]), Err(Error::UnshuffleRange { .. })));
    }

    #[test]
    fn weight_bases_of_odd_three_space() {
        let w = GradedSpace::odd(3);
        let names = |k| w.weight_basis(k).iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(names(1), ["f1", "f2", "f3"]);
        assert_eq!(names(2), ["f1f2", "f1f3", "f2f3"]);
        assert_eq!(names(3), ["f1f2f3"]);
        assert!(names(4).is_empty());
        assert!(w.weight_basis(2).iter().all(|x| x.parity() == Even));
    }

    #[test]
    fn words_with_even_letters() {
        let w = GradedSpace::new(1, 2).unwrap();
        let names: Vec<_> = w.weight_basis(2).iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["e1^2", "e1f1", "e1f2", "f1f2"]);
        let word = parse_word(&w, "e1^2f2").unwrap();
        assert_eq!(word.to_string(), "e1^2f2");
        assert_eq!(word.letters(), vec![0, 0, 2]);
        assert!(parse_word(&w, "f1^2").is_err());
        assert!(parse_word(&w, "e2").is_err());
    }

    #[test]
    fn space_syntax() {
        assert_eq!("0|3".parse::<GradedSpace>().unwrap(), GradedSpace::odd(3));
        assert_eq!("2|1".parse::<GradedSpace>().unwrap().to_string(), "2|1");
        assert!("0|0".parse::<GradedSpace>().is_err());
        assert!("3".parse::<GradedSpace>().is_err());
    }

    #[test]
    fn products_carry_koszul_signs() {
        let w = GradedSpace::odd(3);
        let f1 = w.letter(0);
        let f2 = w.letter(1);
        let (w12, s) = f1.mul(&f2).unwrap();
        assert_eq!((w12.to_string().as_str(), s), ("f1f2", false));
        let (w21, s) = f2.mul(&f1).unwrap();
        assert_eq!((w21.to_string().as_str(), s), ("f1f2", true));
        assert!(f1.mul(&f1).is_none());
        let f2f3 = parse_word(&w, "f2f3").unwrap();
        assert!(!f2f3.prepend(0).unwrap().1);
        let f1f3 = parse_word(&w, "f1f3").unwrap();
        assert!(f1f3.prepend(1).unwrap().1);
        assert!(!w.word_from_letters(&[2, 0, 1]).unwrap().1);
        assert!(w.word_from_letters(&[1, 0, 2]).unwrap().1);
    }

    #[test]
    fn coproduct_of_three_odd_letters() {
        let w = GradedSpace::odd(3);
        let word = parse_word(&w, "f1f2f3").unwrap();
        let delta = w.coproduct(&word);
        assert_eq!(delta.len(), 6);
        let f = |a: &str, b: &str| delta[&(parse_word(&w, a).unwrap(), parse_word(&w, b).unwrap())];
        assert_eq!(f("f1", "f2f3"), 1);
        assert_eq!(f("f2", "f1f3"), -1);
        assert_eq!(f("f3", "f1f2"), 1);
        assert_eq!(f("f1f3", "f2"), -1);
    }

    #[test]
    fn coproduct_counts_repeated_even_letters() {
        let w = GradedSpace::new(1, 0).unwrap();
        let word = w.word(&[2]).unwrap();
        let delta = w.coproduct(&word);
        assert_eq!(delta.values().copied().collect::<Vec<_>>(), vec![2]);
    }
}
