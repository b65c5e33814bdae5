//! Quadratic codifferentials on 0|3, i.e. three dimensional Lie algebras:
//! structure matrix, classification into canonical forms and a direct
//! Jacobi-identity oracle.

use std::fmt;

use crate::algebra::{ParamSpace, Scalar};
use crate::cochain::{is_codifferential, Cochain, ElementaryMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::superspace::GradedSpace;

/// Sources of the three quadratic letters pairs, in row order of `A`.
const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn check_space(d: &Cochain) -> Result<()> {
    if d.space() != GradedSpace::odd(3) {
        return Err(Error::NotThreeDimensionalOdd(d.space().to_string()));
    }
    if !d.is_parameter_free() {
        return Err(Error::HasParameters);
    }
    if let Some(n) = d.weights().into_iter().find(|&n| n != 2) {
        return Err(Error::NotQuadratic(format!("{d} has a term of weight {n}")));
    }
    Ok(())
}

fn pair_map(row: usize, target: usize) -> ElementaryMap {
    let (i, j) = PAIRS[row];
    let (word, _) = GradedSpace::odd(3)
        .word_from_letters(&[i, j])
        .expect("distinct odd letters");
    ElementaryMap::new(word, target).expect("target in range")
}

/// Coefficients `a₁…a₉` of a quadratic cochain on 0|3: row `r` holds the
/// image of `f_i f_j` for the `r`-th pair `(1,2), (1,3), (2,3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMatrix(pub Matrix);

impl StructureMatrix {
    pub fn of(d: &Cochain) -> Result<StructureMatrix> {
        check_space(d)?;
        let rows = (0..3)
            .map(|r| (0..3).map(|k| d.scalar(&pair_map(r, k))).collect())
            .collect();
        Ok(StructureMatrix(Matrix::from_rows(rows)?))
    }

    /// The entries `a₁…a₉` in reading order.
    pub fn entries(&self) -> Vec<Scalar> {
        (0..3).flat_map(|r| self.0.row(r).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn to_cochain(&self) -> Cochain {
        let mut d = Cochain::zero(GradedSpace::odd(3), ParamSpace::default());
        for r in 0..3 {
            for k in 0..3 {
                d.add_scalar_term(pair_map(r, k), &self.0[(r, k)]);
            }
        }
        d
    }

    /// The three quadratic expressions whose vanishing is the codifferential
    /// condition, written in the entries of `A`.
    pub fn codifferential_equations(&self) -> [Scalar; 3] {
        let a = self.entries();
        let p = |i: usize, j: usize| &a[i - 1] * &a[j - 1];
        [
            &(&(&p(9, 2) - &p(3, 8)) + &p(6, 1)) - &p(3, 4),
            &(&(&(-&p(5, 9)) + &p(8, 6)) + &p(5, 1)) - &p(2, 4),
            &(&(&(-&p(4, 9)) - &p(1, 8)) + &p(7, 6)) + &p(7, 2),
        ]
    }
}

pub fn structure_matrix(d: &Cochain) -> Result<StructureMatrix> {
    StructureMatrix::of(d)
}

/// Structure constants `[f_i, f_j] = Σ_k c[i][j][k] f_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieStructure {
    pub constants: [[[Scalar; 3]; 3]; 3],
}

impl LieStructure {
    pub fn bracket(&self, x: &[Scalar; 3], y: &[Scalar; 3]) -> [Scalar; 3] {
        let mut out: [Scalar; 3] = Default::default();
        for i in 0..3 {
            for j in 0..3 {
                if x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &(&xy * &self.constants[i][j][k]);
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| self.constants[i][j][k] == -&self.constants[j][i][k])))
    }
}

/// `[f_i, f_j] = d(f_i f_j)`.
pub fn to_lie(d: &Cochain) -> Result<LieStructure> {
    let a = StructureMatrix::of(d)?;
    let mut constants: [[[Scalar; 3]; 3]; 3] = Default::default();
    for (r, &(i, j)) in PAIRS.iter().enumerate() {
        for k in 0..3 {
            constants[i][j][k] = a.0[(r, k)].clone();
            constants[j][i][k] = -&a.0[(r, k)];
        }
    }
    Ok(LieStructure { constants })
}

fn unit(i: usize) -> [Scalar; 3] {
    let mut v: [Scalar; 3] = Default::default();
    v[i] = Scalar::one();
    v
}

/// Evaluates `[[a,b],c] + [[b,c],a] + [[c,a],b]` on every basis triple.
pub fn jacobi_check(l: &LieStructure) -> bool {
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let (x, y, z) = (unit(a), unit(b), unit(c));
                let terms = [
                    l.bracket(&l.bracket(&x, &y), &z),
                    l.bracket(&l.bracket(&y, &z), &x),
                    l.bracket(&l.bracket(&z, &x), &y),
                ];
                for k in 0..3 {
                    let mut s = Scalar::zero();
                    for t in &terms {
                        s += &t[k];
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Equivalence class of a three dimensional Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    D0,
    D1,
    /// `j = tr(B)²/det(B)`, `None` standing for ∞ (the λ = 0 member).
    /// `lambda` holds `(λ, 1/λ)` when the eigenvalues lie in ℚ(i); the
    /// second entry is `None` for ∞.
    Family {
        j: Option<Scalar>,
        lambda: Option<(Scalar, Option<Scalar>)>,
    },
    D2,
    D3,
}

impl ClassLabel {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassLabel::D0 => "d0",
            ClassLabel::D1 => "d1",
            ClassLabel::Family { .. } => "d_family",
            ClassLabel::D2 => "d2",
            ClassLabel::D3 => "d3",
        }
    }

    /// The family label of `φ101_1 + λφ011_2`.
    pub fn family(lambda: Scalar) -> ClassLabel {
        if lambda.is_zero() {
            return ClassLabel::Family {
                j: None,
                lambda: Some((Scalar::zero(), None)),
            };
        }
        let one = Scalar::one();
        let inv = lambda.inv().expect("nonzero");
        let sum = &one + &lambda;
        let j = (&sum * &sum).div(&lambda).expect("nonzero");
        let (a, b) = if lambda >= inv { (lambda, inv) } else { (inv, lambda) };
        ClassLabel::Family {
            j: Some(j),
            lambda: Some((a, Some(b))),
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Family { j, lambda } => {
                let show = |x: &Option<Scalar>| x.as_ref().map_or("inf".to_string(), Scalar::to_string);
                write!(f, "d_family j={}", show(j))?;
                if let Some((a, b)) = lambda {
                    write!(f, " lambda={{{}, {}}}", a, show(b))?;
                }
                Ok(())
            }
            other => f.write_str(other.tag()),
        }
    }
}

/// Rows of `A` reduced to a basis of the derived subalgebra.
fn derived_basis(a: &Matrix) -> Vec<[Scalar; 3]> {
    let ech = a.rref();
    (0..ech.pivots.len())
        .map(|r| {
            let row = ech.matrix.row(r);
            [row[0].clone(), row[1].clone(), row[2].clone()]
        })
        .collect()
}

/// Coordinates of `v` over the independent vectors `basis`.
fn express(basis: &[[Scalar; 3]], v: &[Scalar; 3]) -> Vec<Scalar> {
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|b| b.to_vec()).collect();
    Matrix::from_columns(3, &columns)
        .solve(v)
        .expect("bracket lies in the derived subalgebra")
}

/// A standard basis vector outside the span of `basis`.
fn outside(basis: &[[Scalar; 3]]) -> [Scalar; 3] {
    let mut columns: Vec<Vec<Scalar>> = basis.iter().map(|b| b.to_vec()).collect();
    (0..3)
        .map(unit)
        .find(|e| {
            columns.push(e.to_vec());
            let independent = Matrix::from_columns(3, &columns).rank() == columns.len();
            columns.pop();
            independent
        })
        .expect("proper subspace")
}

pub fn classify(d: &Cochain) -> Result<ClassLabel> {
    check_space(d)?;
    if !is_codifferential(d)? {
        return Err(Error::NotCodifferential(crate::cochain::bracket(d, d)?.to_string()));
    }
    let a = StructureMatrix::of(d)?.0;
    let lie = to_lie(d)?;
    match a.rank() {
        0 => Ok(ClassLabel::D0),
        3 => Ok(ClassLabel::D3),
        1 => {
            let w = &derived_basis(&a)[0];
            let central = (0..3).all(|i| lie.bracket(w, &unit(i)).iter().all(Scalar::is_zero));
            Ok(if central {
                ClassLabel::D1
            } else {
                ClassLabel::family(Scalar::zero())
            })
        }
        _ => {
            // B: action of a complement vector on the derived plane
            let basis = derived_basis(&a);
            let e = outside(&basis);
            let rows: Vec<Vec<Scalar>> = basis.iter().map(|b| express(&basis, &lie.bracket(b, &e))).collect();
            let b = Matrix::from_rows(rows)?;
            Ok(family_or_defective(&b))
        }
    }
}

fn family_or_defective(b: &Matrix) -> ClassLabel {
    let tr = b.trace();
    let det = b.det().expect("square");
    let disc = &(&tr * &tr) - &(&Scalar::from_int(4) * &det);
    let scalar = b[(0, 1)].is_zero() && b[(1, 0)].is_zero() && b[(0, 0)] == b[(1, 1)];
    if disc.is_zero() && !scalar {
        return ClassLabel::D2;
    }
    let j = (&tr * &tr).div(&det).expect("invertible on the derived plane");
    let lambda = disc.sqrt().map(|root| {
        let l = (&tr - &root).div(&(&tr + &root)).expect("nonzero eigenvalue");
        match ClassLabel::family(l) {
            ClassLabel::Family { lambda, .. } => lambda.expect("split"),
            _ => unreachable!(),
        }
    });
    ClassLabel::Family { j: Some(j), lambda }
}

pub fn canonical_representative(label: &ClassLabel) -> Result<Cochain> {
    let text = match label {
        ClassLabel::D0 => return Ok(Cochain::zero(GradedSpace::odd(3), ParamSpace::default())),
        ClassLabel::D1 => "phi[011]_1".to_string(),
        ClassLabel::D2 => "phi[101]_1 + phi[101]_2 + phi[011]_2".to_string(),
        ClassLabel::D3 => "phi[110]_3 + phi[101]_2 + phi[011]_1".to_string(),
        ClassLabel::Family { j, lambda } => {
            let Some((l, _)) = lambda else {
                let j = j.as_ref().map_or("inf".to_string(), Scalar::to_string);
                return Err(Error::LambdaNotRepresentable(j));
            };
            let mut d = Cochain::zero(GradedSpace::odd(3), ParamSpace::default());
            d.add_scalar_term(pair_map(1, 0), &Scalar::one());
            d.add_scalar_term(pair_map(2, 1), l);
            return Ok(d);
        }
    };
    crate::text::parse_cochain(&text, GradedSpace::odd(3), ParamSpace::default(), None)
}
