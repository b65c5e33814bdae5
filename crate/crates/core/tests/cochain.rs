use linfty::algebra::{ParamSpace, Parity, Scalar};
use linfty::cochain::{
    basis_maps, bracket, bracket_via_lift, coboundary, inner_derivation, is_codifferential, lift_apply,
    lift_elementary, transform, Cochain, LinearAutomorphism,
};
use linfty::linalg::Matrix;
use linfty::superspace::{parse_word, GradedSpace};
use linfty::text::parse_cochain;
use linfty::Error;
use proptest::prelude::*;

fn w3() -> GradedSpace {
    GradedSpace::odd(3)
}

fn c(text: &str) -> Cochain {
    parse_cochain(text, w3(), ParamSpace::default(), None).unwrap()
}

fn on(space: GradedSpace, text: &str) -> Cochain {
    parse_cochain(text, space, ParamSpace::default(), None).unwrap()
}

const D3: &str = "phi[110]_3 + phi[101]_2 + phi[011]_1";
const D2: &str = "phi[101]_1 + phi[101]_2 + phi[011]_2";

#[test]
fn lift_of_a_quadratic_map() {
    let phi = c("phi[110]_1");
    let f12 = parse_word(&w3(), "f1f2").unwrap();
    let f123 = parse_word(&w3(), "f1f2f3").unwrap();
    let out = lift_apply(&phi, &f12);
    assert_eq!(out.len(), 1);
    assert_eq!(out.keys().next().unwrap().to_string(), "f1");
    let out = lift_apply(&phi, &f123);
    assert_eq!(out.len(), 1);
    let (w, k) = out.iter().next().unwrap();
    assert_eq!(w.to_string(), "f1f3");
    assert_eq!(k.constant_term(), Scalar::one());
    assert!(lift_apply(&c("phi[110]_3"), &f123).is_empty());
    // shorter words give the zero vector
    let f1 = parse_word(&w3(), "f1").unwrap();
    assert!(lift_apply(&phi, &f1).is_empty());
}

#[test]
fn printed_cocycle_brackets() {
    let cases = [
        (
            "phi[010]_3 + phi[001]_2",
            "phi[100]_3 - phi[001]_1",
            "phi[100]_2 + phi[010]_1",
        ),
        (
            "phi[010]_3 + phi[001]_2",
            "phi[100]_2 + phi[010]_1",
            "phi[100]_3 - phi[001]_1",
        ),
        (
            "phi[100]_3 - phi[001]_1",
            "phi[100]_2 + phi[010]_1",
            "phi[010]_3 + phi[001]_2",
        ),
        ("phi[011]_2", "phi[100]_2", "phi[101]_2"),
        ("phi[001]_1", "phi[100]_1 + phi[010]_2", "-phi[001]_1"),
        ("phi[100]_1", "phi[001]_1", "phi[001]_1"),
        ("phi[001]_2", "phi[100]_1 + phi[010]_2", "-phi[001]_2"),
    ];
    for (a, b, expected) in cases {
        assert_eq!(bracket(&c(a), &c(b)).unwrap(), c(expected), "[{a}, {b}]");
        assert_eq!(
            bracket_via_lift(&c(a), &c(b)).unwrap(),
            c(expected),
            "lift route [{a}, {b}]"
        );
    }
}

#[test]
fn codifferential_checks() {
    assert!(is_codifferential(&c(D3)).unwrap());
    assert!(!is_codifferential(&c("phi[110]_2 + phi[011]_3")).unwrap());
    assert!(is_codifferential(&Cochain::zero(w3(), ParamSpace::default())).unwrap());
    assert_eq!(is_codifferential(&c("phi[100]_1")), Err(Error::NotOdd));
}

#[test]
fn coboundary_examples() {
    let d2 = c(D2);
    assert_eq!(coboundary(&d2, &c("phi[100]_1")).unwrap(), c("-phi[101]_2"));
    assert_eq!(
        coboundary(&d2, &c("phi[001]_3")).unwrap(),
        c("-phi[101]_1 - phi[101]_2 - phi[011]_2")
    );
    let dl = c("phi[101]_1 + 7*phi[011]_2");
    assert_eq!(
        coboundary(&dl, &c("phi[001]_3")).unwrap(),
        c("-phi[101]_1 - 7*phi[011]_2")
    );
    assert!(coboundary(&dl, &c("phi[101]_1")).unwrap().is_zero());
}

fn automorphism(rows: &[&[&str]]) -> LinearAutomorphism {
    let m = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| x.parse().unwrap()).collect())
            .collect(),
    )
    .unwrap();
    LinearAutomorphism::new(w3(), m).unwrap()
}

#[test]
fn transform_examples() {
    let d = c(D3);
    assert_eq!(transform(&d, &LinearAutomorphism::identity(w3())).unwrap(), d);

    let g = automorphism(&[&["1", "0", "0"], &["0", "5", "0"], &["0", "0", "5"]]);
    assert_eq!(
        transform(&c(D2), &g).unwrap(),
        c("5*phi[101]_1 + phi[101]_2 + 5*phi[011]_2")
    );

    // rows of the printed matrix are the images of the basis vectors
    let g = automorphism(&[&["-i", "0", "1"], &["-1/2i", "0", "-1/2"], &["0", "i", "0"]]);
    let gt = LinearAutomorphism::new(w3(), g.matrix().transpose()).unwrap();
    assert_eq!(
        transform(&c(D3), &gt).unwrap(),
        c("phi[110]_3 + phi[101]_1 - phi[011]_2")
    );
}

#[test]
fn transform_rejects_bad_matrices() {
    let m = Matrix::from_rows(vec![
        vec![Scalar::one(), Scalar::one()],
        vec![Scalar::one(), Scalar::one()],
    ])
    .unwrap();
    let w = GradedSpace::odd(2);
    assert_eq!(LinearAutomorphism::new(w, m), Err(Error::SingularMatrix));
    let mixed = Matrix::from_rows(vec![
        vec![Scalar::one(), Scalar::one()],
        vec![Scalar::zero(), Scalar::one()],
    ])
    .unwrap();
    assert!(matches!(
        LinearAutomorphism::new(GradedSpace::new(1, 1).unwrap(), mixed),
        Err(Error::MixedParityAutomorphism { .. })
    ));
}

#[test]
fn inner_derivations_of_d3() {
    let d = c(D3);
    assert_eq!(inner_derivation(&d, 2).unwrap(), c("phi[100]_2 + phi[010]_1"));
    assert_eq!(inner_derivation(&d, 0).unwrap(), c("-phi[010]_3 - phi[001]_2"));
    assert_eq!(inner_derivation(&d, 1).unwrap(), c("phi[100]_3 - phi[001]_1"));
    assert!(inner_derivation(&Cochain::zero(w3(), ParamSpace::default()), 1)
        .unwrap()
        .is_zero());
    assert!(matches!(inner_derivation(&d, 3), Err(Error::InvalidBasisIndex { .. })));
}

#[test]
fn canonical_codifferentials_square_to_zero_under_d() {
    for d in [
        D3,
        D2,
        "phi[101]_1 - phi[011]_2",
        "phi[101]_1 + 1/3*phi[011]_2",
        "phi[011]_1",
        "phi[110]_1",
    ] {
        let d = c(d);
        assert!(is_codifferential(&d).unwrap());
        for n in 1..=3 {
            for m in basis_maps(&w3(), n) {
                let phi = Cochain::elementary(w3(), ParamSpace::default(), m).unwrap();
                let dd = coboundary(&d, &coboundary(&d, &phi).unwrap()).unwrap();
                assert!(dd.is_zero(), "D∘D on {phi} for {d}");
            }
        }
    }
}

// ---- random cochains ----------------------------------------------------

fn space_strategy() -> impl Strategy<Value = GradedSpace> {
    prop_oneof![Just(GradedSpace::odd(3)), Just(GradedSpace::new(1, 2).unwrap())]
}

/// A parity-homogeneous cochain of a single weight with small integer entries.
fn homogeneous(space: GradedSpace, weight: usize, parity: bool, coeffs: &[i64]) -> Cochain {
    let parity = Parity::from_bit(parity);
    let maps: Vec<_> = basis_maps(&space, weight)
        .into_iter()
        .filter(|m| m.parity() == parity)
        .collect();
    Cochain::from_scalars(
        space,
        maps.into_iter()
            .zip(coeffs.iter().cycle())
            .map(|(m, &k)| (m, Scalar::from_int(k))),
    )
    .unwrap()
}

fn cochain_strategy(space: GradedSpace) -> impl Strategy<Value = Cochain> {
    (1usize..=3, any::<bool>(), prop::collection::vec(-2i64..=2, 12))
        .prop_map(move |(w, p, k)| homogeneous(space, w, p, &k))
}

fn sign(a: &Cochain, b: &Cochain) -> Scalar {
    let odd = |x: &Cochain| x.parity() == Some(Parity::Odd);
    Scalar::from_int(if odd(a) && odd(b) { -1 } else { 1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn both_bracket_routes_agree(
        (a, b) in space_strategy().prop_flat_map(|s| (cochain_strategy(s), cochain_strategy(s)))
    ) {
        prop_assert_eq!(bracket(&a, &b).unwrap(), bracket_via_lift(&a, &b).unwrap());
    }

    #[test]
    fn graded_antisymmetry(
        (a, b) in space_strategy().prop_flat_map(|s| (cochain_strategy(s), cochain_strategy(s)))
    ) {
        let ab = bracket(&a, &b).unwrap();
        let ba = bracket(&b, &a).unwrap();
        prop_assert_eq!(ab, ba.scale_scalar(&-sign(&a, &b)));
    }

    #[test]
    fn graded_jacobi(
        (a, b, g) in space_strategy().prop_flat_map(|s| (cochain_strategy(s), cochain_strategy(s), cochain_strategy(s)))
    ) {
        let lhs = bracket(&a, &bracket(&b, &g).unwrap()).unwrap();
        let r1 = bracket(&bracket(&a, &b).unwrap(), &g).unwrap();
        let r2 = bracket(&b, &bracket(&a, &g).unwrap()).unwrap().scale_scalar(&sign(&a, &b));
        prop_assert_eq!(lhs, r1.add(&r2).unwrap());
    }

    #[test]
    fn lift_is_a_coderivation(
        (phi, word) in space_strategy().prop_flat_map(|s| {
            let words: Vec<_> = (1..=4).flat_map(|n| s.weight_basis(n)).collect();
            (cochain_strategy(s), prop::sample::select(words))
        })
    ) {
        // Δ∘φ̃ = (φ̃⊗I + I⊗φ̃)∘Δ, expanded on word⊗word
        let space = phi.space();
        let mut lhs = std::collections::BTreeMap::new();
        for (m, k) in phi.terms() {
            let k = k.constant_term();
            for (u, x) in lift_elementary(&space, m, &word) {
                for ((l, r), y) in space.coproduct(&u) {
                    *lhs.entry((l, r)).or_insert_with(Scalar::zero) += &(&k * &Scalar::from_int(x * y));
                }
            }
        }
        let mut rhs = std::collections::BTreeMap::new();
        for ((l, r), y) in space.coproduct(&word) {
            for (m, k) in phi.terms() {
                let k = k.constant_term();
                for (u, x) in lift_elementary(&space, m, &l) {
                    *rhs.entry((u, r.clone())).or_insert_with(Scalar::zero) += &(&k * &Scalar::from_int(x * y));
                }
                // φ̃ passes the left factor: Koszul sign |φ||l|
                let s = if m.parity().is_odd() && l.parity().is_odd() { -1 } else { 1 };
                for (u, x) in lift_elementary(&space, m, &r) {
                    *rhs.entry((l.clone(), u)).or_insert_with(Scalar::zero) += &(&k * &Scalar::from_int(s * x * y));
                }
            }
        }
        lhs.retain(|_, v: &mut Scalar| !v.is_zero());
        rhs.retain(|_, v: &mut Scalar| !v.is_zero());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transform_round_trip_and_codifferentials(
        entries in prop::collection::vec((-3i64..=3, -1i64..=1), 9),
        which in 0usize..4,
    ) {
        let rows: Vec<Vec<Scalar>> = entries
            .chunks(3)
            .map(|r| r.iter().map(|&(a, b)| Scalar::gaussian(Scalar::from_int(a), Scalar::from_int(b))).collect())
            .collect();
        let m = Matrix::from_rows(rows).unwrap();
        prop_assume!(!m.det().unwrap().is_zero());
        let g = LinearAutomorphism::new(w3(), m).unwrap();
        let d = c([D3, D2, "phi[101]_1 + 2*phi[011]_2", "phi[011]_1"][which]);
        let t = transform(&d, &g).unwrap();
        prop_assert!(is_codifferential(&t).unwrap());
        prop_assert_eq!(transform(&t, &g.inverse()).unwrap(), d);
    }

    #[test]
    fn inner_derivations_are_cocycles(which in 0usize..4, w in 0usize..3) {
        let d = c([D3, D2, "phi[101]_1 + 2*phi[011]_2", "phi[011]_1"][which]);
        let x = inner_derivation(&d, w).unwrap();
        prop_assert!(coboundary(&d, &x).unwrap().is_zero());
    }
}

#[test]
fn codifferential_on_a_mixed_space() {
    let s = GradedSpace::new(1, 2).unwrap();
    let d = on(s, "phi[110]_1");
    assert!(is_codifferential(&d).unwrap());
    let e = on(s, "phi[110]_1 + phi[011]_2");
    assert_eq!(e.parity(), Some(Parity::Odd));
    assert_eq!(
        is_codifferential(&e).unwrap(),
        bracket_via_lift(&e, &e).unwrap().is_zero()
    );
    assert_eq!(is_codifferential(&on(s, "phi[110]_2")), Err(Error::NotOdd));
}
