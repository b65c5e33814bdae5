use linfty::algebra::{ideal_equal, ParamSpace, Parity, RelationIdeal, SuperPolynomial};
use linfty::cochain::{bracket, Cochain};
use linfty::cohomology::{cohomology_data, BasisOverride};
use linfty::deform::{
    decompose_cocycle, deformation_step, infinitesimal_deformation, miniversal, verify_miniversal, DeformOptions,
    DeformationResult,
};
use linfty::superspace::GradedSpace;
use linfty::text::{parse_cochain, parse_polynomial};

fn c(text: &str) -> Cochain {
    parse_cochain(text, GradedSpace::odd(3), ParamSpace::default(), None).unwrap()
}

fn with(params: ParamSpace, text: &str) -> Cochain {
    parse_cochain(text, GradedSpace::odd(3), params, None).unwrap()
}

fn overrides(per_weight: &[(usize, &[&str])]) -> BasisOverride {
    per_weight
        .iter()
        .map(|(n, reps)| (*n, reps.iter().map(|r| c(r)).collect()))
        .collect()
}

fn run(d: &str, o: BasisOverride) -> DeformationResult {
    miniversal(
        &c(d),
        &DeformOptions {
            overrides: o,
            ..DeformOptions::default()
        },
    )
    .unwrap()
}

fn ideal(params: ParamSpace, gens: &[&str]) -> RelationIdeal {
    let gens = gens
        .iter()
        .map(|g| parse_polynomial(g, params, None).unwrap())
        .collect();
    RelationIdeal::new(params, gens, 6).unwrap()
}

fn assert_ideal(r: &DeformationResult, gens: &[&str]) {
    let expected = ideal(r.state.params, gens);
    assert!(
        ideal_equal(&r.relations, &expected, 6).unwrap(),
        "relations {} differ from {expected}",
        r.relations
    );
}

const D3: &str = "phi[110]_3 + phi[101]_2 + phi[011]_1";
const D2: &str = "phi[101]_1 + phi[101]_2 + phi[011]_2";
const DM1: &str = "phi[101]_1 - phi[011]_2";
const DP1: &str = "phi[101]_1 + phi[011]_2";
const D1: &str = "phi[011]_1";

fn d1_basis() -> BasisOverride {
    overrides(&[
        (
            1,
            &[
                "phi[100]_1 + phi[010]_2",
                "phi[010]_2 - phi[001]_3",
                "phi[010]_1",
                "phi[010]_3",
                "phi[001]_1",
                "phi[001]_2",
            ],
        ),
        (
            2,
            &[
                "phi[110]_1",
                "phi[101]_1",
                "phi[110]_2 - phi[101]_3",
                "phi[110]_3",
                "phi[101]_2",
            ],
        ),
        (3, &["phi[111]_2", "phi[111]_3"]),
    ])
}

#[test]
fn simple_algebra_infinitesimal_deformation() {
    let o = overrides(&[(
        1,
        &[
            "phi[010]_3 + phi[001]_2",
            "phi[100]_3 - phi[001]_1",
            "phi[100]_2 + phi[010]_1",
        ],
    )]);
    let report = cohomology_data(&c(D3), &o).unwrap();
    let s = infinitesimal_deformation(&c(D3), &report, 6).unwrap();
    assert_eq!(s.params, ParamSpace::new(0, 3).unwrap());
    let expected = with(
        s.params,
        "phi[110]_3 + phi[101]_2 + phi[011]_1 + theta1*(phi[010]_3 + phi[001]_2) \
         + theta2*(phi[100]_3 - phi[001]_1) + theta3*(phi[100]_2 + phi[010]_1)",
    );
    assert_eq!(s.deformation, expected);
    assert!(s.decomposition.beta.iter().all(SuperPolynomial::is_zero));
    assert!(s.decomposition.residual.is_zero());

    let r = run(D3, o);
    assert!(r.terminated);
    assert_eq!(r.termination_order, Some(1));
    assert_ideal(&r, &["theta1*theta2", "theta1*theta3", "theta2*theta3"]);
    assert!(verify_miniversal(&r));
}

#[test]
fn generic_family_member() {
    for l in ["5", "2/3", "-4", "i"] {
        let d = format!("phi[101]_1 + {l}*phi[011]_2");
        let o = overrides(&[
            (1, &["phi[100]_1", "phi[010]_2", "phi[001]_1", "phi[001]_2"]),
            (2, &["phi[011]_2"]),
        ]);
        let r = run(&d, o);
        assert_eq!(r.state.params, ParamSpace::new(1, 4).unwrap(), "lambda = {l}");
        assert_eq!(r.termination_order, Some(1), "lambda = {l}");
        assert_ideal(&r, &["theta1*theta3", "theta2*theta4"]);
        // ½[d¹,d¹] = φ001_1 θ₁θ₃ + φ001_2 θ₂θ₄
        let p = r.state.params;
        assert_eq!(
            r.state.half_bracket,
            with(p, "theta1*theta3*phi[001]_1 + theta2*theta4*phi[001]_2")
        );
        assert!(verify_miniversal(&r));
    }
}

#[test]
fn deleting_a_relation_breaks_verification() {
    let o = overrides(&[
        (1, &["phi[100]_1", "phi[010]_2", "phi[001]_1", "phi[001]_2"]),
        (2, &["phi[011]_2"]),
    ]);
    let mut r = run("phi[101]_1 + 5*phi[011]_2", o);
    assert!(verify_miniversal(&r));
    let p = r.state.params;
    r.relations = ideal(p, &["theta2*theta4"]);
    assert!(!verify_miniversal(&r));
}

#[test]
fn verification_checks_augmentation_and_parity() {
    let mut r = run(D3, BasisOverride::new());
    let p = r.state.params;
    let good = r.state.deformation.clone();
    r.state.deformation = good.add(&with(p, "phi[011]_2")).unwrap();
    assert!(!verify_miniversal(&r));
    r.state.deformation = good.add(&with(p, "theta1*phi[011]_2")).unwrap();
    assert!(!verify_miniversal(&r));
}

#[test]
fn special_algebra_two_steps() {
    let r = run(D2, BasisOverride::new());
    assert!(r.terminated);
    assert_eq!(r.termination_order, Some(2));
    assert!(verify_miniversal(&r));
    // the single correction is tθ times a weight-one map
    let correction = &r.state.history[1];
    assert_eq!(correction.len(), 1);
    let (map, coefficient) = correction.terms().next().unwrap();
    assert_eq!(map.weight(), 1);
    assert_eq!(coefficient.degree(), 2);
    assert_eq!(coefficient.parity(), Some(Parity::Odd));
}

#[test]
fn beta_coefficient_of_the_special_algebra() {
    // ½[d¹,d¹] has the coboundary part −tθ₁·φ101_2 = tθ₁·D(φ100_1)
    let o = overrides(&[
        (
            1,
            &["phi[100]_2", "phi[001]_1", "phi[001]_2", "phi[100]_1 + phi[010]_2"],
        ),
        (2, &["phi[011]_1"]),
    ]);
    let report = cohomology_data(&c(D2), &o).unwrap();
    let s = infinitesimal_deformation(&c(D2), &report, 6).unwrap();
    let p = s.params;
    let d = decompose_cocycle(&with(p, "-t1*theta1*phi[101]_2"), &report).unwrap();
    assert!(d.delta.iter().all(SuperPolynomial::is_zero));
    assert!(d.residual.is_zero());
    let w2 = report.weight(2).unwrap();
    let k = w2
        .preimages
        .iter()
        .position(|g| *g == c("phi[100]_1"))
        .expect("phi[100]_1 is a preimage");
    let offset = report.weight(1).unwrap().coboundaries.len();
    assert_eq!(w2.coboundaries[k], c("-phi[101]_2"));
    assert_eq!(d.beta[offset + k], parse_polynomial("t1*theta1", p, None).unwrap());

    let zero = decompose_cocycle(&Cochain::zero(GradedSpace::odd(3), p), &report).unwrap();
    assert!(zero.delta.iter().chain(&zero.beta).all(SuperPolynomial::is_zero));
    assert!(zero.residual.is_zero());
}

#[test]
fn minus_one_member() {
    let o = overrides(&[
        (1, &["phi[100]_1", "phi[010]_2", "phi[001]_1", "phi[001]_2"]),
        (2, &["phi[011]_2", "phi[110]_3"]),
        (3, &["phi[111]_3"]),
    ]);
    // the echelon preimage of φ111_1 is φ110_1, whose image scales with λ;
    // along t₁ this feeds a series that never stops
    let r = run(DM1, o.clone());
    assert!(!r.terminated);
    assert!(verify_miniversal(&r));

    let r = miniversal(
        &c(DM1),
        &DeformOptions {
            overrides: o,
            complements: overrides(&[(2, &["phi[011]_3", "phi[110]_2"])]),
            ..DeformOptions::default()
        },
    )
    .unwrap();
    assert_eq!(r.state.params, ParamSpace::new(2, 5).unwrap());
    assert!(r.terminated);
    assert!(verify_miniversal(&r));
    assert_eq!(r.termination_order, Some(2), "history {:?}", r.state.history);
    let p = r.state.params;
    assert_eq!(
        r.state.history[1],
        with(
            p,
            "theta3*theta5*phi[011]_3 + theta4*theta5*phi[110]_2 + t2*theta3*phi[010]_3 + t2*theta4*phi[100]_3"
        )
    );
    assert_ideal(
        &r,
        &[
            "theta1*theta3",
            "theta2*theta4",
            "t2*theta3*theta4",
            "t2*theta1 + t2*theta2",
            "theta5*theta1 + theta5*theta2 - t1*t2",
        ],
    );
}

#[test]
fn plus_one_member_is_infinitesimally_miniversal() {
    let o = overrides(&[
        (
            1,
            &[
                "phi[100]_1",
                "phi[010]_2",
                "phi[001]_1",
                "phi[001]_2",
                "phi[100]_2",
                "phi[010]_1",
            ],
        ),
        (2, &["phi[101]_1 - phi[011]_2", "phi[101]_2", "phi[011]_1"]),
    ]);
    let r = run(DP1, o);
    assert_eq!(r.termination_order, Some(1));
    assert!(verify_miniversal(&r));
    let r = run(DP1, BasisOverride::new());
    assert_eq!(r.termination_order, Some(1));
}

#[test]
fn trivial_codifferential() {
    let r = run("0", BasisOverride::new());
    assert_eq!(r.state.params, ParamSpace::new(9, 12).unwrap());
    assert_eq!(r.termination_order, Some(1));
    assert!(verify_miniversal(&r));
    // [d¹,d¹] is all relation: every coefficient lies in the ideal
    assert!(r.state.decomposition.beta.is_empty());
}

#[test]
fn nilpotent_algebra_three_steps() {
    let r = run(D1, d1_basis());
    assert_eq!(r.state.params, ParamSpace::new(5, 8).unwrap());
    assert!(r.terminated);
    assert_eq!(r.termination_order, Some(3));
    assert!(verify_miniversal(&r));
    let p = r.state.params;
    let third = &r.state.history[2];
    let phi = c("phi[100]_2");
    let (map, _) = phi.terms().next().unwrap();
    let coefficient = third.coefficient(map);
    let expected = parse_polynomial("theta3*theta5*theta7", p, None).unwrap();
    assert!(
        coefficient == expected || coefficient == -&expected,
        "third order correction {third}"
    );

    // second-order relations with the odd parameters set to zero
    let report = cohomology_data(&c(D1), &d1_basis()).unwrap();
    let s = infinitesimal_deformation(&c(D1), &report, 6).unwrap();
    let even: Vec<SuperPolynomial> = s
        .relations
        .generators()
        .iter()
        .map(|g| g.truncate(2).even_projection())
        .collect();
    let even = RelationIdeal::new(p, even, 6).unwrap();
    assert!(
        ideal_equal(&even, &ideal(p, &["t1*t5 - t2*t3", "t1*t3 + t2*t4"]), 6).unwrap(),
        "{even}"
    );
}

#[test]
fn deformation_is_odd_and_augmented() {
    for d in [D3, D2, DM1, DP1, "0"] {
        let r = run(d, BasisOverride::new());
        let s = &r.state;
        assert_eq!(s.deformation.parity(), Some(Parity::Odd), "{d}");
        let constant = s
            .deformation
            .map_coefficients(|x| SuperPolynomial::constant(x.params(), x.constant_term()));
        assert_eq!(constant, c(d).with_params(s.params));
        for info in &s.parameters {
            assert_ne!(Some(info.parameter.parity), info.representative.parity());
        }
        // infinitesimal flatness: [d¹,d¹] has no terms of parameter degree < 2
        let first = c(d).with_params(s.params).add(&s.history[0]).unwrap();
        assert!(bracket(&first, &first)
            .unwrap()
            .terms()
            .all(|(_, x)| x.low_degree().unwrap() >= 2));
    }
}

#[test]
fn step_at_termination_is_idempotent() {
    for (d, o) in [(D3, BasisOverride::new()), (D2, BasisOverride::new()), (D1, d1_basis())] {
        let r = run(d, o);
        assert!(r.terminated);
        let next = deformation_step(&r.state).unwrap();
        assert_eq!(next.deformation, r.state.deformation, "{d}");
        assert!(ideal_equal(&next.relations, &r.relations, 6).unwrap(), "{d}");
    }
}

#[test]
fn non_termination_is_reported() {
    let r = miniversal(
        &c(D2),
        &DeformOptions {
            max_order: 1,
            ..DeformOptions::default()
        },
    )
    .unwrap();
    assert!(!r.terminated);
    assert_eq!(r.termination_order, None);
}
