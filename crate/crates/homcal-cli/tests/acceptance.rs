//! Acceptance suite: one test per acceptance criterion, each printing a
//! single `acceptance N: PASS — …` line when its property holds exactly.
//!
//! Run with visible lines:
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```
//!
//! Everything here is exact rational arithmetic — a criterion passes only
//! if the identity holds on the nose for every sampled input.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use homcal::algebroid::{
    action_algebroid, reconstruct_from_differential, tangent_algebroid, HomLieAlgebroid, SignSite,
};
use homcal::bialgebroid::{
    dual_bialgebroid, from_poisson, induced_poisson, verify_bialgebroid, HomLieBialgebroid,
};
use homcal::courant::{
    build_double, standard_courant, to_hom_lie_2, verify_courant, verify_hom_lie_2,
};
use homcal::exterior::MultiVector;
use homcal::homlie::{self, HomLieAlgebra, HomLieBialgebra};
use homcal::poisson::{
    cotangent_algebroid, poisson_bracket, verify_poisson, verify_purely_hom_poisson,
    HomPoissonStructure,
};
use homcal::ring::{PolyRing, Q, RingAuto, SigmaDerivation};
use homcal::report::Report;

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// σ: t ↦ 2t on ℚ[t].
fn sigma_2t() -> RingAuto {
    let ring = PolyRing::new(vec!["t"]).unwrap();
    RingAuto::new(&ring, vec![ring.int(2) * ring.var(0)]).unwrap()
}

/// σ: (x, y) ↦ (2x, 2y) on ℚ[x, y].
fn sigma_2x_2y() -> RingAuto {
    let ring = PolyRing::new(vec!["x", "y"]).unwrap();
    RingAuto::new(
        &ring,
        vec![ring.int(2) * ring.var(0), ring.int(2) * ring.var(1)],
    )
    .unwrap()
}

/// The bivector x·y ∂₁∧∂₂ over σ = (2x, 2y).
fn xy_poisson() -> HomPoissonStructure {
    let sigma = sigma_2x_2y();
    let ring = sigma.ring().clone();
    let xy = &ring.var(0) * &ring.var(1);
    let pi = MultiVector::basis_tuple(&ring, 2, &[0, 1]).scale(&xy);
    HomPoissonStructure::new(&sigma, pi).unwrap()
}

/// The rank-2 action algebroid over ℚ[t]: [e₁,e₂] = e₂, Φ = diag(1, 2),
/// acting by t·D and t²·D.
fn rank2_action() -> HomLieAlgebroid {
    let g = HomLieAlgebra::new(
        2,
        &[(0, 1, vec![qi(0), qi(1)])],
        vec![vec![qi(1), qi(0)], vec![qi(0), qi(2)]],
    )
    .unwrap();
    let sigma = sigma_2t();
    let t = sigma.ring().var(0);
    let d = SigmaDerivation::basis(&sigma, 0);
    let rho = vec![d.scale_poly(&t), d.scale_poly(&(&t * &t))];
    action_algebroid(&g, &sigma, rho).unwrap()
}

/// The three catalog algebroids: tangent over ℚ[t], the rank-2 action,
/// and the cotangent algebroid of the xy-Poisson structure.
fn catalog_algebroids() -> Vec<(&'static str, HomLieAlgebroid)> {
    vec![
        ("tangent", tangent_algebroid(&sigma_2t())),
        ("action", rank2_action()),
        (
            "cotangent-of-xy",
            cotangent_algebroid(&xy_poisson()).unwrap(),
        ),
    ]
}

fn assert_passes(name: &str, report: &Report) {
    assert!(report.passed(), "{name}:\n{}", report.render_text());
}

fn criterion(n: u32, summary: &str) {
    println!("acceptance {n}: PASS — {summary}");
}

// ---------------------------------------------------------------------------
// 1. d² = 0
// ---------------------------------------------------------------------------

#[test]
fn c01_differential_squares_to_zero() {
    for (name, a) in catalog_algebroids() {
        let cal = a.calculus();
        let ring = a.ring().clone();
        for m in ring.monomials_up_to(3) {
            // Grade 0 → grade 2.
            assert!(
                cal.differential(&cal.d_fn(&m)).is_zero(),
                "{name}: d(d {m}) ≠ 0"
            );
            // Grade 1 → grade 3, on every basis form with monomial
            // coefficient m of degree ≤ 3.
            for k in 0..a.rank() {
                let xi = a.basis_form(k).scale(&m);
                assert!(
                    cal.differential(&cal.differential(&xi)).is_zero(),
                    "{name}: d(d ({m}·e^{k})) ≠ 0"
                );
            }
        }
    }
    criterion(
        1,
        "d∘d = 0 on functions and scaled basis forms (degree ≤ 3) for all three catalog algebroids",
    );
}

// ---------------------------------------------------------------------------
// 2. The differential determines the algebroid
// ---------------------------------------------------------------------------

#[test]
fn c02_reconstruction_from_the_differential_is_exact() {
    for (name, a) in catalog_algebroids() {
        let rebuilt = reconstruct_from_differential(&a.differential_data())
            .unwrap_or_else(|e| panic!("{name}: reconstruction failed: {e}"));
        assert_eq!(rebuilt, a, "{name}: round trip changed the algebroid");
    }
    criterion(
        2,
        "reconstruct_from_differential ∘ differential_data = identity on all three catalog algebroids",
    );
}

// ---------------------------------------------------------------------------
// 3. Calculus identity catalog + sign-mutation coverage
// ---------------------------------------------------------------------------

#[test]
fn c03_calculus_identities_hold_and_catch_sign_mutations() {
    // Positive direction: the full identity catalog at sample degree 3.
    let mut identity_count = 0;
    for (name, a) in catalog_algebroids() {
        let report = a.verify_identities(3);
        assert_passes(name, &report);
        identity_count = report.checks.len();
    }
    assert!(
        identity_count >= 15,
        "only {identity_count} identities in the catalog"
    );

    // Mutation coverage: flipping any single implementation sign makes at
    // least one identity fail.
    let action = rank2_action();
    let mut caught = 0;
    for site in SignSite::ALL {
        let report = action.calculus_with_sign_flip(site).verify_identities(2);
        assert!(!report.passed(), "sign flip at {site} was not caught");
        caught += 1;
    }
    assert!(caught >= 10, "only {caught} sign mutations exercised");

    criterion(
        3,
        "all calculus identities pass at degree 3; every single-sign mutation is caught",
    );
}

// ---------------------------------------------------------------------------
// 4. The two Hom-Poisson formulations agree
// ---------------------------------------------------------------------------

#[test]
fn c04_poisson_and_bracket_formulations_agree() {
    let two = sigma_2x_2y();
    let ring2 = two.ring().clone();
    let ring3 = PolyRing::new(vec!["x", "y", "z"]).unwrap();
    let three = RingAuto::new(
        &ring3,
        (0..3).map(|i| ring3.int(2) * ring3.var(i)).collect::<Vec<_>>(),
    )
    .unwrap();

    let x2 = &ring2.var(0) * &ring2.var(0);
    let z2 = &ring3.var(2) * &ring3.var(2);
    let instances: Vec<(&str, HomPoissonStructure, bool)> = vec![
        ("zero bivector", HomPoissonStructure::zero(&two), true),
        ("x·y ∂₁∧∂₂", xy_poisson(), true),
        (
            "x² ∂₁∧∂₂",
            HomPoissonStructure::new(
                &two,
                MultiVector::basis_tuple(&ring2, 2, &[0, 1]).scale(&x2),
            )
            .unwrap(),
            true,
        ),
        (
            "z² ∂₁∧∂₂ in three variables",
            HomPoissonStructure::new(
                &three,
                MultiVector::basis_tuple(&ring3, 3, &[0, 1]).scale(&z2),
            )
            .unwrap(),
            true,
        ),
        (
            "x ∂₂∧∂₃ in three variables (not twist-invariant)",
            HomPoissonStructure::new(
                &three,
                MultiVector::basis_tuple(&ring3, 3, &[1, 2]).scale(&ring3.var(0)),
            )
            .unwrap(),
            false,
        ),
    ];
    assert!(instances.len() >= 5);

    for (name, p, expected) in &instances {
        let tensor_side = verify_poisson(p, 2);
        let bracket_side =
            verify_purely_hom_poisson(p.sigma(), |f, g| poisson_bracket(p, f, g), 2);
        assert_eq!(
            tensor_side.passed(),
            *expected,
            "{name} (tensor side):\n{}",
            tensor_side.render_text()
        );
        assert_eq!(
            bracket_side.passed(),
            *expected,
            "{name} (bracket side):\n{}",
            bracket_side.render_text()
        );
    }
    criterion(
        4,
        "tensor-side and bracket-side verification agree on 5 instances (zero, xy, x², 3-variable pass and fail)",
    );
}

// ---------------------------------------------------------------------------
// 5. Cotangent algebroids of passing Poisson structures
// ---------------------------------------------------------------------------

#[test]
fn c05_cotangent_algebroids_pass_the_full_suite() {
    let two = sigma_2x_2y();
    let ring2 = two.ring().clone();
    let ring3 = PolyRing::new(vec!["x", "y", "z"]).unwrap();
    let three = RingAuto::new(
        &ring3,
        (0..3).map(|i| ring3.int(2) * ring3.var(i)).collect::<Vec<_>>(),
    )
    .unwrap();
    let x2 = &ring2.var(0) * &ring2.var(0);
    let z2 = &ring3.var(2) * &ring3.var(2);

    let passing: Vec<(&str, HomPoissonStructure, u32)> = vec![
        ("zero bivector", HomPoissonStructure::zero(&two), 3),
        ("x·y ∂₁∧∂₂", xy_poisson(), 3),
        (
            "x² ∂₁∧∂₂",
            HomPoissonStructure::new(
                &two,
                MultiVector::basis_tuple(&ring2, 2, &[0, 1]).scale(&x2),
            )
            .unwrap(),
            3,
        ),
        (
            "z² ∂₁∧∂₂ in three variables",
            HomPoissonStructure::new(
                &three,
                MultiVector::basis_tuple(&ring3, 3, &[0, 1]).scale(&z2),
            )
            .unwrap(),
            2,
        ),
    ];

    for (name, p, degree) in &passing {
        assert_passes(name, &verify_poisson(p, *degree));
        let cot = cotangent_algebroid(p).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_passes(name, &cot.verify(*degree));
    }
    criterion(
        5,
        "the cotangent algebroid of every passing Poisson instance passes the full algebroid suite",
    );
}

// ---------------------------------------------------------------------------
// 6. Bialgebroid pipeline
// ---------------------------------------------------------------------------

#[test]
fn c06_bialgebroid_pipeline_is_consistent() {
    let p = xy_poisson();
    let b = from_poisson(&p).unwrap();

    // The pair passes, including the mixed compatibility laws relating the
    // dual differential, the dual Lie derivative, and the primal bracket.
    let report = verify_bialgebroid(&b, 2);
    assert_passes("xy bialgebroid", &report);
    for id in [
        "bialgebroid.compat",
        "bialgebroid.lie_exchange",
        "bialgebroid.exact_bracket",
    ] {
        assert!(
            report.checks.iter().any(|c| c.id == id),
            "missing mixed check {id}"
        );
    }

    // The induced Poisson structure recovers the bivector exactly.
    let recovered = induced_poisson(&b).unwrap();
    assert_eq!(recovered.bivector(), p.bivector());
    assert_eq!(recovered.sigma(), p.sigma());

    // The flipped pair is again a Hom-Lie bialgebroid.
    let dual = dual_bialgebroid(&b).unwrap();
    assert_passes("dual of the xy bialgebroid", &verify_bialgebroid(&dual, 2));

    criterion(
        6,
        "from_poisson verifies, induced_poisson recovers the bivector exactly, and the dual pair verifies",
    );
}

// ---------------------------------------------------------------------------
// 7. Courant doubles
// ---------------------------------------------------------------------------

#[test]
fn c07_courant_doubles_pass_all_axioms_and_lemmas() {
    // Every law of the suite: the six axioms, the five derived identities
    // of 𝒟, and the two product-expansion rules.
    let all_laws = [
        "courant.i.morphism",
        "courant.i.leibniz",
        "courant.ii",
        "courant.iii",
        "courant.iv",
        "courant.v",
        "courant.vi",
        "courant.anchor_exact",
        "courant.twist_exact",
        "courant.d_leibniz",
        "courant.exact_right",
        "courant.exact_left",
        "courant.leibniz_second",
        "courant.leibniz_first",
    ];

    // Double of the xy-Poisson bialgebroid, at full sample degree 3.
    let double = build_double(&from_poisson(&xy_poisson()).unwrap()).unwrap();
    let report = verify_courant(&double, 3);
    assert_passes("double of the xy bialgebroid", &report);
    for id in all_laws {
        assert!(
            report.checks.iter().any(|c| c.id == id && c.witness.is_none()),
            "law {id} missing or failing"
        );
    }

    // Standard Courant algebroid over ℚ[x, y] with σ = (2x, 3y).
    let ring = PolyRing::new(vec!["x", "y"]).unwrap();
    let sigma = RingAuto::new(
        &ring,
        vec![ring.int(2) * ring.var(0), ring.int(3) * ring.var(1)],
    )
    .unwrap();
    assert_passes(
        "standard Courant over Q[x, y]",
        &verify_courant(&standard_courant(&sigma), 2),
    );

    // Point case: the Courant double of a constant bialgebroid agrees with
    // the quadratic double of the underlying bialgebra, entry for entry.
    let g = HomLieAlgebra::new(
        2,
        &[(0, 1, vec![qi(0), qi(1)])],
        vec![vec![qi(1), qi(0)], vec![qi(0), qi(3)]],
    )
    .unwrap();
    let bi = HomLieBialgebra::new(g, &[(0, 1, vec![qi(0), qi(1)])]).unwrap();
    let quad = homlie::build_double(&bi).unwrap();
    assert_passes("quadratic double", &quad.verify());

    let pair = HomLieBialgebroid::new(
        HomLieAlgebroid::at_point(bi.algebra()),
        HomLieAlgebroid::at_point(bi.dual_algebra()),
    )
    .unwrap();
    let e = build_double(&pair).unwrap();
    assert_passes("point-case Courant double", &verify_courant(&e, 2));
    let ring = e.ring().clone();
    let dim = 2 * bi.algebra().dim();
    for i in 0..dim {
        for j in 0..dim {
            let mut ei = vec![Q::from_integer(0.into()); dim];
            let mut ej = vec![Q::from_integer(0.into()); dim];
            ei[i] = qi(1);
            ej[j] = qi(1);
            let expected = quad.algebra.bracket_vec(&ei, &ej);
            let got = e.product_basis(i, j);
            for (r, q) in expected.iter().enumerate() {
                assert_eq!(
                    got.component(&[r]),
                    ring.constant(q.clone()),
                    "product mismatch at ({i}, {j}) component {r}"
                );
            }
        }
    }

    criterion(
        7,
        "Courant doubles satisfy all 14 laws; the point case equals the bialgebra double",
    );
}

// ---------------------------------------------------------------------------
// 8. Hom-Lie 2-algebra extraction
// ---------------------------------------------------------------------------

#[test]
fn c08_two_algebra_passes_and_catches_a_scaled_l3() {
    let c = standard_courant(&sigma_2t());
    let two = to_hom_lie_2(&c);
    let report = verify_hom_lie_2(&two, 2);
    assert_passes("two-algebra of the standard Courant algebroid", &report);
    for id in ["two.a", "two.b1", "two.b2", "two.c1", "two.c2", "two.d"] {
        assert!(
            report.checks.iter().any(|c| c.id == id && c.witness.is_none()),
            "law {id} missing or failing"
        );
    }

    // Mutation: doubling l₃ must break a coherence law (c₁ or d).
    let scaled = to_hom_lie_2(&c).with_l3_scaled(qi(2));
    let report = verify_hom_lie_2(&scaled, 2);
    assert!(!report.passed(), "the scaled l₃ slipped through");
    assert!(
        report
            .failures()
            .iter()
            .any(|id| *id == "two.c1" || *id == "two.d"),
        "unexpected failure set: {:?}",
        report.failures()
    );

    criterion(
        8,
        "the induced 2-term bracket system passes (a)–(d) at degree 2; scaling l₃ by 2 breaks a coherence law",
    );
}

// ---------------------------------------------------------------------------
// 9. Classical limit
// ---------------------------------------------------------------------------

#[test]
fn c09_classical_limit_reduces_to_untwisted_structures() {
    // σ = id on ℚ[t] and ℚ[x, y]; all module twists identity.
    let ring_t = PolyRing::new(vec!["t"]).unwrap();
    let id_t = RingAuto::identity(&ring_t);
    let ring_xy = PolyRing::new(vec!["x", "y"]).unwrap();
    let id_xy = RingAuto::identity(&ring_xy);

    // Tangent algebroid: the bracket is the classical commutator of vector
    // fields, [t·∂, ∂] = −∂.
    let tangent = tangent_algebroid(&id_t);
    assert_passes("classical tangent", &tangent.verify(3));
    assert_passes("classical tangent identities", &tangent.verify_identities(2));
    let t = ring_t.var(0);
    let cal = tangent.calculus();
    let classical_bracket = cal.bracket_sections(
        &tangent.basis_section(0).scale(&t),
        &tangent.basis_section(0),
    );
    assert_eq!(
        classical_bracket,
        tangent.basis_section(0).scale(&ring_t.int(-1))
    );

    // Action algebroid with identity twists: a genuine Lie algebra action.
    let g = HomLieAlgebra::new(
        2,
        &[(0, 1, vec![qi(0), qi(1)])],
        vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]],
    )
    .unwrap();
    let d = SigmaDerivation::basis(&id_t, 0);
    let rho = vec![d.scale_poly(&t), d.scale_poly(&(&t * &t))];
    let action = action_algebroid(&g, &id_t, rho).unwrap();
    assert_passes("classical action", &action.verify(3));

    // A genuine Lie algebra (the cross-product algebra) with Φ = id.
    let so3 = HomLieAlgebra::new(
        3,
        &[
            (0, 1, vec![qi(0), qi(0), qi(1)]),
            (0, 2, vec![qi(0), qi(-1), qi(0)]),
            (1, 2, vec![qi(1), qi(0), qi(0)]),
        ],
        vec![
            vec![qi(1), qi(0), qi(0)],
            vec![qi(0), qi(1), qi(0)],
            vec![qi(0), qi(0), qi(1)],
        ],
    )
    .unwrap();
    assert_passes("classical cross-product algebra", &so3.verify());

    // Poisson, cotangent, bialgebroid, and Courant double over σ = id:
    // {x, y} = x·y is an honest Poisson bracket in two variables.
    let xy = &ring_xy.var(0) * &ring_xy.var(1);
    let pi = MultiVector::basis_tuple(&ring_xy, 2, &[0, 1]).scale(&xy);
    let p = HomPoissonStructure::new(&id_xy, pi).unwrap();
    assert_passes("classical Poisson", &verify_poisson(&p, 3));
    assert_eq!(poisson_bracket(&p, &ring_xy.var(0), &ring_xy.var(1)), xy);
    assert_passes(
        "classical cotangent",
        &cotangent_algebroid(&p).unwrap().verify(2),
    );
    let b = from_poisson(&p).unwrap();
    assert_passes("classical bialgebroid", &verify_bialgebroid(&b, 2));
    assert_passes(
        "classical Courant double",
        &verify_courant(&build_double(&b).unwrap(), 2),
    );

    // Standard Courant algebroid with σ = id: 𝒟 is the classical
    // differential carried to the dual slot, 𝒟t = u₂.
    let c = standard_courant(&id_t);
    assert_passes("classical standard Courant", &verify_courant(&c, 2));
    assert_eq!(
        c.dee(&t),
        MultiVector::from_coeffs(&ring_t, vec![ring_t.zero(), ring_t.one()]).unwrap()
    );
    assert_passes(
        "classical two-algebra",
        &verify_hom_lie_2(&to_hom_lie_2(&c), 2),
    );

    criterion(
        9,
        "with σ = id every construction reduces to its classical counterpart and every suite passes",
    );
}

// ---------------------------------------------------------------------------
// 10. CLI contract
// ---------------------------------------------------------------------------

fn homcal_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homcal"))
        .args(args)
        .output()
        .expect("the binary should run")
}

fn emit(name: &str, dir: &Path) -> PathBuf {
    let path = dir.join(format!("{name}.toml"));
    let out = homcal_bin(&["catalog", "emit", name, "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "emit {name}");
    path
}

#[test]
fn c10_cli_contract_holds_for_every_builtin() {
    let dir = tempfile::tempdir().unwrap();

    // Documented one-byte mutations, one per built-in, with the law that
    // catches each:
    //   tangent          1/2 → 1/3   (twist entry)        anchor.twist
    //   action           "1" → "2"   (structure constant) anchor.bracket
    //   xy-poisson        *  →  +    (bivector term)      poisson.invariance
    //   standard-courant 1/2 → 1/3   (twist entry)        courant.v
    //   dim2-homlie      "0" → "1"   (structure constant) homlie.morphism
    let cases: [(&str, &str, &str, &str); 5] = [
        ("tangent", "1/2", "1/3", "anchor.twist"),
        ("action", "[\"0\", \"1\"]", "[\"0\", \"2\"]", "anchor.bracket"),
        ("xy-poisson", "x*y", "x+y", "poisson.invariance"),
        ("standard-courant", "1/2", "1/3", "courant.v"),
        ("dim2-homlie", "[\"0\", \"1\"]", "[\"1\", \"1\"]", "homlie.morphism"),
    ];

    for (name, before, after, failing_law) in cases {
        // catalog emit → verify → exit 0.
        let path = emit(name, dir.path());
        let out = homcal_bin(&["verify", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "verify {name}");

        // One-byte mutation → exit 1 with the axiom named on stdout.
        let original = std::fs::read_to_string(&path).unwrap();
        let mutated = original.replacen(before, after, 1);
        assert_ne!(original, mutated, "{name}: mutation pattern missing");
        let mutated_path = dir.path().join(format!("{name}-mutated.toml"));
        std::fs::write(&mutated_path, mutated).unwrap();
        let out = homcal_bin(&["verify", mutated_path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "verify mutated {name}");
        let text = String::from_utf8_lossy(&out.stdout).into_owned();
        assert!(
            text.contains(&format!("FAIL {failing_law}")),
            "{name}: expected FAIL {failing_law} in:\n{text}"
        );
    }

    // Malformed input → exit 2.
    let broken = dir.path().join("broken.toml");
    std::fs::write(&broken, "kind = \"algebroid\"\n[ring\n").unwrap();
    let out = homcal_bin(&["verify", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    criterion(
        10,
        "all five built-ins emit and verify; each documented one-byte mutation exits 1 naming its axiom; malformed input exits 2",
    );
}
