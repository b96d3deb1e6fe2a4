//! Built-in example structures, usable as verification targets and as
//! starting points for the derivation pipelines.

use homcal::algebroid::{action_algebroid, tangent_algebroid};
use homcal::courant::standard_courant;
use homcal::exterior::MultiVector;
use homcal::homlie::HomLieAlgebra;
use homcal::poisson::HomPoissonStructure;
use homcal::ring::{PolyRing, Q, RingAuto, SigmaDerivation};

use crate::format::Structure;

/// Names and one-line descriptions of the built-in examples.
pub fn entries() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "tangent",
            "tangent algebroid of Q[t] with the substitution t -> 2t (rank 1)",
        ),
        (
            "action",
            "rank-2 action algebroid: the dim-2 algebra acting on Q[t] by t*D and t^2*D",
        ),
        (
            "xy-poisson",
            "bivector x*y D_1^D_2 on Q[x, y] with the substitution (2x, 2y)",
        ),
        (
            "standard-courant",
            "double of the tangent algebroid of Q[t] (t -> 2t) with its silent dual (rank 2)",
        ),
        (
            "dim2-homlie",
            "dim-2 algebra [e1, e2] = e2 with the twist diag(1, 3)",
        ),
    ]
}

/// Builds a built-in example by name.
pub fn build(name: &str) -> Option<Structure> {
    match name {
        "tangent" => {
            let ring = PolyRing::new(vec!["t"]).expect("valid variable name");
            let sigma =
                RingAuto::new(&ring, vec![ring.int(2) * ring.var(0)]).expect("invertible");
            Some(Structure::Algebroid(tangent_algebroid(&sigma)))
        }
        "action" => {
            let g = HomLieAlgebra::new(
                2,
                &[(0, 1, vec![Q::from_integer(0.into()), Q::from_integer(1.into())])],
                vec![
                    vec![Q::from_integer(1.into()), Q::from_integer(0.into())],
                    vec![Q::from_integer(0.into()), Q::from_integer(2.into())],
                ],
            )
            .expect("valid algebra data");
            let ring = PolyRing::new(vec!["t"]).expect("valid variable name");
            let sigma =
                RingAuto::new(&ring, vec![ring.int(2) * ring.var(0)]).expect("invertible");
            let t = ring.var(0);
            let d = SigmaDerivation::basis(&sigma, 0);
            let rho = vec![d.scale_poly(&t), d.scale_poly(&(&t * &t))];
            Some(Structure::Algebroid(
                action_algebroid(&g, &sigma, rho).expect("a valid action"),
            ))
        }
        "xy-poisson" => {
            let ring = PolyRing::new(vec!["x", "y"]).expect("valid variable names");
            let sigma = RingAuto::new(
                &ring,
                vec![ring.int(2) * ring.var(0), ring.int(2) * ring.var(1)],
            )
            .expect("invertible");
            let xy = &ring.var(0) * &ring.var(1);
            let pi = MultiVector::basis_tuple(&ring, 2, &[0, 1]).scale(&xy);
            Some(Structure::Poisson(
                HomPoissonStructure::new(&sigma, pi).expect("well-formed bivector"),
            ))
        }
        "standard-courant" => {
            let ring = PolyRing::new(vec!["t"]).expect("valid variable name");
            let sigma =
                RingAuto::new(&ring, vec![ring.int(2) * ring.var(0)]).expect("invertible");
            Some(Structure::Courant(standard_courant(&sigma)))
        }
        "dim2-homlie" => {
            let algebra = HomLieAlgebra::new(
                2,
                &[(0, 1, vec![Q::from_integer(0.into()), Q::from_integer(1.into())])],
                vec![
                    vec![Q::from_integer(1.into()), Q::from_integer(0.into())],
                    vec![Q::from_integer(0.into()), Q::from_integer(3.into())],
                ],
            )
            .expect("valid algebra data");
            Some(Structure::HomLie {
                algebra,
                pairing: None,
            })
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_structure, print_structure, verify_structure};

    #[test]
    fn every_entry_builds_verifies_and_round_trips() {
        for (name, _) in entries() {
            let s = build(name).unwrap_or_else(|| panic!("{name} must build"));
            let report = verify_structure(&s, 2);
            assert!(report.passed(), "{name}:\n{}", report.render_text());
            // parse ∘ print = identity (byte-normalized): printing the
            // reparsed file reproduces the bytes.
            let text = print_structure(&s);
            let reparsed = parse_structure(&text)
                .unwrap_or_else(|e| panic!("{name} must reparse: {e:#}"));
            assert_eq!(text, print_structure(&reparsed), "{name} round trip");
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(build("no-such-example").is_none());
    }
}
