use proptest::prelude::*;

use qlctx::context_ops::{context_operator, link_observables, split_selfadjoint, tripod_pair_bases};
use qlctx::linalg::{dyad, rotation_unitary, tensor, ComplexMatrix, ComplexVector, C64, DEFAULT_TOL};
use qlctx::realizability::{born_probabilities, Realization, Space};
use qlctx::states::{apply_identical_local, MultipartiteState};
use qlctx::uniqueness::{check_uniqueness, counterfactual_complete, filter, term_count, Completion};

fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn vector(dim: usize) -> impl Strategy<Value = ComplexVector> {
    prop::collection::vec(complex(), dim)
        .prop_filter("nonzero", |v| v.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-6)
        .prop_map(ComplexVector::new)
}

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), n * n).prop_map(move |e| ComplexMatrix::from_entries(n, n, e).unwrap())
}

fn int_matrix(r: usize, c: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-3i32..4, -3i32..4), r * c).prop_map(move |e| {
        let entries = e.into_iter().map(|(a, b)| C64::new(a as f64, b as f64)).collect();
        ComplexMatrix::from_entries(r, c, entries).unwrap()
    })
}

fn axis() -> impl Strategy<Value = [f64; 3]> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_filter("nonzero axis", |(x, y, z)| x * x + y * y + z * z > 1e-3).prop_map(
        |(x, y, z)| {
            let n = (x * x + y * y + z * z).sqrt();
            [x / n, y / n, z / n]
        },
    )
}

/// Sparse states with small integer amplitudes, so "present" is unambiguous.
fn sparse_state() -> impl Strategy<Value = MultipartiteState> {
    (2usize..=4, 2usize..=3).prop_flat_map(|(sites, dim)| {
        let size = dim.pow(sites as u32);
        prop::collection::vec(prop_oneof![3 => Just(0i32), 1 => -2i32..3], size)
            .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
            .prop_map(move |v| {
                let coeffs = v.into_iter().map(|x| C64::new(x as f64, 0.0)).collect();
                MultipartiteState::new(sites, dim, coeffs).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn dyad_is_an_orthogonal_projector(v in vector(3)) {
        let p = dyad(&v).unwrap();
        prop_assert!((&p * &p).max_abs_diff(&p) < 1e-12);
        prop_assert!(p.self_adjoint_deviation() < 1e-12);
        prop_assert!((p.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_is_associative_on_integers(a in int_matrix(2, 2), b in int_matrix(2, 3), c in int_matrix(3, 1)) {
        prop_assert_eq!(tensor(&tensor(&a, &b), &c), tensor(&a, &tensor(&b, &c)));
    }

    #[test]
    fn rotations_compose_about_a_fixed_axis(n in axis(), alpha in -7.0f64..7.0, beta in -7.0f64..7.0, d in 2usize..=3) {
        let lhs = &rotation_unitary(d, n, alpha).unwrap() * &rotation_unitary(d, n, beta).unwrap();
        let rhs = rotation_unitary(d, n, alpha + beta).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        prop_assert!(rhs.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn split_reconstructs(a in matrix(3)) {
        let (a1, a2) = split_selfadjoint(&a).unwrap();
        prop_assert!(a1.self_adjoint_deviation() < 1e-12);
        prop_assert!(a2.self_adjoint_deviation() < 1e-12);
        let back = &a1 + &a2.scale(C64::new(0.0, 1.0));
        prop_assert!(a.max_abs_diff(&back) < 1e-12);
    }

    #[test]
    fn local_rotations_preserve_norm(psi in sparse_state(), n in axis(), angle in 0.0f64..6.3) {
        let u = rotation_unitary(psi.site_dim(), n, angle).unwrap();
        let rotated = apply_identical_local(&psi, &u).unwrap();
        prop_assert!((rotated.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn marginals_sum_to_one(psi in sparse_state()) {
        for site in 0..psi.sites() {
            let total: f64 = psi.marginal(site).unwrap().iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn uniqueness_bounds_term_count(psi in sparse_state()) {
        let r = check_uniqueness(&psi, DEFAULT_TOL);
        for (site, ok) in r.site_verdicts.iter().enumerate() {
            if *ok {
                prop_assert!(term_count(&psi, DEFAULT_TOL) <= psi.site_dim(), "site {}", site);
            }
        }
    }

    #[test]
    fn filtering_is_idempotent(psi in sparse_state()) {
        let (site, outcome) = psi.terms(DEFAULT_TOL).next().map(|(i, _)| (0, psi.digits(i)[0])).unwrap();
        let once = filter(&psi, site, outcome).unwrap();
        let twice = filter(&once, site, outcome).unwrap();
        prop_assert!((once.overlap(&twice).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn completion_matches_possibility_sets(psi in sparse_state()) {
        let r = check_uniqueness(&psi, DEFAULT_TOL);
        for o in &r.outcomes {
            let done = counterfactual_complete(&psi, o.site, o.outcome).unwrap();
            prop_assert_eq!(matches!(done, Completion::Determined { .. }), o.is_determined());
        }
    }

    #[test]
    fn born_sums_to_one_per_context(phi in -3.2f64..3.2, psi in vector(3)) {
        let [b1, b2] = tripod_pair_bases(phi);
        // atoms B C A D K A: A is shared
        let atoms = ["B", "C", "A", "D", "K"].iter().map(|a| a.to_string()).collect();
        let vectors = vec![b1[0].clone(), b1[1].clone(), b1[2].clone(), b2[0].clone(), b2[1].clone()];
        let r = Realization::new(atoms, vectors, Space::Real).unwrap();
        let p = born_probabilities(&r, &psi.normalized().unwrap()).unwrap();
        prop_assert!((p[0].1 + p[1].1 + p[2].1 - 1.0).abs() < 1e-9);
        prop_assert!((p[3].1 + p[4].1 + p[2].1 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn context_projectors_commute_and_links_are_symmetric(phi in -3.2f64..3.2) {
        let [b1, b2] = tripod_pair_bases(phi);
        let c1 = context_operator(&b1, &[1.0, 2.0, 3.0]).unwrap();
        let c2 = context_operator(&b2, &[4.0, 5.0, 6.0]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!(c2.projector(i).commutator(&c2.projector(j)).max_abs() < 1e-12);
            }
        }
        let forward = link_observables(&c1, &c2, 1e-9).unwrap();
        let backward = link_observables(&c2, &c1, 1e-9).unwrap();
        prop_assert_eq!(forward.len(), backward.len());
        for (f, b) in forward.iter().zip(&backward) {
            prop_assert!(f.max_abs_diff(b) < 1e-9);
        }
    }
}
