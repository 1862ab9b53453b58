//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlctx::context_ops::{context_operator, split_selfadjoint, tripod_pair_bases};
use qlctx::corpus::{self, oracle_two_valued, EntryKind, ENTRIES};
use qlctx::linalg::{dyad, ComplexMatrix, ComplexVector, Rotation, C64, DEFAULT_TOL};
use qlctx::logic::{classify, hull_membership, two_valued_states, GreechieDiagram, StateClass, FEASIBILITY_TOL};
use qlctx::realizability::{saturate_orthogonality, search_realization, verify_realization, SaturationVerdict};
use qlctx::states::{catalog_state, is_form_invariant, singlet_subspace, CatalogName, MultipartiteState};
use qlctx::uniqueness::{check_uniqueness, check_uniqueness_rotated, check_uniqueness_under};

type Outcome = Result<String, String>;

fn ensure(cond: bool, message: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn c1_fig3_nonseparating() -> Outcome {
    let start = Instant::now();
    let d = corpus::load_diagram("fig3").map_err(err)?;
    let states = two_valued_states(&d);
    ensure(!states.is_empty(), "no two-valued states")?;
    let (a, b) = (d.atom_index("a").unwrap(), d.atom_index("b").unwrap());
    ensure(states.iter().all(|s| s.value(a) == s.value(b)), "some state separates a and b")?;
    let c = classify(&d);
    ensure(c.class == StateClass::UnitalNonseparating, format!("class {:?}", c.class))?;
    ensure(c.nonseparating.contains(&(a.min(b), a.max(b))), "(a,b) missing from witnesses")?;
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 1.0, format!("took {elapsed:.3}s"))?;
    Ok(format!("{} states, all with v(a)=v(b), {elapsed:.3}s", states.len()))
}

fn c2_fig1_enumeration() -> Outcome {
    let d = corpus::load_diagram("fig1").map_err(err)?;
    let states = two_valued_states(&d);
    ensure(states.len() == 5, format!("{} states", states.len()))?;
    let oracle = oracle_two_valued(&d).map_err(err)?;
    let a: BTreeSet<_> = states.iter().collect();
    let b: BTreeSet<_> = oracle.iter().collect();
    ensure(a == b, "backtracking and brute force disagree")?;
    let class = classify(&d).class;
    ensure(class == StateClass::Separating, format!("class {class:?}"))?;
    Ok("5 states, equal to the 2^5 oracle, separating".into())
}

fn projection_norm(psi: &MultipartiteState, basis: &[MultipartiteState]) -> f64 {
    basis.iter().map(|k| k.overlap(psi).norm_sqr()).sum::<f64>().sqrt()
}

fn c3_singlet_dimensions() -> Outcome {
    let dims: Vec<usize> =
        [2, 3, 4].iter().map(|&n| singlet_subspace(3, n, DEFAULT_TOL).map(|k| k.len())).collect::<Result<_, _>>().map_err(err)?;
    ensure(dims == [1, 1, 3], format!("dimensions {dims:?}"))?;
    let k4 = singlet_subspace(3, 4, DEFAULT_TOL).map_err(err)?;
    let mut worst: f64 = 1.0;
    for name in [CatalogName::Psi4_1, CatalogName::Psi4_2, CatalogName::Psi4_3] {
        let p = projection_norm(&catalog_state(name), &k4);
        ensure(p >= 1.0 - 1e-6, format!("{} projects with norm {p}", name.as_str()))?;
        worst = worst.min(p);
    }
    for (name, n) in [(CatalogName::Psi2, 2), (CatalogName::Psi3, 3)] {
        let k = singlet_subspace(3, n, DEFAULT_TOL).map_err(err)?;
        let o = k[0].overlap(&catalog_state(name)).norm();
        ensure(o >= 1.0 - 1e-9, format!("{} overlap {o}", name.as_str()))?;
        worst = worst.min(o);
    }
    Ok(format!("dimensions 1, 1, 3; worst overlap/projection {worst:.12}"))
}

fn c4_uniqueness_verdicts() -> Outcome {
    let tol = 1e-9;
    for (name, expected) in [
        (CatalogName::Psi2, true),
        (CatalogName::Ghzm, true),
        (CatalogName::Psi3, false),
        (CatalogName::Psi4_1, false),
        (CatalogName::Psi4_2, false),
        (CatalogName::Psi4_3, false),
    ] {
        let r = check_uniqueness(&catalog_state(name), tol);
        ensure(r.overall == expected, format!("{} gave {}", name.as_str(), r.overall))?;
    }
    let r3 = check_uniqueness(&catalog_state(CatalogName::Psi3), tol);
    // first site on '-', second site's possibilities
    let support = r3.support(0, 2).ok_or("no support for '-'")?;
    ensure(support.supports[1] == [0, 1], format!("support {:?}", support.supports[1]))?;
    Ok("psi2, ghzm unique; psi3 (+,0 after '-'), psi4_1..3 not unique".into())
}

fn c5_ghzm_direction_dependence() -> Outcome {
    let ghzm = catalog_state(CatalogName::Ghzm);
    let runs = check_uniqueness_rotated(&ghzm, 50, 0, DEFAULT_TOL).map_err(err)?;
    let mut generic = 0;
    for r in &runs {
        if r.rotation.min_quarter_turn_distance() < 0.1 {
            continue;
        }
        generic += 1;
        ensure(!r.report.overall, format!("trial {} is unique", r.trial))?;
        ensure(r.term_count == 8, format!("trial {} has {} terms", r.trial, r.term_count))?;
    }
    ensure(generic > 0, "no rotation was generic")?;
    let id = check_uniqueness_under(&ghzm, &Rotation::identity(), DEFAULT_TOL).map_err(err)?;
    ensure(id.overall && id.term_count == 2, "identity rotation should give 2 terms, unique")?;
    Ok(format!("{generic}/50 generic rotations, all non-unique with 8 terms; identity unique with 2"))
}

fn c6_form_invariance() -> Outcome {
    let tol = 1e-9;
    let mut states = vec![("psi2".to_string(), catalog_state(CatalogName::Psi2)), ("psi3".to_string(), catalog_state(CatalogName::Psi3))];
    for (i, k) in singlet_subspace(3, 4, DEFAULT_TOL).map_err(err)?.into_iter().enumerate() {
        states.push((format!("kernel vector {i}"), k));
    }
    let mut worst: f64 = 1.0;
    for (name, psi) in &states {
        let f = is_form_invariant(psi, 100, 0, tol).map_err(err)?;
        ensure(f.invariant && f.min_overlap >= 1.0 - tol, format!("{name}: min overlap {}", f.min_overlap))?;
        worst = worst.min(f.min_overlap);
    }
    let g = is_form_invariant(&catalog_state(CatalogName::Ghzm), 100, 0, tol).map_err(err)?;
    ensure(!g.invariant, "ghzm reported form invariant")?;
    Ok(format!("{} singlets invariant (min overlap {worst:.12}); ghzm not (min {:.3})", states.len(), g.min_overlap))
}

fn c7_realizability_split() -> Outcome {
    let a = corpus::load_diagram("fig2a").map_err(err)?;
    let b = corpus::load_diagram("fig2b").map_err(err)?;
    let sa = saturate_orthogonality(&a).map_err(err)?;
    ensure(sa.verdict == SaturationVerdict::NoContradiction, "fig2a refuted")?;
    let ra = search_realization(&a, 3, 0, 50).map_err(err)?;
    ensure(ra.success && ra.penalty < 1e-12, format!("fig2a penalty {}", ra.penalty))?;
    ensure(verify_realization(&a, &ra.realization, 1e-6).map_err(err)?.valid, "fig2a witness fails verification")?;
    let sb = saturate_orthogonality(&b).map_err(err)?;
    ensure(sb.verdict == SaturationVerdict::Contradiction, "fig2b not refuted")?;
    ensure(!sb.derivation.is_empty(), "empty derivation")?;
    let text = sb.derivation.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
    let rb = search_realization(&b, 3, 0, 50).map_err(err)?;
    ensure(!rb.success && rb.penalty > 0.01, format!("fig2b best penalty {}", rb.penalty))?;
    Ok(format!("fig2a witness at {:.1e}; fig2b refuted ({text}), best residual {:.4}", ra.penalty, rb.penalty))
}

fn c8_tripod_operators() -> Outcome {
    let phi = PI / 5.0;
    let [b1, b2] = tripod_pair_bases(phi);
    let (e1, e2, e3) = (4.0, 5.0, 6.0);
    let c2 = context_operator(&b2, &[e1, e2, e3]).map_err(err)?;
    let (c, s) = (phi.cos(), phi.sin());
    let off = (e1 - e2) * s * c;
    let printed = ComplexMatrix::from_real_rows(&[
        &[e1 * c * c + e2 * s * s, off, 0.0],
        &[off, e2 * c * c + e1 * s * s, 0.0],
        &[0.0, 0.0, e3],
    ]);
    let dev = c2.operator().max_abs_diff(&printed);
    ensure(dev <= 1e-12, format!("deviation {dev}"))?;
    let c1 = context_operator(&b1, &[1.0, 2.0, 3.0]).map_err(err)?;
    let comm = c1.operator().commutator(c2.operator()).max_abs();
    ensure(comm > 1e-6, format!("commutator {comm}"))?;
    let a = dyad(&ComplexVector::from_real(&[0.0, 0.0, 1.0])).map_err(err)?;
    let l1 = c1.operator().commutator(&a).max_abs();
    let l2 = c2.operator().commutator(&a).max_abs();
    ensure(l1 <= 1e-12 && l2 <= 1e-12, format!("link commutators {l1}, {l2}"))?;
    Ok(format!("deviation {dev:.1e}; [C1,C2] max {comm:.4}; link commutators {:.1e}", l1.max(l2)))
}

fn c9_operator_split() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let entries = (0..9).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let a = ComplexMatrix::from_entries(3, 3, entries).map_err(err)?;
        let (a1, a2) = split_selfadjoint(&a).map_err(err)?;
        let sa = a1.self_adjoint_deviation().max(a2.self_adjoint_deviation());
        let back = &a1 + &a2.scale(C64::new(0.0, 1.0));
        let rec = a.max_abs_diff(&back);
        ensure(sa < 1e-12 && rec < 1e-12, format!("self-adjoint deviation {sa}, reconstruction {rec}"))?;
        worst = worst.max(sa).max(rec);
    }
    Ok(format!("100 matrices, worst deviation {worst:.1e}"))
}

fn c10_hull_membership() -> Outcome {
    let d = corpus::load_diagram("fig1").map_err(err)?;
    let point = |pairs: &[(&str, f64)]| -> (BTreeMap<String, f64>, Vec<f64>) {
        let map: BTreeMap<String, f64> = pairs.iter().map(|(a, p)| (a.to_string(), *p)).collect();
        let dense = d.atoms().iter().map(|a| map.get(a).copied().unwrap_or(0.0)).collect();
        (map, dense)
    };
    let (p_in, x_in) = point(&[("A", 1.0)]);
    let inside = hull_membership(&d, &p_in).map_err(err)?;
    ensure(inside.inside, "p(A)=1 reported outside")?;
    ensure(inside.certificate.verify(&inside.states, &x_in, FEASIBILITY_TOL), "convex certificate invalid")?;
    let (p_out, x_out) = point(&[("A", 1.0), ("B", 0.5)]);
    let outside = hull_membership(&d, &p_out).map_err(err)?;
    ensure(!outside.inside, "p(A)=1, p(B)=1/2 reported inside")?;
    ensure(outside.certificate.verify(&outside.states, &x_out, FEASIBILITY_TOL), "separating functional invalid")?;
    Ok("vertex inside with convex weights; exterior point separated".into())
}

fn random_diagram(rng: &mut ChaCha8Rng) -> GreechieDiagram {
    loop {
        let atoms = rng.random_range(6..=18);
        let contexts = rng.random_range(2..=atoms);
        let mut list: Vec<Vec<String>> = Vec::new();
        for _ in 0..contexts {
            let mut pool: Vec<usize> = (0..atoms).collect();
            pool.shuffle(rng);
            list.push(pool[..3].iter().map(|a| format!("x{a}")).collect());
        }
        if let Ok(d) = GreechieDiagram::from_contexts(None, &list) {
            return d;
        }
    }
}

fn c11_oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for e in ENTRIES.iter().filter(|e| e.kind == EntryKind::Diagram) {
        let d = corpus::load_diagram(e.id).map_err(err)?;
        ensure(two_valued_states(&d) == oracle_two_valued(&d).map_err(err)?, format!("{} differs", e.id))?;
        checked += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut total_states = 0;
    for i in 0..20 {
        let d = random_diagram(&mut rng);
        ensure(d.atoms().len() <= 18 && d.dim() == 3, "generator out of bounds")?;
        let fast = two_valued_states(&d);
        ensure(fast == oracle_two_valued(&d).map_err(err)?, format!("random diagram {i} differs:\n{}", d.to_gd()))?;
        total_states += fast.len();
    }
    Ok(format!("{checked} corpus diagrams and 20 random diagrams ({total_states} states) agree"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 fig3 nonseparating", c1_fig3_nonseparating),
        ("2 fig1 enumeration", c2_fig1_enumeration),
        ("3 singlet dimensions", c3_singlet_dimensions),
        ("4 uniqueness verdicts", c4_uniqueness_verdicts),
        ("5 ghzm direction dependence", c5_ghzm_direction_dependence),
        ("6 form invariance", c6_form_invariance),
        ("7 realizability split", c7_realizability_split),
        ("8 tripod context operators", c8_tripod_operators),
        ("9 operator split", c9_operator_split),
        ("10 hull membership", c10_hull_membership),
        ("11 oracle equivalence", c11_oracle_equivalence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
