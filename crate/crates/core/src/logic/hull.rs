//! Membership of an atom-probability assignment in the convex hull of the
//! two-valued states, decided exactly by a phase-one simplex over the
//! rationals.
//!
//! Feasibility of `Σ_s λ_s v_s = p`, `Σ_s λ_s = 1`, `λ ≥ 0` is tested by
//! minimizing the L1 residual of these equations. When the optimum is
//! positive the optimal simplex multipliers `y` give a separating functional
//! `f(x) = Σ_a y_a x_a + y_0` with `f(v_s) ≤ 0` for every state and
//! `f(p)` equal to the distance.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{two_valued_states, GreechieDiagram, TwoValuedState};
use crate::error::{Error, Result};

/// Tolerance for checking floating-point certificates.
pub const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum ExactCertificate {
    /// `(state index, weight)` with positive weights summing to one.
    Convex(Vec<(usize, BigRational)>),
    /// Coefficient per atom and a constant term.
    Separating { coefficients: Vec<BigRational>, offset: BigRational },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactHullMembership {
    pub inside: bool,
    /// L1 distance from `p` (with the normalization row) to the hull.
    pub distance: BigRational,
    pub states: Vec<TwoValuedState>,
    pub certificate: ExactCertificate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HullCertificate {
    Convex { weights: Vec<(usize, f64)> },
    Separating { coefficients: Vec<f64>, offset: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullMembership {
    pub inside: bool,
    pub distance: f64,
    pub certificate: HullCertificate,
    #[serde(skip)]
    pub states: Vec<TwoValuedState>,
}

impl HullCertificate {
    /// Checks the certificate against the states and the query point.
    pub fn verify(&self, states: &[TwoValuedState], p: &[f64], tol: f64) -> bool {
        match self {
            Self::Convex { weights } => {
                let total: f64 = weights.iter().map(|(_, w)| w).sum();
                if weights.iter().any(|&(_, w)| w < -tol) || (total - 1.0).abs() > tol {
                    return false;
                }
                (0..p.len()).all(|a| {
                    let mixed: f64 = weights.iter().filter(|(s, _)| states[*s].value(a)).map(|(_, w)| w).sum();
                    (mixed - p[a]).abs() <= tol
                })
            }
            Self::Separating { coefficients, offset } => {
                let f = |x: &dyn Fn(usize) -> f64| -> f64 {
                    coefficients.iter().enumerate().map(|(a, c)| c * x(a)).sum::<f64>() + offset
                };
                let at_p = f(&|a| p[a]);
                at_p > tol
                    && states.iter().all(|s| f(&|a| if s.value(a) { 1.0 } else { 0.0 }) <= tol)
            }
        }
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Smallest-denominator rational within `tol` of `x` (continued fractions),
/// falling back to the exact binary value.
pub fn rationalize(x: f64, tol: f64) -> BigRational {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut rest = x;
    for _ in 0..40 {
        let a = rest.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (Some(h2), Some(k2)) = (a.checked_mul(h1).and_then(|v| v.checked_add(h0)), a.checked_mul(k1).and_then(|v| v.checked_add(k0)))
        else {
            break;
        };
        if k2 > 1_000_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return ratio(h1, k1);
        }
        let frac = rest - a as f64;
        if frac == 0.0 {
            break;
        }
        rest = 1.0 / frac;
    }
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Floating-point front end: each probability is replaced by the simplest
/// rational within 1e-12 and the distance LP is solved exactly. Rounding can
/// leave a tiny distance for points that are mixtures in exact arithmetic,
/// so `p` counts as inside when its L1 distance to the hull is at most
/// [`FEASIBILITY_TOL`].
pub fn hull_membership(diagram: &GreechieDiagram, p: &BTreeMap<String, f64>) -> Result<HullMembership> {
    let mut exact = BTreeMap::new();
    for (atom, &value) in p {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidArgument(format!("probability of `{atom}` is {value}, outside [0, 1]")));
        }
        exact.insert(atom.clone(), rationalize(value, 1e-12));
    }
    let (states, solution) = solve(diagram, &exact)?;
    let distance = to_f64(&solution.distance);
    let inside = distance <= FEASIBILITY_TOL;
    let certificate = if inside {
        let weights = solution.lambda.iter().enumerate().filter(|(_, w)| w.is_positive()).map(|(s, w)| (s, to_f64(w)));
        HullCertificate::Convex { weights: weights.collect() }
    } else {
        let (coefficients, offset) = split_functional(solution.y);
        HullCertificate::Separating { coefficients: coefficients.iter().map(to_f64).collect(), offset: to_f64(&offset) }
    };
    Ok(HullMembership { inside, distance, certificate, states })
}

/// Exact decision for rational probabilities. Atoms missing from `p` get 0.
pub fn hull_membership_exact(
    diagram: &GreechieDiagram,
    p: &BTreeMap<String, BigRational>,
) -> Result<ExactHullMembership> {
    let (states, solution) = solve(diagram, p)?;
    let certificate = if solution.distance.is_zero() {
        ExactCertificate::Convex(solution.lambda.into_iter().enumerate().filter(|(_, w)| w.is_positive()).collect())
    } else {
        let (coefficients, offset) = split_functional(solution.y);
        ExactCertificate::Separating { coefficients, offset }
    };
    let inside = matches!(certificate, ExactCertificate::Convex(_));
    Ok(ExactHullMembership { inside, distance: solution.distance, states, certificate })
}

fn split_functional(mut y: Vec<BigRational>) -> (Vec<BigRational>, BigRational) {
    let offset = y.pop().unwrap_or_else(BigRational::zero);
    (y, offset)
}

fn solve(
    diagram: &GreechieDiagram,
    p: &BTreeMap<String, BigRational>,
) -> Result<(Vec<TwoValuedState>, Solution)> {
    let n = diagram.atoms().len();
    let mut target = vec![BigRational::zero(); n];
    for (atom, value) in p {
        let index = diagram
            .atom_index(atom)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown atom `{atom}`")))?;
        if value.is_negative() || *value > BigRational::one() {
            return Err(Error::InvalidArgument(format!("probability of `{atom}` is outside [0, 1]")));
        }
        target[index] = value.clone();
    }
    let states = two_valued_states(diagram);
    if states.is_empty() {
        return Err(Error::NoClassicalStates);
    }
    // rows: one per atom, then the normalization row
    let columns: Vec<Vec<BigRational>> = states
        .iter()
        .map(|s| {
            let mut col: Vec<BigRational> =
                (0..n).map(|a| if s.value(a) { BigRational::one() } else { BigRational::zero() }).collect();
            col.push(BigRational::one());
            col
        })
        .collect();
    target.push(BigRational::one());
    let solution = l1_distance(&columns, &target);
    Ok((states, solution))
}

struct Solution {
    /// `min ‖Aλ − b‖₁` over `λ ≥ 0`.
    distance: BigRational,
    lambda: Vec<BigRational>,
    /// Dual optimum: `yᵀA ≤ 0`, `|y_i| ≤ 1`, `yᵀb = distance`.
    y: Vec<BigRational>,
}

/// Minimizes `Σ (s⁺ + s⁻)` subject to `Aλ + s⁺ − s⁻ = b` with `λ, s ≥ 0`,
/// `b ≥ 0`, by the simplex method with Bland's rule, starting from the basis
/// `s⁺ = b`. `columns[j]` is column `j` of `A`.
fn l1_distance(columns: &[Vec<BigRational>], b: &[BigRational]) -> Solution {
    let m = b.len();
    let k = columns.len();
    let width = k + 2 * m;
    let unit = |i: usize, j: usize, sign: i64| {
        if i == j {
            BigRational::from_integer(sign.into())
        } else {
            BigRational::zero()
        }
    };
    // tableau rows: [A | I | -I | b]
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[i].clone()).collect();
            row.extend((0..m).map(|j| unit(i, j, 1)));
            row.extend((0..m).map(|j| unit(i, j, -1)));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();
    // reduced costs, last entry is -objective
    let mut cost: Vec<BigRational> = (0..=width)
        .map(|j| {
            let base = if (k..width).contains(&j) { BigRational::one() } else { BigRational::zero() };
            t.iter().fold(base, |acc, row| acc - &row[j])
        })
        .collect();

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let r = &row[width] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, r));
            }
        }
        // the objective is bounded below by zero
        let Some((row, _)) = leave else { break };
        let pivot = t[row][enter].clone();
        for x in t[row].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = t[row].clone();
        for (i, other) in t.iter_mut().enumerate() {
            if i == row || other[enter].is_zero() {
                continue;
            }
            let f = other[enter].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        let f = cost[enter].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
        basis[row] = enter;
    }

    let mut lambda = vec![BigRational::zero(); k];
    for (i, &var) in basis.iter().enumerate() {
        if var < k {
            lambda[var] = t[i][width].clone();
        }
    }
    // reduced cost of s⁺_i is 1 - y_i
    let y = (0..m).map(|i| BigRational::one() - &cost[k + i]).collect();
    Solution { distance: -cost[width].clone(), lambda, y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_diagram;

    fn probs(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(a, p)| (a.to_string(), *p)).collect()
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(1.0 / 3.0, 1e-12), ratio(1, 3));
        assert_eq!(rationalize(0.5, 1e-12), ratio(1, 2));
        assert_eq!(rationalize(0.0, 1e-12), ratio(0, 1));
        assert_eq!(rationalize(1.0, 1e-12), ratio(1, 1));
        assert_eq!(rationalize(0.2, 1e-12), ratio(1, 5));
    }

    #[test]
    fn barycenter_of_single_context() {
        let d = parse_diagram("context A B C\n").unwrap();
        let third = 1.0 / 3.0;
        let p = probs(&[("A", third), ("B", third), ("C", third)]);
        let r = hull_membership(&d, &p).unwrap();
        assert!(r.inside);
        assert!(r.certificate.verify(&r.states, &[third; 3], FEASIBILITY_TOL));
    }

    #[test]
    fn vertex_and_exterior_point() {
        let d = parse_diagram("context A B C\ncontext D K A\n").unwrap();
        let vertex = hull_membership(&d, &probs(&[("A", 1.0)])).unwrap();
        assert!(vertex.inside);
        assert!(vertex.certificate.verify(&vertex.states, &[1.0, 0.0, 0.0, 0.0, 0.0], FEASIBILITY_TOL));

        let outside = hull_membership(&d, &probs(&[("A", 1.0), ("B", 0.5)])).unwrap();
        assert!(!outside.inside);
        assert!(outside.certificate.verify(&outside.states, &[1.0, 0.5, 0.0, 0.0, 0.0], FEASIBILITY_TOL));
    }

    #[test]
    fn exact_certificate_is_exact() {
        let d = parse_diagram("context A B C\ncontext D K A\n").unwrap();
        let p: BTreeMap<String, BigRational> =
            [("A", ratio(1, 2)), ("B", ratio(1, 4)), ("C", ratio(1, 4)), ("D", ratio(1, 6)), ("K", ratio(1, 3))]
                .into_iter()
                .map(|(a, v)| (a.to_string(), v))
                .collect();
        let r = hull_membership_exact(&d, &p).unwrap();
        let ExactCertificate::Convex(weights) = &r.certificate else { panic!("expected inside") };
        let total = weights.iter().fold(BigRational::zero(), |acc, (_, w)| acc + w);
        assert_eq!(total, BigRational::one());
        for (a, name) in d.atoms().iter().enumerate() {
            let mixed = weights
                .iter()
                .filter(|(s, _)| r.states[*s].value(a))
                .fold(BigRational::zero(), |acc, (_, w)| acc + w);
            assert_eq!(&mixed, &p[name]);
        }
    }

    #[test]
    fn errors() {
        let d = parse_diagram("context A B C\n").unwrap();
        assert!(matches!(hull_membership(&d, &probs(&[("Z", 0.5)])), Err(Error::InvalidArgument(_))));
        assert!(matches!(hull_membership(&d, &probs(&[("A", 1.5)])), Err(Error::InvalidArgument(_))));
        let empty = parse_diagram("context A B\ncontext B C\ncontext C A\n").unwrap();
        assert!(matches!(hull_membership(&empty, &probs(&[])), Err(Error::NoClassicalStates)));
    }
}
