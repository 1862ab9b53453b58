//! Maximal context operators built from an orthonormal basis and distinct
//! eigenvalues, link detection between contexts, and the split of an
//! arbitrary operator into self-adjoint parts.

use crate::error::{Error, Result};
use crate::linalg::{dyad, ComplexMatrix, ComplexVector, C64};

const ORTHONORMAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Context {
    basis: Vec<ComplexVector>,
    eigenvalues: Vec<f64>,
    operator: ComplexMatrix,
}

impl Context {
    pub fn basis(&self) -> &[ComplexVector] {
        &self.basis
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `Σ_i e_i |b_i><b_i|`.
    pub fn operator(&self) -> &ComplexMatrix {
        &self.operator
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Projector onto the `i`-th basis vector.
    pub fn projector(&self, i: usize) -> ComplexMatrix {
        dyad(&self.basis[i]).expect("basis vectors are unit")
    }
}

/// Builds the nondegenerate operator with the given eigenbasis.
pub fn context_operator(basis: &[ComplexVector], eigenvalues: &[f64]) -> Result<Context> {
    let dim = basis.len();
    if dim == 0 {
        return Err(Error::InvalidArgument("empty basis".into()));
    }
    if eigenvalues.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: eigenvalues.len() });
    }
    if let Some(v) = basis.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
    }
    let mut deviation: f64 = 0.0;
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            deviation = deviation.max((u.inner(v) - C64::new(expected, 0.0)).norm());
        }
    }
    if deviation > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal { deviation });
    }
    for (i, a) in eigenvalues.iter().enumerate() {
        if eigenvalues[i + 1..].contains(a) {
            return Err(Error::DegenerateContext);
        }
    }
    let mut operator = ComplexMatrix::zeros(dim, dim);
    for (v, &e) in basis.iter().zip(eigenvalues) {
        operator = &operator + &dyad(v)?.scale_real(e);
    }
    Ok(Context { basis: basis.to_vec(), eigenvalues: eigenvalues.to_vec(), operator })
}

/// Two tripods sharing the leg `(0,0,1)`: the standard basis, and the basis
/// `{(cos φ, sin φ, 0), (−sin φ, cos φ, 0), (0, 0, 1)}`.
pub fn tripod_pair_bases(phi: f64) -> [Vec<ComplexVector>; 2] {
    let (c, s) = (phi.cos(), phi.sin());
    let standard = (0..3).map(|i| ComplexVector::unit(3, i)).collect();
    let rotated = vec![
        ComplexVector::from_real(&[c, s, 0.0]),
        ComplexVector::from_real(&[-s, c, 0.0]),
        ComplexVector::from_real(&[0.0, 0.0, 1.0]),
    ];
    [standard, rotated]
}

/// Projectors onto basis vectors common to both contexts, i.e. pairs with
/// `|<b1_i, b2_j>| >= 1 - tol`, in the order of the first context.
pub fn link_observables(c1: &Context, c2: &Context, tol: f64) -> Result<Vec<ComplexMatrix>> {
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch { expected: c1.dim(), found: c2.dim() });
    }
    let mut links = Vec::new();
    for u in &c1.basis {
        for v in &c2.basis {
            if u.inner(v).norm() >= 1.0 - tol {
                links.push(dyad(u)?);
            }
        }
    }
    Ok(links)
}

/// `A = A1 + i A2` with `A1 = (A + A†)/2` and `A2 = −i (A − A†)/2`, both
/// self-adjoint.
pub fn split_selfadjoint(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let adj = a.adjoint();
    let a1 = (a + &adj).scale_real(0.5);
    let a2 = (a - &adj).scale(C64::new(0.0, -0.5));
    Ok((a1, a2))
}
