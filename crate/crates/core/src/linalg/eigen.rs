//! Hermitian eigendecomposition by the cyclic complex Jacobi method.

use serde::Serialize;

use super::{dyad, ComplexMatrix, ComplexVector, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors of a
/// self-adjoint matrix. Deterministic for a fixed input.
///
/// The strictly lower triangle is ignored; the input is assumed self-adjoint
/// and is not checked here (see [`spectral_decompose`] for the checked entry
/// point).
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<(Vec<f64>, Vec<ComplexVector>)> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let n = h.rows();
    let mut a = h.clone();
    // symmetrize from the upper triangle so rounding in the input cannot drift
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            a[(j, i)] = a[(i, j)].conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let total: f64 = a.entries().iter().map(|z| z.norm_sqr()).sum();
    let threshold = (f64::EPSILON * f64::EPSILON) * total.max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = order.iter().map(|&i| v.column(i)).collect();
    Ok((values, vectors))
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if magnitude < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / magnitude;
    let theta = (aqq - app) / (2.0 * magnitude);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U = D R with D = diag(.., conj(phase) at q, ..) and R the real rotation:
    // U[p][p] = c, U[q][p] = -s conj(phase), U[p][q] = s, U[q][q] = c conj(phase).
    let n = a.rows();
    let up_q = C64::new(s, 0.0);
    let uq_p = -phase.conj() * s;
    let uq_q = phase.conj() * c;
    let cc = C64::new(c, 0.0);

    // A <- A U
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * cc + akq * uq_p;
        a[(k, q)] = akp * up_q + akq * uq_q;
    }
    // A <- U† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * cc + aqk * uq_p.conj();
        a[(q, k)] = apk * up_q + aqk * uq_q.conj();
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V U
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * cc + vkq * uq_p;
        v[(k, q)] = vkp * up_q + vkq * uq_q;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralComponent {
    pub eigenvalue: f64,
    pub projector: ComplexMatrix,
}

/// `H = Σ eᵢ Eᵢ` with distinct ascending eigenvalues and orthogonal projectors.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralForm {
    pub components: Vec<SpectralComponent>,
}

impl SpectralForm {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.eigenvalue).collect()
    }

    pub fn recompose(&self) -> ComplexMatrix {
        let n = self.components.first().map_or(0, |c| c.projector.rows());
        self.components.iter().fold(ComplexMatrix::zeros(n, n), |acc, c| {
            &acc + &c.projector.scale_real(c.eigenvalue)
        })
    }
}

/// Spectral decomposition of a self-adjoint matrix; eigenvalues closer than
/// `tol` are merged into one projector.
pub fn spectral_decompose(h: &ComplexMatrix, tol: f64) -> Result<SpectralForm> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let deviation = h.self_adjoint_deviation();
    if deviation > tol {
        return Err(Error::NotSelfAdjoint { deviation });
    }
    let (values, vectors) = hermitian_eigen(h)?;
    let mut components: Vec<SpectralComponent> = Vec::new();
    let mut group_values: Vec<f64> = Vec::new();
    for (value, vector) in values.iter().zip(&vectors) {
        let proj = dyad(vector)?;
        match (components.last_mut(), group_values.last()) {
            (Some(last), Some(&prev)) if (value - prev).abs() < tol => {
                last.projector = &last.projector + &proj;
                group_values.push(*value);
                let members = group_values.len() as f64;
                // running mean of the merged eigenvalues
                last.eigenvalue += (value - last.eigenvalue) / members;
            }
            _ => {
                group_values.clear();
                group_values.push(*value);
                components.push(SpectralComponent { eigenvalue: *value, projector: proj });
            }
        }
    }
    Ok(SpectralForm { components })
}

/// Orthonormal basis of `{v : |Mv| ≤ tol·|M|·|v|}`.
pub fn kernel(m: &ComplexMatrix, tol: f64) -> Vec<ComplexVector> {
    let gram = m.adjoint().matmul(m);
    let (values, vectors) = match hermitian_eigen(&gram) {
        Ok(x) => x,
        Err(_) => return Vec::new(),
    };
    let norm = values.last().copied().unwrap_or(0.0).max(0.0).sqrt();
    let bound = tol * norm;
    values
        .into_iter()
        .zip(vectors)
        .filter(|(value, _)| value.max(0.0).sqrt() <= bound)
        .map(|(_, vector)| vector)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DEFAULT_TOL;

    #[test]
    fn diagonal_spectrum() {
        let form = spectral_decompose(&ComplexMatrix::diag_real(&[3.0, 1.0, 2.0]), DEFAULT_TOL).unwrap();
        assert_eq!(form.eigenvalues(), vec![1.0, 2.0, 3.0]);
        assert_eq!(form.components[0].projector, ComplexMatrix::diag_real(&[0.0, 1.0, 0.0]));
        assert_eq!(form.components[2].projector, ComplexMatrix::diag_real(&[1.0, 0.0, 0.0]));
    }

    #[test]
    fn identity_is_fully_degenerate() {
        let form = spectral_decompose(&ComplexMatrix::identity(4), DEFAULT_TOL).unwrap();
        assert_eq!(form.components.len(), 1);
        assert_eq!(form.components[0].eigenvalue, 1.0);
        assert!(form.components[0].projector.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(spectral_decompose(&m, DEFAULT_TOL), Err(Error::NotSelfAdjoint { .. })));
    }

    #[test]
    fn complex_hermitian_two_by_two() {
        // sigma_y has eigenvalues -1, +1
        let m = ComplexMatrix::from_entries(2, 2, vec![ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO]).unwrap();
        let (values, vectors) = hermitian_eigen(&m).unwrap();
        assert!((values[0] + 1.0).abs() < 1e-14 && (values[1] - 1.0).abs() < 1e-14);
        for (value, v) in values.iter().zip(&vectors) {
            let mv = m.apply(v);
            assert!(mv.max_abs_diff(&v.scale(C64::new(*value, 0.0))) < 1e-14);
        }
    }

    #[test]
    fn kernel_cases() {
        assert!(kernel(&ComplexMatrix::identity(3), DEFAULT_TOL).is_empty());
        assert_eq!(kernel(&ComplexMatrix::zeros(3, 3), DEFAULT_TOL).len(), 3);
        let k = kernel(&ComplexMatrix::diag_real(&[0.0, 1.0, 2.0]), DEFAULT_TOL);
        assert_eq!(k.len(), 1);
        assert!((k[0][0].norm() - 1.0).abs() < 1e-15);
    }
}
