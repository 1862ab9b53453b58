//! Spin operators and rotation unitaries for spin-1/2 (d = 2) and spin-1
//! (d = 3). Bases are ordered by descending magnetic quantum number.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use super::{ComplexMatrix, C64, I, ZERO};
use crate::error::{Error, Result};

/// `[S_x, S_y, S_z]` for a single site of dimension `d` (ħ = 1).
pub fn spin_matrices(d: usize) -> Result<[ComplexMatrix; 3]> {
    match d {
        2 => {
            let h = 0.5;
            Ok([
                ComplexMatrix::from_real_rows(&[&[0.0, h], &[h, 0.0]]),
                ComplexMatrix::from_entries(2, 2, vec![ZERO, C64::new(0.0, -h), C64::new(0.0, h), ZERO])?,
                ComplexMatrix::diag_real(&[h, -h]),
            ])
        }
        3 => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let ri = C64::new(0.0, r);
            Ok([
                ComplexMatrix::from_real_rows(&[&[0.0, r, 0.0], &[r, 0.0, r], &[0.0, r, 0.0]]),
                ComplexMatrix::from_entries(
                    3,
                    3,
                    vec![ZERO, -ri, ZERO, ri, ZERO, -ri, ZERO, ri, ZERO],
                )?,
                ComplexMatrix::diag_real(&[1.0, 0.0, -1.0]),
            ])
        }
        other => Err(Error::UnsupportedDimension(other)),
    }
}

fn unit_axis(axis: [f64; 3]) -> Result<[f64; 3]> {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok([axis[0] / n, axis[1] / n, axis[2] / n])
}

/// `exp(-i·angle·(n̂·S))` in closed form.
///
/// Spin-1/2: `cos(θ/2)·I − 2i·sin(θ/2)·(n̂·S)`.
/// Spin-1: `I − i·sin θ·J + (cos θ − 1)·J²` with `J = n̂·S`, using `J³ = J`.
pub fn rotation_unitary(d: usize, axis: [f64; 3], angle: f64) -> Result<ComplexMatrix> {
    let n = unit_axis(axis)?;
    let [sx, sy, sz] = spin_matrices(d)?;
    let j = &(&sx.scale_real(n[0]) + &sy.scale_real(n[1])) + &sz.scale_real(n[2]);
    let id = ComplexMatrix::identity(d);
    let u = match d {
        2 => {
            let half = angle / 2.0;
            &id.scale_real(half.cos()) + &j.scale(-I * (2.0 * half.sin()))
        }
        _ => {
            let j2 = j.matmul(&j);
            &(&id + &j.scale(-I * angle.sin())) + &j2.scale_real(angle.cos() - 1.0)
        }
    };
    Ok(u)
}

/// A rotation of 3-space given by axis and angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rotation {
    pub axis: [f64; 3],
    pub angle: f64,
}

impl Rotation {
    pub fn identity() -> Self {
        Self { axis: [0.0, 0.0, 1.0], angle: 0.0 }
    }

    pub fn new(axis: [f64; 3], angle: f64) -> Result<Self> {
        Ok(Self { axis: unit_axis(axis)?, angle })
    }

    /// Axis uniform on the sphere, angle uniform in `[0, 2π)`.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let z: f64 = rng.random_range(-1.0..1.0);
        let phi: f64 = rng.random_range(0.0..2.0 * PI);
        let rho = (1.0 - z * z).max(0.0).sqrt();
        let angle = rng.random_range(0.0..2.0 * PI);
        Self { axis: [rho * phi.cos(), rho * phi.sin(), z], angle }
    }

    pub fn unitary(&self, d: usize) -> Result<ComplexMatrix> {
        rotation_unitary(d, self.axis, self.angle)
    }

    /// The real orthogonal 3×3 matrix (Rodrigues form).
    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let [x, y, z] = self.axis;
        let (s, c) = self.angle.sin_cos();
        let t = 1.0 - c;
        [
            [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
            [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
            [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
        ]
    }

    /// Z-Y-Z Euler angles `(α, β, γ)` with `R = R_z(α) R_y(β) R_z(γ)`,
    /// `β ∈ [0, π]`. At the gimbal poles `γ` is set to zero.
    pub fn euler_zyz(&self) -> [f64; 3] {
        let r = self.matrix();
        let beta = r[2][2].clamp(-1.0, 1.0).acos();
        if beta.sin().abs() < 1e-12 {
            let alpha = r[1][0].atan2(r[0][0]);
            return [alpha, beta, 0.0];
        }
        let alpha = r[1][2].atan2(r[0][2]);
        let gamma = r[2][1].atan2(-r[2][0]);
        [alpha, beta, gamma]
    }

    /// Smallest distance of any Euler angle to a multiple of π/2.
    pub fn min_quarter_turn_distance(&self) -> f64 {
        let q = PI / 2.0;
        self.euler_zyz()
            .iter()
            .map(|a| {
                let r = a.rem_euclid(q);
                r.min(q - r)
            })
            .fold(f64::INFINITY, f64::min)
    }
}
