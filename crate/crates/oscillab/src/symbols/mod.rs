//! Exact symbol algebra on phase space.
//!
//! Two symbol classes cover complementary halves of the calculus:
//!
//! * [`WickSymbol`] — finite polynomials in the complex coordinates
//!   `zeta_j = (x_j + i xi_j) / sqrt(2)`. Averaging, Poisson brackets,
//!   Moyal products and cohomological division are all exact because the
//!   coefficients are rationals and the oscillator flow acts diagonally on
//!   monomials.
//! * [`PlaneWaveSymbol`] — finite sums of complex exponentials
//!   `e^{i w . z}`. These carry the analytic norms (weighted sums over the
//!   frequency measure), at the price of averaging only by quadrature.
//!
//! Polynomials are not integrable, so they have no analytic norm; plane
//! waves have no exact average. Every experiment that needs both sides is
//! run on the class where the statement is exactly computable.

mod plane;
mod wick;

pub use plane::{
    average_planewave_quadrature, norm_arho_s, ArhoSNorm, AveragedPlaneWave, PlaneWaveSymbol,
};
pub use wick::{torus_mode_scale, WickSymbol};

use num::complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum SymbolError {
    #[error("dimension mismatch: symbol dim {symbol}, argument dim {arg}")]
    DimensionMismatch { symbol: usize, arg: usize },
    #[error("operation requires a real-valued symbol")]
    NotReal,
    #[error("polynomial symbols have no finite analytic norm")]
    NoAnalyticNorm,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("mode truncation too small: tail indicator {tail:.3e} exceeds {tol:.3e} of the partial sum")]
    ModeTruncation { tail: f64, tol: f64 },
    #[error(transparent)]
    Frequency(#[from] crate::frequencies::FrequencyError),
}

/// A point `z = (x, xi)` of phase space, stored as `[x_1..x_d, xi_1..xi_d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePoint {
    coords: Vec<f64>,
}

impl PhasePoint {
    pub fn new(coords: Vec<f64>) -> Self {
        assert!(coords.len() % 2 == 0, "phase point needs 2d coordinates");
        assert!(coords.iter().all(|c| c.is_finite()), "phase point entries must be finite");
        PhasePoint { coords }
    }

    pub fn from_position_momentum(x: &[f64], xi: &[f64]) -> Self {
        assert_eq!(x.len(), xi.len());
        let mut coords = x.to_vec();
        coords.extend_from_slice(xi);
        Self::new(coords)
    }

    /// Point with mode actions `|zeta_j|^2 = actions[j]` and angles
    /// `zeta_j = sqrt(action) e^{i angle}`.
    pub fn from_actions_angles(actions: &[f64], angles: &[f64]) -> Self {
        assert_eq!(actions.len(), angles.len());
        let d = actions.len();
        let mut coords = vec![0.0; 2 * d];
        for j in 0..d {
            let r = (2.0 * actions[j]).sqrt();
            coords[j] = r * angles[j].cos();
            coords[d + j] = r * angles[j].sin();
        }
        PhasePoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn x(&self, j: usize) -> f64 {
        self.coords[j]
    }

    pub fn xi(&self, j: usize) -> f64 {
        self.coords[self.dim() + j]
    }

    /// Complex coordinate `zeta_j = (x_j + i xi_j)/sqrt(2)`.
    pub fn zeta(&self, j: usize) -> Complex64 {
        Complex64::new(self.x(j), self.xi(j)) / 2f64.sqrt()
    }

    /// Mode action `H_j(z) = (x_j^2 + xi_j^2)/2 = |zeta_j|^2`.
    pub fn action(&self, j: usize) -> f64 {
        0.5 * (self.x(j).powi(2) + self.xi(j).powi(2))
    }

    /// Euclidean distance in phase space.
    pub fn dist(&self, other: &PhasePoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Splits an angle into a multiple of `pi/2` plus a generic remainder and
/// returns `(cos, sin)`; exact values are used on the quarter-turn lattice
/// so that pullbacks at those angles introduce no rounding.
pub(crate) fn cos_sin_snapped(theta: f64) -> (f64, f64) {
    use std::f64::consts::{FRAC_PI_2, PI};
    let two_pi = 2.0 * PI;
    let r = theta.rem_euclid(two_pi);
    if r == 0.0 {
        (1.0, 0.0)
    } else if r == FRAC_PI_2 {
        (0.0, 1.0)
    } else if r == PI {
        (-1.0, 0.0)
    } else if r == PI + FRAC_PI_2 {
        (0.0, -1.0)
    } else {
        (r.cos(), r.sin())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_point_accessors() {
        let z = PhasePoint::new(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(z.dim(), 2);
        assert_eq!(z.x(1), 2.0);
        assert_eq!(z.xi(0), 3.0);
        let zeta = z.zeta(0);
        assert!((zeta.re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((zeta.im - 3.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn action_angle_parametrization_is_on_shell() {
        let z = PhasePoint::from_actions_angles(&[0.3, 0.7], &[0.5, 1.1]);
        assert!((z.action(0) - 0.3).abs() < 1e-14);
        assert!((z.action(1) - 0.7).abs() < 1e-14);
    }

    #[test]
    fn quarter_turns_are_exact() {
        use std::f64::consts::{FRAC_PI_2, PI};
        assert_eq!(cos_sin_snapped(0.0), (1.0, 0.0));
        assert_eq!(cos_sin_snapped(PI), (-1.0, 0.0));
        assert_eq!(cos_sin_snapped(-PI), (-1.0, 0.0));
        assert_eq!(cos_sin_snapped(FRAC_PI_2), (0.0, 1.0));
        assert_eq!(cos_sin_snapped(2.0 * PI), (1.0, 0.0));
        assert_eq!(cos_sin_snapped(3.0 * FRAC_PI_2), (0.0, -1.0));
    }
}
