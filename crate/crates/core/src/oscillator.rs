//! Two identical harmonic oscillators coupled by a spring,
//!
//! H = (p₁² + p₂²)/2m + ½{K(x₁² + x₂²) + 2C x₁x₂},
//!
//! which separates under the rotation to normal coordinates
//! y₁ = (x₁ − x₂)/√2, y₂ = (x₁ + x₂)/√2 into two oscillators whose spring
//! constants differ by the factor e^{±2η}, with e^{η} = √((K + C)/(K − C)).
//! Positions are dimensionless (measured in units of (mK)^{1/4}, ħ = 1), so
//! the mass and spring constant enter the ground state only through η.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

/// Masses and spring constants of the coupled pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSystem {
    mass: f64,
    spring: f64,
    coupling: f64,
}

impl OscillatorSystem {
    /// Requires `mass > 0`, `spring > 0` and `|coupling| < spring`.
    pub fn new(mass: f64, spring: f64, coupling: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::invalid(
                "mass",
                format!("must be positive, got {mass}"),
            ));
        }
        if !(spring.is_finite() && spring > 0.0) {
            return Err(Error::invalid(
                "spring",
                format!("must be positive, got {spring}"),
            ));
        }
        if !coupling.is_finite() {
            return Err(Error::invalid(
                "coupling",
                format!("must be finite, got {coupling}"),
            ));
        }
        if coupling.abs() >= spring {
            return Err(Error::domain(format!(
                "|C| = {} must be below K = {spring}; the potential is not positive definite",
                coupling.abs()
            )));
        }
        Ok(Self {
            mass,
            spring,
            coupling,
        })
    }

    /// The system with coupling C = K tanh η, whose squeeze parameter is η.
    pub fn with_squeeze(mass: f64, spring: f64, eta: f64) -> Result<Self> {
        Self::new(mass, spring, spring * eta.tanh())
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spring(&self) -> f64 {
        self.spring
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }
}

/// Signed squeeze parameter η. Also serves as the boost rapidity.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Squeeze(f64);

impl Squeeze {
    pub fn new(eta: f64) -> Result<Self> {
        if eta.is_finite() {
            Ok(Self(eta))
        } else {
            Err(Error::invalid("eta", format!("must be finite, got {eta}")))
        }
    }

    pub fn eta(self) -> f64 {
        self.0
    }
}

/// η = ½ ln((K + C)/(K − C)).
pub fn eta_from_coupling(sys: &OscillatorSystem) -> Result<Squeeze> {
    let k = sys.spring;
    let c = sys.coupling;
    if c.abs() >= k {
        return Err(Error::domain("coupling must satisfy |C| < K"));
    }
    // atanh(C/K) == ½ ln((K+C)/(K−C)) without the cancellation near C = 0.
    Squeeze::new((c / k).atanh())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalCoordinates {
    pub y1: f64,
    pub y2: f64,
}

pub fn to_normal(x1: f64, x2: f64) -> NormalCoordinates {
    NormalCoordinates {
        y1: (x1 - x2) * FRAC_1_SQRT_2,
        y2: (x1 + x2) * FRAC_1_SQRT_2,
    }
}

/// Inverse of [`to_normal`]; returns `(x1, x2)`.
pub fn from_normal(y: NormalCoordinates) -> (f64, f64) {
    ((y.y2 + y.y1) * FRAC_1_SQRT_2, (y.y2 - y.y1) * FRAC_1_SQRT_2)
}

/// Ground-state wave function
/// ψ_η(x₁, x₂) = π^{-1/2} exp{−½(e^{η} y₁² + e^{−η} y₂²)}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundState {
    squeeze: Squeeze,
    // e^{η}, e^{-η}
    w1: f64,
    w2: f64,
}

impl GroundState {
    pub fn new(squeeze: Squeeze) -> Self {
        let eta = squeeze.eta();
        Self {
            squeeze,
            w1: eta.exp(),
            w2: (-eta).exp(),
        }
    }

    pub fn squeeze(&self) -> Squeeze {
        self.squeeze
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        let y = to_normal(x1, x2);
        (-0.5 * (self.w1 * y.y1 * y.y1 + self.w2 * y.y2 * y.y2)).exp() / PI.sqrt()
    }

    /// Standard deviation of the widest Gaussian direction of ψ.
    pub fn widest_sigma(&self) -> f64 {
        (0.5 * self.squeeze.eta().abs()).exp()
    }
}

pub fn ground_state(sys: &OscillatorSystem) -> Result<GroundState> {
    Ok(GroundState::new(eta_from_coupling(sys)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_2d, QuadratureRule};
    use nalgebra::{Matrix2, SymmetricEigen};
    use proptest::prelude::*;

    // Squeeze parameter from the eigenvalues of the potential matrix.
    fn eta_by_diagonalization(k: f64, c: f64) -> f64 {
        let eig = SymmetricEigen::new(Matrix2::new(k, c, c, k));
        let (lo, hi) = (eig.eigenvalues.min(), eig.eigenvalues.max());
        0.5 * (hi / lo).ln() * c.signum()
    }

    #[test]
    fn eta_examples() {
        let cases = [(5.0, 3.0), (1.0, 0.0), (2.0, 1.0)];
        for (k, c) in cases {
            let sys = OscillatorSystem::new(1.0, k, c).unwrap();
            let eta = eta_from_coupling(&sys).unwrap().eta();
            assert!(
                (eta - eta_by_diagonalization(k, c)).abs() < 1e-14,
                "{k} {c}"
            );
        }
        let ln2 = eta_from_coupling(&OscillatorSystem::new(1.0, 5.0, 3.0).unwrap()).unwrap();
        assert!((ln2.eta() - 2f64.ln()).abs() < 1e-15);
        let half_ln3 = eta_from_coupling(&OscillatorSystem::new(1.0, 2.0, 1.0).unwrap()).unwrap();
        assert!((half_ln3.eta() - 0.549_306_144_334_054_8).abs() < 1e-15);
    }

    #[test]
    fn rejects_unbound_potential() {
        assert!(matches!(
            OscillatorSystem::new(1.0, 2.0, 2.0),
            Err(Error::Domain(_))
        ));
        assert!(OscillatorSystem::new(1.0, 2.0, -3.0).is_err());
        assert!(OscillatorSystem::new(0.0, 2.0, 0.0).is_err());
        assert!(OscillatorSystem::new(1.0, -2.0, 0.0).is_err());
    }

    #[test]
    fn with_squeeze_round_trips() {
        for eta in [-2.0, -0.3, 0.0, 0.5, 1.0, 2.0] {
            let sys = OscillatorSystem::with_squeeze(1.0, 3.0, eta).unwrap();
            assert!((eta_from_coupling(&sys).unwrap().eta() - eta).abs() < 1e-13);
        }
    }

    #[test]
    fn normal_coordinate_examples() {
        let s2 = 2f64.sqrt();
        let a = to_normal(1.0, 1.0);
        assert!(a.y1.abs() < 1e-15 && (a.y2 - s2).abs() < 1e-15);
        let b = to_normal(1.0, -1.0);
        assert!((b.y1 - s2).abs() < 1e-15 && b.y2.abs() < 1e-15);
        let c = to_normal(0.3, 0.7);
        assert!((c.y1 + 0.282_842_712_474_619).abs() < 1e-15);
        assert!((c.y2 - 0.707_106_781_186_547_5).abs() < 1e-15);
        assert!((c.y1 * c.y1 + c.y2 * c.y2 - 0.58).abs() < 1e-15);
    }

    #[test]
    fn ground_state_values() {
        let free = ground_state(&OscillatorSystem::new(1.0, 1.0, 0.0).unwrap()).unwrap();
        assert!((free.eval(0.0, 0.0) - 0.564_189_583_547_756_3).abs() < 1e-15);
        assert!((free.eval(0.4, -1.1) - (-(0.16 + 1.21) / 2.0f64).exp() / PI.sqrt()).abs() < 1e-15);
        let coupled = ground_state(&OscillatorSystem::new(1.0, 5.0, 3.0).unwrap()).unwrap();
        assert!((coupled.eval(1.0, 1.0) - 0.342_198_280_312_216_5).abs() < 1e-15);
    }

    #[test]
    fn ground_state_is_normalized() {
        for (m, k, c) in [
            (1.0, 1.0, 0.0),
            (2.0, 5.0, 3.0),
            (0.1, 10.0, -9.0),
            (7.0, 0.3, 0.25),
        ] {
            let psi = ground_state(&OscillatorSystem::new(m, k, c).unwrap()).unwrap();
            let rule = QuadratureRule::symmetric_trapezoid(6.0 * psi.widest_sigma(), 200).unwrap();
            let norm = integrate_2d(|a, b| psi.eval(a, b).powi(2), &rule).unwrap();
            assert!((norm - 1.0).abs() < 1e-9, "{m} {k} {c}: {norm}");
        }
    }

    #[test]
    fn sign_flip_is_reflection_of_second_coordinate() {
        let eta = 0.8;
        let plus = GroundState::new(Squeeze::new(eta).unwrap());
        let minus = GroundState::new(Squeeze::new(-eta).unwrap());
        let mut worst: f64 = 0.0;
        for i in 0..20 {
            for j in 0..20 {
                let x1 = -3.0 + 6.0 * i as f64 / 19.0;
                let x2 = -3.0 + 6.0 * j as f64 / 19.0;
                worst = worst.max((minus.eval(x1, x2) - plus.eval(x1, -x2)).abs());
            }
        }
        assert!(worst <= 1e-12);
    }

    proptest! {
        #[test]
        fn rotation_round_trip(x1 in -1e3f64..1e3, x2 in -1e3f64..1e3) {
            let (a, b) = from_normal(to_normal(x1, x2));
            prop_assert!((a - x1).abs() <= 1e-14 * (1.0 + x1.abs().max(x2.abs())));
            prop_assert!((b - x2).abs() <= 1e-14 * (1.0 + x1.abs().max(x2.abs())));
        }

        #[test]
        fn exchange_symmetry(eta in -3.0f64..3.0, x1 in -5.0f64..5.0, x2 in -5.0f64..5.0) {
            let psi = GroundState::new(Squeeze::new(eta).unwrap());
            prop_assert!((psi.eval(x1, x2) - psi.eval(x2, x1)).abs() <= 1e-15);
        }
    }
}
