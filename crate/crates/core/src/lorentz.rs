//! Light-cone kinematics and the Lorentz-squeezed covariant oscillator in
//! the (z, t) plane of the quark separation variable.
//!
//! A boost of rapidity η along z scales the light-cone variables
//! u = (z + t)/√2 and v = (z − t)/√2 reciprocally, u → e^η u and
//! v → e^{−η} v, so the ground state
//!
//! ψ_η(z, t) = π^{-1/2} exp{−½(e^{−2η} u² + e^{2η} v²)}
//!
//! is squeezed along the light-cone axes. The momentum-energy wave function
//! φ_η(q_z, q_0) has the same form in q_u = (q_0 − q_z)/√2 and
//! q_v = (q_0 + q_z)/√2. Only the longitudinal (z, t) plane is modelled.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{integrate_2d_product, QuadratureRule};
use crate::oscillator::{GroundState, Squeeze};

/// Eigenvalue of the invariant oscillator equation for the ground state.
pub const GROUND_EIGENVALUE: f64 = 0.0;

/// Node count per axis for the wave-function quadratures.
pub const QUADRATURE_NODES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub z: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
}

impl SpacetimePoint {
    pub fn new(z: f64, t: f64) -> Self {
        Self {
            z,
            t,
            u: (z + t) * FRAC_1_SQRT_2,
            v: (z - t) * FRAC_1_SQRT_2,
        }
    }

    pub fn from_light_cone(u: f64, v: f64) -> Self {
        Self {
            z: (u + v) * FRAC_1_SQRT_2,
            t: (u - v) * FRAC_1_SQRT_2,
            u,
            v,
        }
    }

    /// (z² − t²)/2, equal to u·v.
    pub fn interval(&self) -> f64 {
        0.5 * (self.z - self.t) * (self.z + self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint {
    pub qz: f64,
    pub q0: f64,
    pub qu: f64,
    pub qv: f64,
}

impl MomentumPoint {
    pub fn new(qz: f64, q0: f64) -> Self {
        Self {
            qz,
            q0,
            qu: (q0 - qz) * FRAC_1_SQRT_2,
            qv: (q0 + qz) * FRAC_1_SQRT_2,
        }
    }

    /// (q0² − qz²)/2, equal to qu·qv.
    pub fn interval(&self) -> f64 {
        0.5 * (self.q0 - self.qz) * (self.q0 + self.qz)
    }
}

/// Boost along z by applying the 2×2 hyperbolic rotation to (z, t).
pub fn boost(point: SpacetimePoint, eta: f64) -> SpacetimePoint {
    let (ch, sh) = (eta.cosh(), eta.sinh());
    SpacetimePoint::new(point.z * ch + point.t * sh, point.z * sh + point.t * ch)
}

/// The same boost as reciprocal scaling of the light-cone variables.
pub fn boost_light_cone(point: SpacetimePoint, eta: f64) -> SpacetimePoint {
    SpacetimePoint::from_light_cone(eta.exp() * point.u, (-eta).exp() * point.v)
}

/// Ground state of the covariant oscillator seen from a frame boosted by η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostedOscillatorState {
    eta: f64,
    // e^{−2η}, e^{2η}
    wide: f64,
    narrow: f64,
}

impl BoostedOscillatorState {
    pub fn new(rapidity: Squeeze) -> Self {
        let eta = rapidity.eta();
        Self {
            eta,
            wide: (-2.0 * eta).exp(),
            narrow: (2.0 * eta).exp(),
        }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// ψ_η(z, t).
    pub fn spatial(&self, z: f64, t: f64) -> f64 {
        let p = SpacetimePoint::new(z, t);
        self.gaussian(p.u, p.v)
    }

    /// φ_η(q_z, q_0).
    pub fn momentum(&self, qz: f64, q0: f64) -> f64 {
        let q = MomentumPoint::new(qz, q0);
        self.gaussian(q.qu, q.qv)
    }

    fn gaussian(&self, a: f64, b: f64) -> f64 {
        (-0.5 * (self.wide * a * a + self.narrow * b * b)).exp() / PI.sqrt()
    }

    /// Standard deviations of the amplitude along the two light-cone axes
    /// (u then v, or q_u then q_v).
    pub fn light_cone_sigmas(&self) -> (f64, f64) {
        (self.eta.exp(), (-self.eta).exp())
    }

    /// The coupled-oscillator ground state that coincides with ψ_η when
    /// (x₁, x₂) = (z, t): its squeeze parameter is 2η, because ψ_η carries
    /// e^{±2η} on the squared normal coordinates where the coupled ground
    /// state carries e^{±η}.
    pub fn coupled_equivalent(&self) -> GroundState {
        GroundState::new(Squeeze::new(2.0 * self.eta).expect("finite rapidity"))
    }

    /// Trapezoid rules along (u, v) scaled to each axis' width.
    fn light_cone_rules(&self, widths: f64) -> Result<(QuadratureRule, QuadratureRule)> {
        let (su, sv) = self.light_cone_sigmas();
        Ok((
            QuadratureRule::symmetric_trapezoid(widths * su, QUADRATURE_NODES)?,
            QuadratureRule::symmetric_trapezoid(widths * sv, QUADRATURE_NODES)?,
        ))
    }

    /// ∬ |ψ|² dz dt by quadrature in light-cone coordinates (unit Jacobian).
    pub fn spatial_norm(&self) -> Result<f64> {
        let (ru, rv) = self.light_cone_rules(6.0)?;
        integrate_2d_product(
            |u, v| {
                let p = SpacetimePoint::from_light_cone(u, v);
                self.spatial(p.z, p.t).powi(2)
            },
            &ru,
            &rv,
        )
    }

    /// ∬ |φ|² dq_z dq_0 by quadrature in (q_u, q_v).
    pub fn momentum_norm(&self) -> Result<f64> {
        let (ru, rv) = self.light_cone_rules(6.0)?;
        integrate_2d_product(
            |qu, qv| {
                let (qz, q0) = momentum_from_light_cone(qu, qv);
                self.momentum(qz, q0).powi(2)
            },
            &ru,
            &rv,
        )
    }

    /// (Var u, Var v) under |ψ_η|², by quadrature.
    pub fn light_cone_variances(&self) -> Result<(f64, f64)> {
        let (ru, rv) = self.light_cone_rules(6.0)?;
        let density = |u: f64, v: f64| {
            let p = SpacetimePoint::from_light_cone(u, v);
            self.spatial(p.z, p.t).powi(2)
        };
        let var_u = integrate_2d_product(|u, v| u * u * density(u, v), &ru, &rv)?;
        let var_v = integrate_2d_product(|u, v| v * v * density(u, v), &ru, &rv)?;
        Ok((var_u, var_v))
    }
}

fn momentum_from_light_cone(qu: f64, qv: f64) -> (f64, f64) {
    ((qv - qu) * FRAC_1_SQRT_2, (qv + qu) * FRAC_1_SQRT_2)
}

/// Evaluator for ψ_η(z, t).
pub fn spatial_wavefunction(state: &BoostedOscillatorState) -> impl Fn(f64, f64) -> f64 + Copy {
    let s = *state;
    move |z, t| s.spatial(z, t)
}

/// Evaluator for φ_η(q_z, q_0).
pub fn momentum_wavefunction(state: &BoostedOscillatorState) -> impl Fn(f64, f64) -> f64 + Copy {
    let s = *state;
    move |qz, q0| s.momentum(qz, q0)
}

/// Which marginal [`marginal_width`] reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginalAxis {
    SpaceZ,
    MomentumQz,
}

/// Var(z) under |ψ_η|² or Var(q_z) under |φ_η|², by quadrature in
/// light-cone coordinates. Both equal cosh(2η)/2.
pub fn marginal_width(state: &BoostedOscillatorState, which: MarginalAxis) -> Result<f64> {
    let (ru, rv) = state.light_cone_rules(6.0)?;
    match which {
        MarginalAxis::SpaceZ => integrate_2d_product(
            |u, v| {
                let p = SpacetimePoint::from_light_cone(u, v);
                p.z * p.z * state.spatial(p.z, p.t).powi(2)
            },
            &ru,
            &rv,
        ),
        MarginalAxis::MomentumQz => integrate_2d_product(
            |qu, qv| {
                let (qz, q0) = momentum_from_light_cone(qu, qv);
                qz * qz * state.momentum(qz, q0).powi(2)
            },
            &ru,
            &rv,
        ),
    }
}

/// cosh(2η)/2.
pub fn marginal_width_closed_form(eta: f64) -> f64 {
    0.5 * (2.0 * eta).cosh()
}

/// Unitary two-dimensional Fourier transform of ψ_η,
/// (1/2π) ∬ ψ_η(z, t) e^{−i(q_z z + q_0 t)} dz dt, by quadrature.
///
/// ψ_η is real and even, so only the cosine part survives.
pub fn fourier_transform(state: &BoostedOscillatorState, qz: f64, q0: f64) -> Result<f64> {
    let (ru, rv) = state.light_cone_rules(8.0)?;
    let integral = integrate_2d_product(
        |u, v| {
            let p = SpacetimePoint::from_light_cone(u, v);
            state.spatial(p.z, p.t) * (qz * p.z + q0 * p.t).cos()
        },
        &ru,
        &rv,
    )?;
    Ok(integral / (2.0 * PI))
}

/// Evaluation grid for [`invariant_equation_residual`]: `samples × samples`
/// points spanning `[−extent, extent]²`, each differentiated with central
/// differences of step `step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualGrid {
    pub extent: f64,
    pub step: f64,
    pub samples: usize,
}

impl ResidualGrid {
    pub const MAX_STEP: f64 = 1e-2;
    pub const MIN_SAMPLES: usize = 5;

    pub fn validate(&self) -> Result<()> {
        if self.samples < Self::MIN_SAMPLES {
            return Err(Error::invalid(
                "samples",
                format!(
                    "need at least {} points per axis, got {}",
                    Self::MIN_SAMPLES,
                    self.samples
                ),
            ));
        }
        if !(self.step > 0.0 && self.step <= Self::MAX_STEP) {
            return Err(Error::invalid(
                "step",
                format!("must lie in (0, {}], got {}", Self::MAX_STEP, self.step),
            ));
        }
        if !(self.extent.is_finite() && self.extent > 0.0) {
            return Err(Error::invalid(
                "extent",
                format!("must be positive, got {}", self.extent),
            ));
        }
        Ok(())
    }
}

/// Largest |½{(t² − z²)ψ − (∂²_t − ∂²_z)ψ} − λψ| over the grid, λ = 0.
pub fn invariant_equation_residual(
    state: &BoostedOscillatorState,
    grid: &ResidualGrid,
) -> Result<f64> {
    grid.validate()?;
    let h = grid.step;
    let h2 = h * h;
    let span = 2.0 * grid.extent / (grid.samples - 1) as f64;
    let psi = |z: f64, t: f64| state.spatial(z, t);
    let mut worst: f64 = 0.0;
    for i in 0..grid.samples {
        let z = -grid.extent + span * i as f64;
        for j in 0..grid.samples {
            let t = -grid.extent + span * j as f64;
            let centre = psi(z, t);
            let d2t = (psi(z, t + h) - 2.0 * centre + psi(z, t - h)) / h2;
            let d2z = (psi(z + h, t) - 2.0 * centre + psi(z - h, t)) / h2;
            let r = 0.5 * ((t * t - z * z) * centre - (d2t - d2z)) - GROUND_EIGENVALUE * centre;
            worst = worst.max(r.abs());
        }
    }
    crate::numerics::finite(worst, "invariant equation residual")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn state(eta: f64) -> BoostedOscillatorState {
        BoostedOscillatorState::new(Squeeze::new(eta).unwrap())
    }

    #[test]
    fn boost_example() {
        let p = SpacetimePoint::from_light_cone(1.0, 1.0);
        assert!((p.z - 2f64.sqrt()).abs() < 1e-15 && p.t.abs() < 1e-15);
        let q = boost(p, 2f64.ln());
        assert!((q.u - 2.0).abs() < 1e-12 && (q.v - 0.5).abs() < 1e-12);
        let r = boost_light_cone(p, 2f64.ln());
        assert!((r.u - 2.0).abs() < 1e-15 && (r.v - 0.5).abs() < 1e-15);
        assert_eq!(boost(p, 0.0), SpacetimePoint::new(p.z, p.t));
    }

    #[test]
    fn wavefunction_values() {
        let s0 = state(0.0);
        assert!((s0.spatial(0.0, 0.0) - 0.564_189_583_547_756_3).abs() < 1e-15);
        assert!((s0.momentum(0.0, 0.0) - 0.564_189_583_547_756_3).abs() < 1e-15);
        assert!((state(1.0).spatial(1.0, 1.0) - 0.492_776_169_064_655_7).abs() < 1e-15);
        let f = spatial_wavefunction(&state(0.4));
        assert_eq!(f(0.3, -0.2), state(0.4).spatial(0.3, -0.2));
    }

    #[test]
    fn normalization() {
        for eta in [0.0, 1.0, 2.0, -1.0] {
            let s = state(eta);
            assert!((s.spatial_norm().unwrap() - 1.0).abs() < 1e-9);
            assert!((s.momentum_norm().unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn momentum_mirrors_space_with_time_reversed() {
        let s = state(0.7);
        let phi = momentum_wavefunction(&s);
        for &(a, b) in &[(0.3, 0.9), (-1.2, 0.4), (2.0, -2.0)] {
            assert!((phi(a, b) - s.spatial(a, -b)).abs() < 1e-15);
        }
    }

    #[test]
    fn widths_grow_together() {
        assert!((marginal_width(&state(0.0), MarginalAxis::SpaceZ).unwrap() - 0.5).abs() < 1e-8);
        let one = marginal_width(&state(1.0), MarginalAxis::SpaceZ).unwrap();
        assert!((one - 1.881_097_845_541_815_7).abs() < 1e-8);
        for eta in [0.5, 1.0, 2.0] {
            let s = state(eta);
            let z = marginal_width(&s, MarginalAxis::SpaceZ).unwrap();
            let q = marginal_width(&s, MarginalAxis::MomentumQz).unwrap();
            assert!((z - q).abs() < 1e-8);
            assert!((z - marginal_width_closed_form(eta)).abs() < 1e-8);
        }
    }

    #[test]
    fn light_cone_variances_are_reciprocal() {
        for eta in [0.0, 0.5, 1.5] {
            let (vu, vv) = state(eta).light_cone_variances().unwrap();
            assert!((vu - (2.0 * eta).exp() / 2.0).abs() < 1e-8);
            assert!((vv - (-2.0 * eta).exp() / 2.0).abs() < 1e-8);
            assert!((vu * vv - 0.25).abs() < 1e-8);
        }
    }

    #[test]
    fn fourier_transform_reproduces_momentum_wavefunction() {
        let s = state(1.0);
        for &(qz, q0) in &[(0.0, 0.0), (0.5, -0.3), (-1.0, 1.2)] {
            let ft = fourier_transform(&s, qz, q0).unwrap();
            assert!((ft - s.momentum(qz, q0)).abs() < 1e-10, "{qz} {q0}");
        }
    }

    #[test]
    fn residual_is_small_and_second_order() {
        let grid = |step| ResidualGrid {
            extent: 3.0,
            step,
            samples: 21,
        };
        for eta in [0.0, 1.0] {
            let s = state(eta);
            let coarse = invariant_equation_residual(&s, &grid(4e-3)).unwrap();
            let fine = invariant_equation_residual(&s, &grid(2e-3)).unwrap();
            assert!(fine <= 1e-5);
            let ratio = coarse / fine;
            assert!((3.5..4.5).contains(&ratio), "{eta}: ratio {ratio}");
        }
    }

    #[test]
    fn residual_grid_validation() {
        let s = state(0.0);
        let bad = ResidualGrid {
            extent: 1.0,
            step: 1e-3,
            samples: 4,
        };
        assert!(invariant_equation_residual(&s, &bad).is_err());
        let coarse = ResidualGrid {
            extent: 1.0,
            step: 0.1,
            samples: 9,
        };
        assert!(invariant_equation_residual(&s, &coarse).is_err());
    }

    #[test]
    fn matches_coupled_ground_state() {
        for eta in [-0.8, 0.0, 0.3, 1.0] {
            let s = state(eta);
            let g = s.coupled_equivalent();
            for i in 0..11 {
                for j in 0..11 {
                    let z = -2.5 + 0.5 * i as f64;
                    let t = -2.5 + 0.5 * j as f64;
                    assert!((s.spatial(z, t) - g.eval(z, t)).abs() < 1e-12);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn routes_agree(z in -5.0f64..5.0, t in -5.0f64..5.0, eta in -3.0f64..3.0) {
            let p = SpacetimePoint::new(z, t);
            let a = boost(p, eta);
            let b = boost_light_cone(p, eta);
            let scale = 1.0 + z.abs() + t.abs();
            prop_assert!((a.z - b.z).abs() <= 1e-12 * scale * eta.exp().max((-eta).exp()));
            prop_assert!((a.t - b.t).abs() <= 1e-12 * scale * eta.exp().max((-eta).exp()));
            prop_assert!((a.u * a.v - p.u * p.v).abs() <= 1e-12 * scale * scale * eta.cosh().powi(2));
        }

        #[test]
        fn composition_is_additive(z in -3.0f64..3.0, t in -3.0f64..3.0, a in -1.5f64..1.5, b in -1.5f64..1.5) {
            let p = SpacetimePoint::new(z, t);
            let twice = boost_light_cone(boost_light_cone(p, a), b);
            let once = boost_light_cone(p, a + b);
            prop_assert!((twice.u - once.u).abs() <= 1e-12 * (1.0 + once.u.abs()));
            prop_assert!((twice.v - once.v).abs() <= 1e-12 * (1.0 + once.v.abs()));
        }

        #[test]
        fn wavefunction_symmetries(z in -4.0f64..4.0, t in -4.0f64..4.0, eta in -2.0f64..2.0) {
            let s = state(eta);
            prop_assert!((s.spatial(z, t) - s.spatial(t, z)).abs() <= 1e-15);
            prop_assert!((s.spatial(z, -t) - state(-eta).spatial(z, t)).abs() <= 1e-15);
        }

        #[test]
        fn light_cone_products(z in -10.0f64..10.0, t in -10.0f64..10.0) {
            let p = SpacetimePoint::new(z, t);
            prop_assert!((p.u * p.v - p.interval()).abs() <= 1e-13 * (1.0 + z * z + t * t));
            let q = MomentumPoint::new(z, t);
            prop_assert!((q.qu * q.qv - q.interval()).abs() <= 1e-13 * (1.0 + z * z + t * t));
        }
    }
}
