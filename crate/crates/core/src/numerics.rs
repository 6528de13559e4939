//! Numerical kernels shared by the physics modules: normalized Hermite
//! functions, fixed quadrature rules and geometric-series truncation control.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Largest Hermite index accepted by [`hermite_phi`].
pub const HERMITE_CAP: usize = 512;

// Rescaling threshold for the recurrence; keeps intermediates far from overflow.
const RESCALE_AT: f64 = 1e150;

/// π^{-1/4}, the value of φ₀ at the origin.
pub fn pi_quarter_inv() -> f64 {
    PI.powf(-0.25)
}

/// Normalized harmonic-oscillator eigenfunction
/// φ_k(x) = (√π 2^k k!)^{-1/2} H_k(x) e^{-x²/2}.
///
/// Evaluated with the normalized three-term recurrence, carrying a running
/// logarithmic scale so that neither large `k` nor large `|x|` overflows
/// before the Gaussian factor is applied.
pub fn hermite_phi(k: usize, x: f64) -> Result<f64> {
    hermite_phi_capped(k, x, HERMITE_CAP)
}

/// [`hermite_phi`] with an explicit cap on the index.
pub fn hermite_phi_capped(k: usize, x: f64, cap: usize) -> Result<f64> {
    check_args(k, x, cap)?;
    let mut out = 0.0;
    recurrence(k, x, |j, v| {
        if j == k {
            out = v;
        }
    });
    Ok(out)
}

/// All of φ_0(x), ..., φ_kmax(x) in one recurrence sweep.
pub fn hermite_phi_all(kmax: usize, x: f64) -> Result<Vec<f64>> {
    check_args(kmax, x, HERMITE_CAP)?;
    let mut out = Vec::with_capacity(kmax + 1);
    recurrence(kmax, x, |_, v| out.push(v));
    Ok(out)
}

fn check_args(k: usize, x: f64, cap: usize) -> Result<()> {
    if k > cap {
        return Err(Error::invalid(
            "k",
            format!("Hermite index {k} exceeds the cap {cap}"),
        ));
    }
    if !x.is_finite() {
        return Err(Error::invalid("x", format!("must be finite, got {x}")));
    }
    Ok(())
}

/// Runs the recurrence up to `kmax`, reporting each φ_j(x) in order.
fn recurrence(kmax: usize, x: f64, mut emit: impl FnMut(usize, f64)) {
    let gauss_log = -0.5 * x * x;
    let finish = |p: f64, log_scale: f64| {
        if p == 0.0 {
            0.0
        } else {
            p * (log_scale + gauss_log).exp()
        }
    };

    let mut log_scale = 0.0;
    let mut prev = 0.0;
    let mut cur = pi_quarter_inv();
    emit(0, finish(cur, log_scale));
    for j in 0..kmax {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            log_scale += RESCALE_AT.ln();
        }
        emit(j + 1, finish(cur, log_scale));
    }
}

/// Which family a [`QuadratureRule`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureKind {
    GaussHermite,
    TrapezoidOnInterval,
}

/// A fixed one-dimensional rule approximating ∫ f(x) dx as Σ wᵢ f(xᵢ).
///
/// Gauss–Hermite weights are stored with the e^{x²} factor already folded
/// in, so both kinds integrate the plain integrand.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: QuadratureKind,
}

impl QuadratureRule {
    /// Composite trapezoid rule with `n` equally spaced nodes on `[a, b]`.
    pub fn trapezoid(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::invalid(
                "interval",
                format!("need finite a < b, got [{a}, {b}]"),
            ));
        }
        if n < 2 {
            return Err(Error::invalid("n", "trapezoid rule needs at least 2 nodes"));
        }
        let h = (b - a) / (n - 1) as f64;
        let nodes: Vec<f64> = (0..n)
            .map(|i| if i == n - 1 { b } else { a + h * i as f64 })
            .collect();
        let mut weights = vec![h; n];
        weights[0] = 0.5 * h;
        weights[n - 1] = 0.5 * h;
        Ok(Self {
            nodes,
            weights,
            kind: QuadratureKind::TrapezoidOnInterval,
        })
    }

    /// Trapezoid rule on the symmetric interval `[-half_width, half_width]`.
    pub fn symmetric_trapezoid(half_width: f64, n: usize) -> Result<Self> {
        Self::trapezoid(-half_width, half_width, n)
    }

    /// `n`-point Gauss–Hermite rule.
    ///
    /// Nodes start from the Golub–Welsch eigenvalues and are polished by
    /// Newton steps on φ_n; weights come from 1 / (n φ_{n-1}(xᵢ)²), which
    /// already includes the e^{xᵢ²} factor.
    pub fn gauss_hermite(n: usize) -> Result<Self> {
        if n == 0 || n > HERMITE_CAP {
            return Err(Error::invalid(
                "n",
                format!("Gauss-Hermite order must be in 1..={HERMITE_CAP}, got {n}"),
            ));
        }
        let jacobi = DMatrix::from_fn(n, n, |i, j| {
            if i + 1 == j || j + 1 == i {
                (i.max(j) as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        nodes.sort_by(f64::total_cmp);

        let nf = n as f64;
        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            for _ in 0..4 {
                let phi = hermite_phi_all(n, *x)?;
                let deriv = (2.0 * nf).sqrt() * phi[n - 1] - *x * phi[n];
                if deriv == 0.0 {
                    break;
                }
                *x -= phi[n] / deriv;
            }
            let phi = hermite_phi_all(n - 1, *x)?;
            weights.push(1.0 / (nf * phi[n - 1] * phi[n - 1]));
        }
        Ok(Self {
            nodes,
            weights,
            kind: QuadratureKind::GaussHermite,
        })
    }

    /// The same rule under the affine map x ↦ shift + scale·x.
    pub fn mapped(&self, shift: f64, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0 && shift.is_finite()) {
            return Err(Error::invalid(
                "scale",
                format!("need finite shift and positive scale, got ({shift}, {scale})"),
            ));
        }
        Ok(Self {
            nodes: self.nodes.iter().map(|x| shift + scale * x).collect(),
            weights: self.weights.iter().map(|w| scale * w).collect(),
            kind: self.kind,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ wᵢ f(xᵢ).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        let sum = compensated_sum(
            self.nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * f(x)),
        );
        finite(sum, "one-dimensional quadrature")
    }
}

/// Tensor-product estimate of ∬ f(x, y) dx dy with the same rule on both axes.
pub fn integrate_2d(f: impl Fn(f64, f64) -> f64, rule: &QuadratureRule) -> Result<f64> {
    integrate_2d_product(f, rule, rule)
}

/// Tensor-product estimate of ∬ f(x, y) dx dy with separate rules per axis.
pub fn integrate_2d_product(
    f: impl Fn(f64, f64) -> f64,
    x_rule: &QuadratureRule,
    y_rule: &QuadratureRule,
) -> Result<f64> {
    let sum = compensated_sum(x_rule.nodes.iter().zip(&x_rule.weights).map(|(&x, &wx)| {
        let inner = compensated_sum(
            y_rule
                .nodes
                .iter()
                .zip(&y_rule.weights)
                .map(|(&y, &wy)| wy * f(x, y)),
        );
        wx * inner
    }));
    finite(sum, "two-dimensional quadrature")
}

/// Upper bound r^{kmax+1} / (1 − r) on the dropped tail Σ_{k>kmax} r^k.
pub fn geometric_tail_bound(r: f64, kmax: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain(format!(
            "geometric ratio must lie in [0, 1), got {r}"
        )));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(r.powf(kmax as f64 + 1.0) / (1.0 - r))
}

/// Neumaier-compensated summation.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

pub(crate) fn finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

/// Half-width 6σ recommended for a Gaussian factor of standard deviation σ.
pub fn gaussian_extent(sigma: f64) -> f64 {
    6.0 * sigma
}
