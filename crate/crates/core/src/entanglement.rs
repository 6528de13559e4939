//! Entanglement of the coupled-oscillator ground state with respect to the
//! unobserved second oscillator.
//!
//! The ground state has the Schmidt form
//!
//! ψ_η(x₁, x₂) = (1/cosh(η/2)) Σ_k tanh^k(η/2) φ_k(x₁) φ_k(x₂),
//!
//! so tracing out x₂ leaves a reduced density matrix that is diagonal in the
//! oscillator basis with the geometric spectrum
//! λ_k = tanh^{2k}(η/2) / cosh²(η/2). Everything in this module (purity,
//! von Neumann entropy, effective temperature) is a function of that
//! spectrum. The quadrature oracle in [`ReducedDensityOracle`] rebuilds the
//! spectrum from the wave function alone, without using the closed form.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numerics::{compensated_sum, geometric_tail_bound, hermite_phi_all, QuadratureRule};
use crate::oscillator::{ground_state, GroundState, OscillatorSystem, Squeeze};

/// Default truncation tolerance for every series in this module.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest number of Schmidt terms materialized by [`schmidt_spectrum`].
pub const MAX_SCHMIDT_TERMS: usize = 1 << 24;

/// Largest eigenvalue index accepted by the quadrature oracle.
pub const ORACLE_MAX_K: usize = 30;

/// Eigenvalues λ_0..λ_kmax of the reduced density matrix plus a bound on
/// the mass of the dropped tail.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    eta: f64,
    lambdas: Vec<f64>,
    truncation_error: f64,
}

impl SchmidtSpectrum {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn kmax(&self) -> usize {
        self.lambdas.len() - 1
    }

    /// Upper bound on Σ_{k>kmax} λ_k.
    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    /// Common ratio λ_{k+1}/λ_k = tanh²(η/2).
    pub fn ratio(&self) -> f64 {
        spectrum_ratio(self.eta)
    }

    /// Σ λ_k over the retained terms.
    pub fn retained_trace(&self) -> f64 {
        compensated_sum(self.lambdas.iter().copied())
    }

    /// Σ λ_k (k + ½), the mean oscillator energy of the reduced state in
    /// units of ħω; equals cosh(η)/2 for the untruncated series.
    pub fn second_moment(&self) -> f64 {
        compensated_sum(
            self.lambdas
                .iter()
                .enumerate()
                .map(|(k, l)| l * (k as f64 + 0.5)),
        )
    }
}

fn spectrum_ratio(eta: f64) -> f64 {
    let t = (0.5 * eta).tanh();
    t * t
}

/// λ_0 = 1/cosh²(η/2), evaluated without forming 1 − tanh².
fn leading_eigenvalue(eta: f64) -> f64 {
    let c = (0.5 * eta).cosh();
    1.0 / (c * c)
}

/// Geometric spectrum truncated at the smallest kmax whose tail bound on
/// Σ_{k>kmax} tanh^{2k}(η/2) is at most `tol`.
pub fn schmidt_spectrum(eta: f64, tol: f64) -> Result<SchmidtSpectrum> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid(
            "tol",
            format!("must be positive, got {tol}"),
        ));
    }
    check_eta(eta)?;
    let r = spectrum_ratio(eta);
    if r == 0.0 {
        return spectrum_with_kmax(eta, 0);
    }
    if r >= 1.0 {
        return Err(Error::domain(format!(
            "tanh²(η/2) rounds to 1 at η = {eta}; the spectrum cannot be truncated"
        )));
    }
    // Closed-form estimate, then step to the exact minimum.
    let guess = ((tol * (1.0 - r)).ln() / r.ln() - 1.0).ceil().max(0.0);
    if guess >= MAX_SCHMIDT_TERMS as f64 {
        return Err(too_many_terms(eta));
    }
    let mut kmax = guess as usize;
    while kmax > 0 && geometric_tail_bound(r, kmax - 1)? <= tol {
        kmax -= 1;
    }
    while geometric_tail_bound(r, kmax)? > tol {
        kmax += 1;
    }
    spectrum_with_kmax(eta, kmax)
}

/// Geometric spectrum truncated at a caller-chosen `kmax`.
pub fn spectrum_with_kmax(eta: f64, kmax: usize) -> Result<SchmidtSpectrum> {
    check_eta(eta)?;
    if kmax >= MAX_SCHMIDT_TERMS {
        return Err(too_many_terms(eta));
    }
    let r = spectrum_ratio(eta);
    if r >= 1.0 {
        return Err(Error::domain(format!(
            "tanh²(η/2) rounds to 1 at η = {eta}"
        )));
    }
    let lead = leading_eigenvalue(eta);
    let mut lambdas = Vec::with_capacity(kmax + 1);
    let mut l = lead;
    for _ in 0..=kmax {
        lambdas.push(l);
        l *= r;
    }
    let truncation_error = lead * geometric_tail_bound(r, kmax)?;
    Ok(SchmidtSpectrum {
        eta,
        lambdas,
        truncation_error,
    })
}

fn check_eta(eta: f64) -> Result<()> {
    if eta.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("eta", format!("must be finite, got {eta}")))
    }
}

fn too_many_terms(eta: f64) -> Error {
    Error::domain(format!(
        "η = {eta} needs more than {MAX_SCHMIDT_TERMS} Schmidt terms"
    ))
}

/// Tr ρ² = 1/cosh η.
pub fn purity(eta: f64) -> f64 {
    1.0 / eta.cosh()
}

/// Tr ρ² summed term by term: cosh^{-4}(η/2) Σ_k tanh^{4k}(η/2).
pub fn purity_series(eta: f64, tol: f64) -> Result<f64> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid(
            "tol",
            format!("must be positive, got {tol}"),
        ));
    }
    check_eta(eta)?;
    let q = spectrum_ratio(eta).powi(2);
    let lead = leading_eigenvalue(eta).powi(2);
    if q == 0.0 {
        return Ok(lead);
    }
    if q >= 1.0 {
        return Err(too_many_terms(eta));
    }
    let mut kmax = 0usize;
    while geometric_tail_bound(q, kmax)? > tol {
        kmax += 1;
        if kmax >= MAX_SCHMIDT_TERMS {
            return Err(too_many_terms(eta));
        }
    }
    let mut term = lead;
    Ok(compensated_sum((0..=kmax).map(|_| {
        let v = term;
        term *= q;
        v
    })))
}

/// von Neumann entropy of the reduced state, in units of Boltzmann's constant:
///
/// S = 2{cosh²(η/2) ln cosh(η/2) − sinh²(η/2) ln sinh(η/2)}.
///
/// Evaluated in the equivalent form 2{ln cosh a − sinh²a · ln tanh a} with
/// a = |η|/2, which avoids the cancellation between the two large terms.
/// S(0) = 0 by continuity.
pub fn entropy(eta: f64) -> f64 {
    let a = 0.5 * eta.abs();
    if a == 0.0 {
        return 0.0;
    }
    let ln_cosh = a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2;
    let tanh = a.tanh();
    let ln_tanh = if tanh < 0.5 {
        tanh.ln()
    } else {
        (-2.0 / ((2.0 * a).exp() + 1.0)).ln_1p()
    };
    let sinh2_ln_tanh = if a > 300.0 {
        -0.5
    } else {
        let s = a.sinh();
        s * s * ln_tanh
    };
    2.0 * (ln_cosh - sinh2_ln_tanh)
}

/// −Σ λ_k ln λ_k over the retained terms.
pub fn entropy_from_spectrum(spectrum: &SchmidtSpectrum) -> f64 {
    -compensated_sum(
        spectrum
            .lambdas
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| l * l.ln()),
    )
}

/// Closed-form Σ λ_k (k + ½) = cosh(η)/2.
pub fn reduced_second_moment(eta: f64) -> f64 {
    0.5 * eta.cosh()
}

/// The temperature at which a thermal oscillator of frequency ω has the
/// same Boltzmann ratio as the Schmidt spectrum: tanh(η/2) = e^{−ħω/kT}.
/// Units with ħ = k = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalMap {
    pub eta: f64,
    pub omega: f64,
    pub temperature: f64,
}

impl ThermalMap {
    /// e^{−ω/T}; zero at T = 0.
    pub fn boltzmann_factor(&self) -> f64 {
        if self.temperature == 0.0 {
            0.0
        } else {
            (-self.omega / self.temperature).exp()
        }
    }
}

/// T = ω / ln coth(η/2). Negative η is rejected rather than folded onto |η|.
pub fn effective_temperature(eta: f64, omega: f64) -> Result<ThermalMap> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::invalid(
            "omega",
            format!("must be positive, got {omega}"),
        ));
    }
    check_eta(eta)?;
    if eta < 0.0 {
        return Err(Error::domain(format!(
            "effective temperature needs η ≥ 0 so that tanh(η/2) ∈ [0, 1), got {eta}"
        )));
    }
    let temperature = if eta == 0.0 {
        0.0
    } else {
        let half = 0.5 * eta;
        let ln_coth = if half.tanh() < 0.5 {
            -half.tanh().ln()
        } else {
            -(-2.0 / (eta.exp() + 1.0)).ln_1p()
        };
        omega / ln_coth
    };
    if !temperature.is_finite() {
        return Err(Error::NonFinite(format!("temperature at η = {eta}")));
    }
    Ok(ThermalMap {
        eta,
        omega,
        temperature,
    })
}

/// Prefactor multiplying the Schmidt sum of the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchmidtPrefactor {
    /// 1/cosh(η/2), the value that makes the reduced trace equal one.
    CoshHalfEta,
    /// 1/cosh(η). Wrong for η ≠ 0; kept so verification can prove that
    /// the reconstruction check detects it.
    CoshEta,
}

impl SchmidtPrefactor {
    fn value(self, eta: f64) -> f64 {
        match self {
            SchmidtPrefactor::CoshHalfEta => 1.0 / (0.5 * eta).cosh(),
            SchmidtPrefactor::CoshEta => 1.0 / eta.cosh(),
        }
    }
}

/// Truncated Schmidt sum P(η) Σ_{k≤kmax} tanh^k(η/2) φ_k(x₁) φ_k(x₂).
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtExpansion {
    prefactor: f64,
    // tanh^k(η/2), signed for η < 0
    coefficients: Vec<f64>,
}

impl SchmidtExpansion {
    /// Keeps as many terms as [`schmidt_spectrum`] retains at `tol`.
    pub fn new(eta: f64, tol: f64, prefactor: SchmidtPrefactor) -> Result<Self> {
        let kmax = schmidt_spectrum(eta, tol)?.kmax();
        let t = (0.5 * eta).tanh();
        let mut coefficients = Vec::with_capacity(kmax + 1);
        let mut c = 1.0;
        for _ in 0..=kmax {
            coefficients.push(c);
            c *= t;
        }
        Ok(Self {
            prefactor: prefactor.value(eta),
            coefficients,
        })
    }

    pub fn terms(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, x1: f64, x2: f64) -> Result<f64> {
        let kmax = self.coefficients.len() - 1;
        let a = hermite_phi_all(kmax, x1)?;
        let b = hermite_phi_all(kmax, x2)?;
        let sum = compensated_sum(
            self.coefficients
                .iter()
                .zip(a.iter().zip(&b))
                .map(|(c, (p, q))| c * p * q),
        );
        Ok(self.prefactor * sum)
    }
}

/// Largest |Schmidt sum − ψ_η| over an `n × n` grid on `[−extent, extent]²`.
pub fn max_reconstruction_error(
    eta: f64,
    tol: f64,
    prefactor: SchmidtPrefactor,
    extent: f64,
    n: usize,
) -> Result<f64> {
    if n < 2 || !(extent.is_finite() && extent > 0.0) {
        return Err(Error::invalid(
            "grid",
            format!("need n ≥ 2 and extent > 0, got n = {n}, extent = {extent}"),
        ));
    }
    let expansion = SchmidtExpansion::new(eta, tol, prefactor)?;
    let psi = GroundState::new(Squeeze::new(eta)?);
    let step = 2.0 * extent / (n - 1) as f64;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let x1 = -extent + step * i as f64;
        for j in 0..n {
            let x2 = -extent + step * j as f64;
            worst = worst.max((expansion.eval(x1, x2)? - psi.eval(x1, x2)).abs());
        }
    }
    Ok(worst)
}

/// Reduced density matrix ρ(x, x′) = ∫ ψ(x, x₂) ψ(x′, x₂) dx₂ tabulated on
/// a trapezoid grid, used to recover λ_k = ∬ φ_k(x) ρ(x, x′) φ_k(x′) dx dx′
/// by quadrature alone.
#[derive(Debug, Clone)]
pub struct ReducedDensityOracle {
    rule: QuadratureRule,
    rho: DMatrix<f64>,
}

impl ReducedDensityOracle {
    /// Default node count of the oracle's trapezoid rule.
    pub const DEFAULT_NODES: usize = 200;

    pub fn new(sys: &OscillatorSystem) -> Result<Self> {
        Self::with_nodes(sys, Self::DEFAULT_NODES)
    }

    pub fn with_nodes(sys: &OscillatorSystem, nodes: usize) -> Result<Self> {
        let psi = ground_state(sys)?;
        // Six widths of the broadest Gaussian direction, but never narrower
        // than the region where φ_30 lives.
        let half_width = (6.0 * psi.widest_sigma()).max(10.0);
        let rule = QuadratureRule::symmetric_trapezoid(half_width, nodes)?;
        let x = rule.nodes();
        let w = rule.weights();
        let n = x.len();
        // amp[(i, l)] = ψ(x_i, x2_l) √w_l so that ρ = amp ampᵀ.
        let amp = DMatrix::from_fn(n, n, |i, l| psi.eval(x[i], x[l]) * w[l].sqrt());
        let rho = &amp * amp.transpose();
        if rho.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("reduced density matrix".into()));
        }
        Ok(Self { rule, rho })
    }

    /// ρ(x_i, x_j) at the rule's nodes.
    pub fn density_matrix(&self) -> &DMatrix<f64> {
        &self.rho
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    /// Tr ρ = ∫ ρ(x, x) dx.
    pub fn trace(&self) -> f64 {
        compensated_sum(
            self.rule
                .weights()
                .iter()
                .enumerate()
                .map(|(i, w)| w * self.rho[(i, i)]),
        )
    }

    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k > ORACLE_MAX_K {
            return Err(Error::invalid(
                "k",
                format!("oracle supports k ≤ {ORACLE_MAX_K}, got {k}"),
            ));
        }
        let weighted: Vec<f64> = self
            .rule
            .nodes()
            .iter()
            .zip(self.rule.weights())
            .map(|(&x, &w)| Ok(w * hermite_phi_all(k, x)?[k]))
            .collect::<Result<_>>()?;
        let v = nalgebra::DVector::from_vec(weighted);
        let value = (v.transpose() * &self.rho * &v)[(0, 0)];
        crate::numerics::finite(value, "reduced density eigenvalue")
    }
}

/// λ_k by quadrature over the wave function of `sys`.
pub fn reduced_density_eigenvalue_oracle(sys: &OscillatorSystem, k: usize) -> Result<f64> {
    if k > ORACLE_MAX_K {
        return Err(Error::invalid(
            "k",
            format!("oracle supports k ≤ {ORACLE_MAX_K}, got {k}"),
        ));
    }
    ReducedDensityOracle::new(sys)?.eigenvalue(k)
}
