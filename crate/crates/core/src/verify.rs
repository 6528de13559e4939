//! Self-verification suite: every closed form in the crate checked against
//! an independent numerical route, plus the structural invariants of each
//! module. Backs the `verify` subcommand.

use serde::Serialize;

use crate::entanglement::{
    effective_temperature, entropy, entropy_from_spectrum, max_reconstruction_error, purity,
    purity_series, reduced_second_moment, schmidt_spectrum, spectrum_with_kmax,
    ReducedDensityOracle, SchmidtPrefactor,
};
use crate::error::Result;
use crate::lorentz::{
    boost, boost_light_cone, fourier_transform, invariant_equation_residual, marginal_width,
    marginal_width_closed_form, BoostedOscillatorState, MarginalAxis, ResidualGrid, SpacetimePoint,
};
use crate::numerics::{
    geometric_tail_bound, hermite_phi, hermite_phi_all, integrate_2d, QuadratureRule,
};
use crate::oscillator::{
    eta_from_coupling, from_normal, ground_state, to_normal, GroundState, OscillatorSystem, Squeeze,
};
use crate::parton::{
    parton_report, PartonKinematics, PROTON_MASS_GEV, REFERENCE_INTERACTION_RATIO,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    #[default]
    Fast,
    Strict,
}

/// Knobs that let tests inject known faults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub schmidt_prefactor: SchmidtPrefactor,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            schmidt_prefactor: SchmidtPrefactor::CoshHalfEta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
}

impl CheckResult {
    fn at_most(name: &str, measured: Result<f64>, bound: f64) -> Self {
        let measured = measured.unwrap_or(f64::NAN);
        Self {
            name: name.to_string(),
            measured,
            bound,
            passed: measured <= bound,
        }
    }

    fn holds(name: &str, ok: Result<bool>) -> Self {
        let ok = ok.unwrap_or(false);
        Self {
            name: name.to_string(),
            measured: if ok { 0.0 } else { 1.0 },
            bound: 0.0,
            passed: ok,
        }
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

pub fn run_suite(profile: Profile) -> Vec<CheckResult> {
    run_suite_with(profile, SuiteConfig::default())
}

pub fn run_suite_with(profile: Profile, config: SuiteConfig) -> Vec<CheckResult> {
    let strict = profile == Profile::Strict;
    let mut out = Vec::new();
    numerics_checks(strict, &mut out);
    oscillator_checks(strict, &mut out);
    entanglement_checks(strict, config, &mut out);
    lorentz_checks(strict, &mut out);
    parton_checks(&mut out);
    out
}

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn max_over<I, F>(items: I, mut f: F) -> Result<f64>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Result<f64>,
{
    items
        .into_iter()
        .try_fold(0.0_f64, |acc, item| Ok(acc.max(f(item)?)))
}

// φ_k(x) at 60 significant digits.
#[allow(clippy::excessive_precision)]
const HERMITE_REFERENCE: [(usize, f64, f64); 12] = [
    (20, -7.3, 0.026_199_080_924_001_377_611),
    (20, 4.4, 0.296_098_451_025_442_647_7),
    (20, 8.8, 0.000_014_248_360_382_864_411_663),
    (50, -3.1, -0.186_726_032_535_357_884),
    (50, 0.9, 0.233_083_042_366_919_964_87),
    (50, 10.0, 0.334_633_914_558_735_347_51),
    (100, -10.0, -0.249_589_341_192_752_772_13),
    (100, -0.5, 0.147_054_505_635_339_178_98),
    (100, 0.0, 0.211_904_267_763_431_088_83),
    (100, 2.2, 0.200_202_281_936_060_851_86),
    (100, 4.4, 0.022_510_202_913_987_057_894),
    (100, 8.8, -0.239_208_032_589_904_497_49),
];

fn numerics_checks(strict: bool, out: &mut Vec<CheckResult>) {
    let kmax = if strict { 30 } else { 15 };
    out.push(CheckResult::at_most(
        "hermite orthonormality",
        (|| {
            let rule = QuadratureRule::symmetric_trapezoid(12.0, 200)?;
            let table: Vec<Vec<f64>> = rule
                .nodes()
                .iter()
                .map(|&x| hermite_phi_all(kmax, x))
                .collect::<Result<_>>()?;
            let mut worst: f64 = 0.0;
            for j in 0..=kmax {
                for k in 0..=j {
                    let overlap: f64 = table
                        .iter()
                        .zip(rule.weights())
                        .map(|(row, w)| w * row[j] * row[k])
                        .sum();
                    let delta = if j == k { 1.0 } else { 0.0 };
                    worst = worst.max((overlap - delta).abs());
                }
            }
            Ok(worst)
        })(),
        1e-9,
    ));
    out.push(CheckResult::at_most(
        "hermite recurrence vs extended precision",
        max_over(HERMITE_REFERENCE, |(k, x, want)| {
            Ok((hermite_phi(k, x)? - want).abs() / want.abs())
        }),
        1e-10,
    ));
    out.push(CheckResult::at_most(
        "trapezoid integrates constants",
        (|| {
            let rule = QuadratureRule::trapezoid(-3.0, 4.5, 200)?;
            Ok((rule.integrate(|_| 1.0)? - 7.5).abs())
        })(),
        1e-12,
    ));
    out.push(CheckResult::at_most(
        "gauss-hermite vs trapezoid second moment",
        (|| {
            let gh = QuadratureRule::gauss_hermite(30)?;
            let tr = QuadratureRule::symmetric_trapezoid(12.0, 200)?;
            let f = |x: f64| x * x * (-x * x).exp();
            Ok((gh.integrate(f)? - tr.integrate(f)?).abs())
        })(),
        1e-12,
    ));
    out.push(CheckResult::at_most(
        "2-d gaussian normalization",
        (|| {
            let rule = QuadratureRule::symmetric_trapezoid(12.0, 200)?;
            let norm = integrate_2d(|x, y| (-x * x - y * y).exp() / std::f64::consts::PI, &rule)?;
            Ok((norm - 1.0).abs())
        })(),
        1e-10,
    ));
    // Ratio of the summed tail to the bound. The bound is attained by the
    // infinite sum, so only rounding may push the ratio above 1.
    out.push(CheckResult::at_most(
        "geometric tail bound dominates tail",
        max_over(
            [0.1, 0.5, 0.9, 0.99]
                .iter()
                .flat_map(|&r| [0usize, 3, 40].map(move |k| (r, k))),
            |(r, kmax)| {
                let bound = geometric_tail_bound(r, kmax)?;
                let mut tail = 0.0;
                let mut term = r.powi(kmax as i32 + 1);
                while term > 1e-18 * bound {
                    tail += term;
                    term *= r;
                }
                Ok(tail / bound)
            },
        ),
        1.0 + 1e-12,
    ));
}

fn oscillator_checks(strict: bool, out: &mut Vec<CheckResult>) {
    let n = if strict { 20 } else { 10 };
    let pts: Vec<f64> = grid(-4.0, 4.0, n).collect();

    out.push(CheckResult::at_most(
        "normal coordinate round trip",
        max_over(
            pts.iter().flat_map(|&a| pts.iter().map(move |&b| (a, b))),
            |(a, b)| {
                let (x1, x2) = from_normal(to_normal(a, b));
                Ok((x1 - a).abs().max((x2 - b).abs()))
            },
        ),
        1e-14,
    ));

    let systems: Vec<(f64, f64, f64)> = [0.1, 1.0, 10.0]
        .iter()
        .flat_map(|&m| {
            [0.5, 2.0, 8.0]
                .iter()
                .flat_map(move |&k| [-0.9, -0.3, 0.0, 0.5, 0.95].map(move |f| (m, k, f * k)))
        })
        .collect();
    out.push(CheckResult::at_most(
        "squeeze parameter from potential eigenvalues",
        max_over(&systems, |&(m, k, c)| {
            let eta = eta_from_coupling(&OscillatorSystem::new(m, k, c)?)?.eta();
            Ok((eta - 0.5 * ((k + c) / (k - c)).ln()).abs())
        }),
        1e-12,
    ));
    let sample: &[(f64, f64, f64)] = if strict { &systems } else { &systems[..5] };
    out.push(CheckResult::at_most(
        "ground state normalization",
        max_over(sample, |&(m, k, c)| {
            let psi = ground_state(&OscillatorSystem::new(m, k, c)?)?;
            let rule = QuadratureRule::symmetric_trapezoid(6.0 * psi.widest_sigma(), 200)?;
            Ok((integrate_2d(|a, b| psi.eval(a, b).powi(2), &rule)? - 1.0).abs())
        }),
        1e-9,
    ));

    let pairs: Vec<(f64, f64)> = pts
        .iter()
        .flat_map(|&a| pts.iter().map(move |&b| (a, b)))
        .collect();
    out.push(CheckResult::at_most(
        "ground state exchange symmetry",
        max_over([-1.5, 0.4, 2.0], |eta| {
            let psi = GroundState::new(Squeeze::new(eta)?);
            max_over(
                &pairs,
                |&(a, b)| Ok((psi.eval(a, b) - psi.eval(b, a)).abs()),
            )
        }),
        1e-15,
    ));
    out.push(CheckResult::at_most(
        "coupling sign flip reflects x2",
        max_over([0.3, 1.0, 2.5], |eta| {
            let plus = GroundState::new(Squeeze::new(eta)?);
            let minus = GroundState::new(Squeeze::new(-eta)?);
            max_over(&pairs, |&(a, b)| {
                Ok((minus.eval(a, b) - plus.eval(a, -b)).abs())
            })
        }),
        1e-12,
    ));
}

fn entanglement_checks(strict: bool, config: SuiteConfig, out: &mut Vec<CheckResult>) {
    let n = if strict { 100 } else { 25 };
    let etas: Vec<f64> = grid(0.0, 6.0, n).collect();

    out.push(CheckResult::at_most(
        "trace of truncated spectrum",
        max_over(grid(0.0, 8.0, if strict { 81 } else { 17 }), |eta| {
            let s = schmidt_spectrum(eta, 1e-12)?;
            Ok((s.retained_trace() + s.truncation_error() - 1.0).abs())
        }),
        1e-12,
    ));
    out.push(CheckResult::at_most(
        "purity series vs 1/cosh",
        max_over(&etas, |&eta| {
            Ok((purity_series(eta, 1e-12)? - purity(eta)).abs())
        }),
        1e-10,
    ));
    out.push(CheckResult::at_most(
        "entropy spectrum sum vs closed form",
        max_over(&etas, |&eta| {
            Ok((entropy_from_spectrum(&schmidt_spectrum(eta, 1e-14)?) - entropy(eta)).abs())
        }),
        1e-9,
    ));
    out.push(CheckResult::at_most(
        "entropy at zero",
        Ok(entropy(0.0).abs()),
        0.0,
    ));
    out.push(CheckResult::holds(
        "entropy increasing, purity decreasing",
        Ok(etas
            .windows(2)
            .all(|p| entropy(p[1]) > entropy(p[0]) && purity(p[1]) < purity(p[0]))),
    ));
    out.push(CheckResult::at_most(
        "reduced second moment cosh(eta)/2",
        max_over(&etas, |&eta| {
            Ok((schmidt_spectrum(eta, 1e-12)?.second_moment() - reduced_second_moment(eta)).abs())
        }),
        1e-8,
    ));
    out.push(CheckResult::at_most(
        "temperature round trip",
        max_over(etas.iter().skip(1), |&eta| {
            let map = effective_temperature(eta, 1.7)?;
            Ok((map.boltzmann_factor() - (0.5 * eta).tanh()).abs())
        }),
        1e-12,
    ));

    let oracle_etas: &[f64] = if strict { &[0.5, 1.0, 2.0] } else { &[1.0] };
    out.push(CheckResult::at_most(
        "partial trace oracle vs geometric spectrum",
        max_over(oracle_etas, |&eta| {
            let sys = OscillatorSystem::with_squeeze(1.0, 1.0, eta)?;
            let oracle = ReducedDensityOracle::new(&sys)?;
            let closed = spectrum_with_kmax(eta, 10)?;
            max_over(0..=10, |k| {
                Ok((oracle.eigenvalue(k)? - closed.lambdas()[k]).abs())
            })
        }),
        1e-6,
    ));

    let recon_etas: &[f64] = if strict {
        &[0.5, 1.0, 1.5, 2.0]
    } else {
        &[1.0, 2.0]
    };
    out.push(CheckResult::at_most(
        "schmidt reconstruction of ground state",
        max_over(recon_etas, |&eta| {
            max_reconstruction_error(eta, 1e-12, config.schmidt_prefactor, 5.0, 41)
        }),
        1e-6,
    ));
}

fn lorentz_checks(strict: bool, out: &mut Vec<CheckResult>) {
    let pts: Vec<SpacetimePoint> = grid(-3.0, 3.0, 7)
        .flat_map(|z| grid(-3.0, 3.0, 7).map(move |t| SpacetimePoint::new(z, t)))
        .collect();
    let rapidities = [-2.0, -0.5, 0.0, 0.7, 2.0];

    out.push(CheckResult::at_most(
        "boost matrix vs light-cone scaling",
        max_over(rapidities, |eta| {
            max_over(&pts, |p| {
                let a = boost(*p, eta);
                let b = boost_light_cone(*p, eta);
                Ok((a.z - b.z).abs().max((a.t - b.t).abs()) / (1.0 + p.z.abs() + p.t.abs()))
            })
        }),
        1e-12,
    ));
    out.push(CheckResult::at_most(
        "boost composition additive",
        max_over([(0.3, 0.9), (-1.1, 0.4), (1.5, -2.0)], |(a, b)| {
            max_over(&pts, |p| {
                let twice = boost(boost(*p, a), b);
                let once = boost(*p, a + b);
                Ok((twice.z - once.z).abs().max((twice.t - once.t).abs())
                    / (1.0 + once.z.abs() + once.t.abs()))
            })
        }),
        1e-12,
    ));
    out.push(CheckResult::at_most(
        "light-cone product invariant",
        max_over(rapidities, |eta| {
            max_over(&pts, |p| {
                let b = boost(*p, eta);
                Ok((b.u * b.v - p.u * p.v).abs() / (1.0 + p.z * p.z + p.t * p.t))
            })
        }),
        1e-12,
    ));

    let samples = if strict { 41 } else { 21 };
    let residual = |eta: f64, step: f64| {
        invariant_equation_residual(
            &BoostedOscillatorState::new(Squeeze::new(eta)?),
            &ResidualGrid {
                extent: 4.0,
                step,
                samples,
            },
        )
    };
    out.push(CheckResult::at_most(
        "invariant equation residual (h = 1e-3)",
        max_over([0.0, 0.5, 1.0], |eta| residual(eta, 1e-3)),
        1e-5,
    ));
    // |observed order − 2| from residuals at h and h/2.
    out.push(CheckResult::at_most(
        "invariant equation convergence order",
        max_over([0.0, 0.5, 1.0], |eta| {
            let order = (residual(eta, 2e-3)? / residual(eta, 1e-3)?).log2();
            Ok((order - 2.0).abs())
        }),
        0.1,
    ));

    let width_etas = [0.0, 0.5, 1.0, 2.0];
    out.push(CheckResult::at_most(
        "var z = var qz = cosh(2 eta)/2",
        max_over(width_etas, |eta| {
            let s = BoostedOscillatorState::new(Squeeze::new(eta)?);
            let z = marginal_width(&s, MarginalAxis::SpaceZ)?;
            let q = marginal_width(&s, MarginalAxis::MomentumQz)?;
            let c = marginal_width_closed_form(eta);
            Ok((z - c).abs().max((q - c).abs()))
        }),
        1e-8,
    ));
    out.push(CheckResult::at_most(
        "light-cone variances e^{+-2 eta}/2",
        max_over(width_etas, |eta| {
            let (vu, vv) =
                BoostedOscillatorState::new(Squeeze::new(eta)?).light_cone_variances()?;
            Ok((vu - 0.5 * (2.0 * eta).exp())
                .abs()
                .max((vv - 0.5 * (-2.0 * eta).exp()).abs()))
        }),
        1e-8,
    ));
    out.push(CheckResult::at_most(
        "squeeze preserves phase-space area",
        max_over(width_etas, |eta| {
            let (vu, vv) =
                BoostedOscillatorState::new(Squeeze::new(eta)?).light_cone_variances()?;
            Ok((vu * vv - 0.25).abs())
        }),
        1e-8,
    ));
    out.push(CheckResult::at_most(
        "space and momentum normalization",
        max_over([0.0, 1.0, 2.0], |eta| {
            let s = BoostedOscillatorState::new(Squeeze::new(eta)?);
            Ok((s.spatial_norm()? - 1.0)
                .abs()
                .max((s.momentum_norm()? - 1.0).abs()))
        }),
        1e-9,
    ));

    let q_n = if strict { 21 } else { 9 };
    let qs: Vec<f64> = grid(-3.0, 3.0, q_n).collect();
    out.push(CheckResult::at_most(
        "fourier transform of psi vs phi",
        max_over([0.0, 0.5, 1.0, 1.5], |eta| {
            let s = BoostedOscillatorState::new(Squeeze::new(eta)?);
            let peak = s.momentum(0.0, 0.0);
            max_over(
                qs.iter().flat_map(|&a| qs.iter().map(move |&b| (a, b))),
                |(qz, q0)| Ok((fourier_transform(&s, qz, q0)? - s.momentum(qz, q0)).abs() / peak),
            )
        }),
        1e-6,
    ));

    let sym_pts: Vec<(f64, f64)> = grid(-3.0, 3.0, 13)
        .flat_map(|a| grid(-3.0, 3.0, 13).map(move |b| (a, b)))
        .collect();
    out.push(CheckResult::at_most(
        "psi symmetries under z<->t and t -> -t",
        max_over([-1.0, 0.5, 1.5], |eta| {
            let s = BoostedOscillatorState::new(Squeeze::new(eta)?);
            let flipped = BoostedOscillatorState::new(Squeeze::new(-eta)?);
            max_over(&sym_pts, |&(z, t)| {
                Ok((s.spatial(z, t) - s.spatial(t, z))
                    .abs()
                    .max((s.spatial(z, -t) - flipped.spatial(z, t)).abs()))
            })
        }),
        1e-15,
    ));
    out.push(CheckResult::at_most(
        "boosted state equals coupled ground state",
        max_over([-1.0, 0.0, 0.5, 1.5], |eta| {
            let s = BoostedOscillatorState::new(Squeeze::new(eta)?);
            let g = s.coupled_equivalent();
            max_over(&sym_pts, |&(z, t)| {
                Ok((s.spatial(z, t) - g.eval(z, t)).abs())
            })
        }),
        1e-12,
    ));
}

fn parton_checks(out: &mut Vec<CheckResult>) {
    let report = |e: f64| parton_report(&PartonKinematics::new(e, PROTON_MASS_GEV)?, 1.0);

    let fermilab = report(900.0)
        .map(|r| r.interaction_ratio)
        .unwrap_or(f64::NAN);
    out.push(CheckResult {
        name: "900 GeV interaction ratio within [1e-7, 1e-6]".into(),
        measured: fermilab,
        bound: REFERENCE_INTERACTION_RATIO,
        passed: (1e-7..=REFERENCE_INTERACTION_RATIO).contains(&fermilab),
    });

    let energies = [0.938, 0.95, 1.2, 3.0, 30.0, 900.0, 7000.0];
    out.push(CheckResult::at_most(
        "dilation times ratio equals e^-eta",
        max_over(energies, |e| {
            let r = report(e)?;
            Ok((r.period_dilation * r.interaction_ratio - (-r.rapidity).exp()).abs())
        }),
        1e-12,
    ));
    out.push(CheckResult::holds(
        "ratio decreasing, entropy increasing in beam energy",
        (|| {
            let reports = energies
                .iter()
                .map(|&e| report(e))
                .collect::<Result<Vec<_>>>()?;
            Ok(reports.windows(2).all(|p| {
                p[1].interaction_ratio < p[0].interaction_ratio && p[1].entropy > p[0].entropy
            }))
        })(),
    ));
    out.push(CheckResult::at_most(
        "report aggregates module outputs exactly",
        max_over(energies, |e| {
            let r = report(e)?;
            let s = BoostedOscillatorState::new(Squeeze::new(r.rapidity)?);
            let diffs = [
                r.entropy - entropy(r.rapidity),
                r.var_z - marginal_width(&s, MarginalAxis::SpaceZ)?,
                r.var_qz - marginal_width(&s, MarginalAxis::MomentumQz)?,
            ];
            Ok(diffs.iter().fold(0.0_f64, |a, d| a.max(d.abs())))
        }),
        0.0,
    ));
    out.push(CheckResult::at_most(
        "report continuous at rest",
        (|| {
            let r = report(PROTON_MASS_GEV * (1.0 + 1e-12))?;
            Ok((r.interaction_ratio - 1.0)
                .abs()
                .max((r.period_dilation - 1.0).abs())
                .max(r.entropy)
                .max((r.var_z - 0.5).abs()))
        })(),
        1e-4,
    ));
}
