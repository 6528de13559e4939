//! Hermite functions against a 30-digit reference table (mpmath), including
//! orders and arguments where the unnormalized polynomials overflow.

use covosc::numerics::{hermite_phi, hermite_phi_all};

#[allow(clippy::excessive_precision)]
const REFERENCE: [(usize, f64, f64); 100] = [
    (0, -10.0, 1.4487332796885727803e-22),
    (0, -7.3, 2.0134278035406461704e-12),
    (0, -3.1, 0.006150742507882357729),
    (0, -0.5, 0.662865966442479529),
    (0, 0.0, 0.75112554446494248286),
    (0, 0.9, 0.50098332020156254527),
    (0, 2.2, 0.066791298328884895585),
    (0, 4.4, 0.000046961498563628811512),
    (0, 8.8, 1.1477047856113259965e-17),
    (0, 10.0, 1.4487332796885727803e-22),
    (1, -10.0, -2.048818252396833976e-21),
    (1, -7.3, -2.0786143418371649653e-11),
    (1, -3.1, -0.026965236767266994709),
    (1, -0.5, -0.46871701988925172646),
    (1, 0.0, 0.0),
    (1, 0.9, 0.63764766535657744926),
    (1, 2.2, 0.20780575187947620844),
    (1, 4.4, 0.0002922197879834133462),
    (1, 8.8, 1.4283277126025975391e-16),
    (1, 10.0, 2.048818252396833976e-21),
    (2, -10.0, 2.0385741611348498061e-20),
    (2, -7.3, 1.5031513850079991578e-10),
    (2, -3.1, 0.079243002241871716709),
    (2, -0.5, -0.23435850994462586323),
    (2, 0.0, -0.53112596601359845724),
    (2, 0.9, 0.21963419584504334364),
    (2, 2.2, 0.40994407416223942938),
    (2, 4.4, 0.0012525602730379944794),
    (2, 8.8, 1.2488128887232256211e-15),
    (2, 10.0, 2.0385741611348498061e-20),
    (5, -10.0, -7.1099706226843711196e-18),
    (5, -7.3, -1.9560440013112552449e-8),
    (5, -3.1, -0.47313598313948170214),
    (5, -0.5, -0.43857509500323214479),
    (5, 0.0, 0.0),
    (5, 0.9, 0.082912901987366310868),
    (5, 2.2, 0.22578832542851301694),
    (5, 4.4, 0.030064757949471438852),
    (5, 8.8, 2.9277314387763997436e-13),
    (5, 10.0, 7.1099706226843711196e-18),
    (10, -10.0, 1.9234522599955970739e-14),
    (10, -7.3, 9.1672839570229415282e-6),
    (10, -3.1, -0.38343515868451555224),
    (10, -0.5, 0.24565730461572117697),
    (10, 0.0, -0.37261713638291737688),
    (10, 0.9, 0.21626423039907239251),
    (10, 2.2, 0.38395211417668943413),
    (10, 4.4, 0.44166311183229973802),
    (10, 8.8, 3.9458405467149168604e-10),
    (10, 10.0, 1.9234522599955970739e-14),
    (20, -10.0, 3.3140237863718255006e-9),
    (20, -7.3, 0.026199080924001377611),
    (20, -3.1, 0.33035639934976876051),
    (20, -0.5, -0.31525671963013834263),
    (20, 0.0, 0.31529120094180283317),
    (20, 0.9, 0.27201829293642556405),
    (20, 2.2, 0.10545356209533035661),
    (20, 4.4, 0.2960984510254426477),
    (20, 8.8, 0.000014248360382864411663),
    (20, 10.0, 3.3140237863718255006e-9),
    (37, -10.0, -0.0021576221772253335019),
    (37, -7.3, 0.34610910122347038904),
    (37, -3.1, -0.25382413143652415533),
    (37, -0.5, 0.25153879957384570021),
    (37, 0.0, 0.0),
    (37, 0.9, 0.2711258440542009099),
    (37, 2.2, -0.00083348936782356795562),
    (37, 4.4, -0.28155374465923561535),
    (37, 8.8, 0.23153417305103151803),
    (37, 10.0, 0.0021576221772253335019),
    (50, -10.0, 0.33463391455873534751),
    (50, -7.3, 0.28985020155965087962),
    (50, -3.1, -0.186726032535357884),
    (50, -0.5, -0.076969287935031972491),
    (50, 0.0, -0.25168329882087150397),
    (50, 0.9, 0.23308304236691996487),
    (50, 2.2, 0.25435228643749737639),
    (50, 4.4, -0.091767445360755611151),
    (50, 8.8, -0.35716690596799237148),
    (50, 10.0, 0.33463391455873534751),
    (75, -10.0, 0.18594135838017599754),
    (75, -7.3, 0.16652087526329310535),
    (75, -3.1, -0.0030600457302216480262),
    (75, -0.5, -0.031934970801565628024),
    (75, 0.0, 0.0),
    (75, 0.9, 0.22758465632711942289),
    (75, 2.2, -0.22552691391517478957),
    (75, 4.4, -0.11641262071608786958),
    (75, 8.8, 0.15806903760631123546),
    (75, 10.0, -0.18594135838017599754),
    (100, -10.0, -0.24958934119275277213),
    (100, -7.3, -0.05412245945154109188),
    (100, -3.1, 0.19883731992745326425),
    (100, -0.5, 0.14705450563533917898),
    (100, 0.0, 0.21190426776343108883),
    (100, 0.9, 0.20850515086833608295),
    (100, 2.2, 0.20020228193606085186),
    (100, 4.4, 0.022510202913987057894),
    (100, 8.8, -0.23920803258990449749),
    (100, 10.0, -0.24958934119275277213),
];

#[test]
fn matches_reference_table() {
    for (k, x, want) in REFERENCE {
        let got = hermite_phi(k, x).unwrap();
        let err = (got - want).abs();
        assert!(
            err <= 1e-10 * want.abs(),
            "phi_{k}({x}) = {got:e}, want {want:e}, error {err:e}"
        );
    }
}

#[test]
fn batch_agrees_with_single_evaluation() {
    for x in [-10.0, -7.3, -0.5, 0.0, 3.1, 10.0] {
        let all = hermite_phi_all(100, x).unwrap();
        for (k, v) in all.iter().enumerate() {
            assert_eq!(*v, hermite_phi(k, x).unwrap(), "k = {k}, x = {x}");
        }
    }
}

#[test]
fn bounded_and_finite_far_out() {
    // |φ_k(x)| ≤ π^{-1/4} for all k and x.
    let bound = std::f64::consts::PI.powf(-0.25) * (1.0 + 1e-12);
    for k in [0, 1, 10, 100, 300, 512] {
        for x in [-40.0, -25.0, -10.0, 0.3, 12.0, 30.0] {
            let v = hermite_phi(k, x).unwrap();
            assert!(v.is_finite() && v.abs() <= bound, "phi_{k}({x}) = {v}");
        }
    }
}
