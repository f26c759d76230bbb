use qiopa::correlation::*;
use qiopa::oracle::CutoffPolicy;
use qiopa::{derive_params, gain_for_mean_photons, Configuration};

fn lattice() -> Vec<(f64, DetectorSettings)> {
    let d = |phi, a, b| DetectorMode { rotator_angle: phi, psi_alpha: a, psi_beta: b };
    vec![
        (0.0, DetectorSettings::default()),
        (0.9, DetectorSettings::new(d(0.3, 0.4, -0.2), d(-0.5, 1.3, 0.1))),
        (2.1, DetectorSettings::new(d(1.1, -0.7, 0.6), d(0.2, 0.0, 2.5))),
        (-1.4, DetectorSettings::new(d(-0.25, 3.0, 1.0), d(0.8, -2.2, 0.3))),
    ]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-12)
}

#[test]
fn closed_forms_match_oracle_on_lattice() {
    for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
        for g in [0.2, 0.5, 0.8] {
            for (big_phi, s) in lattice() {
                let p = derive_params(g, big_phi).unwrap();
                let oracle = OracleCorrelator::injected(cfg, &p, &CutoffPolicy::guarded()).unwrap();
                let got = oracle_rates(&oracle, &s).unwrap();
                let want = closed_form_rates(&p, cfg, &s);
                for (a, b) in got.g1.iter().chain(&got.g2).zip(want.g1.iter().chain(&want.g2)) {
                    assert!(rel(*a, *b) < 1e-6, "{cfg} g={g} Φ={big_phi}: oracle {a} closed form {b}");
                }
            }
        }
    }
}

#[test]
fn printed_cross_coincidence_is_off_by_a_constant() {
    let p = derive_params(gain_for_mean_photons(1.0).unwrap(), 0.0).unwrap();
    let s = DetectorSettings::default();
    let oracle = OracleCorrelator::injected(Configuration::NonDegenerate, &p, &CutoffPolicy::guarded()).unwrap();
    let g12 = oracle.g2_pair(&s, ModePair::P12).unwrap();
    assert!(rel(g12, 10.0) < 1e-6);
    assert!((g2_nondegenerate_printed(&p, &s, ModePair::P12) - g12 - 1.5).abs() < 1e-5);
}

#[test]
fn degenerate_fringe_amplitude_follows_g1() {
    let p = derive_params(0.5, 0.0).unwrap();
    let n = p.mean_photons();
    let s = DetectorSettings::default();
    let report = CorrelationReport::oracle(&p, Configuration::Degenerate, &s, &CutoffPolicy::guarded()).unwrap();
    assert!(rel(report.fringe_difference, 2.0 * n + 1.0) < 1e-6);
    assert!((report.printed.fringe_difference - n).abs() < 1e-12);
}

#[test]
fn vacuum_baseline_ignores_detector_settings() {
    for cfg in [Configuration::NonDegenerate, Configuration::Degenerate] {
        let p = derive_params(0.6, 0.0).unwrap();
        let n = p.mean_photons();
        let vac = OracleCorrelator::vacuum(cfg, &p, &CutoffPolicy::guarded()).unwrap();
        for (_, s) in lattice() {
            for mode in [DetectedMode::One, DetectedMode::Two] {
                assert!(rel(vac.g1_mode(&s, mode).unwrap(), n) < 1e-8);
            }
        }
    }
}

#[test]
fn vacuum_coincidences_match_gaussian_moments() {
    let p = derive_params(0.7, 0.0).unwrap();
    let vac = OracleCorrelator::vacuum(Configuration::NonDegenerate, &p, &CutoffPolicy::guarded()).unwrap();
    for (_, s) in lattice() {
        for pair in [ModePair::P11, ModePair::P22, ModePair::P12] {
            let got = vac.g2_pair(&s, pair).unwrap();
            assert!(rel(got, g2_vacuum_nondegenerate(&p, &s, pair)) < 1e-6);
        }
    }
    // twin beams already beat the classical bound without injection
    let n = p.mean_photons();
    let s = DetectorSettings::default();
    let rates = [
        g2_vacuum_nondegenerate(&p, &s, ModePair::P11),
        g2_vacuum_nondegenerate(&p, &s, ModePair::P22),
        g2_vacuum_nondegenerate(&p, &s, ModePair::P12),
    ];
    let cs = CauchySchwarz::from_rates([n, n], rates).unwrap();
    assert!(cs.violated);
}

#[test]
fn cauchy_schwarz_against_oracle() {
    for n in [0.5, 1.0, 5.0, 20.0] {
        let p = derive_params(gain_for_mean_photons(n).unwrap(), 0.0).unwrap();
        let s = DetectorSettings::default();
        let closed = cauchy_schwarz_test(&p, &s).unwrap();
        let report = CorrelationReport::oracle(&p, Configuration::NonDegenerate, &s, &CutoffPolicy::default()).unwrap();
        let o = report.normalized.unwrap();
        assert!(o.violated && closed.violated);
        assert!(rel(o.lhs, closed.lhs) < 1e-6 && rel(o.rhs, closed.rhs) < 1e-6, "n̄={n}");
    }
}
