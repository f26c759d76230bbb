use num_complex::Complex64;
use qiopa::oracle::{convention_scale, propagate_injected, wigner_by_displacement, CutoffPolicy};
use qiopa::wigner::{
    characteristic_function, phase_point_from_real, wigner_closed_form, wigner_degenerate_printed,
    ConjugatePoint, PhasePoint,
};
use qiopa::{derive_params, Configuration};

fn grid5() -> Vec<[f64; 4]> {
    let axis = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut pts = Vec::new();
    for &x in &axis {
        for &y in &axis {
            pts.push([x, 0.3 * y, 0.2 * x, y]);
        }
    }
    pts
}

#[test]
fn degenerate_closed_form_matches_displaced_parity() {
    let cfg = Configuration::Degenerate;
    for g in [0.2, 0.4, 0.6] {
        let p = derive_params(g, 0.8).unwrap();
        let d = CutoffPolicy::guarded().cutoff(&p);
        let reg = propagate_injected(cfg, &p, d).unwrap();
        let mut worst: f64 = 0.0;
        for u in grid5() {
            let pt = phase_point_from_real(&p, cfg, &u).unwrap();
            let closed = wigner_closed_form(&p, &pt).value;
            let oracle = convention_scale(cfg) * wigner_by_displacement(&reg, &[0, 1], &pt.mode_amplitudes()).unwrap();
            worst = worst.max((closed - oracle).abs());
        }
        assert!(worst < 1e-6 * 4.0 / std::f64::consts::PI.powi(2), "g={g}: {worst:e}");
    }
}

#[test]
fn printed_collinear_form_disagrees_with_oracle() {
    let cfg = Configuration::Degenerate;
    let p = derive_params(0.4, 0.0).unwrap();
    let reg = propagate_injected(cfg, &p, CutoffPolicy::guarded().cutoff(&p)).unwrap();
    let (a, b) = (Complex64::new(0.4, 0.1), Complex64::new(-0.3, 0.2));
    let oracle = wigner_by_displacement(&reg, &[0, 1], &[a, b]).unwrap();
    assert!((wigner_degenerate_printed(&p, a, b).value - oracle).abs() > 1e-3);
}

#[test]
fn nondegenerate_closed_form_matches_displaced_parity() {
    let cfg = Configuration::NonDegenerate;
    let p = derive_params(0.25, 2.0).unwrap();
    let d = CutoffPolicy::guarded().cutoff(&p);
    let reg = propagate_injected(cfg, &p, d).unwrap();
    for u in [[0.0; 8], [0.3, -0.2, 0.1, 0.4, -0.5, 0.2, 0.0, 0.3], [0.8, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.6]] {
        let pt = phase_point_from_real(&p, cfg, &u).unwrap();
        let closed = wigner_closed_form(&p, &pt).value;
        let oracle = convention_scale(cfg) * wigner_by_displacement(&reg, &[0, 1, 2, 3], &pt.mode_amplitudes()).unwrap();
        assert!((closed - oracle).abs() < 1e-8, "{u:?}: {closed} vs {oracle}");
    }
}

// W(α, β) = π⁻⁴ ∫ d²η d²ξ χ(η, ξ) exp(αη* − α*η + βξ* − β*ξ), midpoint lattice.
#[test]
fn fourier_transform_of_characteristic_function() {
    for g in [0.3, 0.6] {
        let p = derive_params(g, 0.9).unwrap();
        let half = 7.0;
        let n: usize = 40;
        let h = 2.0 * half / n as f64;
        let nodes: Vec<f64> = (0..n).map(|k| -half + (k as f64 + 0.5) * h).collect();
        let mut chi = Vec::with_capacity(n.pow(4));
        for &a in &nodes {
            for &b in &nodes {
                for &c in &nodes {
                    for &d in &nodes {
                        let eta = Complex64::new(a, b);
                        let xi = Complex64::new(c, d);
                        chi.push((eta, xi, characteristic_function(&p, &ConjugatePoint::Degenerate { eta, xi })));
                    }
                }
            }
        }
        let probe = [
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            (Complex64::new(0.3, -0.1), Complex64::new(0.2, 0.2)),
            (Complex64::new(-0.4, 0.2), Complex64::new(0.1, -0.3)),
            (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.0)),
        ];
        let wmax = 4.0 / std::f64::consts::PI.powi(2);
        for (alpha, beta) in probe {
            let closed = wigner_closed_form(&p, &PhasePoint::Degenerate { alpha, beta }).value;
            if closed.abs() < 0.01 * wmax {
                continue;
            }
            let sum: Complex64 = chi
                .iter()
                .map(|(eta, xi, c)| {
                    let arg = alpha * eta.conj() - alpha.conj() * eta + beta * xi.conj() - beta.conj() * xi;
                    c * arg.exp()
                })
                .sum();
            let w = sum.re * h.powi(4) / std::f64::consts::PI.powi(4);
            assert!(((w - closed) / closed).abs() < 0.02, "g={g} α={alpha} β={beta}: {w} vs {closed}");
        }
    }
}
