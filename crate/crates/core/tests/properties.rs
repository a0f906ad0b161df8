// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use qmix::dynamics::Equations;
use qmix::model::{validate_config, ScenarioKind, Units};
use qmix::multiphoton::{allowed_indices, process_descriptor};
use qmix::prelude::Complex64 as C64;
use qmix::prelude::*;
use qmix::spectra::extract_component;

fn any_f64() -> impl Strategy<Value = f64> {
    prop_oneof![
        8 => -2.0..2.0f64,
        1 => Just(f64::NAN),
        1 => Just(f64::INFINITY),
        1 => Just(0.0),
    ]
}

fn any_scenario() -> impl Strategy<Value = Scenario> {
    prop_oneof![
        (any_f64(), any_f64()).prop_map(|(a, b)| Scenario::TwoTone(TwoTone { omega1: a, omega2: b })),
        (any_f64(), any_f64(), any_f64(), any_f64()).prop_map(|(o, n, re, im)| Scenario::Squeezed(SqueezedBath {
            omega1: o,
            n_bath: n,
            m_bath: C64::new(re, im)
        })),
        (any_f64(), any_f64(), any_f64(), any_f64()).prop_map(|(o, g, nu, t)| Scenario::Fock(FockSource::new(
            o,
            g,
            nu,
            t * 10.0
        ))),
    ]
}

fn harmonics(amps: &[(i32, C64)], frame: FrameConfig, per: usize, beats: usize) -> Trajectory {
    let beat = frame.beat_period();
    let samples = (0..=per * beats)
        .map(|i| {
            let t = beat * i as f64 / per as f64;
            let sm = amps.iter().map(|(n, c)| c * C64::from_polar(1.0, -(*n as f64) * frame.delta_w * t)).sum();
            BlochState::new(sm, 0.0)
        })
        .collect();
    Trajectory { t0: 0.0, dt: beat / per as f64, samples, frame, max_purity_excess: 0.0 }
}

#[test]
fn detuning_sign_mirrors_the_spectrum() {
    // Conjugation maps Δω to −Δω and swaps the tones, so with equal tones
    // |S_n| at +Δω equals |S_−n| at −Δω.
    let q = QubitParams::radiative();
    let s = Scenario::TwoTone(TwoTone { omega1: 0.15, omega2: 0.15 });
    let settings = RunSettings { window_beats: 5, ..Default::default() };
    let plus = qmix::run::simulate(&q, &FrameConfig::new(0.02, 0.2).unwrap(), &s, &settings).unwrap().spectrum;
    let minus = qmix::run::simulate(&q, &FrameConfig::new(0.02, -0.2).unwrap(), &s, &settings).unwrap().spectrum;
    for n in -8..=8 {
        assert!((plus.abs(n) - minus.abs(-n)).abs() <= 1e-10 * plus.max_abs(), "n = {n}");
    }
    assert!((plus.abs(3) - plus.abs(-3)).abs() > 1e-6 * plus.max_abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validation_is_total(q in (any_f64(), any_f64()), f in (any_f64(), any_f64()), s in any_scenario()) {
        let qubit = QubitParams { gamma_rad: q.0, gamma_phi: q.1, dipole_scale: 1.0 };
        let frame = FrameConfig { delta_w: f.0, big_delta: f.1 };
        let r = validate_config(&qubit, &frame, &s);
        let finite = [q.0, q.1, f.0, f.1].iter().all(|v| v.is_finite());
        if !finite {
            prop_assert!(!r.is_ok());
        }
        if r.is_ok() {
            // Anything that validates can be turned into equations with finite rates.
            let eq = Equations::for_scenario(&s, &qubit, &frame);
            prop_assert!(eq.stiffness().is_finite());
        }
    }

    #[test]
    fn normalization_round_trips(
        scale in 0.01..100.0f64,
        gp in 0.0..3.0f64,
        dw in 1e-4..0.05f64,
        bd in -1.0..1.0f64,
        o1 in 0.0..1.0f64,
        ge in 0.05..2.0f64,
        t in 1.0..50.0f64,
    ) {
        let q = QubitParams::new(scale, gp * scale).unwrap();
        let f = FrameConfig::new(dw * scale, bd * scale).unwrap();
        let s = Scenario::Fock(FockSource::new(o1 * scale, ge * scale, 0.3, t / scale));
        let u = Units::of(&q);
        let (nq, nf, ns) = u.normalize(&q, &f, &s);
        prop_assert!((nq.gamma_rad - 1.0).abs() < 1e-15);
        let (bq, bf, bs) = u.denormalize(&nq, &nf, &ns);
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(1e-300);
        prop_assert!(close(bq.gamma_phi, q.gamma_phi) && close(bf.delta_w, f.delta_w) && close(bf.big_delta, f.big_delta));
        let (Scenario::Fock(a), Scenario::Fock(b)) = (bs, s) else { unreachable!() };
        prop_assert!(close(a.omega1, b.omega1) && close(a.gamma_e, b.gamma_e) && close(a.period, b.period));
    }

    #[test]
    fn extraction_is_linear_and_exact_on_harmonics(
        raw in prop::collection::vec((-6i32..=6, -1.0..1.0f64, -1.0..1.0f64), 1..5),
        a in -3.0..3.0f64,
        offset in -0.5..0.5f64,
    ) {
        let frame = FrameConfig::new(0.01, 0.0).unwrap();
        let mut amps: Vec<(i32, C64)> = Vec::new();
        for (n, re, im) in raw {
            if !amps.iter().any(|(m, _)| *m == n) {
                amps.push((n, C64::new(re, im)));
            }
        }
        let x = harmonics(&amps, frame, 512, 6);
        let y = harmonics(&[(0, C64::new(offset, 0.0)), (2, C64::new(0.0, offset))], frame, 512, 6);
        let mut z = x.clone();
        for (s, t) in z.samples.iter_mut().zip(&y.samples) {
            s.sm = s.sm * a + t.sm;
        }
        let w = (frame.beat_period(), 6.0 * frame.beat_period());
        for n in -7..=7 {
            let (ex, ey, ez) = (
                extract_component(&x, n, w).unwrap(),
                extract_component(&y, n, w).unwrap(),
                extract_component(&z, n, w).unwrap(),
            );
            prop_assert!((ez - (ex * a + ey)).norm() < 1e-12);
            let want = amps.iter().find(|(m, _)| *m == n).map_or(C64::new(0.0, 0.0), |p| p.1);
            prop_assert!((ex - want).norm() < 1e-12, "n = {}: {} vs {}", n, ex, want);
        }
    }

    #[test]
    fn descriptors_close(n_max in 1u32..40) {
        for kind in [ScenarioKind::TwoTone, ScenarioKind::Squeezed, ScenarioKind::Fock] {
            for n in allowed_indices(kind, n_max) {
                prop_assert!(process_descriptor(kind, n).unwrap().closes());
            }
            for n in -(n_max as i32)..=n_max as i32 {
                if !allowed_indices(kind, n_max).contains(&n) {
                    prop_assert!(process_descriptor(kind, n).is_err());
                }
            }
        }
    }
}
