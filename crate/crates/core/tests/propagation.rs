use photon_prop::propagate::{
    analytic_matched, analytic_parts_broad, analytic_parts_matched, evaluate, gaussian_broad,
    limits_at_zero, propagate_numeric, AdiabaticForm, EvalOptions, NumericOptions,
};
use photon_prop::{AbsorberSpec, Error, PhotonWaveform, Provenance, TimeGrid, TimeSeries, WaveformKind};

fn wave(kind: WaveformKind) -> PhotonWaveform {
    PhotonWaveform::new(kind, 1.0).unwrap()
}

fn numeric(kind: WaveformKind, a: &AbsorberSpec, g: &TimeGrid) -> TimeSeries {
    propagate_numeric(&wave(kind), a, g, &NumericOptions::default()).unwrap()
}

/// Max-abs deviation from `f` away from +-2 steps of tau = 0.
fn deviation(ts: &TimeSeries, f: impl Fn(f64) -> f64) -> f64 {
    let z = ts.grid.zero_index();
    ts.times()
        .iter()
        .enumerate()
        .filter(|(i, _)| z.is_none_or(|z| i.abs_diff(z) > 2))
        .map(|(i, &t)| (ts.amplitude[i].re - f(t)).abs().max(ts.amplitude[i].im.abs()))
        .fold(0.0, f64::max)
}

#[test]
fn zero_thickness_reproduces_input() {
    let g = TimeGrid::with_spacing(-3.0, 6.0, 0.01).unwrap();
    let a = AbsorberSpec::broad(5.0, 0.0).unwrap();
    for kind in WaveformKind::ALL {
        let out = numeric(kind, &a, &g);
        let w = wave(kind);
        assert!(deviation(&out, |t| w.time_amplitude(t)) < 1e-12, "{kind}");
    }
}

#[test]
fn matched_line_beats() {
    let g = TimeGrid::with_spacing(-2.0, 8.0, 0.01).unwrap();
    for t in [1.0, 10.0] {
        let a = AbsorberSpec::matched(1.0, t).unwrap();
        let out = numeric(WaveformKind::ExponentialCausal, &a, &g);
        let err = deviation(&out, |tau| analytic_matched(1.0, t, tau));
        assert!(err <= 1e-4, "T = {t}: {err:e}");
        let d = out.diagnostics.unwrap();
        assert!(d.drift <= 1e-5);
    }
}

#[test]
fn matched_line_boundary_values() {
    let g = TimeGrid::with_spacing(-2.0, 6.0, 0.01).unwrap();
    let a = AbsorberSpec::matched(1.0, 10.0).unwrap();
    let e = 0.5 * (-5.0f64).exp();
    let s = limits_at_zero(&numeric(WaveformKind::SymmetricPart, &a, &g));
    let sym = numeric(WaveformKind::SymmetricPart, &a, &g);
    let z = g.zero_index().unwrap();
    assert!(s.is_none());
    assert!((sym.amplitude[z].re - e).abs() < 1e-4);
    let anti = limits_at_zero(&numeric(WaveformKind::AntisymmetricPart, &a, &g)).unwrap();
    assert!((anti.left + e).abs() < 1e-4);
    assert!((anti.right - (1.0 - e)).abs() < 1e-4);
}

#[test]
fn matched_line_parts() {
    let g = TimeGrid::with_spacing(-2.0, 6.0, 0.02).unwrap();
    let a = AbsorberSpec::matched(1.0, 10.0).unwrap();
    let s = numeric(WaveformKind::SymmetricPart, &a, &g);
    let an = numeric(WaveformKind::AntisymmetricPart, &a, &g);
    assert!(deviation(&s, |t| analytic_parts_matched(1.0, 10.0, t).unwrap().0) <= 1e-4);
    assert!(deviation(&an, |t| analytic_parts_matched(1.0, 10.0, t).unwrap().1) <= 1e-4);
}

#[test]
fn broad_line_parts() {
    let g = TimeGrid::with_spacing(-1.0, 3.0, 0.005).unwrap();
    let a = AbsorberSpec::broad(10.0, 10.0).unwrap();
    let exp = numeric(WaveformKind::ExponentialCausal, &a, &g);
    let err = deviation(&exp, |t| {
        let (s, an) = analytic_parts_broad(1.0, 10.0, 10.0, t).unwrap();
        s + an
    });
    assert!(err <= 1e-4, "{err:e}");
    // individual parts, including the noncausal precursor
    let anti = numeric(WaveformKind::AntisymmetricPart, &a, &g);
    assert!(deviation(&anti, |t| analytic_parts_broad(1.0, 10.0, 10.0, t).unwrap().1) <= 1e-4);
    let tp: f64 = 100.0 / 11.0;
    let pre = anti.amplitude[0].re;
    assert!((pre + 0.5 * (-1.0 - tp).exp()).abs() < 1e-7, "{pre:e}");
}

#[test]
fn gaussian_through_broad_line() {
    let g = TimeGrid::with_spacing(-12.0, 12.0, 0.02).unwrap();
    let w = wave(WaveformKind::Gaussian);
    let a = AbsorberSpec::broad(20.0, 2.0).unwrap();
    let out = propagate_numeric(&w, &a, &g, &NumericOptions::default()).unwrap();
    let err = deviation(&out, |t| gaussian_broad(1.0, 20.0, 2.0, t).unwrap());
    assert!(err <= 1e-2, "{err:e}");
}

#[test]
fn decomposition_and_linearity() {
    let g = TimeGrid::with_spacing(-2.0, 5.0, 0.01).unwrap();
    let media = [
        AbsorberSpec::matched(1.0, 10.0).unwrap(),
        AbsorberSpec::broad(10.0, 10.0).unwrap(),
        AbsorberSpec::eit(10.0, 1.0, 20.0, 30.0).unwrap(),
    ];
    for a in &media {
        let e = numeric(WaveformKind::ExponentialCausal, a, &g);
        let s = numeric(WaveformKind::SymmetricPart, a, &g);
        let an = numeric(WaveformKind::AntisymmetricPart, a, &g);
        let worst = (0..g.len())
            .map(|i| (s.amplitude[i] + an.amplitude[i] - e.amplitude[i]).norm())
            .fold(0.0, f64::max);
        assert!(worst <= 1e-9, "{}: {worst:e}", a.line().name());
        let (je, js, ja) = (e.jump.unwrap(), s.jump, an.jump.unwrap());
        assert!(js.is_none());
        assert!((je.left - ja.left - s.amplitude[je.index]).norm() <= 1e-9);
        assert!((je.right - ja.right - s.amplitude[je.index]).norm() <= 1e-9);
    }
}

#[test]
fn causal_and_passive() {
    let g = TimeGrid::with_spacing(-3.0, 6.0, 0.01).unwrap();
    let media = [
        AbsorberSpec::matched(1.0, 10.0).unwrap(),
        AbsorberSpec::matched(1.0, 0.3).unwrap(),
        AbsorberSpec::broad(10.0, 10.0).unwrap(),
        AbsorberSpec::broad(0.5, 3.0).unwrap(),
        AbsorberSpec::eit(10.0, 1.0, 20.0, 30.0).unwrap(),
        AbsorberSpec::eit(10.0, 1.0, 2.0, 5.0).unwrap(),
    ];
    let h = g.spacing();
    for a in &media {
        let out = numeric(WaveformKind::ExponentialCausal, a, &g);
        for (t, v) in out.times().iter().zip(&out.amplitude) {
            if *t < -2.0 * h {
                assert!(v.norm() <= 1e-4, "{} at {t}: {v}", a.line().name());
            }
            assert!(v.norm() <= 1.0 + 1e-9);
        }
        if let Some(j) = out.jump {
            assert!(j.right.norm() <= 1.0 + 1e-9);
        }
    }
}

#[test]
fn numeric_rejects_impossible_resolution() {
    let g = TimeGrid::with_spacing(-1.0, 5000.0, 0.001).unwrap();
    let a = AbsorberSpec::broad(1000.0, 1.0).unwrap();
    let r = propagate_numeric(&wave(WaveformKind::ExponentialCausal), &a, &g, &NumericOptions::default());
    assert!(matches!(r, Err(Error::NonConvergence(_))));
}

#[test]
fn eit_numeric_vs_adiabatic_sum() {
    // The sum of the adiabatic and nonadiabatic approximations; measured, not exact.
    let g = TimeGrid::with_spacing(-1.0, 6.0, 0.005).unwrap();
    let a = AbsorberSpec::eit(10.0, 1.0, 20.0, 30.0).unwrap();
    let w = wave(WaveformKind::ExponentialCausal);
    let opts = EvalOptions::default();
    let num = evaluate(Provenance::Numeric, &w, Some(&a), &g, &opts).unwrap();
    let tot = evaluate(Provenance::TotalEit, &w, Some(&a), &g, &opts).unwrap();
    let err = num.max_abs_difference(&tot, Some(2)).unwrap();
    assert!(err < 0.06, "{err}");
    // late times are dominated by the delayed adiabatic pulse
    let late = g.zero_index().unwrap() + 500;
    assert!((num.amplitude[late] - tot.amplitude[late]).norm() < 5e-3);
}

#[test]
fn evaluate_checks_preconditions() {
    let g = TimeGrid::with_spacing(-1.0, 2.0, 0.01).unwrap();
    let opts = EvalOptions::default();
    let exp = wave(WaveformKind::ExponentialCausal);
    let weak = AbsorberSpec::eit(10.0, 1.0, 3.0, 30.0).unwrap();
    assert!(matches!(
        evaluate(Provenance::AdiabaticEit, &exp, Some(&weak), &g, &opts),
        Err(Error::Validity(_))
    ));
    let narrow = AbsorberSpec::broad(1.0, 3.0).unwrap();
    assert!(matches!(
        evaluate(Provenance::AnalyticParts, &exp, Some(&narrow), &g, &opts),
        Err(Error::Validity(_))
    ));
    let off = AbsorberSpec::matched(2.0, 3.0).unwrap();
    assert!(evaluate(Provenance::AnalyticMatched, &exp, Some(&off), &g, &opts).is_err());
    let gauss = wave(WaveformKind::Gaussian);
    let eit = AbsorberSpec::eit(10.0, 1.0, 20.0, 30.0).unwrap();
    assert!(matches!(
        evaluate(Provenance::TotalEit, &gauss, Some(&eit), &g, &opts),
        Err(Error::Unsupported(_))
    ));
    assert!(evaluate(Provenance::Numeric, &exp, None, &g, &opts).is_err());
    let simplified = EvalOptions {
        eit_form: AdiabaticForm::Simplified,
        ..opts
    };
    assert!(evaluate(Provenance::AdiabaticEit, &exp, Some(&eit), &g, &simplified).is_ok());
    let input = evaluate(Provenance::Input, &exp, None, &g, &opts).unwrap();
    assert_eq!(input.provenance, Provenance::Input);
}
