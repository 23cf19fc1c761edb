use super::*;
use approx::assert_relative_eq;
use proptest::prelude::*;

fn ghz(f: f64) -> f64 {
    f * GHZ
}

fn cmos() -> TechnologyProfile {
    ComponentTable::bundled()
        .profile(Technology::Cmos)
        .unwrap()
        .clone()
}

fn sige() -> TechnologyProfile {
    ComponentTable::bundled()
        .profile(Technology::Sige)
        .unwrap()
        .clone()
}

#[test]
fn table_values_verbatim() {
    let c = cmos();
    let pa: alloc::vec::Vec<_> = c
        .power_amplifier
        .bands
        .iter()
        .map(|b| b.noise_figure_db)
        .collect();
    assert_eq!(pa, [7.8, 7.9, 12.7]);
    let s = sige();
    let mix_gain: alloc::vec::Vec<_> = s.mixer.bands.iter().map(|b| b.gain_db).collect();
    assert_eq!(mix_gain, [15.0, 18.0, 20.6]);
    assert!(c.mixer.bands[1].provenance.contains("simulated"));
    let centres: alloc::vec::Vec<_> = c.mixer.bands.iter().map(BandValue::center_ghz).collect();
    assert_eq!(centres, [65.0, 150.0, 350.0]);
}

#[test]
fn interpolation_examples() {
    let (nf, g) = cmos()
        .interpolate_stage(StageKind::MixerPlusIf, ghz(150.0))
        .unwrap();
    assert_eq!((nf, g), (14.5, -5.0));
    let (nf, g) = cmos()
        .interpolate_stage(StageKind::MixerPlusIf, ghz(250.0))
        .unwrap();
    assert_relative_eq!(nf, 16.25, max_relative = 1e-14);
    assert_relative_eq!(g, -1.0, max_relative = 1e-14);
    let (nf, g) = sige()
        .interpolate_stage(StageKind::PowerAmplifier, ghz(350.0))
        .unwrap();
    assert_eq!((nf, g), (14.0, 23.0));
}

#[test]
fn anchors_are_exact() {
    for profile in [cmos(), sige()] {
        for spec in [&profile.mixer, &profile.power_amplifier] {
            for band in &spec.bands {
                let (nf, g) = profile
                    .interpolate_stage(spec.kind, band.center_ghz() * GHZ)
                    .unwrap();
                assert_eq!((nf, g), (band.noise_figure_db, band.gain_db));
            }
        }
    }
}

#[test]
fn interpolation_range() {
    assert!(cmos()
        .interpolate_stage(StageKind::MixerPlusIf, ghz(29.9))
        .is_err());
    assert!(cmos()
        .interpolate_stage(StageKind::MixerPlusIf, ghz(500.1))
        .is_err());
    assert!(cmos().cascaded_tx_noise_figure(ghz(20.0)).is_err());
    assert!(cmos().tx_saturated_power_dbm(ghz(600.0)).is_err());
}

#[test]
fn friis_examples() {
    let single = StageParams::new(4.0, 123.0).unwrap();
    assert_eq!(cascaded_noise_factor(&[single]).unwrap(), 4.0);

    // Low-band CMOS raw values: 16 dB / -2 dB mixer, then a 7.8 dB PA.
    let mixer = StageParams::from_db(16.0, -2.0).unwrap();
    let pa = StageParams::from_db(7.8, 15.4).unwrap();
    let f = to_db(cascaded_noise_factor(&[mixer, pa]).unwrap()).unwrap();
    assert_relative_eq!(f, 16.792075109662303, max_relative = 1e-12);

    let huge_gain = StageParams::new(3.0, 1e300).unwrap();
    let second = StageParams::new(50.0, 10.0).unwrap();
    assert_relative_eq!(
        cascaded_noise_factor(&[huge_gain, second]).unwrap(),
        3.0,
        max_relative = 1e-12
    );

    assert!(cascaded_noise_factor(&[]).is_err());
    assert!(StageParams::new(0.5, 1.0).is_err());
    assert!(StageParams::new(2.0, 0.0).is_err());
}

#[test]
fn cascaded_endpoints() {
    // Frozen from an independent evaluation of the same interpolation.
    let cases = [
        (Technology::Cmos, 30.0, 17.14500033758864),
        (Technology::Cmos, 150.0, 16.48555132738873),
        (Technology::Cmos, 500.0, 20.81788666207577),
        (Technology::Sige, 30.0, 11.12498372702339),
        (Technology::Sige, 300.0, 12.81616554077305),
        (Technology::Sige, 500.0, 14.525167294994542),
    ];
    let table = ComponentTable::bundled();
    for (tech, f, expected) in cases {
        let got = table
            .profile(tech)
            .unwrap()
            .cascaded_tx_noise_figure(ghz(f))
            .unwrap();
        assert_relative_eq!(got, expected, max_relative = 1e-12);
    }
    assert!((cmos().cascaded_tx_noise_figure(ghz(30.0)).unwrap() - 17.0).abs() <= 0.5);
    assert!((cmos().cascaded_tx_noise_figure(ghz(500.0)).unwrap() - 20.8).abs() <= 0.5);
    assert!((sige().cascaded_tx_noise_figure(ghz(30.0)).unwrap() - 11.0).abs() <= 0.5);
    assert!((sige().cascaded_tx_noise_figure(ghz(500.0)).unwrap() - 14.5).abs() <= 0.5);
}

#[test]
fn chain_gain_examples() {
    assert_relative_eq!(cmos().chain_gain(ghz(150.0)).unwrap(), 17.5);
    assert_relative_eq!(sige().chain_gain(ghz(65.0)).unwrap(), 32.0);
    let flat = "technology,stage,band_low_ghz,band_high_ghz,nf_db,gain_db,provenance_note\n\
                cmos,mixer_plus_if,30,500,3,0,\n\
                cmos,power_amplifier,30,500,3,0,\n";
    let t = ComponentTable::from_csv(flat).unwrap();
    assert_eq!(
        t.profile(Technology::Cmos)
            .unwrap()
            .chain_gain(ghz(123.0))
            .unwrap(),
        0.0
    );
    assert!(t.profile(Technology::Sige).is_err());
}

#[test]
fn tx_noise_psd_models() {
    let flat = "technology,stage,band_low_ghz,band_high_ghz,nf_db,gain_db,provenance_note\n\
                cmos,mixer_plus_if,30,500,0.000001,0,\n\
                cmos,power_amplifier,30,500,0.000001,0,\n";
    let t = ComponentTable::from_csv(flat).unwrap();
    let p = t.profile(Technology::Cmos).unwrap();
    let n = p
        .tx_noise_psd(ghz(100.0), 290.0, TxNoiseModel::PaperEq2)
        .unwrap();
    assert_relative_eq!(n, 4.004e-21, max_relative = 1e-3);

    let c = cmos();
    let f = ghz(300.0);
    let eq2 = c.tx_noise_psd(f, 308.15, TxNoiseModel::PaperEq2).unwrap();
    let expect = BOLTZMANN * 308.15 * from_db(c.cascaded_tx_noise_figure(f).unwrap()).unwrap();
    assert_relative_eq!(eq2, expect, max_relative = 1e-14);
    let out = c
        .tx_noise_psd(f, 308.15, TxNoiseModel::OutputReferred)
        .unwrap();
    assert_relative_eq!(
        to_db(out).unwrap() - to_db(eq2).unwrap(),
        c.chain_gain(f).unwrap(),
        epsilon = 1e-10
    );
    assert!(c.tx_noise_psd(f, 0.0, TxNoiseModel::PaperEq2).is_err());
    assert!("bogus".parse::<TxNoiseModel>().is_err());
    assert_eq!(TxNoiseModel::default(), TxNoiseModel::OutputReferred);
}

#[test]
fn saturated_power() {
    let table = ComponentTable::bundled();
    let c = table.profile(Technology::Cmos).unwrap();
    let s = table.profile(Technology::Sige).unwrap();
    assert!((c.tx_saturated_power_dbm(ghz(300.0)).unwrap() - 9.3).abs() <= 0.5);
    assert_relative_eq!(
        s.tx_saturated_power_dbm(ghz(30.0)).unwrap(),
        25.0,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        s.tx_saturated_power_dbm(ghz(300.0)).unwrap(),
        6.0,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        s.power_model.intercept_dbm,
        53.06530383967359,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        s.power_model.slope_dbm_per_ln_ghz,
        8.251595156161784,
        max_relative = 1e-12
    );
    assert!(PowerModel::through_anchors((30.0, 1.0), (30.0, 2.0)).is_err());
}

#[test]
fn malformed_component_tables() {
    let head = "technology,stage,band_low_ghz,band_high_ghz,nf_db,gain_db,provenance_note\n";
    let bad = [
        "cmos,mixer_plus_if,30,500,0,0,\ncmos,power_amplifier,30,500,3,0,\n",
        "cmos,mixer_plus_if,30,200,3,0,\ncmos,mixer_plus_if,250,500,3,0,\ncmos,power_amplifier,30,500,3,0,\n",
        "cmos,mixer_plus_if,40,500,3,0,\ncmos,power_amplifier,30,500,3,0,\n",
        "cmos,mixer_plus_if,30,500,3,0,\n",
        "gaas,mixer_plus_if,30,500,3,0,\n",
        "cmos,lna,30,500,3,0,\n",
        "cmos,mixer_plus_if,30,500,x,0,\n",
        "",
    ];
    for b in bad {
        assert!(
            ComponentTable::from_csv(&alloc::format!("{head}{b}")).is_err(),
            "{b:?}"
        );
    }
    assert!(ComponentTable::from_csv("tech,stage\n").is_err());
}

#[test]
fn sige_beats_cmos_everywhere() {
    let (c, s) = (cmos(), sige());
    let mut f = 30.0;
    while f <= 500.0 {
        assert!(
            s.cascaded_tx_noise_figure(ghz(f)).unwrap()
                < c.cascaded_tx_noise_figure(ghz(f)).unwrap()
        );
        f += 0.5;
    }
}

proptest! {
    #[test]
    fn friis_lower_bound_and_monotone(
        nfs in proptest::collection::vec((0.0f64..30.0, -20.0f64..40.0), 1..6),
        extra in (0.0f64..30.0, -20.0f64..40.0),
    ) {
        let stages: alloc::vec::Vec<_> = nfs.iter().map(|&(n, g)| StageParams::from_db(n, g).unwrap()).collect();
        let f = cascaded_noise_factor(&stages).unwrap();
        prop_assert!(f >= stages[0].noise_factor);
        let mut longer = stages.clone();
        longer.push(StageParams::from_db(extra.0, extra.1).unwrap());
        prop_assert!(cascaded_noise_factor(&longer).unwrap() >= f);
    }

    #[test]
    fn cascade_continuous(f in 30.0f64..499.0) {
        let c = cmos();
        let a = c.cascaded_tx_noise_figure(ghz(f)).unwrap();
        let b = c.cascaded_tx_noise_figure(ghz(f + 1e-6)).unwrap();
        prop_assert!((a - b).abs() < 1e-5);
    }

    #[test]
    fn psat_strictly_decreasing(f in 30.0f64..499.0, df in 0.01f64..1.0) {
        for tech in Technology::ALL {
            let p = PowerModel::for_technology(tech);
            prop_assert!(p.saturated_power_dbm(f + df) < p.saturated_power_dbm(f));
        }
    }
}
