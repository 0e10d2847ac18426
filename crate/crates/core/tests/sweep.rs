use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_8, PI};

use dmchain::model::Variant;
use dmchain::studio::{
    asymptotic_fidelity_curve, figure_recipe, recipe_names, run_sweep, sweep_rows, Axis, OneOrMany,
    SweepConfig,
};
use dmchain::Error;

fn csv(cfg: &SweepConfig) -> String {
    let mut buf = Vec::new();
    run_sweep(cfg, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn scalar_config_gives_one_row() {
    let cfg = SweepConfig::from_toml(
        r#"
outputs = ["C"]
Gamma = 0.02
time = 5
[model]
variant = "Dx"
J = 1
gamma = 0.2
Jz = 1
D = 2
[initial]
family = "ParallelFamily"
alpha = 0.5
"#,
    )
    .unwrap();
    assert_eq!(csv(&cfg).lines().count(), 2);
}

#[test]
fn fig2a_late_rows_reach_stationary_values() {
    let cfg = figure_recipe("fig2a").unwrap().config;
    let expected = [
        (FRAC_PI_2, 0.0),
        (FRAC_PI_3, 0.387),
        (FRAC_PI_4, 0.447),
        (FRAC_PI_8, 0.316),
    ];
    let rows = sweep_rows(&cfg).unwrap();
    assert_eq!(rows.len(), 51 * 4 * 301);
    let late: Vec<_> = rows.iter().filter(|r| r.point.t == Some(30.0)).collect();
    assert_eq!(late.len(), 51 * 4);
    for r in late {
        let (_, c) = expected
            .iter()
            .find(|(a, _)| *a == r.point.initial.alpha)
            .unwrap();
        assert!((r.outputs.c.unwrap() - c).abs() < 0.005, "{r:?}");
    }
}

#[test]
fn recipes_are_deterministic() {
    for name in ["fig9", "fig11"] {
        let cfg = figure_recipe(name).unwrap().config;
        assert_eq!(csv(&cfg), csv(&cfg));
    }
}

#[test]
fn recipe_row_counts_match_axis_products() {
    for name in recipe_names() {
        let cfg = figure_recipe(name).unwrap().config;
        let mut small = cfg.clone();
        // Keep the runtime small: a single time value leaves the other axes intact.
        if small.time.is_some() {
            small.time = Some(Axis::Scalar(1.0));
        }
        let rows = sweep_rows(&small).unwrap();
        assert_eq!(rows.len() as u128, small.point_count(), "{name}");
    }
}

#[test]
fn asymptotic_curve_examples() {
    let cfg = figure_recipe("fig10a").unwrap().config;
    let rows = sweep_rows(&cfg).unwrap();
    // theta = 0 is flat in alpha for Dz.
    let flat: Vec<f64> = rows
        .iter()
        .filter(|r| r.theta == Some(0.0))
        .map(|r| r.outputs.f_asymptotic.unwrap())
        .collect();
    assert_eq!(flat.len(), 61);
    assert!(flat.iter().all(|f| (f - flat[0]).abs() < 1e-9));

    // Period pi/2 in alpha: the alpha axis has step pi/60, so 30 steps is pi/2.
    for theta in [FRAC_PI_3, FRAC_PI_2] {
        let f: Vec<f64> = rows
            .iter()
            .filter(|r| r.theta == Some(theta))
            .map(|r| r.outputs.f_asymptotic.unwrap())
            .collect();
        for k in 0..31 {
            assert!((f[k] - f[k + 30]).abs() < 1e-9, "theta {theta} k {k}");
        }
    }
}

#[test]
fn stationary_bell_channel_teleports_perfectly() {
    let mut cfg = figure_recipe("fig10b").unwrap().config;
    cfg.decoherence = Axis::Scalar(0.0);
    cfg.initial.alpha = Axis::Scalar(FRAC_PI_4);
    cfg.input.as_mut().unwrap().theta = Axis::range(0.0, PI, 9);
    cfg.input.as_mut().unwrap().phi = Axis::List(vec![0.0, 1.0]);
    for r in sweep_rows(&cfg).unwrap() {
        assert!(
            (r.outputs.f_asymptotic.unwrap() - 1.0).abs() < 1e-12,
            "{r:?}"
        );
    }
}

#[test]
fn asymptotic_curve_rejects_configs_without_the_output() {
    let cfg = figure_recipe("fig5a").unwrap().config;
    assert!(matches!(
        asymptotic_fidelity_curve(&cfg, Vec::new()),
        Err(Error::Config(_))
    ));
    let ok = figure_recipe("fig11").unwrap().config;
    assert_eq!(
        asymptotic_fidelity_curve(&ok, Vec::new()).unwrap(),
        2 * 61 * 5
    );
}

#[test]
fn variant_overlay_nests_variant_outermost() {
    let cfg = figure_recipe("fig9").unwrap().config;
    assert_eq!(
        cfg.model.variant,
        OneOrMany::Many(vec![Variant::Dz, Variant::Dx])
    );
    let text = csv(&cfg);
    let variants: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    let half = variants.len() / 2;
    assert!(variants[..half].iter().all(|v| *v == "Dz"));
    assert!(variants[half..].iter().all(|v| *v == "Dx"));
}
