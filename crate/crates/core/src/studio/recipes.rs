//! Baked sweep configurations, one per figure panel.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI};

use super::config::{
    Axis, InitialAxes, InputAxes, ModelAxes, OneOrMany, Output, SweepConfig, DEFAULT_GRID_CAP,
};
use crate::dynamics::InitialFamily;
use crate::error::{Error, Result};
use crate::model::Variant;

const DECOHERENCE: f64 = 0.02;
const TIME_ASSUMPTION: &str = "time axis t in [0, 30] with 301 points";
const ALPHA_ASSUMPTION: &str = "alpha axis in [0, pi] with 61 points";

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRecipe {
    pub name: &'static str,
    /// Choices beyond the fixed model parameters, stamped into run metadata.
    pub assumptions: Vec<String>,
    pub config: SweepConfig,
}

const NAMES: [&str; 20] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b",
    "fig6a", "fig6b", "fig7a", "fig7b", "fig8a", "fig8b", "fig9", "fig10a", "fig10b", "fig11",
];

pub fn recipe_names() -> &'static [&'static str] {
    &NAMES
}

fn time_axis() -> Option<Axis> {
    Some(Axis::range(0.0, 30.0, 301))
}

fn alpha_range() -> Axis {
    Axis::range(0.0, PI, 61)
}

fn alpha_panels() -> Axis {
    Axis::List(vec![FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_8])
}

fn theta_panels() -> Axis {
    Axis::List(vec![FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6])
}

fn theta_asymptotic() -> Axis {
    Axis::List(vec![0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2])
}

fn variant_for(panel: char) -> Variant {
    if panel == 'a' {
        Variant::Dz
    } else {
        Variant::Dx
    }
}

fn family_for(panel: char) -> InitialFamily {
    if panel == 'a' {
        InitialFamily::Antiparallel
    } else {
        InitialFamily::Parallel
    }
}

fn model(variant: OneOrMany<Variant>, j: Axis, gamma: Axis, jz: Axis, d: Axis) -> ModelAxes {
    ModelAxes {
        variant,
        j,
        gamma,
        jz,
        d,
    }
}

fn config(
    outputs: Vec<Output>,
    time: Option<Axis>,
    model: ModelAxes,
    family: InitialFamily,
    alpha: Axis,
    theta: Option<Axis>,
) -> SweepConfig {
    SweepConfig {
        outputs,
        decoherence: Axis::Scalar(DECOHERENCE),
        time,
        grid_cap: DEFAULT_GRID_CAP,
        model,
        initial: InitialAxes {
            family: OneOrMany::One(family),
            alpha,
        },
        input: theta.map(|theta| InputAxes {
            theta,
            phi: Axis::Scalar(0.0),
        }),
    }
}

/// Concurrence surface over one coupling and time, four initial-state panels.
fn coupling_surface(m: ModelAxes, axis_note: &str) -> (Vec<String>, SweepConfig) {
    let assumptions = vec![
        TIME_ASSUMPTION.to_string(),
        axis_note.to_string(),
        "alpha panels {pi/2, pi/3, pi/4, pi/8} of the cos(alpha)|01> + sin(alpha)|10> family"
            .to_string(),
    ];
    let cfg = config(
        vec![Output::C],
        time_axis(),
        m,
        InitialFamily::Antiparallel,
        alpha_panels(),
        None,
    );
    (assumptions, cfg)
}

pub fn figure_recipe(name: &str) -> Result<FigureRecipe> {
    let unknown = || Error::UnknownRecipe(name.to_string());
    let name: &'static str = NAMES
        .iter()
        .copied()
        .find(|n| *n == name)
        .ok_or_else(unknown)?;
    let panel = name
        .chars()
        .last()
        .filter(|c| c.is_ascii_alphabetic())
        .unwrap_or(' ');
    let one = |v: Variant| OneOrMany::One(v);
    let both = || OneOrMany::Many(vec![Variant::Dz, Variant::Dx]);
    let s = Axis::Scalar;
    let (assumptions, config) = match name {
        "fig1a" | "fig1b" => coupling_surface(
            model(
                one(variant_for(panel)),
                Axis::range(-3.0, 3.0, 61),
                s(0.2),
                s(1.0),
                s(2.0),
            ),
            "J axis in [-3, 3] with 61 points",
        ),
        "fig2a" | "fig2b" => coupling_surface(
            model(
                one(variant_for(panel)),
                s(1.0),
                Axis::range(0.0, 1.0, 51),
                s(1.0),
                s(2.0),
            ),
            "gamma axis in [0, 1] with 51 points",
        ),
        "fig3a" | "fig3b" => coupling_surface(
            model(
                one(variant_for(panel)),
                s(1.0),
                s(0.5),
                Axis::range(-3.0, 3.0, 61),
                s(2.0),
            ),
            "Jz axis in [-3, 3] with 61 points",
        ),
        "fig4a" | "fig4b" => coupling_surface(
            model(
                one(variant_for(panel)),
                s(1.0),
                s(0.6),
                s(1.5),
                Axis::range(0.0, 4.0, 41),
            ),
            "D axis in [0, 4] with 41 points",
        ),
        "fig5a" | "fig5b" => (
            vec![TIME_ASSUMPTION.into(), ALPHA_ASSUMPTION.into()],
            config(
                vec![Output::C],
                time_axis(),
                model(one(Variant::Dz), s(1.0), s(0.2), s(2.0), s(0.5)),
                family_for(panel),
                alpha_range(),
                None,
            ),
        ),
        "fig6a" | "fig6b" => (
            vec![
                TIME_ASSUMPTION.into(),
                ALPHA_ASSUMPTION.into(),
                "J and Jz panels: J in {1, -1}, Jz in {2, -2}".into(),
            ],
            config(
                vec![Output::C],
                time_axis(),
                model(
                    one(Variant::Dx),
                    Axis::List(vec![1.0, -1.0]),
                    s(0.2),
                    Axis::List(vec![2.0, -2.0]),
                    s(0.5),
                ),
                family_for(panel),
                alpha_range(),
                None,
            ),
        ),
        "fig7a" | "fig7b" => (
            vec![
                TIME_ASSUMPTION.into(),
                ALPHA_ASSUMPTION.into(),
                "theta panels {pi/2, pi/3, pi/4, pi/6}".into(),
            ],
            config(
                vec![Output::COut],
                time_axis(),
                model(one(Variant::Dz), s(1.0), s(0.2), s(2.0), s(0.5)),
                family_for(panel),
                alpha_range(),
                Some(theta_panels()),
            ),
        ),
        "fig8a" | "fig8b" => (
            vec![
                TIME_ASSUMPTION.into(),
                ALPHA_ASSUMPTION.into(),
                "theta panels {pi/2, pi/3, pi/4, pi/6}".into(),
            ],
            config(
                vec![Output::COut],
                time_axis(),
                model(
                    one(Variant::Dx),
                    s(1.0),
                    s(0.2),
                    s(if panel == 'a' { 2.0 } else { -2.0 }),
                    s(0.5),
                ),
                InitialFamily::Antiparallel,
                alpha_range(),
                Some(theta_panels()),
            ),
        ),
        "fig9" => (
            vec![
                TIME_ASSUMPTION.into(),
                "alpha curves {pi/2, pi/3, pi/4, pi/8}; pi/8 is the 0.9238|01> + 0.3826|10> state"
                    .into(),
            ],
            config(
                vec![Output::F],
                time_axis(),
                model(both(), s(1.0), s(0.4), s(0.5), s(2.0)),
                InitialFamily::Antiparallel,
                alpha_panels(),
                Some(theta_panels()),
            ),
        ),
        "fig10a" | "fig10b" => (
            vec![
                ALPHA_ASSUMPTION.into(),
                "theta curves {0, pi/6, pi/4, pi/3, pi/2}".into(),
            ],
            config(
                vec![Output::FAsymptotic],
                None,
                model(one(variant_for(panel)), s(1.0), s(0.8), s(2.0), s(2.0)),
                InitialFamily::Antiparallel,
                alpha_range(),
                Some(theta_asymptotic()),
            ),
        ),
        "fig11" => (
            vec![
                ALPHA_ASSUMPTION.into(),
                "theta curves {0, pi/6, pi/4, pi/3, pi/2}".into(),
            ],
            config(
                vec![Output::FAsymptotic],
                None,
                model(both(), s(1.0), s(0.1), s(3.0), s(2.0)),
                InitialFamily::Parallel,
                alpha_range(),
                Some(theta_asymptotic()),
            ),
        ),
        _ => return Err(unknown()),
    };
    Ok(FigureRecipe {
        name,
        assumptions,
        config,
    })
}
