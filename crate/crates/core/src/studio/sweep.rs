//! Grid enumeration, parallel evaluation and CSV emission.

use std::io::Write;

use rayon::prelude::*;

use super::config::{Output, SweepConfig};
use crate::dynamics::{
    asymptotic_state, default_degeneracy_tol, evolve, EvolutionParams, InitialFamily,
    InitialStateSpec,
};
use crate::entanglement::concurrence;
use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, ModelParams, Variant};
use crate::numerics::{herm_eig, DensityMatrix, Spectrum};
use crate::teleport::{fidelity, output_concurrence, teleport_output, InputState};

pub const CSV_HEADER: &str =
    "variant,J,gamma,Jz,D,Gamma,family,alpha,t,theta,phi,C,C_out,F,F_asymptotic";

/// State points evaluated per parallel batch. Bounds memory on large grids.
const BATCH: usize = 4096;

/// Formats a float with 17 significant digits; `-0` prints as `0`.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

/// One grid point minus the teleportation input: everything that fixes the channel state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePoint {
    pub model: ModelParams,
    pub decoherence: f64,
    pub initial: InitialStateSpec,
    pub t: Option<f64>,
}

/// Channel states at one [`StatePoint`]: `rho(t)` when the grid has a time axis, and the
/// long-time limit when `F_asymptotic` is requested.
#[derive(Debug, Clone)]
pub struct Channels {
    pub evolved: Option<DensityMatrix>,
    pub asymptotic: Option<DensityMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Outputs {
    pub c: Option<f64>,
    pub c_out: Option<f64>,
    pub f: Option<f64>,
    pub f_asymptotic: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub point: StatePoint,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub outputs: Outputs,
}

impl Row {
    pub fn to_csv(&self) -> String {
        let p = &self.point;
        let m = &p.model;
        let fields = [
            m.variant.to_string(),
            format_float(m.j),
            format_float(m.gamma),
            format_float(m.jz),
            format_float(m.d),
            format_float(p.decoherence),
            p.initial.family.as_str().to_string(),
            format_float(p.initial.alpha),
            format_opt(p.t),
            format_opt(self.theta),
            format_opt(self.phi),
            format_opt(self.outputs.c),
            format_opt(self.outputs.c_out),
            format_opt(self.outputs.f),
            format_opt(self.outputs.f_asymptotic),
        ];
        fields.join(",")
    }
}

/// Materialized axis values in nesting order.
#[derive(Debug, Clone)]
pub struct Grid {
    variants: Vec<Variant>,
    j: Vec<f64>,
    gamma: Vec<f64>,
    jz: Vec<f64>,
    d: Vec<f64>,
    decoherence: Vec<f64>,
    families: Vec<InitialFamily>,
    alpha: Vec<f64>,
    times: Vec<Option<f64>>,
    inputs: Vec<(Option<f64>, Option<f64>)>,
}

impl Grid {
    pub fn new(cfg: &SweepConfig) -> Result<Self> {
        cfg.validate()?;
        let times = match &cfg.time {
            Some(t) => t.values().into_iter().map(Some).collect(),
            None => vec![None],
        };
        let inputs = match &cfg.input {
            Some(inp) => {
                let phis = inp.phi.values();
                inp.theta
                    .values()
                    .into_iter()
                    .flat_map(|th| phis.iter().map(move |&ph| (Some(th), Some(ph))))
                    .collect()
            }
            None => vec![(None, None)],
        };
        Ok(Grid {
            variants: cfg.model.variant.values(),
            j: cfg.model.j.values(),
            gamma: cfg.model.gamma.values(),
            jz: cfg.model.jz.values(),
            d: cfg.model.d.values(),
            decoherence: cfg.decoherence.values(),
            families: cfg.initial.family.values(),
            alpha: cfg.initial.alpha.values(),
            times,
            inputs,
        })
    }

    pub fn model_count(&self) -> usize {
        self.variants.len() * self.j.len() * self.gamma.len() * self.jz.len() * self.d.len()
    }

    /// State points per model point.
    fn inner_count(&self) -> usize {
        self.decoherence.len() * self.families.len() * self.alpha.len() * self.times.len()
    }

    pub fn state_count(&self) -> usize {
        self.model_count() * self.inner_count()
    }

    pub fn row_count(&self) -> usize {
        self.state_count() * self.inputs.len()
    }

    pub fn model(&self, index: usize) -> ModelParams {
        let mut i = index;
        let mut take = |n: usize| {
            let k = i % n;
            i /= n;
            k
        };
        let d = take(self.d.len());
        let jz = take(self.jz.len());
        let gamma = take(self.gamma.len());
        let j = take(self.j.len());
        let v = take(self.variants.len());
        ModelParams {
            variant: self.variants[v],
            j: self.j[j],
            gamma: self.gamma[gamma],
            jz: self.jz[jz],
            d: self.d[d],
        }
    }

    /// Model index and state point for a flat state index.
    pub fn state(&self, index: usize) -> (usize, StatePoint) {
        let inner = self.inner_count();
        let (model_index, mut i) = (index / inner, index % inner);
        let mut take = |n: usize| {
            let k = i % n;
            i /= n;
            k
        };
        let t = take(self.times.len());
        let a = take(self.alpha.len());
        let f = take(self.families.len());
        let g = take(self.decoherence.len());
        let point = StatePoint {
            model: self.model(model_index),
            decoherence: self.decoherence[g],
            initial: InitialStateSpec::new(self.families[f], self.alpha[a]),
            t: self.times[t],
        };
        (model_index, point)
    }

    pub fn inputs(&self) -> &[(Option<f64>, Option<f64>)] {
        &self.inputs
    }
}

/// Numerical spectrum of the model Hamiltonian.
pub fn model_spectrum(p: &ModelParams) -> Result<Spectrum> {
    p.validate()?;
    herm_eig(&build_hamiltonian(p))
}

fn channels(spec: &Spectrum, point: &StatePoint, asymptotic: bool) -> Result<Channels> {
    let rho0 = point.initial.density()?;
    let evolved = match point.t {
        Some(t) => Some(evolve(
            spec,
            &rho0,
            &EvolutionParams::new(point.decoherence, t)?,
        )?),
        None => None,
    };
    let asymptotic = if asymptotic {
        Some(asymptotic_state(spec, &rho0, default_degeneracy_tol(spec))?)
    } else {
        None
    };
    Ok(Channels {
        evolved,
        asymptotic,
    })
}

fn evaluate(cfg: &SweepConfig, ch: &Channels, input: Option<InputState>) -> Result<Outputs> {
    let mut out = Outputs::default();
    if let Some(rho) = &ch.evolved {
        if cfg.wants(Output::C) {
            out.c = Some(concurrence(rho)?);
        }
        if let Some(inp) = &input {
            if cfg.wants(Output::COut) {
                out.c_out = Some(output_concurrence(rho, rho, inp)?);
            }
            if cfg.wants(Output::F) {
                out.f = Some(fidelity(&inp.density()?, &teleport_output(rho, rho, inp)?)?);
            }
        }
    }
    if let (Some(rho), Some(inp)) = (&ch.asymptotic, &input) {
        out.f_asymptotic = Some(fidelity(&inp.density()?, &teleport_output(rho, rho, inp)?)?);
    }
    Ok(out)
}

/// Applies `f` to every state point in nesting order, in parallel batches.
/// Spectra are computed once per model point within a batch.
pub fn map_states<T, F>(cfg: &SweepConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&StatePoint, &Channels) -> Result<T> + Sync,
{
    let mut out = Vec::new();
    for_each_batch(cfg, &f, |batch| {
        out.extend(batch);
        Ok(())
    })?;
    Ok(out)
}

fn for_each_batch<T, F, S>(cfg: &SweepConfig, f: &F, mut sink: S) -> Result<()>
where
    T: Send,
    F: Fn(&StatePoint, &Channels) -> Result<T> + Sync,
    S: FnMut(Vec<T>) -> Result<()>,
{
    let grid = Grid::new(cfg)?;
    let want_asym = cfg.wants(Output::FAsymptotic);
    let total = grid.state_count();
    let inner = grid.inner_count();
    let mut start = 0;
    while start < total {
        let end = (start + BATCH).min(total);
        let first_model = start / inner;
        let last_model = (end - 1) / inner;
        let spectra: Vec<Spectrum> = (first_model..=last_model)
            .into_par_iter()
            .map(|m| model_spectrum(&grid.model(m)))
            .collect::<Result<_>>()?;
        let batch: Vec<T> = (start..end)
            .into_par_iter()
            .map(|i| {
                let (m, point) = grid.state(i);
                let ch = channels(&spectra[m - first_model], &point, want_asym)?;
                f(&point, &ch)
            })
            .collect::<Result<_>>()?;
        sink(batch)?;
        start = end;
    }
    Ok(())
}

/// Every row of the grid, in nesting order.
pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<Row>> {
    let grid = Grid::new(cfg)?;
    let inputs = grid.inputs().to_vec();
    let nested = map_states(cfg, |point, ch| rows_at(cfg, &inputs, point, ch))?;
    Ok(nested.into_iter().flatten().collect())
}

fn rows_at(
    cfg: &SweepConfig,
    inputs: &[(Option<f64>, Option<f64>)],
    point: &StatePoint,
    ch: &Channels,
) -> Result<Vec<Row>> {
    inputs
        .iter()
        .map(|&(theta, phi)| {
            let input = match (theta, phi) {
                (Some(th), Some(ph)) => Some(InputState::new(th, ph)?),
                _ => None,
            };
            Ok(Row {
                point: *point,
                theta,
                phi,
                outputs: evaluate(cfg, ch, input)?,
            })
        })
        .collect()
}

/// Writes the header and one CSV line per grid point. Returns the number of data rows.
/// Output bytes do not depend on the thread count.
pub fn run_sweep<W: Write>(cfg: &SweepConfig, mut out: W) -> Result<usize> {
    let grid = Grid::new(cfg)?;
    let inputs = grid.inputs().to_vec();
    writeln!(out, "{CSV_HEADER}")?;
    let render = |point: &StatePoint, ch: &Channels| -> Result<String> {
        let mut s = String::new();
        for row in rows_at(cfg, &inputs, point, ch)? {
            s.push_str(&row.to_csv());
            s.push('\n');
        }
        Ok(s)
    };
    for_each_batch(cfg, &render, |batch| {
        for chunk in batch {
            out.write_all(chunk.as_bytes())?;
        }
        Ok(())
    })?;
    out.flush()?;
    Ok(grid.row_count())
}

/// Asymptotic teleportation fidelity over the grid. Same CSV layout as [`run_sweep`].
pub fn asymptotic_fidelity_curve<W: Write>(cfg: &SweepConfig, out: W) -> Result<usize> {
    if !cfg.wants(Output::FAsymptotic) {
        return Err(Error::Config(
            "asymptotic fidelity curve needs F_asymptotic in outputs".into(),
        ));
    }
    run_sweep(cfg, out)
}

/// Largest entrywise gap between the spectral propagator and the RK4 oracle over the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub points: usize,
    pub max_diff: f64,
    pub worst: Option<StatePoint>,
}

pub fn run_oracle(cfg: &SweepConfig, dt: f64) -> Result<OracleReport> {
    if cfg.time.is_none() {
        return Err(Error::Config("oracle comparison needs a time axis".into()));
    }
    let diffs = map_states(cfg, |point, ch| {
        let evolved = ch.evolved.as_ref().expect("time axis present");
        let ev = EvolutionParams::new(point.decoherence, point.t.unwrap_or(0.0))?;
        let h = build_hamiltonian(&point.model);
        let ode = crate::dynamics::evolve_ode_oracle(&h, &point.initial.density()?, &ev, dt)?;
        Ok((evolved.matrix().max_abs_diff(ode.matrix()), *point))
    })?;
    let mut report = OracleReport {
        points: diffs.len(),
        max_diff: 0.0,
        worst: None,
    };
    for (d, p) in diffs {
        if report.worst.is_none() || d > report.max_diff {
            report.max_diff = d;
            report.worst = Some(p);
        }
    }
    Ok(report)
}
