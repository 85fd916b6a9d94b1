//! Parameter sweeps over the teleportation network pipeline.

use cvnet_core::qelement::{is_stable, stability_margins};
use cvnet_core::telenet::evaluate_network;
use cvnet_core::{NetworkSpec, Tolerances};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RunConfig, SweepVariable};
use crate::error::CliError;
use crate::format::{fmt_g, opt, CsvRecord};

/// One sweep point. CM-derived fields are absent when the element is unstable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub sweep_var: SweepVariable,
    pub value: f64,
    pub eta: f64,
    pub eta_minus: Option<f64>,
    #[serde(rename = "E_N")]
    pub e_n: Option<f64>,
    #[serde(rename = "F")]
    pub fidelity: Option<f64>,
    pub stable: bool,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "S2")]
    pub s2: f64,
    #[serde(rename = "S3")]
    pub s3: f64,
}

impl CsvRecord for ResultRow {
    fn header() -> &'static [&'static str] {
        &[
            "sweep_var",
            "value",
            "eta",
            "eta_minus",
            "E_N",
            "F",
            "stable",
            "S1",
            "S2",
            "S3",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.sweep_var.to_string(),
            fmt_g(self.value),
            fmt_g(self.eta),
            opt(self.eta_minus),
            opt(self.e_n),
            opt(self.fidelity),
            self.stable.to_string(),
            fmt_g(self.s1),
            fmt_g(self.s2),
            fmt_g(self.s3),
        ]
    }
}

/// The network with the swept variable set to `value`.
pub fn spec_at(base: &NetworkSpec, variable: SweepVariable, value: f64) -> NetworkSpec {
    let mut spec = *base;
    match variable {
        SweepVariable::NModes => spec.n_elements = value as usize,
        SweepVariable::Distance => spec.channel.distance = value,
        SweepVariable::Depth => spec.noise.depth = value,
        SweepVariable::G3 => spec.element.g3 = value,
    }
    spec
}

pub fn evaluate_point(
    base: &NetworkSpec,
    variable: SweepVariable,
    value: f64,
    tol: &Tolerances,
) -> Result<ResultRow, CliError> {
    let spec = spec_at(base, variable, value);
    let fail = |source| CliError::Compute {
        variable: variable.as_str(),
        value,
        source,
    };
    let margins = stability_margins(&spec.element);
    let stable = is_stable(&spec.element).map_err(fail)?;
    let mut row = ResultRow {
        sweep_var: variable,
        value,
        eta: spec.channel.transmissivity().map_err(fail)?,
        eta_minus: None,
        e_n: None,
        fidelity: None,
        stable,
        s1: margins.s1,
        s2: margins.s2,
        s3: margins.s3,
    };
    if stable {
        let out = evaluate_network(&spec, tol).map_err(fail)?;
        row.eta = out.eta;
        row.eta_minus = Some(out.eta_minus);
        row.e_n = Some(out.e_n);
        row.fidelity = Some(out.fidelity);
    }
    Ok(row)
}

/// Evaluates every sweep point, in parallel, returning rows in sweep order.
/// The first failing point in sweep order is reported.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<ResultRow>, CliError> {
    let values = cfg.sweep.values.to_vec();
    let variable = cfg.sweep.variable;
    let pool = thread_pool()?;
    let results: Vec<_> = pool.install(|| {
        values
            .par_iter()
            .map(|&v| evaluate_point(&cfg.network, variable, v, &cfg.tolerances))
            .collect()
    });
    results.into_iter().collect()
}

/// Thread pool honouring `CVNET_THREADS`.
fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("CVNET_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => builder = builder.num_threads(n),
            _ => {
                return Err(CliError::config(
                    "CVNET_THREADS",
                    format!("must be a positive integer, got {raw:?}"),
                ))
            }
        }
    }
    builder
        .build()
        .map_err(|e| CliError::Io(format!("cannot start worker threads: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{SweepSpec, SweepValues};
    use cvnet_core::{Channel, ElementParams, MicrowaveNoise};

    fn base() -> NetworkSpec {
        NetworkSpec {
            n_elements: 3,
            element: ElementParams::baseline(),
            noise: MicrowaveNoise::pure(0.497),
            channel: Channel {
                alpha: 0.005,
                distance: 0.1,
                eta0: 0.99,
            },
        }
    }

    fn config(variable: SweepVariable, values: Vec<f64>) -> RunConfig {
        RunConfig {
            network: base(),
            sweep: SweepSpec {
                variable,
                values: SweepValues::List(values),
            },
            outputs: None,
            tolerances: Tolerances::default(),
        }
    }

    #[test]
    fn spec_at_sets_one_field() {
        let b = base();
        assert_eq!(spec_at(&b, SweepVariable::NModes, 7.0).n_elements, 7);
        assert_eq!(
            spec_at(&b, SweepVariable::Distance, 2.5).channel.distance,
            2.5
        );
        assert_eq!(spec_at(&b, SweepVariable::Depth, 0.1).noise.depth, 0.1);
        let g = spec_at(&b, SweepVariable::G3, 0.3);
        assert_eq!(g.element.g3, 0.3);
        assert_eq!(g.element.g2, b.element.g2);
    }

    #[test]
    fn rows_in_sweep_order() {
        let values = vec![5.0, 2.0, 9.0, 3.0];
        let rows = run_sweep(&config(SweepVariable::NModes, values.clone())).unwrap();
        let got: Vec<_> = rows.iter().map(|r| r.value).collect();
        assert_eq!(got, values);
        assert!(rows.iter().all(|r| r.stable && r.fidelity.unwrap() > 0.0));
    }

    #[test]
    fn unstable_point_has_no_cm_fields() {
        let rows = run_sweep(&config(SweepVariable::G3, vec![0.14, 0.25])).unwrap();
        assert!(rows[0].stable && rows[0].e_n.is_some());
        assert!(!rows[1].stable);
        assert_eq!(
            (rows[1].eta_minus, rows[1].e_n, rows[1].fidelity),
            (None, None, None)
        );
        assert!(rows[1].s2 < 0.0);
        let fields = rows[1].fields();
        assert_eq!(&fields[3..6], &["", "", ""]);
    }

    #[test]
    fn compute_error_names_value() {
        let mut cfg = config(SweepVariable::Distance, vec![0.0, -1.0]);
        cfg.network.channel.alpha = 0.005;
        let err = run_sweep(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("distance = -1"), "{err}");
    }
}
