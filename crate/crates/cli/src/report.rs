//! Table rows and their CSV, markdown and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tsmix_core::analysis::Estimate;
use tsmix_core::{ExperimentConfig, MetricsSummary};

use crate::error::CliError;

/// Column order of every CSV table. Changing it breaks downstream scripts.
pub const CSV_HEADER: &str =
    "policy,params,effect_size,n,n_sims,seed,fpr,fpr_se,power,power_se,type_s,type_s_se,\
reward,reward_se,prop_opt,prop_opt_se,prop_sup,prop_sup_se";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Json,
}

/// One policy/environment cell of a results table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub policy: String,
    pub params: String,
    pub effect_size: f64,
    pub n: u64,
    pub n_sims: u64,
    pub seed: u64,
    pub fpr: Option<f64>,
    pub fpr_se: Option<f64>,
    pub power: Option<f64>,
    pub power_se: Option<f64>,
    pub type_s: Option<f64>,
    pub type_s_se: Option<f64>,
    pub reward: Option<f64>,
    pub reward_se: Option<f64>,
    pub prop_opt: Option<f64>,
    pub prop_opt_se: Option<f64>,
    pub prop_sup: Option<f64>,
    pub prop_sup_se: Option<f64>,
}

fn split(e: Option<Estimate>) -> (Option<f64>, Option<f64>) {
    (e.map(|e| e.value), e.map(|e| e.se))
}

impl ReportRow {
    pub fn new(config: &ExperimentConfig, summary: &MetricsSummary) -> Self {
        let (fpr, fpr_se) = split(summary.fpr());
        let (power, power_se) = split(summary.power());
        let (type_s, type_s_se) = split(Some(summary.type_s));
        let (reward, reward_se) = split(Some(summary.reward));
        let (prop_opt, prop_opt_se) = split(summary.prop_opt);
        let (prop_sup, prop_sup_se) = split(Some(summary.prop_sup));
        Self {
            policy: config.policy.kind().name().to_string(),
            params: config.policy.params(),
            effect_size: config.effect_size,
            n: config.n,
            n_sims: config.n_sims,
            seed: config.base_seed,
            fpr,
            fpr_se,
            power,
            power_se,
            type_s,
            type_s_se,
            reward,
            reward_se,
            prop_opt,
            prop_opt_se,
            prop_sup,
            prop_sup_se,
        }
    }
}

pub fn emit_table(rows: &[ReportRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => to_csv(rows),
        Format::Md => Ok(to_markdown(rows)),
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
    }
}

/// CSV with full float precision; parses back to identical rows.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn parse_csv(text: &str) -> Result<Vec<ReportRow>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

fn cell(value: Option<f64>, se: Option<f64>) -> String {
    match (value, se) {
        (Some(v), Some(se)) => format!("{v:.3} ({se:.3})"),
        (Some(v), None) => format!("{v:.3}"),
        _ => String::new(),
    }
}

pub fn to_markdown(rows: &[ReportRow]) -> String {
    let mut out = String::from(
        "| Policy | Params | Effect size | n | FPR | Power | Type-S | Reward | Prop. Opt. | Prop. Sup. |\n\
         |---|---|---|---|---|---|---|---|---|---|\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.policy,
            r.params,
            r.effect_size,
            r.n,
            cell(r.fpr, r.fpr_se),
            cell(r.power, r.power_se),
            cell(r.type_s, r.type_s_se),
            cell(r.reward, r.reward_se),
            cell(r.prop_opt, r.prop_opt_se),
            cell(r.prop_sup, r.prop_sup_se),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> ReportRow {
        ReportRow {
            policy: "uniform".into(),
            params: String::new(),
            effect_size: 0.0,
            n: 785,
            n_sims: 10_000,
            seed: 7,
            fpr: Some(0.0549),
            fpr_se: Some(0.00228),
            power: None,
            power_se: None,
            type_s: Some(0.0),
            type_s_se: Some(0.0),
            reward: Some(0.5001),
            reward_se: Some(0.00018),
            prop_opt: None,
            prop_opt_se: None,
            prop_sup: Some(0.4987),
            prop_sup_se: Some(0.005),
        }
    }

    #[test]
    fn header_order() {
        let csv = to_csv(&[row()]).unwrap();
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
    }

    #[test]
    fn absent_metrics_are_empty_cells() {
        let csv = to_csv(&[row()]).unwrap();
        let line = csv.lines().nth(1).unwrap();
        assert_eq!(
            line,
            "uniform,,0.0,785,10000,7,0.0549,0.00228,,,0.0,0.0,0.5001,0.00018,,,0.4987,0.005"
        );
    }

    #[test]
    fn markdown_cells() {
        let md = to_markdown(&[row()]);
        assert!(md.contains("| 0.055 (0.002) |  |"), "{md}");
    }

    #[test]
    fn json_is_array_of_objects() {
        let json = emit_table(&[row(), row()], Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert_eq!(v[0]["n"], 785);
        assert!(v[0]["power"].is_null());
    }
}
