//! JSON and CSV emission for experiment reports.

use serde::Serialize;
use std::path::Path;

use super::WindowReport;
use crate::Result;

/// `{experiment, params, seed, per_window, summary}`.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport<P, W, S> {
    pub experiment: String,
    pub params: P,
    pub seed: Option<u64>,
    pub per_window: Vec<W>,
    pub summary: S,
}

impl<P: Serialize, W: Serialize, S: Serialize> ExperimentReport<P, W, S> {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }
}

/// Flat CSV row for a [`WindowReport`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowRow {
    pub x: u64,
    pub h: u64,
    pub function: String,
    pub short_re: f64,
    pub short_im: f64,
    pub main_re: Option<f64>,
    pub main_im: Option<f64>,
    pub proxy_re: Option<f64>,
    pub proxy_im: Option<f64>,
    pub proxy_y1: Option<u64>,
    pub relative_defect_main: Option<f64>,
    pub relative_defect_proxy: Option<f64>,
}

impl From<&WindowReport> for WindowRow {
    fn from(r: &WindowReport) -> Self {
        Self {
            x: r.interval.x(),
            h: r.interval.h(),
            function: r.function.clone(),
            short_re: r.short_sum.re,
            short_im: r.short_sum.im,
            main_re: r.main_term.map(|z| z.re),
            main_im: r.main_term.map(|z| z.im),
            proxy_re: r.proxy_term.map(|z| z.re),
            proxy_im: r.proxy_term.map(|z| z.im),
            proxy_y1: r.proxy_window.map(|w| w.h()),
            relative_defect_main: r.relative_defect_main,
            relative_defect_proxy: r.relative_defect_proxy,
        }
    }
}

/// One CSV row per element, with a header.
pub fn write_csv<T: Serialize, W: std::io::Write>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
