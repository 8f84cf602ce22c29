//! CSV tables, SVG plots and the run metadata file.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use plotters::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;

pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<OutDir> {
        fs::create_dir_all(root).with_context(|| format!("creating {}", root.display()))?;
        Ok(OutDir { root: root.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    /// Writes the header even when there are no rows.
    pub fn csv<R: Serialize>(&self, name: &str, header: &[&str], rows: &[R]) -> Result<()> {
        let path = self.path(name);
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_path(&path)
            .with_context(|| format!("writing {}", path.display()))?;
        w.write_record(header)?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    /// `metadata.json`: the resolved config, crate versions, the frozen
    /// constants the command compares against, and command-specific results.
    pub fn metadata(&self, cfg: &RunConfig, frozen: &[(&str, f64)], results: Value) -> Result<()> {
        let frozen: serde_json::Map<String, Value> = frozen.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        let meta = json!({
            "config": cfg,
            "versions": {
                "smoothdisc": smoothdisc::VERSION,
                "smoothdisc-cli": env!("CARGO_PKG_VERSION"),
            },
            "frozen_constants": frozen,
            "results": results,
        });
        let path = self.path("metadata.json");
        fs::write(&path, serde_json::to_string_pretty(&meta)? + "\n").with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const PALETTE: [RGBColor; 5] = [BLUE, RED, GREEN, MAGENTA, BLACK];

/// Line plot with a log-scaled x axis; the y axis is log-scaled when asked and
/// every value is positive.
pub fn plot(path: &Path, title: &str, x_label: &str, y_label: &str, series: &[Series], log_y: bool) -> Result<()> {
    let pts = || series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    if pts().next().is_none() {
        return Ok(());
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts() {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 <= x0 {
        x1 = x0 * 2.0;
    }
    let log_y = log_y && y0 > 0.0;
    let (y0, y1) = if log_y {
        (y0 / 1.5, if y1 > y0 { y1 * 1.5 } else { y0 * 3.0 })
    } else {
        let pad = ((y1 - y0) * 0.1).max(1e-3 * y1.abs().max(1.0));
        (y0.min(0.0) - pad, y1 + pad)
    };

    let root = SVGBackend::new(path, (900, 560)).into_drawing_area();
    root.fill(&WHITE).map_err(plot_err)?;
    let mut builder = ChartBuilder::on(&root);
    builder.caption(title, ("sans-serif", 22)).margin(16).x_label_area_size(44).y_label_area_size(70);
    macro_rules! draw {
        ($chart:expr) => {{
            let mut chart = $chart;
            chart.configure_mesh().x_desc(x_label).y_desc(y_label).draw().map_err(plot_err)?;
            for (i, s) in series.iter().enumerate() {
                let color = PALETTE[i % PALETTE.len()];
                let line: Vec<(f64, f64)> = s.points.iter().copied().filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
                chart
                    .draw_series(LineSeries::new(line.clone(), color.stroke_width(2)))
                    .map_err(plot_err)?
                    .label(s.label.as_str())
                    .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 18, y)], color.stroke_width(2)));
                chart.draw_series(line.iter().map(|&p| Circle::new(p, 3, color.filled()))).map_err(plot_err)?;
            }
            chart.configure_series_labels().background_style(WHITE.mix(0.8)).border_style(BLACK).draw().map_err(plot_err)?;
        }};
    }
    if log_y {
        draw!(builder.build_cartesian_2d((x0..x1).log_scale(), (y0..y1).log_scale()).map_err(plot_err)?);
    } else {
        draw!(builder.build_cartesian_2d((x0..x1).log_scale(), y0..y1).map_err(plot_err)?);
    }
    root.present().map_err(plot_err)?;
    Ok(())
}

fn plot_err<E: std::fmt::Display>(e: E) -> anyhow::Error {
    anyhow::anyhow!("plotting: {e}")
}
