//! Deterministic SVG bar charts of effect sizes with standard-error
//! whiskers. Layout is computed with fixed-precision coordinates so
//! identical inputs render byte-identical documents.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// One plotted measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartRow {
    pub test_id: String,
    pub slice_label: String,
    pub d: f64,
    pub se: f64,
}

/// Which field forms the groups along the x axis; the other labels the
/// bars inside each group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    BySlice,
    ByTest,
}

const PALETTE: [&str; 6] = [
    "#4878a8", "#e4a33d", "#6aa56e", "#b55d5d", "#8d6cab", "#5ba8b5",
];

const BAR_WIDTH: f64 = 28.0;
const BAR_GAP: f64 = 6.0;
const GROUP_GAP: f64 = 30.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 64.0;
const PLOT_HEIGHT: f64 = 280.0;

fn px(v: f64) -> String {
    format!("{v:.2}")
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            other => out.push(other),
        }
    }
    out
}

fn sorted_unique(values: impl Iterator<Item = String>) -> Vec<String> {
    let mut v: Vec<String> = values.collect();
    v.sort();
    v.dedup();
    v
}

/// Renders `rows` as grouped bars of `d` with one-standard-error
/// whiskers. Groups and bars are ordered lexicographically, so the
/// output does not depend on row order.
pub fn render_chart(rows: &[ChartRow], grouping: Grouping, title: &str) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Config("chart input has no rows".into()));
    }
    let group_of = |row: &ChartRow| match grouping {
        Grouping::BySlice => row.slice_label.clone(),
        Grouping::ByTest => row.test_id.clone(),
    };
    let bar_of = |row: &ChartRow| match grouping {
        Grouping::BySlice => row.test_id.clone(),
        Grouping::ByTest => row.slice_label.clone(),
    };
    let groups = sorted_unique(rows.iter().map(group_of));
    let bars = sorted_unique(rows.iter().map(bar_of));

    let mut limit = 0.5f64;
    for row in rows {
        if !row.d.is_finite() || !row.se.is_finite() || row.se < 0.0 {
            return Err(Error::Config(format!(
                "non-finite chart value for {} / {}",
                row.test_id, row.slice_label
            )));
        }
        limit = limit.max(row.d.abs() + row.se);
    }
    let limit = (limit / 0.5).ceil() * 0.5;

    let group_width = bars.len() as f64 * (BAR_WIDTH + BAR_GAP) - BAR_GAP;
    let plot_width = groups.len() as f64 * (group_width + GROUP_GAP) - GROUP_GAP;
    let width = MARGIN_LEFT + plot_width + MARGIN_RIGHT;
    let height = MARGIN_TOP + PLOT_HEIGHT + MARGIN_BOTTOM;
    let y_of = |d: f64| MARGIN_TOP + (limit - d) / (2.0 * limit) * PLOT_HEIGHT;
    let zero_y = y_of(0.0);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        px(width),
        px(height),
        px(width),
        px(height)
    );
    let _ = writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>");
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\" fill=\"#222222\">{}</text>",
        px(width / 2.0),
        escape(title)
    );

    // Horizontal gridlines and axis labels at half-unit ticks.
    let mut tick = -limit;
    while tick <= limit + 1e-9 {
        let y = y_of(tick);
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\" stroke-width=\"1\"/>",
            px(MARGIN_LEFT),
            px(y),
            px(MARGIN_LEFT + plot_width),
            px(y)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">{:.1}</text>",
            px(MARGIN_LEFT - 8.0),
            px(y + 4.0),
            tick
        );
        tick += 0.5;
    }
    let _ = writeln!(
        svg,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>",
        px(MARGIN_LEFT),
        px(zero_y),
        px(MARGIN_LEFT + plot_width),
        px(zero_y)
    );

    for (gi, group) in groups.iter().enumerate() {
        let group_x = MARGIN_LEFT + gi as f64 * (group_width + GROUP_GAP);
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">{}</text>",
            px(group_x + group_width / 2.0),
            px(MARGIN_TOP + PLOT_HEIGHT + 20.0),
            escape(group)
        );
        for (bi, bar) in bars.iter().enumerate() {
            let Some(row) = rows
                .iter()
                .find(|r| group_of(r) == *group && bar_of(r) == *bar)
            else {
                continue;
            };
            let x = group_x + bi as f64 * (BAR_WIDTH + BAR_GAP);
            let top = y_of(row.d.max(0.0));
            let bar_height = (y_of(row.d) - zero_y).abs();
            let color = PALETTE[bi % PALETTE.len()];
            let _ = writeln!(
                svg,
                "<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"><title>{}</title></rect>",
                px(x),
                px(top),
                px(BAR_WIDTH),
                px(bar_height),
                color,
                escape(&format!(
                    "{} / {}: d = {:.4}, se = {:.4}",
                    row.test_id, row.slice_label, row.d, row.se
                ))
            );
            let cx = x + BAR_WIDTH / 2.0;
            let y_lo = y_of(row.d - row.se);
            let y_hi = y_of(row.d + row.se);
            let _ = writeln!(
                svg,
                "<line class=\"whisker\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#222222\" stroke-width=\"1.5\"/>",
                px(cx),
                px(y_hi),
                px(cx),
                px(y_lo)
            );
            for y in [y_hi, y_lo] {
                let _ = writeln!(
                    svg,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#222222\" stroke-width=\"1.5\"/>",
                    px(cx - 5.0),
                    px(y),
                    px(cx + 5.0),
                    px(y)
                );
            }
        }
    }

    // Legend, one swatch per bar label.
    for (bi, bar) in bars.iter().enumerate() {
        let y = MARGIN_TOP + PLOT_HEIGHT + 40.0;
        let x = MARGIN_LEFT + bi as f64 * 150.0;
        let _ = writeln!(
            svg,
            "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>",
            px(x),
            px(y - 10.0),
            PALETTE[bi % PALETTE.len()]
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222222\">{}</text>",
            px(x + 18.0),
            px(y),
            escape(bar)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders and writes the chart to `path`.
pub fn write_chart_path(
    path: &Path,
    rows: &[ChartRow],
    grouping: Grouping,
    title: &str,
) -> Result<()> {
    let svg = render_chart(rows, grouping, title)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
