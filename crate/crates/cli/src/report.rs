//! Serializable run reports and their textual renderings.
//!
//! A [`Report`] is the machine-readable face of one run: shape, group
//! order, per-rank counts, and (for classification runs) the orbit rows
//! with canonical forms as free digits, most significant first. Every
//! renderer consumes only the report itself — nothing from the run that
//! produced it — so a report that round-trips through JSON renders
//! byte-identically to the original.

use serde::{Deserialize, Serialize};
use symrank_core::expected::percent_string;
use symrank_core::text::render_canonical;
use symrank_core::{ClassificationReport, Layout, Shape, SymTensor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub p: u8,
    pub n: u8,
    pub k: u8,
    pub group_order: u64,
    /// Tensor count per rank, index = rank.
    pub layer_counts: Vec<u64>,
    /// Tensors with no symmetric decomposition.
    pub sentinel_count: u64,
    /// Present only for classification runs.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbits: Option<Vec<OrbitRow>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub rank: u8,
    pub size: u64,
    /// Free digits of the canonical code, most significant first.
    pub canonical_digits: Vec<u8>,
}

impl Report {
    pub fn from_classification(layout: &Layout, cls: &ClassificationReport) -> Report {
        let shape = cls.shape;
        Report {
            p: shape.p(),
            n: shape.n(),
            k: shape.k(),
            group_order: cls.group_order,
            layer_counts: cls.layer_counts.clone(),
            sentinel_count: cls.sentinel_count,
            orbits: Some(
                cls.records
                    .iter()
                    .map(|r| OrbitRow {
                        rank: r.rank,
                        size: r.size,
                        canonical_digits: layout.digits_of(r.canonical.code()),
                    })
                    .collect(),
            ),
        }
    }

    fn layout(&self) -> Layout {
        let shape = Shape::new(u64::from(self.n), u64::from(self.k), u64::from(self.p))
            .expect("reports are built from validated shapes");
        Layout::new(&shape)
    }
}

/// Decimal places for the percentage column; order 3 tables use two, the
/// others four.
fn percent_decimals(k: u8) -> usize {
    if k == 3 {
        2
    } else {
        4
    }
}

/// Human-readable table: shape header, rank distribution, sentinel line,
/// and — when present — the orbit table in display convention (bracketed
/// matrix for order 2, dotted entry list otherwise).
pub fn render_plain(report: &Report) -> String {
    let layout = report.layout();
    let shape = *layout.shape();
    let space = shape.code_space();
    let decimals = percent_decimals(report.k);
    let mut out = format!(
        "p={} n={} k={}: {} tensors, group order {}\n",
        report.p, report.n, report.k, space, report.group_order
    );
    for (rank, &count) in report.layer_counts.iter().enumerate() {
        out += &format!(
            "rank {rank}: {count} ({}%)\n",
            percent_string(count, space, decimals)
        );
    }
    out += &format!(
        "no symmetric decomposition: {} ({}%)\n",
        report.sentinel_count,
        percent_string(report.sentinel_count, space, decimals)
    );
    if let Some(rows) = &report.orbits {
        out += "\nsymmetric rank | orbit size | canonical form\n";
        for row in rows {
            let t = SymTensor::new(shape, layout.code_of(&row.canonical_digits));
            out += &format!(
                "{} | {} | {}\n",
                row.rank,
                row.size,
                render_canonical(&layout, &t)
            );
        }
    }
    out
}

/// One CSV table per report: `rank,count,percent` for stratifications
/// (sentinels on a final `none` row), `rank,size,canonical` for
/// classifications, canonical forms as space-separated free digits.
pub fn render_csv(report: &Report) -> String {
    let space = report.layout().shape().code_space();
    let decimals = percent_decimals(report.k);
    match &report.orbits {
        None => {
            let mut out = String::from("rank,count,percent\n");
            for (rank, &count) in report.layer_counts.iter().enumerate() {
                out += &format!("{rank},{count},{}\n", percent_string(count, space, decimals));
            }
            out += &format!(
                "none,{},{}\n",
                report.sentinel_count,
                percent_string(report.sentinel_count, space, decimals)
            );
            out
        }
        Some(rows) => {
            let mut out = String::from("rank,size,canonical\n");
            for row in rows {
                let digits: Vec<String> =
                    row.canonical_digits.iter().map(u8::to_string).collect();
                out += &format!("{},{},{}\n", row.rank, row.size, digits.join(" "));
            }
            out
        }
    }
}

pub fn render_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use symrank_core::{classify, stratify, ActionTables, StratifyLimits};

    fn classification_report(n: u64, k: u64, p: u64) -> Report {
        let shape = Shape::new(n, k, p).unwrap();
        let layout = Layout::new(&shape);
        let limits = StratifyLimits::default();
        let table = stratify(&layout, &limits).unwrap();
        let tables = ActionTables::build(&layout, limits.memory_budget_bytes).unwrap();
        let cls = classify(&table, &layout, &tables).unwrap();
        Report::from_classification(&layout, &cls)
    }

    #[test]
    fn json_round_trip_renders_byte_identically() {
        let report = classification_report(3, 2, 2);
        let back: Report = serde_json::from_str(&render_json(&report)).unwrap();
        assert_eq!(back, report);
        assert_eq!(render_plain(&back), render_plain(&report));
        assert_eq!(render_csv(&back), render_csv(&report));
    }

    #[test]
    fn stratification_reports_omit_the_orbits_key() {
        let mut report = classification_report(3, 2, 2);
        report.orbits = None;
        let json = render_json(&report);
        assert!(!json.contains("orbits"));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn plain_rendering_matches_reference_rows() {
        let report = classification_report(3, 2, 2);
        let plain = render_plain(&report);
        assert!(plain.starts_with("p=2 n=3 k=2: 64 tensors, group order 168\n"));
        assert!(plain.contains("rank 3: 35 (54.6875%)\n"));
        assert!(plain.contains("no symmetric decomposition: 0 (0.0000%)\n"));
        assert!(plain.contains("2 | 21 | [[0,0,0],[0,0,1],[0,1,1]]\n"));
        assert!(plain.contains("3 | 28 | [[0,0,1],[0,1,0],[1,0,0]]\n"));
    }

    #[test]
    fn csv_rendering_switches_on_orbit_presence() {
        let mut report = classification_report(3, 2, 2);
        let orbit_csv = render_csv(&report);
        assert!(orbit_csv.starts_with("rank,size,canonical\n"));
        assert!(orbit_csv.contains("2,21,0 0 0 0 1 1\n"));
        report.orbits = None;
        let strata_csv = render_csv(&report);
        assert!(strata_csv.starts_with("rank,count,percent\n"));
        assert!(strata_csv.contains("3,35,54.6875\n"));
        assert!(strata_csv.ends_with("none,0,0.0000\n"));
    }
}
