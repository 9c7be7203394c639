//! End-to-end checks of computed results against the frozen reference data.
//!
//! `verify_shape` recomputes everything the reference entry records — layer
//! census, orbit table or per-rank minima, rank contrast — and reports the
//! first cell that disagrees. `None` means the shape reproduces exactly.

use crate::classify::{classify, rank_contrast_report};
use crate::error::Result;
use crate::expected::ExpectedShape;
use crate::group::ActionTables;
use crate::stratify::{stratify, StratifyLimits};
use crate::tensor::Layout;
use crate::text::render_canonical;

pub fn verify_shape(exp: &ExpectedShape, limits: &StratifyLimits) -> Result<Option<String>> {
    let shape = exp.shape();
    let layout = Layout::new(&shape);
    let table = stratify(&layout, limits)?;
    if table.truncated() {
        return Ok(Some(format!(
            "stratification truncated at rank {}",
            table.max_rank()
        )));
    }
    if table.max_rank() != exp.max_symmetric_rank {
        return Ok(Some(format!(
            "max symmetric rank: expected {}, computed {}",
            exp.max_symmetric_rank,
            table.max_rank()
        )));
    }
    for (rank, &want) in exp.layer_counts.iter().enumerate() {
        let got = table.layer_counts()[rank];
        if got != want {
            return Ok(Some(format!(
                "rank {rank} count: expected {want}, computed {got}"
            )));
        }
    }
    if table.sentinel_count() != exp.sentinel_count {
        return Ok(Some(format!(
            "tensors without symmetric decomposition: expected {}, computed {}",
            exp.sentinel_count,
            table.sentinel_count()
        )));
    }
    if let Some(rows) = exp.orbits {
        let tables = ActionTables::build(&layout, limits.memory_budget_bytes)?;
        let report = classify(&table, &layout, &tables)?;
        if report.records.len() != rows.len() {
            return Ok(Some(format!(
                "orbit count: expected {}, computed {}",
                rows.len(),
                report.records.len()
            )));
        }
        // both sides are ordered by (rank, canonical code)
        for (i, (want, got)) in rows.iter().zip(&report.records).enumerate() {
            if want.rank != got.rank {
                return Ok(Some(format!(
                    "orbit row {i}: rank expected {}, computed {}",
                    want.rank, got.rank
                )));
            }
            if want.size != got.size {
                return Ok(Some(format!(
                    "orbit row {i} (rank {}): size expected {}, computed {}",
                    want.rank, want.size, got.size
                )));
            }
            let rendered = render_canonical(&layout, &got.canonical);
            if rendered != want.canonical {
                return Ok(Some(format!(
                    "orbit row {i} (rank {}): canonical form expected {}, computed {}",
                    want.rank, want.canonical, rendered
                )));
            }
        }
    }
    if let Some(minima) = exp.minima {
        for (rank, literal) in minima {
            let want = exp.parse(literal)?;
            let got = table.layer_minimum(*rank)?;
            if got.code() != want.code() {
                return Ok(Some(format!(
                    "rank {rank} minimum: expected {}, computed {}",
                    render_canonical(&layout, &want),
                    render_canonical(&layout, &got)
                )));
            }
        }
    }
    if let Some(want_matrix) = exp.max_matrix_rank {
        let contrast = rank_contrast_report(&table, &layout)?;
        if contrast.max_matrix_rank != want_matrix {
            return Ok(Some(format!(
                "max matrix rank: expected {want_matrix}, computed {}",
                contrast.max_matrix_rank
            )));
        }
        if contrast.max_symmetric_rank != exp.max_symmetric_rank {
            return Ok(Some(format!(
                "max symmetric rank in contrast: expected {}, computed {}",
                exp.max_symmetric_rank, contrast.max_symmetric_rank
            )));
        }
    }
    Ok(None)
}
