//! Orbit decomposition of rank layers and canonical forms.
//!
//! Rank is invariant under the diagonal GL_n(F_p) action (group elements
//! permute the simple tensors), so each rank layer splits into whole orbits.
//! The canonical form of an orbit is its lexically minimal member — by the
//! packed-code invariant, the member with the smallest code.
//!
//! Layer decomposition walks the layer's codes in ascending order. The
//! current minimum unclaimed code is necessarily the minimum of its own
//! orbit (orbits are disjoint and removed whole), so every seed *is* its
//! orbit's canonical form; the loop never searches for minima.

use crate::error::{Error, Result};
use crate::group::{act, enumerate_group, ActionTables, GroupElement};
use crate::stratify::RankTable;
use crate::tensor::{Layout, SymTensor};
use rayon::prelude::*;
use std::collections::HashSet;

/// One orbit of the diagonal action inside a rank layer.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub rank: u8,
    pub size: u64,
    /// Lexically minimal orbit member.
    pub canonical: SymTensor,
    /// Distinct canonical representatives carried per orbit (always 1; kept
    /// for report aggregation).
    pub witness_count: u32,
}

/// Full classification of a completed stratification.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub shape: crate::tensor::Shape,
    pub group_order: u64,
    pub layer_counts: Vec<u64>,
    pub sentinel_count: u64,
    /// Sorted by rank, then by canonical code.
    pub records: Vec<OrbitRecord>,
}

/// All distinct images of a code under the whole group, sorted ascending.
pub fn orbit_codes(layout: &Layout, tables: &ActionTables, code: u64) -> Vec<u64> {
    let d = layout.shape().free_count() as usize;
    let mut images: Vec<u64> = if tables.len() >= 16384 {
        (0..tables.len())
            .into_par_iter()
            .map_init(
                || vec![0u8; d],
                |buf, i| tables.apply_with(layout, i, code, buf),
            )
            .collect()
    } else {
        let mut buf = vec![0u8; d];
        (0..tables.len())
            .map(|i| tables.apply_with(layout, i, code, &mut buf))
            .collect()
    };
    images.par_sort_unstable();
    images.dedup();
    images
}

/// Lexically minimal orbit member.
pub fn canonical_form(layout: &Layout, tables: &ActionTables, t: &SymTensor) -> SymTensor {
    let min = orbit_codes(layout, tables, t.code())[0];
    SymTensor::new(*layout.shape(), min)
}

/// Split one rank layer into orbits; records come out with ascending
/// canonical codes, so the first record's canonical form is the layer
/// minimum.
pub fn decompose_layer(
    table: &RankTable,
    layout: &Layout,
    tables: &ActionTables,
    rank: u8,
) -> Result<Vec<OrbitRecord>> {
    if table.truncated() {
        return Err(Error::Truncated {
            max_rank: table.max_rank(),
        });
    }
    let codes = table.layer_codes(rank)?;
    let mut claimed: HashSet<u64> = HashSet::new();
    let mut records = Vec::new();
    for &seed in &codes {
        if claimed.contains(&seed) {
            continue;
        }
        let orbit = orbit_codes(layout, tables, seed);
        assert_eq!(
            orbit[0], seed,
            "ascending seed must be its orbit's minimum"
        );
        claimed.extend(&orbit);
        records.push(OrbitRecord {
            rank,
            size: orbit.len() as u64,
            canonical: SymTensor::new(*layout.shape(), seed),
            witness_count: 1,
        });
    }
    debug_assert_eq!(
        records.iter().map(|r| r.size).sum::<u64>(),
        codes.len() as u64,
        "orbits partition the layer"
    );
    Ok(records)
}

/// Classify every layer of a completed table. Before decomposing, the
/// compiled actions are cross-checked against the definitional mode-product
/// route on ~100 sampled (element, code) pairs.
pub fn classify(
    table: &RankTable,
    layout: &Layout,
    tables: &ActionTables,
) -> Result<ClassificationReport> {
    if table.truncated() {
        return Err(Error::Truncated {
            max_rank: table.max_rank(),
        });
    }
    cross_check_sample(layout, tables)?;
    let mut records = Vec::new();
    for rank in 0..=table.max_rank() {
        records.extend(decompose_layer(table, layout, tables, rank)?);
    }
    Ok(ClassificationReport {
        shape: *table.shape(),
        group_order: tables.len() as u64,
        layer_counts: table.layer_counts().to_vec(),
        sentinel_count: table.sentinel_count(),
        records,
    })
}

fn cross_check_sample(layout: &Layout, tables: &ActionTables) -> Result<()> {
    let space = layout.shape().code_space();
    let d = layout.shape().free_count() as usize;
    let mut buf = vec![0u8; d];
    for s in 0..100u64 {
        let i = (s.wrapping_mul(7919)) as usize % tables.len();
        let code = s.wrapping_mul(104_729) % space;
        let fast = tables.apply_with(layout, i, code, &mut buf);
        let slow = act(
            layout,
            &tables.element(i),
            &SymTensor::new(*layout.shape(), code),
        );
        if fast != slow.code() {
            return Err(Error::ActionMismatch {
                element_index: i as u64,
                code,
            });
        }
    }
    Ok(())
}

/// Orbit scan through the definitional route, streaming the group rather
/// than compiling it: returns the sorted orbit plus the first enumerated
/// element carrying `t` to the orbit minimum. Used for single-tensor
/// queries, where building action tables would dominate.
pub fn orbit_scan_with_witness(
    layout: &Layout,
    t: &SymTensor,
) -> Result<(Vec<u64>, GroupElement)> {
    let shape = layout.shape();
    let field = shape.field();
    let mut images = Vec::new();
    let mut best: Option<(u64, GroupElement)> = None;
    for g in enumerate_group(shape.n(), field)? {
        let image = act(layout, &g, t).code();
        images.push(image);
        if best.as_ref().is_none_or(|(m, _)| image < *m) {
            best = Some((image, g));
        }
    }
    images.sort_unstable();
    images.dedup();
    let (min, witness) = best.expect("group is never empty");
    debug_assert_eq!(min, images[0]);
    Ok((images, witness))
}

/// Ordinary matrix rank by Gaussian elimination; order-2 tensors only.
pub fn matrix_rank(layout: &Layout, t: &SymTensor) -> Result<u32> {
    let shape = layout.shape();
    if shape.k() != 2 {
        return Err(Error::RequiresOrderTwo { k: shape.k() });
    }
    let field = shape.field();
    let n = shape.n() as usize;
    let mut m = layout.flatten(t).into_entries();
    let mut rank = 0u32;
    let mut row = 0usize;
    for col in 0..n {
        let Some(pivot) = (row..n).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        if pivot != row {
            for c in 0..n {
                m.swap(pivot * n + c, row * n + c);
            }
        }
        let inv = field.inv(m[row * n + col]).expect("pivot is non-zero");
        for r in row + 1..n {
            let factor = field.mul(m[r * n + col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                m[r * n + c] = field.sub(m[r * n + c], field.mul(factor, m[row * n + c]));
            }
        }
        rank += 1;
        row += 1;
    }
    Ok(rank)
}

/// Cross-tabulation of symmetric rank against matrix rank over a whole
/// order-2 code space.
#[derive(Debug, Clone)]
pub struct RankContrast {
    /// (symmetric rank, matrix rank, count), sorted.
    pub cells: Vec<(u8, u32, u64)>,
    pub max_symmetric_rank: u8,
    pub max_matrix_rank: u32,
}

pub fn rank_contrast_report(table: &RankTable, layout: &Layout) -> Result<RankContrast> {
    let shape = layout.shape();
    if shape.k() != 2 {
        return Err(Error::RequiresOrderTwo { k: shape.k() });
    }
    if table.truncated() {
        return Err(Error::Truncated {
            max_rank: table.max_rank(),
        });
    }
    let mut counts: std::collections::BTreeMap<(u8, u32), u64> = std::collections::BTreeMap::new();
    for code in 0..shape.code_space() {
        let Some(sr) = table.rank_of(code) else {
            continue;
        };
        let mr = matrix_rank(layout, &SymTensor::new(*shape, code))?;
        *counts.entry((sr, mr)).or_insert(0) += 1;
    }
    let cells: Vec<(u8, u32, u64)> = counts.into_iter().map(|((s, m), c)| (s, m, c)).collect();
    let max_symmetric_rank = cells.iter().map(|&(s, _, _)| s).max().unwrap_or(0);
    let max_matrix_rank = cells.iter().map(|&(_, m, _)| m).max().unwrap_or(0);
    Ok(RankContrast {
        cells,
        max_symmetric_rank,
        max_matrix_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stratify::{stratify, StratifyLimits};
    use crate::tensor::Shape;
    use crate::text::{parse_literal, render_canonical};

    fn layout(n: u64, k: u64, p: u64) -> Layout {
        Layout::new(&Shape::new(n, k, p).unwrap())
    }

    fn setup(n: u64, k: u64, p: u64) -> (Layout, RankTable, ActionTables) {
        let l = layout(n, k, p);
        let table = stratify(&l, &StratifyLimits::default()).unwrap();
        let tables = ActionTables::build(&l, 1 << 30).unwrap();
        (l, table, tables)
    }

    #[test]
    fn f2_matrix_classification() {
        let (l, table, tables) = setup(3, 2, 2);
        let report = classify(&table, &l, &tables).unwrap();
        let rows: Vec<(u8, u64, String)> = report
            .records
            .iter()
            .map(|r| (r.rank, r.size, render_canonical(&l, &r.canonical)))
            .collect();
        assert_eq!(
            rows,
            vec![
                (0, 1, "[[0,0,0],[0,0,0],[0,0,0]]".into()),
                (1, 7, "[[0,0,0],[0,0,0],[0,0,1]]".into()),
                (2, 21, "[[0,0,0],[0,0,1],[0,1,1]]".into()),
                (3, 7, "[[0,0,0],[0,0,1],[0,1,0]]".into()),
                (3, 28, "[[0,0,1],[0,1,0],[1,0,0]]".into()),
            ]
        );
        assert_eq!(report.group_order, 168);
    }

    #[test]
    fn orbit_invariants_f2_matrices() {
        let (l, table, tables) = setup(3, 2, 2);
        for rank in 0..=table.max_rank() {
            let records = decompose_layer(&table, &l, &tables, rank).unwrap();
            let total: u64 = records.iter().map(|r| r.size).sum();
            assert_eq!(total, table.layer_counts()[rank as usize], "class equation");
            for r in &records {
                assert_eq!(168 % r.size, 0, "orbit size divides group order");
                // canonical form is a fixed point of canonicalisation
                let again = canonical_form(&l, &tables, &r.canonical);
                assert_eq!(again.code(), r.canonical.code());
            }
        }
    }

    #[test]
    fn whole_orbit_shares_canonical_form_and_rank() {
        let (l, table, tables) = setup(3, 2, 2);
        let records = decompose_layer(&table, &l, &tables, 2).unwrap();
        let rec = &records[0];
        for code in orbit_codes(&l, &tables, rec.canonical.code()) {
            let t = SymTensor::new(*l.shape(), code);
            assert_eq!(canonical_form(&l, &tables, &t).code(), rec.canonical.code());
            assert_eq!(table.rank_of(code), Some(2));
        }
    }

    #[test]
    fn classification_refuses_truncated_tables() {
        let l = layout(3, 2, 2);
        let limits = StratifyLimits {
            memory_budget_bytes: 1 << 30,
            max_rank: 2,
        };
        let table = stratify(&l, &limits).unwrap();
        assert!(table.truncated());
        let tables = ActionTables::build(&l, 1 << 30).unwrap();
        assert!(matches!(
            classify(&table, &l, &tables),
            Err(Error::Truncated { max_rank: 2 })
        ));
    }

    #[test]
    fn witness_carries_tensor_to_canonical_form() {
        let (l, table, tables) = setup(3, 2, 3);
        let records = decompose_layer(&table, &l, &tables, 2).unwrap();
        // take a non-canonical member of the bigger rank-2 orbit
        let rec = records.iter().find(|r| r.size == 78).unwrap();
        let member = *orbit_codes(&l, &tables, rec.canonical.code())
            .last()
            .unwrap();
        let t = SymTensor::new(*l.shape(), member);
        let (orbit, witness) = orbit_scan_with_witness(&l, &t).unwrap();
        assert_eq!(orbit.len() as u64, rec.size);
        assert_eq!(orbit[0], rec.canonical.code());
        assert_eq!(act(&l, &witness, &t).code(), rec.canonical.code());
    }

    /// Matrix rank via an independent oracle: the row span of an n×n matrix
    /// over F_p has exactly p^rank vectors.
    #[test]
    fn matrix_rank_matches_span_counting() {
        let l = layout(3, 2, 3);
        let field = l.shape().field();
        for code in 0..l.shape().code_space() {
            let t = SymTensor::new(*l.shape(), code);
            let m = l.flatten(&t).into_entries();
            let mut span: HashSet<[u8; 3]> = HashSet::new();
            for c0 in 0..3u8 {
                for c1 in 0..3u8 {
                    for c2 in 0..3u8 {
                        let mut v = [0u8; 3];
                        for (j, slot) in v.iter_mut().enumerate() {
                            let mut acc = 0u8;
                            for (i, &ci) in [c0, c1, c2].iter().enumerate() {
                                acc = field.add(acc, field.mul(ci, m[i * 3 + j]));
                            }
                            *slot = acc;
                        }
                        span.insert(v);
                    }
                }
            }
            let want = (span.len() as f64).log(3.0).round() as u32;
            assert_eq!(matrix_rank(&l, &t).unwrap(), want, "code {code}");
        }
    }

    #[test]
    fn matrix_rank_examples() {
        let l = layout(3, 2, 3);
        let anti = parse_literal(&l, "0,0,1,1,0,0").unwrap();
        assert_eq!(matrix_rank(&l, &anti).unwrap(), 3);
        assert_eq!(matrix_rank(&l, &SymTensor::zero(*l.shape())).unwrap(), 0);
        let l3 = layout(3, 3, 3);
        assert!(matches!(
            matrix_rank(&l3, &SymTensor::zero(*l3.shape())),
            Err(Error::RequiresOrderTwo { k: 3 })
        ));
    }

    /// Over F_3 the symmetric rank exceeds the matrix rank: the
    /// anti-diagonal form needs four simple tensors but has matrix rank 3.
    #[test]
    fn contrast_f3_matrices() {
        let (l, table, _) = setup(3, 2, 3);
        let contrast = rank_contrast_report(&table, &l).unwrap();
        assert_eq!(contrast.max_symmetric_rank, 4);
        assert_eq!(contrast.max_matrix_rank, 3);
        let total: u64 = contrast.cells.iter().map(|&(_, _, c)| c).sum();
        assert_eq!(total, 729);
        // every rank-4 tensor has matrix rank 3
        for &(sr, mr, _) in &contrast.cells {
            if sr == 4 {
                assert_eq!(mr, 3);
            }
        }
    }
}
