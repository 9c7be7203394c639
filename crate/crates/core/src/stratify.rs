//! Symmetric-rank stratification by breadth-first closure.
//!
//! Rank r is the least number of simple symmetric tensors u⊗⋯⊗u summing to
//! a tensor, i.e. graph distance from 0 in the Cayley graph of (F_p^D, +)
//! generated by the simple tensors. We expand layer by layer over a dense
//! byte map of the whole code space: layer r+1 is every unassigned code
//! reachable as (layer-r code) + (simple code).
//!
//! Codes that are never reached keep the sentinel 255 — over these fields
//! some tensors have no symmetric decomposition at all (for 3×3×3×3 over
//! F_2, all but 128 of the 32768).
//!
//! Claims go through `AtomicU8::compare_exchange`, and every writer in a
//! pass writes the same rank value, so the resulting table is identical for
//! any number of worker threads; the frontier is re-sorted between passes
//! only to keep iteration order deterministic too.

use crate::error::{Error, Result};
use crate::tensor::{CodeAdder, Layout, Shape, SymTensor};
use rayon::prelude::*;
use std::sync::atomic::{AtomicU8, Ordering};

/// Rank byte reserved for "no symmetric decomposition" (or, in truncated
/// tables, "not reached before the cutoff").
pub const NO_DECOMPOSITION: u8 = 255;

/// Resource limits for a stratification run.
#[derive(Debug, Clone, Copy)]
pub struct StratifyLimits {
    /// The dense rank map needs one byte per code; runs needing more than
    /// this are refused up front.
    pub memory_budget_bytes: u64,
    /// Highest rank to expand to. 254 is the hard ceiling (255 is the
    /// sentinel); the default of 32 is far above every known shape.
    pub max_rank: u8,
}

impl Default for StratifyLimits {
    fn default() -> Self {
        StratifyLimits {
            memory_budget_bytes: 1 << 30,
            max_rank: 32,
        }
    }
}

/// The completed (or truncated) stratification: one rank byte per code.
#[derive(Clone)]
pub struct RankTable {
    shape: Shape,
    ranks: Vec<u8>,
    layer_counts: Vec<u64>,
    max_rank: u8,
    truncated: bool,
}

impl std::fmt::Debug for RankTable {
    /// Summarised: the rank vector itself can run to millions of entries.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RankTable")
            .field("shape", &self.shape)
            .field("layer_counts", &self.layer_counts)
            .field("max_rank", &self.max_rank)
            .field("truncated", &self.truncated)
            .finish_non_exhaustive()
    }
}

pub fn stratify(layout: &Layout, limits: &StratifyLimits) -> Result<RankTable> {
    stratify_with_progress(layout, limits, |_, _| ())
}

/// Like [`stratify`], calling `progress(rank, added)` as each layer
/// finishes — the hook long runs use for per-pass logging.
pub fn stratify_with_progress(
    layout: &Layout,
    limits: &StratifyLimits,
    mut progress: impl FnMut(u8, u64),
) -> Result<RankTable> {
    let shape = *layout.shape();
    let space = shape.code_space();
    if space > limits.memory_budget_bytes {
        return Err(Error::MemoryBudget {
            required_bytes: space,
            budget_bytes: limits.memory_budget_bytes,
        });
    }
    let max_rank = limits.max_rank.min(254);

    let ranks: Vec<AtomicU8> = (0..space).map(|_| AtomicU8::new(NO_DECOMPOSITION)).collect();
    ranks[0].store(0, Ordering::Relaxed);
    let mut layer_counts: Vec<u64> = vec![1];

    if max_rank == 0 {
        return Ok(finish(shape, ranks, layer_counts, 0, space > 1));
    }

    let simples = simple_codes(layout);
    let mut frontier: Vec<u64> = simples
        .iter()
        .copied()
        .filter(|&c| {
            ranks[c as usize]
                .compare_exchange(NO_DECOMPOSITION, 1, Ordering::Relaxed, Ordering::Relaxed)
                .is_ok()
        })
        .collect();
    debug_assert_eq!(frontier.len(), simples.len(), "simple codes are distinct and non-zero");
    layer_counts.push(frontier.len() as u64);
    progress(1, frontier.len() as u64);

    let adder = CodeAdder::new(&shape);
    let mut rank = 1u8;
    let mut truncated = false;
    loop {
        if rank == max_rank {
            let assigned: u64 = layer_counts.iter().sum();
            truncated = assigned < space;
            break;
        }
        let next_rank = rank + 1;
        let mut claimed: Vec<u64> = frontier
            .par_chunks(4096)
            .map(|chunk| {
                let mut local = Vec::new();
                for &t in chunk {
                    for &s in &simples {
                        let c = adder.add(t, s);
                        if ranks[c as usize]
                            .compare_exchange(
                                NO_DECOMPOSITION,
                                next_rank,
                                Ordering::Relaxed,
                                Ordering::Relaxed,
                            )
                            .is_ok()
                        {
                            local.push(c);
                        }
                    }
                }
                local
            })
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            });
        if claimed.is_empty() {
            break;
        }
        claimed.par_sort_unstable();
        layer_counts.push(claimed.len() as u64);
        progress(next_rank, claimed.len() as u64);
        frontier = claimed;
        rank = next_rank;
    }

    Ok(finish(shape, ranks, layer_counts, rank, truncated))
}

fn finish(
    shape: Shape,
    ranks: Vec<AtomicU8>,
    layer_counts: Vec<u64>,
    max_rank: u8,
    truncated: bool,
) -> RankTable {
    let ranks: Vec<u8> = ranks.into_iter().map(AtomicU8::into_inner).collect();
    RankTable {
        shape,
        ranks,
        layer_counts,
        max_rank,
        truncated,
    }
}

/// Distinct codes of the simple tensors u⊗⋯⊗u, u ≠ 0, sorted ascending.
pub fn simple_codes(layout: &Layout) -> Vec<u64> {
    let shape = layout.shape();
    let (n, p) = (shape.n() as usize, shape.p());
    let mut codes = Vec::new();
    let mut u = vec![0u8; n];
    // odometer over F_p^n, skipping u = 0
    while let Some(j) = u.iter().rposition(|&x| x + 1 < p) {
        u[j] += 1;
        for x in &mut u[j + 1..] {
            *x = 0;
        }
        codes.push(layout.outer_power(&u).expect("u is non-zero").code());
    }
    codes.sort_unstable();
    codes.dedup();
    codes
}

impl RankTable {
    /// Rebuild from raw parts (table file loads); validates counts.
    pub(crate) fn from_parts(
        shape: Shape,
        ranks: Vec<u8>,
        max_rank: u8,
        truncated: bool,
    ) -> Result<RankTable> {
        if ranks.len() as u64 != shape.code_space() {
            return Err(Error::FileFormat(format!(
                "rank map holds {} bytes, shape needs {}",
                ranks.len(),
                shape.code_space()
            )));
        }
        let mut layer_counts = vec![0u64; max_rank as usize + 1];
        for &r in &ranks {
            if r == NO_DECOMPOSITION {
                continue;
            }
            if r > max_rank {
                return Err(Error::FileFormat(format!(
                    "rank byte {r} above declared maximum {max_rank}"
                )));
            }
            layer_counts[r as usize] += 1;
        }
        if layer_counts.len() > 1 && *layer_counts.last().unwrap() == 0 {
            return Err(Error::FileFormat(format!(
                "declared maximum rank {max_rank} has an empty layer"
            )));
        }
        Ok(RankTable {
            shape,
            ranks,
            layer_counts,
            max_rank,
            truncated,
        })
    }

    #[inline]
    pub fn shape(&self) -> &Shape {
        &self.shape
    }
    /// One byte per code; [`NO_DECOMPOSITION`] for codes without a rank.
    #[inline]
    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }
    /// Codes per rank, index = rank. Sums to code_space − sentinel_count.
    #[inline]
    pub fn layer_counts(&self) -> &[u64] {
        &self.layer_counts
    }
    #[inline]
    pub fn max_rank(&self) -> u8 {
        self.max_rank
    }
    /// True when the max-rank cutoff stopped expansion with codes still
    /// unassigned, so sentinels cannot be read as "no decomposition".
    #[inline]
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn rank_of(&self, code: u64) -> Option<u8> {
        match self.ranks[code as usize] {
            NO_DECOMPOSITION => None,
            r => Some(r),
        }
    }

    pub fn sentinel_count(&self) -> u64 {
        self.shape.code_space() - self.layer_counts.iter().sum::<u64>()
    }

    /// All codes of one rank, ascending (scan order = code order).
    pub fn layer_codes(&self, rank: u8) -> Result<Vec<u64>> {
        self.check_rank(rank)?;
        Ok(self
            .ranks
            .iter()
            .enumerate()
            .filter(|&(_, &r)| r == rank)
            .map(|(c, _)| c as u64)
            .collect())
    }

    /// Lexically minimal tensor of one rank layer.
    pub fn layer_minimum(&self, rank: u8) -> Result<SymTensor> {
        self.check_rank(rank)?;
        self.ranks
            .iter()
            .position(|&r| r == rank)
            .map(|c| SymTensor::new(self.shape, c as u64))
            .ok_or(Error::EmptyLayer { rank })
    }

    fn check_rank(&self, rank: u8) -> Result<()> {
        if rank > self.max_rank {
            return Err(Error::RankOutOfRange {
                rank,
                max_rank: self.max_rank,
            });
        }
        Ok(())
    }
}
