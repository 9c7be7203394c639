//! Frozen reference results for the shapes this engine targets.
//!
//! Each entry records the layer census (tensor count per symmetric rank,
//! plus the count with no symmetric decomposition), the percentage strings
//! at the precision the reports use, and — where the full orbit
//! decomposition is tabulated — every orbit's size and canonical form.
//! Shapes whose group is too large to tabulate orbit-by-orbit instead carry
//! the lexically minimal tensor of each rank layer.
//!
//! Canonical forms are stored in the same text formats the renderer emits:
//! matrix literals for order 2, flattened dot strings for order 3. Order-4
//! minima are stored as 15-token free-entry dot strings (one token per
//! sorted index), which the parser accepts directly.

use crate::error::Result;
use crate::tensor::{Layout, Shape, SymTensor};
use crate::text::parse_canonical;

#[derive(Debug, Clone, Copy)]
pub struct ExpectedOrbit {
    pub rank: u8,
    pub size: u64,
    pub canonical: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct ExpectedShape {
    pub p: u8,
    pub n: u8,
    pub k: u8,
    /// Tensor count per rank, index = rank.
    pub layer_counts: &'static [u64],
    /// Tensors with no symmetric decomposition.
    pub sentinel_count: u64,
    /// Decimal places used for this shape's percentage column.
    pub percent_decimals: usize,
    /// Percentage of the code space per rank, index = rank.
    pub percentages: &'static [&'static str],
    /// Full orbit table, ordered by (rank, canonical code); `None` when the
    /// group was not applied.
    pub orbits: Option<&'static [ExpectedOrbit]>,
    /// Per-rank lexical minima for shapes without an orbit table.
    pub minima: Option<&'static [(u8, &'static str)]>,
    /// Largest ordinary matrix rank in the space (order 2 only).
    pub max_matrix_rank: Option<u32>,
    pub max_symmetric_rank: u8,
}

impl ExpectedShape {
    pub fn shape(&self) -> Shape {
        Shape::new(u64::from(self.n), u64::from(self.k), u64::from(self.p))
            .expect("reference shapes are valid")
    }

    pub fn parse(&self, literal: &str) -> Result<SymTensor> {
        parse_canonical(&Layout::new(&self.shape()), literal)
    }
}

const ORBITS_2_3_2: &[ExpectedOrbit] = &[
    ExpectedOrbit { rank: 0, size: 1, canonical: "[[0,0,0],[0,0,0],[0,0,0]]" },
    ExpectedOrbit { rank: 1, size: 7, canonical: "[[0,0,0],[0,0,0],[0,0,1]]" },
    ExpectedOrbit { rank: 2, size: 21, canonical: "[[0,0,0],[0,0,1],[0,1,1]]" },
    ExpectedOrbit { rank: 3, size: 7, canonical: "[[0,0,0],[0,0,1],[0,1,0]]" },
    ExpectedOrbit { rank: 3, size: 28, canonical: "[[0,0,1],[0,1,0],[1,0,0]]" },
];

const ORBITS_3_3_2: &[ExpectedOrbit] = &[
    ExpectedOrbit { rank: 0, size: 1, canonical: "[[0,0,0],[0,0,0],[0,0,0]]" },
    ExpectedOrbit { rank: 1, size: 13, canonical: "[[0,0,0],[0,0,0],[0,0,1]]" },
    ExpectedOrbit { rank: 2, size: 13, canonical: "[[0,0,0],[0,0,0],[0,0,2]]" },
    ExpectedOrbit { rank: 2, size: 78, canonical: "[[0,0,0],[0,1,0],[0,0,1]]" },
    ExpectedOrbit { rank: 3, size: 156, canonical: "[[0,0,0],[0,0,1],[0,1,0]]" },
    ExpectedOrbit { rank: 3, size: 234, canonical: "[[0,0,1],[0,2,0],[1,0,0]]" },
    ExpectedOrbit { rank: 4, size: 234, canonical: "[[0,0,1],[0,1,0],[1,0,0]]" },
];

const MINIMA_5_3_2: &[(u8, &str)] = &[
    (0, "[[0,0,0],[0,0,0],[0,0,0]]"),
    (1, "[[0,0,0],[0,0,0],[0,0,1]]"),
    (2, "[[0,0,0],[0,0,0],[0,0,2]]"),
    (3, "[[0,0,0],[0,1,0],[0,0,2]]"),
    (4, "[[0,0,1],[0,2,0],[1,0,0]]"),
];

const ORBITS_2_3_3: &[ExpectedOrbit] = &[
    ExpectedOrbit {
        rank: 0,
        size: 1,
        canonical: "· · · · · · · · · · · · · · · · · · · · · · · · · · ·",
    },
    ExpectedOrbit {
        rank: 1,
        size: 7,
        canonical: "· · · · · · · · · · · · · · · · · · · · · · · · · · 1",
    },
    ExpectedOrbit {
        rank: 2,
        size: 21,
        canonical: "· · · · · · · · · · · · · · 1 · 1 1 · · · · 1 1 · 1 1",
    },
    ExpectedOrbit {
        rank: 3,
        size: 7,
        canonical: "· · · · · · · · · · · · · · 1 · 1 1 · · · · 1 1 · 1 ·",
    },
    ExpectedOrbit {
        rank: 3,
        size: 28,
        canonical: "· · 1 · · · 1 · 1 · · · · 1 · · · · 1 · 1 · · · 1 · 1",
    },
    ExpectedOrbit {
        rank: 4,
        size: 7,
        canonical: "· · · · · 1 · 1 · · · 1 · · 1 1 1 1 · 1 · 1 1 1 · 1 ·",
    },
    ExpectedOrbit {
        rank: 4,
        size: 28,
        canonical: "· · 1 · · · 1 · 1 · · · · 1 · · · · 1 · 1 · · · 1 · ·",
    },
    ExpectedOrbit {
        rank: 5,
        size: 21,
        canonical: "· · · · · 1 · 1 · · · 1 · · 1 1 1 1 · 1 · 1 1 1 · 1 1",
    },
    ExpectedOrbit {
        rank: 6,
        size: 7,
        canonical: "· · · · · 1 · 1 · · · 1 · · · 1 · · · 1 · 1 · · · · 1",
    },
    ExpectedOrbit {
        rank: 7,
        size: 1,
        canonical: "· · · · · 1 · 1 · · · 1 · · · 1 · · · 1 · 1 · · · · ·",
    },
];

const ORBITS_3_3_3: &[ExpectedOrbit] = &[
    ExpectedOrbit {
        rank: 0,
        size: 1,
        canonical: "· · · · · · · · · · · · · · · · · · · · · · · · · · ·",
    },
    ExpectedOrbit {
        rank: 1,
        size: 26,
        canonical: "· · · · · · · · · · · · · · · · · · · · · · · · · · 1",
    },
    ExpectedOrbit {
        rank: 2,
        size: 312,
        canonical: "· · · · · · · · · · · · · · 1 · 1 · · · · · 1 · · · 1",
    },
    ExpectedOrbit {
        rank: 3,
        size: 104,
        canonical: "· · · · · · · · · · · · · · · · · 1 · · · · · 1 · 1 ·",
    },
    ExpectedOrbit {
        rank: 3,
        size: 312,
        canonical: "· · · · · · · · · · · · · · 1 · 1 · · · · · 1 · · · 2",
    },
    ExpectedOrbit {
        rank: 3,
        size: 1872,
        canonical: "· · 1 · · · 1 · · · · · · 1 · · · · 1 · · · · · · · 1",
    },
    ExpectedOrbit {
        rank: 4,
        size: 208,
        canonical: "· · · · · · · · · · · · · · · · · 1 · · · · · 1 · 1 1",
    },
    ExpectedOrbit {
        rank: 4,
        size: 1872,
        canonical: "· · · · · · · · 1 · · · · 1 · · · · · · 1 · · · 1 · ·",
    },
    ExpectedOrbit {
        rank: 4,
        size: 468,
        canonical: "· · · · · 1 · 1 · · · 1 · · · 1 · · · 1 · 1 · · · · ·",
    },
    ExpectedOrbit {
        rank: 4,
        size: 1404,
        canonical: "· · 1 · · · 1 · · · · · · · 1 · 1 · 1 · · · 1 · · · 1",
    },
    ExpectedOrbit {
        rank: 4,
        size: 5616,
        canonical: "· · 1 · · · 1 · · · · · · 1 · · · · 1 · · · · · · · 2",
    },
    ExpectedOrbit {
        rank: 4,
        size: 1872,
        canonical: "· · 1 · · · 1 · · · · · · 1 · · · 1 1 · · · · 1 · 1 1",
    },
    ExpectedOrbit {
        rank: 5,
        size: 624,
        canonical: "· · · · · · · · 1 · · · · · 1 · 1 · · · 1 · 1 · 1 · 1",
    },
    ExpectedOrbit {
        rank: 5,
        size: 3744,
        canonical: "· · · · · · · · 1 · · · · 1 · · · · · · 1 · · · 1 · 1",
    },
    ExpectedOrbit {
        rank: 5,
        size: 2808,
        canonical: "· · · · · 1 · 1 · · · 1 · · · 1 · · · 1 · 1 · · · · 1",
    },
    ExpectedOrbit {
        rank: 5,
        size: 5616,
        canonical: "· · · · · 1 · 1 · · · 1 · 1 · 1 · · · 1 · 1 · · · · 1",
    },
    ExpectedOrbit {
        rank: 5,
        size: 702,
        canonical: "· · · · 1 · · · 1 · 1 · 1 · · · · · · · 1 · · · 1 · ·",
    },
    ExpectedOrbit {
        rank: 5,
        size: 5616,
        canonical: "· · 1 · · · 1 · · · · · · 1 · · · 1 1 · · · · 1 · 1 ·",
    },
    ExpectedOrbit {
        rank: 5,
        size: 5616,
        canonical: "· · 1 · · · 1 · · · · · · 1 · · · 1 1 · · · · 1 · 1 2",
    },
    ExpectedOrbit {
        rank: 5,
        size: 5616,
        canonical: "· · 1 · · · 1 · · · · · · 1 · · · 2 1 · · · · 2 · 2 ·",
    },
    ExpectedOrbit {
        rank: 6,
        size: 624,
        canonical: "· · · · · · · · 1 · · · · · 1 · 1 · · · 1 · 1 · 1 · ·",
    },
    ExpectedOrbit {
        rank: 6,
        size: 624,
        canonical: "· · · · · · · · 1 · · · · · 1 · 1 · · · 1 · 1 · 1 · 2",
    },
    ExpectedOrbit {
        rank: 6,
        size: 5616,
        canonical: "· · · · 1 · · · 1 · 1 · 1 · · · · · · · 1 · · · 1 · 1",
    },
    ExpectedOrbit {
        rank: 6,
        size: 3744,
        canonical: "· · 1 · 1 · 1 · · · 1 · 1 · 2 · 2 1 1 · · · 2 1 · 1 1",
    },
    ExpectedOrbit {
        rank: 6,
        size: 3744,
        canonical: "· · 1 · 1 · 1 · · · 1 · 1 · 2 · 2 1 1 · · · 2 1 · 1 2",
    },
    ExpectedOrbit {
        rank: 7,
        size: 288,
        canonical: "· · 1 · 1 · 1 · · · 1 · 1 · 2 · 2 1 1 · · · 2 1 · 1 ·",
    },
];

const MINIMA_2_3_4: &[(u8, &str)] = &[
    (0, "· · · · · · · · · · · · · · ·"),
    (1, "· · · · · · · · · · · · · · 1"),
    (2, "· · · · · · · · · · · 1 1 1 1"),
    (3, "· · · · · · · · · · · 1 1 1 ·"),
    (4, "· · · · 1 · · 1 1 · · 1 1 1 ·"),
    (5, "· · · · 1 · · 1 1 · · 1 1 1 1"),
    (6, "· · · · 1 · · 1 1 · · · · · 1"),
    (7, "· · · · 1 · · 1 1 · · · · · ·"),
];

const SHAPES: &[ExpectedShape] = &[
    ExpectedShape {
        p: 2,
        n: 3,
        k: 2,
        layer_counts: &[1, 7, 21, 35],
        sentinel_count: 0,
        percent_decimals: 4,
        percentages: &["1.5625", "10.9375", "32.8125", "54.6875"],
        orbits: Some(ORBITS_2_3_2),
        minima: None,
        max_matrix_rank: Some(3),
        max_symmetric_rank: 3,
    },
    ExpectedShape {
        p: 3,
        n: 3,
        k: 2,
        layer_counts: &[1, 13, 91, 390, 234],
        sentinel_count: 0,
        percent_decimals: 4,
        percentages: &["0.1372", "1.7833", "12.4829", "53.4979", "32.0988"],
        orbits: Some(ORBITS_3_3_2),
        minima: None,
        max_matrix_rank: Some(3),
        max_symmetric_rank: 4,
    },
    ExpectedShape {
        p: 5,
        n: 3,
        k: 2,
        layer_counts: &[1, 62, 1922, 7440, 6200],
        sentinel_count: 0,
        percent_decimals: 4,
        percentages: &["0.0064", "0.3968", "12.3008", "47.6160", "39.6800"],
        orbits: None,
        minima: Some(MINIMA_5_3_2),
        max_matrix_rank: Some(3),
        max_symmetric_rank: 4,
    },
    ExpectedShape {
        p: 2,
        n: 3,
        k: 3,
        layer_counts: &[1, 7, 21, 35, 35, 21, 7, 1],
        sentinel_count: 896,
        percent_decimals: 2,
        percentages: &["0.10", "0.68", "2.05", "3.42", "3.42", "2.05", "0.68", "0.10"],
        orbits: Some(ORBITS_2_3_3),
        minima: None,
        max_matrix_rank: None,
        max_symmetric_rank: 7,
    },
    ExpectedShape {
        p: 3,
        n: 3,
        k: 3,
        layer_counts: &[1, 26, 312, 2288, 11440, 30342, 14352, 288],
        sentinel_count: 0,
        percent_decimals: 2,
        percentages: &["0.00", "0.04", "0.53", "3.87", "19.37", "51.38", "24.31", "0.49"],
        orbits: Some(ORBITS_3_3_3),
        minima: None,
        max_matrix_rank: None,
        max_symmetric_rank: 7,
    },
    ExpectedShape {
        p: 2,
        n: 3,
        k: 4,
        layer_counts: &[1, 7, 21, 35, 35, 21, 7, 1],
        sentinel_count: 32640,
        percent_decimals: 4,
        percentages: &[
            "0.0031", "0.0214", "0.0641", "0.1068", "0.1068", "0.0641", "0.0214", "0.0031",
        ],
        orbits: None,
        minima: Some(MINIMA_2_3_4),
        max_matrix_rank: None,
        max_symmetric_rank: 7,
    },
];

/// Percentage string for `count` out of `space` at `decimals` places.
pub fn percent_string(count: u64, space: u64, decimals: usize) -> String {
    format!("{:.*}", decimals, count as f64 * 100.0 / space as f64)
}

/// The reference shapes, smallest code space first.
pub fn all() -> &'static [ExpectedShape] {
    SHAPES
}

/// Find the reference entry for a shape, if one exists.
pub fn find(p: u8, n: u8, k: u8) -> Option<&'static ExpectedShape> {
    SHAPES.iter().find(|e| e.p == p && e.n == n && e.k == k)
}
