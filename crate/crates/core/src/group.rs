//! The diagonal action of GL_n(F_p) on symmetric tensors.
//!
//! A group element g acts by multiplying the same matrix into every mode:
//! (g·X)_{j_1…j_k} = Σ g_{j_1 i_1} ⋯ g_{j_k i_k} X_{i_1…i_k}. Symmetry is
//! preserved, so the action restricts to packed codes.
//!
//! Two evaluation routes exist on purpose. The definitional route
//! ([`mode_multiply`] applied k times, then pack) is the oracle. The
//! compiled route precomputes, per group element, the D×D matrix of the
//! induced linear map on free entries and applies it to digits directly —
//! that is what orbit enumeration uses, and the classifier cross-checks the
//! two routes on samples at run time.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::tensor::{FlatTensor, Layout, SymTensor};
use rayon::prelude::*;

/// An invertible n×n matrix over F_p, row-major. Invertibility is checked
/// at construction and is an invariant from then on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    n: u8,
    entries: Vec<u8>,
}

impl GroupElement {
    pub fn new(n: u8, entries: Vec<u8>, field: &FieldSpec) -> Result<GroupElement> {
        if entries.len() != n as usize * n as usize {
            return Err(Error::InvalidShape(format!(
                "expected {} matrix entries, got {}",
                n as usize * n as usize,
                entries.len()
            )));
        }
        if let Some(&v) = entries.iter().find(|&&v| v >= field.p()) {
            return Err(Error::ResidueOutOfRange {
                value: v as u64,
                modulus: field.p(),
            });
        }
        if field.det(n as usize, &entries) == 0 {
            return Err(Error::NonInvertible);
        }
        Ok(GroupElement { n, entries })
    }

    pub fn identity(n: u8) -> GroupElement {
        let mut entries = vec![0u8; n as usize * n as usize];
        for i in 0..n as usize {
            entries[i * n as usize + i] = 1;
        }
        GroupElement { n, entries }
    }

    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }
    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.n as usize + col]
    }

    /// Matrix product g·h (apply h first, then g — matches composing the
    /// diagonal actions).
    pub fn compose(&self, h: &GroupElement, field: &FieldSpec) -> GroupElement {
        assert_eq!(self.n, h.n);
        let n = self.n as usize;
        let mut entries = vec![0u8; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = 0u8;
                for l in 0..n {
                    acc = field.add(acc, field.mul(self.get(r, l), h.get(l, c)));
                }
                entries[r * n + c] = acc;
            }
        }
        GroupElement { n: self.n, entries }
    }

    /// Bracketed row rendering, same convention as order-2 tensors.
    pub fn render(&self) -> String {
        let n = self.n as usize;
        let mut out = String::from("[");
        for r in 0..n {
            if r > 0 {
                out.push(',');
            }
            out.push('[');
            for c in 0..n {
                if c > 0 {
                    out.push(',');
                }
                out.push_str(&self.get(r, c).to_string());
            }
            out.push(']');
        }
        out.push(']');
        out
    }
}

/// |GL_n(F_p)| = Π_{i=0}^{n−1} (p^n − p^i).
pub fn group_order(n: u8, p: u8) -> Result<u64> {
    let pn = (p as u128)
        .checked_pow(n as u32)
        .ok_or(Error::GroupTooLarge {
            candidates: u128::MAX,
        })?;
    let mut order: u128 = 1;
    let mut pi: u128 = 1;
    for _ in 0..n {
        order = order
            .checked_mul(pn - pi)
            .ok_or(Error::GroupTooLarge { candidates: order })?;
        pi *= p as u128;
    }
    u64::try_from(order).map_err(|_| Error::GroupTooLarge { candidates: order })
}

/// Streams every invertible matrix in lexical order of the flattened
/// entries, by filtering all p^(n²) candidates on non-zero determinant.
pub fn enumerate_group(n: u8, field: FieldSpec) -> Result<GroupEnumeration> {
    let candidates = (field.p() as u128).checked_pow(n as u32 * n as u32);
    let candidates = match candidates {
        Some(c) if c <= u64::MAX as u128 => c as u64,
        other => {
            return Err(Error::GroupTooLarge {
                candidates: other.unwrap_or(u128::MAX),
            })
        }
    };
    Ok(GroupEnumeration {
        n,
        field,
        candidates,
        next: 0,
    })
}

pub struct GroupEnumeration {
    n: u8,
    field: FieldSpec,
    candidates: u64,
    next: u64,
}

impl GroupEnumeration {
    /// Total candidate count p^(n²) (not the group order).
    pub fn candidates(&self) -> u64 {
        self.candidates
    }
}

impl Iterator for GroupEnumeration {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let n2 = self.n as usize * self.n as usize;
        let p = self.field.p() as u64;
        while self.next < self.candidates {
            let mut entries = vec![0u8; n2];
            let mut rest = self.next;
            self.next += 1;
            // first entry most significant: lexical order over flat entries
            for slot in (0..n2).rev() {
                entries[slot] = (rest % p) as u8;
                rest /= p;
            }
            if self.field.det(self.n as usize, &entries) != 0 {
                return Some(GroupElement {
                    n: self.n,
                    entries,
                });
            }
        }
        None
    }
}

/// Multiply `g` into one mode (1-based) of a flattened tensor:
/// y[… i …] = Σ_j g[i][j] · x[… j …] along that mode's fibers.
pub fn mode_multiply(ft: &FlatTensor, g: &GroupElement, mode: usize) -> Result<FlatTensor> {
    let shape = *ft.shape();
    let (n, k) = (shape.n() as usize, shape.k() as usize);
    if mode == 0 || mode > k {
        return Err(Error::ModeOutOfRange {
            mode,
            order: shape.k(),
        });
    }
    if g.n() != shape.n() {
        return Err(Error::ShapeMismatch);
    }
    let field = shape.field();
    let full_len = shape.full_len() as usize;
    let stride = n.pow((k - mode) as u32);
    let block = stride * n;
    let x = ft.entries();
    let mut y = vec![0u8; full_len];
    let mut fiber = vec![0u8; n];
    for base in (0..full_len).step_by(block) {
        for suf in 0..stride {
            for (j, f) in fiber.iter_mut().enumerate() {
                *f = x[base + j * stride + suf];
            }
            for i in 0..n {
                let mut acc = 0u8;
                for (j, &xj) in fiber.iter().enumerate() {
                    acc = field.add(acc, field.mul(g.get(i, j), xj));
                }
                y[base + i * stride + suf] = acc;
            }
        }
    }
    FlatTensor::new(shape, y)
}

/// The definitional action: k mode products with the same matrix, then
/// re-pack. This is the oracle the compiled route is checked against.
pub fn act(layout: &Layout, g: &GroupElement, t: &SymTensor) -> SymTensor {
    let mut ft = layout.flatten(t);
    for mode in 1..=layout.shape().k() as usize {
        ft = mode_multiply(&ft, g, mode).expect("validated mode and shape");
    }
    layout
        .pack(&ft)
        .expect("diagonal action preserves symmetry")
}

/// The induced linear map on the D free entries, as a dense D×D coefficient
/// matrix: output digit J = Σ_I coeff[J][I] · digit I (mod p), where
/// coeff[J][I] folds together every index tuple that sorts to I.
#[derive(Debug, Clone)]
pub struct CompiledAction {
    d: usize,
    p: u8,
    coeffs: Vec<u8>, // d × d, row-major by output digit
}

pub fn compile_action(layout: &Layout, g: &GroupElement) -> CompiledAction {
    let shape = layout.shape();
    let d = shape.free_count() as usize;
    let mut coeffs = vec![0u8; d * d];
    compile_action_into(layout, g.entries(), &mut coeffs);
    CompiledAction {
        d,
        p: shape.p(),
        coeffs,
    }
}

/// Walks all n^k index tuples once per output digit, accumulating
/// Π_m g[J_m][t_m] into the column of sorted(t).
fn compile_action_into(layout: &Layout, g: &[u8], coeffs: &mut [u8]) {
    let shape = layout.shape();
    let field = shape.field();
    let (n, k, d) = (shape.n() as usize, shape.k() as usize, shape.free_count() as usize);
    debug_assert_eq!(coeffs.len(), d * d);
    let full_len = shape.full_len() as usize;
    for out_t in 0..d {
        let j_tuple = layout.sorted_tuple(out_t);
        let row = &mut coeffs[out_t * d..(out_t + 1) * d];
        row.fill(0);
        let mut tuple = vec![0usize; k]; // 0-based odometer over index tuples
        for pos in 0..full_len {
            let mut prod = 1u8;
            for (m, &tm) in tuple.iter().enumerate() {
                prod = field.mul(prod, g[(j_tuple[m] as usize - 1) * n + tm]);
                if prod == 0 {
                    break;
                }
            }
            if prod != 0 {
                let col = layout.digit_index(pos) as usize;
                row[col] = field.add(row[col], prod);
            }
            for slot in (0..k).rev() {
                tuple[slot] += 1;
                if tuple[slot] < n {
                    break;
                }
                tuple[slot] = 0;
            }
        }
    }
}

impl CompiledAction {
    /// Apply to a packed code. `digit_buf` must hold D bytes; callers in hot
    /// loops reuse it across applications.
    #[inline]
    pub fn apply_with(&self, layout: &Layout, code: u64, digit_buf: &mut [u8]) -> u64 {
        layout.digits_into(code, digit_buf);
        apply_coeffs(&self.coeffs, self.d, self.p, digit_buf)
    }

    /// Allocation-per-call convenience wrapper around [`Self::apply_with`].
    pub fn apply(&self, layout: &Layout, code: u64) -> u64 {
        let mut buf = vec![0u8; self.d];
        self.apply_with(layout, code, &mut buf)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }
}

#[inline]
fn apply_coeffs(coeffs: &[u8], d: usize, p: u8, digits: &[u8]) -> u64 {
    let mut code = 0u64;
    for row in coeffs.chunks_exact(d) {
        let mut acc = 0u32; // d·(p−1)² stays far below u32::MAX
        for (&c, &x) in row.iter().zip(digits) {
            acc += c as u32 * x as u32;
        }
        code = code * p as u64 + (acc % p as u32) as u64;
    }
    code
}

/// Every group element's compiled action in one flat allocation, in group
/// enumeration order. This is the working set of the classifier; for
/// GL_3(F_5) it is ~1.5M elements × 36 coefficient bytes.
pub struct ActionTables {
    d: usize,
    n: u8,
    p: u8,
    len: usize,
    elements: Vec<u8>, // len × n², enumeration order
    coeffs: Vec<u8>,   // len × d²
}

impl std::fmt::Debug for ActionTables {
    /// Summarised: the coefficient block can run to tens of megabytes.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ActionTables")
            .field("d", &self.d)
            .field("n", &self.n)
            .field("p", &self.p)
            .field("len", &self.len)
            .finish_non_exhaustive()
    }
}

impl ActionTables {
    pub fn build(layout: &Layout, budget_bytes: u64) -> Result<ActionTables> {
        let shape = layout.shape();
        let field = shape.field();
        let (n, d) = (shape.n(), shape.free_count() as usize);
        let n2 = n as usize * n as usize;
        let order = group_order(n, shape.p())?;
        let required = order
            .checked_mul((d * d + n2) as u64)
            .ok_or(Error::GroupTooLarge {
                candidates: order as u128,
            })?;
        if required > budget_bytes {
            return Err(Error::MemoryBudget {
                required_bytes: required,
                budget_bytes,
            });
        }
        let mut elements = Vec::with_capacity(order as usize * n2);
        for g in enumerate_group(n, field)? {
            elements.extend_from_slice(g.entries());
        }
        debug_assert_eq!(elements.len(), order as usize * n2);
        let mut coeffs = vec![0u8; order as usize * d * d];
        coeffs
            .par_chunks_mut(d * d)
            .zip(elements.par_chunks(n2))
            .for_each(|(chunk, g)| compile_action_into(layout, g, chunk));
        Ok(ActionTables {
            d,
            n,
            p: shape.p(),
            len: order as usize,
            elements,
            coeffs,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Reconstruct the i-th group element (enumeration order).
    pub fn element(&self, i: usize) -> GroupElement {
        let n2 = self.n as usize * self.n as usize;
        GroupElement {
            n: self.n,
            entries: self.elements[i * n2..(i + 1) * n2].to_vec(),
        }
    }

    /// Apply the i-th compiled action to a code.
    #[inline]
    pub fn apply_with(&self, layout: &Layout, i: usize, code: u64, digit_buf: &mut [u8]) -> u64 {
        layout.digits_into(code, digit_buf);
        let coeffs = &self.coeffs[i * self.d * self.d..(i + 1) * self.d * self.d];
        apply_coeffs(coeffs, self.d, self.p, digit_buf)
    }
}
