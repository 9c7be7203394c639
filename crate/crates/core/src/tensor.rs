//! Packed representation of symmetric tensors of format n×⋯×n (order k)
//! over F_p.
//!
//! A symmetric tensor is determined by its entries at *sorted* multi-indices
//! (i_1 ≤ … ≤ i_k), of which there are D = C(n+k-1, k). We store those D
//! free entries as the digits of a base-p integer — the tensor's *code* —
//! with the first sorted multi-index (1,1,…,1) as the most significant
//! digit. Because the ascending-sorted tuple is the lexically smallest
//! permutation of its multiset, the first position at which two flattened
//! symmetric tensors differ is always a sorted multi-index, so comparing
//! codes as integers is exactly lexicographic comparison of the full
//! flattened tensors. Orbit minimisation therefore never needs to leave the
//! packed form.
//!
//! Full (flattened) tensors store all n^k entries with the tuple
//! (i_1,…,i_k) at 0-based position Σ_j (i_j − 1)·n^(k−j), i.e. tuples in
//! lexical order with the first index most significant.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use std::cmp::Ordering;
use std::collections::HashMap;

/// Format descriptor: order `k`, dimension `n`, modulus `p`, plus the sizes
/// derived from them. Plain `Copy` data — the index tables live in
/// [`Layout`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    p: u8,
    n: u8,
    k: u8,
    d: u16,
    full_len: u64,
    code_space: u64,
}

impl Shape {
    pub fn new(n: u64, k: u64, p: u64) -> Result<Shape> {
        let field = FieldSpec::new(p)?;
        if n == 0 || k == 0 {
            return Err(Error::InvalidShape(
                "dimension and order must both be at least 1".into(),
            ));
        }
        if n > 63 || k > 63 {
            return Err(Error::InvalidShape(format!(
                "dimension {n} / order {k} beyond supported range"
            )));
        }
        let d = binomial(n + k - 1, k);
        if d > u16::MAX as u128 {
            return Err(Error::InvalidShape(format!(
                "{d} free entries exceed the representable range"
            )));
        }
        let d = d as u16;
        let full_len = (n as u128).pow(k as u32);
        if full_len > (1u128 << 32) {
            return Err(Error::InvalidShape(format!(
                "full tensors would need {full_len} entries"
            )));
        }
        let code_space = (p as u128).checked_pow(d as u32);
        let code_space = match code_space {
            Some(c) if c <= u64::MAX as u128 => c as u64,
            _ => {
                return Err(Error::CodeSpaceOverflow {
                    required: code_space.unwrap_or(u128::MAX),
                })
            }
        };
        Ok(Shape {
            p: field.p(),
            n: n as u8,
            k: k as u8,
            d,
            full_len: full_len as u64,
            code_space,
        })
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }
    #[inline]
    pub fn n(&self) -> u8 {
        self.n
    }
    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }
    /// Number of free entries D = C(n+k-1, k); also the digit count of codes.
    #[inline]
    pub fn free_count(&self) -> u16 {
        self.d
    }
    /// n^k, the entry count of a full flattened tensor.
    #[inline]
    pub fn full_len(&self) -> u64 {
        self.full_len
    }
    /// p^D, the number of distinct symmetric tensors of this shape.
    #[inline]
    pub fn code_space(&self) -> u64 {
        self.code_space
    }
    #[inline]
    pub fn field(&self) -> FieldSpec {
        FieldSpec::new(self.p as u64).expect("modulus was validated at construction")
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u32::MAX as u128 {
            return u128::MAX; // caller range-checks; exact value no longer matters
        }
    }
    acc
}

/// A symmetric tensor, stored as its packed base-p code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymTensor {
    shape: Shape,
    code: u64,
}

impl SymTensor {
    pub fn new(shape: Shape, code: u64) -> SymTensor {
        debug_assert!(code < shape.code_space());
        SymTensor { shape, code }
    }
    pub fn zero(shape: Shape) -> SymTensor {
        SymTensor { shape, code: 0 }
    }
    #[inline]
    pub fn shape(&self) -> &Shape {
        &self.shape
    }
    #[inline]
    pub fn code(&self) -> u64 {
        self.code
    }
}

/// A dense flattened tensor: all n^k entries in tuple-lexical order.
/// Not necessarily symmetric — [`Layout::pack`] is where symmetry is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTensor {
    shape: Shape,
    entries: Vec<u8>,
}

impl FlatTensor {
    pub fn new(shape: Shape, entries: Vec<u8>) -> Result<FlatTensor> {
        if entries.len() as u64 != shape.full_len() {
            return Err(Error::InvalidShape(format!(
                "expected {} entries, got {}",
                shape.full_len(),
                entries.len()
            )));
        }
        if let Some(&v) = entries.iter().find(|&&v| v >= shape.p()) {
            return Err(Error::ResidueOutOfRange {
                value: v as u64,
                modulus: shape.p(),
            });
        }
        Ok(FlatTensor { shape, entries })
    }
    #[inline]
    pub fn shape(&self) -> &Shape {
        &self.shape
    }
    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }
    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }
}

/// Index tables for one shape: the sorted multi-indices in lexical order
/// and the map from full positions to digit positions. Digit t has place
/// value p^(D-1-t), so digit 0 — tuple (1,…,1) — is most significant.
///
/// Building a `Layout` costs O(n^k log); everything downstream borrows it.
pub struct Layout {
    shape: Shape,
    sorted_tuples: Vec<u8>, // D × k, values 1..=n, each tuple ascending
    tuple_digit: Vec<u16>,  // full position -> digit index
}

impl Layout {
    pub fn new(shape: &Shape) -> Layout {
        let (n, k, d) = (shape.n() as usize, shape.k() as usize, shape.free_count() as usize);

        let mut sorted_tuples = Vec::with_capacity(d * k);
        let mut index_of = HashMap::with_capacity(d);
        let mut tuple = vec![1u8; k];
        loop {
            index_of.insert(tuple.clone(), index_of.len() as u16);
            sorted_tuples.extend_from_slice(&tuple);
            // next non-decreasing tuple in lexical order
            match tuple.iter().rposition(|&v| v < n as u8) {
                Some(j) => {
                    tuple[j] += 1;
                    let v = tuple[j];
                    for t in &mut tuple[j + 1..] {
                        *t = v;
                    }
                }
                None => break,
            }
        }
        debug_assert_eq!(index_of.len(), d);

        let full_len = shape.full_len() as usize;
        let mut tuple_digit = Vec::with_capacity(full_len);
        let mut full = vec![1u8; k];
        let mut sorted = vec![1u8; k];
        loop {
            sorted.copy_from_slice(&full);
            sorted.sort_unstable();
            tuple_digit.push(index_of[&sorted]);
            match full.iter().rposition(|&v| v < n as u8) {
                Some(j) => {
                    full[j] += 1;
                    for t in &mut full[j + 1..] {
                        *t = 1;
                    }
                }
                None => break,
            }
        }
        debug_assert_eq!(tuple_digit.len(), full_len);

        Layout {
            shape: *shape,
            sorted_tuples,
            tuple_digit,
        }
    }

    #[inline]
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// The t-th sorted multi-index (lexical order, 0-based), entries 1..=n.
    #[inline]
    pub fn sorted_tuple(&self, t: usize) -> &[u8] {
        let k = self.shape.k() as usize;
        &self.sorted_tuples[t * k..(t + 1) * k]
    }

    /// Digit index owning the given full (flattened) position.
    #[inline]
    pub fn digit_index(&self, full_pos: usize) -> u16 {
        self.tuple_digit[full_pos]
    }

    /// Decode a code into its D digits, most significant (tuple (1,…,1)) first.
    pub fn digits_of(&self, code: u64) -> Vec<u8> {
        let mut digits = vec![0u8; self.shape.free_count() as usize];
        self.digits_into(code, &mut digits);
        digits
    }

    /// Same as [`Layout::digits_of`] but into a caller-provided buffer, for
    /// loops that decode millions of codes.
    #[inline]
    pub fn digits_into(&self, code: u64, digits: &mut [u8]) {
        let d = self.shape.free_count() as usize;
        debug_assert_eq!(digits.len(), d);
        let p = self.shape.p() as u64;
        let mut rest = code;
        for t in (0..d).rev() {
            digits[t] = (rest % p) as u8;
            rest /= p;
        }
        debug_assert_eq!(rest, 0);
    }

    /// Inverse of [`Layout::digits_of`].
    pub fn code_of(&self, digits: &[u8]) -> u64 {
        let d = self.shape.free_count() as usize;
        debug_assert_eq!(digits.len(), d);
        let p = self.shape.p() as u64;
        let mut code = 0u64;
        for &digit in digits {
            debug_assert!((digit as u64) < p);
            code = code * p + digit as u64;
        }
        code
    }

    /// Expand a packed tensor to all n^k entries.
    pub fn flatten(&self, t: &SymTensor) -> FlatTensor {
        debug_assert_eq!(*t.shape(), self.shape);
        let digits = self.digits_of(t.code());
        let entries = self
            .tuple_digit
            .iter()
            .map(|&di| digits[di as usize])
            .collect();
        FlatTensor {
            shape: self.shape,
            entries,
        }
    }

    /// Pack a full tensor, checking that entries agree on every permutation
    /// of each multi-index. The offending tuple is reported on failure.
    pub fn pack(&self, ft: &FlatTensor) -> Result<SymTensor> {
        if *ft.shape() != self.shape {
            return Err(Error::ShapeMismatch);
        }
        let d = self.shape.free_count() as usize;
        let mut digits = vec![0u8; d];
        let mut seen = vec![false; d];
        for (pos, &v) in ft.entries().iter().enumerate() {
            let di = self.tuple_digit[pos] as usize;
            if !seen[di] {
                seen[di] = true;
                digits[di] = v;
            } else if digits[di] != v {
                return Err(Error::SymmetryViolation {
                    tuple: self.decode_full_position(pos),
                });
            }
        }
        Ok(SymTensor {
            shape: self.shape,
            code: self.code_of(&digits),
        })
    }

    /// 1-based index tuple of a 0-based full position.
    pub fn decode_full_position(&self, pos: usize) -> Vec<u8> {
        let (n, k) = (self.shape.n() as u64, self.shape.k() as usize);
        let mut tuple = vec![0u8; k];
        let mut rest = pos as u64;
        for j in (0..k).rev() {
            tuple[j] = (rest % n) as u8 + 1;
            rest /= n;
        }
        tuple
    }

    /// The simple symmetric tensor u⊗u⊗⋯⊗u (k factors) for non-zero u.
    pub fn outer_power(&self, u: &[u8]) -> Result<SymTensor> {
        let shape = &self.shape;
        if u.len() != shape.n() as usize {
            return Err(Error::WrongVectorLength {
                expected: shape.n(),
                got: u.len(),
            });
        }
        if let Some(&v) = u.iter().find(|&&v| v >= shape.p()) {
            return Err(Error::ResidueOutOfRange {
                value: v as u64,
                modulus: shape.p(),
            });
        }
        if u.iter().all(|&v| v == 0) {
            return Err(Error::ZeroVector);
        }
        let field = shape.field();
        let d = shape.free_count() as usize;
        let mut digits = vec![0u8; d];
        for (t, digit) in digits.iter_mut().enumerate() {
            let mut prod = 1u8;
            for &i in self.sorted_tuple(t) {
                prod = field.mul(prod, u[i as usize - 1]);
            }
            *digit = prod;
        }
        Ok(SymTensor {
            shape: *shape,
            code: self.code_of(&digits),
        })
    }
}

/// Digit-wise sum of two codes mod p (entry-wise tensor addition).
pub fn tensor_add(a: &SymTensor, b: &SymTensor) -> Result<SymTensor> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch);
    }
    Ok(SymTensor {
        shape: a.shape,
        code: combine_codes(a.shape(), a.code(), b.code(), false),
    })
}

/// Digit-wise difference of two codes mod p.
pub fn tensor_sub(a: &SymTensor, b: &SymTensor) -> Result<SymTensor> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch);
    }
    Ok(SymTensor {
        shape: a.shape,
        code: combine_codes(a.shape(), a.code(), b.code(), true),
    })
}

fn combine_codes(shape: &Shape, a: u64, b: u64, subtract: bool) -> u64 {
    let p = shape.p() as u64;
    let d = shape.free_count();
    let (mut ra, mut rb) = (a, b);
    let mut out = 0u64;
    let mut place = 1u64;
    for _ in 0..d {
        let (da, db) = (ra % p, rb % p);
        let ds = if subtract {
            (da + p - db) % p
        } else {
            (da + db) % p
        };
        out += ds * place;
        place *= p;
        ra /= p;
        rb /= p;
    }
    out
}

/// Lexicographic comparison of the full flattened tensors — by the layout
/// invariant this is integer comparison of the codes.
pub fn lex_compare(a: &SymTensor, b: &SymTensor) -> Result<Ordering> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch);
    }
    Ok(a.code().cmp(&b.code()))
}

/// Digit-wise code addition specialised once per shape, for the loops that
/// perform it hundreds of millions of times.
///
/// For p = 2 the packed code *is* the bit-vector of digits, so addition is
/// XOR. For odd p we split codes into chunks of c digits (p^c ≤ 256) and add
/// chunks through a p^c × p^c lookup table — three table hits instead of
/// fifteen divisions for the largest shipped shape.
pub struct CodeAdder {
    inner: AdderInner,
}

enum AdderInner {
    Xor,
    Chunked {
        base: u64, // p^c
        chunks: u16,
        table: Vec<u16>, // base × base, digit-wise sums
    },
}

impl CodeAdder {
    pub fn new(shape: &Shape) -> CodeAdder {
        if shape.p() == 2 {
            return CodeAdder {
                inner: AdderInner::Xor,
            };
        }
        let p = shape.p() as u64;
        let mut c = 1u16;
        let mut base = p;
        while c < shape.free_count() && base * p <= 256 {
            c += 1;
            base *= p;
        }
        let chunks = shape.free_count().div_ceil(c);
        let m = base as usize;
        let mut table = vec![0u16; m * m];
        for x in 0..m {
            for y in 0..m {
                let (mut rx, mut ry) = (x as u64, y as u64);
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..c {
                    out += ((rx % p + ry % p) % p) * place;
                    place *= p;
                    rx /= p;
                    ry /= p;
                }
                table[x * m + y] = out as u16;
            }
        }
        CodeAdder {
            inner: AdderInner::Chunked {
                base,
                chunks,
                table,
            },
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.inner {
            AdderInner::Xor => a ^ b,
            AdderInner::Chunked {
                base,
                chunks,
                table,
            } => {
                let m = *base;
                let (mut ra, mut rb) = (a, b);
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..*chunks {
                    let (ca, cb) = (ra % m, rb % m);
                    out += table[(ca * m + cb) as usize] as u64 * place;
                    place *= m;
                    ra /= m;
                    rb /= m;
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn layout(n: u64, k: u64, p: u64) -> Layout {
        Layout::new(&Shape::new(n, k, p).unwrap())
    }

    #[test]
    fn shape_derived_sizes() {
        let cases = [
            (3, 2, 2, 6, 9, 64),
            (3, 2, 3, 6, 9, 729),
            (3, 2, 5, 6, 9, 15625),
            (3, 3, 2, 10, 27, 1024),
            (3, 3, 3, 10, 27, 59049),
            (3, 4, 2, 15, 81, 32768),
            (3, 4, 3, 15, 81, 14_348_907),
        ];
        for (n, k, p, d, full, space) in cases {
            let s = Shape::new(n, k, p).unwrap();
            assert_eq!(s.free_count() as u64, d, "D for n={n} k={k}");
            assert_eq!(s.full_len(), full);
            assert_eq!(s.code_space(), space);
        }
        assert!(Shape::new(0, 2, 3).is_err());
        assert!(Shape::new(3, 0, 3).is_err());
        assert!(Shape::new(3, 2, 4).is_err());
        // 251^28 free-entry code space cannot fit in a u64 code
        assert!(matches!(
            Shape::new(7, 6, 251),
            Err(Error::CodeSpaceOverflow { .. })
        ));
    }

    #[test]
    fn sorted_tuples_are_lexical_and_complete() {
        let l = layout(3, 3, 2);
        let expect: &[&[u8]] = &[
            &[1, 1, 1],
            &[1, 1, 2],
            &[1, 1, 3],
            &[1, 2, 2],
            &[1, 2, 3],
            &[1, 3, 3],
            &[2, 2, 2],
            &[2, 2, 3],
            &[2, 3, 3],
            &[3, 3, 3],
        ];
        for (t, want) in expect.iter().enumerate() {
            assert_eq!(l.sorted_tuple(t), *want);
        }
    }

    /// 3×3 matrix [[0,0,0],[0,0,1],[0,1,1]] over F_2: free entries
    /// (x11,x12,x13,x22,x23,x33) = (0,0,0,0,1,1), so the code is 0b000011.
    #[test]
    fn pack_packs_msb_first() {
        let l = layout(3, 2, 2);
        let ft = FlatTensor::new(*l.shape(), vec![0, 0, 0, 0, 0, 1, 0, 1, 1]).unwrap();
        assert_eq!(l.pack(&ft).unwrap().code(), 3);
    }

    #[test]
    fn pack_rejects_asymmetry_with_tuple_report() {
        let l = layout(3, 2, 2);
        let ft = FlatTensor::new(*l.shape(), vec![0, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        match l.pack(&ft) {
            Err(Error::SymmetryViolation { tuple }) => assert_eq!(tuple, vec![2, 1]),
            other => panic!("expected symmetry violation, got {other:?}"),
        }
    }

    #[test]
    fn flatten_pack_round_trip_exhaustive_small() {
        for (n, k, p) in [(3, 2, 2), (3, 2, 3), (2, 3, 3), (3, 3, 2)] {
            let l = layout(n, k, p);
            for code in 0..l.shape().code_space() {
                let t = SymTensor::new(*l.shape(), code);
                let ft = l.flatten(&t);
                assert_eq!(l.pack(&ft).unwrap().code(), code);
            }
        }
    }

    /// Code order must equal lexicographic order of the flattened entries.
    /// `Vec<u8>` already compares lexicographically, which is the oracle.
    #[test]
    fn code_order_is_flattened_lex_order() {
        for (n, k, p) in [(3, 2, 2), (3, 3, 2), (3, 2, 3)] {
            let l = layout(n, k, p);
            let flats: Vec<Vec<u8>> = (0..l.shape().code_space())
                .map(|c| l.flatten(&SymTensor::new(*l.shape(), c)).into_entries())
                .collect();
            for (i, a) in flats.iter().enumerate() {
                // adjacent pairs plus a stride keep this O(space) not O(space^2)
                for j in [i + 1, i + 7, i + 57] {
                    if let Some(b) = flats.get(j) {
                        assert_eq!(a.cmp(b), Ordering::Less, "codes {i} vs {j}");
                    }
                }
            }
        }
    }

    /// u = (0,1,1) over F_2, k = 3: every entry indexed only by {2,3} is 1.
    #[test]
    fn outer_power_example() {
        let l = layout(3, 3, 2);
        let t = l.outer_power(&[0, 1, 1]).unwrap();
        let digits = l.digits_of(t.code());
        // digit order: 111,112,113,122,123,133,222,223,233,333
        assert_eq!(digits, vec![0, 0, 0, 0, 0, 0, 1, 1, 1, 1]);
        assert!(matches!(
            l.outer_power(&[0, 0, 0]),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            l.outer_power(&[0, 1]),
            Err(Error::WrongVectorLength { expected: 3, got: 2 })
        ));
    }

    /// Simple-tensor counts: u and c·u collide exactly when c^k = 1, so the
    /// count is (p^n − 1)/gcd(k, p−1).
    #[test]
    fn distinct_simple_tensor_counts() {
        for (n, k, p, want) in [
            (3u64, 2u64, 2u64, 7usize),
            (3, 3, 2, 7),
            (3, 4, 2, 7),
            (3, 2, 3, 13),
            (3, 3, 3, 26),
            (3, 4, 3, 13),
            (3, 2, 5, 62),
        ] {
            let l = layout(n, k, p);
            let mut codes: Vec<u64> = nonzero_vectors(n as usize, p as u8)
                .iter()
                .map(|u| l.outer_power(u).unwrap().code())
                .collect();
            codes.sort_unstable();
            codes.dedup();
            assert_eq!(codes.len(), want, "n={n} k={k} p={p}");
        }
    }

    fn nonzero_vectors(n: usize, p: u8) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut v = vec![0u8; n];
        loop {
            if v.iter().any(|&x| x != 0) {
                out.push(v.clone());
            }
            match v.iter().rposition(|&x| x + 1 < p) {
                Some(j) => {
                    v[j] += 1;
                    for x in &mut v[j + 1..] {
                        *x = 0;
                    }
                }
                None => return out,
            }
        }
    }

    /// (0,1,1)⊗3 + (0,1,0)⊗3 over F_2: x222 cancels, x223 = x233 = x333 = 1.
    #[test]
    fn tensor_add_cancels_in_characteristic_two() {
        let l = layout(3, 3, 2);
        let a = l.outer_power(&[0, 1, 1]).unwrap();
        let b = l.outer_power(&[0, 1, 0]).unwrap();
        let sum = tensor_add(&a, &b).unwrap();
        assert_eq!(l.digits_of(sum.code()), vec![0, 0, 0, 0, 0, 0, 0, 1, 1, 1]);
        assert_eq!(sum.code(), 7);
    }

    /// Adding on codes must agree with adding on full tensors entry-wise —
    /// the two routes share no code.
    #[test]
    fn code_addition_matches_entrywise_addition() {
        for (n, k, p) in [(3, 2, 2), (3, 2, 3), (3, 2, 5), (2, 3, 3)] {
            let l = layout(n, k, p);
            let field = l.shape().field();
            let space = l.shape().code_space();
            let stride = (space / 97).max(1);
            for a in (0..space).step_by(stride as usize) {
                for b in (0..space).step_by((stride * 3 + 1) as usize) {
                    let ta = SymTensor::new(*l.shape(), a);
                    let tb = SymTensor::new(*l.shape(), b);
                    let via_codes = tensor_add(&ta, &tb).unwrap();
                    let fa = l.flatten(&ta);
                    let fb = l.flatten(&tb);
                    let entries: Vec<u8> = fa
                        .entries()
                        .iter()
                        .zip(fb.entries())
                        .map(|(&x, &y)| field.add(x, y))
                        .collect();
                    let via_flat = l.pack(&FlatTensor::new(*l.shape(), entries).unwrap()).unwrap();
                    assert_eq!(via_codes.code(), via_flat.code());
                    let back = tensor_sub(&via_codes, &tb).unwrap();
                    assert_eq!(back.code(), a);
                }
            }
        }
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let l2 = layout(3, 2, 2);
        let l3 = layout(3, 2, 3);
        let a = SymTensor::new(*l2.shape(), 1);
        let b = SymTensor::new(*l3.shape(), 1);
        assert!(matches!(tensor_add(&a, &b), Err(Error::ShapeMismatch)));
        assert!(matches!(lex_compare(&a, &b), Err(Error::ShapeMismatch)));
    }

    #[test]
    fn code_adder_agrees_with_tensor_add() {
        for (n, k, p) in [(3, 2, 3), (3, 2, 5), (3, 3, 3), (3, 4, 2), (3, 4, 3)] {
            let shape = Shape::new(n, k, p).unwrap();
            let adder = CodeAdder::new(&shape);
            let space = shape.code_space();
            let stride = (space / 211).max(1);
            for a in (0..space).step_by(stride as usize) {
                for b in (0..space).step_by((stride * 5 + 3) as usize) {
                    let want = tensor_add(&SymTensor::new(shape, a), &SymTensor::new(shape, b))
                        .unwrap()
                        .code();
                    assert_eq!(adder.add(a, b), want, "p={p} a={a} b={b}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_and_commutativity(seed_a in 0u64..59049, seed_b in 0u64..59049) {
            let l = layout(3, 3, 3);
            let a = SymTensor::new(*l.shape(), seed_a);
            let b = SymTensor::new(*l.shape(), seed_b);
            // round trip
            prop_assert_eq!(l.pack(&l.flatten(&a)).unwrap().code(), seed_a);
            // commutativity through two different addition paths
            let adder = CodeAdder::new(l.shape());
            prop_assert_eq!(
                tensor_add(&a, &b).unwrap().code(),
                adder.add(seed_b, seed_a)
            );
        }

        #[test]
        fn digits_round_trip(code in 0u64..32768) {
            let l = layout(3, 4, 2);
            prop_assert_eq!(l.code_of(&l.digits_of(code)), code);
        }
    }
}
