//! Prime-field arithmetic and the small amount of linear algebra the coding
//! layer needs: rank and span membership with explicit coefficients.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
}

/// GF(q) for a prime `q`. Elements are represented by their residue in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { q: 2 }
    }
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q as u64 {
        if (q as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        if q >= 1 << 31 || !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        Ok(Self { q })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.q as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn inv(self, a: u32) -> Result<u32, FieldError> {
        if a.is_multiple_of(self.q) {
            return Err(FieldError::ZeroInverse);
        }
        // a^(q-2) by square and multiply.
        let mut base = a % self.q;
        let mut exp = self.q - 2;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn element(self, value: u32) -> FieldElement {
        FieldElement { value: value % self.q, modulus: self.q }
    }

    /// Rank of the row vectors. Rows must share one length.
    pub fn rank(self, rows: &[Vec<u32>]) -> usize {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
            m.swap(rank, p);
            let inv = self.inv(m[rank][col]).expect("pivot is nonzero");
            for r in rank + 1..m.len() {
                let factor = self.mul(m[r][col], inv);
                if factor != 0 {
                    let pivot = m[rank].clone();
                    for (x, &p) in m[r][col..].iter_mut().zip(&pivot[col..]) {
                        *x = self.sub(*x, self.mul(factor, p));
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }

    /// Coefficients `c` with `sum_j c[j] * rows[j] == target`, or `None`.
    ///
    /// Gauss-Jordan elimination on the columns `rows[j]`, pivots taken at the
    /// smallest column index first; free coefficients are set to zero.
    pub fn solve_span(self, target: &[u32], rows: &[Vec<u32>]) -> Option<Vec<u32>> {
        let len = target.len();
        let r = rows.len();
        // m is len x (r + 1): column j holds rows[j], the last column holds target.
        let mut m: Vec<Vec<u32>> = (0..len)
            .map(|l| {
                let mut row: Vec<u32> = rows.iter().map(|v| v[l]).collect();
                row.push(target[l]);
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..r {
            let Some(p) = (next..len).find(|&i| m[i][col] != 0) else { continue };
            m.swap(next, p);
            let inv = self.inv(m[next][col]).expect("pivot is nonzero");
            for x in &mut m[next][col..] {
                *x = self.mul(*x, inv);
            }
            let pivot = m[next].clone();
            for (i, row) in m.iter_mut().enumerate() {
                let factor = row[col];
                if i != next && factor != 0 {
                    for (x, &p) in row[col..].iter_mut().zip(&pivot[col..]) {
                        *x = self.sub(*x, self.mul(factor, p));
                    }
                }
            }
            pivots.push(col);
            next += 1;
            if next == len {
                break;
            }
        }
        if m[next..].iter().any(|row| row[r] != 0) {
            return None;
        }
        let mut coeffs = vec![0; r];
        for (i, &col) in pivots.iter().enumerate() {
            coeffs[col] = m[i][r];
        }
        Some(coeffs)
    }
}

/// An element of GF(q) that remembers its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn field(self) -> PrimeField {
        PrimeField { q: self.modulus }
    }

    fn check(self, other: FieldElement) -> Result<PrimeField, FieldError> {
        if self.modulus != other.modulus {
            return Err(FieldError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(self.field())
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.check(other)?;
        Ok(f.element(f.add(self.value, other.value)))
    }

    pub fn try_sub(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.check(other)?;
        Ok(f.element(f.sub(self.value, other.value)))
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.check(other)?;
        Ok(f.element(f.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<FieldElement, FieldError> {
        let f = self.field();
        Ok(f.element(f.inv(self.value)?))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.field().element(self.field().neg(self.value))
    }
}

/// A global coding vector: one coefficient per unit-rate source symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodingVector {
    field: PrimeField,
    entries: Vec<u32>,
}

impl CodingVector {
    pub fn zeros(field: PrimeField, len: usize) -> Self {
        Self { field, entries: vec![0; len] }
    }

    pub fn unit(field: PrimeField, len: usize, k: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.entries[k] = 1;
        v
    }

    pub fn from_entries(field: PrimeField, entries: impl IntoIterator<Item = u32>) -> Self {
        let entries = entries.into_iter().map(|x| x % field.q()).collect();
        Self { field, entries }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> FieldElement {
        self.field.element(self.entries[k])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&x| x != 0).count()
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: u32, other: &CodingVector) {
        debug_assert_eq!(self.field, other.field);
        debug_assert_eq!(self.len(), other.len());
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    /// Inner product with a plain value vector.
    pub fn dot(&self, values: &[u32]) -> u32 {
        let f = self.field;
        self.entries.iter().zip(values).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }
}

impl fmt::Display for CodingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

fn check_uniform<'a>(rows: impl IntoIterator<Item = &'a CodingVector>, field: PrimeField, len: usize) {
    for r in rows {
        assert_eq!(r.field, field, "coding vectors over different fields");
        assert_eq!(r.len(), len, "coding vectors of different lengths");
    }
}

/// Rank of a list of coding vectors over their common field.
///
/// Panics if the vectors disagree on length or modulus.
pub fn rank(rows: &[CodingVector]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    check_uniform(rows, first.field, first.len());
    let raw: Vec<Vec<u32>> = rows.iter().map(|r| r.entries.clone()).collect();
    first.field.rank(&raw)
}

/// Coefficients expressing `target` in terms of `rows`, if it lies in their span.
///
/// Panics if the vectors disagree on length or modulus.
pub fn in_span(target: &CodingVector, rows: &[CodingVector]) -> Option<Vec<u32>> {
    check_uniform(rows, target.field, target.len());
    let raw: Vec<Vec<u32>> = rows.iter().map(|r| r.entries.clone()).collect();
    target.field.solve_span(&target.entries, &raw)
}
