use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::EngineError;

/// Immutable sparse integer matrix with arbitrary-precision entries.
///
/// Invariant: no explicit zero is stored and all indices are in bounds.
/// Every operation returns a fresh value.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..n {
            entries.insert((i, i), BigInt::one());
        }
        ExactMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn from_entries<I>(rows: usize, cols: usize, it: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), BigInt)>,
    {
        let mut m = ExactMatrix::zero(rows, cols);
        for ((r, c), v) in it {
            m.add_to(r, c, &v);
        }
        m
    }

    /// Build from dense rows of machine integers; handy in tests.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = ExactMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    m.entries.insert((i, j), BigInt::from(*v));
                }
            }
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = ExactMatrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column of wrong height");
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v.clone());
                }
            }
        }
        m
    }

    pub fn column_vector(col: &[BigInt]) -> Self {
        ExactMatrix::from_columns(col.len(), std::slice::from_ref(&col.to_vec()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            entries.insert((c, r), v.clone());
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|(&k, v)| (k, -v.clone())).collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, EngineError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(EngineError::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = self.clone();
        for (&(r, c), v) in &other.entries {
            m.add_to(r, c, v);
        }
        Ok(m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, EngineError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, EngineError> {
        if self.cols != other.rows {
            return Err(EngineError::ShapeMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Group the right factor by row for sparse accumulation.
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(r, k), v) in &self.entries {
            for &(c, w) in &by_row[k] {
                let e = acc.entry((r, c)).or_insert_with(BigInt::zero);
                *e += v * w;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: acc,
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return ExactMatrix::zero(self.rows, self.cols);
        }
        let entries = self.entries.iter().map(|(&p, v)| (p, v * k)).collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(r, cc), v) in &self.entries {
            if cc == c {
                out[r] = v.clone();
            }
        }
        out
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn select_columns(&self, keep: &[usize]) -> Self {
        let cols: Vec<Vec<BigInt>> = keep.iter().map(|&c| self.column(c)).collect();
        ExactMatrix::from_columns(self.rows, &cols)
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        self.transpose().select_columns(keep).transpose()
    }

    /// `[self | other]` side by side.
    pub fn hstack(&self, other: &Self) -> Result<Self, EngineError> {
        if self.rows != other.rows {
            return Err(EngineError::ShapeMismatch(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = ExactMatrix::zero(self.rows, self.cols + other.cols);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((r, c), v.clone());
        }
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r, c + self.cols), v.clone());
        }
        Ok(m)
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self, EngineError> {
        if self.cols != other.cols {
            return Err(EngineError::ShapeMismatch(format!(
                "vstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = ExactMatrix::zero(self.rows + other.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            m.entries.insert((r, c), v.clone());
        }
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r + self.rows, c), v.clone());
        }
        Ok(m)
    }

    /// Entrywise reduction into `[0, m)`; `m = 0` is the identity.
    pub fn mod_reduce(&self, m: u64) -> Self {
        if m == 0 {
            return self.clone();
        }
        let big = BigInt::from(m);
        let mut entries = BTreeMap::new();
        for (&p, v) in &self.entries {
            let r = v.mod_floor(&big);
            if !r.is_zero() {
                entries.insert(p, r);
            }
        }
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>, EngineError> {
        if x.len() != self.cols {
            return Err(EngineError::ShapeMismatch(format!(
                "apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            if !x[c].is_zero() {
                out[r] += v * &x[c];
            }
        }
        Ok(out)
    }

    /// Determinant by the fraction-free Bareiss algorithm. Independent of the
    /// Smith machinery so it can serve as an oracle for unimodularity.
    pub fn determinant(&self) -> Result<BigInt, EngineError> {
        if self.rows != self.cols {
            return Err(EngineError::ShapeMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match swap {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    // division by the previous pivot is exact in Bareiss
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    pub fn gcd_of_entries(&self) -> BigInt {
        let mut g = BigInt::zero();
        for v in self.entries.values() {
            g = g.gcd(v);
        }
        g
    }

    pub fn max_abs_entry(&self) -> BigInt {
        let mut m = BigInt::zero();
        for v in self.entries.values() {
            let a = v.abs();
            if a > m {
                m = a;
            }
        }
        m
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(24) {
            let row: Vec<String> = (0..self.cols.min(24))
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        if self.rows > 24 || self.cols > 24 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}
