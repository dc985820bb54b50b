use std::fmt;

use super::field::FiniteField;
use crate::error::{Error, Result};

/// A square matrix over a finite field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FiniteField,
    n: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.field, self.to_text())
    }
}

impl Matrix {
    pub fn new(field: &FiniteField, n: usize, entries: Vec<u32>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::input(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| !field.contains(e)) {
            return Err(Error::input(format!("entry {bad} not in {:?}", field)));
        }
        Ok(Matrix {
            field: field.clone(),
            n,
            entries,
        })
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        Matrix::scalar(field, n, 1)
    }

    pub fn scalar(field: &FiniteField, n: usize, c: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = c;
        }
        Matrix {
            field: field.clone(),
            n,
            entries,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert!(
            self.n == other.n && self.field == other.field,
            "matrix shape or field mismatch"
        );
        let n = self.n;
        let f = &self.field;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[k * n + j];
                    if b != 0 {
                        out[i * n + j] = f.add(out[i * n + j], f.mul(a, b));
                    }
                }
            }
        }
        Matrix {
            field: f.clone(),
            n,
            entries: out,
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        Matrix {
            field: self.field.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&e| self.field.mul(e, c)).collect(),
        }
    }

    pub fn det(&self) -> u32 {
        let f = &self.field;
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = m[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("nonzero pivot");
            for r in (col + 1)..n {
                let factor = f.mul(m[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = f.mul(factor, m[col * n + j]);
                    m[r * n + j] = f.sub(m[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Matrix::identity(f, n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    b.swap(pivot * n + j, col * n + j);
                }
            }
            let pinv = f.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                b[col * n + j] = f.mul(b[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[col * n + j]));
                }
            }
        }
        Some(Matrix {
            field: f.clone(),
            n,
            entries: b,
        })
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value() == Some(1)
    }

    /// `Some(c)` iff the matrix is `c·I` with `c ≠ 0`.
    pub fn scalar_value(&self) -> Option<u32> {
        let n = self.n;
        let c = self.entries[0];
        if c == 0 {
            return None;
        }
        for i in 0..n {
            for j in 0..n {
                let e = self.entries[i * n + j];
                if (i == j && e != c) || (i != j && e != 0) {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// True iff the matrix lies in `F_q^× · I`.
    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    /// Canonical representative of the class modulo scalars: the first
    /// nonzero entry (row-major) is scaled to 1.
    pub fn projective_normalize(&self) -> Matrix {
        let lead = *self
            .entries
            .iter()
            .find(|&&e| e != 0)
            .expect("invertible matrix has a nonzero entry");
        let inv = self.field.inv(lead).expect("nonzero");
        self.scale(inv)
    }

    /// Block matrix assembled from an `ℓ×ℓ` grid of `n×n` blocks; `None`
    /// entries are zero blocks.
    pub fn from_blocks(field: &FiniteField, n: usize, blocks: &[Vec<Option<Matrix>>]) -> Matrix {
        let l = blocks.len();
        let dim = n * l;
        let mut entries = vec![0u32; dim * dim];
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, block) in row.iter().enumerate() {
                if let Some(m) = block {
                    for i in 0..n {
                        for j in 0..n {
                            entries[(bi * n + i) * dim + bj * n + j] = m.get(i, j);
                        }
                    }
                }
            }
        }
        Matrix {
            field: field.clone(),
            n: dim,
            entries,
        }
    }

    /// The `n×n` block at block position `(bi, bj)`.
    pub fn block(&self, n: usize, bi: usize, bj: usize) -> Matrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(bi * n + i, bj * n + j));
            }
        }
        Matrix {
            field: self.field.clone(),
            n,
            entries,
        }
    }

    /// `[[a,b],[c,d]]`, row-major.
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// Parses `[[a,b],[c,d]]` (whitespace ignored). Entries are field
    /// element codes.
    pub fn parse(field: &FiniteField, text: &str) -> Result<Matrix> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|s| s.strip_suffix("]]"))
            .ok_or_else(|| Error::input(format!("matrix literal {text:?} must look like [[..],[..]]")))?;
        let rows: Vec<Vec<u32>> = inner
            .split("],[")
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.parse::<u32>()
                            .map_err(|_| Error::input(format!("bad matrix entry {e:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::input("matrix literal must be square"));
        }
        Matrix::new(field, n, rows.concat())
    }
}

/// All `n×n` matrices with entries in `F_q`, in lexicographic order of
/// their row-major entry codes.
pub(crate) fn all_matrices(field: &FiniteField, n: usize) -> impl Iterator<Item = Matrix> + '_ {
    let q = field.q() as u64;
    let total = q.pow((n * n) as u32);
    (0..total).map(move |mut k| {
        let mut entries = vec![0u32; n * n];
        for e in entries.iter_mut().rev() {
            *e = (k % q) as u32;
            k /= q;
        }
        Matrix {
            field: field.clone(),
            n,
            entries,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_times_matrix_is_identity() {
        for q in [2u64, 3, 4, 5] {
            let f = FiniteField::new(q).unwrap();
            for m in all_matrices(&f, 2).filter(Matrix::is_invertible) {
                let inv = m.inverse().unwrap();
                assert!(inv.mul(&m).is_identity());
                assert!(m.mul(&inv).is_identity());
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative() {
        let f = FiniteField::new(3).unwrap();
        let ms: Vec<Matrix> = all_matrices(&f, 2).step_by(7).collect();
        for a in &ms {
            for b in &ms {
                assert_eq!(a.mul(b).det(), f.mul(a.det(), b.det()));
            }
        }
    }

    #[test]
    fn scalar_detection() {
        let f5 = FiniteField::new(5).unwrap();
        assert!(Matrix::identity(&f5, 3).is_scalar());
        assert!(Matrix::scalar(&f5, 2, 2).is_scalar());
        let f2 = FiniteField::new(2).unwrap();
        let m = Matrix::parse(&f2, "[[0,1],[1,1]]").unwrap();
        assert!(!m.is_scalar());
        assert_eq!(m.to_text(), "[[0,1],[1,1]]");
    }

    #[test]
    fn projective_normal_form_identifies_scalar_multiples() {
        let f = FiniteField::new(5).unwrap();
        let m = Matrix::parse(&f, "[[2,1],[0,3]]").unwrap();
        for c in 1..5 {
            assert_eq!(m.scale(c).projective_normalize(), m.projective_normalize());
        }
        assert_eq!(m.projective_normalize().entries()[0], 1);
    }

    #[test]
    fn parse_errors() {
        let f = FiniteField::new(3).unwrap();
        assert!(Matrix::parse(&f, "[[0,1],[1]]").is_err());
        assert!(Matrix::parse(&f, "[[0,5],[1,1]]").is_err());
        assert!(Matrix::parse(&f, "0,1,1,1").is_err());
    }
}
