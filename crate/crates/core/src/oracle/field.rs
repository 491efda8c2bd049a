//! Dense matrices over a prime field, row-vector convention.

use std::fmt;

/// A residue modulo `p`; `p` travels with the matrices, not the scalars.
pub type FieldElement = u32;

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut r = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u32,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} mod {}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Matrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElement>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j) as u64;
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = ((out.data[idx] as u64 + a * b) % p) as u32;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in 0..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = (m.data[idx] as u64 * inv % p) as u32;
            }
            for i in 0..m.rows {
                let f = m.get(i, c) as u64;
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let sub = f * m.get(r, j) as u64 % p;
                    let idx = i * m.cols + j;
                    m.data[idx] = ((m.data[idx] as u64 + p - sub) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of `{x : x · self = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref();
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let p = self.p;
        let mut out = Matrix::zeros(free.len(), n, p);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let v = r.get(i, f);
                out.set(k, pc, (p - v) % p);
            }
        }
        out
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.p);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n, self.p);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len(), self.p);
        for i in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, c));
            }
        }
        out
    }

    /// `self` stacked left of `other` (same row count).
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip_mod_5() {
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]], 2, 5);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, 5));
    }

    #[test]
    fn left_kernel_annihilates() {
        let m = Matrix::from_rows(&[vec![1, 1], vec![1, 1], vec![0, 1]], 2, 2);
        let k = m.left_kernel();
        assert_eq!(k.rows, 1);
        assert!(k.mul(&m).is_zero());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Matrix::from_rows(&[vec![1, 2], vec![2, 4]], 2, 3);
        assert!(m.inverse().is_none());
    }
}
