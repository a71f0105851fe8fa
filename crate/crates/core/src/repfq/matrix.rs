//! Dense matrices over a [`GaloisField`].

use super::field::{Elem, GaloisField};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Self {
            rows: r,
            cols,
            data,
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat, f: &GaloisField) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem], f: &GaloisField) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for (k, &x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if a != 0 && x != 0 {
                        acc = f.add(acc, f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Mat, f: &GaloisField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Mat, f: &GaloisField) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: Elem, f: &GaloisField) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, s)).collect(),
        }
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self, f: &GaloisField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            for j in 0..self.cols {
                let x = self.get(r, j);
                self.set(r, j, f.mul(x, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let x = self.get(r, j);
                    if x != 0 {
                        let cur = self.get(i, j);
                        self.set(i, j, f.sub(cur, f.mul(factor, x)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self, f: &GaloisField) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place(f);
        (m, p)
    }

    pub fn rank(&self, f: &GaloisField) -> usize {
        self.rref(f).1.len()
    }

    pub fn is_invertible(&self, f: &GaloisField) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace(&self, f: &GaloisField) -> Vec<Vec<Elem>> {
        let (m, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Nilpotency test for square matrices: `self^n = 0`.
    pub fn is_nilpotent(&self, f: &GaloisField) -> bool {
        assert_eq!(self.rows, self.cols);
        let mut p = self.clone();
        for _ in 1..self.rows.max(1) {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self, f);
        }
        p.is_zero()
    }
}

/// Row space membership via a reduced basis.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(rows: Vec<Vec<Elem>>, dim: usize, f: &GaloisField) -> Self {
        let mut m = Mat::from_rows(rows, dim);
        let pivots = m.rref_in_place(f);
        m.rows = pivots.len();
        m.data.truncate(m.rows * dim);
        Self { basis: m, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains(&self, v: &[Elem], f: &GaloisField) -> bool {
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p];
            if c == 0 {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate() {
                let b = self.basis.get(r, j);
                if b != 0 {
                    *wj = f.sub(*wj, f.mul(c, b));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_nullity() {
        let f = GaloisField::new(3, 1).unwrap();
        let m = Mat::from_rows(vec![vec![1, 2, 0], vec![2, 1, 0]], 3);
        // second row = 2 * first over F_3
        assert_eq!(m.rank(&f), 1);
        let ns = m.nullspace(&f);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v, &f).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn invertibility_and_nilpotency() {
        let f = GaloisField::new(2, 1).unwrap();
        assert!(Mat::identity(3).is_invertible(&f));
        let n = Mat::from_rows(vec![vec![0, 1], vec![0, 0]], 2);
        assert!(n.is_nilpotent(&f));
        assert!(!n.is_invertible(&f));
        let rs = RowSpace::new(vec![vec![1, 1, 0]], 3, &f);
        assert!(rs.contains(&[1, 1, 0], &f));
        assert!(!rs.contains(&[1, 0, 0], &f));
    }
}
