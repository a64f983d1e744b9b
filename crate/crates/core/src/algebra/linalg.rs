//! Dense linear algebra over `Q(i)`.

use std::fmt;

use super::det::bareiss_det;
use super::gauss::GaussRat;
use super::upoly::UPoly;

pub type Vector = Vec<GaussRat>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<GaussRat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![GaussRat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussRat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_columns(n: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, v[i].clone());
            }
        }
        m
    }

    pub fn diag(ds: &[GaussRat]) -> Self {
        let mut m = Self::zeros(ds.len(), ds.len());
        for (i, d) in ds.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row_vecs(&self) -> Vec<Vec<GaussRat>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut m = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a * o.get(k, j);
                    m.data[i * o.cols + j] += &t;
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[GaussRat]) -> Vector {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(GaussRat::zero(), |acc, j| &acc + &(self.get(i, j) * &v[j])))
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &GaussRat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> Mat {
        (0..e).fold(Mat::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
            let inv = m.get(r, c).inv().expect("pivot nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &(&f * m.get(r, j));
                        m.set(i, j, v);
                    }
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

    /// Basis of the null space, as column vectors.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussRat::zero(); self.cols];
                v[f] = GaussRat::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Basis of the column space (a subset of the columns).
    pub fn column_space(&self) -> Vec<Vector> {
        self.rref().1.into_iter().map(|c| self.column(c)).collect()
    }

    pub fn inverse(&self) -> Option<Mat> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, GaussRat::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[GaussRat]) -> Option<Vector> {
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![GaussRat::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> GaussRat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return GaussRat::one();
        }
        bareiss_det(&self.row_vecs()).expect("square")
    }

    /// `det(x Id - self)`.
    pub fn char_poly(&self) -> UPoly {
        let n = self.rows;
        if n == 0 {
            return UPoly::one();
        }
        let rows: Vec<Vec<UPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = UPoly::constant(-self.get(i, j));
                        if i == j {
                            &UPoly::var() + &c
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        bareiss_det(&rows).expect("square")
    }

    /// Matrix of `self` restricted to an invariant subspace with the given
    /// basis, after projecting along a complement: returns `B` with
    /// `P self v_j = sum_i B_ij v_i`.
    pub fn restrict(&self, basis: &[Vector], complement: &[Vector]) -> Mat {
        let n = self.rows;
        let mut all = basis.to_vec();
        all.extend(complement.iter().cloned());
        let change = Mat::from_columns(n, &all).inverse().expect("basis and complement span");
        let k = basis.len();
        let mut out = Mat::zeros(k, k);
        for (j, v) in basis.iter().enumerate() {
            let coords = change.apply(&self.apply(v));
            for i in 0..k {
                out.set(i, j, coords[i].clone());
            }
        }
        out
    }
}

/// Dimension of the span of a set of vectors of length `n`.
pub fn span_dim(n: usize, vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Mat::from_columns(n, vs).rank()
}

/// Basis of the span.
pub fn span_basis(n: usize, vs: &[Vector]) -> Vec<Vector> {
    if vs.is_empty() {
        return Vec::new();
    }
    Mat::from_columns(n, vs).column_space()
}

pub fn contains(n: usize, space: &[Vector], v: &[GaussRat]) -> bool {
    let mut all = space.to_vec();
    all.push(v.to_vec());
    span_dim(n, &all) == span_dim(n, space)
}

pub fn is_subspace(n: usize, small: &[Vector], big: &[Vector]) -> bool {
    small.iter().all(|v| contains(n, big, v))
}

pub fn intersection_dim(n: usize, a: &[Vector], b: &[Vector]) -> usize {
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    span_dim(n, a) + span_dim(n, b) - span_dim(n, &all)
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .row_vecs()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect()).collect())
    }

    #[test]
    fn kernel_rank_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).iter().all(|c| c.is_zero()));
        let b = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.mul(&b.inverse().unwrap()), Mat::identity(2));
        assert_eq!(b.char_poly(), UPoly::from_ints(&[1, -3, 1]));
        assert_eq!(b.det(), GaussRat::one());
    }
}
