//! Small dense exact-rational matrices: elimination, rank, nullspaces,
//! square solves. Everything here is fraction-free in spirit but implemented
//! directly over [`Rat`] since our systems are tiny.

use num_traits::{One, Zero};

use crate::rat::{Rat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: Vec<RatVec>,
    cols: usize,
}

impl Mat {
    pub fn from_rows(rows: Vec<RatVec>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.dim() == cols));
        Mat { rows, cols }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                RatVec::new(
                    (0..n)
                        .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                        .collect(),
                )
            })
            .collect();
        Mat { rows, cols: n }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RatVec {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i].coords()[j]
    }

    pub fn transpose(&self) -> Mat {
        let rows = (0..self.cols)
            .map(|j| RatVec::new(self.rows.iter().map(|r| r.coords()[j].clone()).collect()))
            .collect();
        Mat::from_rows(rows, self.n_rows())
    }

    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        debug_assert_eq!(v.dim(), self.cols);
        RatVec::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i].coords()[c].is_zero())
            else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r].coords()[c].recip();
            self.rows[r] = self.rows[r].scaled(&inv);
            for i in 0..self.rows.len() {
                if i != r && !self.rows[i].coords()[c].is_zero() {
                    let f = -self.rows[i].coords()[c].clone();
                    self.rows[i] = self.rows[i].add_scaled(&f, &self.rows[r].clone());
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Deterministic basis of `{x : self * x = 0}` built from the rref
    /// free columns (each basis vector has a 1 in its free coordinate).
    pub fn nullspace(&self) -> Vec<RatVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Rat::zero(); self.cols];
                v[fc] = Rat::one();
                for (ri, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.rows[ri].coords()[fc].clone();
                }
                RatVec::new(v)
            })
            .collect()
    }

    /// Solves the square system `self * x = rhs`; `None` when singular.
    pub fn solve_square(&self, rhs: &RatVec) -> Option<RatVec> {
        debug_assert_eq!(self.n_rows(), self.cols);
        debug_assert_eq!(rhs.dim(), self.n_rows());
        let mut aug = Mat::from_rows(
            self.rows
                .iter()
                .zip(rhs.iter())
                .map(|(r, b)| {
                    let mut c = r.coords().to_vec();
                    c.push(b.clone());
                    RatVec::new(c)
                })
                .collect(),
            self.cols + 1,
        );
        let pivots = aug.rref();
        if pivots.len() != self.cols || pivots.contains(&self.cols) {
            return None;
        }
        Some(RatVec::new(
            (0..self.cols)
                .map(|i| aug.rows[i].coords()[self.cols].clone())
                .collect(),
        ))
    }

    pub fn inverse(&self) -> Option<Mat> {
        debug_assert_eq!(self.n_rows(), self.cols);
        let n = self.cols;
        let mut aug = Mat::from_rows(
            self.rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut c = r.coords().to_vec();
                    c.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                    RatVec::new(c)
                })
                .collect(),
            2 * n,
        );
        let pivots = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        Some(Mat::from_rows(
            aug.rows
                .iter()
                .map(|r| RatVec::new(r.coords()[n..].to_vec()))
                .collect(),
            n,
        ))
    }
}

/// Rank of the span of a family of vectors.
pub fn span_rank(vectors: &[RatVec], dim: usize) -> usize {
    Mat::from_rows(vectors.to_vec(), dim).rank()
}

/// Solves `sum_i x_i * columns[i] = rhs` exactly (possibly overdetermined);
/// `None` when inconsistent, and the solution is unique only if the columns
/// are independent (callers check that).
pub fn solve_in_span(columns: &[RatVec], rhs: &RatVec, dim: usize) -> Option<RatVec> {
    let k = columns.len();
    let mut aug = Mat::from_rows(
        (0..dim)
            .map(|i| {
                let mut row: Vec<Rat> = columns.iter().map(|c| c.coords()[i].clone()).collect();
                row.push(rhs.coords()[i].clone());
                RatVec::new(row)
            })
            .collect(),
        k + 1,
    );
    let pivots = aug.rref();
    if pivots.contains(&k) {
        return None; // inconsistent
    }
    let mut x = vec![Rat::zero(); k];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.rows[ri].coords()[k].clone();
    }
    Some(RatVec::new(x))
}

/// dim(span A ∩ span B) = dim A + dim B − dim(A + B).
pub fn intersection_dim(a: &[RatVec], b: &[RatVec], dim: usize) -> usize {
    let da = span_rank(a, dim);
    let db = span_rank(b, dim);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    da + db - span_rank(&all, dim)
}
