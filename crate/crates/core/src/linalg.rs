//! Dense matrices over the rationals with exact elimination.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(i, j)] - &f * &self[(r, j)];
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pivot;
                for j in c..n {
                    let v = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// The factor `t` with `self = t * other`, if the matrices are proportional
    /// with a nonzero factor.
    pub fn proportional_factor(&self, other: &QMatrix) -> Option<Rational> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        proportional_factor(&self.data, &other.data)
    }

    pub fn is_projectively_equal(&self, other: &QMatrix) -> bool {
        self.proportional_factor(other).is_some()
    }
}

/// The factor `t` with `a = t * b` (`t != 0`), if one exists.
pub fn proportional_factor(a: &[Rational], b: &[Rational]) -> Option<Rational> {
    if a.len() != b.len() {
        return None;
    }
    let k = b.iter().position(|v| !v.is_zero())?;
    let t = &a[k] / &b[k];
    if t.is_zero() {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| *x == &t * y).then_some(t)
}

/// Dimension of the span of the given vectors.
pub fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_rows(vectors.to_vec()).rank()
}

/// True if both families span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    let joined: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(&joined) == ra
}

/// Dimension of the intersection of two spans.
pub fn intersection_dim(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> usize {
    let joined: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    span_rank(a) + span_rank(b) - span_rank(&joined)
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rational::format).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
