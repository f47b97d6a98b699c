//! Null polarities: the point maps induced by the sandwich action of a vector.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::lines::Coords6;
use crate::rational::Rational;

/// Null polarity of a vector `a`, stored by its six coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullPolarity {
    a: Coords6,
}

impl NullPolarity {
    pub fn from_vector(a: &Coords6) -> Result<Self> {
        if a.iter().all(Zero::is_zero) {
            return Err(Error::Zero("zero vector has no null polarity".into()));
        }
        Ok(NullPolarity { a: a.clone() })
    }

    /// Reads the vector back from the skew point-to-plane matrix.
    pub fn from_matrix(m: &QMatrix) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::Parse("null polarity must be 4x4".into()));
        }
        if m.transpose() != m.scale(&-Rational::from_integer(1.into())) {
            return Err(Error::NotSkew);
        }
        let a = [
            -m[(2, 3)].clone(),
            m[(1, 3)].clone(),
            -m[(1, 2)].clone(),
            m[(1, 0)].clone(),
            m[(2, 0)].clone(),
            m[(3, 0)].clone(),
        ];
        Self::from_vector(&a)
    }

    pub fn vector(&self) -> &Coords6 {
        &self.a
    }

    /// Skew matrix taking points to planes.
    pub fn matrix(&self) -> QMatrix {
        let a = &self.a;
        let z = Rational::zero;
        QMatrix::from_rows(vec![
            vec![z(), -&a[3], -&a[4], -&a[5]],
            vec![a[3].clone(), z(), -&a[2], a[1].clone()],
            vec![a[4].clone(), a[2].clone(), z(), -&a[0]],
            vec![a[5].clone(), -&a[1], a[0].clone(), z()],
        ])
    }

    /// The same polarity as a skew matrix taking planes to points, the form
    /// used for correlations. Inverse-transpose of [`Self::matrix`] up to
    /// scale.
    pub fn correlation_matrix(&self) -> QMatrix {
        let a = &self.a;
        let z = Rational::zero;
        QMatrix::from_rows(vec![
            vec![z(), a[0].clone(), a[1].clone(), a[2].clone()],
            vec![-&a[0], z(), a[5].clone(), -&a[4]],
            vec![-&a[1], -&a[5], z(), a[3].clone()],
            vec![-&a[2], a[4].clone(), -&a[3], z()],
        ])
    }

    /// `a1 a4 + a2 a5 + a3 a6`; its square is the determinant.
    pub fn pfaffian(&self) -> Rational {
        let a = &self.a;
        &a[0] * &a[3] + &a[1] * &a[4] + &a[2] * &a[5]
    }

    pub fn is_singular(&self) -> bool {
        self.pfaffian().is_zero()
    }
}

/// Line-space matrix of the sandwich with `a`, normalized to half the
/// sandwich so that `M = a (G a)^T - (a1 a4 + a2 a5 + a3 a6) I`.
pub fn vector_to_linemap6(a: &Coords6) -> QMatrix {
    let ga = [&a[3], &a[4], &a[5], &a[0], &a[1], &a[2]];
    let s = &a[0] * &a[3] + &a[1] * &a[4] + &a[2] * &a[5];
    let mut m = QMatrix::zeros(6, 6);
    for i in 0..6 {
        for j in 0..6 {
            m[(i, j)] = &a[i] * ga[j];
        }
        m[(i, i)] -= &s;
    }
    m
}
