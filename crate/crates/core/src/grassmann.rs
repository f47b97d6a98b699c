//! Exterior algebra over the four homogeneous coordinates of P³.
//!
//! Points are vectors `x0 e1 + x1 e2 + x2 e3 + x3 e4` and a line with Plücker
//! coordinates `p` is the bivector
//! `p01 e12 + p02 e13 + p03 e14 + p23 e34 - p31 e24 + p12 e23`,
//! which is exactly the wedge of two of its points.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::lines::{Coords6, Point};
use crate::rational::Rational;

/// Element of the 16-dimensional Grassmann algebra of R⁴.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannP3 {
    coeffs: [Rational; 16],
}

fn wedge_sign(a: usize, b: usize) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for i in 0..4 {
        if b >> i & 1 == 1 {
            swaps += (a >> (i + 1)).count_ones();
        }
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

impl GrassmannP3 {
    pub fn zero() -> Self {
        GrassmannP3 {
            coeffs: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn point(x: &Point) -> Self {
        let mut g = Self::zero();
        for (i, c) in x.iter().enumerate() {
            g.coeffs[1 << i] = c.clone();
        }
        g
    }

    pub fn line(p: &Coords6) -> Self {
        let mut g = Self::zero();
        g.coeffs[0b0011] = p[0].clone();
        g.coeffs[0b0101] = p[1].clone();
        g.coeffs[0b1001] = p[2].clone();
        g.coeffs[0b1100] = p[3].clone();
        g.coeffs[0b1010] = -&p[4];
        g.coeffs[0b0110] = p[5].clone();
        g
    }

    /// Coefficient on the blade with the given bit mask (bit 0 is `e1`).
    pub fn coeff(&self, mask: usize) -> &Rational {
        &self.coeffs[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn wedge(&self, other: &GrassmannP3) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, y) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
            {
                match wedge_sign(a, b) {
                    Some(1) => out.coeffs[a | b] += x * y,
                    Some(_) => out.coeffs[a | b] -= x * y,
                    None => {}
                }
            }
        }
        out
    }
}

/// Rows of the linear map `X -> L ^ X` (a 4x4 matrix acting on points).
fn incidence_rows(line: &Coords6) -> Vec<Vec<Rational>> {
    let l = GrassmannP3::line(line);
    let columns: Vec<GrassmannP3> = (0..4)
        .map(|i| {
            let mut x: Point = std::array::from_fn(|_| Rational::zero());
            x[i] = Rational::from_integer(1.into());
            l.wedge(&GrassmannP3::point(&x))
        })
        .collect();
    [0b0111, 0b1011, 0b1101, 0b1110]
        .iter()
        .map(|&m| columns.iter().map(|c| c.coeff(m).clone()).collect())
        .collect()
}

/// Common point of two distinct intersecting lines.
pub fn meet_lines(l1: &Coords6, l2: &Coords6) -> Result<Point> {
    let mut rows = incidence_rows(l1);
    rows.extend(incidence_rows(l2));
    let kernel = QMatrix::from_rows(rows).nullspace();
    match kernel.len() {
        1 => Ok(std::array::from_fn(|i| kernel[0][i].clone())),
        0 => Err(Error::Skew("the lines do not intersect".into())),
        _ => Err(Error::Degenerate(
            "identical lines have no unique common point".into(),
        )),
    }
}

/// Points incident with every given line; a basis of the common solution
/// space of `L ^ X = 0`.
pub fn common_points(lines: &[Coords6]) -> Vec<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = lines.iter().flat_map(incidence_rows).collect();
    QMatrix::from_rows(rows).nullspace()
}
