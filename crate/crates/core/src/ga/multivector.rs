use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::basis::{metric, BasisBlade, BLADES, DIM};
use super::table;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Grade-wise sign automorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// Main involution: grade `k` times `(-1)^k`.
    Alpha,
    /// Reversion: grade `k` times `(-1)^(k(k-1)/2)`.
    Reverse,
    /// Clifford conjugation: grade `k` times `(-1)^(k(k+1)/2)`.
    Conjugate,
}

impl Involution {
    pub fn sign(self, grade: usize) -> i64 {
        let exponent = match self {
            Involution::Alpha => grade,
            Involution::Reverse => grade * grade.saturating_sub(1) / 2,
            Involution::Conjugate => grade * (grade + 1) / 2,
        };
        if exponent % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Element of Cl(3,3) with exact rational coefficients on the wedge basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    coeffs: Vec<Rational>,
}

impl Default for Multivector {
    fn default() -> Self {
        Self::zero()
    }
}

impl Multivector {
    pub fn zero() -> Self {
        Multivector {
            coeffs: vec![Rational::zero(); BLADES],
        }
    }

    pub fn scalar(value: Rational) -> Self {
        let mut mv = Self::zero();
        mv.coeffs[0] = value;
        mv
    }

    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    pub fn basis(blade: BasisBlade) -> Self {
        let mut mv = Self::zero();
        mv.coeffs[blade.mask()] = Rational::one();
        mv
    }

    /// The generator `e_{index+1}`.
    pub fn generator(index: usize) -> Self {
        Self::basis(BasisBlade::generator(index))
    }

    /// The pseudoscalar `e123456`.
    pub fn pseudoscalar() -> Self {
        Self::basis(BasisBlade::PSEUDOSCALAR)
    }

    pub fn vector(coords: &[Rational; DIM]) -> Self {
        let mut mv = Self::zero();
        for (i, c) in coords.iter().enumerate() {
            mv.coeffs[1 << i] = c.clone();
        }
        mv
    }

    pub fn vector_i64(coords: [i64; DIM]) -> Self {
        Self::vector(&coords.map(rational::int))
    }

    /// Builds an element from `(label, coefficient)` pairs; labels follow
    /// [`BasisBlade::parse`], so `"e21"` contributes with a flipped sign.
    pub fn from_labels<'a, I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Rational)>,
    {
        let mut mv = Self::zero();
        for (label, c) in terms {
            if let Some((sign, blade)) = BasisBlade::parse(label)? {
                mv.coeffs[blade.mask()] += c * rational::int(sign);
            }
        }
        Ok(mv)
    }

    pub fn from_i64_terms(terms: &[(&str, i64)]) -> Result<Self> {
        Self::from_labels(terms.iter().map(|&(l, c)| (l, rational::int(c))))
    }

    pub fn coeff(&self, blade: BasisBlade) -> &Rational {
        &self.coeffs[blade.mask()]
    }

    pub fn set(&mut self, blade: BasisBlade, value: Rational) {
        self.coeffs[blade.mask()] = value;
    }

    /// Coefficient by label, e.g. `"e1234"`. Panics on a malformed label.
    pub fn get(&self, label: &str) -> Rational {
        match BasisBlade::parse(label).expect("valid blade label") {
            Some((sign, blade)) => &self.coeffs[blade.mask()] * rational::int(sign),
            None => Rational::zero(),
        }
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (BasisBlade, &Rational)> + '_ {
        BasisBlade::canonical_order()
            .iter()
            .map(|&b| (b, &self.coeffs[b.mask()]))
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Multivector {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Sorted list of grades with a nonzero part.
    pub fn grades(&self) -> Vec<usize> {
        let mut present = [false; DIM + 1];
        for (m, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                present[(m as u32).count_ones() as usize] = true;
            }
        }
        (0..=DIM).filter(|&k| present[k]).collect()
    }

    /// The single grade of a nonzero homogeneous element.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        match self.grades().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn grade_part(&self, k: usize) -> Self {
        Multivector {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| {
                    if (m as u32).count_ones() as usize == k {
                        c.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        }
    }

    /// Everything except the grade-`k` part.
    pub fn without_grade(&self, k: usize) -> Self {
        self - &self.grade_part(k)
    }

    pub fn scalar_part(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// `Some(true)` for even, `Some(false)` for odd, `None` for mixed.
    /// Zero counts as even.
    pub fn parity(&self) -> Option<bool> {
        let grades = self.grades();
        if grades.iter().all(|k| k % 2 == 0) {
            Some(true)
        } else if grades.iter().all(|k| k % 2 == 1) {
            Some(false)
        } else {
            None
        }
    }

    /// Coordinates of a pure vector (zero is accepted).
    pub fn as_vector(&self) -> Option<[Rational; DIM]> {
        if self.grades().iter().any(|&k| k != 1) {
            return None;
        }
        Some(std::array::from_fn(|i| self.coeffs[1 << i].clone()))
    }

    pub fn involution(&self, kind: Involution) -> Self {
        Multivector {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| {
                    if kind.sign((m as u32).count_ones() as usize) < 0 {
                        -c
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        }
    }

    pub fn alpha(&self) -> Self {
        self.involution(Involution::Alpha)
    }

    pub fn reverse(&self) -> Self {
        self.involution(Involution::Reverse)
    }

    pub fn conjugate(&self) -> Self {
        self.involution(Involution::Conjugate)
    }

    /// Geometric product.
    pub fn gp(&self, other: &Multivector) -> Self {
        let (a, da) = integer_terms(self);
        let (b, db) = integer_terms(other);
        let denom = da * db;
        let numer = match product_i128(&a, &b, |_, _, _| true) {
            Some(n) => n.into_iter().map(BigInt::from).collect(),
            None => product_big(&a, &b, |_, _, _| true),
        };
        from_numerators(numer, &denom)
    }

    /// Exterior product; independent of the metric.
    pub fn wedge(&self, other: &Multivector) -> Self {
        let mut out = Self::zero();
        for (i, x) in self.nonzero() {
            for (j, y) in other.nonzero() {
                if let Some(s) = BasisBlade::from_mask(i).wedge_sign(BasisBlade::from_mask(j)) {
                    let t = x * y;
                    if s > 0 {
                        out.coeffs[i | j] += t;
                    } else {
                        out.coeffs[i | j] -= t;
                    }
                }
            }
        }
        out
    }

    /// Left contraction: for blades of grades `r <= s`, the grade `s - r`
    /// part of their geometric product; zero when `r > s`.
    pub fn left_contraction(&self, other: &Multivector) -> Self {
        let (a, da) = integer_terms(self);
        let (b, db) = integer_terms(other);
        let denom = da * db;
        let keep = |x: usize, y: usize, z: usize| {
            let (r, s, t) = (x.count_ones(), y.count_ones(), z.count_ones());
            r <= s && t == s - r
        };
        let numer = match product_i128(&a, &b, keep) {
            Some(n) => n.into_iter().map(BigInt::from).collect(),
            None => product_big(&a, &b, keep),
        };
        from_numerators(numer, &denom)
    }

    /// Scalar product of two vectors through the bilinear form; half the
    /// anticommutator. Other grades are ignored.
    pub fn dot_vectors(&self, other: &Multivector) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                let g = metric(i, j);
                if g != 0 {
                    acc += &self.coeffs[1 << i] * &other.coeffs[1 << j] * rational::int(g);
                }
            }
        }
        acc
    }

    /// Multiplication by the pseudoscalar on the right, `A J`.
    pub fn dual(&self) -> Self {
        self.gp(&Self::pseudoscalar())
    }

    /// True iff `self = t * other` for a nonzero rational `t`.
    pub fn projective_eq(&self, other: &Multivector) -> Result<bool> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::Zero(
                "projective class of the zero multivector is undefined".into(),
            ));
        }
        Ok(crate::linalg::proportional_factor(&self.coeffs, &other.coeffs).is_some())
    }

    /// The factor `t` with `self = t * other`.
    pub fn proportional_factor(&self, other: &Multivector) -> Option<Rational> {
        crate::linalg::proportional_factor(&self.coeffs, &other.coeffs)
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Scaled so that the coefficients are coprime integers with the first
    /// nonzero coefficient (canonical order) positive.
    pub fn primitive(&self) -> Self {
        let (terms, _) = integer_terms(self);
        let mut g = BigInt::zero();
        for (_, n) in &terms {
            g = g.gcd(n);
        }
        if g.is_zero() {
            return self.clone();
        }
        let first = self
            .terms()
            .next()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if first {
            g = -g;
        }
        let mut out = Self::zero();
        for (m, n) in terms {
            out.coeffs[m] = Rational::from_integer(n / &g);
        }
        out
    }
}

/// Nonzero coefficients as integers over a common denominator.
fn integer_terms(mv: &Multivector) -> (Vec<(usize, BigInt)>, BigInt) {
    let mut denom = BigInt::one();
    for c in mv.coeffs.iter().filter(|c| !c.is_zero()) {
        if !c.denom().is_one() {
            denom = denom.lcm(c.denom());
        }
    }
    let terms = mv
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m, c.numer() * (&denom / c.denom())))
        .collect();
    (terms, denom)
}

fn from_numerators(numer: Vec<BigInt>, denom: &BigInt) -> Multivector {
    Multivector {
        coeffs: numer
            .into_iter()
            .map(|n| {
                if n.is_zero() {
                    Rational::zero()
                } else {
                    Rational::new(n, denom.clone())
                }
            })
            .collect(),
    }
}

/// Product accumulation on machine integers; `None` on overflow.
fn product_i128<F>(a: &[(usize, BigInt)], b: &[(usize, BigInt)], keep: F) -> Option<Vec<i128>>
where
    F: Fn(usize, usize, usize) -> bool,
{
    let small = |terms: &[(usize, BigInt)]| -> Option<Vec<(usize, i128)>> {
        terms
            .iter()
            .map(|(m, n)| n.to_i64().map(|v| (*m, v as i128)))
            .collect()
    };
    let a = small(a)?;
    let b = small(b)?;
    let mut out = vec![0i128; BLADES];
    for &(i, x) in &a {
        for &(j, y) in &b {
            let xy = x.checked_mul(y)?;
            for &(k, c) in table::product(BasisBlade::from_mask(i), BasisBlade::from_mask(j)) {
                let k = k as usize;
                if !keep(i, j, k) {
                    continue;
                }
                let t = xy.checked_mul(c as i128)?;
                out[k] = out[k].checked_add(t)?;
            }
        }
    }
    Some(out)
}

fn product_big<F>(a: &[(usize, BigInt)], b: &[(usize, BigInt)], keep: F) -> Vec<BigInt>
where
    F: Fn(usize, usize, usize) -> bool,
{
    let mut out = vec![BigInt::zero(); BLADES];
    for (i, x) in a {
        for (j, y) in b {
            let xy = x * y;
            for &(k, c) in table::product(BasisBlade::from_mask(*i), BasisBlade::from_mask(*j)) {
                let k = k as usize;
                if keep(*i, *j, k) {
                    out[k] += &xy * c;
                }
            }
        }
    }
    out
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        Multivector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        Multivector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        Multivector {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Mul for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (blade, c) in self.terms() {
            let negative = c.is_negative();
            let magnitude = rational::format(&c.abs());
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sign)?;
            if blade == BasisBlade::SCALAR {
                f.write_str(&magnitude)?;
            } else if magnitude == "1" {
                write!(f, "{blade}")?;
            } else {
                write!(f, "{magnitude}{blade}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({self})")
    }
}
