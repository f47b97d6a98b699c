//! Sandwich action, the grade-1 closure test and versor bookkeeping.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ga::{BasisBlade, Multivector, DIM};
use crate::lines::Coords6;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(mv: &Multivector) -> Result<Parity> {
        match mv.parity() {
            Some(true) => Ok(Parity::Even),
            Some(false) => Ok(Parity::Odd),
            None => Err(Error::MixedParity),
        }
    }

    pub fn of_count(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// `alpha(g) X g*`.
pub fn sandwich(g: &Multivector, x: &Multivector) -> Multivector {
    g.alpha().gp(x).gp(&g.conjugate())
}

/// Outcome of the grade-1 closure test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Holds,
    /// `sandwich(g, e_basis)` has the non-vector part `residue`
    /// (`basis` is 1-based).
    Fails {
        basis: usize,
        residue: Multivector,
    },
}

impl Closure {
    pub fn holds(&self) -> bool {
        matches!(self, Closure::Holds)
    }
}

/// Checks that the sandwich of every generator is a pure vector.
pub fn grade1_closure_check(g: &Multivector) -> Result<Closure> {
    Parity::of(g)?;
    for i in 0..DIM {
        let image = sandwich(g, &Multivector::generator(i));
        let residue = image.without_grade(1);
        if !residue.is_zero() {
            return Ok(Closure::Fails {
                basis: i + 1,
                residue,
            });
        }
    }
    Ok(Closure::Holds)
}

/// Matrix of `X -> sandwich(g, X)` on vectors; column `j` is the image of
/// `e_{j+1}`.
pub fn sandwich_matrix(g: &Multivector) -> Result<crate::linalg::QMatrix> {
    let mut columns = Vec::with_capacity(DIM);
    for i in 0..DIM {
        let image = sandwich(g, &Multivector::generator(i));
        match image.as_vector() {
            Some(v) => columns.push(v.to_vec()),
            None => return Err(Error::NotVersor { basis: i + 1 }),
        }
    }
    Ok(crate::linalg::QMatrix::from_columns(&columns))
}

/// A multivector whose sandwich maps vectors to vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Versor {
    mv: Multivector,
    parity: Parity,
    factors: Option<Vec<Coords6>>,
    norm: Rational,
}

impl Versor {
    /// Validates parity and grade-1 closure.
    pub fn new(mv: Multivector) -> Result<Versor> {
        if mv.is_zero() {
            return Err(Error::Zero("the zero multivector is not a versor".into()));
        }
        let parity = Parity::of(&mv)?;
        if let Closure::Fails { basis, .. } = grade1_closure_check(&mv)? {
            return Err(Error::NotVersor { basis });
        }
        let norm = mv.gp(&mv.conjugate()).scalar_part().clone();
        Ok(Versor {
            mv,
            parity,
            factors: None,
            norm,
        })
    }

    /// Geometric product of the given vectors.
    pub fn from_factors(factors: &[Coords6]) -> Result<Versor> {
        let mut mv = Multivector::one();
        for f in factors {
            mv = mv.gp(&Multivector::vector(f));
        }
        if mv.is_zero() {
            return Err(Error::Zero("the product of the factors vanishes".into()));
        }
        let norm = mv.gp(&mv.conjugate()).scalar_part().clone();
        Ok(Versor {
            mv,
            parity: Parity::of_count(factors.len()),
            factors: Some(factors.to_vec()),
            norm,
        })
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn factors(&self) -> Option<&[Coords6]> {
        self.factors.as_deref()
    }

    /// The scalar `g g*`.
    pub fn norm(&self) -> &Rational {
        &self.norm
    }

    pub fn norm_sign(&self) -> i32 {
        rational::sign(&self.norm)
    }

    pub fn is_null(&self) -> bool {
        self.norm.is_zero()
    }

    pub fn sandwich(&self, x: &Multivector) -> Multivector {
        sandwich(&self.mv, x)
    }
}

/// A versor scaled to `g g* = +-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    /// Coefficients of `g / sqrt|g g*|` in canonical blade order (nonzero only).
    pub coeffs: Vec<(BasisBlade, f64)>,
    /// Exact representative and its norm.
    pub exact: Multivector,
    pub norm: Rational,
    pub sign: i32,
}

pub fn versor_normalize(g: &Versor) -> Result<Normalized> {
    if g.is_null() {
        return Err(Error::NullVersor);
    }
    let abs = g.norm.abs();
    let scale = match rational::sqrt_exact(&abs) {
        Some(r) => 1.0 / rational::to_f64(&r),
        None => 1.0 / rational::to_f64(&abs).sqrt(),
    };
    Ok(Normalized {
        coeffs: g
            .mv
            .terms()
            .map(|(b, c)| (b, rational::to_f64(c) * scale))
            .collect(),
        exact: g.mv.clone(),
        norm: g.norm.clone(),
        sign: g.norm_sign(),
    })
}

/// Product of at most six vectors, at least one of them null.
pub fn null_versor_compose(vectors: &[Coords6]) -> Result<Versor> {
    if vectors.is_empty() {
        return Err(Error::Precondition("no vectors given".into()));
    }
    if vectors.len() > DIM {
        return Err(Error::Precondition("at most six vectors".into()));
    }
    if vectors.iter().any(|v| v.iter().all(Zero::is_zero)) {
        return Err(Error::Zero("zero vector in a null versor".into()));
    }
    if !vectors.iter().any(crate::lines::satisfies_pluecker) {
        return Err(Error::Precondition(
            "all vectors are non-null; build a regular versor instead".into(),
        ));
    }
    Versor::from_factors(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::coords_i64;
    use crate::rational::int;
    use crate::reference;
    use proptest::prelude::*;

    fn nonnull_vectors(max: usize) -> impl Strategy<Value = Vec<Coords6>> {
        proptest::collection::vec(proptest::array::uniform6(-3i64..=3), 0..=max).prop_map(|vs| {
            vs.into_iter()
                .map(coords_i64)
                .filter(|v| !crate::lines::satisfies_pluecker(v))
                .collect()
        })
    }

    #[test]
    fn identity_sandwich() {
        let x = Multivector::from_i64_terms(&[("e1", 2), ("e35", 1)]).unwrap();
        assert_eq!(sandwich(&Multivector::one(), &x), x);
    }

    #[test]
    fn reflection_of_a_generator() {
        let a = Multivector::vector_i64([1, 0, 0, 1, 0, 0]);
        assert_eq!(
            sandwich(&a, &Multivector::generator(0)),
            Multivector::generator(3).scale(&int(2))
        );
        assert_eq!(
            sandwich(&a, &Multivector::generator(1)),
            Multivector::generator(1).scale(&int(-2))
        );
    }

    #[test]
    fn reference_versors_pass_closure() {
        for g in [
            reference::g_plus(),
            reference::g_minus(),
            reference::h_plus(),
            reference::h_minus(),
        ] {
            assert!(grade1_closure_check(&g).unwrap().holds());
        }
    }

    #[test]
    fn closure_rejects_perturbation() {
        let g = Multivector::from_i64_terms(&[("e0", 1), ("e1234", 3)]).unwrap();
        match grade1_closure_check(&g).unwrap() {
            Closure::Fails { residue, .. } => assert!(!residue.is_zero()),
            Closure::Holds => panic!("1 + 3 e1234 is not a versor"),
        }
        let mixed = Multivector::from_i64_terms(&[("e0", 1), ("e1", 1)]).unwrap();
        assert_eq!(grade1_closure_check(&mixed), Err(Error::MixedParity));
    }

    #[test]
    fn norms_and_normalization() {
        let gp = Versor::new(reference::g_plus()).unwrap();
        assert_eq!(gp.norm(), &int(128));
        assert_eq!(versor_normalize(&gp).unwrap().sign, 1);
        let gm = Versor::new(reference::g_minus()).unwrap();
        assert_eq!(gm.norm(), &int(-128));
        assert_eq!(versor_normalize(&gm).unwrap().sign, -1);
        assert_eq!(Versor::new(reference::h_plus()).unwrap().norm(), &int(64));
        assert_eq!(Versor::new(reference::h_minus()).unwrap().norm(), &int(-64));
        let two = Versor::new(Multivector::scalar(int(2))).unwrap();
        let n = versor_normalize(&two).unwrap();
        assert_eq!(n.sign, 1);
        assert_eq!(n.coeffs, vec![(BasisBlade::SCALAR, 1.0)]);
        let normalized = versor_normalize(&gp).unwrap();
        let (b, c) = gp.mv().terms().next().unwrap();
        assert_eq!(normalized.coeffs[0].0, b);
        assert!(
            (normalized.coeffs[0].1 - crate::rational::to_f64(c) / 128f64.sqrt()).abs() < 1e-12
        );
    }

    #[test]
    fn null_versors() {
        let e1 = coords_i64([1, 0, 0, 0, 0, 0]);
        let v = null_versor_compose(std::slice::from_ref(&e1)).unwrap();
        assert!(v.is_null());
        assert_eq!(versor_normalize(&v), Err(Error::NullVersor));
        assert!(null_versor_compose(&[]).is_err());
        assert!(null_versor_compose(&[coords_i64([1, 0, 0, 1, 0, 0])]).is_err());
    }

    proptest! {
        #[test]
        fn products_of_vectors_are_versors(vs in nonnull_vectors(6)) {
            let v = Versor::from_factors(&vs).unwrap();
            prop_assert!(grade1_closure_check(v.mv()).unwrap().holds());
            prop_assert_eq!(Versor::new(v.mv().clone()).unwrap().parity(), Parity::of_count(vs.len()));
        }

        #[test]
        fn sandwich_is_linear(vs in nonnull_vectors(3), x in proptest::array::uniform6(-5i64..=5), y in proptest::array::uniform6(-5i64..=5), a in -4i64..=4, b in -4i64..=4) {
            let g = Versor::from_factors(&vs).unwrap();
            let (x, y) = (Multivector::vector_i64(x), Multivector::vector_i64(y));
            let lhs = g.sandwich(&(&x.scale(&int(a)) + &y.scale(&int(b))));
            let rhs = &g.sandwich(&x).scale(&int(a)) + &g.sandwich(&y).scale(&int(b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn null_vectors_stay_null(vs in nonnull_vectors(6), p in proptest::array::uniform4(-5i64..=5), q in proptest::array::uniform4(-5i64..=5)) {
            let Ok(l) = crate::lines::line_from_points(&crate::lines::point_i64(p), &crate::lines::point_i64(q)) else { return Ok(()) };
            let g = Versor::from_factors(&vs).unwrap();
            let image = g.sandwich(&Multivector::vector(&l));
            prop_assert!(image.gp(&image).is_zero());
        }
    }
}
