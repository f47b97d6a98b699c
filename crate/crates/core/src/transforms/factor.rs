//! Factorization of line maps into reflections and of projective matrices
//! into at most six null polarities.
//!
//! A line map with multiplier `lambda` is scaled to a Q-orthogonal map `N`,
//! which is written as a product of reflections `R_v(x) = x - 2 (v.x)/(v.v) v`
//! by the constructive Cartan-Dieudonné argument. The state is the current
//! map together with a set `F` of mutually orthogonal non-null vectors it
//! fixes; on `U = F^perp` one of three steps applies:
//!
//! 1. a non-null fixed vector in `U` is moved into `F`;
//! 2. a non-null `x` in `U` with `w = N x - x` non-null is found; reflecting
//!    in `w` makes `x` fixed;
//! 3. otherwise `w` is null for every non-null `x`, which forces
//!    `det N|U = 1`, and any reflection leads back to 1 or 2.
//!
//! Steps 1 and 2 shrink `U`. Counting with parities bounds the number of
//! reflections by `dim U`, so by six overall.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ga::DIM;
use crate::linalg::QMatrix;
use crate::lines::Coords6;
use crate::rational::{self, Rational};

use super::matrix::{
    conformal_multiplier, matrix_to_linemap6, versor_to_matrix, LineMap6, ProjMatrix4,
};
use super::polarity::{vector_to_linemap6, NullPolarity};
use super::versor::{Parity, Versor};

type Vec6 = Vec<Rational>;

fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for i in 0..3 {
        s += &x[i] * &y[i + 3] + &x[i + 3] * &y[i];
    }
    s
}

fn sub(x: &[Rational], y: &[Rational]) -> Vec6 {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn combine(basis: &[Vec6], c: &[i64]) -> Vec6 {
    let mut x = vec![Rational::zero(); DIM];
    for (b, &k) in basis.iter().zip(c) {
        if k != 0 {
            let k = rational::int(k);
            for i in 0..DIM {
                x[i] += &k * &b[i];
            }
        }
    }
    x
}

/// `R_v M`.
fn reflect_left(v: &[Rational], m: &QMatrix) -> QMatrix {
    let vv = dot(v, v);
    let mut out = m.clone();
    for c in 0..DIM {
        let col = m.column(c);
        let f = dot(v, &col) * rational::int(2) / &vv;
        for r in 0..DIM {
            out[(r, c)] -= &f * &v[r];
        }
    }
    out
}

/// Basis of `{x : x . f = 0 for f in fixed}`.
fn complement(fixed: &[Vec6]) -> Vec<Vec6> {
    if fixed.is_empty() {
        return QMatrix::identity(DIM).to_rows();
    }
    let rows: Vec<Vec6> = fixed
        .iter()
        .map(|f| (0..DIM).map(|i| f[(i + 3) % DIM].clone()).collect())
        .collect();
    QMatrix::from_rows(rows).nullspace()
}

/// A non-null vector in the span, if the span is not totally null.
fn non_null_in(basis: &[Vec6]) -> Option<Vec6> {
    for b in basis {
        if !dot(b, b).is_zero() {
            return Some(b.clone());
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s: Vec6 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
            if !dot(&s, &s).is_zero() {
                return Some(s);
            }
        }
    }
    None
}

/// Coefficient vectors in `{-2..2}^m` ordered by max norm, then
/// lexicographically.
fn grid(m: usize) -> impl Iterator<Item = Vec<i64>> {
    (1..=2i64).flat_map(move |n| {
        let side = (2 * n + 1) as usize;
        let total = side.pow(m as u32);
        (0..total).filter_map(move |mut k| {
            let mut c = vec![0i64; m];
            for slot in c.iter_mut() {
                *slot = (k % side) as i64 - n;
                k /= side;
            }
            (c.iter().map(|x| x.abs()).max() == Some(n)).then_some(c)
        })
    })
}

/// Reflection vectors `v1..vk` with `N = R_{v1} ... R_{vk}` for a
/// Q-orthogonal `N`.
pub fn orthogonal_to_reflections(n: &QMatrix) -> Result<Vec<Coords6>> {
    let mut sigma = n.clone();
    let mut fixed: Vec<Vec6> = Vec::new();
    let mut out: Vec<Vec6> = Vec::new();
    for _ in 0..4 * DIM {
        if out.len() > DIM {
            break;
        }
        let u = complement(&fixed);
        let moved: Vec<Vec6> = u.iter().map(|x| sub(&sigma.mul_vec(x), x)).collect();
        if moved.iter().all(|d| d.iter().all(Zero::is_zero)) {
            return Ok(out
                .iter()
                .map(|v| std::array::from_fn(|i| v[i].clone()))
                .collect());
        }
        // step 1: fixed non-null vector
        let kernel: Vec<Vec6> = QMatrix::from_columns(&moved)
            .nullspace()
            .iter()
            .map(|c| {
                let mut x = vec![Rational::zero(); DIM];
                for (b, k) in u.iter().zip(c) {
                    for i in 0..DIM {
                        x[i] += k * &b[i];
                    }
                }
                x
            })
            .collect();
        if let Some(y) = non_null_in(&kernel) {
            fixed.push(y);
            continue;
        }
        // step 2: reflect a moved non-null vector back
        let found = grid(u.len()).find_map(|c| {
            let x = combine(&u, &c);
            if dot(&x, &x).is_zero() {
                return None;
            }
            let w = sub(&sigma.mul_vec(&x), &x);
            (!dot(&w, &w).is_zero()).then_some((x, w))
        });
        if let Some((x, w)) = found {
            sigma = reflect_left(&w, &sigma);
            out.push(w);
            fixed.push(x);
            continue;
        }
        // step 3
        let y = non_null_in(&u).ok_or_else(|| Error::Internal("degenerate complement".into()))?;
        sigma = reflect_left(&y, &sigma);
        out.push(y);
    }
    Err(Error::Internal(format!(
        "reflection factorization exceeded {DIM} factors"
    )))
}

/// Composite line map of the sandwich with `v1 ... vk`.
pub fn compose_linemaps(vectors: &[Coords6]) -> QMatrix {
    vectors.iter().fold(QMatrix::identity(DIM), |acc, v| {
        &acc * &vector_to_linemap6(v)
    })
}

/// At most six non-null vectors whose composed sandwich equals the line map
/// up to a nonzero factor.
pub fn linemap_to_reflections(l: &LineMap6) -> Result<Vec<Coords6>> {
    let lambda = conformal_multiplier(&l.matrix).ok_or_else(|| {
        Error::Precondition("line map does not preserve the Klein quadric".into())
    })?;
    if lambda.is_zero() {
        return Err(Error::Singular("line map multiplier is zero".into()));
    }
    if lambda.is_negative() {
        return Err(Error::NotPinRepresentable {
            multiplier: rational::format(&lambda),
        });
    }
    let root = rational::sqrt_exact(&lambda).ok_or_else(|| Error::IrrationalScale {
        multiplier: rational::format(&lambda),
    })?;
    let n = l.matrix.scale(&(Rational::from_integer(1.into()) / root));
    let plus = orthogonal_to_reflections(&n)?;
    let minus = orthogonal_to_reflections(&n.scale(&rational::int(-1)))?;
    let best = if minus.len() < plus.len() {
        minus
    } else {
        plus
    };
    if best.len() > DIM || best.iter().any(|v| dot(v, v).is_zero()) {
        return Err(Error::Internal("invalid reflection factorization".into()));
    }
    if !compose_linemaps(&best).is_projectively_equal(&l.matrix) {
        return Err(Error::Internal(
            "reflections do not recompose to the line map".into(),
        ));
    }
    Ok(best)
}

/// A versor whose matrix is projectively `a`, as a product of reflections.
pub fn matrix_to_versor(a: &ProjMatrix4) -> Result<Versor> {
    if !a.is_regular() {
        return Err(Error::Singular(
            "no regular versor; singular maps are null versors built from known null polarities"
                .into(),
        ));
    }
    let l = matrix_to_linemap6(a)?;
    let vectors = linemap_to_reflections(&l)?;
    let versor = Versor::from_factors(&vectors)?;
    if versor.parity() != a.kind.parity() {
        return Err(Error::Internal(format!(
            "{} factorization for a {}",
            Parity::of_count(vectors.len()).name(),
            a.kind.name()
        )));
    }
    let back = versor_to_matrix(versor.mv())?;
    if !back.projectively_equal(a) {
        return Err(Error::Internal(
            "versor does not reproduce the matrix".into(),
        ));
    }
    Ok(versor)
}

/// At most six null polarities whose product is the transformation.
pub fn decompose_null_polarities(a: &ProjMatrix4) -> Result<Vec<NullPolarity>> {
    let versor = matrix_to_versor(a)?;
    versor
        .factors()
        .unwrap_or(&[])
        .iter()
        .map(NullPolarity::from_vector)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::coords_i64;
    use crate::rational::int;
    use crate::reference;
    use crate::transforms::matrix::Kind;
    use proptest::prelude::*;

    fn proj(m: QMatrix, kind: Kind) -> ProjMatrix4 {
        ProjMatrix4::new(m, kind).unwrap()
    }

    #[test]
    fn identity_has_no_reflections() {
        let l = LineMap6 {
            matrix: QMatrix::identity(6),
            multiplier: int(1),
        };
        assert!(linemap_to_reflections(&l).unwrap().is_empty());
        let v = matrix_to_versor(&proj(QMatrix::identity(4), Kind::Collineation)).unwrap();
        assert!(v
            .mv()
            .projective_eq(&crate::ga::Multivector::one())
            .unwrap());
        assert!(
            decompose_null_polarities(&proj(QMatrix::identity(4), Kind::Collineation))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn single_reflection() {
        let a = coords_i64([1, 2, -1, 3, 0, 1]);
        let m = vector_to_linemap6(&a);
        let l = LineMap6 {
            multiplier: conformal_multiplier(&m).unwrap(),
            matrix: m,
        };
        let r = linemap_to_reflections(&l).unwrap();
        assert_eq!(r.len(), 1);
        assert!(crate::linalg::proportional_factor(&r[0], &a).is_some());
    }

    #[test]
    fn reference_matrix_as_collineation() {
        let v = matrix_to_versor(&proj(reference::k_matrix(), Kind::Collineation)).unwrap();
        let g = v.mv();
        assert!(
            g.projective_eq(&reference::g_plus()).unwrap()
                || g.projective_eq(&reference::g_minus()).unwrap()
        );
        let ps =
            decompose_null_polarities(&proj(reference::k_matrix(), Kind::Collineation)).unwrap();
        assert!(ps.len().is_multiple_of(2) && ps.len() <= 6);
    }

    #[test]
    fn reference_matrix_as_correlation() {
        let v = matrix_to_versor(&proj(reference::k_matrix(), Kind::Correlation)).unwrap();
        let h = v.mv();
        assert!(
            h.projective_eq(&reference::h_plus()).unwrap()
                || h.projective_eq(&reference::h_minus()).unwrap()
        );
    }

    #[test]
    fn single_null_polarity_round_trip() {
        let p = NullPolarity::from_vector(&coords_i64([1, 1, 0, 2, 0, 3])).unwrap();
        let ps =
            decompose_null_polarities(&proj(p.correlation_matrix(), Kind::Correlation)).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].matrix().is_projectively_equal(&p.matrix()));
    }

    #[test]
    fn gates() {
        let flip = proj(
            QMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]),
            Kind::Collineation,
        );
        assert!(matches!(
            matrix_to_versor(&flip),
            Err(Error::NotPinRepresentable { .. })
        ));
        let two = proj(
            QMatrix::from_i64(&[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            Kind::Collineation,
        );
        assert!(matches!(
            matrix_to_versor(&two),
            Err(Error::IrrationalScale { .. })
        ));
        let singular = proj(
            QMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0]]),
            Kind::Collineation,
        );
        assert!(matches!(
            matrix_to_versor(&singular),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn hard_case_uses_extra_reflection() {
        // a unipotent isometry: every moved vector is null
        let mut n = QMatrix::identity(6);
        n[(0, 4)] = int(1);
        n[(1, 3)] = int(-1);
        assert_eq!(conformal_multiplier(&n), Some(int(1)));
        let r = orthogonal_to_reflections(&n).unwrap();
        assert!(r.len() <= 6 && r.len().is_multiple_of(2));
        assert!(compose_linemaps(&r).is_projectively_equal(&n));
    }

    fn factors() -> impl Strategy<Value = Vec<Coords6>> {
        proptest::collection::vec(proptest::array::uniform6(-3i64..=3), 0..=6).prop_map(|vs| {
            vs.into_iter()
                .map(coords_i64)
                .filter(|v| !crate::lines::satisfies_pluecker(v))
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn recomposition(vs in factors()) {
            let g = Versor::from_factors(&vs).unwrap();
            let a = versor_to_matrix(g.mv()).unwrap();
            let v = matrix_to_versor(&a).unwrap();
            let back = versor_to_matrix(v.mv()).unwrap();
            prop_assert!(back.projectively_equal(&a));
            let n = v.factors().unwrap().len();
            prop_assert!(n <= 6);
            prop_assert_eq!(n % 2, vs.len() % 2);
            // same line map, so the versor agrees up to the pseudoscalar
            let j = crate::ga::Multivector::pseudoscalar();
            prop_assert!(v.mv().projective_eq(g.mv()).unwrap() || v.mv().projective_eq(&g.mv().gp(&j)).unwrap());
        }
    }
}
