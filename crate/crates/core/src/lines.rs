//! Plücker coordinates, the Klein map and linear line complexes.
//!
//! Six-tuples are always in the order `(p01, p02, p03, p23, p31, p12)`, which
//! maps to the generators `e1..e6`. Points and planes of P³ are homogeneous
//! 4-tuples.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ga::Multivector;
use crate::rational::{self, Rational};

pub type Point = [Rational; 4];
pub type Plane = [Rational; 4];
pub type Coords6 = [Rational; 6];

/// Text tag for the coordinate order.
pub const ORDER: &str = "p01,p02,p03,p23,p31,p12";

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

pub fn point_i64(x: [i64; 4]) -> Point {
    x.map(rational::int)
}

pub fn coords_i64(x: [i64; 6]) -> Coords6 {
    x.map(rational::int)
}

fn minors(x: &[Rational; 4], y: &[Rational; 4]) -> Coords6 {
    PAIRS.map(|(i, j)| &x[i] * &y[j] - &x[j] * &y[i])
}

fn is_zero(x: &[Rational]) -> bool {
    x.iter().all(Zero::is_zero)
}

/// Line joining two points.
pub fn line_from_points(x: &Point, y: &Point) -> Result<Coords6> {
    let p = minors(x, y);
    if is_zero(&p) {
        return Err(Error::Degenerate(
            "points are linearly dependent; no unique line".into(),
        ));
    }
    Ok(p)
}

/// Line of intersection of two planes.
pub fn line_from_planes(u: &Plane, v: &Plane) -> Result<Coords6> {
    let q = minors(u, v);
    if is_zero(&q) {
        return Err(Error::Degenerate(
            "planes are linearly dependent; no unique line".into(),
        ));
    }
    Ok(swap_triples(&q))
}

/// Exchanges `(p01, p02, p03)` and `(p23, p31, p12)`; takes point-pair
/// coordinates of a line to plane-pair coordinates and back.
pub fn swap_triples(x: &Coords6) -> Coords6 {
    [3, 4, 5, 0, 1, 2].map(|i| x[i].clone())
}

/// Bilinear form of the Klein quadric with half-identity blocks.
pub fn omega(x: &Coords6, y: &Coords6) -> Rational {
    let mut s = Rational::zero();
    for i in 0..3 {
        s += &x[i] * &y[i + 3] + &x[i + 3] * &y[i];
    }
    s / rational::int(2)
}

pub fn satisfies_pluecker(x: &Coords6) -> bool {
    omega(x, x).is_zero()
}

/// Checked constructor for a line: nonzero and on the Klein quadric.
pub fn validate_line(x: &Coords6) -> Result<()> {
    if is_zero(x) {
        return Err(Error::Zero("all Plücker coordinates vanish".into()));
    }
    if !satisfies_pluecker(x) {
        return Err(Error::Precondition(
            "coordinates violate the Plücker condition".into(),
        ));
    }
    Ok(())
}

/// Whether a point lies on a plane.
pub fn incident(point: &Point, plane: &Plane) -> bool {
    point
        .iter()
        .zip(plane)
        .fold(Rational::zero(), |s, (a, b)| s + a * b)
        .is_zero()
}

/// Klein map into the grade-1 part of the algebra.
pub fn embed(x: &Coords6) -> Multivector {
    Multivector::vector(x)
}

pub fn extract(v: &Multivector) -> Result<Coords6> {
    v.as_vector()
        .ok_or_else(|| Error::Grade(format!("expected a vector, found grades {:?}", v.grades())))
}

/// Pitch and axis of a linear complex `(c, cbar)`.
pub fn complex_pitch_axis(c: &Coords6) -> Result<(Rational, Coords6)> {
    let dir = &c[..3];
    let norm: Rational = dir.iter().map(|x| x * x).sum();
    if norm.is_zero() {
        return Err(Error::PitchUndefined);
    }
    let cross: Rational = (0..3).map(|i| &c[i] * &c[i + 3]).sum();
    let pitch = cross / norm;
    let axis = std::array::from_fn(|i| {
        if i < 3 {
            c[i].clone()
        } else {
            &c[i] - &pitch * &c[i - 3]
        }
    });
    Ok((pitch, axis))
}

/// A complex is singular when its coordinate vector lies on the quadric.
pub fn complex_is_singular(c: &Coords6) -> bool {
    satisfies_pluecker(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn det2(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Rational {
        a * d - b * c
    }

    fn points() -> impl Strategy<Value = Point> {
        proptest::array::uniform4(-9i64..=9).prop_map(point_i64)
    }

    #[test]
    fn basic_joins() {
        let l = line_from_points(&point_i64([1, 0, 0, 0]), &point_i64([0, 1, 0, 0])).unwrap();
        assert_eq!(l, coords_i64([1, 0, 0, 0, 0, 0]));
        let l = line_from_points(&point_i64([1, 0, 0, 0]), &point_i64([0, 0, 0, 1])).unwrap();
        assert_eq!(l, coords_i64([0, 0, 1, 0, 0, 0]));
        let (x, y) = (point_i64([1, 1, 0, 0]), point_i64([0, 0, 1, 1]));
        let l = line_from_points(&x, &y).unwrap();
        let want = PAIRS.map(|(i, j)| det2(&x[i], &x[j], &y[i], &y[j]));
        assert_eq!(l, want);
        assert_eq!(l, coords_i64([0, 1, 1, 0, -1, 1]));
        assert!(satisfies_pluecker(&l));
        assert!(line_from_points(&x, &x.clone().map(|c| c * int(3))).is_err());
    }

    #[test]
    fn plane_intersections() {
        let l = line_from_planes(&point_i64([0, 0, 1, 0]), &point_i64([0, 0, 0, 1])).unwrap();
        assert_eq!(l, coords_i64([1, 0, 0, 0, 0, 0]));
        let ideal = line_from_planes(&point_i64([1, 0, 0, 0]), &point_i64([0, 1, 0, 0])).unwrap();
        assert!(is_zero(&ideal[..3]));
        assert!(line_from_planes(&point_i64([1, 2, 3, 4]), &point_i64([1, 2, 3, 4])).is_err());
    }

    #[test]
    fn omega_examples() {
        let a = coords_i64([1, 0, 0, 0, 0, 2]);
        let b = coords_i64([0, 1, 0, 2, 0, 0]);
        assert_eq!(omega(&a, &b), int(1));
        let o = point_i64([1, 0, 0, 0]);
        let l1 = line_from_points(&o, &point_i64([3, 1, 4, 1])).unwrap();
        let l2 = line_from_points(&o, &point_i64([2, 7, 1, 8])).unwrap();
        assert_eq!(omega(&l1, &l2), int(0));
    }

    #[test]
    fn pitch_axis_examples() {
        let (p, axis) = complex_pitch_axis(&coords_i64([1, 0, 0, 5, 0, 0])).unwrap();
        assert_eq!(p, int(5));
        assert_eq!(axis, coords_i64([1, 0, 0, 0, 0, 0]));
        let c = coords_i64([1, 0, 0, 0, 1, 0]);
        assert!(complex_is_singular(&c));
        assert_eq!(complex_pitch_axis(&c).unwrap(), (int(0), c));
        assert_eq!(
            complex_pitch_axis(&coords_i64([0, 0, 0, 1, 2, 3])),
            Err(Error::PitchUndefined)
        );
        let (p, _) = complex_pitch_axis(&coords_i64([1, 1, 0, 1, 0, 0])).unwrap();
        assert_eq!(p, ratio(1, 2));
    }

    #[test]
    fn embed_example() {
        let v = embed(&coords_i64([1, 0, 0, 0, 0, 2]));
        assert_eq!(
            v,
            Multivector::from_i64_terms(&[("e1", 1), ("e6", 2)]).unwrap()
        );
        assert!(extract(&(&v + &Multivector::one())).is_err());
    }

    proptest! {
        #[test]
        fn joins_lie_on_the_quadric(x in points(), y in points()) {
            if let Ok(l) = line_from_points(&x, &y) {
                prop_assert!(satisfies_pluecker(&l));
                let v = embed(&l);
                prop_assert!(v.gp(&v).is_zero());
                let r = line_from_points(&y, &x).unwrap();
                prop_assert_eq!(r.map(|c| -c), l);
            }
        }

        #[test]
        fn embed_round_trip(x in proptest::array::uniform6(-50i64..=50)) {
            let c = coords_i64(x);
            let v = embed(&c);
            prop_assert_eq!(extract(&v).unwrap(), c.clone());
            prop_assert_eq!(v.gp(&v).scalar_part().clone(), omega(&c, &c) * int(2));
            prop_assert_eq!(v.gp(&v).is_zero(), satisfies_pluecker(&c));
        }

        #[test]
        fn anticommutator_is_four_omega(x in proptest::array::uniform6(-9i64..=9), y in proptest::array::uniform6(-9i64..=9)) {
            let (a, b) = (coords_i64(x), coords_i64(y));
            let (v, w) = (embed(&a), embed(&b));
            let s = &v.gp(&w) + &w.gp(&v);
            prop_assert_eq!(s, Multivector::scalar(omega(&a, &b) * int(4)));
            prop_assert_eq!(omega(&a, &b), omega(&b, &a));
        }

        #[test]
        fn planar_lines_meet_the_plane_line(u in points(), v in points(), s in points(), t in points()) {
            let Ok(l) = line_from_planes(&u, &v) else { return Ok(()) };
            // random points of u: project s, t into the plane u
            let proj = |p: &Point| -> Point {
                let k = (0..4).max_by_key(|&i| !u[i].is_zero()).unwrap();
                let dot: Rational = p.iter().zip(&u).map(|(a, b)| a * b).sum();
                let mut q = p.clone();
                q[k] -= dot / &u[k];
                q
            };
            let (a, b) = (proj(&s), proj(&t));
            prop_assert!(incident(&a, &u) && incident(&b, &u));
            if let Ok(m) = line_from_points(&a, &b) {
                prop_assert!(omega(&l, &m).is_zero());
            }
        }

        #[test]
        fn axis_reconstructs_complex(x in proptest::array::uniform6(-9i64..=9)) {
            let c = coords_i64(x);
            if let Ok((p, axis)) = complex_pitch_axis(&c) {
                prop_assert!(satisfies_pluecker(&axis));
                let back: Coords6 = std::array::from_fn(|i| {
                    if i < 3 { axis[i].clone() } else { &axis[i] + &p * &axis[i - 3] }
                });
                prop_assert_eq!(back, c);
            }
        }
    }
}
