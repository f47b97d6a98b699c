//! 4x4 projective matrices, their 6x6 line maps, and the closed-form
//! matrices of even and odd versors.

use std::sync::LazyLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ga::{BasisBlade, Multivector};
use crate::linalg::QMatrix;
use crate::rational::{self, Rational};

use super::versor::{grade1_closure_check, Closure, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Maps points to points.
    Collineation,
    /// Maps planes to points (the transpose-inverse maps points to planes).
    Correlation,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Collineation => "collineation",
            Kind::Correlation => "correlation",
        }
    }

    pub fn parity(self) -> Parity {
        match self {
            Kind::Collineation => Parity::Even,
            Kind::Correlation => Parity::Odd,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMatrix4 {
    pub matrix: QMatrix,
    pub kind: Kind,
}

impl ProjMatrix4 {
    pub fn new(matrix: QMatrix, kind: Kind) -> Result<Self> {
        if matrix.rows() != 4 || matrix.cols() != 4 {
            return Err(Error::Parse(format!(
                "expected a 4x4 matrix, found {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.is_zero() {
            return Err(Error::Zero("zero matrix".into()));
        }
        Ok(ProjMatrix4 { matrix, kind })
    }

    pub fn determinant(&self) -> Rational {
        self.matrix.determinant()
    }

    pub fn is_regular(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn projectively_equal(&self, other: &ProjMatrix4) -> bool {
        self.kind == other.kind && self.matrix.is_projectively_equal(&other.matrix)
    }
}

/// 6x6 line-space matrix with `L^T Q L = multiplier Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineMap6 {
    pub matrix: QMatrix,
    pub multiplier: Rational,
}

/// Unit-block swap matrix of the Klein quadric.
pub fn quadric_matrix() -> QMatrix {
    let mut q = QMatrix::zeros(6, 6);
    for i in 0..3 {
        q[(i, i + 3)] = rational::one();
        q[(i + 3, i)] = rational::one();
    }
    q
}

/// The `t` with `L^T Q L = t Q`, if `L` is Q-conformal.
pub fn conformal_multiplier(l: &QMatrix) -> Option<Rational> {
    let q = quadric_matrix();
    let lhs = &(&l.transpose() * &q) * l;
    let t = lhs[(0, 3)].clone();
    (lhs == q.scale(&t)).then_some(t)
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// Second compound of a 4x4 matrix in Plücker order: the action on joins.
pub fn compound2(a: &QMatrix) -> QMatrix {
    let mut l = QMatrix::zeros(6, 6);
    for (r, &(i, j)) in PAIRS.iter().enumerate() {
        for (c, &(k, m)) in PAIRS.iter().enumerate() {
            l[(r, c)] = &a[(i, k)] * &a[(j, m)] - &a[(i, m)] * &a[(j, k)];
        }
    }
    l
}

/// Line map of a regular collineation or correlation.
pub fn matrix_to_linemap6(a: &ProjMatrix4) -> Result<LineMap6> {
    let det = a.determinant();
    if det.is_zero() {
        return Err(Error::Singular(
            "line map is undefined for a singular matrix; use a null versor".into(),
        ));
    }
    let c = compound2(&a.matrix);
    let matrix = match a.kind {
        Kind::Collineation => c,
        // lines joining points go to lines where image planes meet; for a
        // plane-to-point matrix C this is compound(C) Q up to the factor det C
        Kind::Correlation => &c * &quadric_matrix(),
    };
    Ok(LineMap6 {
        matrix,
        multiplier: det,
    })
}

const EVEN_BLADES: [&str; 32] = [
    "e0", "e12", "e13", "e14", "e15", "e16", "e23", "e24", "e25", "e26", "e34", "e35", "e36",
    "e45", "e46", "e56", "e1234", "e1235", "e1236", "e1245", "e1246", "e1256", "e1345", "e1346",
    "e1356", "e1456", "e2345", "e2346", "e2356", "e2456", "e3456", "e123456",
];

const ODD_BLADES: [&str; 32] = [
    "e1", "e2", "e3", "e4", "e5", "e6", "e123", "e124", "e125", "e126", "e134", "e135", "e136",
    "e145", "e146", "e156", "e234", "e235", "e236", "e245", "e246", "e256", "e345", "e346", "e356",
    "e456", "e12345", "e12346", "e12356", "e12456", "e13456", "e23456",
];

static EVEN_INDEX: LazyLock<Vec<BasisBlade>> = LazyLock::new(|| blades(&EVEN_BLADES));
static ODD_INDEX: LazyLock<Vec<BasisBlade>> = LazyLock::new(|| blades(&ODD_BLADES));

fn blades(labels: &[&str]) -> Vec<BasisBlade> {
    labels
        .iter()
        .map(|l| BasisBlade::parse(l).expect("label").expect("nonzero").1)
        .collect()
}

/// Coefficient `x_i` (1-based) of a multivector in the even or odd ordering.
fn indexed<'a>(g: &'a Multivector, order: &'a [BasisBlade]) -> impl Fn(usize) -> Rational + 'a {
    move |i| g.coeff(order[i - 1]).clone()
}

/// Point-to-point matrix of an even element.
pub fn even_matrix(g: &Multivector) -> QMatrix {
    let g = indexed(g, &EVEN_INDEX);
    let two = rational::int(2);
    let k1 = g(1) - g(20) - g(24) - g(32) - g(29) + g(9) + g(4) + g(13);
    let k2 = g(24) - g(9) + g(20) - g(13) - g(32) + g(1) + g(4) - g(29);
    let k3 = g(1) - g(13) - g(32) - g(4) + g(29) + g(9) - g(24) + g(20);
    let k4 = g(24) + g(13) + g(29) + g(1) - g(4) - g(9) - g(20) - g(32);
    QMatrix::from_rows(vec![
        vec![
            k1,
            &two * (g(7) + g(17)),
            &two * (g(18) - g(3)),
            &two * (g(19) + g(2)),
        ],
        vec![
            -&two * (g(26) + g(16)),
            k2,
            &two * (g(5) + g(25)),
            &two * (g(6) - g(22)),
        ],
        vec![
            &two * (g(15) - g(30)),
            &two * (g(8) + g(28)),
            k3,
            &two * (g(21) + g(10)),
        ],
        vec![
            -&two * (g(31) + g(14)),
            &two * (g(11) - g(27)),
            &two * (g(23) + g(12)),
            k4,
        ],
    ])
}

/// Plane-to-point matrix of an odd element.
pub fn odd_matrix(h: &Multivector) -> QMatrix {
    let h = indexed(h, &ODD_INDEX);
    let two = rational::int(2);
    QMatrix::from_rows(vec![
        vec![
            -&two * h(7),
            h(1) + h(9) + h(13) - h(29),
            h(2) + h(19) + h(28) - h(8),
            h(3) - h(18) - h(27) - h(11),
        ],
        vec![
            h(13) - h(1) + h(29) + h(9),
            -&two * h(16),
            h(6) + h(30) + h(15) - h(22),
            h(31) - h(25) - h(14) - h(5),
        ],
        vec![
            h(19) - h(2) - h(8) - h(28),
            h(15) - h(30) - h(6) - h(22),
            &two * h(21),
            h(4) - h(20) + h(32) + h(24),
        ],
        vec![
            h(27) - h(3) - h(11) - h(18),
            h(5) - h(31) - h(25) - h(14),
            h(24) - h(4) - h(20) - h(32),
            -&two * h(23),
        ],
    ])
}

/// Projective matrix of a versor: a collineation for even elements, a
/// correlation for odd ones.
pub fn versor_to_matrix(g: &Multivector) -> Result<ProjMatrix4> {
    if g.is_zero() {
        return Err(Error::Zero("zero element".into()));
    }
    if let Closure::Fails { basis, .. } = grade1_closure_check(g)? {
        return Err(Error::NotVersor { basis });
    }
    match Parity::of(g)? {
        Parity::Even => ProjMatrix4::new(even_matrix(g), Kind::Collineation),
        Parity::Odd => ProjMatrix4::new(odd_matrix(g), Kind::Correlation),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::coords_i64;
    use crate::lines::Coords6;
    use crate::rational::int;
    use crate::reference;
    use crate::transforms::versor::{sandwich_matrix, Versor};
    use proptest::prelude::*;

    fn k() -> QMatrix {
        reference::k_matrix()
    }

    #[test]
    fn identity_and_reference_versors() {
        let id = versor_to_matrix(&Multivector::one()).unwrap();
        assert_eq!(id.matrix, QMatrix::identity(4));
        assert_eq!(id.kind, Kind::Collineation);
        for g in [reference::g_plus(), reference::g_minus()] {
            let m = versor_to_matrix(&g).unwrap();
            assert_eq!(m.kind, Kind::Collineation);
            assert_eq!(m.matrix, k().scale(&int(8)));
        }
        for h in [reference::h_plus(), reference::h_minus()] {
            let m = versor_to_matrix(&h).unwrap();
            assert_eq!(m.kind, Kind::Correlation);
            assert_eq!(m.matrix, k().scale(&int(4)));
        }
    }

    #[test]
    fn linemaps() {
        let id = ProjMatrix4::new(QMatrix::identity(4), Kind::Collineation).unwrap();
        let l = matrix_to_linemap6(&id).unwrap();
        assert_eq!(l.matrix, QMatrix::identity(6));
        assert_eq!(l.multiplier, int(1));
        let flip = ProjMatrix4::new(
            QMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, -1]]),
            Kind::Collineation,
        )
        .unwrap();
        let l = matrix_to_linemap6(&flip).unwrap();
        let mut want = QMatrix::identity(6);
        for i in [2, 3, 4] {
            want[(i, i)] = int(-1);
        }
        assert_eq!(l.matrix, want);
        assert_eq!(l.multiplier, int(-1));
        assert_eq!(conformal_multiplier(&l.matrix), Some(int(-1)));
        let kk = ProjMatrix4::new(k(), Kind::Collineation).unwrap();
        let l = matrix_to_linemap6(&kk).unwrap();
        assert_eq!(l.multiplier, int(4));
        assert_eq!(conformal_multiplier(&l.matrix), Some(int(4)));
        let singular = ProjMatrix4::new(
            QMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
            Kind::Collineation,
        )
        .unwrap();
        assert!(matches!(
            matrix_to_linemap6(&singular),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn sandwich_matrices_are_compounds() {
        let g = reference::g_plus();
        let l = sandwich_matrix(&g).unwrap();
        assert_eq!(l, compound2(&k()).scale(&int(64)));
        let h = reference::h_plus();
        let l = sandwich_matrix(&h).unwrap();
        assert_eq!(l, (&compound2(&k()) * &quadric_matrix()).scale(&int(32)));
    }

    #[test]
    fn correlation_linemap_matches_plane_pairs() {
        // a correlation sends the join of x, y to the meet of the image planes
        let c = ProjMatrix4::new(k(), Kind::Correlation).unwrap();
        let l = matrix_to_linemap6(&c).unwrap();
        let d = k().inverse().unwrap().transpose();
        let pts = [[1, 2, 0, -1], [0, 1, 3, 1], [2, -1, 1, 1]].map(crate::lines::point_i64);
        for i in 0..3 {
            for j in i + 1..3 {
                let p = crate::lines::line_from_points(&pts[i], &pts[j]).unwrap();
                let u: [Rational; 4] = std::array::from_fn(|r| d.mul_vec(&pts[i])[r].clone());
                let v: [Rational; 4] = std::array::from_fn(|r| d.mul_vec(&pts[j])[r].clone());
                let want = crate::lines::line_from_planes(&u, &v).unwrap();
                let got = l.matrix.mul_vec(&p);
                assert!(crate::linalg::proportional_factor(&got, &want).is_some());
            }
        }
    }

    #[test]
    fn null_versor_matrices_are_singular() {
        let v = crate::transforms::null_versor_compose(&[coords_i64([1, 0, 0, 0, 0, 0])]).unwrap();
        let m = versor_to_matrix(v.mv()).unwrap();
        assert_eq!(m.kind, Kind::Correlation);
        assert_eq!(m.determinant(), int(0));
        let p =
            crate::transforms::NullPolarity::from_vector(&coords_i64([1, 0, 0, 0, 0, 0])).unwrap();
        assert!(m.matrix.is_projectively_equal(&p.correlation_matrix()));
        let v = crate::transforms::null_versor_compose(&[
            coords_i64([1, 0, 0, 0, 0, 0]),
            coords_i64([0, 1, 0, 0, 1, 0]),
        ])
        .unwrap();
        let m = versor_to_matrix(v.mv()).unwrap();
        assert_eq!(m.kind, Kind::Collineation);
        assert_eq!(m.determinant(), int(0));
    }

    #[test]
    fn closure_failure_is_reported() {
        let g = Multivector::from_i64_terms(&[("e0", 1), ("e1234", 3)]).unwrap();
        assert!(matches!(versor_to_matrix(&g), Err(Error::NotVersor { .. })));
    }

    fn factors() -> impl Strategy<Value = Vec<Coords6>> {
        proptest::collection::vec(proptest::array::uniform6(-3i64..=3), 1..=6).prop_map(|vs| {
            vs.into_iter()
                .map(coords_i64)
                .filter(|v| !crate::lines::satisfies_pluecker(v))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn tables_agree_with_sandwich(vs in factors()) {
            let g = Versor::from_factors(&vs).unwrap();
            let m = versor_to_matrix(g.mv()).unwrap();
            let l = sandwich_matrix(g.mv()).unwrap();
            let want = match m.kind {
                Kind::Collineation => compound2(&m.matrix),
                Kind::Correlation => &compound2(&m.matrix) * &quadric_matrix(),
            };
            prop_assert!(l.is_projectively_equal(&want));
            prop_assert_eq!(m.kind.parity(), g.parity());
        }

        #[test]
        fn compound_multiplier_is_determinant(e in proptest::array::uniform16(-4i64..=4)) {
            let a = QMatrix::from_i64(&[&e[0..4], &e[4..8], &e[8..12], &e[12..16]]);
            let det = a.determinant();
            prop_assume!(!det.is_zero());
            for kind in [Kind::Collineation, Kind::Correlation] {
                let l = matrix_to_linemap6(&ProjMatrix4::new(a.clone(), kind).unwrap()).unwrap();
                prop_assert_eq!(conformal_multiplier(&l.matrix), Some(det.clone()));
            }
        }
    }
}
