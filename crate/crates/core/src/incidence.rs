//! Blades as linear line manifolds: null spaces, classification, vertices and
//! carrier planes, and the quadratic form of a regulus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ga::{BasisBlade, Multivector, DIM};
use crate::grassmann;
use crate::linalg::{self, QMatrix};
use crate::lines::{self, Coords6, Plane, Point};
use crate::rational::{self, Rational};

/// A nonzero multivector that is a wedge of `grade` vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blade {
    mv: Multivector,
    grade: usize,
    factors: Option<Vec<Coords6>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CongruenceType {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuledSurface {
    HyperboloidOfOneSheet,
    HyperbolicParaboloid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldClass {
    /// Lines through `vertex` inside `plane`.
    Pencil {
        vertex: Point,
        plane: Plane,
    },
    Bundle {
        vertex: Point,
    },
    Field {
        plane: Plane,
    },
    /// A nondegenerate conic section of the quadric. `surface` is `None`
    /// when the conic has no real points.
    ConicRegulus {
        surface: Option<RuledSurface>,
    },
    DegenerateConic,
    Congruence(CongruenceType),
    /// `coords` is the complex as a 6-tuple (the dual of the blade).
    Complex {
        singular: bool,
        coords: Coords6,
    },
}

impl ManifoldClass {
    pub fn name(&self) -> &'static str {
        match self {
            ManifoldClass::Pencil { .. } => "pencil",
            ManifoldClass::Bundle { .. } => "bundle",
            ManifoldClass::Field { .. } => "field",
            ManifoldClass::ConicRegulus { .. } => "conic_regulus",
            ManifoldClass::DegenerateConic => "degenerate_conic",
            ManifoldClass::Congruence(_) => "congruence",
            ManifoldClass::Complex { .. } => "complex",
        }
    }
}

impl CongruenceType {
    pub fn name(self) -> &'static str {
        match self {
            CongruenceType::Hyperbolic => "hyperbolic",
            CongruenceType::Parabolic => "parabolic",
            CongruenceType::Elliptic => "elliptic",
        }
    }
}

impl RuledSurface {
    pub fn name(self) -> &'static str {
        match self {
            RuledSurface::HyperboloidOfOneSheet => "hyperboloid_of_one_sheet",
            RuledSurface::HyperbolicParaboloid => "hyperbolic_paraboloid",
        }
    }
}

fn to_coords(v: &[Rational]) -> Coords6 {
    std::array::from_fn(|i| v[i].clone())
}

fn vector_nullspace<F>(image: F) -> Vec<Coords6>
where
    F: Fn(&Multivector) -> Multivector,
{
    let columns: Vec<Vec<Rational>> = (0..DIM)
        .map(|i| image(&Multivector::generator(i)).coefficients().to_vec())
        .collect();
    QMatrix::from_columns(&columns)
        .nullspace()
        .iter()
        .map(|v| to_coords(v))
        .collect()
}

/// `{v : v ^ A = 0}` for any multivector.
pub fn outer_null_space(a: &Multivector) -> Vec<Coords6> {
    vector_nullspace(|v| v.wedge(a))
}

/// `{v : v . A = 0}` (left contraction) for any multivector.
pub fn inner_null_space(a: &Multivector) -> Vec<Coords6> {
    vector_nullspace(|v| v.left_contraction(a))
}

impl Blade {
    pub fn new(mv: Multivector) -> Result<Self> {
        if mv.is_zero() {
            return Err(Error::Zero("the zero multivector is not a blade".into()));
        }
        let grade = mv
            .homogeneous_grade()
            .ok_or_else(|| Error::Grade(format!("mixed grades {:?}", mv.grades())))?;
        if grade == 0 {
            return Err(Error::Grade("scalars do not represent subspaces".into()));
        }
        let dim = outer_null_space(&mv).len();
        if dim != grade {
            return Err(Error::NotBlade(format!(
                "grade-{grade} element has a {dim}-dimensional outer null space"
            )));
        }
        Ok(Blade {
            mv,
            grade,
            factors: None,
        })
    }

    /// Wedge of the given vectors, which are kept as the preferred factors.
    pub fn from_factors(factors: &[Coords6]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Precondition("no factors given".into()));
        }
        let mv = factors
            .iter()
            .map(lines::embed)
            .reduce(|a, b| a.wedge(&b))
            .expect("nonempty");
        if mv.is_zero() {
            return Err(Error::Degenerate("factors are linearly dependent".into()));
        }
        Ok(Blade {
            mv,
            grade: factors.len(),
            factors: Some(factors.to_vec()),
        })
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    /// Supplied factors, or a basis of the outer null space.
    pub fn factors(&self) -> Vec<Coords6> {
        self.factors.clone().unwrap_or_else(|| self.opns())
    }

    pub fn opns(&self) -> Vec<Coords6> {
        outer_null_space(&self.mv)
    }

    pub fn ipns(&self) -> Vec<Coords6> {
        inner_null_space(&self.mv)
    }

    pub fn dual(&self) -> Blade {
        Blade {
            mv: self.mv.dual(),
            grade: DIM - self.grade,
            factors: None,
        }
    }
}

/// Gram matrix of vectors under the algebra's inner product.
pub fn gram(vectors: &[Coords6]) -> QMatrix {
    let n = vectors.len();
    let mut s = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = lines::omega(&vectors[i], &vectors[j]) * rational::int(2);
        }
    }
    s
}

fn ideal_lines() -> Vec<Vec<Rational>> {
    (3..6)
        .map(|i| {
            let mut v = vec![Rational::zero(); 6];
            v[i] = Rational::one();
            v
        })
        .collect()
}

fn as_rows(v: &[Coords6]) -> Vec<Vec<Rational>> {
    v.iter().map(|c| c.to_vec()).collect()
}

fn single_point(basis: Vec<Vec<Rational>>, what: &str) -> Result<Point> {
    match basis.as_slice() {
        [p] => Ok(std::array::from_fn(|i| p[i].clone())),
        _ => Err(Error::Internal(format!(
            "{what}: expected a unique common element, found dimension {}",
            basis.len()
        ))),
    }
}

fn vertex_of(lines: &[Coords6]) -> Result<Point> {
    single_point(grassmann::common_points(lines), "vertex")
}

fn plane_of(lines: &[Coords6]) -> Result<Plane> {
    let swapped: Vec<Coords6> = lines.iter().map(lines::swap_triples).collect();
    single_point(grassmann::common_points(&swapped), "carrier plane")
}

fn congruence_type(polar: &[Coords6]) -> CongruenceType {
    let s = gram(polar);
    let disc = &s[(0, 1)] * &s[(0, 1)] - &s[(0, 0)] * &s[(1, 1)];
    match rational::sign(&disc) {
        1 => CongruenceType::Hyperbolic,
        0 => CongruenceType::Parabolic,
        _ => CongruenceType::Elliptic,
    }
}

/// Whether a symmetric 3x3 form has no nontrivial real zeros.
fn is_definite3(s: &QMatrix) -> bool {
    let tr = &s[(0, 0)] + &s[(1, 1)] + &s[(2, 2)];
    let minor = |i: usize, j: usize| &s[(i, i)] * &s[(j, j)] - &s[(i, j)] * &s[(j, i)];
    let c2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let det = s.determinant();
    // all eigenvalues share a sign iff the characteristic polynomial
    // lambda^3 - tr lambda^2 + c2 lambda - det has no sign variation lost
    if det.is_zero() || !c2.is_positive() {
        return false;
    }
    (tr.is_positive() && det.is_positive()) || (tr.is_negative() && det.is_negative())
}

pub fn classify(blade: &Blade) -> Result<ManifoldClass> {
    let opns = blade.opns();
    match blade.grade {
        1 | 6 => Err(Error::Grade(format!(
            "grade {} has no manifold class; use the vector or pseudoscalar interpretation directly",
            blade.grade
        ))),
        2 => {
            if gram(&opns).is_zero() {
                let vertex = grassmann::meet_lines(&opns[0], &opns[1])?;
                let plane =
                    grassmann::meet_lines(&lines::swap_triples(&opns[0]), &lines::swap_triples(&opns[1]))?;
                Ok(ManifoldClass::Pencil { vertex, plane })
            } else {
                Ok(ManifoldClass::Congruence(congruence_type(&opns)))
            }
        }
        3 => {
            let s = gram(&opns);
            if s.is_zero() {
                let d = linalg::intersection_dim(&as_rows(&opns), &ideal_lines());
                if d == 1 || d == 3 {
                    Ok(ManifoldClass::Field { plane: plane_of(&opns)? })
                } else {
                    Ok(ManifoldClass::Bundle { vertex: vertex_of(&opns)? })
                }
            } else if s.rank() == 3 {
                let surface = if is_definite3(&s) {
                    None
                } else if linalg::intersection_dim(&as_rows(&opns), &ideal_lines()) > 0 {
                    Some(RuledSurface::HyperbolicParaboloid)
                } else {
                    Some(RuledSurface::HyperboloidOfOneSheet)
                };
                Ok(ManifoldClass::ConicRegulus { surface })
            } else {
                Ok(ManifoldClass::DegenerateConic)
            }
        }
        4 => Ok(ManifoldClass::Congruence(congruence_type(&blade.dual().opns()))),
        5 => {
            let coords = lines::extract(&blade.mv.dual())?;
            Ok(ManifoldClass::Complex {
                singular: lines::satisfies_pluecker(&coords),
                coords,
            })
        }
        _ => unreachable!("blade grades are 1..=6"),
    }
}

fn wrong_class(expected: &str, found: &ManifoldClass) -> Error {
    Error::WrongClass {
        expected: expected.into(),
        found: found.name().into(),
    }
}

pub fn bundle_vertex(blade: &Blade) -> Result<Point> {
    match classify(blade) {
        Ok(ManifoldClass::Bundle { vertex }) => Ok(vertex),
        Ok(other) => Err(wrong_class("bundle", &other)),
        Err(Error::Grade(_)) => Err(Error::WrongClass {
            expected: "bundle".into(),
            found: format!("grade {}", blade.grade),
        }),
        Err(e) => Err(e),
    }
}

pub fn field_plane(blade: &Blade) -> Result<Plane> {
    match classify(blade) {
        Ok(ManifoldClass::Field { plane }) => Ok(plane),
        Ok(other) => Err(wrong_class("field", &other)),
        Err(Error::Grade(_)) => Err(Error::WrongClass {
            expected: "field".into(),
            found: format!("grade {}", blade.grade),
        }),
        Err(e) => Err(e),
    }
}

/// The three lines through a point used to span its bundle; requires
/// `y0 != 0`.
pub fn bundle_lines(y: &Point) -> Result<[Coords6; 3]> {
    if y[0].is_zero() {
        return Err(Error::Precondition("construction needs y0 != 0".into()));
    }
    let z = Rational::zero;
    Ok([
        [y[0].clone(), z(), z(), z(), y[3].clone(), -&y[2]],
        [z(), y[0].clone(), z(), -&y[3], z(), y[1].clone()],
        [z(), z(), y[0].clone(), y[2].clone(), -&y[1], z()],
    ])
}

/// The three lines in a plane used to span its field; requires `y0 != 0`.
pub fn field_lines(y: &Plane) -> Result<[Coords6; 3]> {
    if y[0].is_zero() {
        return Err(Error::Precondition("construction needs y0 != 0".into()));
    }
    let z = Rational::zero;
    Ok([
        [z(), y[3].clone(), -&y[2], y[0].clone(), z(), z()],
        [-&y[3], z(), y[1].clone(), z(), y[0].clone(), z()],
        [y[2].clone(), -&y[1], z(), z(), z(), y[0].clone()],
    ])
}

/// Quadratic form `S` with `(a,b,c) S (a,b,c)^T = (a v1 + b v2 + c v3)^2` for
/// the blade's factors.
pub fn regulus_form(blade: &Blade) -> Result<QMatrix> {
    if blade.grade != 3 {
        return Err(Error::Grade(format!(
            "expected a 3-blade, found grade {}",
            blade.grade
        )));
    }
    Ok(gram(&blade.factors()))
}

/// Lines sampled from a regulus.
#[derive(Clone, Debug, PartialEq)]
pub enum RegulusSample {
    Exact(Vec<Coords6>),
    /// No rational point was found; coordinates are floating point.
    Approximate(Vec<[f64; 6]>),
}

/// Bound on the coordinates tried when searching a rational conic point.
pub const POINT_SEARCH_BOUND: i64 = 40;

fn integer_form(s: &QMatrix) -> [[BigInt; 3]; 3] {
    let mut l = BigInt::one();
    for i in 0..3 {
        for j in 0..3 {
            l = l.lcm(s[(i, j)].denom());
        }
    }
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (&s[(i, j)] * Rational::from_integer(l.clone())).to_integer())
    })
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// A nonzero integer zero of the form, searched over small coordinates:
/// unit vectors first, then rows `(x, y)` by max norm solving for `z`.
pub fn rational_conic_point(s: &QMatrix, bound: i64) -> Option<[BigInt; 3]> {
    let s = integer_form(s);
    for i in 0..3 {
        if s[i][i].is_zero() {
            let mut x: [BigInt; 3] = Default::default();
            x[i] = BigInt::one();
            return Some(x);
        }
    }
    // s22 != 0 here: solve s22 z^2 + 2 b z + c = 0 for each (x, y)
    for n in 1..=bound {
        for x in -n..=n {
            for y in -n..=n {
                if x.abs().max(y.abs()) != n {
                    continue;
                }
                let (xb, yb) = (BigInt::from(x), BigInt::from(y));
                let b = &s[0][2] * &xb + &s[1][2] * &yb;
                let c = &s[0][0] * &xb * &xb
                    + BigInt::from(2) * &s[0][1] * &xb * &yb
                    + &s[1][1] * &yb * &yb;
                let disc = &b * &b - &s[2][2] * &c;
                let Some(r) = exact_sqrt(&disc) else { continue };
                // z = (-b + r) / s22, scaled to integers
                let num = -&b + &r;
                let den = s[2][2].clone();
                let g = num.gcd(&den);
                let g = if g.is_zero() { den.clone() } else { g };
                let (num, den) = (&num / &g, &den / &g);
                return Some([&xb * &den, &yb * &den, num]);
            }
        }
    }
    None
}

fn combine(factors: &[Coords6], q: &[Rational; 3]) -> Coords6 {
    std::array::from_fn(|k| (0..3).map(|i| &q[i] * &factors[i][k]).sum())
}

/// Samples `n` distinct lines of the regulus carried by a 3-blade.
pub fn regulus_sample(blade: &Blade, n: usize, seed: u64) -> Result<RegulusSample> {
    let class = classify(blade)?;
    match class {
        ManifoldClass::ConicRegulus { surface: None } => return Err(Error::EmptyRegulus),
        ManifoldClass::ConicRegulus { .. } => {}
        other => return Err(wrong_class("conic_regulus", &other)),
    }
    let factors = blade.factors();
    let s = gram(&factors);
    let Some(p) = rational_conic_point(&s, POINT_SEARCH_BOUND) else {
        return Ok(RegulusSample::Approximate(approximate_sample(
            &factors, &s, n, seed,
        )));
    };
    let p: [Rational; 3] = p.map(Rational::from_integer);
    let sq = |u: &[Rational; 3], v: &[Rational; 3]| -> Rational {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| &u[i] * &s[(i, j)] * &v[j])
            .sum()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Coords6> = Vec::new();
    let mut params: Vec<[Rational; 3]> = Vec::new();
    let mut push = |x: [Rational; 3], out: &mut Vec<Coords6>| {
        if x.iter().all(Zero::is_zero)
            || params
                .iter()
                .any(|y| linalg::proportional_factor(&x, y).is_some())
        {
            return;
        }
        out.push(combine(&factors, &x));
        params.push(x);
    };
    let image = |q: &[Rational; 3]| -> [Rational; 3] {
        let a = -sq(q, q);
        let b = sq(&p, q) * rational::int(2);
        std::array::from_fn(|i| &a * &p[i] + &b * &q[i])
    };
    push(p.clone(), &mut out);
    let units = (0..3).map(|i| std::array::from_fn(|j| rational::int((i == j) as i64)));
    for q in units {
        if out.len() >= n {
            break;
        }
        push(image(&q), &mut out);
    }
    let mut attempts = 0;
    while out.len() < n {
        attempts += 1;
        if attempts > 1000 * (n + 1) {
            return Err(Error::Internal(
                "could not generate enough distinct regulus lines".into(),
            ));
        }
        let q: [Rational; 3] = std::array::from_fn(|_| rational::int(rng.gen_range(-9..=9)));
        push(image(&q), &mut out);
    }
    out.truncate(n);
    Ok(RegulusSample::Exact(out))
}

/// Diagonalizes `s` by congruence: returns `p` (rows are the new basis) and
/// the diagonal `d` with `p s p^T = diag(d)`.
fn diagonalize(s: &QMatrix) -> (QMatrix, Vec<Rational>) {
    let n = s.rows();
    let mut a = s.clone();
    let mut p = QMatrix::identity(n);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_sym(&mut a, &mut p, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // row k += row j makes the diagonal 2 a_kj
                add_sym(&mut a, &mut p, k, j, &Rational::one());
            } else {
                continue;
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = -(&a[(i, k)] / &pivot);
            add_sym(&mut a, &mut p, i, k, &f);
        }
    }
    let d = (0..n).map(|i| a[(i, i)].clone()).collect();
    (p, d)
}

/// Row/column operation `i += f * j` applied congruently.
fn add_sym(a: &mut QMatrix, p: &mut QMatrix, i: usize, j: usize, f: &Rational) {
    let n = a.rows();
    for c in 0..n {
        let v = &a[(i, c)] + f * &a[(j, c)];
        a[(i, c)] = v;
        let w = &p[(i, c)] + f * &p[(j, c)];
        p[(i, c)] = w;
    }
    for r in 0..n {
        let v = &a[(r, i)] + f * &a[(r, j)];
        a[(r, i)] = v;
    }
}

fn swap_sym(a: &mut QMatrix, p: &mut QMatrix, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
        let t = p[(i, c)].clone();
        p[(i, c)] = p[(j, c)].clone();
        p[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

fn approximate_sample(factors: &[Coords6], s: &QMatrix, n: usize, seed: u64) -> Vec<[f64; 6]> {
    let (p, d) = diagonalize(s);
    let d: Vec<f64> = d.iter().map(rational::to_f64).collect();
    let pos: Vec<usize> = (0..3).filter(|&i| d[i] > 0.0).collect();
    let neg: Vec<usize> = (0..3).filter(|&i| d[i] < 0.0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis: Vec<[f64; 6]> = (0..3)
        .map(|i| {
            // x = sum_k y_k p_k, so the line is sum_k y_k (sum_i p_ki v_i)
            std::array::from_fn(|c| {
                (0..3)
                    .map(|j| rational::to_f64(&p[(i, j)]) * rational::to_f64(&factors[j][c]))
                    .sum()
            })
        })
        .collect();
    (0..n)
        .map(|_| {
            let mut y = [0.0f64; 3];
            let mut lhs = 0.0;
            for &i in &pos {
                y[i] = rng.gen_range(-1.0..1.0);
                lhs += d[i] * y[i] * y[i];
            }
            let mut rhs = 0.0;
            for &i in &neg {
                y[i] = rng.gen_range(-1.0..1.0);
                rhs += -d[i] * y[i] * y[i];
            }
            let t = (lhs / rhs).sqrt();
            for &i in &neg {
                y[i] *= t;
            }
            let mut line = [0.0f64; 6];
            for (k, b) in basis.iter().enumerate() {
                for c in 0..6 {
                    line[c] += y[k] * b[c];
                }
            }
            line
        })
        .collect()
}

/// The opposite regulus (the dual blade) with the affine type of the
/// ruled surface.
pub fn opposite_regulus(blade: &Blade) -> Result<(Blade, Option<RuledSurface>)> {
    match classify(blade)? {
        ManifoldClass::ConicRegulus { surface } => Ok((blade.dual(), surface)),
        other => Err(wrong_class("conic_regulus", &other)),
    }
}

/// Ideal-field blade `e4 ^ e5 ^ e6`.
pub fn ideal_field() -> Blade {
    Blade::new(Multivector::basis(BasisBlade::from_mask(0b111000))).expect("basis blade")
}

pub fn meet_lines_p3(l1: &Coords6, l2: &Coords6) -> Result<Point> {
    lines::validate_line(l1)?;
    lines::validate_line(l2)?;
    if !lines::omega(l1, l2).is_zero() {
        return Err(Error::Skew("the lines are skew".into()));
    }
    grassmann::meet_lines(l1, l2)
}
