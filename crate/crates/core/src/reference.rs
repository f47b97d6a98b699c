//! Integer-scaled versors of the matrix K, as a collineation and as a
//! correlation. Each pair differs by the sign of g g*.

use crate::ga::Multivector;
use crate::linalg::QMatrix;

/// `K`, with determinant 4.
pub fn k_matrix() -> QMatrix {
    QMatrix::from_i64(&[&[1, 0, 3, 0], &[1, 1, 0, 1], &[1, 2, 1, 0], &[1, 1, 2, 1]])
}

pub const G_PLUS: &[(&str, i64)] = &[
    ("e0", 7), ("e12", 6), ("e13", -6), ("e14", 1), ("e15", -2), ("e23", -6), ("e24", 6),
    ("e25", -1), ("e26", -2), ("e34", 2), ("e35", 6), ("e36", -5), ("e45", -4), ("e46", 2),
    ("e1234", 6), ("e56", -4), ("e1235", 6), ("e1236", -6), ("e1245", -5), ("e1246", 2),
    ("e1256", -4), ("e1345", 2), ("e1346", -1), ("e1356", 2), ("e2345", -2), ("e2346", 2),
    ("e2356", 1), ("e2456", -2), ("e123456", -1),
];

pub const G_MINUS: &[(&str, i64)] = &[
    ("e0", 1), ("e12", -6), ("e13", -6), ("e14", -1), ("e15", 2), ("e16", 4), ("e23", 6),
    ("e24", 2), ("e25", 1), ("e26", 2), ("e34", 2), ("e35", 2), ("e36", 5), ("e46", 2),
    ("e1234", -6), ("e1235", 6), ("e1236", 6), ("e1245", 5), ("e1246", -2), ("e1345", 6),
    ("e1346", 1), ("e1356", -2), ("e1456", -4), ("e2345", -2), ("e2346", 6), ("e2356", -1),
    ("e2456", -2), ("e3456", -4), ("e123456", -7),
];

pub const H_PLUS: &[(&str, i64)] = &[
    ("e1", 1), ("e2", 1), ("e3", 1), ("e4", 2), ("e6", -4), ("e123", -2), ("e124", -3), ("e125", 1),
    ("e126", 4), ("e134", -1), ("e136", 1), ("e145", -2), ("e146", -2), ("e156", -2), ("e234", -2),
    ("e235", -1), ("e236", 5), ("e246", 2), ("e245", -4), ("e345", -2), ("e256", -6), ("e456", 4),
    ("e356", -2), ("e12345", 3), ("e12346", 3), ("e12356", 3), ("e23456", -6),
];

pub const H_MINUS: &[(&str, i64)] = &[
    ("e1", -3), ("e2", 3), ("e3", -3), ("e4", -6), ("e123", -2), ("e124", -5), ("e125", 1),
    ("e126", -4), ("e134", -1), ("e136", 1), ("e145", -2), ("e146", 6), ("e156", -2), ("e234", 2),
    ("e235", -1), ("e236", 3), ("e246", 2), ("e345", -2), ("e256", 2), ("e346", 4), ("e456", -4),
    ("e356", -2), ("e12345", -1), ("e12346", 1), ("e12356", -1), ("e12456", -4), ("e23456", 2),
];

/// Even versor of K with g g* = 128.
pub fn g_plus() -> Multivector {
    Multivector::from_i64_terms(G_PLUS).expect("valid labels")
}

/// Even versor of K with g g* = -128.
pub fn g_minus() -> Multivector {
    Multivector::from_i64_terms(G_MINUS).expect("valid labels")
}

/// Odd versor of K with h h* = 64.
pub fn h_plus() -> Multivector {
    Multivector::from_i64_terms(H_PLUS).expect("valid labels")
}

/// Odd versor of K with h h* = -64.
pub fn h_minus() -> Multivector {
    Multivector::from_i64_terms(H_MINUS).expect("valid labels")
}
