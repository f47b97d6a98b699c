//! Structure constants of the geometric product on the wedge basis.
//!
//! For a generator `e_i` and any multivector `X`, `e_i X = e_i _| X + e_i ^ X`.
//! Writing a blade as `e_i ^ A'` with `i` its lowest index gives
//! `(e_i ^ A') B = e_i (A' B) - (e_i _| A') B`, which recurses on strictly
//! smaller grades. All constants are integers because the form is.

use std::sync::LazyLock;

use super::basis::{metric, BasisBlade, BLADES, DIM};

pub type Terms = Vec<(u8, i64)>;

static TABLE: LazyLock<Vec<Terms>> = LazyLock::new(build);

/// Terms of the product of two wedge-basis blades.
pub fn product(a: BasisBlade, b: BasisBlade) -> &'static [(u8, i64)] {
    &TABLE[a.mask() * BLADES + b.mask()]
}

fn add_term(acc: &mut [i64; BLADES], mask: usize, coeff: i64) {
    acc[mask] += coeff;
}

/// `e_i ^ blade` as (sign, mask).
fn wedge_generator(i: usize, mask: usize) -> Option<(i64, usize)> {
    BasisBlade::generator(i)
        .wedge_sign(BasisBlade::from_mask(mask))
        .map(|s| (s, mask | 1 << i))
}

/// `e_i _| blade` as a list of (coefficient, mask).
fn contract_generator(i: usize, mask: usize) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    for (r, j) in BasisBlade::from_mask(mask)
        .indices()
        .into_iter()
        .enumerate()
    {
        let g = metric(i, j);
        if g != 0 {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            out.push((sign * g, mask & !(1 << j)));
        }
    }
    out
}

/// `e_i X` for a dense integer multivector.
fn generator_times(i: usize, x: &[i64; BLADES]) -> [i64; BLADES] {
    let mut out = [0i64; BLADES];
    for (mask, &c) in x.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if let Some((s, m)) = wedge_generator(i, mask) {
            add_term(&mut out, m, s * c);
        }
        for (g, m) in contract_generator(i, mask) {
            add_term(&mut out, m, g * c);
        }
    }
    out
}

fn build() -> Vec<Terms> {
    // rows[a][b] as dense integer vectors while building
    let mut rows: Vec<Option<Vec<[i64; BLADES]>>> = vec![None; BLADES];
    let mut order: Vec<usize> = (0..BLADES).collect();
    order.sort_by_key(|m| m.count_ones());
    for a in order {
        let row = if a == 0 {
            (0..BLADES)
                .map(|b| {
                    let mut v = [0i64; BLADES];
                    v[b] = 1;
                    v
                })
                .collect()
        } else {
            let i = a.trailing_zeros() as usize;
            let rest = a & !(1 << i);
            let rest_row = rows[rest].as_ref().expect("lower grade built first");
            let contractions = contract_generator(i, rest);
            (0..BLADES)
                .map(|b| {
                    let mut v = generator_times(i, &rest_row[b]);
                    for &(g, m) in &contractions {
                        let lower = &rows[m].as_ref().expect("lower grade built first")[b];
                        for (k, &c) in lower.iter().enumerate() {
                            v[k] -= g * c;
                        }
                    }
                    v
                })
                .collect()
        };
        rows[a] = Some(row);
    }
    let mut table = Vec::with_capacity(BLADES * BLADES);
    for row in rows.into_iter().map(|r| r.expect("all rows built")) {
        for dense in row {
            table.push(
                dense
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(m, &c)| (m as u8, c))
                    .collect(),
            );
        }
    }
    debug_assert_eq!(DIM, 6);
    table
}
