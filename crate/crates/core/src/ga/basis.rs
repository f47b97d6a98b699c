use std::fmt;
use std::sync::LazyLock;

use crate::error::{Error, Result};

/// Number of generators.
pub const DIM: usize = 6;
/// Number of basis blades.
pub const BLADES: usize = 1 << DIM;

/// Bilinear form of the generators, 0-based: `e_i . e_{i+3} = 1`, everything
/// else zero. In particular every generator is null.
pub const fn metric(i: usize, j: usize) -> i64 {
    if i + 3 == j || j + 3 == i {
        1
    } else {
        0
    }
}

/// Wedge-basis element `e_{i1} ^ ... ^ e_{ik}` with ascending indices,
/// stored as a bit set over the generators (bit 0 is `e1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisBlade(u8);

static CANONICAL_ORDER: LazyLock<Vec<BasisBlade>> = LazyLock::new(|| {
    let mut all: Vec<BasisBlade> = (0..BLADES as u8).map(BasisBlade).collect();
    all.sort_by_key(|b| (b.grade(), b.indices()));
    all
});

impl BasisBlade {
    pub const SCALAR: BasisBlade = BasisBlade(0);
    pub const PSEUDOSCALAR: BasisBlade = BasisBlade((BLADES - 1) as u8);

    pub fn from_mask(mask: usize) -> Self {
        assert!(mask < BLADES, "blade mask out of range: {mask}");
        BasisBlade(mask as u8)
    }

    /// The generator `e_{index+1}` (0-based index).
    pub fn generator(index: usize) -> Self {
        assert!(index < DIM);
        BasisBlade(1 << index)
    }

    pub fn mask(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 0-based generator indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..DIM).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    /// Folds an arbitrary word of 0-based generator indices under the wedge
    /// product: repeated indices give zero, a permutation gives its sign.
    pub fn from_indices(indices: &[usize]) -> Option<(i64, BasisBlade)> {
        let mut mask = 0u8;
        let mut sign = 1;
        for &i in indices {
            assert!(i < DIM);
            if mask >> i & 1 == 1 {
                return None;
            }
            // generators already placed with a larger index must be jumped over
            if (mask >> (i + 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= 1 << i;
        }
        Some((sign, BasisBlade(mask)))
    }

    /// Parses `"1"`, `"e0"` (scalar) or `"e<digits>"` with digits in 1..=6.
    /// Unsorted labels are folded into a sign; `None` means the label denotes
    /// zero (a repeated index).
    pub fn parse(label: &str) -> Result<Option<(i64, BasisBlade)>> {
        let label = label.trim();
        if label == "1" || label == "e0" || label == "e" {
            return Ok(Some((1, BasisBlade::SCALAR)));
        }
        let digits = label
            .strip_prefix('e')
            .ok_or_else(|| Error::Parse(format!("bad blade label {label:?}")))?;
        let indices = digits
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(d @ 1..=6) => Ok(d as usize - 1),
                _ => Err(Error::Parse(format!("bad blade label {label:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BasisBlade::from_indices(&indices))
    }

    pub fn label(self) -> String {
        if self.0 == 0 {
            "1".to_string()
        } else {
            let digits: String = self
                .indices()
                .iter()
                .map(|i| char::from(b'1' + *i as u8))
                .collect();
            format!("e{digits}")
        }
    }

    /// All 64 blades ordered by grade, then lexicographically by indices.
    pub fn canonical_order() -> &'static [BasisBlade] {
        &CANONICAL_ORDER
    }

    /// Sign of the wedge `self ^ other`, or `None` when they share a generator.
    pub fn wedge_sign(self, other: BasisBlade) -> Option<i64> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0;
        for i in other.indices() {
            swaps += (self.0 >> (i + 1)).count_ones();
        }
        Some(if swaps % 2 == 0 { 1 } else { -1 })
    }
}

impl fmt::Debug for BasisBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Display for BasisBlade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for &b in BasisBlade::canonical_order() {
            assert_eq!(BasisBlade::parse(&b.label()).unwrap(), Some((1, b)));
        }
        assert_eq!(BasisBlade::canonical_order().len(), 64);
        assert_eq!(BasisBlade::canonical_order()[0], BasisBlade::SCALAR);
        assert_eq!(BasisBlade::canonical_order()[63], BasisBlade::PSEUDOSCALAR);
    }

    #[test]
    fn permutations_fold_into_sign() {
        let e12 = BasisBlade::parse("e12").unwrap().unwrap().1;
        assert_eq!(BasisBlade::parse("e21").unwrap(), Some((-1, e12)));
        let e123 = BasisBlade::parse("e123").unwrap().unwrap().1;
        assert_eq!(BasisBlade::parse("e312").unwrap(), Some((1, e123)));
        assert_eq!(BasisBlade::parse("e321").unwrap(), Some((-1, e123)));
        assert_eq!(BasisBlade::parse("e11").unwrap(), None);
        assert_eq!(
            BasisBlade::parse("e0").unwrap(),
            Some((1, BasisBlade::SCALAR))
        );
        assert!(BasisBlade::parse("e7").is_err());
        assert!(BasisBlade::parse("x1").is_err());
    }

    #[test]
    fn metric_is_witt() {
        for i in 0..DIM {
            assert_eq!(metric(i, i), 0);
            for j in 0..DIM {
                assert_eq!(metric(i, j), metric(j, i));
            }
        }
        assert_eq!(metric(0, 3), 1);
        assert_eq!(metric(2, 5), 1);
        assert_eq!(metric(0, 1), 0);
    }
}
