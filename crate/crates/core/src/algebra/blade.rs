//! Basis blades of Cl(1,3) encoded as 4-bit generator masks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Minkowski metric diagonal, `eta[a] = η^{aa}`.
pub const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Number of basis blades.
pub const DIM: usize = 16;

/// Blades in the conventional listing order: scalar, vectors, bivectors,
/// trivectors, pseudoscalar, each grade in lexicographic index order.
pub const CANONICAL_ORDER: [Blade; DIM] = [
    Blade(0b0000),
    Blade(0b0001),
    Blade(0b0010),
    Blade(0b0100),
    Blade(0b1000),
    Blade(0b0011),
    Blade(0b0101),
    Blade(0b1001),
    Blade(0b0110),
    Blade(0b1010),
    Blade(0b1100),
    Blade(0b0111),
    Blade(0b1011),
    Blade(0b1101),
    Blade(0b1110),
    Blade(0b1111),
];

/// A basis blade `e^{a1...ak}` with `a1 < ... < ak`; bit `a` set means
/// generator `e^a` is present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    pub fn new(mask: u8) -> Result<Self, Error> {
        if mask < 16 {
            Ok(Blade(mask))
        } else {
            Err(Error::InvalidBlade(format!("mask {mask:#b}")))
        }
    }

    /// Blade from a strictly increasing list of generator indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self, Error> {
        let mut mask = 0u8;
        let mut last: Option<usize> = None;
        for &a in indices {
            if a > 3 || last.is_some_and(|l| l >= a) {
                return Err(Error::InvalidBlade(format!("{indices:?}")));
            }
            mask |= 1 << a;
            last = Some(a);
        }
        Ok(Blade(mask))
    }

    pub(crate) const fn from_mask(mask: u8) -> Self {
        assert!(mask < 16);
        Blade(mask)
    }

    /// The single generator `e^a`.
    pub const fn generator(a: usize) -> Self {
        assert!(a < 4);
        Blade(1 << a)
    }

    pub const fn mask(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Generator indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |a| self.0 & (1 << a) != 0)
    }

    pub fn all() -> impl Iterator<Item = Blade> {
        CANONICAL_ORDER.into_iter()
    }

    pub fn of_grade(k: usize) -> impl Iterator<Item = Blade> {
        Self::all().filter(move |b| b.grade() == k)
    }
}

/// Clifford product of two basis blades: `e^a e^b = sign · e^{result}`.
///
/// The sign collects one factor of -1 per transposition needed to merge the
/// two sorted generator strings, and a factor `η^{kk}` for each generator
/// `k` shared by both blades.
pub const fn blade_mul(a: Blade, b: Blade) -> (i8, Blade) {
    let (a, b) = (a.0, b.0);
    let mut swaps = 0u32;
    let mut j = 0;
    while j < 4 {
        if b & (1 << j) != 0 {
            // generators of `a` with a larger index must move past e^j
            swaps += (a >> (j + 1)).count_ones();
        }
        j += 1;
    }
    let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
    let common = a & b;
    let mut k = 1;
    while k < 4 {
        if common & (1 << k) != 0 {
            sign = -sign;
        }
        k += 1;
    }
    (sign, Blade(a ^ b))
}

const fn build_sign_table() -> [[f64; DIM]; DIM] {
    let mut t = [[0.0; DIM]; DIM];
    let mut i = 0;
    while i < DIM {
        let mut j = 0;
        while j < DIM {
            let (s, _) = blade_mul(Blade(i as u8), Blade(j as u8));
            t[i][j] = s as f64;
            j += 1;
        }
        i += 1;
    }
    t
}

/// `SIGN[i][j]` is the sign of `e^i e^j` (masks `i`, `j`); the result blade
/// is always `i ^ j`.
pub(crate) static SIGN: [[f64; DIM]; DIM] = build_sign_table();

/// The full Cayley table in canonical order: `(row, column, sign, result)`.
pub fn cayley_table() -> Vec<(Blade, Blade, i8, Blade)> {
    let mut rows = Vec::with_capacity(DIM * DIM);
    for a in Blade::all() {
        for b in Blade::all() {
            let (s, r) = blade_mul(a, b);
            rows.push((a, b, s, r));
        }
    }
    rows
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("e")?;
        for a in self.indices() {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Blade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s
            .strip_prefix('e')
            .ok_or_else(|| Error::InvalidBlade(s.to_string()))?;
        let indices = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidBlade(s.to_string()))?;
        Blade::from_indices(&indices).map_err(|_| Error::InvalidBlade(s.to_string()))
    }
}

impl TryFrom<String> for Blade {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Blade> for String {
    fn from(b: Blade) -> String {
        b.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::blade_mul_by_sorting;

    fn e(idx: &[usize]) -> Blade {
        Blade::from_indices(idx).unwrap()
    }

    #[test]
    fn generator_squares() {
        assert_eq!(blade_mul(e(&[0]), e(&[0])), (1, Blade::SCALAR));
        assert_eq!(blade_mul(e(&[1]), e(&[1])), (-1, Blade::SCALAR));
        assert_eq!(blade_mul(e(&[0]), e(&[1])), (1, e(&[0, 1])));
        assert_eq!(blade_mul(e(&[0, 1]), e(&[0, 1])), (1, Blade::SCALAR));
    }

    #[test]
    fn table_matches_sorting_oracle() {
        for a in Blade::all() {
            for b in Blade::all() {
                let (s, r) = blade_mul(a, b);
                let (os, or) = blade_mul_by_sorting(a, b);
                assert_eq!((s, r), (os, or), "{a} * {b}");
                assert_eq!(SIGN[a.index()][b.index()], s as f64);
            }
        }
    }

    #[test]
    fn grade_dimensions() {
        let dims: Vec<usize> = (0..=4).map(|k| Blade::of_grade(k).count()).collect();
        assert_eq!(dims, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn parse_and_display() {
        for b in Blade::all() {
            assert_eq!(b.to_string().parse::<Blade>().unwrap(), b);
        }
        assert_eq!("e".parse::<Blade>().unwrap(), Blade::SCALAR);
        assert!("e10".parse::<Blade>().is_err());
        assert!("e4".parse::<Blade>().is_err());
        assert!("x01".parse::<Blade>().is_err());
    }
}
