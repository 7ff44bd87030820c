//! Reference computations that share no code path with the fast routines
//! they check.
//!
//! The verification suites compare the table-driven product against a
//! generator-string sorter, and the closed-form exponentials against a
//! truncated power series.

use crate::algebra::{Blade, Multivector, ETA};

/// Product of two basis blades by writing both as generator strings,
/// bubble-sorting the concatenation and contracting equal neighbours.
pub fn blade_mul_by_sorting(a: Blade, b: Blade) -> (i8, Blade) {
    let mut word: Vec<usize> = a.indices().chain(b.indices()).collect();
    let mut sign = 1i8;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if word[i] == word[i + 1] {
                if ETA[word[i]] < 0.0 {
                    sign = -sign;
                }
                word.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    (sign, Blade::from_indices(&word).expect("sorted distinct generators"))
}

/// Clifford product expanded blade pair by blade pair through
/// [`blade_mul_by_sorting`].
pub fn mul_by_sorting(u: &Multivector, v: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            let (s, r) = blade_mul_by_sorting(a, b);
            let c = out.coeff(r) + ca * cb * s as f64;
            out.set_coeff(r, c);
        }
    }
    out
}

/// `exp(s) ≈ Σ_{n<terms} sⁿ/n!`, scaling by powers of two while the
/// argument is large and squaring back afterwards.
pub fn exp_series(s: &Multivector, terms: usize) -> Multivector {
    let norm = s.max_abs() * 4.0;
    let mut squarings = 0;
    while norm / f64::powi(2.0, squarings) > 1.0 {
        squarings += 1;
    }
    let x = s.scale(f64::powi(2.0, -squarings));
    let mut sum = Multivector::one();
    let mut term = Multivector::one();
    for n in 1..terms {
        term = mul_by_sorting(&term, &x).scale(1.0 / n as f64);
        sum += term;
    }
    for _ in 0..squarings {
        sum = mul_by_sorting(&sum, &sum);
    }
    sum
}
