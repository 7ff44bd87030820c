//! Multi-index bookkeeping for jets in four variables up to order 3.

use std::sync::OnceLock;

/// Highest derivative order a jet may carry.
pub const MAX_ORDER: usize = 3;

/// Number of multi-indices with `|α| ≤ k` in four variables.
pub const fn len_for_order(k: usize) -> usize {
    match k {
        0 => 1,
        1 => 5,
        2 => 15,
        3 => 35,
        _ => panic!("jet order above 3"),
    }
}

/// Multi-index `α = (α₀, α₁, α₂, α₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivIndex(pub [u8; 4]);

impl DerivIndex {
    pub const ZERO: DerivIndex = DerivIndex([0; 4]);

    pub fn unit(mu: usize) -> Self {
        let mut a = [0; 4];
        a[mu] = 1;
        DerivIndex(a)
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    /// Position in the graded ordering shared by every jet.
    pub fn position(&self) -> usize {
        tables().position(self)
    }
}

pub(crate) struct LeibnizTerm {
    pub left: usize,
    pub right: usize,
    pub weight: f64,
}

pub(crate) struct Tables {
    /// Multi-indices graded by order; entries of a jet of order k are the
    /// first `len_for_order(k)` of these.
    pub list: Vec<DerivIndex>,
    lookup: [[[[usize; 4]; 4]; 4]; 4],
    /// `shift[i][μ]`: position of `list[i] + e_μ`, if within `MAX_ORDER`.
    pub shift: Vec<[Option<usize>; 4]>,
    /// For each α, all `(β, α−β, C(α,β))`.
    pub leibniz: Vec<Vec<LeibnizTerm>>,
}

impl Tables {
    fn position(&self, a: &DerivIndex) -> usize {
        let [a0, a1, a2, a3] = a.0.map(|x| x as usize);
        assert!(a0 + a1 + a2 + a3 <= MAX_ORDER, "multi-index beyond max order");
        self.lookup[a0][a1][a2][a3]
    }
}

fn binomial(n: u8, k: u8) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

fn build() -> Tables {
    let mut list = Vec::new();
    for order in 0..=MAX_ORDER {
        for a0 in (0..=order).rev() {
            for a1 in (0..=order - a0).rev() {
                for a2 in (0..=order - a0 - a1).rev() {
                    let a3 = order - a0 - a1 - a2;
                    list.push(DerivIndex([a0 as u8, a1 as u8, a2 as u8, a3 as u8]));
                }
            }
        }
    }
    debug_assert_eq!(list.len(), len_for_order(MAX_ORDER));
    let mut lookup = [[[[usize::MAX; 4]; 4]; 4]; 4];
    for (i, a) in list.iter().enumerate() {
        let [a0, a1, a2, a3] = a.0.map(|x| x as usize);
        lookup[a0][a1][a2][a3] = i;
    }
    let pos = |a: [u8; 4]| lookup[a[0] as usize][a[1] as usize][a[2] as usize][a[3] as usize];
    let shift = list
        .iter()
        .map(|a| {
            let mut s = [None; 4];
            if a.order() < MAX_ORDER {
                for (mu, slot) in s.iter_mut().enumerate() {
                    let mut b = a.0;
                    b[mu] += 1;
                    *slot = Some(pos(b));
                }
            }
            s
        })
        .collect();
    let leibniz = list
        .iter()
        .map(|a| {
            let mut terms = Vec::new();
            for b0 in 0..=a.0[0] {
                for b1 in 0..=a.0[1] {
                    for b2 in 0..=a.0[2] {
                        for b3 in 0..=a.0[3] {
                            let b = [b0, b1, b2, b3];
                            let c = [a.0[0] - b0, a.0[1] - b1, a.0[2] - b2, a.0[3] - b3];
                            let weight =
                                (0..4).map(|i| binomial(a.0[i], b[i])).product::<f64>();
                            terms.push(LeibnizTerm { left: pos(b), right: pos(c), weight });
                        }
                    }
                }
            }
            terms
        })
        .collect();
    Tables { list, lookup, shift, leibniz }
}

pub(crate) fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_prefixes() {
        let t = tables();
        for k in 0..=MAX_ORDER {
            let n = len_for_order(k);
            assert!(t.list[..n].iter().all(|a| a.order() <= k));
            assert!(t.list[n..].iter().all(|a| a.order() > k));
        }
    }

    #[test]
    fn positions_round_trip() {
        for (i, a) in tables().list.iter().enumerate() {
            assert_eq!(a.position(), i);
        }
    }

    #[test]
    fn leibniz_weights_sum_to_two_to_order() {
        // Σ_β C(α,β) = 2^|α|
        for (a, terms) in tables().list.iter().zip(&tables().leibniz) {
            let total: f64 = terms.iter().map(|t| t.weight).sum();
            assert_eq!(total, f64::powi(2.0, a.order() as i32));
        }
    }
}
