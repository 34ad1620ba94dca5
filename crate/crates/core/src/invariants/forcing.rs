use std::collections::BTreeSet;

use super::{bits, full_mask};
use crate::graph::Graph;

/// Closure of `blue` under the color-change rule: a blue vertex with exactly
/// one non-blue neighbor turns that neighbor blue.
pub fn forcing_closure(g: &Graph, blue: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut colored = vec![false; g.order()];
    for &v in blue {
        colored[v] = true;
    }
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..g.order() {
            if !colored[v] {
                continue;
            }
            let mut white = g.neighbors(v).iter().filter(|&&w| !colored[w]);
            if let (Some(&w), None) = (white.next(), white.next()) {
                colored[w] = true;
                changed = true;
            }
        }
    }
    (0..g.order()).filter(|&v| colored[v]).collect()
}

fn closure_mask(masks: &[u64], mut blue: u64) -> u64 {
    loop {
        let before = blue;
        for v in bits(blue) {
            let white = masks[v] & !blue;
            if white.count_ones() == 1 {
                blue |= white;
            }
        }
        if blue == before {
            return blue;
        }
    }
}

/// Next larger integer with the same popcount.
fn next_combination(x: u64) -> u64 {
    let smallest = x & x.wrapping_neg();
    let ripple = x.wrapping_add(smallest);
    if ripple == 0 {
        return 0;
    }
    let ones = ((x ^ ripple) >> 2) / smallest;
    ripple | ones
}

/// Smallest k >= `start` admitting a k-subset that satisfies `accept`,
/// scanning subsets of each size in increasing bitmask order.
fn smallest_accepted(n: usize, start: usize, mut accept: impl FnMut(u64) -> bool) -> usize {
    let all = full_mask(n);
    for k in start..=n {
        if k == 0 {
            if accept(0) {
                return 0;
            }
            continue;
        }
        let mut subset = full_mask(k);
        while subset != 0 && subset & !all == 0 {
            if accept(subset) {
                return k;
            }
            subset = next_combination(subset);
        }
    }
    n
}

pub(crate) fn zero_forcing_number(masks: &[u64]) -> usize {
    let n = masks.len();
    let all = full_mask(n);
    let min_degree = masks.iter().map(|m| m.count_ones() as usize).min().unwrap_or(0);
    // Z >= minimum degree, and any nonempty graph needs one blue vertex
    let start = min_degree.max(usize::from(n > 0));
    smallest_accepted(n, start, |s| closure_mask(masks, s) == all)
}

/// Caller guarantees there is no isolated vertex.
pub(crate) fn total_zero_forcing_number(masks: &[u64]) -> usize {
    let all = full_mask(masks.len());
    let start = zero_forcing_number(masks).max(2);
    smallest_accepted(masks.len(), start, |s| {
        bits(s).all(|v| masks[v] & s != 0) && closure_mask(masks, s) == all
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(forcing_closure(&Graph::path("p3", 3), &set(&[0])), set(&[0, 1, 2]));
        assert_eq!(forcing_closure(&Graph::complete("k4", 4), &set(&[0])), set(&[0]));
        assert_eq!(
            forcing_closure(&Graph::cycle("c5", 5), &set(&[0, 1])),
            set(&[0, 1, 2, 3, 4])
        );
    }

    #[test]
    fn mask_closure_agrees_with_set_closure() {
        let g = Graph::petersen("pet");
        let masks = g.neighbor_masks().unwrap();
        for blue in [0b1u64, 0b11, 0b100011, 0b1111, 0b1000010001] {
            let as_set: BTreeSet<usize> = bits(blue).collect();
            let expected: BTreeSet<usize> = forcing_closure(&g, &as_set);
            assert_eq!(bits(closure_mask(&masks, blue)).collect::<BTreeSet<_>>(), expected);
        }
    }

    #[test]
    fn forcing_numbers() {
        let masks = |g: &Graph| g.neighbor_masks().unwrap();
        assert_eq!(zero_forcing_number(&masks(&Graph::path("p6", 6))), 1);
        assert_eq!(zero_forcing_number(&masks(&Graph::cycle("c6", 6))), 2);
        assert_eq!(zero_forcing_number(&masks(&Graph::complete("k5", 5))), 4);
        assert_eq!(zero_forcing_number(&masks(&Graph::petersen("pet"))), 5);
        assert_eq!(total_zero_forcing_number(&masks(&Graph::path("p6", 6))), 2);
        assert_eq!(
            total_zero_forcing_number(&masks(&Graph::complete_bipartite("k13", 1, 3))),
            3
        );
    }

    #[test]
    fn combinations_walk_every_subset_once() {
        let mut count = 0;
        let mut s = 0b111u64;
        while s & !0b11111 == 0 {
            count += 1;
            s = next_combination(s);
        }
        assert_eq!(count, 10);
    }

    proptest! {
        #[test]
        fn closure_is_monotone_and_idempotent(
            edges in proptest::collection::btree_set((0usize..8, 0usize..8), 0..20),
            a in proptest::collection::btree_set(0usize..8, 0..8),
            b in proptest::collection::btree_set(0usize..8, 0..8),
        ) {
            let edges: BTreeSet<_> = edges.into_iter().filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v))).collect();
            let g = Graph::new("g", 8, edges).unwrap();
            let small = forcing_closure(&g, &a);
            prop_assert!(small.is_superset(&a));
            prop_assert_eq!(forcing_closure(&g, &small), small.clone());
            let union: BTreeSet<usize> = a.union(&b).copied().collect();
            prop_assert!(forcing_closure(&g, &union).is_superset(&small));
        }
    }
}
