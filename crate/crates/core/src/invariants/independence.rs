use super::{bits, full_mask};

/// Maximum independent set size by branch and bound over neighborhood bitmasks.
pub(crate) fn independence_number(masks: &[u64]) -> usize {
    let mut best = 0;
    search(masks, full_mask(masks.len()), 0, &mut best);
    best as usize
}

fn search(masks: &[u64], candidates: u64, size: u32, best: &mut u32) {
    if candidates == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + candidates.count_ones() <= *best {
        return;
    }
    // A vertex of degree <= 1 within the candidates belongs to some maximum set.
    if let Some(v) = bits(candidates).find(|&v| (masks[v] & candidates).count_ones() <= 1) {
        let rest = candidates & !(1 << v) & !masks[v];
        search(masks, rest, size + 1, best);
        return;
    }
    let v = candidates.trailing_zeros() as usize;
    search(masks, candidates & !(1 << v) & !masks[v], size + 1, best);
    search(masks, candidates & !(1 << v), size, best);
}
