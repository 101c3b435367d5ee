//! Row-major adjacency bitsets, one row of `words` u64 per vertex.

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn test(row: &[u64], v: usize) -> bool {
    (row[v >> 6] >> (v & 63)) & 1 == 1
}

#[inline]
pub(crate) fn set(row: &mut [u64], v: usize) {
    row[v >> 6] |= 1u64 << (v & 63);
}

#[inline]
pub(crate) fn clear(row: &mut [u64], v: usize) {
    row[v >> 6] &= !(1u64 << (v & 63));
}

/// Iterates the set bits of a row in increasing order.
pub(crate) fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(i, &word)| {
        let mut w = word;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + bit)
        })
    })
}

/// Mask keeping only bits strictly above `v` in word `i`.
#[inline]
pub(crate) fn above_mask(i: usize, v: usize) -> u64 {
    let first = v + 1;
    let word = first >> 6;
    match i.cmp(&word) {
        std::cmp::Ordering::Less => 0,
        std::cmp::Ordering::Equal => u64::MAX << (first & 63),
        std::cmp::Ordering::Greater => u64::MAX,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_in_order() {
        let mut row = vec![0u64; 3];
        for v in [0, 5, 63, 64, 130] {
            set(&mut row, v);
        }
        assert_eq!(ones(&row).collect::<Vec<_>>(), vec![0, 5, 63, 64, 130]);
        clear(&mut row, 63);
        assert!(!test(&row, 63));
        assert!(test(&row, 64));
    }

    #[test]
    fn above_mask_boundaries() {
        assert_eq!(above_mask(0, 62), 1u64 << 63);
        assert_eq!(above_mask(0, 63), 0);
        assert_eq!(above_mask(1, 63), u64::MAX);
        assert_eq!(above_mask(1, 64), u64::MAX << 1);
    }
}
