//! Small enumeration helpers shared across modules. Everything here is
//! deterministic: regression baselines depend on stable orders.

/// All partitions of `{0..n-1}` as class-index vectors in restricted
/// growth string order. `partitions(0) == [[]]`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        out.push(rgs.clone());
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in rgs.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                break;
            }
            rgs[i] = 0;
            i -= 1;
        }
    }
}

/// All choice vectors picking one entry from each slot, lexicographically.
/// Empty iterator when any slot is empty; one empty vector for no slots.
pub fn choice_vectors(slot_sizes: &[usize]) -> Vec<Vec<usize>> {
    if slot_sizes.iter().any(|&s| s == 0) {
        return vec![];
    }
    let mut out = vec![vec![]];
    for &s in slot_sizes {
        let mut next = Vec::with_capacity(out.len() * s);
        for prefix in &out {
            for v in 0..s {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Sorted subsets of `{0..n-1}`, ordered by bitmask value.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    assert!(n <= 24, "subset enumeration bound");
    (0u32..(1u32 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_are_bell_numbers() {
        assert_eq!(partitions(0).len(), 1);
        assert_eq!(partitions(1).len(), 1);
        assert_eq!(partitions(2).len(), 2);
        assert_eq!(partitions(3).len(), 5);
        assert_eq!(partitions(4).len(), 15);
        assert_eq!(partitions(5).len(), 52);
    }

    #[test]
    fn choice_vectors_multiply() {
        assert_eq!(choice_vectors(&[2, 3]).len(), 6);
        assert_eq!(choice_vectors(&[]).len(), 1);
        assert_eq!(choice_vectors(&[2, 0]).len(), 0);
    }
}
