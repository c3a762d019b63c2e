mod common;

use common::brute_force_bounded_partition;
use highconn::partition_bounded;

/// Largest part sum over the best split into `q` nonempty parts.
fn best_max_part(values: &[usize], q: usize) -> usize {
    let n = values.len();
    let mut best = usize::MAX;
    let mut part = vec![0usize; n];
    loop {
        let mut sums = vec![0usize; q];
        let mut used = vec![false; q];
        for (i, &p) in part.iter().enumerate() {
            sums[p] += values[i];
            used[p] = true;
        }
        if used.iter().all(|&u| u) {
            best = best.min(*sums.iter().max().unwrap());
        }
        let mut i = 0;
        while i < n && part[i] == q - 1 {
            part[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
        part[i] += 1;
    }
}

// The part bound 2k cannot shrink to (2 - ε)k: q + 1 elements of value
// k - 1 (with q < k) put two elements in some part, a sum of 2k - 2.
#[test]
fn two_k_bound_is_nearly_attained() {
    for k in 2..=6 {
        for q in 1..k.min(5) {
            let values = vec![k - 1; q + 1];
            let sum: usize = values.iter().sum();
            assert!(q * k <= sum && sum < (q + 1) * k);
            assert_eq!(best_max_part(&values, q), 2 * k - 2);
            assert!(brute_force_bounded_partition(&values, k, q));
            let parts = partition_bounded(&values, k, q).unwrap();
            assert_eq!(parts.iter().map(|p| p.iter().sum::<usize>()).max(), Some(2 * k - 2));
        }
    }
}
