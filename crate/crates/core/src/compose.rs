//! Enumeration of weak compositions: sequences of non-negative integers
//! of fixed length with a fixed sum, streamed in ascending lexicographic
//! order. Both the SAT-to-SI host family and the homomorphism reduction
//! are parametrized by such sequences.

use num_bigint::BigUint;

/// Number of weak compositions of `total` into `parts` parts:
/// `C(total + parts - 1, parts - 1)`.
pub fn composition_count(total: usize, parts: usize) -> BigUint {
    if parts == 0 {
        return if total == 0 {
            BigUint::from(1u32)
        } else {
            BigUint::from(0u32)
        };
    }
    binomial(total + parts - 1, parts - 1)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Streaming iterator over all weak compositions of `total` into `parts`
/// parts, lexicographically ascending: `(0, …, 0, total)` first,
/// `(total, 0, …, 0)` last.
pub fn weak_compositions(total: usize, parts: usize) -> WeakCompositions {
    let next = if parts == 0 {
        if total == 0 {
            Some(Vec::new())
        } else {
            None
        }
    } else {
        let mut first = vec![0; parts];
        first[parts - 1] = total;
        Some(first)
    };
    WeakCompositions { next }
}

pub struct WeakCompositions {
    next: Option<Vec<usize>>,
}

impl Iterator for WeakCompositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        self.next = advance(&current);
        Some(current)
    }
}

fn advance(current: &[usize]) -> Option<Vec<usize>> {
    // Move one unit from the last nonzero slot to its left neighbor and
    // flush whatever remains of that slot to the end.
    let i = current.iter().rposition(|&a| a > 0)?;
    if i == 0 {
        return None;
    }
    let mut next = current.to_vec();
    next[i - 1] += 1;
    let rest = next[i] - 1;
    next[i] = 0;
    *next.last_mut().unwrap() = rest;
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_two_into_two_parts() {
        let all: Vec<Vec<usize>> = weak_compositions(2, 2).collect();
        assert_eq!(all, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(composition_count(2, 2), BigUint::from(3u32));
    }

    #[test]
    fn enumerates_three_into_two_parts() {
        let all: Vec<Vec<usize>> = weak_compositions(3, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]
        );
    }

    #[test]
    fn zero_total_yields_single_composition() {
        assert_eq!(weak_compositions(0, 3).collect::<Vec<_>>(), vec![vec![0, 0, 0]]);
        assert_eq!(weak_compositions(0, 0).collect::<Vec<_>>(), vec![Vec::new()]);
        assert_eq!(weak_compositions(1, 0).count(), 0);
    }

    #[test]
    fn counts_match_enumeration_up_to_sixteen() {
        for total in 0..=8 {
            for parts in 0..=(16 - total) {
                let counted = weak_compositions(total, parts).count();
                assert_eq!(
                    BigUint::from(counted),
                    composition_count(total, parts),
                    "total={total} parts={parts}"
                );
            }
        }
    }

    #[test]
    fn stream_is_strictly_increasing_and_sums_are_fixed() {
        let mut prev: Option<Vec<usize>> = None;
        for comp in weak_compositions(5, 4) {
            assert_eq!(comp.iter().sum::<usize>(), 5);
            if let Some(p) = &prev {
                assert!(*p < comp);
            }
            prev = Some(comp);
        }
    }

    #[test]
    fn binomial_matches_known_values() {
        assert_eq!(binomial(15, 7), BigUint::from(6435u32));
        assert_eq!(binomial(4, 1), BigUint::from(4u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
    }
}
