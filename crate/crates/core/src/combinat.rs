//! Deterministic enumeration of the combinatorial index sets.
//!
//! All enumerations return their results sorted in the canonical key order
//! of the corresponding [`BasisKey`](crate::basis::BasisKey) content, so
//! basis listings are reproducible.

use crate::scalar::Scalar;

/// Partitions of `n` as weakly decreasing part lists, sorted.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n.max(1), &mut current, &mut out);
    out.sort();
    out
}

/// Compositions of `n` (ordered positive part lists), sorted.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in 1..=remaining {
            current.push(part);
            rec(remaining - part, current, out);
            current.pop();
        }
    }
    rec(n, &mut current, &mut out);
    out.sort();
    out
}

/// Nonempty subsets of `{1, …, m}` as sorted entry lists, sorted.
pub fn nonempty_subsets(m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 1u64..(1 << m) {
        out.push(mask_to_set(mask));
    }
    out.sort();
    out
}

fn mask_to_set(mask: u64) -> Vec<u32> {
    (0..64)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| i as u32 + 1)
        .collect()
}

/// Words of nonempty subsets of `{1, …, m}` with total cardinality `n`,
/// sorted.  The empty word is the unique word of weight 0.
pub fn set_words(m: u32, n: u32) -> Vec<Vec<Vec<u32>>> {
    let letters: Vec<(Vec<u32>, u32)> = nonempty_subsets(m)
        .into_iter()
        .map(|s| {
            let w = s.len() as u32;
            (s, w)
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        remaining: u32,
        letters: &[(Vec<u32>, u32)],
        current: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for (letter, w) in letters {
            if *w <= remaining {
                current.push(letter.clone());
                rec(remaining - w, letters, current, out);
                current.pop();
            }
        }
    }
    rec(n, &letters, &mut current, &mut out);
    out.sort();
    out
}

/// Ordered two-block splits of a finite set, including the empty sides.
pub fn subset_splits(set: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let n = set.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1 << n) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &e) in set.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left.push(e);
            } else {
                right.push(e);
            }
        }
        out.push((left, right));
    }
    out.sort();
    out
}

/// Two-block splits of a multiset of parts, with multiplicities.
///
/// Returns `(left, right, count)` triples where `count` is the number of
/// ways to pick index subsets realizing the split: the product over distinct
/// part values of `C(total copies, copies sent left)`.
pub fn multiset_splits(parts: &[u32]) -> Vec<(Vec<u32>, Vec<u32>, Scalar)> {
    // Group equal parts: partitions are weakly decreasing, so equal values
    // are adjacent.
    let mut groups: Vec<(u32, u32)> = Vec::new();
    for &p in parts {
        match groups.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut out: Vec<(Vec<u32>, Vec<u32>, Scalar)> = Vec::new();
    let mut choice = vec![0u32; groups.len()];
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut count = Scalar::one();
        for (i, &(value, copies)) in groups.iter().enumerate() {
            let k = choice[i];
            for _ in 0..k {
                left.push(value);
            }
            for _ in 0..(copies - k) {
                right.push(value);
            }
            count = &count * &binomial(copies, k);
        }
        out.push((left, right, count));
        // Odometer over 0..=copies per group.
        let mut i = 0;
        loop {
            if i == groups.len() {
                out.sort();
                return out;
            }
            if choice[i] < groups[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// All shuffles of two part lists, with repetitions for multiplicity.
pub fn shuffles(a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(a.len() + b.len());
    fn rec(a: &[u32], b: &[u32], current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if a.is_empty() && b.is_empty() {
            out.push(current.clone());
            return;
        }
        if let Some((&h, rest)) = a.split_first() {
            current.push(h);
            rec(rest, b, current, out);
            current.pop();
        }
        if let Some((&h, rest)) = b.split_first() {
            current.push(h);
            rec(a, rest, current, out);
            current.pop();
        }
    }
    rec(a, b, &mut current, &mut out);
    out
}

/// Binomial coefficient as an exact scalar.
pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let mut num = Scalar::one();
    for i in 0..k.min(n - k) {
        num = &num * &Scalar::new((n - i) as i64, (i + 1) as i64);
    }
    num
}

/// Factorial as an exact scalar.
pub fn factorial(n: u32) -> Scalar {
    let mut out = Scalar::one();
    for i in 2..=n as i64 {
        out = &out * &Scalar::from_int(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_match_known_values() {
        let expected = [1usize, 1, 2, 3, 5, 7, 11, 15];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(partitions(n as u32).len(), e, "p({n})");
        }
        assert_eq!(partitions(3), vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
    }

    #[test]
    fn composition_counts_are_powers_of_two() {
        for n in 1u32..8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert_eq!(compositions(0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn set_word_counts_follow_the_generating_function() {
        // Weight-n words over nonempty subsets of an m-set, m = 4:
        // coefficients of 1/(1 - (4t + 6t² + 4t³ + t⁴)).
        let expected4 = [1usize, 4, 22, 116, 613, 3240, 17124];
        for (n, &e) in expected4.iter().enumerate() {
            assert_eq!(set_words(4, n as u32).len(), e, "m=4, n={n}");
        }
        let expected3 = [1usize, 3, 12, 46, 177, 681];
        for (n, &e) in expected3.iter().enumerate() {
            assert_eq!(set_words(3, n as u32).len(), e, "m=3, n={n}");
        }
    }

    #[test]
    fn subset_splits_enumerate_ordered_pairs() {
        let splits = subset_splits(&[1, 2]);
        assert_eq!(
            splits,
            vec![
                (vec![], vec![1, 2]),
                (vec![1], vec![2]),
                (vec![1, 2], vec![]),
                (vec![2], vec![1]),
            ]
        );
    }

    #[test]
    fn multiset_splits_carry_binomial_multiplicities() {
        let splits = multiset_splits(&[1, 1]);
        assert_eq!(
            splits,
            vec![
                (vec![], vec![1, 1], Scalar::one()),
                (vec![1], vec![1], Scalar::from_int(2)),
                (vec![1, 1], vec![], Scalar::one()),
            ]
        );
        // Total multiplicity over all splits of [2,1,1] is 2^3.
        let total: Scalar = multiset_splits(&[2, 1, 1])
            .into_iter()
            .map(|(_, _, c)| c)
            .sum();
        assert_eq!(total, Scalar::from_int(8));
    }

    #[test]
    fn shuffle_counts_are_binomial() {
        assert_eq!(shuffles(&[1], &[1]).len(), 2);
        assert_eq!(shuffles(&[1, 2], &[3]).len(), 3);
        assert_eq!(shuffles(&[1, 2], &[3, 4]).len(), 6);
        assert_eq!(shuffles(&[], &[]), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn binomial_and_factorial_agree() {
        assert_eq!(binomial(4, 2), Scalar::from_int(6));
        assert_eq!(binomial(2, 3), Scalar::zero());
        assert_eq!(factorial(5), Scalar::from_int(120));
        for n in 0u32..8 {
            for k in 0..=n {
                let lhs = &binomial(n, k) * &(&factorial(k) * &factorial(n - k));
                assert_eq!(lhs, factorial(n));
            }
        }
    }
}
