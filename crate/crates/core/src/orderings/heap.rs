//! Permutation generators.

use alloc::vec;
use alloc::vec::Vec;

/// All permutations of `items` in the order produced by Heap's algorithm
/// (iterative form). Each successive permutation differs by one swap.
pub fn heap_permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let n = items.len();
    let mut a = items.to_vec();
    let mut out = vec![a.clone()];
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Rearranges `a` into the lexicographically next permutation. Returns
/// `false` (leaving `a` sorted ascending) after the last one.
pub fn next_lexicographic<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn heap_covers_every_permutation_once() {
        for n in 0..=6 {
            let items: Vec<usize> = (0..n).collect();
            let perms = heap_permutations(&items);
            assert_eq!(perms.len(), factorial(n));
            let distinct: BTreeSet<_> = perms.iter().cloned().collect();
            assert_eq!(distinct.len(), perms.len());
        }
    }

    #[test]
    fn heap_steps_are_single_swaps() {
        let perms = heap_permutations(&[1, 2, 3, 4]);
        for w in perms.windows(2) {
            let diffs = w[0].iter().zip(&w[1]).filter(|(a, b)| a != b).count();
            assert_eq!(diffs, 2);
        }
    }

    #[test]
    fn lexicographic_walk() {
        let mut a = [1, 2, 3];
        let mut seen = vec![a.to_vec()];
        while next_lexicographic(&mut a) {
            seen.push(a.to_vec());
        }
        assert_eq!(
            seen,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(a, [1, 2, 3]);
    }
}
