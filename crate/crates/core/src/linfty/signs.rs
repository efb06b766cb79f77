//! Koszul signs and shuffle enumeration.

/// Sign (±1) of rearranging graded items with the given degrees from their
/// original order into `order` (a permutation of `0..degrees.len()`).
pub fn koszul_sign(degrees: &[i32], order: &[usize]) -> i64 {
    let mut odd_swaps = 0usize;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            let (i, j) = (order[a], order[b]);
            if i > j && degrees[i].rem_euclid(2) == 1 && degrees[j].rem_euclid(2) == 1 {
                odd_swaps += 1;
            }
        }
    }
    if odd_swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `(r, n−r)` unshuffles: pairs `(I, J)` of increasing index lists with
/// `|I| = r` partitioning `0..n`.
pub fn unshuffles(n: usize, r: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let (i, j): (Vec<usize>, Vec<usize>) = (0..n).partition(|&k| mask & (1 << k) != 0);
        out.push((i, j));
    }
    out
}

/// Ordered partitions of `0..n` into `m` nonempty increasing blocks.
pub fn ordered_partitions(n: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(k: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == n {
            if blocks.iter().all(|b| !b.is_empty()) {
                out.push(blocks.clone());
            }
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(k);
            go(k + 1, n, blocks, out);
            blocks[b].pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 || m > n {
        return out;
    }
    go(0, n, &mut vec![Vec::new(); m], &mut out);
    out
}

/// Parity sign `(−1)^k`.
pub fn parity(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_sign_of_odd_swap() {
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]), -1);
        assert_eq!(koszul_sign(&[1, 2], &[1, 0]), 1);
        assert_eq!(koszul_sign(&[1, 1, 1], &[2, 0, 1]), 1);
    }

    #[test]
    fn counts() {
        assert_eq!(unshuffles(4, 2).len(), 6);
        assert_eq!(ordered_partitions(3, 2).len(), 6);
        assert_eq!(ordered_partitions(4, 2).len(), 14);
        assert_eq!(ordered_partitions(3, 3).len(), 6);
    }
}
