//! Binomials, colexicographic ranking of k-subsets and permutation parity.

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Colex rank of a strictly ascending subset: `Σ_i C(c_i, i+1)`.
pub fn rank(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c, i + 1) as usize)
        .sum()
}

/// Inverse of [`rank`] for subsets of size `k`.
pub fn unrank(mut r: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (0..k).rev() {
        // largest c with C(c, i+1) <= r
        let mut c = i;
        while binomial(c + 1, i + 1) as usize <= r {
            c += 1;
        }
        out[i] = c;
        r -= binomial(c, i + 1) as usize;
    }
    out
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        current: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Sorts `seq` in place and returns the parity (0 even, 1 odd) of the sorting
/// permutation, by merge-counting inversions.
pub fn sort_with_parity(seq: &mut [usize]) -> u32 {
    if seq.len() < 2 {
        return 0;
    }
    let mut buf = seq.to_vec();
    (count_inversions(seq, &mut buf) & 1) as u32
}

fn count_inversions(seq: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (l, r) = seq.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        count_inversions(l, bl) + count_inversions(r, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    inv
}

/// Parity of a permutation given as an image array.
pub fn permutation_parity(perm: &[usize]) -> u32 {
    let mut seen = vec![false; perm.len()];
    let mut parity = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parity += len - 1;
    }
    (parity & 1) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(16, 4), 1820);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn rank_is_a_bijection() {
        for k in 0..5 {
            let all: Vec<_> = combinations(9, k).collect();
            assert_eq!(all.len() as u128, binomial(9, k));
            let mut ranks: Vec<_> = all.iter().map(|c| rank(c)).collect();
            ranks.sort();
            assert_eq!(ranks, (0..all.len()).collect::<Vec<_>>());
            for c in &all {
                assert_eq!(&unrank(rank(c), k), c);
            }
        }
    }

    #[test]
    fn parity_matches_cycle_count() {
        let mut s = vec![2, 0, 1];
        assert_eq!(sort_with_parity(&mut s), 0);
        assert_eq!(s, vec![0, 1, 2]);
        let mut s = vec![1, 0, 5, 3];
        assert_eq!(sort_with_parity(&mut s), 0);
        let mut s = vec![3, 1, 0];
        assert_eq!(sort_with_parity(&mut s), 1);
        assert_eq!(permutation_parity(&[1, 0, 2]), 1);
        assert_eq!(permutation_parity(&[1, 2, 0]), 0);
    }
}
