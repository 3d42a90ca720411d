//! Multi-index bookkeeping for dense tensor tables.

/// Row-major position of `idx` in a table with `dim` values per slot.
pub fn flat(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

pub fn unflat(mut pos: usize, dim: usize, len: usize) -> Vec<usize> {
    let mut idx = vec![0; len];
    for slot in idx.iter_mut().rev() {
        *slot = pos % dim;
        pos /= dim;
    }
    idx
}

/// Every multi-index of the given length, in row-major order.
pub fn all(dim: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..dim.pow(len as u32)).map(move |p| unflat(p, dim, len))
}

/// Strictly increasing `k`-tuples from `0..dim`, lexicographic.
pub fn increasing(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            go(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sorts `idx`; returns the sorted tuple and the permutation sign, or
/// `None` when an index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for p in 0..27 {
            assert_eq!(flat(&unflat(p, 3, 3), 3), p);
        }
    }

    #[test]
    fn signs() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
        assert_eq!(increasing(4, 2).len(), binomial(4, 2));
    }
}
