//! Binomials, aperture bounds and the lexicographic combinatorial number
//! system used to index candidates within a stage.

use crate::coarray::SensorArray;
use crate::error::{Error, Result};

/// C(n, k), or `None` if the computation overflows u128.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=u128::from(k) {
        // acc * (n - k + i) / i is exact at every step.
        acc = acc.checked_mul(u128::from(n - k) + i)? / i;
    }
    Some(acc)
}

fn choose(n: u64, k: u64) -> u128 {
    binomial(n, k).expect("binomial overflowed u128")
}

/// Starting aperture. The tight variant uses redundancy R = N(N-1)/(2L) < 4.
pub fn aperture_lower_bound(n: usize, tight: bool) -> u32 {
    let n = n as u32;
    if tight {
        n.max((n * (n - 1)).div_ceil(8))
    } else {
        n
    }
}

/// Largest L for which N(N-1)/2 pairs can cover w(1..L-1) >= 2 and w(L) = 1.
pub fn aperture_upper_bound(n: usize) -> u32 {
    let pairs = (n * (n - 1) / 2) as u32;
    pairs.div_ceil(2)
}

/// Candidates in a stage: C(L-1, N-2), or C(L-3, N-4) once positions 1 and
/// L-1 are forced.
pub fn candidate_count(n: usize, l: u32, filtered: bool) -> u128 {
    let (l, n) = (u64::from(l), n as u64);
    if filtered {
        if n < 4 || l < 3 {
            return 0;
        }
        choose(l - 3, n - 4)
    } else {
        if n < 2 || l < 1 {
            return 0;
        }
        choose(l - 1, n - 2)
    }
}

/// The `rank`-th k-subset of `0..ground` in lexicographic order.
pub(crate) fn unrank_subset(ground: u32, k: u32, mut rank: u128) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut x = 0u32;
    for i in 0..k {
        loop {
            let block = choose(u64::from(ground - x - 1), u64::from(k - i - 1));
            if rank < block {
                out.push(x);
                x += 1;
                break;
            }
            rank -= block;
            x += 1;
        }
    }
    out
}

/// Inverse of [`unrank_subset`]; `subset` must be strictly increasing.
pub(crate) fn rank_subset(ground: u32, subset: &[u32]) -> u128 {
    let k = subset.len() as u32;
    let mut rank = 0u128;
    let mut start = 0u32;
    for (i, &c) in subset.iter().enumerate() {
        let remaining = u64::from(k - i as u32 - 1);
        for j in start..c {
            rank += choose(u64::from(ground - j - 1), remaining);
        }
        start = c + 1;
    }
    rank
}

/// The `index`-th candidate of stage (n, l): interior positions chosen
/// lexicographically from `1..l`, with 0 and l adjoined.
pub fn unrank_candidate(n: usize, l: u32, index: u64) -> Result<SensorArray> {
    let count = candidate_count(n, l, false);
    if n < 2 || u128::from(index) >= count {
        return Err(Error::IndexOutOfRange { index, count });
    }
    let mut positions = Vec::with_capacity(n);
    positions.push(0);
    positions.extend(
        unrank_subset(l - 1, n as u32 - 2, index.into())
            .into_iter()
            .map(|x| x + 1),
    );
    positions.push(l);
    Ok(SensorArray::from_canonical(positions))
}

/// Lexicographic index of a canonical array among the candidates of its own
/// stage (N = arr.len(), L = arr.aperture()).
pub fn rank_candidate(arr: &SensorArray) -> u64 {
    let p = arr.positions();
    let l = arr.aperture();
    let interior: Vec<u32> = p[1..p.len() - 1].iter().map(|&x| x - 1).collect();
    rank_subset(l - 1, &interior) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 9), Some(10));
        assert_eq!(binomial(22, 9), Some(497_420));
        assert_eq!(binomial(20, 7), Some(77_520));
        assert_eq!(binomial(5, 6), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        // Largest unfiltered stage considered: n = 20, l = 95.
        assert_eq!(binomial(94, 18), Some(9_007_607_943_130_625_829));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn binomial_is_exact_against_pascal() {
        let mut row = vec![1u128];
        for n in 1..=100u64 {
            let mut next = vec![1u128; n as usize + 1];
            for k in 1..n as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n, k as u64), Some(v), "C({n},{k})");
            }
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(aperture_lower_bound(11, false), 11);
        assert_eq!(aperture_lower_bound(11, true), 14);
        assert_eq!(aperture_lower_bound(6, true), 6);
        assert_eq!(aperture_upper_bound(11), 28);
        assert_eq!(aperture_upper_bound(6), 8);
        assert_eq!(aperture_upper_bound(15), 53);
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_count(11, 11, false), 10);
        assert_eq!(candidate_count(11, 23, false), 497_420);
        assert_eq!(candidate_count(11, 23, true), 77_520);
    }

    #[test]
    fn unrank_examples() {
        let at = |i| unrank_candidate(11, 11, i).unwrap().positions().to_vec();
        assert_eq!(at(0), vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11]);
        assert_eq!(at(1), vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 11]);
        assert_eq!(at(9), vec![0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]);
        assert!(matches!(
            unrank_candidate(11, 11, 10),
            Err(Error::IndexOutOfRange {
                index: 10,
                count: 10
            })
        ));
    }

    #[test]
    fn rank_inverts_unrank_exhaustively_on_small_stage() {
        let count = candidate_count(7, 12, false) as u64;
        let mut prev: Option<SensorArray> = None;
        for i in 0..count {
            let a = unrank_candidate(7, 12, i).unwrap();
            assert_eq!(rank_candidate(&a), i);
            if let Some(p) = prev {
                assert!(p.positions() < a.positions(), "lexicographic order");
            }
            prev = Some(a);
        }
    }
}
