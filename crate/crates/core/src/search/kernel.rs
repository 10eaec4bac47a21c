//! Word-parallel constraint checks over positions packed into a `u128`
//! (bit p set means a sensor at p), and the lexicographic cursor that walks
//! a stage's candidates.
//!
//! Weights are tracked only up to "two or more" via a pair of masks, which
//! is all the constraints ever distinguish.

#[cfg(test)]
use super::combinatorics::rank_subset;
use super::combinatorics::{binomial, unrank_subset};

/// Widest aperture the packed representation can hold.
pub const MAX_KERNEL_APERTURE: u32 = 127;

pub(crate) type Mask = u128;

/// Bits 1..=hi.
#[inline]
fn lag_range(hi: u32) -> Mask {
    if hi == 0 {
        0
    } else {
        (Mask::MAX >> (127 - hi)) & !1
    }
}

/// Lags covered at least once and at least twice.
#[inline]
fn coverage(mask: Mask) -> (Mask, Mask) {
    let mut once: Mask = 0;
    let mut twice: Mask = 0;
    let mut rest = mask;
    while rest != 0 {
        let s = rest.trailing_zeros();
        rest &= rest - 1;
        let lags = (mask >> s) & !1;
        twice |= once & lags;
        once |= lags;
    }
    (once, twice)
}

#[inline]
fn lags_present(mask: Mask) -> Mask {
    let mut once: Mask = 0;
    let mut rest = mask;
    while rest != 0 {
        let s = rest.trailing_zeros();
        rest &= rest - 1;
        once |= mask >> s;
    }
    once & !1
}

/// w(1..L-1) >= 2 and w(L) == 1.
#[inline]
pub(crate) fn healthy(mask: Mask, l: u32) -> bool {
    let (_, twice) = coverage(mask);
    let need = lag_range(l - 1);
    twice & need == need && twice >> l & 1 == 0
}

/// No single interior failure leaves a hole in 1..=L.
#[inline]
pub(crate) fn robust(mask: Mask, l: u32) -> bool {
    let need = lag_range(l);
    let mut interior = mask & !1 & !(1 << l);
    while interior != 0 {
        let s = interior.trailing_zeros();
        interior &= interior - 1;
        if lags_present(mask & !(1 << s)) & need != need {
            return false;
        }
    }
    true
}

#[inline]
pub(crate) fn valid(mask: Mask, l: u32) -> bool {
    healthy(mask, l) && robust(mask, l)
}

/// Reflection p -> l - p.
#[inline]
pub(crate) fn mirror(mask: Mask, l: u32) -> Mask {
    mask.reverse_bits() >> (127 - l)
}

/// Whether the sorted position list of `mask` is lexicographically no
/// greater than that of its mirror image.
#[inline]
pub(crate) fn not_after_mirror(mask: Mask, l: u32) -> bool {
    let diff = mask ^ mirror(mask, l);
    diff == 0 || mask >> diff.trailing_zeros() & 1 == 1
}

pub(crate) fn mask_of(positions: &[u32]) -> Mask {
    positions.iter().fold(0, |m, &p| m | 1 << p)
}

/// Candidate set of one stage, optionally with positions 1 and L-1 forced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct StageSpace {
    pub n: usize,
    pub l: u32,
    pub filtered: bool,
}

impl StageSpace {
    /// Free positions to choose.
    fn k(&self) -> u32 {
        if self.filtered {
            self.n as u32 - 4
        } else {
            self.n as u32 - 2
        }
    }

    /// Smallest free grid point.
    fn lo(&self) -> u32 {
        if self.filtered {
            2
        } else {
            1
        }
    }

    /// Number of free grid points.
    fn ground(&self) -> u32 {
        if self.filtered {
            self.l - 3
        } else {
            self.l - 1
        }
    }

    fn fixed(&self) -> Mask {
        let base = 1 | 1 << self.l;
        if self.filtered {
            base | 1 << 1 | 1 << (self.l - 1)
        } else {
            base
        }
    }

    pub fn len(&self) -> u64 {
        let count = binomial(u64::from(self.ground()), u64::from(self.k())).unwrap_or(u128::MAX);
        u64::try_from(count).unwrap_or(u64::MAX)
    }

    /// Sorted positions of the candidate at `index`.
    pub fn positions_at(&self, index: u64) -> Vec<u32> {
        let lo = self.lo();
        let mut p: Vec<u32> = unrank_subset(self.ground(), self.k(), index.into())
            .into_iter()
            .map(|x| x + lo)
            .collect();
        p.extend((0..=self.l).filter(|&b| self.fixed() >> b & 1 == 1));
        p.sort_unstable();
        p
    }

    /// Index of `positions` inside this space, if it belongs to it.
    #[cfg(test)]
    pub fn index_of(&self, positions: &[u32]) -> Option<u64> {
        if positions.len() != self.n || mask_of(positions) & self.fixed() != self.fixed() {
            return None;
        }
        let (lo, hi) = (self.lo(), self.lo() + self.ground());
        let free: Vec<u32> = positions
            .iter()
            .filter(|&&p| p >= lo && p < hi && self.fixed() >> p & 1 == 0)
            .map(|&p| p - lo)
            .collect();
        if free.len() != self.k() as usize {
            return None;
        }
        u64::try_from(rank_subset(self.ground(), &free)).ok()
    }

    pub fn cursor(&self, index: u64) -> Cursor {
        let lo = self.lo();
        let choice: Vec<u32> = unrank_subset(self.ground(), self.k(), index.into())
            .into_iter()
            .map(|x| x + lo)
            .collect();
        let mask = self.fixed() | mask_of(&choice);
        Cursor {
            choice,
            mask,
            top: lo + self.ground() - 1,
        }
    }
}

/// Walks k-subsets in lexicographic order, keeping the packed mask current.
pub(crate) struct Cursor {
    choice: Vec<u32>,
    mask: Mask,
    top: u32,
}

impl Cursor {
    #[inline]
    pub fn mask(&self) -> Mask {
        self.mask
    }

    /// Steps to the next subset; false once the last one has been passed.
    #[inline]
    pub fn advance(&mut self) -> bool {
        let k = self.choice.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.choice[i] < self.top - (k - 1 - i) as u32 {
                for &c in &self.choice[i..] {
                    self.mask &= !(1 << c);
                }
                self.choice[i] += 1;
                self.mask |= 1 << self.choice[i];
                for j in i + 1..k {
                    self.choice[j] = self.choice[j - 1] + 1;
                    self.mask |= 1 << self.choice[j];
                }
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarray::SensorArray;
    use crate::robustness::{check_failure_robustness, check_healthy_weights};

    #[test]
    fn kernel_agrees_with_reference_checks_on_small_stages() {
        for n in 4..=7 {
            for l in n as u32..=12 {
                let space = StageSpace {
                    n,
                    l,
                    filtered: false,
                };
                let mut cur = space.cursor(0);
                let mut seen = 0;
                loop {
                    let p = space.positions_at(seen);
                    assert_eq!(cur.mask(), mask_of(&p));
                    let arr = SensorArray::canonicalize(&p).unwrap();
                    assert_eq!(healthy(cur.mask(), l), check_healthy_weights(&arr), "{p:?}");
                    assert_eq!(
                        robust(cur.mask(), l),
                        check_failure_robustness(&arr),
                        "{p:?}"
                    );
                    assert_eq!(
                        not_after_mirror(cur.mask(), l),
                        arr.positions() <= arr.mirror().positions()
                    );
                    seen += 1;
                    if !cur.advance() {
                        break;
                    }
                }
                assert_eq!(seen, space.len());
            }
        }
    }

    #[test]
    fn filtered_space_is_an_ordered_subsequence() {
        let full = StageSpace {
            n: 7,
            l: 11,
            filtered: false,
        };
        let filt = StageSpace {
            n: 7,
            l: 11,
            filtered: true,
        };
        let members: Vec<Vec<u32>> = (0..full.len())
            .map(|i| full.positions_at(i))
            .filter(|p| p.contains(&1) && p.contains(&10))
            .collect();
        let listed: Vec<Vec<u32>> = (0..filt.len()).map(|i| filt.positions_at(i)).collect();
        assert_eq!(members, listed);
        for (i, p) in listed.iter().enumerate() {
            assert_eq!(filt.index_of(p), Some(i as u64));
        }
        assert_eq!(filt.index_of(&[0, 2, 3, 4, 5, 9, 11]), None);
    }

    #[test]
    fn wide_apertures_fit_the_word() {
        let p = [0, 1, 60, 126, 127];
        let m = mask_of(&p);
        assert_eq!(mirror(m, 127), mask_of(&[0, 1, 67, 126, 127]));
        assert_eq!(lag_range(127).count_ones(), 127);
        assert!(!healthy(m, 127));
    }
}
