//! Integer combinatorics of sparse linear arrays: positions, pairwise
//! differences, weights, holes and inter-element spacings.
//!
//! Positions live on the half-wavelength grid. Only non-negative lags are
//! stored; the two-sided coarray `[-L, L]` is the reflection of `0..=L`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted, duplicate-free sensor positions anchored at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct SensorArray {
    positions: Vec<u32>,
}

impl SensorArray {
    /// Sorts `raw`, translates it so the first sensor sits at 0 and rejects
    /// coincident positions.
    pub fn canonicalize(raw: &[u32]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut positions = raw.to_vec();
        positions.sort_unstable();
        if let Some(w) = positions.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePosition(w[0]));
        }
        let origin = positions[0];
        positions.iter_mut().for_each(|p| *p -= origin);
        Ok(SensorArray { positions })
    }

    /// Wraps positions that are already canonical (strictly increasing,
    /// starting at 0). Panics otherwise; meant for trusted tables.
    pub(crate) fn from_canonical(positions: Vec<u32>) -> Self {
        assert!(positions.first() == Some(&0), "array must start at 0");
        assert!(
            positions.windows(2).all(|w| w[0] < w[1]),
            "positions must be strictly increasing"
        );
        SensorArray { positions }
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    /// Number of sensors, N.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Aperture, L.
    pub fn aperture(&self) -> u32 {
        *self.positions.last().expect("array is never empty")
    }

    pub fn contains(&self, position: u32) -> bool {
        self.positions.binary_search(&position).is_ok()
    }

    pub fn weight_table(&self) -> WeightTable {
        WeightTable::of_positions(&self.positions, self.aperture())
    }

    pub fn difference_coarray(&self) -> LagSet {
        self.weight_table().lag_set()
    }

    pub fn ies(&self) -> IesVector {
        IesVector {
            spacings: self.positions.windows(2).map(|w| w[1] - w[0]).collect(),
        }
    }

    /// Reflection `s -> L - s`. Weight tables are invariant under it.
    pub fn mirror(&self) -> SensorArray {
        let l = self.aperture();
        SensorArray {
            positions: self.positions.iter().rev().map(|&s| l - s).collect(),
        }
    }

    /// Lengthens the longest run of a repeated spacing (leftmost on ties) by
    /// `extra` copies of that spacing.
    pub fn extend_repeated_spacing(&self, extra: usize) -> Result<SensorArray> {
        let ies = self.ies();
        let (start, len) = ies.longest_repeated_run().ok_or(Error::NoRepeatedRun)?;
        let value = ies.spacings[start];
        let mut spacings = Vec::with_capacity(ies.spacings.len() + extra);
        spacings.extend_from_slice(&ies.spacings[..start + len]);
        spacings.extend(std::iter::repeat_n(value, extra));
        spacings.extend_from_slice(&ies.spacings[start + len..]);
        Ok(IesVector::new(spacings)?.to_array())
    }
}

impl TryFrom<Vec<u32>> for SensorArray {
    type Error = Error;

    fn try_from(raw: Vec<u32>) -> Result<Self> {
        SensorArray::canonicalize(&raw)
    }
}

impl From<SensorArray> for Vec<u32> {
    fn from(arr: SensorArray) -> Self {
        arr.positions
    }
}

impl fmt::Display for SensorArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Pair counts per non-negative lag.
///
/// `counts[0]` is fixed to N so that the two-sided coarray cardinalities
/// `2L + 1` and `2L - 1` fall out of the table directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTable {
    counts: Vec<u32>,
}

impl WeightTable {
    /// Counts pairwise differences of `positions` over lags `0..=aperture`,
    /// without translating them. Positions must be sorted and lie in
    /// `0..=aperture`.
    pub fn of_positions(positions: &[u32], aperture: u32) -> Self {
        let mut counts = vec![0u32; aperture as usize + 1];
        counts[0] = positions.len() as u32;
        for (i, &a) in positions.iter().enumerate() {
            for &b in &positions[i + 1..] {
                counts[(b - a) as usize] += 1;
            }
        }
        WeightTable { counts }
    }

    pub fn aperture(&self) -> u32 {
        (self.counts.len() - 1) as u32
    }

    /// w(m); zero for lags beyond the aperture.
    pub fn weight(&self, lag: u32) -> u32 {
        self.counts.get(lag as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Sum of w(1..=L), i.e. the number of unordered sensor pairs.
    pub fn pair_count(&self) -> u64 {
        self.counts[1..].iter().map(|&c| u64::from(c)).sum()
    }

    pub fn lag_set(&self) -> LagSet {
        let present = self
            .counts
            .iter()
            .enumerate()
            .map(|(m, &c)| m == 0 || c > 0)
            .collect();
        LagSet { present }
    }

    /// Largest m* with w(i) >= 2 for all i in 1..=m*, so |D2| = 2m* + 1.
    pub fn doubly_redundant_span(&self) -> u32 {
        self.counts[1..].iter().take_while(|&&c| c >= 2).count() as u32
    }
}

/// Non-negative lags present in a difference coarray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagSet {
    present: Vec<bool>,
}

impl LagSet {
    pub fn aperture(&self) -> u32 {
        (self.present.len() - 1) as u32
    }

    pub fn contains(&self, lag: u32) -> bool {
        self.present.get(lag as usize).copied().unwrap_or(false)
    }

    pub fn lags(&self) -> Vec<u32> {
        (0..self.present.len() as u32)
            .filter(|&m| self.present[m as usize])
            .collect()
    }

    /// Number of lags in the two-sided coarray, |D|.
    pub fn two_sided_len(&self) -> usize {
        2 * self.present.iter().filter(|&&p| p).count() - 1
    }

    pub fn is_hole_free(&self) -> bool {
        self.present.iter().all(|&p| p)
    }

    /// Missing lags in `1..=L`.
    pub fn holes(&self) -> Vec<u32> {
        (1..self.present.len() as u32)
            .filter(|&m| !self.present[m as usize])
            .collect()
    }
}

/// Inter-element spacings; prefix sums from 0 recover positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct IesVector {
    spacings: Vec<u32>,
}

impl IesVector {
    pub fn new(spacings: Vec<u32>) -> Result<Self> {
        if spacings.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = spacings.iter().position(|&s| s == 0) {
            return Err(Error::NonPositiveSpacing(i));
        }
        Ok(IesVector { spacings })
    }

    pub fn spacings(&self) -> &[u32] {
        &self.spacings
    }

    pub fn total(&self) -> u32 {
        self.spacings.iter().sum()
    }

    pub fn to_array(&self) -> SensorArray {
        let mut positions = Vec::with_capacity(self.spacings.len() + 1);
        let mut acc = 0u32;
        positions.push(acc);
        for &s in &self.spacings {
            acc += s;
            positions.push(acc);
        }
        SensorArray { positions }
    }

    /// `(start, length)` of the longest maximal run (length >= 2) of equal
    /// spacings, leftmost on ties.
    pub fn longest_repeated_run(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut start = 0;
        while start < self.spacings.len() {
            let mut end = start + 1;
            while end < self.spacings.len() && self.spacings[end] == self.spacings[start] {
                end += 1;
            }
            let len = end - start;
            if len >= 2 && best.is_none_or(|(_, b)| len > b) {
                best = Some((start, len));
            }
            start = end;
        }
        best
    }
}

impl TryFrom<Vec<u32>> for IesVector {
    type Error = Error;

    fn try_from(spacings: Vec<u32>) -> Result<Self> {
        IesVector::new(spacings)
    }
}

impl From<IesVector> for Vec<u32> {
    fn from(v: IesVector) -> Self {
        v.spacings
    }
}
