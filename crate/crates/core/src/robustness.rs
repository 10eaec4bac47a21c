//! Single-sensor failure analysis and the robust-MRA constraint checker.
//!
//! Survivors of a failure are never re-translated: holes are always measured
//! over `1..=L` of the original aperture, so losing an endpoint shows up as
//! a hole at the far lags.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coarray::{SensorArray, WeightTable};
use crate::error::{Error, Result};

/// Effect of removing one sensor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureReport {
    pub failed: u32,
    #[serde(skip)]
    pub survivors: Vec<u32>,
    /// Lags in `1..=L` (original L) with no surviving pair.
    pub holes: Vec<u32>,
    #[serde(skip)]
    pub span_after: u32,
}

impl FailureReport {
    pub fn weight_table(&self, aperture: u32) -> WeightTable {
        WeightTable::of_positions(&self.survivors, aperture)
    }
}

/// Unreduced ratio, rendered as `num/den` (2/6 stays 2/6).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub numerator: u32,
    pub denominator: u32,
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let parse = || {
            let (a, b) = text.split_once('/')?;
            Some(Fraction {
                numerator: a.trim().parse().ok()?,
                denominator: b.trim().parse().ok()?,
            })
        };
        parse().ok_or_else(|| serde::de::Error::custom(format!("bad fraction {text:?}")))
    }
}

/// Essential sensors, fragility and every single-failure outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub positions: SensorArray,
    pub essential: Vec<u32>,
    pub fragility: Fraction,
    pub failures: Vec<FailureReport>,
}

/// The five predicates of the robust-MRA problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintVerdict {
    pub size_ok: bool,
    pub hole_free: bool,
    pub doubly_redundant: bool,
    pub two_essential: bool,
    pub sparse: bool,
    pub overall: bool,
}

fn require_failure_size(arr: &SensorArray) -> Result<()> {
    if arr.len() < 3 {
        return Err(Error::TooFewSensors {
            required: 3,
            actual: arr.len(),
        });
    }
    Ok(())
}

pub fn failure_report(arr: &SensorArray, failed: u32) -> Result<FailureReport> {
    require_failure_size(arr)?;
    if !arr.contains(failed) {
        return Err(Error::NotASensor(failed));
    }
    let survivors: Vec<u32> = arr
        .positions()
        .iter()
        .copied()
        .filter(|&p| p != failed)
        .collect();
    let holes = WeightTable::of_positions(&survivors, arr.aperture())
        .lag_set()
        .holes();
    let span_after = survivors[survivors.len() - 1] - survivors[0];
    Ok(FailureReport {
        failed,
        survivors,
        holes,
        span_after,
    })
}

fn all_failures(arr: &SensorArray) -> Result<Vec<FailureReport>> {
    arr.positions()
        .iter()
        .map(|&s| failure_report(arr, s))
        .collect()
}

/// Sensors whose loss opens a hole anywhere in `1..=L`.
pub fn essential_sensors(arr: &SensorArray) -> Result<Vec<u32>> {
    Ok(all_failures(arr)?
        .into_iter()
        .filter(|f| !f.holes.is_empty())
        .map(|f| f.failed)
        .collect())
}

pub fn fragility(arr: &SensorArray) -> Result<Fraction> {
    Ok(Fraction {
        numerator: essential_sensors(arr)?.len() as u32,
        denominator: arr.len() as u32,
    })
}

pub fn robustness_report(arr: &SensorArray) -> Result<RobustnessReport> {
    let failures = all_failures(arr)?;
    let essential: Vec<u32> = failures
        .iter()
        .filter(|f| !f.holes.is_empty())
        .map(|f| f.failed)
        .collect();
    Ok(RobustnessReport {
        positions: arr.clone(),
        fragility: Fraction {
            numerator: essential.len() as u32,
            denominator: arr.len() as u32,
        },
        essential,
        failures,
    })
}

/// w(i) >= 2 for every i in 1..L and w(L) == 1.
pub fn check_healthy_weights(arr: &SensorArray) -> bool {
    let w = arr.weight_table();
    let l = arr.aperture();
    l >= 1 && (1..l).all(|m| w.weight(m) >= 2) && w.weight(l) == 1
}

/// Every interior sensor can fail without opening a hole in `1..=L`.
pub fn check_failure_robustness(arr: &SensorArray) -> bool {
    if arr.len() < 3 {
        return false;
    }
    let l = arr.aperture();
    arr.positions()
        .iter()
        .filter(|&&s| s != 0 && s != l)
        .all(|&s| failure_report(arr, s).is_ok_and(|f| f.holes.is_empty()))
}

/// Evaluates the robust-MRA constraints for a claimed size `n` and aperture
/// `l`. The array is assumed canonical.
pub fn rmra_check(arr: &SensorArray, n: usize, l: u32) -> ConstraintVerdict {
    let aperture_matches = arr.aperture() == l;
    let w = arr.weight_table();
    let size_ok = arr.len() == n;
    let hole_free = aperture_matches && w.lag_set().two_sided_len() == 2 * l as usize + 1;
    let doubly_redundant =
        aperture_matches && l >= 1 && w.doubly_redundant_span() == l - 1 && w.weight(l) == 1;
    let two_essential = arr.len() >= 3
        && essential_sensors(arr).is_ok_and(|e| e.len() == 2 && e == [0, arr.aperture()]);
    let sparse = l as usize >= n;
    ConstraintVerdict {
        size_ok,
        hole_free,
        doubly_redundant,
        two_essential,
        sparse,
        overall: size_ok && hole_free && doubly_redundant && two_essential && sparse,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(p: &[u32]) -> SensorArray {
        SensorArray::canonicalize(p).unwrap()
    }

    const TWO_FRA_13: [u32; 13] = [0, 1, 7, 8, 16, 17, 25, 26, 27, 28, 29, 30, 31];

    #[test]
    fn failure_reports_measure_against_original_span() {
        let a = arr(&[0, 1, 2, 5, 6, 8, 9]);
        let f = failure_report(&a, 0).unwrap();
        assert_eq!(f.holes, vec![9]);
        assert_eq!(f.span_after, 8);
        assert_eq!(f.survivors, vec![1, 2, 5, 6, 8, 9]);
        assert!(failure_report(&a, 5).unwrap().holes.is_empty());
        assert_eq!(
            failure_report(&arr(&TWO_FRA_13), 16).unwrap().holes,
            vec![15]
        );
    }

    #[test]
    fn failure_report_errors() {
        let a = arr(&[0, 1, 2, 5, 6, 8, 9]);
        assert_eq!(failure_report(&a, 3), Err(Error::NotASensor(3)));
        assert_eq!(
            failure_report(&arr(&[0, 4]), 0),
            Err(Error::TooFewSensors {
                required: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn essential_sets_and_fragility() {
        assert_eq!(
            essential_sensors(&arr(&[0, 1, 2, 5, 6, 8, 9])).unwrap(),
            vec![0, 9]
        );
        assert_eq!(
            essential_sensors(&arr(&TWO_FRA_13)).unwrap(),
            vec![0, 16, 31]
        );
        assert_eq!(essential_sensors(&arr(&[0, 1, 3])).unwrap(), vec![0, 1, 3]);

        assert_eq!(
            fragility(&arr(&[0, 1, 2, 5, 6, 8, 9])).unwrap().to_string(),
            "2/7"
        );
        assert_eq!(fragility(&arr(&TWO_FRA_13)).unwrap().to_string(), "3/13");
        assert_eq!(
            fragility(&arr(&[0, 1, 2, 3, 5, 6])).unwrap().to_string(),
            "2/6"
        );
    }

    #[test]
    fn healthy_weight_screen() {
        assert!(check_healthy_weights(&arr(&[0, 1, 2, 3, 5, 6])));
        assert!(!check_healthy_weights(&arr(&[0, 1, 3, 7])));
        assert!(check_healthy_weights(&arr(&[0, 1, 2, 5, 6, 8, 9])));
    }

    #[test]
    fn failure_robustness_screen() {
        assert!(check_failure_robustness(&arr(&[0, 1, 2, 5, 6, 8, 9])));
        assert!(!check_failure_robustness(&arr(&TWO_FRA_13)));
        assert!(!check_failure_robustness(&arr(&[0, 1, 2])));
    }

    #[test]
    fn rmra_verdicts() {
        let v = rmra_check(&arr(&[0, 1, 2, 3, 5, 6]), 6, 6);
        assert!(
            v.overall
                && v.size_ok
                && v.hole_free
                && v.doubly_redundant
                && v.two_essential
                && v.sparse
        );

        let v = rmra_check(&arr(&[0, 1, 2, 3, 4, 5]), 6, 5);
        assert!(!v.sparse);
        assert!(!v.overall);

        let v = rmra_check(&arr(&TWO_FRA_13), 13, 31);
        assert!(!v.two_essential);
        assert!(v.hole_free && v.doubly_redundant && v.sparse && v.size_ok);
        assert!(!v.overall);

        assert!(rmra_check(&arr(&[0, 1, 2, 3, 4, 10, 11, 16, 17, 21, 22]), 11, 22).overall);
    }

    #[test]
    fn doubly_redundant_but_fragile() {
        let a = arr(&TWO_FRA_13);
        let w = a.weight_table();
        assert!((1..=30).all(|m| w.weight(m) >= 2));
        assert!(check_healthy_weights(&a));
        assert!(!check_failure_robustness(&a));
    }

    #[test]
    fn report_serializes_to_documented_shape() {
        let r = robustness_report(&arr(&[0, 1, 2, 5, 6, 8, 9])).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["positions"], serde_json::json!([0, 1, 2, 5, 6, 8, 9]));
        assert_eq!(v["essential"], serde_json::json!([0, 9]));
        assert_eq!(v["fragility"], "2/7");
        assert_eq!(
            v["failures"][0],
            serde_json::json!({"failed": 0, "holes": [9]})
        );
        assert_eq!(v["failures"].as_array().unwrap().len(), 7);
    }
}
