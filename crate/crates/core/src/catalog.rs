//! Embedded database of published two-fold redundant arrays, with
//! self-verification and the cross-family aperture comparison.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coarray::SensorArray;
use crate::error::Error;
use crate::robustness::{
    check_failure_robustness, check_healthy_weights, essential_sensors, rmra_check,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "RMRA")]
    Rmra,
    #[serde(rename = "TFRA-valid")]
    TfraValid,
    #[serde(rename = "2FRA")]
    TwoFra,
    #[serde(rename = "symNA")]
    SymNa,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Rmra,
        Family::TfraValid,
        Family::TwoFra,
        Family::SymNa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rmra => "RMRA",
            Family::TfraValid => "TFRA-valid",
            Family::TwoFra => "2FRA",
            Family::SymNa => "symNA",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        Ok(match key.as_str() {
            "rmra" => Family::Rmra,
            "tfra" | "tfravalid" => Family::TfraValid,
            "2fra" | "twofra" => Family::TwoFra,
            "symna" => Family::SymNa,
            _ => return Err(Error::InvalidConfig(format!("unknown family {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Optimal,
    NearOptimal,
    /// Valid array found at an intermediate search stage.
    StageValid,
    /// Published with positions but without an optimality claim.
    Published,
    /// Only the aperture is known; never positionally verified.
    ApertureOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub family: Family,
    pub n: usize,
    pub l: u32,
    pub positions: Option<SensorArray>,
    pub status: Status,
    pub critical_interior_sensors: Vec<u32>,
    pub source: String,
}

impl CatalogEntry {
    fn with_positions(family: Family, status: Status, source: &str, p: &[u32]) -> Self {
        let arr = SensorArray::from_canonical(p.to_vec());
        CatalogEntry {
            family,
            n: arr.len(),
            l: arr.aperture(),
            positions: Some(arr),
            status,
            critical_interior_sensors: Vec::new(),
            source: source.to_string(),
        }
    }

    fn aperture_only(family: Family, n: usize, l: u32, critical: Option<u32>) -> Self {
        CatalogEntry {
            family,
            n,
            l,
            positions: None,
            status: Status::ApertureOnly,
            critical_interior_sensors: critical.into_iter().collect(),
            source: "Table 7".to_string(),
        }
    }
}

const OPTIMAL_SMALL: [&[u32]; 5] = [
    &[0, 1, 2, 3, 5, 6],
    &[0, 1, 2, 4, 6, 8, 9],
    &[0, 1, 2, 3, 5, 8, 11, 12],
    &[0, 1, 2, 3, 4, 9, 10, 14, 15],
    &[0, 1, 2, 6, 7, 8, 15, 16, 18, 19],
];

/// Every stage of the 11-sensor run, ending with the optimum.
const STAGES_11: &[&[u32]] = &[
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 11],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 11, 12],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 12, 13],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 13, 14],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 14, 15],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 15, 16],
    &[0, 1, 2, 3, 4, 5, 6, 8, 10, 16, 17],
    &[0, 1, 2, 3, 4, 5, 6, 8, 11, 17, 18],
    &[0, 1, 2, 3, 4, 5, 6, 11, 12, 18, 19],
    &[0, 1, 2, 3, 4, 5, 6, 12, 13, 19, 20],
    &[0, 1, 2, 3, 4, 5, 6, 13, 14, 20, 21],
    &[0, 1, 2, 3, 4, 10, 11, 16, 17, 21, 22],
];

const STAGES_12: &[&[u32]] = &[
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 13],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 13, 14],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 14, 15],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 15, 16],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 16, 17],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 17, 18],
    &[0, 1, 2, 3, 4, 5, 6, 7, 9, 11, 18, 19],
    &[0, 1, 2, 3, 4, 5, 6, 7, 9, 12, 19, 20],
    &[0, 1, 2, 3, 4, 5, 6, 7, 12, 13, 20, 21],
    &[0, 1, 2, 3, 4, 5, 6, 7, 13, 14, 21, 22],
    &[0, 1, 2, 3, 4, 5, 6, 7, 14, 15, 22, 23],
    &[0, 1, 2, 3, 4, 5, 6, 7, 15, 16, 23, 24],
    &[0, 1, 2, 3, 4, 5, 12, 13, 18, 19, 24, 25],
    &[0, 1, 2, 3, 4, 5, 12, 13, 19, 20, 25, 26],
];

const STAGES_13: &[&[u32]] = &[
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 13, 14],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 14, 15],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 16],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 16, 17],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 17, 18],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 18, 19],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 19, 20],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 12, 20, 21],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 13, 21, 22],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 13, 14, 22, 23],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 14, 15, 23, 24],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 15, 16, 24, 25],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 16, 17, 25, 26],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 17, 18, 26, 27],
    &[0, 1, 2, 3, 4, 5, 6, 13, 14, 20, 21, 27, 28],
    &[0, 1, 2, 3, 4, 5, 6, 14, 15, 21, 22, 28, 29],
    &[0, 1, 2, 3, 4, 5, 6, 14, 15, 22, 23, 29, 30],
    &[0, 1, 2, 3, 4, 10, 12, 18, 20, 25, 26, 30, 31],
    &[0, 1, 2, 4, 5, 9, 14, 19, 24, 25, 30, 31, 32],
];

const STAGES_14: &[&[u32]] = &[
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 14, 15],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 15, 16],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 16, 17],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 17, 18],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 18, 19],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 19, 20],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 20, 21],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 21, 22],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 13, 22, 23],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 14, 23, 24],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 14, 15, 24, 25],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 15, 16, 25, 26],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 16, 17, 26, 27],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 17, 18, 27, 28],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 18, 19, 28, 29],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 19, 20, 29, 30],
    &[0, 1, 2, 3, 4, 5, 6, 7, 14, 15, 22, 23, 30, 31],
    &[0, 1, 2, 3, 4, 5, 6, 7, 15, 16, 23, 24, 31, 32],
    &[0, 1, 2, 3, 4, 5, 6, 7, 16, 17, 24, 25, 32, 33],
    &[0, 1, 2, 3, 4, 5, 6, 7, 16, 17, 25, 26, 33, 34],
    &[0, 1, 2, 3, 4, 5, 12, 13, 20, 21, 28, 29, 34, 35],
    &[0, 1, 2, 3, 4, 5, 12, 14, 21, 23, 29, 30, 35, 36],
];

const STAGES_15: &[&[u32]] = &[
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 15, 16],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 16, 17],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 17, 18],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 18, 19],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 19, 20],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 20, 21],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 21, 22],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 22, 23],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 23, 24],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 24, 25],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 25, 26],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 16, 26, 27],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 16, 17, 27, 28],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 17, 18, 28, 29],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 18, 19, 29, 30],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 19, 20, 30, 31],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 21, 31, 32],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 21, 22, 32, 33],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 14, 16, 24, 29, 33, 34],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 16, 17, 25, 26, 34, 35],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 17, 18, 26, 27, 35, 36],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 18, 19, 27, 28, 36, 37],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 18, 19, 28, 29, 37, 38],
    &[0, 1, 2, 3, 4, 5, 6, 13, 15, 22, 24, 31, 32, 38, 39],
    &[0, 1, 2, 3, 4, 5, 6, 14, 15, 23, 24, 32, 33, 39, 40],
    &[0, 1, 2, 3, 4, 5, 6, 14, 16, 24, 26, 33, 34, 40, 41],
    &[0, 1, 2, 4, 5, 9, 14, 19, 24, 29, 34, 35, 40, 41, 42],
];

const NEAR_OPTIMAL: [&[u32]; 5] = [
    &[0, 1, 2, 3, 5, 7, 16, 18, 26, 29, 35, 38, 39, 43, 46, 47],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 18, 20, 30, 32, 41, 42, 50, 51],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 20, 22, 33, 35, 45, 46, 55, 56],
    &[
        0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 22, 24, 36, 38, 49, 50, 60, 61,
    ],
    &[
        0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 24, 26, 39, 41, 53, 54, 65, 66,
    ],
];

/// The 13-sensor 2FRA with a hidden critical sensor at 16.
pub const TWO_FRA_13: [u32; 13] = [0, 1, 7, 8, 16, 17, 25, 26, 27, 28, 29, 30, 31];

/// One row of the cross-family aperture comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub n: usize,
    /// `None` where the symmetric nested array is undefined.
    pub sym_na: Option<u32>,
    pub rmra: u32,
    pub two_fra: u32,
    pub two_fra_critical: Option<u32>,
}

const fn row(
    n: usize,
    sym_na: Option<u32>,
    rmra: u32,
    two_fra: u32,
    crit: Option<u32>,
) -> ComparisonRow {
    ComparisonRow {
        n,
        sym_na,
        rmra,
        two_fra,
        two_fra_critical: crit,
    }
}

/// Published comparison, N = 6..=20.
pub const APERTURE_COMPARISON: [ComparisonRow; 15] = [
    row(6, None, 6, 7, Some(3)),
    row(7, None, 9, 10, Some(4)),
    row(8, None, 12, 13, Some(5)),
    row(9, None, 15, 16, Some(6)),
    row(10, None, 19, 19, Some(10)),
    row(11, None, 22, 23, Some(12)),
    row(12, None, 26, 27, Some(14)),
    row(13, None, 32, 31, Some(16)),
    row(14, None, 36, 35, None),
    row(15, None, 42, 40, None),
    row(16, Some(24), 47, 45, None),
    row(17, None, 51, 50, None),
    row(18, Some(29), 56, 55, Some(28)),
    row(19, None, 61, 61, Some(31)),
    row(20, Some(35), 66, 67, Some(34)),
];

fn build() -> Vec<CatalogEntry> {
    use Family::*;
    use Status::*;

    let mut out = Vec::new();
    for p in OPTIMAL_SMALL {
        out.push(CatalogEntry::with_positions(Rmra, Optimal, "Table 3", p));
    }

    // Every stage row is cataloged as stage-valid; the final row of each run
    // is also the optimum, listed separately.
    let staged: [(&[&[u32]], &str, &str); 5] = [
        (STAGES_11, "Table 4", "Table 5"),
        (STAGES_12, "Table A.1", "Table 5"),
        (STAGES_13, "Table A.1", "Table 5"),
        (STAGES_14, "Table A.1", "Table 5"),
        // The optimum for 15 sensors appears only as the last appendix row.
        (STAGES_15, "Table A.1", "Table A.1; Table 7"),
    ];
    for (rows, stage_src, optimum_src) in staged {
        let optimum = rows.last().expect("non-empty");
        out.push(CatalogEntry::with_positions(
            Rmra,
            Optimal,
            optimum_src,
            optimum,
        ));
        for p in rows {
            out.push(CatalogEntry::with_positions(Rmra, StageValid, stage_src, p));
        }
    }

    for p in NEAR_OPTIMAL {
        out.push(CatalogEntry::with_positions(
            Rmra,
            NearOptimal,
            "Table 6",
            p,
        ));
    }

    let n15 = SensorArray::from_canonical(STAGES_15[STAGES_15.len() - 1].to_vec());
    for extra in [2, 4] {
        let arr = n15
            .extend_repeated_spacing(extra)
            .expect("the 15-sensor optimum has a run of fives");
        out.push(CatalogEntry::with_positions(
            TfraValid,
            NearOptimal,
            "Fig. 2",
            arr.positions(),
        ));
    }

    for r in &APERTURE_COMPARISON {
        if r.n == TWO_FRA_13.len() {
            let mut e =
                CatalogEntry::with_positions(TwoFra, Published, "Fig. 4; Table 7", &TWO_FRA_13);
            e.critical_interior_sensors = r.two_fra_critical.into_iter().collect();
            out.push(e);
        } else {
            out.push(CatalogEntry::aperture_only(
                TwoFra,
                r.n,
                r.two_fra,
                r.two_fra_critical,
            ));
        }
        if let Some(l) = r.sym_na {
            out.push(CatalogEntry::aperture_only(SymNa, r.n, l, None));
        }
    }
    out
}

/// All catalog entries, built once.
pub fn entries() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Entries of `family` with `n` sensors; empty where the family is undefined.
pub fn known_arrays(family: Family, n: usize) -> Vec<CatalogEntry> {
    entries()
        .iter()
        .filter(|e| e.family == family && e.n == n)
        .cloned()
        .collect()
}

/// Best published RMRA-family aperture for `n` (optimal or near-optimal).
fn rmra_aperture(n: usize) -> Option<u32> {
    entries()
        .iter()
        .filter(|e| e.family == Family::Rmra && e.n == n)
        .filter(|e| matches!(e.status, Status::Optimal | Status::NearOptimal))
        .map(|e| e.l)
        .max()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCheck {
    pub family: Family,
    pub n: usize,
    pub l: u32,
    pub status: Status,
    pub source: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entries: Vec<EntryCheck>,
    pub cross_checks: Vec<CrossCheck>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed) && self.cross_checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryCheck> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

fn check_entry(e: &CatalogEntry) -> (bool, String) {
    let Some(arr) = &e.positions else {
        return (true, "aperture only, not positionally verified".into());
    };
    if arr.len() != e.n || arr.aperture() != e.l {
        return (
            false,
            format!(
                "stored n={}, l={} but positions give n={}, l={}",
                e.n,
                e.l,
                arr.len(),
                arr.aperture()
            ),
        );
    }
    match e.family {
        Family::Rmra | Family::TfraValid => {
            let v = rmra_check(arr, e.n, e.l);
            if v.overall {
                (true, "all robust-MRA constraints hold".into())
            } else {
                let healthy = check_healthy_weights(arr);
                let robust = check_failure_robustness(arr);
                (false, format!("constraint violated: {v:?} (healthy weights {healthy}, failure robust {robust})"))
            }
        }
        Family::TwoFra | Family::SymNa => {
            let mut expected = vec![0, e.l];
            expected.extend(&e.critical_interior_sensors);
            expected.sort_unstable();
            expected.dedup();
            match essential_sensors(arr) {
                Ok(found) if found == expected => (true, format!("essential sensors {found:?}")),
                Ok(found) => (
                    false,
                    format!("essential sensors {found:?}, expected {expected:?}"),
                ),
                Err(err) => (false, err.to_string()),
            }
        }
    }
}

/// Checks arbitrary entries the same way the embedded catalog is checked.
pub fn verify_entries(entries: &[CatalogEntry]) -> Vec<EntryCheck> {
    entries
        .iter()
        .map(|e| {
            let (passed, detail) = check_entry(e);
            EntryCheck {
                family: e.family,
                n: e.n,
                l: e.l,
                status: e.status,
                source: e.source.clone(),
                passed,
                detail,
            }
        })
        .collect()
}

fn cross_checks() -> Vec<CrossCheck> {
    let mut out = Vec::new();
    for r in &APERTURE_COMPARISON {
        let cataloged = rmra_aperture(r.n);
        out.push(CrossCheck {
            name: format!("comparison RMRA aperture, n = {}", r.n),
            passed: cataloged == Some(r.rmra),
            detail: format!("comparison {} vs cataloged {cataloged:?}", r.rmra),
        });
    }
    for n in 11..=15 {
        let mut ls: Vec<u32> = entries()
            .iter()
            .filter(|e| e.family == Family::Rmra && e.n == n)
            .filter(|e| e.status == Status::StageValid)
            .map(|e| e.l)
            .collect();
        ls.sort_unstable();
        let optimum = entries()
            .iter()
            .find(|e| e.family == Family::Rmra && e.n == n && e.status == Status::Optimal)
            .map(|e| e.l);
        let contiguous = ls.windows(2).all(|w| w[1] == w[0] + 1)
            && ls.first() == Some(&(n as u32))
            && ls.last().copied() == optimum;
        out.push(CrossCheck {
            name: format!("stage apertures run contiguously from n to the optimum, n = {n}"),
            passed: contiguous,
            detail: match (ls.first(), ls.last()) {
                (Some(a), Some(b)) => format!("{} stages, L = {a}..={b}", ls.len()),
                _ => "no stages".to_string(),
            },
        });
    }
    out
}

pub fn verify_catalog() -> VerificationReport {
    VerificationReport {
        entries: verify_entries(entries()),
        cross_checks: cross_checks(),
    }
}

/// Comparison rows for `n_range`, limited to the published 6..=20.
pub fn compare_apertures(n_range: std::ops::RangeInclusive<usize>) -> Vec<ComparisonRow> {
    APERTURE_COMPARISON
        .iter()
        .filter(|r| n_range.contains(&r.n))
        .copied()
        .collect()
}

/// One JSON object per line.
pub fn export_jsonl(entries: &[CatalogEntry]) -> String {
    entries
        .iter()
        .map(|e| serde_json::to_string(e).expect("entry serializes") + "\n")
        .collect()
}

/// CSV with columns N,symNA,RMRA,2FRA,2FRA_critical; `**` marks an
/// undefined array.
pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("N,symNA,RMRA,2FRA,2FRA_critical\n");
    for r in rows {
        let sym = r.sym_na.map_or("**".to_string(), |v| v.to_string());
        let crit = r.two_fra_critical.map_or(String::new(), |v| v.to_string());
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, sym, r.rmra, r.two_fra, crit
        ));
    }
    out
}
