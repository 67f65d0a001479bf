//! Peak and valley scanning.
//!
//! Every occurrence of `ud` is a peak and every occurrence of `du` a valley.
//! Each one sits inside a unique maximal run pair (`u^i d^j` for a peak,
//! `d^i u^j` for a valley); the pair gives the weight `min(i, j)` and the
//! symmetry class.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{enumerate, LatticePath, PathKind, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Peak,
    Valley,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    Symmetric,
    LeftAsymmetric,
    RightAsymmetric,
}

impl SymmetryClass {
    /// Class of a run pair: first run length vs second run length.
    pub fn of(first: usize, second: usize) -> Self {
        match first.cmp(&second) {
            Ordering::Equal => SymmetryClass::Symmetric,
            Ordering::Greater => SymmetryClass::LeftAsymmetric,
            Ordering::Less => SymmetryClass::RightAsymmetric,
        }
    }

    pub fn mirrored(self) -> Self {
        match self {
            SymmetryClass::Symmetric => SymmetryClass::Symmetric,
            SymmetryClass::LeftAsymmetric => SymmetryClass::RightAsymmetric,
            SymmetryClass::RightAsymmetric => SymmetryClass::LeftAsymmetric,
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymmetryClass::Symmetric => "symmetric",
            SymmetryClass::LeftAsymmetric => "left",
            SymmetryClass::RightAsymmetric => "right",
        })
    }
}

impl FromStr for SymmetryClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" | "sym" | "s" => Ok(SymmetryClass::Symmetric),
            "left" | "left_asymmetric" | "l" => Ok(SymmetryClass::LeftAsymmetric),
            "right" | "right_asymmetric" | "r" => Ok(SymmetryClass::RightAsymmetric),
            other => Err(Error::Unknown(format!("symmetry class {other:?}"))),
        }
    }
}

/// A maximal run pair around one peak or valley.
///
/// For a peak the pair is `u^first d^second`, for a valley `d^first u^second`.
/// `turn` is the step index of the first step of the `ud` (or `du`)
/// occurrence, so the turning point is point `turn + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RunRecord {
    pub start: usize,
    pub first: usize,
    pub second: usize,
    pub turn: usize,
    /// Level of the point where the two runs meet.
    pub level: i64,
}

impl RunRecord {
    pub fn weight(&self) -> usize {
        self.first.min(self.second)
    }

    pub fn class(&self) -> SymmetryClass {
        SymmetryClass::of(self.first, self.second)
    }

    /// Point index one past the last step of the run pair.
    pub fn end(&self) -> usize {
        self.start + self.first + self.second
    }
}

pub type PeakRecord = RunRecord;
pub type ValleyRecord = RunRecord;

fn scan(path: &LatticePath, lead: Step) -> Vec<RunRecord> {
    let steps = path.steps();
    let n = steps.len();
    let mut out = Vec::new();
    let mut level = 0i64;
    for t in 0..n.saturating_sub(1) {
        level += steps[t].delta();
        if steps[t] == lead && steps[t + 1] != lead {
            let first = steps[..=t].iter().rev().take_while(|&&s| s == lead).count();
            let second = steps[t + 1..].iter().take_while(|&&s| s != lead).count();
            out.push(RunRecord {
                start: t + 1 - first,
                first,
                second,
                turn: t,
                level,
            });
        }
    }
    out
}

/// One record per `ud` occurrence, left to right.
pub fn scan_peaks(path: &LatticePath) -> Vec<PeakRecord> {
    scan(path, Step::U)
}

/// One record per `du` occurrence, left to right.
pub fn scan_valleys(path: &LatticePath) -> Vec<ValleyRecord> {
    scan(path, Step::D)
}

pub fn scan_records(path: &LatticePath, statistic: Statistic) -> Vec<RunRecord> {
    match statistic {
        Statistic::Peak => scan_peaks(path),
        Statistic::Valley => scan_valleys(path),
    }
}

/// Record filter; `None` fields match anything.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Filter {
    pub class: Option<SymmetryClass>,
    pub weight: Option<usize>,
}

impl Filter {
    pub fn new(class: Option<SymmetryClass>, weight: Option<usize>) -> Self {
        Self { class, weight }
    }

    pub fn matches(&self, r: &RunRecord) -> bool {
        self.class.is_none_or(|c| c == r.class()) && self.weight.is_none_or(|w| w == r.weight())
    }
}

pub fn count_stat(path: &LatticePath, statistic: Statistic, filter: Filter) -> usize {
    scan_records(path, statistic)
        .iter()
        .filter(|r| filter.matches(r))
        .count()
}

/// A path with one distinguished peak or valley, addressed by its position in
/// the left-to-right record list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPath {
    path: LatticePath,
    statistic: Statistic,
    index: usize,
}

impl MarkedPath {
    pub fn new(path: LatticePath, statistic: Statistic, index: usize) -> Result<Self> {
        let available = scan_records(&path, statistic).len();
        if index >= available {
            return Err(Error::Invariant(format!(
                "mark index {index} out of range: {path} has {available} {statistic:?} records"
            )));
        }
        Ok(Self {
            path,
            statistic,
            index,
        })
    }

    pub fn peak(path: LatticePath, index: usize) -> Result<Self> {
        Self::new(path, Statistic::Peak, index)
    }

    pub fn valley(path: LatticePath, index: usize) -> Result<Self> {
        Self::new(path, Statistic::Valley, index)
    }

    /// Marks the record whose turning pair starts at step `turn`.
    pub fn at_turn(path: LatticePath, statistic: Statistic, turn: usize) -> Result<Self> {
        let index = scan_records(&path, statistic)
            .iter()
            .position(|r| r.turn == turn)
            .ok_or_else(|| {
                Error::Invariant(format!("no {statistic:?} turns at step {turn} of {path}"))
            })?;
        Ok(Self {
            path,
            statistic,
            index,
        })
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    pub fn statistic(&self) -> Statistic {
        self.statistic
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn record(&self) -> RunRecord {
        scan_records(&self.path, self.statistic)[self.index]
    }

    pub fn into_path(self) -> LatticePath {
        self.path
    }
}

impl fmt::Display for MarkedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.record();
        let s = self.path.to_string();
        write!(f, "{}[{}]{}", &s[..r.start], &s[r.start..r.end()], &s[r.end()..])
    }
}

/// Every `(path, mark)` pair over paths of `kind` and `length` whose marked
/// record matches the filter.
pub fn marked_set(
    kind: PathKind,
    length: usize,
    statistic: Statistic,
    filter: Filter,
) -> Result<impl Iterator<Item = MarkedPath>> {
    Ok(enumerate(kind, length)?.flat_map(move |path| {
        let hits: Vec<usize> = scan_records(&path, statistic)
            .iter()
            .enumerate()
            .filter(|(_, r)| filter.matches(r))
            .map(|(i, _)| i)
            .collect();
        hits.into_iter().map(move |index| MarkedPath {
            path: path.clone(),
            statistic,
            index,
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::p;
    use SymmetryClass::*;

    /// The length-26 path shared by the statistics illustration and the
    /// upper panel of the phi example, transcribed from its coordinates.
    const REFERENCE_PATH: &str = "uduuuduudududuuddddudduudd";
    const REFERENCE_POINTS: [(i64, i64); 17] = [
        (0, 0), (1, 1), (2, 0), (5, 3), (6, 2), (8, 4), (9, 3), (10, 4), (11, 3),
        (12, 4), (13, 3), (15, 5), (19, 1), (20, 2), (22, 0), (24, 2), (26, 0),
    ];

    fn from_corners(points: &[(i64, i64)]) -> LatticePath {
        let mut steps = Vec::new();
        for w in points.windows(2) {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            assert_eq!(dx, dy.abs());
            let s = if dy > 0 { Step::U } else { Step::D };
            steps.extend(std::iter::repeat_n(s, dx as usize));
        }
        LatticePath::from_steps(steps)
    }

    fn reference_path() -> LatticePath {
        from_corners(&REFERENCE_POINTS)
    }

    #[test]
    fn reference_transcription() {
        let x = reference_path();
        assert_eq!(x.len(), 26);
        assert!(x.is_dyck());
        assert_eq!(x.to_string(), REFERENCE_PATH);
    }

    #[test]
    fn reference_peak_counts() {
        let x = reference_path();
        let c = |class, w| count_stat(&x, Statistic::Peak, Filter::new(Some(class), Some(w)));
        assert_eq!(c(Symmetric, 1), 3);
        assert_eq!(c(Symmetric, 2), 1);
        assert_eq!(c(LeftAsymmetric, 1), 2);
        assert_eq!(c(RightAsymmetric, 1), 1);
        assert_eq!(c(RightAsymmetric, 2), 1);
        assert_eq!(scan_peaks(&x).len(), 8);
    }

    #[test]
    fn reference_valley_counts() {
        let x = reference_path();
        let c = |class, w| count_stat(&x, Statistic::Valley, Filter::new(Some(class), Some(w)));
        assert_eq!(c(Symmetric, 1), 2);
        assert_eq!(c(Symmetric, 2), 1);
        assert_eq!(c(LeftAsymmetric, 1), 1);
        assert_eq!(c(RightAsymmetric, 1), 3);
        assert_eq!(scan_valleys(&x).len(), 7);
    }

    #[test]
    fn single_mountains() {
        let r = scan_peaks(&p("ud"));
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].first, r[0].second, r[0].weight(), r[0].class(), r[0].level), (1, 1, 1, Symmetric, 1));
        let r = scan_peaks(&p("uuud"));
        assert_eq!((r[0].first, r[0].second, r[0].weight(), r[0].class()), (3, 1, 1, LeftAsymmetric));
        assert_eq!(count_stat(&p("uuuddd"), Statistic::Peak, Filter::new(Some(Symmetric), Some(3))), 1);
        assert_eq!(count_stat(&LatticePath::empty(), Statistic::Peak, Filter::default()), 0);
        assert_eq!(count_stat(&LatticePath::empty(), Statistic::Valley, Filter::default()), 0);
    }

    #[test]
    fn valleys_basic() {
        assert!(scan_valleys(&p("uudd")).is_empty());
        let v = scan_valleys(&p("ududud"));
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|r| r.first == 1 && r.second == 1 && r.class() == Symmetric));
        // leading valley of a free path
        let v = scan_valleys(&p("dduuud"));
        assert_eq!((v[0].start, v[0].first, v[0].second, v[0].level), (0, 2, 3, -2));
    }

    #[test]
    fn trailing_up_run_is_not_a_mountain() {
        assert!(scan_peaks(&p("uduu")).len() == 1);
        assert!(scan_peaks(&p("uuu")).is_empty());
    }

    #[test]
    fn marked_sets() {
        let sym = Filter::new(Some(Symmetric), Some(1));
        assert_eq!(marked_set(PathKind::Dyck, 8, Statistic::Peak, sym).unwrap().count(), 15);
        let left = Filter::new(Some(LeftAsymmetric), Some(1));
        assert_eq!(marked_set(PathKind::Dyck, 8, Statistic::Peak, left).unwrap().count(), 5);
        assert_eq!(marked_set(PathKind::Dyck, 8, Statistic::Valley, sym).unwrap().count(), 10);
    }

    #[test]
    fn marks_address_records() {
        let m = MarkedPath::at_turn(p("uduudd"), Statistic::Peak, 3).unwrap();
        assert_eq!(m.index(), 1);
        assert_eq!(m.to_string(), "ud[uudd]");
        assert!(MarkedPath::peak(p("ud"), 1).is_err());
        assert!(MarkedPath::at_turn(p("ud"), Statistic::Valley, 0).is_err());
    }

    #[test]
    fn exhaustive_structure() {
        for n in 1..=8 {
            let mut left = 0;
            let mut right = 0;
            for x in enumerate(PathKind::Dyck, 2 * n).unwrap() {
                let peaks = scan_peaks(&x);
                let valleys = scan_valleys(&x);
                assert_eq!(valleys.len() + 1, peaks.len());
                let s = x.to_string();
                assert_eq!(peaks.len(), s.matches("ud").count());
                assert_eq!(valleys.len(), s.as_bytes().windows(2).filter(|w| w == b"du").count());
                let rev = x.reverse();
                for stat in [Statistic::Peak, Statistic::Valley] {
                    for w in 1..=n {
                        let f = |c| Filter::new(Some(c), Some(w));
                        assert_eq!(count_stat(&x, stat, f(Symmetric)), count_stat(&rev, stat, f(Symmetric)));
                        assert_eq!(count_stat(&x, stat, f(LeftAsymmetric)), count_stat(&rev, stat, f(RightAsymmetric)));
                    }
                }
                left += count_stat(&x, Statistic::Peak, Filter::new(Some(LeftAsymmetric), None));
                right += count_stat(&x, Statistic::Peak, Filter::new(Some(RightAsymmetric), None));
            }
            assert_eq!(left, right, "n={n}");
        }
    }
}
