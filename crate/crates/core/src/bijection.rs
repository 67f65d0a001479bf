//! Constructive bijections between marked Dyck path sets and path pairs.
//!
//! Marked sets (all over Dyck paths, mark weight `k + 1`):
//!
//! | set            | length       | mark                          |
//! |----------------|--------------|-------------------------------|
//! | `S(n,k)`       | `2(n+1)`     | symmetric peak                |
//! | `L(n,k)`       | `2(n+3)`     | left-asymmetric peak          |
//! | `S*(n,k)`      | `2(n+1)`     | symmetric or left peak        |
//! | `V(n,k)`       | `2(n+2)`     | symmetric valley              |
//! | `VL(n,k)`      | `2(n+3)`     | left-asymmetric valley        |
//! | `V*(n,k)`      | `2(n+2)`     | symmetric or left valley      |
//!
//! Pair sets `(first, second)` with `second` a partial Dyck path ending at
//! level `k` and total length `2n - k`:
//!
//! * `F(n,k)`: `first` is empty or a free Dyck path starting with `ud`;
//! * `E(n,k)`: `first` is any free Dyck path.
//!
//! Every map rebuilds its output by concatenating pieces and then marks the
//! peak or valley it placed at a known step offset.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invariant, Error, Result};
use crate::path::{enumerate, LatticePath, PathKind, Step};
use crate::stats::{marked_set, Filter, MarkedPath, RunRecord, Statistic, SymmetryClass};

/// An ordered pair of paths, the element type of `F(n,k)` and `E(n,k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathPair {
    #[serde(with = "path_text")]
    pub first: LatticePath,
    #[serde(with = "path_text")]
    pub second: LatticePath,
}

mod path_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::path::LatticePath;

    pub fn serialize<S: Serializer>(p: &LatticePath, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(p)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LatticePath, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PathPair {
    pub fn new(first: LatticePath, second: LatticePath) -> Self {
        Self { first, second }
    }

    pub fn total_len(&self) -> usize {
        self.first.len() + self.second.len()
    }

    /// The end level of `second`, i.e. the `k` of the pair set.
    pub fn level(&self) -> i64 {
        self.second.final_level()
    }

    fn check_common(&self, n: usize, k: usize) -> Result<()> {
        if !self.second.validate(PathKind::PartialDyck(k as u32)) {
            return invariant(format!(
                "second component {} is not a partial Dyck path ending at level {k}",
                self.second
            ));
        }
        if !self.first.is_free_dyck() {
            return invariant(format!("first component {} is not a free Dyck path", self.first));
        }
        if self.total_len() + k != 2 * n {
            return invariant(format!(
                "component lengths sum to {}, expected {}",
                self.total_len(),
                (2 * n).saturating_sub(k)
            ));
        }
        Ok(())
    }

    /// Membership in `F(n,k)`.
    pub fn check_f(&self, n: usize, k: usize) -> Result<()> {
        self.check_common(n, k)?;
        if !self.first.is_empty() && !self.first.starts_with(&[Step::U, Step::D]) {
            return invariant(format!(
                "first component {} is neither empty nor starts with ud",
                self.first
            ));
        }
        Ok(())
    }

    /// Membership in `E(n,k)`.
    pub fn check_e(&self, n: usize, k: usize) -> Result<()> {
        self.check_common(n, k)
    }
}

impl fmt::Display for PathPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// The marked path families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MarkedFamily {
    S,
    L,
    SStar,
    V,
    VL,
    VStar,
}

impl MarkedFamily {
    /// Semilength offset: paths in family `(n,k)` have length `2(n + offset)`.
    pub fn offset(self) -> usize {
        match self {
            MarkedFamily::S | MarkedFamily::SStar => 1,
            MarkedFamily::V | MarkedFamily::VStar => 2,
            MarkedFamily::L | MarkedFamily::VL => 3,
        }
    }

    pub fn statistic(self) -> Statistic {
        match self {
            MarkedFamily::S | MarkedFamily::L | MarkedFamily::SStar => Statistic::Peak,
            MarkedFamily::V | MarkedFamily::VL | MarkedFamily::VStar => Statistic::Valley,
        }
    }

    pub fn admits(self, class: SymmetryClass) -> bool {
        use SymmetryClass::*;
        match self {
            MarkedFamily::S | MarkedFamily::V => class == Symmetric,
            MarkedFamily::L | MarkedFamily::VL => class == LeftAsymmetric,
            MarkedFamily::SStar | MarkedFamily::VStar => class != RightAsymmetric,
        }
    }

    pub fn length(self, n: usize) -> usize {
        2 * (n + self.offset())
    }

    pub fn contains(self, m: &MarkedPath, n: usize, k: usize) -> bool {
        let r = m.record();
        m.statistic() == self.statistic()
            && m.path().is_dyck()
            && m.path().len() == self.length(n)
            && self.admits(r.class())
            && r.weight() == k + 1
    }

    pub fn check(self, m: &MarkedPath, n: usize, k: usize) -> Result<()> {
        if self.contains(m, n, k) {
            Ok(())
        } else {
            invariant(format!("{m} is not an element of {self:?}({n},{k})"))
        }
    }

    /// All elements in enumeration order.
    pub fn elements(self, n: usize, k: usize) -> Vec<MarkedPath> {
        let stat = self.statistic();
        let mut out: Vec<MarkedPath> = Vec::new();
        let classes: &[SymmetryClass] = match self {
            MarkedFamily::S | MarkedFamily::V => &[SymmetryClass::Symmetric],
            MarkedFamily::L | MarkedFamily::VL => &[SymmetryClass::LeftAsymmetric],
            MarkedFamily::SStar | MarkedFamily::VStar => {
                &[SymmetryClass::Symmetric, SymmetryClass::LeftAsymmetric]
            }
        };
        for &class in classes {
            let filter = Filter::new(Some(class), Some(k + 1));
            out.extend(
                marked_set(PathKind::Dyck, self.length(n), stat, filter).expect("even length"),
            );
        }
        out.sort();
        out
    }
}

/// Elements of `F(n,k)`.
pub fn f_elements(n: usize, k: usize) -> Vec<PathPair> {
    pair_elements(n, k, true)
}

/// Elements of `E(n,k)`.
pub fn e_elements(n: usize, k: usize) -> Vec<PathPair> {
    pair_elements(n, k, false)
}

fn pair_elements(n: usize, k: usize, ud_start: bool) -> Vec<PathPair> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let total = 2 * n - k;
    for a in 0..=(n - k) {
        let firsts: Vec<_> = enumerate(PathKind::FreeDyck, 2 * a)
            .expect("even")
            .filter(|f| !ud_start || f.is_empty() || f.starts_with(&[Step::U, Step::D]))
            .collect();
        let seconds: Vec<_> = enumerate(PathKind::PartialDyck(k as u32), total - 2 * a)
            .expect("parity matches")
            .collect();
        for f in &firsts {
            for s in &seconds {
                out.push(PathPair::new(f.clone(), s.clone()));
            }
        }
    }
    out
}

fn require(m: &MarkedPath, stat: Statistic, class: SymmetryClass) -> Result<RunRecord> {
    if m.statistic() != stat {
        return invariant(format!("expected a marked {stat:?}, got a marked {:?}", m.statistic()));
    }
    if !m.path().is_dyck() {
        return invariant(format!("{} is not a Dyck path", m.path()));
    }
    let r = m.record();
    if r.class() != class {
        return invariant(format!("marked record of {m} is {}, expected {class}", r.class()));
    }
    Ok(r)
}

fn require_weight(m: &MarkedPath, r: &RunRecord, weight: usize) -> Result<()> {
    if r.weight() != weight {
        return invariant(format!("marked record of {m} has weight {}, expected {weight}", r.weight()));
    }
    Ok(())
}

fn step_is(path: &LatticePath, at: usize, step: Step, what: &str) -> Result<()> {
    if path.steps().get(at) != Some(&step) {
        return invariant(format!("{path}: expected {} at step {at} ({what})", step.as_char()));
    }
    Ok(())
}

/// Join `pieces[0] u pieces[1] u ... u pieces[last]`.
fn join_with(pieces: &[LatticePath], sep: Step) -> LatticePath {
    let mut steps = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        if i > 0 {
            steps.push(sep);
        }
        steps.extend_from_slice(p.steps());
    }
    LatticePath::from_steps(steps)
}

/// Splits a never-negative prefix ending at level `e >= count` as
/// `head u P_1 u P_2 ... u P_count`, where the listed `u` steps are the last
/// crossings of the top `count` levels.
fn split_top_crossings(a: &LatticePath, count: usize) -> Result<(LatticePath, Vec<LatticePath>)> {
    let e = a.final_level();
    if a.min_level() < 0 || e < count as i64 {
        return invariant(format!("{a} does not climb {count} levels"));
    }
    let base = e - count as i64;
    let levels = a.levels();
    let mut crossing = vec![usize::MAX; count];
    for (i, s) in a.steps().iter().enumerate() {
        if *s == Step::U && levels[i] >= base && levels[i] < e {
            crossing[(levels[i] - base) as usize] = i;
        }
    }
    let head = a.slice(0, crossing[0]);
    let mut pieces = Vec::with_capacity(count);
    for w in 0..count {
        let from = crossing[w] + 1;
        let to = crossing.get(w + 1).copied().unwrap_or(a.len());
        pieces.push(a.slice(from, to));
    }
    Ok((head, pieces))
}

/// `P_0 d P_1 ... d P_count [d rest]`, where each listed `d` is the first
/// step reaching the next level down. The final piece must close at level
/// `-count` when there is no rest.
fn split_descents(b: &LatticePath, count: usize) -> Result<(Vec<LatticePath>, Option<LatticePath>)> {
    let levels = b.levels();
    let mut cuts = Vec::with_capacity(count + 1);
    let mut target = -1i64;
    for (i, s) in b.steps().iter().enumerate() {
        if cuts.len() == count + 1 {
            break;
        }
        if *s == Step::D && levels[i + 1] == target {
            cuts.push(i);
            target -= 1;
        }
    }
    if cuts.len() < count {
        return invariant(format!("{b} does not descend {count} levels"));
    }
    let mut pieces = Vec::with_capacity(count + 1);
    let mut from = 0;
    for w in 0..=count {
        let to = cuts.get(w).copied().unwrap_or(b.len());
        pieces.push(b.slice(from, to));
        from = to + 1;
    }
    let rest = cuts.get(count).map(|&c| b.slice(c + 1, b.len()));
    if rest.is_none() && b.final_level() != -(count as i64) {
        return invariant(format!("{b} does not close at level -{count}"));
    }
    Ok((pieces, rest))
}

/// Cuts a free Dyck path with negative minimum at its leftmost lowest point:
/// `before d after`, the `d` ending at that point.
fn cut_leftmost_lowest(f: &LatticePath) -> Result<(LatticePath, LatticePath)> {
    let split = f.lowest_valley_splits()?;
    if split.min_level >= 0 {
        return invariant(format!("{f} never goes below the axis"));
    }
    Ok((f.slice(0, split.leftmost - 1), f.slice(split.leftmost, f.len())))
}

/// Either a Dyck first component or a split `before d after` around its
/// leftmost lowest point.
enum FreeSplit {
    Dyck(LatticePath),
    Below { before: LatticePath, after: LatticePath },
}

fn split_free(f: &LatticePath) -> Result<FreeSplit> {
    if !f.is_free_dyck() {
        return invariant(format!("{f} is not a free Dyck path"));
    }
    if f.is_dyck() {
        Ok(FreeSplit::Dyck(f.clone()))
    } else {
        let (before, after) = cut_leftmost_lowest(f)?;
        Ok(FreeSplit::Below { before, after })
    }
}

// ---------------------------------------------------------------------------
// pyramid lift / drop

/// Inserts `u^j d^j` at the apex of the marked symmetric or left-asymmetric
/// peak.
pub fn pyramid_lift(m: &MarkedPath, j: usize) -> Result<MarkedPath> {
    if j == 0 {
        return Err(Error::Rejected("pyramid height must be positive".into()));
    }
    if m.statistic() != Statistic::Peak {
        return invariant("pyramid lift needs a marked peak");
    }
    let r = m.record();
    if r.class() == SymmetryClass::RightAsymmetric {
        return invariant(format!("marked peak of {m} is right asymmetric"));
    }
    let apex = r.turn + 1;
    let path = m.path();
    let out = LatticePath::join([
        &path.slice(0, apex),
        &LatticePath::ups(j),
        &LatticePath::downs(j),
        &path.slice(apex, path.len()),
    ]);
    MarkedPath::new(out, Statistic::Peak, m.index())
}

/// Removes `u^j d^j` from the apex of the marked peak; the peak keeps a
/// positive weight.
pub fn pyramid_drop(m: &MarkedPath, j: usize) -> Result<MarkedPath> {
    if j == 0 {
        return Err(Error::Rejected("pyramid height must be positive".into()));
    }
    if m.statistic() != Statistic::Peak {
        return invariant("pyramid drop needs a marked peak");
    }
    let r = m.record();
    if r.weight() <= j {
        return invariant(format!("marked peak of {m} has weight {} <= {j}", r.weight()));
    }
    let apex = r.turn + 1;
    let path = m.path();
    let out = path.slice(0, apex - j).concat(&path.slice(apex + j, path.len()));
    MarkedPath::new(out, Statistic::Peak, m.index())
}

// ---------------------------------------------------------------------------
// phi: S(n,0) -> F(n,0)

/// Sends a Dyck path with a marked `ud` (symmetric, weight 1) to a pair in
/// `F(n,0)`.
pub fn phi(m: &MarkedPath) -> Result<PathPair> {
    let r = require(m, Statistic::Peak, SymmetryClass::Symmetric)?;
    require_weight(m, &r, 1)?;
    let q = m.path();
    let t = r.turn;
    if r.level == 1 {
        let p1 = q.slice(0, t);
        let q1 = q.slice(t + 2, q.len());
        if p1.is_empty() {
            return Ok(PathPair::new(LatticePath::empty(), q1));
        }
        let p2 = p1.slice(1, p1.len() - 1);
        let first = LatticePath::join([&LatticePath::from_steps(vec![Step::U, Step::D]), &p2]);
        return Ok(PathPair::new(first, q1));
    }
    // Q = Q2 P1 d [ud] u P2 Q1 with P1 d ud u P2 primitive
    let levels = q.levels();
    let start = (0..=t).rev().find(|&p| levels[p] == 0).unwrap();
    let end = (t + 2..=q.len()).find(|&p| levels[p] == 0).unwrap();
    step_is(q, t - 1, Step::D, "step before the marked peak")?;
    step_is(q, t + 2, Step::U, "step after the marked peak")?;
    let q2 = q.slice(0, start);
    let p1 = q.slice(start, t - 1);
    let p2 = q.slice(t + 3, end);
    let q1 = q.slice(end, q.len());
    let ud = LatticePath::from_steps(vec![Step::U, Step::D]);
    Ok(PathPair::new(LatticePath::join([&ud, &p2, &q2, &p1]), q1))
}

pub fn phi_inv(pair: &PathPair) -> Result<MarkedPath> {
    let n = pair.total_len() / 2;
    pair.check_f(n, 0)?;
    let q1 = &pair.second;
    let ud = LatticePath::from_steps(vec![Step::U, Step::D]);
    if pair.first.is_empty() {
        return MarkedPath::at_turn(ud.concat(q1), Statistic::Peak, 0);
    }
    let p2 = pair.first.slice(2, pair.first.len());
    if p2.min_level() >= -1 {
        let u = LatticePath::ups(1);
        let d = LatticePath::downs(1);
        let q = LatticePath::join([&u, &p2, &d, &ud, q1]);
        return MarkedPath::at_turn(q, Statistic::Peak, p2.len() + 2);
    }
    let split = p2.lowest_valley_splits()?;
    let p3 = p2.slice(0, split.leftmost);
    let q2 = p2.slice(split.leftmost, split.rightmost);
    let p4 = p2.slice(split.rightmost, p2.len());
    let q = LatticePath::join([
        &q2,
        &p4,
        &LatticePath::downs(1),
        &ud,
        &LatticePath::ups(1),
        &p3,
        q1,
    ]);
    MarkedPath::at_turn(q, Statistic::Peak, q2.len() + p4.len() + 1)
}

// ---------------------------------------------------------------------------
// phi': L(n,0) -> E(n+2,2)

pub fn phi_prime(m: &MarkedPath) -> Result<PathPair> {
    let r = require(m, Statistic::Peak, SymmetryClass::LeftAsymmetric)?;
    require_weight(m, &r, 1)?;
    let q = m.path();
    let j = r.first - 2;
    let i = r.level - r.first as i64;
    let q1 = q.slice(0, r.start);
    step_is(q, r.turn + 2, Step::U, "step after the marked mountain")?;
    let tail = q.slice(r.turn + 3, q.len());
    let (pieces, rest) = split_descents(&tail, 2)?;
    let (q3, q4, q5) = (&pieces[0], &pieces[1], &pieces[2]);
    let second = join_with(&[q5.clone(), q4.clone(), q3.clone()], Step::U);
    match rest {
        None => {
            debug_assert_eq!(i + j as i64, 0);
            Ok(PathPair::new(q1, second))
        }
        Some(q2) => {
            let first = LatticePath::join([&q2, &LatticePath::downs(1), &q1, &LatticePath::ups(j)]);
            Ok(PathPair::new(first, second))
        }
    }
}

pub fn phi_prime_inv(pair: &PathPair) -> Result<MarkedPath> {
    if pair.level() != 2 {
        return invariant(format!("second component {} must end at level 2", pair.second));
    }
    let n = (pair.total_len() + 2) / 2;
    pair.check_e(n, 2)?;
    let parts = pair.second.split_last_crossings()?;
    let (p5, p4, p3) = (&parts[0], &parts[1], &parts[2]);
    let d = LatticePath::downs(1);
    let u = LatticePath::ups(1);
    match split_free(&pair.first)? {
        FreeSplit::Dyck(p1) => {
            let q = LatticePath::join([&p1, &LatticePath::ups(2), &d, &u, p3, &d, p4, &d, p5]);
            MarkedPath::at_turn(q, Statistic::Peak, p1.len() + 1)
        }
        FreeSplit::Below { before: q2, after } => {
            let j = after.trailing_run(Step::U);
            let q1 = after.slice(0, after.len() - j);
            let q = LatticePath::join([
                &q1,
                &LatticePath::ups(j + 2),
                &d,
                &u,
                p3,
                &d,
                p4,
                &d,
                p5,
                &d,
                &q2,
            ]);
            MarkedPath::at_turn(q, Statistic::Peak, q1.len() + j + 1)
        }
    }
}

// ---------------------------------------------------------------------------
// theta: V(n,k) -> E(n,2k) and rho: VL(n,k) -> E(n+2,2k+2)

/// Shared tail of theta and rho: `first` from the head/rest pieces, `second`
/// from the Dyck pieces joined by `u`.
fn valley_pair(head: LatticePath, rest: Option<LatticePath>, pieces: &[LatticePath]) -> PathPair {
    let second = join_with(pieces, Step::U);
    let first = match rest {
        None => head,
        Some(q0p) => LatticePath::join([&q0p, &LatticePath::downs(1), &head]),
    };
    PathPair::new(first, second)
}

/// Rebuilds `Q0 u P_1 ... u P_up  d^a u^b  d P_{up+1} ... d P_last [d Q0']`
/// and marks the valley.
fn valley_rebuild(
    first: &LatticePath,
    pieces: &[LatticePath],
    ups_before: usize,
    valley_downs: usize,
    valley_ups: usize,
) -> Result<MarkedPath> {
    let (q0, q0p) = match split_free(first)? {
        FreeSplit::Dyck(p0) => (p0, None),
        FreeSplit::Below { before, after } => (after, Some(before)),
    };
    let mut steps: Vec<Step> = q0.steps().to_vec();
    for piece in &pieces[..ups_before] {
        steps.push(Step::U);
        steps.extend_from_slice(piece.steps());
    }
    // the step right before the valley: the u before a symmetric valley, or
    // the tail of P_up for rho
    let valley_start = steps.len();
    steps.extend(std::iter::repeat_n(Step::D, valley_downs));
    steps.extend(std::iter::repeat_n(Step::U, valley_ups));
    for piece in &pieces[ups_before..] {
        steps.push(Step::D);
        steps.extend_from_slice(piece.steps());
    }
    if let Some(q0p) = q0p {
        steps.push(Step::D);
        steps.extend_from_slice(q0p.steps());
    }
    let q = LatticePath::from_steps(steps);
    MarkedPath::at_turn(q, Statistic::Valley, valley_start + valley_downs - 1)
}

pub fn theta(m: &MarkedPath) -> Result<PathPair> {
    let r = require(m, Statistic::Valley, SymmetryClass::Symmetric)?;
    let k = r.weight() - 1;
    let q = m.path();
    let before = q.slice(0, r.start);
    let (q0, mut pieces) = split_top_crossings(&before, k + 1)?;
    let last = pieces.pop().unwrap();
    if !last.is_empty() {
        return invariant("symmetric valley not preceded by an up step");
    }
    let after = q.slice(r.end(), q.len());
    let (tail, rest) = split_descents(&after, k + 1)?;
    pieces.extend(tail.into_iter().skip(1));
    Ok(valley_pair(q0, rest, &pieces))
}

pub fn theta_inv(pair: &PathPair) -> Result<MarkedPath> {
    let level = pair.level();
    if level < 0 || level % 2 != 0 {
        return invariant(format!("second component {} must end at an even level", pair.second));
    }
    let k = (level / 2) as usize;
    let n = (pair.total_len() + 2 * k) / 2;
    pair.check_e(n, 2 * k)?;
    let pieces = pair.second.split_last_crossings()?;
    // the up step right before the valley is the (k+1)-th u of the prefix
    let mut with_u = pieces;
    with_u.insert(k, LatticePath::empty());
    valley_rebuild(&pair.first, &with_u, k + 1, k + 1, k + 1)
}

pub fn rho(m: &MarkedPath) -> Result<PathPair> {
    let r = require(m, Statistic::Valley, SymmetryClass::LeftAsymmetric)?;
    let k = r.weight() - 1;
    let q = m.path();
    // keep the final k+2 downs of the valley; the rest belong to Q_{k+2}
    let before = q.slice(0, r.turn - k - 1);
    let (q0, mut pieces) = split_top_crossings(&before, k + 2)?;
    let after = q.slice(r.end(), q.len());
    let (tail, rest) = split_descents(&after, k + 1)?;
    pieces.extend(tail.into_iter().skip(1));
    Ok(valley_pair(q0, rest, &pieces))
}

pub fn rho_inv(pair: &PathPair) -> Result<MarkedPath> {
    let level = pair.level();
    if level < 2 || level % 2 != 0 {
        return invariant(format!(
            "second component {} must end at an even level >= 2",
            pair.second
        ));
    }
    let k = (level / 2 - 1) as usize;
    let n = (pair.total_len() + level as usize) / 2;
    pair.check_e(n, level as usize)?;
    let pieces = pair.second.split_last_crossings()?;
    valley_rebuild(&pair.first, &pieces, k + 2, k + 2, k + 1)
}

// ---------------------------------------------------------------------------
// eta: L(n,0) -> V(n+2,1)

pub fn eta(m: &MarkedPath) -> Result<MarkedPath> {
    let r = require(m, Statistic::Peak, SymmetryClass::LeftAsymmetric)?;
    require_weight(m, &r, 1)?;
    let q = m.path();
    let j = r.first - 2;
    step_is(q, r.turn + 2, Step::U, "step after the marked mountain")?;
    let q1 = q.slice(0, r.start);
    let tail = q.slice(r.turn + 3, q.len());
    let (pieces, rest) = split_descents(&tail, 0)?;
    let q2 = &pieces[0];
    let q3 = rest.ok_or_else(|| Error::Invariant(format!("{q} does not return below the mountain")))?;
    let valley = LatticePath::from_steps(vec![Step::U, Step::D, Step::D, Step::U, Step::U, Step::D]);
    let out = LatticePath::join([&q1, &LatticePath::ups(j + 1), q2, &valley, &q3]);
    MarkedPath::at_turn(out, Statistic::Valley, q1.len() + j + 1 + q2.len() + 2)
}

pub fn eta_inv(m: &MarkedPath) -> Result<MarkedPath> {
    let r = require(m, Statistic::Valley, SymmetryClass::Symmetric)?;
    require_weight(m, &r, 2)?;
    let q = m.path();
    if r.start == 0 {
        return invariant("valley at the start of a Dyck path");
    }
    step_is(q, r.start - 1, Step::U, "step before the valley")?;
    step_is(q, r.end(), Step::D, "step after the valley")?;
    let q3 = q.slice(r.end() + 1, q.len());
    let pre = q.slice(0, r.start - 1);
    let (head, pieces) = split_top_crossings(&pre, 1)?;
    let q2 = &pieces[0];
    let j = head.trailing_run(Step::U);
    let q1 = head.slice(0, head.len() - j);
    let out = LatticePath::join([
        &q1,
        &LatticePath::ups(j + 2),
        &LatticePath::downs(1),
        &LatticePath::ups(1),
        q2,
        &LatticePath::downs(1),
        &q3,
    ]);
    MarkedPath::at_turn(out, Statistic::Peak, q1.len() + j + 1)
}

// ---------------------------------------------------------------------------
// valley shift: V(n+2,k+1) -> VL(n,k), through E(n+2,2k+2)

pub fn valley_shift(m: &MarkedPath) -> Result<MarkedPath> {
    let r = require(m, Statistic::Valley, SymmetryClass::Symmetric)?;
    if r.weight() < 2 {
        return invariant(format!("marked valley of {m} has weight 1, need at least 2"));
    }
    rho_inv(&theta(m)?)
}

pub fn valley_shift_inv(m: &MarkedPath) -> Result<MarkedPath> {
    theta_inv(&rho(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::p;

    fn pair(a: &str, b: &str) -> PathPair {
        PathPair::new(p(a), p(b))
    }

    #[test]
    fn pyramid_examples() {
        let m = MarkedPath::peak(p("ud"), 0).unwrap();
        let up = pyramid_lift(&m, 1).unwrap();
        assert_eq!(up, MarkedPath::peak(p("uudd"), 0).unwrap());
        assert_eq!(pyramid_drop(&up, 1).unwrap(), m);
        assert!(pyramid_lift(&m, 0).is_err());
        assert!(pyramid_drop(&up, 2).is_err());
        let v = MarkedPath::valley(p("udud"), 0).unwrap();
        assert!(pyramid_lift(&v, 1).is_err());
        let right = MarkedPath::peak(p("udd"), 0).unwrap();
        assert!(pyramid_lift(&right, 1).is_err());
    }

    #[test]
    fn phi_worked_example() {
        let q = p("uduuuduudududuuddddudduudd");
        let m = MarkedPath::at_turn(q, Statistic::Peak, 9).unwrap();
        assert_eq!(m.index(), 3);
        let out = phi(&m).unwrap();
        assert_eq!(out, pair("udduuddddudduduuuduu", "uudd"));
        out.check_f(12, 0).unwrap();
        assert_eq!(phi_inv(&out).unwrap(), m);
    }

    #[test]
    fn phi_small_cases() {
        let m = MarkedPath::peak(p("ud"), 0).unwrap();
        assert_eq!(phi(&m).unwrap(), pair("", ""));
        assert_eq!(phi_inv(&pair("", "uudd")).unwrap(), MarkedPath::peak(p("uduudd"), 0).unwrap());
        assert!(phi(&MarkedPath::peak(p("uudd"), 0).unwrap()).is_err());
        assert!(phi_inv(&pair("du", "")).is_err());
    }

    #[test]
    fn phi_prime_worked_example() {
        // Q1 = uduuud, marked u^2 d, then u ud d udud d d udduudd
        let q = LatticePath::join([&p("uduuud"), &p("uud"), &p("u"), &p("ud"), &p("d"), &p("udud"), &p("d"), &p("d"), &p("udduudd")]);
        assert_eq!(q.len(), 26);
        let m = MarkedPath::at_turn(q, Statistic::Peak, 7).unwrap();
        assert_eq!(m.index(), 2);
        let out = phi_prime(&m).unwrap();
        assert_eq!(out, pair("udduuddduduuud", "uududuud"));
        out.check_e(12, 2).unwrap();
        assert_eq!(phi_prime_inv(&out).unwrap(), m);
    }

    #[test]
    fn phi_prime_minimal() {
        let m = MarkedPath::peak(p("uududd"), 0).unwrap();
        assert_eq!(MarkedFamily::L.elements(0, 0), vec![m.clone()]);
        let out = phi_prime(&m).unwrap();
        assert_eq!(out, pair("", "uu"));
        assert_eq!(e_elements(2, 2), vec![out.clone()]);
        assert_eq!(phi_prime_inv(&out).unwrap(), m);
    }

    #[test]
    fn theta_worked_example() {
        let q = LatticePath::join([&p("uduuudu"), &p("u"), &p("ud"), &p("u"), &p("dduu"), &p("d"), &p("d"), &p("ud"), &p("d"), &p("dduudd")]);
        assert_eq!(q.len(), 26);
        let m = MarkedPath::at_turn(q.clone(), Statistic::Valley, 12).unwrap();
        assert_eq!(m.record().weight(), 2);
        let out = theta(&m).unwrap();
        assert_eq!(out, pair("dduuddduduuudu", "uduuud"));
        out.check_e(11, 2).unwrap();
        assert_eq!(theta_inv(&out).unwrap(), m);
    }

    #[test]
    fn theta_minimal() {
        let only = MarkedFamily::V.elements(0, 0);
        assert_eq!(only.len(), 1);
        assert_eq!(theta(&only[0]).unwrap(), pair("", ""));
        assert_eq!(theta_inv(&pair("", "")).unwrap(), only[0]);
    }

    #[test]
    fn eta_and_shift_minimal() {
        let l = MarkedFamily::L.elements(0, 0);
        let v = MarkedFamily::V.elements(2, 1);
        assert_eq!((l.len(), v.len()), (1, 1));
        assert_eq!(eta(&l[0]).unwrap(), v[0]);
        assert_eq!(eta_inv(&v[0]).unwrap(), l[0]);
        let vl = MarkedFamily::VL.elements(0, 0);
        assert_eq!(vl.len(), 1);
        assert_eq!(valley_shift(&v[0]).unwrap(), vl[0]);
        assert_eq!(valley_shift_inv(&vl[0]).unwrap(), v[0]);
        assert_eq!(rho(&vl[0]).unwrap(), pair("", "uu"));
    }

    #[test]
    fn wrong_marks_are_rejected() {
        let s = MarkedPath::peak(p("uudd"), 0).unwrap();
        assert!(phi_prime(&s).is_err());
        assert!(eta(&s).is_err());
        assert!(theta(&s).is_err());
        let v = MarkedPath::valley(p("udud"), 0).unwrap();
        assert!(rho(&v).is_err());
        assert!(eta_inv(&v).is_err());
        assert!(valley_shift(&v).is_err());
        assert!(theta_inv(&pair("", "u")).is_err());
        assert!(rho_inv(&pair("", "")).is_err());
        assert!(phi_prime_inv(&pair("ud", "u")).is_err());
    }

    fn round_trip<A: Clone + PartialEq + fmt::Debug, B: Clone + PartialEq + fmt::Debug + Ord>(
        domain: &[A],
        codomain: &[B],
        fwd: impl Fn(&A) -> Result<B>,
        inv: impl Fn(&B) -> Result<A>,
        in_codomain: impl Fn(&B) -> bool,
    ) {
        assert_eq!(domain.len(), codomain.len());
        let mut images = Vec::new();
        for x in domain {
            let y = fwd(x).unwrap_or_else(|e| panic!("{x:?}: {e}"));
            assert!(in_codomain(&y), "{x:?} -> {y:?} outside codomain");
            assert_eq!(&inv(&y).unwrap(), x);
            images.push(y);
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), codomain.len());
        for y in codomain {
            assert_eq!(&fwd(&inv(y).unwrap_or_else(|e| panic!("{y:?}: {e}"))).unwrap(), y);
        }
    }

    #[test]
    fn exhaustive_small_round_trips() {
        for n in 0..=4 {
            round_trip(&MarkedFamily::S.elements(n, 0), &f_elements(n, 0), phi, phi_inv, |y| y.check_f(n, 0).is_ok());
            round_trip(&MarkedFamily::L.elements(n, 0), &e_elements(n + 2, 2), phi_prime, phi_prime_inv, |y| y.check_e(n + 2, 2).is_ok());
            round_trip(&MarkedFamily::L.elements(n, 0), &MarkedFamily::V.elements(n + 2, 1), eta, eta_inv, |y| MarkedFamily::V.contains(y, n + 2, 1));
            for k in 0..=n / 2 {
                round_trip(&MarkedFamily::V.elements(n, k), &e_elements(n, 2 * k), theta, theta_inv, |y| y.check_e(n, 2 * k).is_ok());
                round_trip(&MarkedFamily::VL.elements(n, k), &e_elements(n + 2, 2 * k + 2), rho, rho_inv, |y| y.check_e(n + 2, 2 * k + 2).is_ok());
                round_trip(&MarkedFamily::V.elements(n + 2, k + 1), &MarkedFamily::VL.elements(n, k), valley_shift, valley_shift_inv, |y| MarkedFamily::VL.contains(y, n, k));
            }
        }
    }
}
