//! Lattice paths over the step set `{u, d}`.
//!
//! A [`LatticePath`] is an immutable step sequence together with its final
//! level and minimum prefix level, so the kind predicates (Dyck, partial Dyck,
//! free Dyck, primitive) are constant time after construction.
//!
//! Positions come in two flavours. *Step indices* address steps and run over
//! `0..len`. *Point indices* address the lattice points between steps and run
//! over `0..=len`; point `p` sits at level `levels()[p]`. Path surgery always
//! cuts at points.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A single step: `U = (1, 1)` or `D = (1, -1)`. Ordered `U < D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

impl Step {
    #[inline]
    pub fn delta(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
        }
    }

    #[inline]
    pub fn flip(self) -> Step {
        match self {
            Step::U => Step::D,
            Step::D => Step::U,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::U => 'u',
            Step::D => 'd',
        }
    }
}

/// The three path families, plus the end level for partial Dyck paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathKind {
    /// Never below the axis, ends on it.
    Dyck,
    /// Never below the axis, ends at the given level.
    PartialDyck(u32),
    /// Ends on the axis, no other constraint.
    FreeDyck,
}

impl PathKind {
    fn end_level(self) -> i64 {
        match self {
            PathKind::PartialDyck(k) => i64::from(k),
            PathKind::Dyck | PathKind::FreeDyck => 0,
        }
    }

    fn floor(self) -> Option<i64> {
        match self {
            PathKind::Dyck | PathKind::PartialDyck(_) => Some(0),
            PathKind::FreeDyck => None,
        }
    }
}

/// An immutable `u`/`d` path starting at level 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
    final_level: i64,
    min_level: i64,
}

impl LatticePath {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_steps(steps: Vec<Step>) -> Self {
        let mut level = 0i64;
        let mut min_level = 0i64;
        for s in &steps {
            level += s.delta();
            min_level = min_level.min(level);
        }
        Self {
            steps,
            final_level: level,
            min_level,
        }
    }

    /// `u^n`
    pub fn ups(n: usize) -> Self {
        Self::from_steps(vec![Step::U; n])
    }

    /// `d^n`
    pub fn downs(n: usize) -> Self {
        Self::from_steps(vec![Step::D; n])
    }

    /// Concatenates any number of paths in order.
    pub fn join<'a, I>(parts: I) -> Self
    where
        I: IntoIterator<Item = &'a LatticePath>,
    {
        let mut steps = Vec::new();
        for p in parts {
            steps.extend_from_slice(&p.steps);
        }
        Self::from_steps(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_level(&self) -> i64 {
        self.final_level
    }

    /// Minimum over all prefix levels, the empty prefix included (so `<= 0`).
    pub fn min_level(&self) -> i64 {
        self.min_level
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    /// Level of every point, `len() + 1` entries.
    pub fn levels(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut level = 0;
        out.push(level);
        for s in &self.steps {
            level += s.delta();
            out.push(level);
        }
        out
    }

    pub fn is_dyck(&self) -> bool {
        self.min_level == 0 && self.final_level == 0
    }

    pub fn is_partial_dyck(&self) -> bool {
        self.min_level == 0
    }

    pub fn is_free_dyck(&self) -> bool {
        self.final_level == 0
    }

    /// Nonempty Dyck path with exactly one return step.
    pub fn is_primitive(&self) -> bool {
        if self.is_empty() || !self.is_dyck() {
            return false;
        }
        let levels = self.levels();
        levels[1..self.len()].iter().all(|&l| l > 0)
    }

    pub fn validate(&self, kind: PathKind) -> bool {
        match kind {
            PathKind::Dyck => self.is_dyck(),
            PathKind::PartialDyck(k) => {
                self.is_partial_dyck() && self.final_level == i64::from(k)
            }
            PathKind::FreeDyck => self.is_free_dyck(),
        }
    }

    /// Read right to left with `u` and `d` exchanged.
    pub fn reverse(&self) -> Self {
        Self::from_steps(self.steps.iter().rev().map(|s| s.flip()).collect())
    }

    pub fn concat(&self, other: &LatticePath) -> Self {
        let mut steps = Vec::with_capacity(self.len() + other.len());
        steps.extend_from_slice(&self.steps);
        steps.extend_from_slice(&other.steps);
        Self::from_steps(steps)
    }

    /// Sub-path between two point indices, re-based to start at level 0.
    pub fn slice(&self, from: usize, to: usize) -> Self {
        Self::from_steps(self.steps[from..to].to_vec())
    }

    pub fn starts_with(&self, prefix: &[Step]) -> bool {
        self.steps.starts_with(prefix)
    }

    /// Length of the maximal run of `step` ending at the end of the path.
    pub fn trailing_run(&self, step: Step) -> usize {
        self.steps.iter().rev().take_while(|&&s| s == step).count()
    }

    /// Leftmost and rightmost points attaining the minimum level.
    pub fn lowest_valley_splits(&self) -> Result<LowestSplit> {
        if self.is_empty() {
            return Err(Error::Rejected(
                "lowest points of the empty path are undefined".into(),
            ));
        }
        let levels = self.levels();
        let min_level = self.min_level;
        let leftmost = levels.iter().position(|&l| l == min_level).unwrap();
        let rightmost = levels.iter().rposition(|&l| l == min_level).unwrap();
        Ok(LowestSplit {
            leftmost,
            rightmost,
            min_level,
        })
    }

    /// Unique factorisation of a Dyck path into primitive Dyck paths.
    pub fn split_primitive_components(&self) -> Result<Vec<LatticePath>> {
        if !self.is_dyck() {
            return Err(Error::Rejected(format!("{self} is not a Dyck path")));
        }
        let mut out = Vec::new();
        let mut start = 0;
        let mut level = 0;
        for (i, s) in self.steps.iter().enumerate() {
            level += s.delta();
            if level == 0 {
                out.push(self.slice(start, i + 1));
                start = i + 1;
            }
        }
        Ok(out)
    }

    /// Splits a path ending at level `r >= 0` that never drops below 0 into
    /// `P_0 u P_1 u ... u P_r`, each `P_i` a Dyck path. The `u` between
    /// `P_{i}` and `P_{i+1}` is the last step crossing level `i -> i + 1`.
    pub fn split_last_crossings(&self) -> Result<Vec<LatticePath>> {
        if !self.is_partial_dyck() {
            return Err(Error::Invariant(format!(
                "{self} is not a partial Dyck path"
            )));
        }
        let levels = self.levels();
        let r = self.final_level as usize;
        // crossing[l] = step index of the last up step from level l to l+1
        let mut crossing = vec![usize::MAX; r];
        for (i, s) in self.steps.iter().enumerate() {
            if *s == Step::U {
                let from = levels[i];
                if (from as usize) < r {
                    crossing[from as usize] = i;
                }
            }
        }
        let mut pieces = Vec::with_capacity(r + 1);
        let mut start = 0;
        for &c in &crossing {
            pieces.push(self.slice(start, c));
            start = c + 1;
        }
        pieces.push(self.slice(start, self.len()));
        Ok(pieces)
    }
}

/// Result of [`LatticePath::lowest_valley_splits`]: point indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowestSplit {
    pub leftmost: usize,
    pub rightmost: usize,
    pub min_level: i64,
}

impl Ord for LatticePath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.steps.cmp(&other.steps)
    }
}

impl PartialOrd for LatticePath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                'u' => Ok(Step::U),
                'd' => Ok(Step::D),
                found => Err(Error::InvalidPath { position, found }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_steps(steps))
    }
}

impl From<Vec<Step>> for LatticePath {
    fn from(steps: Vec<Step>) -> Self {
        Self::from_steps(steps)
    }
}

/// Shorthand for parsing a path literal; panics on bad input.
pub fn p(s: &str) -> LatticePath {
    s.parse().expect("valid u/d path literal")
}

/// Lexicographic (`U < D`) stream of every path of one kind and length.
#[derive(Clone, Debug)]
pub struct PathIter {
    current: Option<Vec<Step>>,
    end_level: i64,
    floor: Option<i64>,
}

impl PathIter {
    fn feasible(&self, level: i64, remaining: usize) -> bool {
        if let Some(floor) = self.floor {
            if level < floor || self.end_level < floor {
                return false;
            }
        }
        let gap = (level - self.end_level).unsigned_abs() as usize;
        gap <= remaining && (remaining - gap) % 2 == 0
    }

    /// Greedy smallest completion from `from` onwards, given the level there.
    fn fill(&self, steps: &mut [Step], mut level: i64) {
        let len = steps.len();
        for i in 0..len {
            let remaining = len - i - 1;
            if self.feasible(level + 1, remaining) {
                steps[i] = Step::U;
                level += 1;
            } else {
                steps[i] = Step::D;
                level -= 1;
            }
        }
    }

    fn advance(&self, steps: &mut [Step]) -> bool {
        let len = steps.len();
        let mut levels = Vec::with_capacity(len + 1);
        let mut level = 0;
        levels.push(0);
        for s in steps.iter() {
            level += s.delta();
            levels.push(level);
        }
        for i in (0..len).rev() {
            if steps[i] == Step::U && self.feasible(levels[i] - 1, len - i - 1) {
                steps[i] = Step::D;
                self.fill(&mut steps[i + 1..], levels[i] - 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        let out = LatticePath::from_steps(self.current.clone()?);
        let mut steps = self.current.take().unwrap();
        if self.advance(&mut steps) {
            self.current = Some(steps);
        }
        Some(out)
    }
}

/// Every path of `kind` with exactly `length` steps, lexicographic with `U < D`.
pub fn enumerate(kind: PathKind, length: usize) -> Result<PathIter> {
    let end = kind.end_level();
    match kind {
        PathKind::Dyck | PathKind::FreeDyck if length % 2 != 0 => {
            return Err(Error::Rejected(format!(
                "{kind:?} paths have even length, got {length}"
            )))
        }
        PathKind::PartialDyck(k) if (length as i64) < end || (length - k as usize) % 2 != 0 => {
            return Err(Error::Rejected(format!(
                "partial Dyck paths ending at level {k} need length >= {k} with matching parity, got {length}"
            )))
        }
        _ => {}
    }
    let mut it = PathIter {
        current: None,
        end_level: end,
        floor: kind.floor(),
    };
    let mut first = vec![Step::U; length];
    it.fill(&mut first, 0);
    it.current = Some(first);
    Ok(it)
}

/// Every primitive Dyck path of the given (even, positive) length.
pub fn enumerate_primitive(length: usize) -> Result<impl Iterator<Item = LatticePath>> {
    if length == 0 || length % 2 != 0 {
        return Err(Error::Rejected(format!(
            "primitive Dyck paths have even positive length, got {length}"
        )));
    }
    let u = LatticePath::ups(1);
    let d = LatticePath::downs(1);
    Ok(enumerate(PathKind::Dyck, length - 2)?
        .map(move |inner| LatticePath::join([&u, &inner, &d])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn validate_examples() {
        assert!(p("uudd").validate(PathKind::Dyck));
        assert!(p("udu").validate(PathKind::PartialDyck(1)));
        assert!(!p("duud").validate(PathKind::Dyck));
        assert!(p("duud").validate(PathKind::FreeDyck));
        assert!(LatticePath::empty().is_dyck());
        assert!(LatticePath::empty().is_free_dyck());
        assert!(!LatticePath::empty().is_primitive());
    }

    #[test]
    fn parse_rejects_other_characters() {
        assert_eq!(
            "udx".parse::<LatticePath>(),
            Err(Error::InvalidPath {
                position: 2,
                found: 'x'
            })
        );
        assert!("UD".parse::<LatticePath>().is_err());
    }

    #[test]
    fn enumerate_small() {
        let dyck: Vec<_> = enumerate(PathKind::Dyck, 6).unwrap().map(|x| x.to_string()).collect();
        assert_eq!(dyck, ["uuuddd", "uududd", "uuddud", "uduudd", "ududud"]);
        assert_eq!(enumerate(PathKind::PartialDyck(2), 8).unwrap().count(), 28);
        let free: Vec<_> = enumerate(PathKind::FreeDyck, 0).unwrap().collect();
        assert_eq!(free, vec![LatticePath::empty()]);
        assert_eq!(enumerate(PathKind::Dyck, 0).unwrap().count(), 1);
    }

    #[test]
    fn enumerate_rejects_parity() {
        assert!(enumerate(PathKind::Dyck, 5).is_err());
        assert!(enumerate(PathKind::FreeDyck, 3).is_err());
        assert!(enumerate(PathKind::PartialDyck(2), 3).is_err());
        assert!(enumerate(PathKind::PartialDyck(4), 2).is_err());
    }

    #[test]
    fn enumeration_counts() {
        for n in 0..=12u64 {
            let c = binom(2 * n, n) / (n + 1);
            assert_eq!(enumerate(PathKind::Dyck, 2 * n as usize).unwrap().count() as u64, c);
        }
        for n in 0..=10u64 {
            let free = enumerate(PathKind::FreeDyck, 2 * n as usize).unwrap().count() as u64;
            assert_eq!(free, binom(2 * n, n));
            for k in 0..=n {
                let len = (2 * n - k) as usize;
                let got = enumerate(PathKind::PartialDyck(k as u32), len).unwrap().count() as u64;
                // (k+1)/(n+1) * binom(2n-k, n)
                assert_eq!(got * (n + 1), (k + 1) * binom(2 * n - k, n), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        for len in 0..=16 {
            for kind in [PathKind::FreeDyck, PathKind::Dyck, PathKind::PartialDyck(2)] {
                let Ok(it) = enumerate(kind, len) else { continue };
                let all: Vec<_> = it.collect();
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                let set: BTreeSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
                assert!(all.iter().all(|x| x.validate(kind) && x.len() == len));
            }
        }
    }

    #[test]
    fn primitive_paths() {
        let two: Vec<_> = enumerate_primitive(2).unwrap().collect();
        assert_eq!(two, vec![p("ud")]);
        let six: Vec<_> = enumerate_primitive(6).unwrap().map(|x| x.to_string()).collect();
        assert_eq!(six, ["uuuddd", "uududd"]);
        assert_eq!(enumerate_primitive(8).unwrap().count(), 5);
        assert!(enumerate_primitive(0).is_err());
        // stripping oracle: primitive paths are exactly the Dyck paths with one return
        for n in 1..=7 {
            let by_filter = enumerate(PathKind::Dyck, 2 * n)
                .unwrap()
                .filter(|x| x.is_primitive())
                .collect::<Vec<_>>();
            let direct = enumerate_primitive(2 * n).unwrap().collect::<Vec<_>>();
            assert_eq!(by_filter, direct);
        }
    }

    #[test]
    fn reverse_and_concat() {
        assert_eq!(p("uuduuddd").reverse(), p("uuuddudd"));
        assert_eq!(LatticePath::empty().reverse(), LatticePath::empty());
        assert_eq!(p("ud").reverse(), p("ud"));
        assert_eq!(p("uuduuddd").concat(&p("uudd")), p("uuduuddduudd"));
        assert_eq!(LatticePath::empty().concat(&p("ud")), p("ud"));
        assert_eq!(p("ud").concat(&LatticePath::empty()), p("ud"));
    }

    #[test]
    fn lowest_splits() {
        // free component from the worked phi-prime example
        let s = p("udduuddduduuud").lowest_valley_splits().unwrap();
        assert_eq!(s, LowestSplit { leftmost: 8, rightmost: 10, min_level: -2 });
        let s = p("uudd").lowest_valley_splits().unwrap();
        assert_eq!(s, LowestSplit { leftmost: 0, rightmost: 4, min_level: 0 });
        let s = p("du").lowest_valley_splits().unwrap();
        assert_eq!(s, LowestSplit { leftmost: 1, rightmost: 1, min_level: -1 });
        assert!(LatticePath::empty().lowest_valley_splits().is_err());
    }

    #[test]
    fn primitive_components() {
        assert_eq!(p("uduudd").split_primitive_components().unwrap(), vec![p("ud"), p("uudd")]);
        assert_eq!(p("uuddud").split_primitive_components().unwrap(), vec![p("uudd"), p("ud")]);
        assert!(LatticePath::empty().split_primitive_components().unwrap().is_empty());
        assert!(p("udu").split_primitive_components().is_err());
    }

    #[test]
    fn last_crossings() {
        let pieces = p("uududuud").split_last_crossings().unwrap();
        assert_eq!(pieces, vec![LatticePath::empty(), p("udud"), p("ud")]);
        let pieces = p("uduuud").split_last_crossings().unwrap();
        assert_eq!(pieces, vec![p("ud"), LatticePath::empty(), p("ud")]);
        assert!(p("du").split_last_crossings().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_path() -> impl Strategy<Value = LatticePath> {
            proptest::collection::vec(prop_oneof![Just(Step::U), Just(Step::D)], 0..24)
                .prop_map(LatticePath::from_steps)
        }

        proptest! {
            #[test]
            fn reverse_is_involution(x in any_path()) {
                prop_assert_eq!(x.reverse().reverse(), x.clone());
                prop_assert_eq!(x.is_dyck(), x.reverse().is_dyck());
            }

            #[test]
            fn text_round_trip(x in any_path()) {
                prop_assert_eq!(x.to_string().parse::<LatticePath>().unwrap(), x);
            }

            #[test]
            fn components_reassemble(x in any_path()) {
                if let Ok(parts) = x.split_primitive_components() {
                    prop_assert!(parts.iter().all(|c| c.is_primitive()));
                    prop_assert_eq!(LatticePath::join(&parts), x);
                }
            }

            #[test]
            fn last_crossings_reassemble(x in any_path()) {
                if let Ok(parts) = x.split_last_crossings() {
                    prop_assert!(parts.iter().all(|c| c.is_dyck()));
                    let u = LatticePath::ups(1);
                    let mut rebuilt = parts[0].clone();
                    for piece in &parts[1..] {
                        rebuilt = LatticePath::join([&rebuilt, &u, piece]);
                    }
                    prop_assert_eq!(rebuilt, x);
                }
            }
        }
    }
}
