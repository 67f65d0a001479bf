//! Brute-force recounting by explicit enumeration.
//!
//! Nothing here reads the closed forms or the series: every count is obtained
//! by walking the relevant path family and scanning peaks or valleys. Work is
//! measured in scan-steps (paths visited times path length) and checked up
//! front against a cap, so an oversized request fails fast with
//! [`Error::Resource`] instead of running for hours.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::formulas::CountId;
use crate::path::{enumerate, enumerate_primitive, LatticePath, PathKind, Step};
use crate::stats::{scan_records, Statistic, SymmetryClass};

/// Default work cap in scan-steps.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "DYCKSTAT_BRUTE_CAP";

/// [`DEFAULT_CAP`], or the value of `DYCKSTAT_BRUTE_CAP` when it parses.
pub fn cap_from_env() -> u64 {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Number of paths of `kind` and `length`, by a level-by-level walk,
/// saturating at `u128::MAX`.
pub fn path_count(kind: PathKind, length: usize) -> u128 {
    let (end, floor) = match kind {
        PathKind::Dyck => (0i64, true),
        PathKind::PartialDyck(k) => (i64::from(k), true),
        PathKind::FreeDyck => (0, false),
    };
    let offset = length as i64;
    let width = 2 * length + 1;
    let mut ways = vec![0u128; width];
    ways[offset as usize] = 1;
    for _ in 0..length {
        let mut next = vec![0u128; width];
        for (i, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let level = i as i64 - offset;
            if level < offset {
                next[i + 1] = next[i + 1].saturating_add(w);
            }
            if (!floor || level > 0) && level > -offset {
                next[i - 1] = next[i - 1].saturating_add(w);
            }
        }
        ways = next;
    }
    let idx = end + offset;
    if idx < 0 || idx as usize >= width {
        0
    } else {
        ways[idx as usize]
    }
}

/// Running tally of planned work against the cap.
struct Budget {
    planned: u128,
    cap: u64,
}

impl Budget {
    fn new(cap: u64) -> Self {
        Self { planned: 0, cap }
    }

    fn plan(&mut self, paths: u128, length: usize) {
        self.planned = self.planned.saturating_add(paths.saturating_mul(length.max(1) as u128));
    }

    fn check(&self) -> Result<()> {
        if self.planned > u128::from(self.cap) {
            return Err(Error::Resource {
                work: u64::try_from(self.planned).unwrap_or(u64::MAX),
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Which records to count: statistic, admitted classes, and an optional
/// exact weight.
#[derive(Clone, Copy)]
struct Marks {
    statistic: Statistic,
    classes: &'static [SymmetryClass],
    weight: Option<usize>,
}

const SYM: &[SymmetryClass] = &[SymmetryClass::Symmetric];
const LEFT: &[SymmetryClass] = &[SymmetryClass::LeftAsymmetric];
const SYM_LEFT: &[SymmetryClass] = &[SymmetryClass::Symmetric, SymmetryClass::LeftAsymmetric];
const ASYM: &[SymmetryClass] = &[SymmetryClass::LeftAsymmetric, SymmetryClass::RightAsymmetric];

impl Marks {
    fn new(statistic: Statistic, classes: &'static [SymmetryClass], weight: Option<usize>) -> Self {
        Self { statistic, classes, weight }
    }

    fn count_in(&self, path: &LatticePath) -> u64 {
        scan_records(path, self.statistic)
            .iter()
            .filter(|r| self.classes.contains(&r.class()))
            .filter(|r| self.weight.is_none_or(|w| w == r.weight()))
            .count() as u64
    }
}

/// What to enumerate for one count.
enum Plan {
    /// Total marks over every path of a kind and length.
    Marks { kind: PathKind, length: usize, marks: Marks },
    /// Marks over `u P` for every Dyck path `P` of the given length.
    Lifted { length: usize, marks: Marks },
    /// Marks over primitive paths of the given length.
    Primitive { length: usize, marks: Marks },
    /// Paths of one kind and length.
    Paths { kind: PathKind, length: usize },
    /// Pairs (first, second) with the first path free (all of them, or only
    /// the empty one and those starting `ud`) and the second partial ending
    /// at `level`, of combined length `total`.
    Pairs { total: usize, level: usize, first_starts_ud: bool },
    Zero,
}

fn plan(id: CountId, n: usize, k: usize, r: usize) -> Result<Plan> {
    use Statistic::{Peak, Valley};
    let peak = |classes, dyck_n: usize| Plan::Marks {
        kind: PathKind::Dyck,
        length: 2 * dyck_n,
        marks: Marks::new(Peak, classes, Some(k + 1)),
    };
    let valley = |classes, dyck_n: usize| Plan::Marks {
        kind: PathKind::Dyck,
        length: 2 * dyck_n,
        marks: Marks::new(Valley, classes, Some(k + 1)),
    };
    let p = match id {
        CountId::Catalan => Plan::Paths { kind: PathKind::Dyck, length: 2 * n },
        CountId::CPartial if k > n => Plan::Zero,
        CountId::CPartial => Plan::Paths { kind: PathKind::PartialDyck(k as u32), length: 2 * n - k },
        CountId::F if k > n => Plan::Zero,
        CountId::F => Plan::Pairs { total: 2 * n - k, level: k, first_starts_ud: true },
        CountId::E if k > n => Plan::Zero,
        CountId::E => Plan::Pairs { total: 2 * n - k, level: k, first_starts_ud: false },
        CountId::S => peak(SYM, n + 1),
        CountId::L => peak(LEFT, n + 3),
        CountId::SStar => peak(SYM_LEFT, n + 1),
        CountId::V => valley(SYM, n + 2),
        CountId::VL => valley(LEFT, n + 3),
        CountId::VStar => valley(SYM_LEFT, n + 2),
        CountId::SpTotal => Plan::Marks {
            kind: PathKind::Dyck,
            length: 2 * (n + 1),
            marks: Marks::new(Peak, SYM, None),
        },
        CountId::ApTotal => Plan::Marks {
            kind: PathKind::Dyck,
            length: 2 * (n + 3),
            marks: Marks::new(Peak, ASYM, None),
        },
        CountId::SvTotal => Plan::Marks {
            kind: PathKind::Dyck,
            length: 2 * (n + 2),
            marks: Marks::new(Valley, SYM, None),
        },
        CountId::Alpha => Plan::Lifted { length: 2 * n, marks: Marks::new(Peak, SYM, Some(k + 1)) },
        CountId::Beta => Plan::Lifted { length: 2 * n, marks: Marks::new(Peak, LEFT, Some(k + 1)) },
        CountId::SpPartial | CountId::LpPartial if n < r => {
            return Err(Error::Domain(format!("{id} needs r <= n, got n = {n}, r = {r}")))
        }
        CountId::SpPartial | CountId::LpPartial => Plan::Marks {
            kind: PathKind::PartialDyck(r as u32),
            length: 2 * n - r,
            marks: Marks::new(
                Peak,
                if id == CountId::SpPartial { SYM } else { LEFT },
                Some(k + 1),
            ),
        },
        CountId::PrimSym => Plan::Primitive { length: 2 * (n + 4), marks: Marks::new(Peak, SYM, Some(k + 1)) },
        CountId::PrimLasym => Plan::Primitive { length: 2 * (n + 3), marks: Marks::new(Peak, LEFT, Some(k + 1)) },
    };
    Ok(p)
}

fn estimate(p: &Plan, budget: &mut Budget) {
    match *p {
        Plan::Marks { kind, length, .. } | Plan::Paths { kind, length } => {
            budget.plan(path_count(kind, length), length)
        }
        Plan::Lifted { length, .. } => budget.plan(path_count(PathKind::Dyck, length), length + 1),
        Plan::Primitive { length, .. } => budget.plan(path_count(PathKind::Dyck, length - 2), length),
        Plan::Pairs { total, level, .. } => {
            for a in (0..=total - level).step_by(2) {
                budget.plan(path_count(PathKind::FreeDyck, a), a);
                budget.plan(path_count(PathKind::PartialDyck(level as u32), total - a), total - a);
            }
        }
        Plan::Zero => {}
    }
}

fn run(p: Plan) -> Result<BigInt> {
    let total: u64 = match p {
        Plan::Zero => 0,
        Plan::Paths { kind, length } => enumerate(kind, length)?.count() as u64,
        Plan::Marks { kind, length, marks } => enumerate(kind, length)?.map(|x| marks.count_in(&x)).sum(),
        Plan::Lifted { length, marks } => {
            let u = LatticePath::ups(1);
            enumerate(PathKind::Dyck, length)?.map(|x| marks.count_in(&u.concat(&x))).sum()
        }
        Plan::Primitive { length, marks } => enumerate_primitive(length)?.map(|x| marks.count_in(&x)).sum(),
        Plan::Pairs { total, level, first_starts_ud } => {
            let mut acc = BigInt::zero();
            for a in (0..=total - level).step_by(2) {
                let firsts = enumerate(PathKind::FreeDyck, a)?
                    .filter(|x| !first_starts_ud || x.is_empty() || x.starts_with(&[Step::U, Step::D]))
                    .count();
                let seconds = enumerate(PathKind::PartialDyck(level as u32), total - a)?.count();
                acc += BigInt::from(firsts) * BigInt::from(seconds);
            }
            return Ok(acc);
        }
    };
    Ok(BigInt::from(total))
}

/// Brute-force count with an explicit work cap.
pub fn brute_count_with_cap(id: CountId, n: usize, k: usize, r: usize, cap: u64) -> Result<BigInt> {
    let p = plan(id, n, k, r)?;
    let mut budget = Budget::new(cap);
    estimate(&p, &mut budget);
    budget.check()?;
    run(p)
}

/// Brute-force count under [`cap_from_env`].
pub fn brute_count(id: CountId, n: usize, k: usize, r: usize) -> Result<BigInt> {
    brute_count_with_cap(id, n, k, r, cap_from_env())
}

/// Planned scan-steps for a count, without running it.
pub fn planned_work(id: CountId, n: usize, k: usize, r: usize) -> Result<u64> {
    let p = plan(id, n, k, r)?;
    let mut budget = Budget::new(u64::MAX);
    estimate(&p, &mut budget);
    Ok(u64::try_from(budget.planned).unwrap_or(u64::MAX))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(id: CountId, n: usize, k: usize, r: usize) -> u64 {
        u64::try_from(brute_count_with_cap(id, n, k, r, DEFAULT_CAP).unwrap()).unwrap()
    }

    #[test]
    fn path_counts() {
        assert_eq!(path_count(PathKind::Dyck, 10), 42);
        assert_eq!(path_count(PathKind::FreeDyck, 6), 20);
        assert_eq!(path_count(PathKind::PartialDyck(1), 5), 5);
        assert_eq!(path_count(PathKind::Dyck, 3), 0);
        assert_eq!(path_count(PathKind::Dyck, 0), 1);
        for len in 0..=12 {
            for kind in [PathKind::Dyck, PathKind::FreeDyck, PathKind::PartialDyck(2)] {
                let listed = enumerate(kind, len).map(|it| it.count() as u128).unwrap_or(0);
                assert_eq!(path_count(kind, len), listed, "{kind:?} {len}");
            }
        }
    }

    #[test]
    fn small_counts_by_hand() {
        assert_eq!(bc(CountId::Catalan, 4, 0, 0), 14);
        assert_eq!(bc(CountId::SpTotal, 0, 0, 0), 1);
        assert_eq!(bc(CountId::ApTotal, 0, 0, 0), 2);
        assert_eq!(bc(CountId::SvTotal, 0, 0, 0), 1);
        assert_eq!(bc(CountId::S, 3, 0, 0), 15);
        assert_eq!(bc(CountId::F, 1, 0, 0), 2);
        assert_eq!(bc(CountId::Alpha, 3, 0, 0), 3);
        assert_eq!(bc(CountId::Beta, 3, 0, 0), 3);
        assert_eq!(bc(CountId::SpPartial, 2, 0, 1), 1);
        assert_eq!(bc(CountId::LpPartial, 2, 0, 1), 1);
        assert_eq!(bc(CountId::PrimSym, 0, 0, 0), 1);
        assert_eq!(bc(CountId::PrimLasym, 0, 0, 0), 1);
        assert_eq!(bc(CountId::S, 1, 3, 0), 0);
    }

    #[test]
    fn caps_fail_fast() {
        let err = brute_count_with_cap(CountId::S, 20, 0, 0, 1000).unwrap_err();
        assert!(matches!(err, Error::Resource { cap: 1000, .. }));
        assert!(planned_work(CountId::S, 3, 0, 0).unwrap() <= DEFAULT_CAP);
        assert!(matches!(brute_count_with_cap(CountId::SpPartial, 1, 0, 3, 10), Err(Error::Domain(_))));
    }
}
