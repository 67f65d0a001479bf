//! Closed-form counts on big integers.
//!
//! Every count is indexed by `(n, k, r)`; identities that take fewer indices
//! ignore the rest. Peak-indexed counts vanish for `k > n` and valley-indexed
//! counts for `2k > n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::GfId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CountId {
    Catalan,
    CPartial,
    F,
    S,
    E,
    L,
    SStar,
    V,
    #[serde(rename = "V_L")]
    VL,
    VStar,
    SpTotal,
    ApTotal,
    SvTotal,
    Alpha,
    Beta,
    SpPartial,
    LpPartial,
    PrimSym,
    PrimLasym,
}

impl CountId {
    pub const ALL: [CountId; 19] = [
        CountId::Catalan,
        CountId::CPartial,
        CountId::F,
        CountId::S,
        CountId::E,
        CountId::L,
        CountId::SStar,
        CountId::V,
        CountId::VL,
        CountId::VStar,
        CountId::SpTotal,
        CountId::ApTotal,
        CountId::SvTotal,
        CountId::Alpha,
        CountId::Beta,
        CountId::SpPartial,
        CountId::LpPartial,
        CountId::PrimSym,
        CountId::PrimLasym,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountId::Catalan => "CATALAN",
            CountId::CPartial => "C_PARTIAL",
            CountId::F => "F",
            CountId::S => "S",
            CountId::E => "E",
            CountId::L => "L",
            CountId::SStar => "S_STAR",
            CountId::V => "V",
            CountId::VL => "V_L",
            CountId::VStar => "V_STAR",
            CountId::SpTotal => "SP_TOTAL",
            CountId::ApTotal => "AP_TOTAL",
            CountId::SvTotal => "SV_TOTAL",
            CountId::Alpha => "ALPHA",
            CountId::Beta => "BETA",
            CountId::SpPartial => "SP_PARTIAL",
            CountId::LpPartial => "LP_PARTIAL",
            CountId::PrimSym => "PRIM_SYM",
            CountId::PrimLasym => "PRIM_LASYM",
        }
    }

    /// Number of indices the count reads: 1 for `n`, 2 for `(n, k)`, 3 for
    /// `(n, k, r)`.
    pub fn arity(self) -> usize {
        match self {
            CountId::Catalan | CountId::SpTotal | CountId::ApTotal | CountId::SvTotal => 1,
            CountId::SpPartial | CountId::LpPartial => 3,
            _ => 2,
        }
    }

    /// Whether `k` counts valley weight (so the count vanishes for `2k > n`).
    pub fn is_valley_indexed(self) -> bool {
        matches!(self, CountId::V | CountId::VL | CountId::VStar)
    }

    /// The generating function whose `[x^n]` is this count at `(n, k, r)`.
    pub fn gf(self, k: usize, r: usize) -> GfId {
        match self {
            CountId::Catalan => GfId::Catalan,
            CountId::CPartial => GfId::CPartial { k },
            CountId::F => GfId::F { k },
            CountId::S => GfId::S { k },
            CountId::E => GfId::E { k },
            CountId::L => GfId::L { k },
            CountId::SStar => GfId::SStar { k },
            CountId::V => GfId::V { k },
            CountId::VL => GfId::VL { k },
            CountId::VStar => GfId::VStar { k },
            CountId::SpTotal => GfId::SpTotal,
            CountId::ApTotal => GfId::ApTotal,
            CountId::SvTotal => GfId::SvTotal,
            CountId::Alpha => GfId::Alpha { k },
            CountId::Beta => GfId::Beta { k },
            CountId::SpPartial => GfId::SpPartial { k, r },
            CountId::LpPartial => GfId::LpPartial { k, r },
            CountId::PrimSym => GfId::PrimSym { k },
            CountId::PrimLasym => GfId::PrimLasym { k },
        }
    }
}

impl fmt::Display for CountId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_ascii_uppercase().replace('-', "_");
        let upper = if upper == "VL" { "V_L".to_string() } else { upper };
        CountId::ALL
            .into_iter()
            .find(|id| id.name() == upper)
            .ok_or_else(|| Error::Unknown(format!("count id {s:?}")))
    }
}

/// `binom(n, k)`, zero outside `0 <= k <= n`; a negative `n` is a domain error.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::Domain(format!("binomial with negative upper index {n}")));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// `num / den`, asserting the division is exact.
fn exact_div(num: BigInt, den: impl Into<BigInt>) -> BigInt {
    let den = den.into();
    let (q, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "inexact division by {den}");
    q
}

fn b(n: usize, k: usize) -> BigInt {
    binomial(n as i64, k as i64).expect("non-negative upper index")
}

pub fn catalan(n: usize) -> BigInt {
    exact_div(b(2 * n, n), n + 1)
}

/// `(m + 3) C_m / 2`, the symmetric weight-`k+1` peak count at `n = k + m`.
fn half_catalan_multiple(m: usize) -> BigInt {
    exact_div(catalan(m) * (m + 3), 2)
}

/// The count `id` at `(n, k, r)`.
pub fn count(id: CountId, n: usize, k: usize, r: usize) -> Result<BigInt> {
    let peak_out = k > n;
    let valley_out = 2 * k > n;
    let zero = BigInt::zero;
    let value = match id {
        CountId::Catalan => catalan(n),
        CountId::CPartial if peak_out => zero(),
        CountId::CPartial => exact_div(b(2 * n - k, n) * (k + 1), n + 1),
        CountId::F if peak_out => zero(),
        CountId::F if n == k => BigInt::one(),
        CountId::F => count(CountId::CPartial, n, k, 0)? + b(2 * n - k - 1, n),
        CountId::S if peak_out => zero(),
        CountId::S if n == k => BigInt::one(),
        CountId::S => half_catalan_multiple(n - k),
        CountId::E if peak_out => zero(),
        CountId::E => b(2 * n - k + 1, n - k),
        CountId::L if peak_out => zero(),
        CountId::L => b(2 * (n - k) + 3, n - k),
        CountId::SStar if peak_out => zero(),
        CountId::SStar => b(2 * (n - k), n - k),
        CountId::V if valley_out => zero(),
        CountId::V => b(2 * (n - k) + 1, n - 2 * k),
        CountId::VL if valley_out => zero(),
        CountId::VL => b(2 * (n - k) + 3, n - 2 * k),
        CountId::VStar if valley_out => zero(),
        CountId::VStar => b(2 * (n - k) + 2, n - 2 * k),
        CountId::SpTotal => {
            BigInt::one() + (1..=n).map(half_catalan_multiple).sum::<BigInt>()
        }
        CountId::ApTotal => (0..=n).map(|i| b(2 * i + 3, i)).sum::<BigInt>() * 2,
        CountId::SvTotal => (0..=n).map(|i| b(2 * i + 1, n + 1)).sum(),
        CountId::Alpha if n < k + 2 => zero(),
        CountId::Alpha => {
            let m = n - k - 2;
            b(2 * m + 1, m)
        }
        CountId::Beta if n < k + 1 => zero(),
        CountId::Beta if n == k + 1 => BigInt::one(),
        CountId::Beta => {
            let m = n - k - 1;
            exact_div(b(2 * m, m), 2)
        }
        CountId::SpPartial | CountId::LpPartial if n < r => {
            return Err(Error::Domain(format!(
                "{id} needs r <= n, got n = {n}, r = {r}"
            )))
        }
        CountId::SpPartial if n < k + r + 1 => zero(),
        CountId::SpPartial => sp_partial(n - k, r),
        CountId::LpPartial if n < k + r + 1 => zero(),
        CountId::LpPartial => lp_partial(n - k, r),
        // the pyramid u^(n+4) d^(n+4) is the only contribution with k > n
        CountId::PrimSym if k == n + 3 => BigInt::one(),
        CountId::PrimSym if peak_out => zero(),
        CountId::PrimSym => b(2 * (n - k) + 3, n - k),
        CountId::PrimLasym if peak_out => zero(),
        CountId::PrimLasym => b(2 * (n - k) + 1, n - k),
    };
    Ok(value)
}

/// Symmetric weight-`k+1` peaks over partial paths, in terms of `m = n - k >= r + 1`.
fn sp_partial(m: usize, r: usize) -> BigInt {
    let first = exact_div(b(2 * m - r - 2, m - 1) * (r + 1), m);
    // binom(2m-r-3, m-r-2), vanishing when m < r + 2
    let second = if m >= r + 2 { b(2 * m - r - 3, m - r - 2) * (r + 1) } else { BigInt::zero() };
    first + second
}

/// Left-asymmetric weight-`k+1` peaks over partial paths, `m = n - k >= r + 1`.
fn lp_partial(m: usize, r: usize) -> BigInt {
    let first = if r >= 1 { b(2 * m - r - 3, m - r - 1) * r } else { BigInt::zero() };
    let second = if m >= r + 3 { b(2 * m - r - 3, m - r - 3) } else { BigInt::zero() };
    first + second
}

/// The symmetric partial count with both terms over upper index `2m - r - 1`
/// and `2m - r - 3`: `(r+1) binom(2m-r-1, m) / (2m-r-1) + (r+1) binom(2m-r-3, m-1)`.
/// `None` where `2m - r - 3 < 0`. Used as a cross-check.
pub fn sp_partial_single_fraction(n: usize, k: usize, r: usize) -> Option<BigInt> {
    let m = n.checked_sub(k)?;
    if m < r + 1 || 2 * m < r + 3 {
        return None;
    }
    let first = exact_div(b(2 * m - r - 1, m) * (r + 1), 2 * m - r - 1);
    let second = b(2 * m - r - 3, m - 1) * (r + 1);
    Some(first + second)
}
