//! Truncated formal power series with exact integer coefficients, Riordan
//! arrays, and the catalogue of generating functions for every count in the
//! crate.
//!
//! A series of order `N` stores `c_0..=c_N`. Binary operations truncate to the
//! smaller order. Division only ever happens through [`Series::inverse`],
//! which requires a constant term of `±1`, so everything stays in the
//! integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    /// Builds a series of order `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least c_0");
        Self { coeffs }
    }

    pub fn from_i64s(order: usize, values: &[i64]) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (c, v) in coeffs.iter_mut().zip(values) {
            *c = BigInt::from(*v);
        }
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// `x^m`, truncated (so zero when `m > order`).
    pub fn monomial(m: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if m <= order {
            s.coeffs[m] = BigInt::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `[x^n]`, zero beyond the stored order.
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Multiplies by `x^m`.
    pub fn shift(&self, m: usize) -> Self {
        let mut out = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + m > self.order() {
                break;
            }
            out.coeffs[i + m] = c.clone();
        }
        out
    }

    pub fn scale(&self, factor: impl Into<BigInt>) -> Self {
        let f = factor.into();
        Self { coeffs: self.coeffs.iter().map(|c| c * &f).collect() }
    }

    pub fn pow(&self, m: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.abs().is_one()) {
            return Err(Error::Domain(format!(
                "series with constant term {c0} has no integer inverse"
            )));
        }
        let n = self.order();
        let mut inv = vec![BigInt::zero(); n + 1];
        inv[0] = c0.clone();
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=m {
                acc += &self.coeffs[i] * &inv[m - i];
            }
            // c0 * inv_m = -acc, and c0 is its own inverse
            inv[m] = -(acc * c0);
        }
        Ok(Self { coeffs: inv })
    }

    /// `1 / (1 - self) = sum of self^m`; needs a zero constant term.
    pub fn geometric(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("geometric series needs a zero constant term".into()));
        }
        let mut acc = Self::one(self.order());
        let mut term = Self::one(self.order());
        for _ in 0..self.order() {
            term = &term * self;
            if term.valuation().is_none() {
                break;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter().map(|c| c.to_string())).finish()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series {
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Cauchy product.
impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Series { coeffs }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// `C(x)`, Catalan numbers, from the convolution `C_{n+1} = sum C_i C_{n-i}`.
pub fn catalan_series(order: usize) -> Series {
    let mut c: Vec<BigInt> = Vec::with_capacity(order + 1);
    c.push(BigInt::one());
    for n in 0..order {
        let next: BigInt = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    Series::from_coeffs(c)
}

/// `1/sqrt(1 - 4x)`, central binomial coefficients, from
/// `b_n = b_{n-1} * 2(2n - 1) / n`.
pub fn central_binomial_series(order: usize) -> Series {
    let mut b: Vec<BigInt> = Vec::with_capacity(order + 1);
    b.push(BigInt::one());
    for n in 1..=order {
        let prev = &b[n - 1];
        let num = prev * BigInt::from(2 * (2 * n - 1));
        debug_assert!((&num % BigInt::from(n)).is_zero());
        b.push(num / BigInt::from(n));
    }
    Series::from_coeffs(b)
}

/// `d(x) h(x)^k` columns with a shared, synchronised power cache.
pub struct RiordanArray {
    d: Series,
    h: Series,
    powers: Mutex<Vec<Series>>,
}

impl RiordanArray {
    pub fn new(d: Series, h: Series) -> Result<Self> {
        if !d.coeffs[0].is_one() {
            return Err(Error::Domain("Riordan array needs d(0) = 1".into()));
        }
        if !h.coeffs[0].is_zero() {
            return Err(Error::Domain("Riordan array needs h(0) = 0".into()));
        }
        let order = d.order().min(h.order());
        let d = d.truncate(order);
        let h = h.truncate(order);
        Ok(Self { powers: Mutex::new(vec![Series::one(order)]), d, h })
    }

    pub fn order(&self) -> usize {
        self.d.order()
    }

    /// `h'(0) != 0`.
    pub fn is_proper(&self) -> bool {
        self.order() >= 1 && !self.h.coeffs[1].is_zero()
    }

    fn h_power(&self, k: usize) -> Series {
        let mut cache = self.powers.lock().expect("power cache poisoned");
        while cache.len() <= k {
            let next = cache.last().unwrap() * &self.h;
            cache.push(next);
        }
        cache[k].clone()
    }

    /// `[x^n] d(x) h(x)^k`.
    pub fn entry(&self, n: usize, k: usize) -> Result<BigInt> {
        if n > self.order() || k > self.order() {
            return Err(Error::Domain(format!(
                "entry ({n},{k}) outside a Riordan array of order {}",
                self.order()
            )));
        }
        Ok((&self.d * &self.h_power(k)).coeff(n))
    }

    pub fn column(&self, k: usize) -> Series {
        &self.d * &self.h_power(k)
    }

    /// Sums of the first `order + 1` rows, as a series.
    pub fn row_sums(&self) -> Series {
        let order = self.order();
        let mut acc = Series::zero(order);
        for k in 0..=order {
            acc = acc + self.column(k);
        }
        acc
    }
}

/// Keys of the generating-function catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GfId {
    Catalan,
    CPartial { k: usize },
    SpTotal,
    ApTotal,
    SvTotal,
    F { k: usize },
    S { k: usize },
    E { k: usize },
    L { k: usize },
    SStar { k: usize },
    V { k: usize },
    VL { k: usize },
    VStar { k: usize },
    Alpha { k: usize },
    Beta { k: usize },
    SpPartial { k: usize, r: usize },
    LpPartial { k: usize, r: usize },
    PrimSym { k: usize },
    PrimLasym { k: usize },
}

impl FromStr for GfId {
    type Err = Error;

    /// `SP_TOTAL`, `S_3`, `SP_PARTIAL_1_2` (k then r), case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_ascii_uppercase();
        let unknown = || Error::Unknown(format!("generating function {s:?}"));
        let fixed = match upper.as_str() {
            "CATALAN" => Some(GfId::Catalan),
            "SP_TOTAL" => Some(GfId::SpTotal),
            "AP_TOTAL" => Some(GfId::ApTotal),
            "SV_TOTAL" => Some(GfId::SvTotal),
            _ => None,
        };
        if let Some(id) = fixed {
            return Ok(id);
        }
        let (stem, nums) = {
            let mut parts: Vec<&str> = upper.split('_').collect();
            let mut nums = Vec::new();
            while let Some(last) = parts.last() {
                match last.parse::<usize>() {
                    Ok(v) => {
                        nums.insert(0, v);
                        parts.pop();
                    }
                    Err(_) => break,
                }
            }
            (parts.join("_"), nums)
        };
        let id = match (stem.as_str(), nums.as_slice()) {
            ("C_PARTIAL", [k]) => GfId::CPartial { k: *k },
            ("F", [k]) => GfId::F { k: *k },
            ("S", [k]) => GfId::S { k: *k },
            ("E", [k]) => GfId::E { k: *k },
            ("L", [k]) => GfId::L { k: *k },
            ("S_STAR", [k]) => GfId::SStar { k: *k },
            ("V", [k]) => GfId::V { k: *k },
            ("VL" | "V_L", [k]) => GfId::VL { k: *k },
            ("V_STAR", [k]) => GfId::VStar { k: *k },
            ("ALPHA", [k]) => GfId::Alpha { k: *k },
            ("BETA", [k]) => GfId::Beta { k: *k },
            ("SP_PARTIAL", [k, r]) => GfId::SpPartial { k: *k, r: *r },
            ("LP_PARTIAL", [k, r]) => GfId::LpPartial { k: *k, r: *r },
            ("PRIM_SYM", [k]) => GfId::PrimSym { k: *k },
            ("PRIM_LASYM", [k]) => GfId::PrimLasym { k: *k },
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

/// The named generating function, truncated at `order`.
pub fn named_gf(id: GfId, order: usize) -> Series {
    let c = catalan_series(order);
    let p = central_binomial_series(order);
    let x = |m: usize| Series::monomial(m, order);
    let one = Series::one(order);
    // 1 + x P
    let one_plus_xp = &one + &p.shift(1);
    let inv_one_minus_x = x(1).geometric().expect("zero constant term");
    match id {
        GfId::Catalan => c,
        GfId::CPartial { k } => c.pow(k + 1).shift(k),
        GfId::SpTotal => &c * &inv_one_minus_x * &one_plus_xp,
        GfId::ApTotal => (c.pow(3) * &inv_one_minus_x * &p).scale(2),
        GfId::SvTotal => {
            let x2c2 = c.pow(2).shift(2);
            &c * &p * x2c2.geometric().expect("zero constant term")
        }
        GfId::F { k } => (&one_plus_xp * &c.pow(k + 1)).shift(k),
        GfId::S { k } => (&c * &one_plus_xp).shift(k),
        GfId::E { k } => (c.pow(k + 1) * &p).shift(k),
        GfId::L { k } => (c.pow(3) * &p).shift(k),
        GfId::SStar { k } => p.shift(k),
        GfId::V { k } => (c.pow(2 * k + 1) * &p).shift(2 * k),
        GfId::VL { k } => (c.pow(2 * k + 3) * &p).shift(2 * k),
        GfId::VStar { k } => (c.pow(2 * k + 2) * &p).shift(2 * k),
        GfId::Alpha { k } => (&c * &p).shift(k + 2),
        GfId::Beta { k } => {
            let c_inv = c.inverse().expect("C(0) = 1");
            (&c_inv * &p).shift(k + 1)
        }
        GfId::SpPartial { k, r } => {
            let bracket = &one + &p.shift(1).scale(r as u64 + 1);
            (c.pow(r + 1) * &bracket).shift(k + r + 1)
        }
        GfId::LpPartial { k, r } => {
            // C^(r-1) P (r + x^2 C^4), with C^(-1) when r = 0
            let c_rm1 = if r == 0 { c.inverse().expect("C(0) = 1") } else { c.pow(r - 1) };
            let bracket = &one.scale(r as u64) + &c.pow(4).shift(2);
            (c_rm1 * &p * &bracket).shift(k + r + 1)
        }
        GfId::PrimSym { k } => {
            // x^k C^3 P misses the full pyramid, which has weight n + 4
            let main = (c.pow(3) * &p).shift(k);
            if k >= 3 {
                &main + &x(k - 3)
            } else {
                main
            }
        }
        GfId::PrimLasym { k } => (&c * &p).shift(k),
    }
}

/// Riordan arrays of the printed triangles, keyed by table id.
pub fn table_array(table: &str, order: usize) -> Result<RiordanArray> {
    let c = catalan_series(order);
    let p = central_binomial_series(order);
    let one = Series::one(order);
    let x = Series::monomial(1, order);
    let xc = c.shift(1);
    let x2c2 = c.pow(2).shift(2);
    let (d, h) = match table {
        "1.1" => (c.clone(), xc),
        "2.1" => (&c * &(&one + &p.shift(1)), xc),
        "2.2" => (&c * &(&one + &p.shift(1)), x),
        "2.3" => (&c * &p, xc),
        "2.4" => (c.pow(3) * &p, x),
        "2.5" => (p.clone(), x),
        "3.1" => (&c * &p, x2c2),
        "3.2" => (c.pow(3) * &p, x2c2),
        "3.3" => (c.pow(2) * &p, x2c2),
        other => return Err(Error::Unknown(format!("table {other:?}"))),
    };
    RiordanArray::new(d, h)
}
