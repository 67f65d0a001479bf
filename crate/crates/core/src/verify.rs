//! Self-check suites tying closed forms, series and brute force together.
//!
//! A suite never fails with an error: every problem, including an oracle
//! request over its work cap, is recorded in the [`Report`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bijection::{
    e_elements, eta, eta_inv, f_elements, phi, phi_inv, phi_prime, phi_prime_inv, pyramid_drop,
    pyramid_lift, rho, rho_inv, theta, theta_inv, valley_shift, valley_shift_inv, MarkedFamily,
    PathPair,
};
use crate::error::{Error, Result};
use crate::formulas::{self, binomial, CountId};
use crate::oracle;
use crate::series::{catalan_series, central_binomial_series, named_gf, table_array, GfId, Series};
use crate::stats::MarkedPath;
use crate::tables::TABLES;

/// How a count is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Series,
    Brute,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Formula, Method::Series, Method::Brute];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Formula => "formula",
            Method::Series => "series",
            Method::Brute => "brute",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(Method::Formula),
            "series" => Ok(Method::Series),
            "brute" => Ok(Method::Brute),
            other => Err(Error::Unknown(format!("method {other:?}"))),
        }
    }
}

/// The count `id` at `(n, k, r)` by the chosen method. The brute-force
/// method honours `DYCKSTAT_BRUTE_CAP`.
pub fn evaluate(method: Method, id: CountId, n: usize, k: usize, r: usize) -> Result<BigInt> {
    match method {
        Method::Formula => formulas::count(id, n, k, r),
        Method::Brute => oracle::brute_count(id, n, k, r),
        Method::Series => {
            if matches!(id, CountId::SpPartial | CountId::LpPartial) && n < r {
                return Err(Error::Domain(format!("{id} needs r <= n, got n = {n}, r = {r}")));
            }
            Ok(named_gf(id.gf(k, r), n).coeff(n))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tables,
    Bijections,
    Series,
    Sequences,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tables" => Ok(Suite::Tables),
            "bijections" => Ok(Suite::Bijections),
            "series" => Ok(Suite::Series),
            "sequences" => Ok(Suite::Sequences),
            "all" => Ok(Suite::All),
            other => Err(Error::Unknown(format!("suite {other:?}"))),
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Individual comparisons made.
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, cases: 0, counterexample: None, note: None }
    }

    /// Records one comparison; the first failure is kept.
    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.expect(false, || message);
    }

    fn note(&mut self, text: String) {
        match &mut self.note {
            Some(existing) => {
                existing.push_str("; ");
                existing.push_str(&text);
            }
            None => self.note = Some(text),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: Suite, max_n: usize, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { suite, max_n, passed, checks }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {} ({} cases)", if c.passed { "PASS" } else { "FAIL" }, c.name, c.cases)?;
            if let Some(x) = &c.counterexample {
                write!(f, ": {x}")?;
            }
            if let Some(note) = &c.note {
                write!(f, " [{note}]")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed { "all checks passed" } else { "some checks failed" })
    }
}

/// Largest domain the bijection suite enumerates by default.
pub const DEFAULT_SIZE_LIMIT: usize = 5000;

pub fn run_suite(suite: Suite, max_n: usize) -> Report {
    let checks = match suite {
        Suite::Tables => table_checks(max_n),
        Suite::Bijections => bijection_checks(max_n, DEFAULT_SIZE_LIMIT),
        Suite::Series => series_checks(max_n.max(20)),
        Suite::Sequences => sequence_checks(max_n),
        Suite::All => {
            let mut all = table_checks(max_n);
            all.extend(bijection_checks(max_n, DEFAULT_SIZE_LIMIT));
            all.extend(series_checks(max_n.max(20)));
            all.extend(sequence_checks(max_n));
            all
        }
    };
    Report::new(suite, max_n, checks)
}

fn show(v: &Result<BigInt>) -> String {
    match v {
        Ok(x) => x.to_string(),
        Err(e) => format!("error ({e})"),
    }
}

/// Every printed cell with `n <= max_n`, against all three methods.
pub fn table_checks(max_n: usize) -> Vec<Check> {
    TABLES
        .iter()
        .map(|t| {
            let mut check = Check::new(format!("table {}", t.id));
            let rows = (max_n + 1).min(t.printed.len());
            let computed: Vec<_> = Method::ALL.iter().map(|&m| (m, t.compute(rows, m))).collect();
            for (m, res) in &computed {
                if let Err(e) = res {
                    check.fail(format!("{m}: {e}"));
                }
            }
            if !check.passed {
                return check;
            }
            let computed: Vec<(Method, Vec<Vec<BigInt>>)> =
                computed.into_iter().map(|(m, r)| (m, r.unwrap())).collect();
            for (n, row) in t.printed.iter().take(rows).enumerate() {
                for (k, &printed) in row.iter().enumerate() {
                    let values: Vec<&BigInt> = computed.iter().map(|(_, r)| &r[n][k]).collect();
                    let expected = match t.misprint(n, k) {
                        Some(m) => {
                            check.note(format!(
                                "({n},{k}) printed {} but every method gives {}",
                                m.printed, m.actual
                            ));
                            m.actual
                        }
                        None => printed,
                    };
                    let expected = BigInt::from(expected);
                    check.expect(values.iter().all(|v| **v == expected), || {
                        let parts: Vec<String> = computed
                            .iter()
                            .map(|(m, r)| format!("{m} {}", r[n][k]))
                            .collect();
                        format!("({n},{k}) printed {printed}, {}", parts.join(", "))
                    });
                }
            }
            check
        })
        .collect()
}

/// Exhaustive check that `fwd` and `inv` are mutually inverse between the
/// listed domain and codomain, with images inside the codomain.
pub fn round_trip<A, B>(
    name: String,
    domain: &[A],
    codomain: &[B],
    fwd: impl Fn(&A) -> Result<B>,
    inv: impl Fn(&B) -> Result<A>,
    in_codomain: impl Fn(&B) -> bool,
) -> Check
where
    A: PartialEq + fmt::Display,
    B: Ord + Clone + fmt::Display,
{
    let mut check = Check::new(name);
    check.expect(domain.len() == codomain.len(), || {
        format!("domain has {} elements, codomain {}", domain.len(), codomain.len())
    });
    let mut images = Vec::with_capacity(domain.len());
    for x in domain {
        match fwd(x) {
            Ok(y) => {
                check.expect(in_codomain(&y), || format!("{x} -> {y} lands outside the codomain"));
                let back = inv(&y);
                check.expect(back.as_ref().is_ok_and(|b| b == x), || match &back {
                    Ok(b) => format!("{x} -> {y} -> {b}"),
                    Err(e) => format!("{x} -> {y}, inverse failed: {e}"),
                });
                images.push(y);
            }
            Err(e) => check.fail(format!("{x}: {e}")),
        }
    }
    images.sort();
    images.dedup();
    check.expect(images.len() == codomain.len(), || {
        format!("{} distinct images for a codomain of {}", images.len(), codomain.len())
    });
    for y in codomain {
        let there = inv(y).and_then(|x| fwd(&x));
        check.expect(there.as_ref().is_ok_and(|z| z == y), || match &there {
            Ok(z) => format!("{y} -> inverse -> {z}"),
            Err(e) => format!("{y}: {e}"),
        });
    }
    check
}

fn size(id: CountId, n: usize, k: usize) -> usize {
    formulas::count(id, n, k, 0)
        .ok()
        .and_then(|v| usize::try_from(v).ok())
        .unwrap_or(usize::MAX)
}

/// Round trips of every bijection for `n <= max_n`, skipping domains larger
/// than `size_limit`.
pub fn bijection_checks(max_n: usize, size_limit: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let mut family = |name: &str, cases: Vec<Check>| {
        let mut merged = Check::new(name);
        for c in cases {
            merged.cases += c.cases;
            if !c.passed && merged.passed {
                merged.passed = false;
                merged.counterexample = Some(format!("{}: {}", c.name, c.counterexample.unwrap_or_default()));
            }
        }
        out.push(merged);
    };
    let fits = |id, n, k| size(id, n, k) <= size_limit;

    for j in [1usize, 2] {
        let mut cases = Vec::new();
        for n in 0..=max_n {
            for k in 0..=n {
                if !fits(CountId::SStar, n, k) || !fits(CountId::SStar, n + j, k + j) {
                    continue;
                }
                cases.push(round_trip(
                    format!("S*({n},{k}) -> S*({},{})", n + j, k + j),
                    &MarkedFamily::SStar.elements(n, k),
                    &MarkedFamily::SStar.elements(n + j, k + j),
                    |m| pyramid_lift(m, j),
                    |m| pyramid_drop(m, j),
                    |m: &MarkedPath| MarkedFamily::SStar.contains(m, n + j, k + j),
                ));
            }
        }
        family(&format!("pyramid lift/drop j={j}"), cases);
    }

    let mut cases = Vec::new();
    for n in (0..=max_n).filter(|&n| fits(CountId::S, n, 0)) {
        cases.push(round_trip(
            format!("S({n},0) -> F({n},0)"),
            &MarkedFamily::S.elements(n, 0),
            &f_elements(n, 0),
            phi,
            phi_inv,
            |y: &PathPair| y.check_f(n, 0).is_ok(),
        ));
    }
    family("phi", cases);

    let mut cases = Vec::new();
    for n in (0..=max_n).filter(|&n| fits(CountId::L, n, 0)) {
        cases.push(round_trip(
            format!("L({n},0) -> E({},2)", n + 2),
            &MarkedFamily::L.elements(n, 0),
            &e_elements(n + 2, 2),
            phi_prime,
            phi_prime_inv,
            |y: &PathPair| y.check_e(n + 2, 2).is_ok(),
        ));
    }
    family("phi_prime", cases);

    let mut cases = Vec::new();
    for n in 0..=max_n {
        for k in (0..=n / 2).filter(|&k| fits(CountId::V, n, k)) {
            cases.push(round_trip(
                format!("V({n},{k}) -> E({n},{})", 2 * k),
                &MarkedFamily::V.elements(n, k),
                &e_elements(n, 2 * k),
                theta,
                theta_inv,
                |y: &PathPair| y.check_e(n, 2 * k).is_ok(),
            ));
        }
    }
    family("theta", cases);

    let mut cases = Vec::new();
    for n in 0..=max_n {
        for k in (0..=n / 2).filter(|&k| fits(CountId::VL, n, k)) {
            cases.push(round_trip(
                format!("VL({n},{k}) -> E({},{})", n + 2, 2 * k + 2),
                &MarkedFamily::VL.elements(n, k),
                &e_elements(n + 2, 2 * k + 2),
                rho,
                rho_inv,
                |y: &PathPair| y.check_e(n + 2, 2 * k + 2).is_ok(),
            ));
        }
    }
    family("rho", cases);

    let mut cases = Vec::new();
    for n in (0..=max_n).filter(|&n| fits(CountId::L, n, 0)) {
        cases.push(round_trip(
            format!("L({n},0) -> V({},1)", n + 2),
            &MarkedFamily::L.elements(n, 0),
            &MarkedFamily::V.elements(n + 2, 1),
            eta,
            eta_inv,
            |m: &MarkedPath| MarkedFamily::V.contains(m, n + 2, 1),
        ));
    }
    family("eta", cases);

    let mut cases = Vec::new();
    for n in 0..=max_n {
        for k in (0..=n / 2).filter(|&k| fits(CountId::VL, n, k)) {
            cases.push(round_trip(
                format!("V({},{}) -> VL({n},{k})", n + 2, k + 1),
                &MarkedFamily::V.elements(n + 2, k + 1),
                &MarkedFamily::VL.elements(n, k),
                valley_shift,
                valley_shift_inv,
                |m: &MarkedPath| MarkedFamily::VL.contains(m, n, k),
            ));
        }
    }
    family("valley_shift", cases);
    out
}

fn series_check(name: &str, pairs: impl IntoIterator<Item = (String, Series, Series)>) -> Check {
    let mut check = Check::new(name);
    for (label, lhs, rhs) in pairs {
        check.expect(lhs == rhs, || {
            let at = (0..=lhs.order().min(rhs.order()))
                .find(|&i| lhs.coeff(i) != rhs.coeff(i))
                .unwrap_or(0);
            format!("{label}: [x^{at}] {} vs {}", lhs.coeff(at), rhs.coeff(at))
        });
    }
    check
}

/// Generating-function identities, coefficientwise to `order`.
pub fn series_checks(order: usize) -> Vec<Check> {
    let c = catalan_series(order);
    let p = central_binomial_series(order);
    let one = Series::one(order);
    let x = |m| Series::monomial(m, order);
    let root = &one - &c.shift(1).scale(2);
    let one_minus_4x = Series::from_i64s(order, &[1, -4]);
    let gf = |id| named_gf(id, order);
    let ks = 0..=4usize;

    let mut out = vec![
        series_check(
            "catalan functional equation",
            [
                ("C = 1 + xC^2".to_string(), c.clone(), &one + &c.pow(2).shift(1)),
                ("C (1 - xC) = 1".to_string(), &c * &(&one - &c.shift(1)), one.clone()),
            ],
        ),
        series_check(
            "square root of 1-4x",
            [
                ("(1-2xC)^2 = 1-4x".to_string(), &root * &root, one_minus_4x.clone()),
                ("(1-2xC) P = 1".to_string(), &root * &p, one.clone()),
            ],
        ),
    ];

    let mut expansion = Check::new("C^r/sqrt(1-4x) = sum binom(2n+r, n) x^n");
    for r in 0..=4usize {
        let s = c.pow(r) * &p;
        for n in 0..=order {
            let b = binomial((2 * n + r) as i64, n as i64).expect("non-negative");
            expansion.expect(s.coeff(n) == b, || format!("r={r}, n={n}: {} vs {b}", s.coeff(n)));
        }
    }
    out.push(expansion);

    out.push(series_check(
        "S_k + x^2 L_k = x^k/sqrt(1-4x)",
        ks.clone().map(|k| {
            (format!("k={k}"), &gf(GfId::S { k }) + &gf(GfId::L { k }).shift(2), p.shift(k))
        }),
    ));
    out.push(series_check(
        "V_k + x VL_k = V*_k",
        ks.clone().map(|k| {
            (format!("k={k}"), &gf(GfId::V { k }) + &gf(GfId::VL { k }).shift(1), gf(GfId::VStar { k }))
        }),
    ));
    out.push(series_check(
        "alpha_k = x S_k - x^{k+1} C",
        ks.clone().map(|k| {
            (format!("k={k}"), gf(GfId::Alpha { k }), &gf(GfId::S { k }).shift(1) - &c.shift(k + 1))
        }),
    ));
    out.push(series_check(
        "beta_k = x^3 L_k + x^{k+1} C = x^{k+1}(1 + P)/2",
        ks.clone().flat_map(|k| {
            let beta = gf(GfId::Beta { k });
            [
                (format!("k={k} via L"), beta.clone(), &gf(GfId::L { k }).shift(3) + &c.shift(k + 1)),
                (format!("k={k} halved"), beta.scale(2), (&one + &p).shift(k + 1)),
            ]
        }),
    ));
    let geo = x(1).geometric().expect("zero constant term");
    let one_minus_x = Series::from_i64s(order, &[1, -1]);
    out.push(series_check(
        "totals in elementary form",
        [
            (
                "2x sp = 1 + (5x-1) P/(1-x)".to_string(),
                gf(GfId::SpTotal).shift(1).scale(2),
                &one + &(Series::from_i64s(order, &[-1, 5]) * &p * &geo),
            ),
            (
                "x^3 ap = (1-3x) P/(1-x) - 1".to_string(),
                gf(GfId::ApTotal).shift(3),
                &(Series::from_i64s(order, &[1, -3]) * &p * &geo) - &one,
            ),
            (
                "sv (1-3x-4x^2+(1-x)sqrt(1-4x)) = 2".to_string(),
                gf(GfId::SvTotal) * (&Series::from_i64s(order, &[1, -3, -4]) + &(&one_minus_x * &root)),
                one.scale(2),
            ),
        ],
    ));
    let rows = |t: &str| table_array(t, order).expect("known table").row_sums();
    out.push(series_check(
        "table row sums",
        [
            ("sp = rows of S".to_string(), gf(GfId::SpTotal), rows("2.2")),
            ("ap = 2 rows of L".to_string(), gf(GfId::ApTotal), rows("2.4").scale(2)),
            ("sv = rows of V".to_string(), gf(GfId::SvTotal), rows("3.1")),
        ],
    ));

    let mut agree = Check::new("closed forms = series coefficients");
    for id in CountId::ALL {
        let ks = if id.arity() == 1 { 0..=0 } else { 0..=3 };
        let rs = if id.arity() == 3 { 0..=4 } else { 0..=0 };
        for k in ks {
            for r in rs.clone() {
                let s = named_gf(id.gf(k, r), order);
                for n in r..=order {
                    let f = formulas::count(id, n, k, r);
                    agree.expect(f.as_ref().is_ok_and(|v| *v == s.coeff(n)), || {
                        format!("{id} ({n},{k},{r}): formula {}, series {}", show(&f), s.coeff(n))
                    });
                }
            }
        }
    }
    out.push(agree);
    out
}

/// Listed prefixes of the totals.
pub const SP_PREFIX: [u64; 10] = [1, 3, 8, 23, 72, 240, 834, 2979, 10844, 40016];
pub const AP_PREFIX: [u64; 8] = [2, 12, 54, 222, 882, 3456, 13466, 52362];
pub const SV_PREFIX: [u64; 7] = [1, 3, 11, 40, 148, 553, 2083];

/// Listed prefixes (up to `max_n`) against the summation formula, the series
/// and, within the work cap, brute force.
pub fn sequence_checks(max_n: usize) -> Vec<Check> {
    [
        (CountId::SpTotal, &SP_PREFIX[..]),
        (CountId::ApTotal, &AP_PREFIX[..]),
        (CountId::SvTotal, &SV_PREFIX[..]),
    ]
    .into_iter()
    .map(|(id, prefix)| {
        let mut check = Check::new(format!("{} prefix", id.name().to_ascii_lowercase().replace("_total", "")));
        let upto = prefix.len().min(max_n + 1);
        let series = named_gf(id.gf(0, 0), upto.saturating_sub(1));
        let mut skipped = Vec::new();
        for (n, &listed) in prefix.iter().take(upto).enumerate() {
            let listed = BigInt::from(listed);
            let f = formulas::count(id, n, 0, 0);
            check.expect(f.as_ref().is_ok_and(|v| *v == listed), || format!("n={n}: listed {listed}, formula {}", show(&f)));
            check.expect(series.coeff(n) == listed, || format!("n={n}: listed {listed}, series {}", series.coeff(n)));
            match oracle::brute_count(id, n, 0, 0) {
                Ok(b) => check.expect(b == listed, || format!("n={n}: listed {listed}, brute {b}")),
                Err(Error::Resource { .. }) => skipped.push(n),
                Err(e) => check.fail(format!("n={n}: brute {e}")),
            }
        }
        if !skipped.is_empty() {
            check.note(format!("brute force skipped over the work cap at n = {skipped:?}"));
        }
        check
    })
    .collect()
}
