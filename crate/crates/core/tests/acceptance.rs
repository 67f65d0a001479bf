//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always show up in
//! `cargo test` output. Exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dyckstat::bijection::*;
use dyckstat::formulas::{self, binomial, CountId};
use dyckstat::oracle::{self, DEFAULT_CAP};
use dyckstat::path::p;
use dyckstat::series::{catalan_series, central_binomial_series, named_gf, table_array, GfId, Series};
use dyckstat::stats::{count_stat, Filter, MarkedPath, Statistic, SymmetryClass};
use dyckstat::tables::{MISPRINTS, TABLES};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn brute(id: CountId, n: usize, k: usize, r: usize) -> Result<BigInt, String> {
    oracle::brute_count_with_cap(id, n, k, r, DEFAULT_CAP).map_err(|e| format!("brute {id} ({n},{k},{r}): {e}"))
}

fn formula(id: CountId, n: usize, k: usize, r: usize) -> Result<BigInt, String> {
    formulas::count(id, n, k, r).map_err(|e| format!("formula {id} ({n},{k},{r}): {e}"))
}

fn coefficient(id: CountId, n: usize, k: usize, r: usize) -> BigInt {
    named_gf(id.gf(k, r), n).coeff(n)
}

fn table_reproduction() -> Verdict {
    let mut cells = 0;
    let mut pinned = Vec::new();
    for t in TABLES {
        let rows = t.printed.len();
        let array = table_array(t.id, rows - 1).map_err(|e| e.to_string())?;
        for (n, row) in t.printed.iter().enumerate() {
            for (k, &printed) in row.iter().enumerate() {
                let f = formula(t.count, n, k, 0)?;
                let s = array.entry(n, k).map_err(|e| e.to_string())?;
                let g = coefficient(t.count, n, k, 0);
                let b = brute(t.count, n, k, 0)?;
                let expected = match MISPRINTS.iter().find(|m| m.table == t.id && m.n == n && m.k == k) {
                    Some(m) => {
                        ensure(m.printed == printed, || format!("fixture for table {} ({n},{k}) changed", t.id))?;
                        pinned.push(format!("table {} ({n},{k}) printed {printed}, all methods {}", t.id, m.actual));
                        BigInt::from(m.actual)
                    }
                    None => BigInt::from(printed),
                };
                ensure(f == expected && s == expected && g == expected && b == expected, || {
                    format!("table {} ({n},{k}): printed {printed}, formula {f}, riordan {s}, series {g}, brute {b}", t.id)
                })?;
                cells += 1;
            }
        }
    }
    // the printed neighbours of the misprint already pin the true value
    let v50 = TABLES.iter().find(|t| t.id == "3.1").unwrap().printed[5][0];
    let vl40 = TABLES.iter().find(|t| t.id == "3.2").unwrap().printed[4][0];
    ensure(v50 + vl40 == 792, || "printed V(5,0) + V_L(4,0) is not 792".into())?;
    Ok(format!(
        "{cells} cells x formula/riordan/series/brute; pinned misprint: {}",
        pinned.join("; ")
    ))
}

fn sequence_prefixes() -> Verdict {
    let listings: [(CountId, &[u64]); 3] = [
        (CountId::SpTotal, &[1, 3, 8, 23, 72, 240, 834, 2979, 10844, 40016]),
        (CountId::ApTotal, &[2, 12, 54, 222, 882, 3456, 13466, 52362]),
        (CountId::SvTotal, &[1, 3, 11, 40, 148, 553, 2083]),
    ];
    let mut terms = 0;
    for (id, listed) in listings {
        let gf = named_gf(id.gf(0, 0), listed.len() - 1);
        for (n, &v) in listed.iter().enumerate() {
            let f = formula(id, n, 0, 0)?;
            let s = gf.coeff(n);
            ensure(f == BigInt::from(v) && s == BigInt::from(v), || {
                format!("{id} n={n}: listed {v}, summation {f}, series {s}")
            })?;
            terms += 1;
        }
    }
    Ok(format!("{terms} terms, summation and series"))
}

struct Trips {
    maps: usize,
    elements: usize,
}

impl Trips {
    fn run<A, B>(
        &mut self,
        label: String,
        domain: Vec<A>,
        codomain: Vec<B>,
        fwd: impl Fn(&A) -> dyckstat::Result<B>,
        inv: impl Fn(&B) -> dyckstat::Result<A>,
        in_codomain: impl Fn(&B) -> bool,
    ) -> Result<(), String>
    where
        A: PartialEq + Display,
        B: Ord + Clone + Display,
    {
        ensure(domain.len() == codomain.len(), || {
            format!("{label}: |domain| = {}, |codomain| = {}", domain.len(), codomain.len())
        })?;
        let mut images = Vec::with_capacity(domain.len());
        for x in &domain {
            let y = fwd(x).map_err(|e| format!("{label}: {x}: {e}"))?;
            ensure(in_codomain(&y), || format!("{label}: {x} -> {y} outside codomain"))?;
            let back = inv(&y).map_err(|e| format!("{label}: inverse of {y}: {e}"))?;
            ensure(&back == x, || format!("{label}: {x} -> {y} -> {back}"))?;
            images.push(y);
        }
        images.sort();
        images.dedup();
        ensure(images.len() == codomain.len(), || format!("{label}: |image| = {}", images.len()))?;
        for y in &codomain {
            let x = inv(y).map_err(|e| format!("{label}: {y}: {e}"))?;
            let z = fwd(&x).map_err(|e| format!("{label}: {x}: {e}"))?;
            ensure(&z == y, || format!("{label}: {y} -> {x} -> {z}"))?;
        }
        self.maps += 1;
        self.elements += domain.len();
        Ok(())
    }
}

const SIZE_LIMIT: usize = 5000;
const MAX_N: usize = 9;

fn small(id: CountId, n: usize, k: usize) -> bool {
    formulas::count(id, n, k, 0).is_ok_and(|v| v <= BigInt::from(SIZE_LIMIT))
}

fn bijection_round_trips() -> Verdict {
    let mut t = Trips { maps: 0, elements: 0 };
    for j in [1usize, 2] {
        for n in 0..=MAX_N {
            for k in (0..=n).filter(|&k| small(CountId::SStar, n, k) && small(CountId::SStar, n + j, k + j)) {
                t.run(
                    format!("pyramid j={j} S*({n},{k})"),
                    MarkedFamily::SStar.elements(n, k),
                    MarkedFamily::SStar.elements(n + j, k + j),
                    |m| pyramid_lift(m, j),
                    |m| pyramid_drop(m, j),
                    |m: &MarkedPath| MarkedFamily::SStar.contains(m, n + j, k + j),
                )?;
            }
        }
    }
    for n in (0..=MAX_N).filter(|&n| small(CountId::S, n, 0)) {
        t.run(format!("phi S({n},0)"), MarkedFamily::S.elements(n, 0), f_elements(n, 0), phi, phi_inv, |y: &PathPair| {
            y.check_f(n, 0).is_ok()
        })?;
    }
    for n in (0..=MAX_N).filter(|&n| small(CountId::L, n, 0)) {
        t.run(
            format!("phi_prime L({n},0)"),
            MarkedFamily::L.elements(n, 0),
            e_elements(n + 2, 2),
            phi_prime,
            phi_prime_inv,
            |y: &PathPair| y.check_e(n + 2, 2).is_ok(),
        )?;
        t.run(
            format!("eta L({n},0)"),
            MarkedFamily::L.elements(n, 0),
            MarkedFamily::V.elements(n + 2, 1),
            eta,
            eta_inv,
            |m: &MarkedPath| MarkedFamily::V.contains(m, n + 2, 1),
        )?;
    }
    for n in 0..=MAX_N {
        for k in 0..=n / 2 {
            if small(CountId::V, n, k) {
                t.run(format!("theta V({n},{k})"), MarkedFamily::V.elements(n, k), e_elements(n, 2 * k), theta, theta_inv, |y: &PathPair| {
                    y.check_e(n, 2 * k).is_ok()
                })?;
            }
            if small(CountId::VL, n, k) {
                t.run(
                    format!("rho VL({n},{k})"),
                    MarkedFamily::VL.elements(n, k),
                    e_elements(n + 2, 2 * k + 2),
                    rho,
                    rho_inv,
                    |y: &PathPair| y.check_e(n + 2, 2 * k + 2).is_ok(),
                )?;
                t.run(
                    format!("valley_shift V({},{})", n + 2, k + 1),
                    MarkedFamily::V.elements(n + 2, k + 1),
                    MarkedFamily::VL.elements(n, k),
                    valley_shift,
                    valley_shift_inv,
                    |m: &MarkedPath| MarkedFamily::VL.contains(m, n, k),
                )?;
            }
        }
    }
    Ok(format!("{} domains, {} elements, all sets of size <= {SIZE_LIMIT}", t.maps, t.elements))
}

fn worked_examples() -> Verdict {
    use SymmetryClass::*;
    // the reference path; the phi example uses it as its Q
    let x = p("uduuuduudududuuddddudduudd");
    let c = |stat, class, w| count_stat(&x, stat, Filter::new(Some(class), Some(w)));
    let peaks = [
        c(Statistic::Peak, Symmetric, 1),
        c(Statistic::Peak, Symmetric, 2),
        c(Statistic::Peak, LeftAsymmetric, 1),
        c(Statistic::Peak, RightAsymmetric, 1),
        c(Statistic::Peak, RightAsymmetric, 2),
    ];
    ensure(peaks == [3, 1, 2, 1, 1], || format!("reference path peak counts {peaks:?}"))?;
    let valleys = [
        c(Statistic::Valley, Symmetric, 1),
        c(Statistic::Valley, Symmetric, 2),
        c(Statistic::Valley, LeftAsymmetric, 1),
        c(Statistic::Valley, RightAsymmetric, 1),
    ];
    ensure(valleys == [2, 1, 1, 3], || format!("reference path valley counts {valleys:?}"))?;

    let check = |name: &str,
                 path: &str,
                 stat: Statistic,
                 turn: usize,
                 expect: (&str, &str),
                 fwd: fn(&MarkedPath) -> dyckstat::Result<PathPair>,
                 inv: fn(&PathPair) -> dyckstat::Result<MarkedPath>|
     -> Result<(), String> {
        let m = MarkedPath::at_turn(p(path), stat, turn).map_err(|e| format!("{name}: {e}"))?;
        let out = fwd(&m).map_err(|e| format!("{name}: {e}"))?;
        let got = (out.first.to_string(), out.second.to_string());
        ensure(got.0 == expect.0 && got.1 == expect.1, || format!("{name}: got {got:?}"))?;
        let back = inv(&PathPair::new(p(expect.0), p(expect.1))).map_err(|e| format!("{name} inverse: {e}"))?;
        ensure(back == m, || format!("{name} inverse gave {back}"))
    };
    check("worked phi", "uduuuduudududuuddddudduudd", Statistic::Peak, 9, ("udduuddddudduduuuduu", "uudd"), phi, phi_inv)?;
    check(
        "worked phi'",
        "uduuuduuduuddududddudduudd",
        Statistic::Peak,
        7,
        ("udduuddduduuud", "uududuud"),
        phi_prime,
        phi_prime_inv,
    )?;
    check("worked theta", "uduuuduuududduuddudddduudd", Statistic::Valley, 12, ("dduuddduduuudu", "uduuud"), theta, theta_inv)?;
    Ok("reference path counts; phi, phi', theta forward and inverse".into())
}

fn gf_identities() -> Verdict {
    const ORDER: usize = 20;
    let c = catalan_series(ORDER);
    let pp = central_binomial_series(ORDER);
    let one = Series::one(ORDER);
    let root = &one - &c.shift(1).scale(2);
    ensure(c == &one + &c.pow(2).shift(1), || "C != 1 + xC^2".into())?;
    ensure(&root * &root == Series::from_i64s(ORDER, &[1, -4]), || "(1-2xC)^2 != 1-4x".into())?;
    ensure(&root * &pp == one, || "(1-2xC) / sqrt(1-4x) != 1".into())?;

    let check = |k: usize, r: usize| -> Result<(), String> {
        let cr = c.pow(r) * &pp;
        for n in 0..=ORDER {
            let b = binomial((2 * n + r) as i64, n as i64).unwrap();
            ensure(cr.coeff(n) == b, || format!("C^{r}/sqrt(1-4x) at x^{n}"))?;
        }
        let gf = |id| named_gf(id, ORDER);
        ensure(&gf(GfId::S { k }) + &gf(GfId::L { k }).shift(2) == pp.shift(k), || format!("S_k + x^2 L_k, k={k}"))?;
        let v_star = (c.pow(2 * k + 2) * &pp).shift(2 * k);
        ensure(&gf(GfId::V { k }) + &gf(GfId::VL { k }).shift(1) == v_star, || format!("V_k + x VL_k, k={k}"))?;
        let beta = (c.inverse().unwrap() * &pp).shift(k + 1);
        ensure(&gf(GfId::L { k }).shift(3) + &c.shift(k + 1) == beta, || format!("x^3 L_k + x^(k+1) C, k={k}"))?;
        ensure(gf(GfId::Beta { k }) == beta, || format!("beta_k, k={k}"))
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(Config { cases: 64, failure_persistence: None, ..Config::default() }, rng);
    runner
        .run(&(0usize..=12, 1usize..=4), |(k, r)| check(k, r).map_err(TestCaseError::fail))
        .map_err(|e| e.to_string())?;
    for k in 0..=8 {
        for r in 1..=4 {
            check(k, r)?;
        }
    }
    Ok(format!("order {ORDER}, 64 sampled and 36 exhaustive (k, r) cases"))
}

fn closed_forms_vs_oracle() -> Verdict {
    let mut compared = 0;
    let mut boundary = 0;
    for id in [CountId::SpPartial, CountId::LpPartial] {
        for n in 0..=9 {
            for k in 0..=3 {
                for r in 0..=4.min(n) {
                    let f = formula(id, n, k, r)?;
                    let b = brute(id, n, k, r)?;
                    let s = coefficient(id, n, k, r);
                    ensure(f == b && s == b, || format!("{id} ({n},{k},{r}): formula {f}, series {s}, brute {b}"))?;
                    compared += 1;
                    if n == k + r + 1 {
                        boundary += 1;
                    }
                }
            }
        }
    }
    for id in [CountId::Alpha, CountId::Beta] {
        for n in 0..=9 {
            for k in 0..=3 {
                let (f, b, s) = (formula(id, n, k, 0)?, brute(id, n, k, 0)?, coefficient(id, n, k, 0));
                ensure(f == b && s == b, || format!("{id} ({n},{k}): formula {f}, series {s}, brute {b}"))?;
                compared += 1;
            }
        }
    }
    // primitive paths: the usual generating functions x^k C^3 P and x^k C P
    // against scans, then the library counts (which add the pyramid term)
    const PRIM_N: usize = 8;
    let c = catalan_series(PRIM_N);
    let pp = central_binomial_series(PRIM_N);
    let mut pyramid_cells = 0;
    for (id, quoted_gf) in [(CountId::PrimSym, c.pow(3) * &pp), (CountId::PrimLasym, &c * &pp)] {
        for n in 0..=PRIM_N {
            for k in 0..=n + 4 {
                let b = brute(id, n, k, 0)?;
                let quoted = if k <= n { quoted_gf.coeff(n - k) } else { BigInt::from(0) };
                if id == CountId::PrimSym && k == n + 3 {
                    // u^(n+4) d^(n+4): one symmetric peak of weight n + 4 the quoted GF omits
                    ensure(b == &quoted + 1, || format!("{id} ({n},{k}): pyramid cell brute {b}, quoted GF {quoted}"))?;
                    pyramid_cells += 1;
                } else {
                    ensure(b == quoted, || format!("{id} ({n},{k}): brute {b}, quoted GF {quoted}"))?;
                }
                let (f, s) = (formula(id, n, k, 0)?, coefficient(id, n, k, 0));
                ensure(f == b && s == b, || format!("{id} ({n},{k}): formula {f}, series {s}, brute {b}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!(
        "{compared} values, {boundary} on the boundary n = k+r+1; deviation: quoted primitive symmetric GF \
         misses the pyramid u^(n+4)d^(n+4) at k = n+3 ({pyramid_cells} cells, brute = GF + 1, library counts include it)"
    ))
}

fn triple_agreement() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d7c5);
    let mut seen: HashMap<(CountId, usize, usize, usize), BigInt> = HashMap::new();
    let mut drawn = 0;
    while drawn < 200 {
        let id = CountId::ALL[rng.gen_range(0..CountId::ALL.len())];
        let max_n = if id.is_valley_indexed() { 8 } else { 9 };
        let n = rng.gen_range(0..=max_n);
        let k = if id.arity() >= 2 { rng.gen_range(0..=3.min(n)) } else { 0 };
        let r = if id.arity() == 3 { rng.gen_range(0..=4.min(n)) } else { 0 };
        if oracle::planned_work(id, n, k, r).map_err(|e| e.to_string())? > DEFAULT_CAP {
            continue;
        }
        drawn += 1;
        let b = match seen.get(&(id, n, k, r)) {
            Some(b) => b.clone(),
            None => {
                let b = brute(id, n, k, r)?;
                seen.insert((id, n, k, r), b.clone());
                b
            }
        };
        let f = formula(id, n, k, r)?;
        let s = coefficient(id, n, k, r);
        ensure(f == b && s == b, || format!("{id} ({n},{k},{r}): formula {f}, series {s}, brute {b}"))?;
    }
    Ok(format!("200 tuples ({} distinct), seeded", seen.len()))
}

fn main() {
    // `cargo test -- --list` and friends expect no work from a harness-less target
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("table reproduction", table_reproduction),
        ("sequence prefixes", sequence_prefixes),
        ("bijection round trips", bijection_round_trips),
        ("worked example regressions", worked_examples),
        ("generating function identities", gf_identities),
        ("partial, alpha/beta and primitive counts vs oracle", closed_forms_vs_oracle),
        ("triple agreement on random tuples", triple_agreement),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 7 acceptance criteria passed");
}
