//! Reproduction gate: one line per criterion, nonzero exit if any hard
//! criterion fails. Every comparison is exact; the only tolerances are the
//! wall-clock budgets below, measured on whatever profile the suite runs in.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use latcover::catalog::*;
use latcover::enumerate::*;
use latcover::forms::*;
use latcover::groebner::verify_groebner_lemmas;
use latcover::lattice::{density_sum, is_cover, Subgroup};
use latcover::modular::*;
use latcover::ratmat::{rat, rat_int, Rat, RatMat2};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ENUMERATION_BUDGET: Duration = Duration::from_secs(600);
const SCAN_BUDGET: Duration = Duration::from_secs(60);
const GROEBNER_BUDGET: Duration = Duration::from_secs(300);
const VALUE_SET_BUDGET: Duration = Duration::from_secs(60);

const RAW_LEAVES: usize = 6131;
const COUNTS_BY_LENGTH: [(usize, usize); 4] = [(3, 1), (4, 4), (5, 9), (6, 40)];
const TOTAL: usize = 54;
const COVER_SAMPLES: usize = 1000;
const GAMMA_SAMPLES: usize = 200;
const SEED: u64 = 0x1a77_1ce5;

struct Gate {
    results: Vec<(String, bool, bool)>,
}

impl Gate {
    fn record(&mut self, id: &str, hard: bool, passed: bool, detail: String) {
        let tag = match (passed, hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "SOFT-FAIL",
        };
        println!("{tag} [{id}] {detail}");
        self.results.push((id.to_string(), hard, passed));
    }
}

fn within(t: Instant, budget: Duration) -> (bool, String) {
    let e = t.elapsed();
    (
        e <= budget,
        format!("{:.2}s of {}s", e.as_secs_f64(), budget.as_secs()),
    )
}

fn catalog_counts(g: &mut Gate, e: &Enumeration, c: &Catalog, budget: (bool, String)) {
    let counts = c.count_by_length();
    let ok = COUNTS_BY_LENGTH
        .iter()
        .all(|&(len, n)| counts.get(&len) == Some(&n))
        && counts.len() == COUNTS_BY_LENGTH.len()
        && e.minimal.len() == TOTAL;
    g.record(
        "1 catalog counts",
        true,
        ok && budget.0,
        format!(
            "by length {counts:?}, total {}; enumeration {}",
            e.minimal.len(),
            budget.1
        ),
    );
}

fn explicit_entries(g: &mut Gate, c: &Catalog) {
    let r = verify_lemma_counts(c);
    let names = [
        "length3: explicit entry",
        "length4: explicit entries",
        "length6: entries with all indices >= 4 are exactly C_{4^6}, C_{5^6}",
        "length6: C_{5^6} is the only entry with an index divisible by a prime >= 5",
    ];
    let picked: Vec<&Check> = r
        .checks
        .iter()
        .filter(|k| names.contains(&k.name.as_str()))
        .collect();
    let ok = picked.len() == names.len() && picked.iter().all(|k| k.passed);
    let failing: Vec<&str> = picked
        .iter()
        .filter(|k| !k.passed)
        .map(|k| k.name.as_str())
        .collect();
    g.record(
        "2 explicit entries",
        true,
        ok,
        format!(
            "{} of {} sub-checks pass {failing:?}",
            picked.len() - failing.len(),
            names.len()
        ),
    );
}

fn length5(g: &mut Gate, c: &Catalog) {
    let fives: Vec<&CatalogEntry> = c.query(|e| e.len() == 5);
    let all4 = fives
        .iter()
        .filter(|e| e.indices().iter().all(|i| i % 4 == 0))
        .count();
    let any5 = fives
        .iter()
        .filter(|e| e.indices().iter().any(|i| i % 5 == 0))
        .count();
    g.record(
        "3 length-5 properties",
        true,
        !fives.is_empty() && all4 == 0 && any5 == 0,
        format!(
            "{} entries; all indices divisible by 4: {all4}; some index divisible by 5: {any5}",
            fives.len()
        ),
    );
}

fn raw_count(g: &mut Gate, e: &Enumeration) {
    g.record(
        "4 raw solution count (soft)",
        false,
        e.raw.len() == RAW_LEAVES,
        format!("{} leaves, expected {RAW_LEAVES}", e.raw.len()),
    );
}

fn timed_scan(
    f: impl FnOnce() -> Result<ScanReport, ModularError>,
) -> (Result<ScanReport, ModularError>, bool) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed() <= SCAN_BUDGET)
}

fn modular(g: &mut Gate) {
    let mut notes = Vec::new();
    let mut ok = true;

    let (r5, fast) = timed_scan(|| scan_lzxnx(5));
    let r5 = r5.unwrap();
    ok &= fast && r5.passed() && r5.exceptions.is_empty();
    notes.push(format!("mod 5: {} exceptions", r5.exceptions.len()));

    let (r3, fast) = timed_scan(|| scan_lzxnx(3));
    let r3 = r3.unwrap();
    let want3: BTreeSet<Vec<i64>> = T3.iter().map(|t| t.to_vec()).collect();
    ok &= fast && r3.passed() && r3.exception_tuples() == want3;
    notes.push(format!("mod 3: {} exceptions", r3.exceptions.len()));

    let (r4, fast) = timed_scan(|| scan_lzxnx(4));
    let r4 = r4.unwrap();
    ok &= fast && r4.passed();
    notes.push(format!(
        "mod 4: {}/{} clauses (pair (2,0) rule, badness <= 1)",
        r4.clauses.iter().filter(|c| c.passed).count(),
        r4.clauses.len()
    ));

    for rep in T3_REPRESENTATIVES {
        let (r9, fast) = timed_scan(|| scan_messfor9(rep));
        let r9 = r9.unwrap();
        ok &= fast && r9.passed() && r9.exceptions.is_empty();
        notes.push(format!("lifts of {rep:?}: {}", r9.exceptions.len()));
    }

    let (tv, fast) = timed_scan(|| Ok(scan_triple_vanishing_mod3()));
    let tv = tv.unwrap();
    let star: BTreeSet<Vec<i64>> = T3_STAR.iter().map(|t| t.to_vec()).collect();
    let fives: BTreeSet<Vec<i64>> = tv
        .exceptions
        .iter()
        .filter(|f| f.count == 5)
        .map(|f| f.tuple.clone())
        .collect();
    ok &= fast && tv.passed() && fives == star;
    notes.push(format!("vanishing count 5 on {} tuples", fives.len()));

    let (ab, fast) = timed_scan(|| Ok(scan_abcd_mod9()));
    let ab = ab.unwrap();
    ok &= fast && ab.passed() && ab.exceptions.is_empty();
    notes.push(format!("A,B,C,D mod 9: {}", ab.exceptions.len()));

    g.record("5 modular scans", true, ok, notes.join("; "));
}

fn groebner(g: &mut Gate) {
    let t = Instant::now();
    let r = verify_groebner_lemmas().unwrap();
    let (fast, time) = within(t, GROEBNER_BUDGET);
    let negative: Vec<&str> = r
        .verdicts
        .iter()
        .filter(|v| !v.contains_three)
        .map(|v| v.name.as_str())
        .collect();
    let pairs = r
        .verdicts
        .iter()
        .filter(|v| v.name.starts_with("pair "))
        .count();
    let triples = r
        .verdicts
        .iter()
        .filter(|v| v.name.starts_with("triple "))
        .count();
    let ok = fast
        && r.passed()
        && pairs == 10
        && triples == 10
        && negative == ["pair (R, R^2)", "triple (S, RS, R^2S)"]
        && r.exceptional_membership;
    g.record(
        "6 ideal verdicts",
        true,
        ok,
        format!(
            "{pairs} pair and {triples} triple systems (+{} extra), 3 not in ideal for {negative:?}, t1^2+t1t3+t3^2 in exceptional ideal: {}; {time}",
            r.verdicts.len() - pairs - triples,
            r.exceptional_membership
        ),
    );
}

fn forms(g: &mut Gate) {
    let id = RatMat2::identity();
    let f0v = extraordinary_by_c3(&f0(), &id, Variant::D3).map(|v| v.extraordinary);
    let sx = extraordinary_by_c3(&sextic(1, 0).unwrap(), &sextic_conjugator(), Variant::D6)
        .map(|v| v.extraordinary);
    let sx_stable =
        extraordinary_by_c3(&sextic_d6(1, 0).unwrap(), &id, Variant::D6).map(|v| v.extraordinary);
    let example = BinaryForm::from_ints(&[0, 1, 3, 0]).unwrap();
    let third = RatMat2::diag(rat(1, 3), rat_int(1));
    let ex = extraordinary_by_c3(&example, &third, Variant::D3).map(|v| v.extraordinary);
    let ok = f0v == Ok(true) && sx == Ok(true) && sx_stable == Ok(true) && ex == Ok(false);
    g.record(
        "7 extraordinary forms",
        true,
        ok,
        format!("F0: {f0v:?}; sextic(1,0): {sx:?} (reflected: {sx_stable:?}); XY(X+3Y): {ex:?}"),
    );
}

fn value_sets(g: &mut Gate) {
    let t = Instant::now();
    let r = cross_value_check(&f0(), &f0().dagger(), 10, 60).unwrap();
    let (fast, time) = within(t, VALUE_SET_BUDGET);
    g.record(
        "8 value sets",
        true,
        fast && r.unmatched() == 0,
        format!(
            "F0 vs F0 dagger, box 10 in box 60: {} + {} unmatched; {time}",
            r.g_values_missing_from_f.len(),
            r.f_values_missing_from_g.len()
        ),
    );
}

fn random_lattice(rng: &mut ChaCha8Rng, max_index: i64) -> Subgroup {
    loop {
        let a = rng.gen_range(1..=max_index);
        let b = rng.gen_range(1..=max_index);
        if a * b <= max_index {
            return Subgroup::from_hermite(a, rng.gen_range(0..a), b);
        }
    }
}

/// Column-form membership over one full period of the union.
fn oracle_cover(ls: &[Subgroup]) -> bool {
    let period = ls
        .iter()
        .map(|l| l.index().finite().unwrap())
        .fold(1i64, |a, n| a.lcm(&n));
    let member = |l: &Subgroup, x: i64, y: i64| {
        let (p, q, r) = l.columns().unwrap();
        x % p == 0 && (y - (x / p) * q) % r == 0
    };
    (0..period).all(|x| (0..period).all(|y| ls.iter().any(|l| member(l, x, y))))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn properties(g: &mut Gate, c: &Catalog) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cover_bad = 0;
    let mut covers = 0;
    for _ in 0..COVER_SAMPLES {
        let n = rng.gen_range(1..=6);
        let ls: Vec<Subgroup> = (0..n).map(|_| random_lattice(&mut rng, 6)).collect();
        let got = is_cover(&ls);
        covers += got as usize;
        cover_bad += (got != oracle_cover(&ls)) as usize;
    }

    let mut gamma_bad = 0;
    let mut tested = 0;
    while tested < GAMMA_SAMPLES {
        let m = RatMat2::new(
            random_rat(&mut rng),
            random_rat(&mut rng),
            random_rat(&mut rng),
            random_rat(&mut rng),
        );
        if m.det().is_zero() {
            continue;
        }
        tested += 1;
        let l = Subgroup::lattice_of(&m).unwrap();
        let scaled = Rat::from_integer(l.index().finite().unwrap().into()) * m.det().abs();
        if !scaled.is_integer() || l != Subgroup::lattice_of(&-&m).unwrap() {
            gamma_bad += 1;
        }
    }

    let density_bad = c
        .entries
        .iter()
        .filter(|e| density_sum(e.lattices()).unwrap() <= Rat::one())
        .count();
    let replace_bad = c
        .entries
        .iter()
        .filter(|e| !replacement_minimal(e, &[2, 3, 5, 7]))
        .count();

    g.record(
        "9 property suites",
        true,
        cover_bad == 0 && gamma_bad == 0 && density_bad == 0 && replace_bad == 0 && c.entries.len() == TOTAL,
        format!(
            "cover oracle {cover_bad}/{COVER_SAMPLES} mismatches ({covers} covers); index law {gamma_bad}/{GAMMA_SAMPLES}; density <= 1 on {density_bad}/{}; not replacement-minimal {replace_bad}/{}",
            c.entries.len(),
            c.entries.len()
        ),
    );
}

fn main() -> ExitCode {
    let mut g = Gate {
        results: Vec::new(),
    };

    let t = Instant::now();
    let e = enumerate_minimal_coverings(SearchConfig::default()).unwrap();
    let budget = within(t, ENUMERATION_BUDGET);
    let c = Catalog::from_enumeration(&e).unwrap();

    catalog_counts(&mut g, &e, &c, budget);
    explicit_entries(&mut g, &c);
    length5(&mut g, &c);
    raw_count(&mut g, &e);
    modular(&mut g);
    groebner(&mut g);
    forms(&mut g);
    value_sets(&mut g);
    properties(&mut g, &c);

    let hard_failed: Vec<&str> = g
        .results
        .iter()
        .filter(|r| r.1 && !r.2)
        .map(|r| r.0.as_str())
        .collect();
    let soft_failed = g.results.iter().filter(|r| !r.1 && !r.2).count();
    println!(
        "acceptance: {} criteria, {} hard failures, {soft_failed} soft failures",
        g.results.len(),
        hard_failed.len()
    );
    if hard_failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
