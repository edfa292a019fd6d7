//! Exhaustive residue scans for the congruence statements on the coefficients of
//! the conjugated lattice equations.
//!
//! For `t = (t1, t2, t3, t4)` and `sigma` in `{R, R^2, S, RS, R^2S}` the lattice
//! attached to `T^-1 sigma T`, `T = (t1 t2; t3 t4)`, is cut out by a "top" equation
//! `p1 x1 + p2 x2 = 0` and a "bottom" equation `P1 x1 + P2 x2 = 0` modulo `d2 D`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::arith::gcd;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModularError {
    #[error("modulus {0} is not one of 3, 4, 5, 9")]
    BadModulus(i64),
    #[error("{0:?} is not a lift representative; expected (0,1,0,1), (1,1,1,1) or (1,2,1,2)")]
    BadRepresentative([i64; 4]),
}

/// The six group elements, in the order id, R, R^2, S, RS, R^2S.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sigma {
    Id,
    R,
    R2,
    S,
    RS,
    R2S,
}

impl Sigma {
    pub const ALL: [Sigma; 6] = [
        Sigma::Id,
        Sigma::R,
        Sigma::R2,
        Sigma::S,
        Sigma::RS,
        Sigma::R2S,
    ];
    pub const NONTRIVIAL: [Sigma; 5] = [Sigma::R, Sigma::R2, Sigma::S, Sigma::RS, Sigma::R2S];

    pub fn name(self) -> &'static str {
        match self {
            Sigma::Id => "id",
            Sigma::R => "R",
            Sigma::R2 => "R^2",
            Sigma::S => "S",
            Sigma::RS => "RS",
            Sigma::R2S => "R^2S",
        }
    }

    /// Integer matrix of the element, row-major.
    pub fn matrix(self) -> [i64; 4] {
        const R: [i64; 4] = [0, 1, -1, -1];
        const S: [i64; 4] = [0, 1, 1, 0];
        let mul = |x: [i64; 4], y: [i64; 4]| {
            [
                x[0] * y[0] + x[1] * y[2],
                x[0] * y[1] + x[1] * y[3],
                x[2] * y[0] + x[3] * y[2],
                x[2] * y[1] + x[3] * y[3],
            ]
        };
        match self {
            Sigma::Id => [1, 0, 0, 1],
            Sigma::R => R,
            Sigma::R2 => mul(R, R),
            Sigma::S => S,
            Sigma::RS => mul(R, S),
            Sigma::R2S => mul(mul(R, R), S),
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign convention for the bottom equation of `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BottomSign {
    /// `(t3^2 - t1^2, t3 t4 - t1 t2)`, as in the lattice equations.
    Equation,
    /// `(t1^2 - t3^2, t1 t2 - t3 t4)`, as in the ideal computations.
    Negated,
}

/// Top coefficients `(p1, p2)` over the integers; `(1, 0)` for the identity.
pub fn top_poly(sigma: Sigma, t: [i64; 4]) -> (i64, i64) {
    let [t1, t2, t3, t4] = t;
    match sigma {
        Sigma::Id => (1, 0),
        Sigma::R => (t1 * t2 + t2 * t3 + t3 * t4, t2 * t2 + t2 * t4 + t4 * t4),
        Sigma::R2 => (t1 * t2 + t1 * t4 + t3 * t4, t2 * t2 + t2 * t4 + t4 * t4),
        Sigma::S => (t3 * t4 - t1 * t2, t4 * t4 - t2 * t2),
        Sigma::RS => (t1 * t2 + t1 * t4 + t2 * t3, t2 * t2 + 2 * t2 * t4),
        Sigma::R2S => (t1 * t4 + t2 * t3 + t3 * t4, t4 * t4 + 2 * t2 * t4),
    }
}

/// Bottom coefficients `(P1, P2)` over the integers; `(0, 1)` for the identity.
pub fn bottom_poly(sigma: Sigma, t: [i64; 4], sign: BottomSign) -> (i64, i64) {
    let [t1, t2, t3, t4] = t;
    match sigma {
        Sigma::Id => (0, 1),
        Sigma::R => (t1 * t1 + t1 * t3 + t3 * t3, t1 * t2 + t1 * t4 + t3 * t4),
        Sigma::R2 => (t1 * t1 + t1 * t3 + t3 * t3, t1 * t2 + t2 * t3 + t3 * t4),
        Sigma::S => match sign {
            BottomSign::Equation => (t3 * t3 - t1 * t1, t3 * t4 - t1 * t2),
            BottomSign::Negated => (t1 * t1 - t3 * t3, t1 * t2 - t3 * t4),
        },
        Sigma::RS => (t1 * t1 + 2 * t1 * t3, t1 * t2 + t1 * t4 + t2 * t3),
        Sigma::R2S => (t3 * t3 + 2 * t1 * t3, t1 * t4 + t2 * t3 + t3 * t4),
    }
}

fn check_modulus(n: i64) -> Result<(), ModularError> {
    if [3, 4, 5, 9].contains(&n) {
        Ok(())
    } else {
        Err(ModularError::BadModulus(n))
    }
}

/// `(t1, t2, t3, t4)` reduced modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueTuple {
    t: [i64; 4],
    n: i64,
}

impl ResidueTuple {
    pub fn new(t: [i64; 4], n: i64) -> Result<Self, ModularError> {
        check_modulus(n)?;
        Ok(ResidueTuple {
            t: t.map(|v| v.rem_euclid(n)),
            n,
        })
    }

    pub fn values(&self) -> [i64; 4] {
        self.t
    }

    pub fn modulus(&self) -> i64 {
        self.n
    }

    /// `(t2, t1, t4, t3)`.
    pub fn theta(&self) -> Self {
        let [t1, t2, t3, t4] = self.t;
        ResidueTuple {
            t: [t2, t1, t4, t3],
            n: self.n,
        }
    }

    /// All of `(Z/n)^4` in lexicographic order.
    pub fn all(n: i64) -> Result<Vec<Self>, ModularError> {
        check_modulus(n)?;
        let mut out = Vec::with_capacity((n * n * n * n) as usize);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        out.push(ResidueTuple { t: [a, b, c, d], n });
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ResidueTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.t;
        write!(f, "({a},{b},{c},{d}) mod {}", self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffPair {
    pub p1: i64,
    pub p2: i64,
}

impl CoeffPair {
    pub fn new(p1: i64, p2: i64, n: i64) -> Self {
        CoeffPair {
            p1: p1.rem_euclid(n),
            p2: p2.rem_euclid(n),
        }
    }
}

impl fmt::Display for CoeffPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p1, self.p2)
    }
}

/// Top pairs in the order id, R, R^2, S, RS, R^2S.
pub fn top_pairs(t: &ResidueTuple) -> [CoeffPair; 6] {
    Sigma::ALL.map(|s| {
        let (p1, p2) = top_poly(s, t.t);
        CoeffPair::new(p1, p2, t.n)
    })
}

/// `P1` for R, R^2, S, RS, R^2S.
pub fn bottom_firsts(t: &ResidueTuple, sign: BottomSign) -> [i64; 5] {
    Sigma::NONTRIVIAL.map(|s| bottom_poly(s, t.t, sign).0.rem_euclid(t.n))
}

/// Bottom pairs in the order id, R, R^2, S, RS, R^2S.
pub fn bottom_pairs(t: &ResidueTuple, sign: BottomSign) -> [CoeffPair; 6] {
    Sigma::ALL.map(|s| {
        let (p1, p2) = bottom_poly(s, t.t, sign);
        CoeffPair::new(p1, p2, t.n)
    })
}

/// Low-order pairs plus unit-scaling classes of the remaining pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCount {
    pub low_order: usize,
    pub classes: usize,
}

impl ClassCount {
    pub fn total(&self) -> usize {
        self.low_order + self.classes
    }
}

/// A pair is low-order when both coordinates share a factor with `n`.
pub fn is_low_order(p: CoeffPair, n: i64) -> bool {
    gcd(p.p1, n) != 1 && gcd(p.p2, n) != 1
}

pub fn class_count(pairs: &[CoeffPair], n: i64) -> ClassCount {
    let mut count = ClassCount {
        low_order: 0,
        classes: 0,
    };
    for (i, &p) in pairs.iter().enumerate() {
        if is_low_order(p, n) {
            count.low_order += 1;
            continue;
        }
        let repeated = pairs[..i].iter().any(|&q| {
            (1..n).any(|k| {
                gcd(k, n) == 1
                    && (k * p.p1).rem_euclid(n) == q.p1
                    && (k * p.p2).rem_euclid(n) == q.p2
            })
        });
        if !repeated {
            count.classes += 1;
        }
    }
    count
}

/// The order used by the brute-force routine: id, S, RS, R^2S, R, R^2.
const SCAN_ORDER: [Sigma; 6] = [
    Sigma::Id,
    Sigma::S,
    Sigma::RS,
    Sigma::R2S,
    Sigma::R,
    Sigma::R2,
];

fn scan_pairs(t: [i64; 4], n: i64, divide_by: i64) -> Option<Vec<CoeffPair>> {
    SCAN_ORDER
        .iter()
        .map(|&s| {
            if s == Sigma::Id {
                return Some(CoeffPair::new(1, 0, n));
            }
            let (p1, p2) = top_poly(s, t);
            if p1 % divide_by != 0 || p2 % divide_by != 0 {
                return None;
            }
            Some(CoeffPair::new(p1 / divide_by, p2 / divide_by, n))
        })
        .collect()
}

/// One residue tuple flagged by a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub tuple: Vec<i64>,
    pub count: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub name: String,
    pub modulus: i64,
    pub scanned: usize,
    pub exceptions: Vec<Finding>,
    pub clauses: Vec<Clause>,
}

impl ScanReport {
    fn new(name: &str, modulus: i64) -> Self {
        ScanReport {
            name: name.to_string(),
            modulus,
            scanned: 0,
            exceptions: Vec::new(),
            clauses: Vec::new(),
        }
    }

    fn clause(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.clauses.push(Clause {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn exception_tuples(&self) -> BTreeSet<Vec<i64>> {
        self.exceptions.iter().map(|f| f.tuple.clone()).collect()
    }
}

fn show_pairs(pairs: &[CoeffPair]) -> String {
    pairs
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn show_tuples<'a>(ts: impl IntoIterator<Item = &'a Vec<i64>>) -> String {
    ts.into_iter()
        .map(|t| format!("{t:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// The six exceptional tuples mod 3 of the top-class count.
pub const T3: [[i64; 4]; 6] = [
    [0, 1, 0, 1],
    [0, 2, 0, 2],
    [1, 1, 1, 1],
    [2, 2, 2, 2],
    [1, 2, 1, 2],
    [2, 1, 2, 1],
];

/// The tuples mod 3 where all five top first coefficients vanish.
pub const T3_STAR: [[i64; 4]; 4] = [[1, 1, 1, 1], [2, 2, 2, 2], [1, 2, 1, 2], [2, 1, 2, 1]];

/// Lift representatives of `T3` up to negation.
pub const T3_REPRESENTATIVES: [[i64; 4]; 3] = [[0, 1, 0, 1], [1, 1, 1, 1], [1, 2, 1, 2]];

/// Badness of the six top pairs mod 4, as used for the sharper mod-4 clauses.
pub fn badness_mod4(pairs: &[CoeffPair]) -> usize {
    let mut badness = 0;
    let mut first_odd_zero = true;
    let mut first_odd_two = true;
    for p in pairs {
        let v = (p.p1, p.p2);
        if first_odd_zero && (v == (0, 1) || v == (0, 3)) {
            badness += 1;
            first_odd_zero = false;
        }
        if first_odd_two && (v == (2, 1) || v == (2, 3)) {
            badness += 1;
            first_odd_two = false;
        }
        if matches!(v, (2, 0) | (0, 2) | (0, 0) | (2, 2)) {
            badness += 1;
        }
    }
    badness
}

/// Class-count scan of `(Z/x)^4` for `x` in {3, 4, 5}.
pub fn scan_lzxnx(x: i64) -> Result<ScanReport, ModularError> {
    if ![3, 4, 5].contains(&x) {
        return Err(ModularError::BadModulus(x));
    }
    let mut report = ScanReport::new("top class count", x);
    let mut low_order_max = 0;
    let mut badness_violations = Vec::new();
    let mut nonzero_non_id = Vec::new();
    let mut without_two_zero = Vec::new();
    for t in ResidueTuple::all(x)? {
        let [a, b, c, d] = t.values();
        report.scanned += 1;
        let pairs = scan_pairs(t.values(), x, 1).expect("no division");
        let count = class_count(&pairs, x);
        let primitive_bottom = gcd(gcd(x, b), d) == 1;
        if primitive_bottom {
            low_order_max = low_order_max.max(count.low_order);
        }
        if count.total() > 3 && primitive_bottom {
            let tuple = t.values().to_vec();
            if pairs[1..].iter().any(|p| (p.p1, p.p2) != (0, 0)) {
                nonzero_non_id.push(tuple.clone());
            }
            if !pairs.iter().any(|p| (p.p1, p.p2) == (2, 0)) {
                without_two_zero.push(tuple.clone());
            }
            report.exceptions.push(Finding {
                tuple,
                count: count.total(),
                detail: show_pairs(&pairs),
            });
        }
        if x == 4 {
            let badness = badness_mod4(&pairs);
            if badness > 1 && gcd(gcd(2, a), c) == 1 && gcd(gcd(2, b), d) == 1 {
                badness_violations.push(t.values().to_vec());
            }
        }
    }
    let found = report.exception_tuples();
    match x {
        5 => {
            report.clause(
                "count <= 3 for every tuple",
                found.is_empty(),
                show_tuples(&found),
            );
            report.clause(
                "at most one low-order pair",
                low_order_max <= 1,
                format!("max {low_order_max}"),
            );
        }
        4 => {
            let max = report.exceptions.iter().map(|f| f.count).max().unwrap_or(0);
            report.clause(
                "count > 3 only with a pair (2,0), and then count = 4",
                without_two_zero.is_empty() && max <= 4,
                format!(
                    "max count {max}; without (2,0): {}",
                    show_tuples(&without_two_zero)
                ),
            );
            report.clause(
                "badness <= 1 when t1,t3 and t2,t4 are not both even",
                badness_violations.is_empty(),
                show_tuples(&badness_violations),
            );
        }
        _ => {
            let want: BTreeSet<Vec<i64>> = T3.iter().map(|t| t.to_vec()).collect();
            report.clause(
                "count > 3 exactly on the six exceptional tuples",
                found == want,
                show_tuples(&found),
            );
            report.clause(
                "all non-identity pairs vanish on the exceptional tuples",
                nonzero_non_id.is_empty(),
                show_tuples(&nonzero_non_id),
            );
        }
    }
    Ok(report)
}

/// Class-count scan mod 3 of the top pairs divided by 3, over all lifts
/// `t_i = 3 a_i + rep_i` modulo 9.
pub fn scan_messfor9(rep: [i64; 4]) -> Result<ScanReport, ModularError> {
    if !T3_REPRESENTATIVES.contains(&rep) {
        return Err(ModularError::BadRepresentative(rep));
    }
    let mut report = ScanReport::new(&format!("divided class count for lifts of {rep:?}"), 9);
    let mut not_divisible = Vec::new();
    let mut low_order_max = 0;
    for lift in ResidueTuple::all(3)? {
        report.scanned += 1;
        let a = lift.values();
        let t = [0, 1, 2, 3].map(|i| 3 * a[i] + rep[i]);
        let Some(pairs) = scan_pairs(t, 3, 3) else {
            not_divisible.push(t.to_vec());
            continue;
        };
        let count = class_count(&pairs, 3);
        low_order_max = low_order_max.max(count.low_order);
        if count.total() > 3 {
            report.exceptions.push(Finding {
                tuple: t.to_vec(),
                count: count.total(),
                detail: show_pairs(&pairs),
            });
        }
    }
    report.clause(
        "top coefficients divisible by 3",
        not_divisible.is_empty(),
        show_tuples(&not_divisible),
    );
    report.clause(
        "divided count <= 3",
        report.exceptions.is_empty(),
        show_tuples(&report.exception_tuples()),
    );
    report.clause(
        "at most one low-order divided pair",
        low_order_max <= 1,
        format!("max {low_order_max}"),
    );
    Ok(report)
}

/// Number of vanishing top first coefficients mod 3 among the five
/// non-identity elements, over primitive `(t1, t3)` and `(t2, t4)`.
pub fn scan_triple_vanishing_mod3() -> ScanReport {
    let mut report = ScanReport::new("vanishing top first coefficients", 3);
    let mut seen = BTreeSet::new();
    let mut five = BTreeSet::new();
    for t in ResidueTuple::all(3).expect("3 is a valid modulus") {
        let [a, b, c, d] = t.values();
        if (a, c) == (0, 0) || (b, d) == (0, 0) {
            continue;
        }
        report.scanned += 1;
        let count = top_pairs(&t)[1..].iter().filter(|p| p.p1 == 0).count();
        seen.insert(count);
        if count == 5 {
            five.insert(t.values().to_vec());
        }
        if count > 2 {
            report.exceptions.push(Finding {
                tuple: t.values().to_vec(),
                count,
                detail: String::new(),
            });
        }
    }
    let allowed: BTreeSet<usize> = [0, 1, 2, 5].into();
    report.clause(
        "count in {0,1,2,5}",
        seen.is_subset(&allowed),
        format!("observed {seen:?}"),
    );
    let want: BTreeSet<Vec<i64>> = T3_STAR.iter().map(|t| t.to_vec()).collect();
    report.clause(
        "count 5 exactly on the four starred tuples",
        five == want,
        show_tuples(&five),
    );
    report
}

/// `[A, B, C, D]` at `(u, v)`.
pub fn abcd(u: i64, v: i64) -> [i64; 4] {
    [
        u * u + u * v + v * v,
        v * v - u * u,
        u * u + 2 * u * v,
        v * v + 2 * u * v,
    ]
}

/// Over primitive `(u, v)` mod 9: `A` never vanishes and at most one of
/// `A, B, C, D` does.
pub fn scan_abcd_mod9() -> ScanReport {
    let mut report = ScanReport::new("A,B,C,D vanishing", 9);
    let mut a_zero = Vec::new();
    for u in 0..9 {
        for v in 0..9 {
            if gcd(gcd(u, v), 3) != 1 {
                continue;
            }
            report.scanned += 1;
            let vals = abcd(u, v).map(|x| x.rem_euclid(9));
            if vals[0] == 0 {
                a_zero.push(vec![u, v]);
            }
            let zeros = vals.iter().filter(|&&x| x == 0).count();
            if zeros > 1 {
                report.exceptions.push(Finding {
                    tuple: vec![u, v],
                    count: zeros,
                    detail: format!("{vals:?}"),
                });
            }
        }
    }
    report.clause(
        "A is never 0 mod 9",
        a_zero.is_empty(),
        show_tuples(&a_zero),
    );
    report.clause(
        "at most one of A,B,C,D is 0 mod 9",
        report.exceptions.is_empty(),
        show_tuples(&report.exception_tuples()),
    );
    report
}

/// Every scan for the modulus: 3, 4 and 5 run the class-count scan (3 also
/// the vanishing scan), 9 runs the lifted scans and the `A,B,C,D` scan.
pub fn scans_for_modulus(n: i64) -> Result<Vec<ScanReport>, ModularError> {
    match n {
        3 => Ok(vec![scan_lzxnx(3)?, scan_triple_vanishing_mod3()]),
        4 | 5 => Ok(vec![scan_lzxnx(n)?]),
        9 => {
            let mut out = T3_REPRESENTATIVES
                .iter()
                .map(|&r| scan_messfor9(r))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(scan_abcd_mod9());
            Ok(out)
        }
        _ => Err(ModularError::BadModulus(n)),
    }
}

pub fn all_scans() -> Vec<ScanReport> {
    [3, 4, 5, 9]
        .into_iter()
        .flat_map(|n| scans_for_modulus(n).expect("valid modulus"))
        .collect()
}
