//! The catalog of minimal coverings: canonical entries, a line-oriented file
//! format, index queries and the per-length checks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::enumerate::{precedes, CoveringTuple, Enumeration, SLOTS};
use crate::lattice::{density_sum, is_cover, Subgroup};
use crate::ratmat::{rat_int, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("tuple is not a covering of Z^2: {0}")]
    NotCover(String),
    #[error("tuple has a rank-deficient slot: {0}")]
    RankDeficient(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One minimal covering, as a sorted multiset of lattices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalogEntry {
    lattices: Vec<Subgroup>,
    indices: Vec<i64>,
}

impl CatalogEntry {
    /// Sorts the lattices; fails on non-covers and rank-deficient members.
    pub fn new(mut lattices: Vec<Subgroup>) -> Result<Self, CatalogError> {
        if let Some(bad) = lattices.iter().find(|l| l.rank() != 2) {
            return Err(CatalogError::RankDeficient(bad.to_string()));
        }
        if !is_cover(&lattices) {
            let shown: Vec<String> = lattices.iter().map(|l| l.to_string()).collect();
            return Err(CatalogError::NotCover(shown.join(" | ")));
        }
        lattices.sort();
        let mut indices: Vec<i64> = lattices
            .iter()
            .map(|l| l.index().finite().expect("rank 2"))
            .collect();
        indices.sort_unstable();
        Ok(CatalogEntry { lattices, indices })
    }

    pub fn lattices(&self) -> &[Subgroup] {
        &self.lattices
    }

    /// Sorted component indices.
    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.lattices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattices.is_empty()
    }

    pub fn density(&self) -> Rat {
        density_sum(&self.lattices).expect("catalog lattices have rank 2")
    }

    pub fn to_tuple(&self) -> CoveringTuple {
        CoveringTuple::from_slice(&self.lattices)
    }

    /// Parses entries written as column matrices, e.g. `["2,0;0,1", "1,0;0,2", "1,0;1,2"]`.
    pub fn from_texts(texts: &[&str]) -> Result<Self, CatalogError> {
        let lattices = texts
            .iter()
            .map(|t| {
                t.parse::<Subgroup>().map_err(|e| CatalogError::Parse {
                    line: 0,
                    msg: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        CatalogEntry::new(lattices)
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "len={}", self.len())?;
        for l in &self.lattices {
            write!(f, " | {l}")?;
        }
        Ok(())
    }
}

/// Drops zero slots and sorts; the tuple must cover Z^2.
pub fn canonical_entry(t: &CoveringTuple) -> Result<CatalogEntry, CatalogError> {
    CatalogEntry::new(t.nonzero())
}

/// Generation parameters stored alongside the entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Provenance {
    pub fields: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub provenance: Provenance,
}

impl Catalog {
    /// Entries sorted by (length, lattices).
    pub fn new(mut entries: Vec<CatalogEntry>, provenance: Provenance) -> Self {
        entries.sort_by(|a, b| (a.len(), &a.lattices).cmp(&(b.len(), &b.lattices)));
        Catalog {
            entries,
            provenance,
        }
    }

    pub fn from_enumeration(e: &Enumeration) -> Result<Self, CatalogError> {
        let entries = e
            .minimal
            .iter()
            .map(canonical_entry)
            .collect::<Result<Vec<_>, _>>()?;
        let mut provenance = Provenance::default();
        provenance.fields.insert("slots".into(), SLOTS.to_string());
        provenance
            .fields
            .insert("raw".into(), e.raw.len().to_string());
        provenance
            .fields
            .insert("minimal".into(), e.minimal.len().to_string());
        Ok(Catalog::new(entries, provenance))
    }

    pub fn query(&self, pred: impl Fn(&CatalogEntry) -> bool) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| pred(e)).collect()
    }

    pub fn count_by_length(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.len()).or_insert(0) += 1;
        }
        m
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.provenance.fields {
            out.push_str(&format!("# {k}={v}\n"));
        }
        for e in &self.entries {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Catalog::serialize`]. `#` lines carry `key=value`
    /// provenance; blank lines are skipped. Entry order is preserved.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut entries = Vec::new();
        let mut provenance = Provenance::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |msg: String| CatalogError::Parse { line, msg };
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(meta) = trimmed.strip_prefix('#') {
                if let Some((k, v)) = meta.trim().split_once('=') {
                    provenance
                        .fields
                        .insert(k.trim().to_string(), v.trim().to_string());
                }
                continue;
            }
            let mut parts = trimmed.split('|').map(str::trim);
            let head = parts.next().unwrap_or_default();
            let len: usize = head
                .strip_prefix("len=")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| err(format!("expected `len=k`, found `{head}`")))?;
            let lattices = parts
                .map(|p| Subgroup::from_str(p).map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if lattices.len() != len {
                return Err(err(format!(
                    "declared {len} lattices, found {}",
                    lattices.len()
                )));
            }
            let entry = CatalogEntry::new(lattices).map_err(|e| err(e.to_string()))?;
            entries.push(entry);
        }
        Ok(Catalog {
            entries,
            provenance,
        })
    }
}

/// Column-matrix texts of the coverings displayed explicitly in the literature.
pub mod reference {
    pub const LENGTH3: [&str; 3] = ["2,0;0,1", "1,0;0,2", "1,0;1,2"];

    pub const LENGTH4: [[&str; 4]; 4] = [
        ["1,0;0,2", "4,0;0,1", "1,0;1,2", "2,0;1,2"],
        ["1,0;0,4", "2,0;0,1", "1,0;1,2", "1,0;2,4"],
        ["1,0;0,2", "2,0;0,1", "1,0;1,4", "1,0;3,4"],
        ["1,0;0,3", "3,0;0,1", "1,0;1,3", "1,0;2,3"],
    ];

    pub const C4_6: [&str; 6] = [
        "1,0;0,4", "4,0;0,1", "1,0;1,4", "1,0;3,4", "1,0;2,4", "2,0;1,2",
    ];

    pub const C5_6: [&str; 6] = [
        "1,0;0,5", "5,0;0,1", "1,0;1,5", "1,0;4,5", "1,0;2,5", "1,0;3,5",
    ];
}

fn reference_entry(texts: &[&str]) -> CatalogEntry {
    CatalogEntry::from_texts(texts).expect("reference coverings are valid")
}

pub fn c4_6() -> CatalogEntry {
    reference_entry(&reference::C4_6)
}

pub fn c5_6() -> CatalogEntry {
    reference_entry(&reference::C5_6)
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LemmaReport {
    pub checks: Vec<Check>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn has_prime_factor_at_least(n: i64, p: i64) -> bool {
    let mut n = n;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            if d >= p {
                return true;
            }
            n /= d;
        }
        d += 1;
    }
    n > 1 && n >= p
}

/// Entries whose slots cannot be replaced by any sublattice of index
/// `q in primes` without losing the cover.
pub fn replacement_minimal(entry: &CatalogEntry, primes: &[i64]) -> bool {
    let lattices = entry.lattices();
    (0..lattices.len()).all(|i| {
        primes.iter().all(|&q| {
            lattices[i]
                .prime_index_sublattices(q)
                .into_iter()
                .all(|sub| {
                    let mut trial = lattices.to_vec();
                    trial[i] = sub;
                    !is_cover(&trial)
                })
        })
    })
}

pub fn removal_minimal(entry: &CatalogEntry) -> bool {
    let lattices = entry.lattices();
    (0..lattices.len()).all(|i| {
        let rest: Vec<Subgroup> = lattices
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, l)| *l)
            .collect();
        !is_cover(&rest)
    })
}

fn describe(entries: &[&CatalogEntry]) -> String {
    entries
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Runs every catalog-level check and reports each one by name.
pub fn verify_lemma_counts(c: &Catalog) -> LemmaReport {
    let mut checks = Vec::new();
    let counts = c.count_by_length();
    for (len, want, label) in [
        (3, 1, "length3"),
        (4, 4, "length4"),
        (5, 9, "length5"),
        (6, 40, "length6"),
    ] {
        let got = counts.get(&len).copied().unwrap_or(0);
        checks.push(Check::new(
            &format!("{label}: count"),
            got == want,
            format!("{got} entries of length {len}, expected {want}"),
        ));
    }
    let stray: Vec<&CatalogEntry> = c.query(|e| !(3..=6).contains(&e.len()));
    checks.push(Check::new(
        "lengths: only 3..=6",
        stray.is_empty(),
        describe(&stray),
    ));
    checks.push(Check::new(
        "total: 54",
        c.entries.len() == 54,
        format!("{} entries", c.entries.len()),
    ));

    let mut comparable = Vec::new();
    for i in 0..c.entries.len() {
        for j in 0..c.entries.len() {
            if i != j && precedes(&c.entries[i].to_tuple(), &c.entries[j].to_tuple()) {
                comparable.push(format!("{} <= {}", c.entries[i], c.entries[j]));
            }
        }
    }
    checks.push(Check::new(
        "catalog: pairwise incomparable",
        comparable.is_empty(),
        comparable
            .into_iter()
            .take(3)
            .collect::<Vec<_>>()
            .join("; "),
    ));

    let bad_density: Vec<&CatalogEntry> = c.query(|e| {
        let d = e.density();
        d <= Rat::one() || d > rat_int(6)
    });
    checks.push(Check::new(
        "density: 1 < sum 1/index <= 6",
        bad_density.is_empty(),
        describe(&bad_density),
    ));
    let with_full: Vec<&CatalogEntry> = c.query(|e| e.lattices().iter().any(|l| l.is_full()));
    checks.push(Check::new(
        "entries: no component equals Z^2",
        with_full.is_empty(),
        describe(&with_full),
    ));

    let len3 = c.query(|e| e.len() == 3);
    let want3 = reference_entry(&reference::LENGTH3);
    checks.push(Check::new(
        "length3: explicit entry",
        len3.len() == 1 && *len3[0] == want3,
        describe(&len3),
    ));

    let mut len4: Vec<CatalogEntry> = c.query(|e| e.len() == 4).into_iter().cloned().collect();
    let mut want4: Vec<CatalogEntry> = reference::LENGTH4
        .iter()
        .map(|t| reference_entry(t))
        .collect();
    len4.sort();
    want4.sort();
    checks.push(Check::new(
        "length4: explicit entries",
        len4 == want4,
        len4.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join("; "),
    ));

    let all_div4 = c.query(|e| e.len() == 5 && e.indices().iter().all(|i| i % 4 == 0));
    checks.push(Check::new(
        "length5: no entry with all indices divisible by 4",
        all_div4.is_empty(),
        describe(&all_div4),
    ));
    let any_div5 = c.query(|e| e.len() == 5 && e.indices().iter().any(|i| i % 5 == 0));
    checks.push(Check::new(
        "length5: no entry with an index divisible by 5",
        any_div5.is_empty(),
        describe(&any_div5),
    ));

    let mut big: Vec<CatalogEntry> = c
        .query(|e| e.len() == 6 && e.indices().iter().all(|&i| i >= 4))
        .into_iter()
        .cloned()
        .collect();
    big.sort();
    let mut want_big = vec![c4_6(), c5_6()];
    want_big.sort();
    checks.push(Check::new(
        "length6: entries with all indices >= 4 are exactly C_{4^6}, C_{5^6}",
        big == want_big,
        big.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join("; "),
    ));
    let prime5 =
        c.query(|e| e.len() == 6 && e.indices().iter().any(|&i| has_prime_factor_at_least(i, 5)));
    checks.push(Check::new(
        "length6: C_{5^6} is the only entry with an index divisible by a prime >= 5",
        prime5.len() == 1 && *prime5[0] == c5_6(),
        describe(&prime5),
    ));

    LemmaReport { checks }
}
