use std::fs;
use std::path::Path;

use latcover::catalog::{removal_minimal, replacement_minimal, verify_lemma_counts, Catalog};
use latcover::enumerate::{enumerate_minimal_coverings, Enumeration, SearchConfig, SLOTS};
use latcover::forms::{
    cross_value_check, extraordinary_by_c3, f0, sextic, sextic_conjugator, BinaryForm, Variant,
};
use latcover::groebner::verify_groebner_lemmas;
use latcover::modular::{all_scans, scans_for_modulus, ScanReport};
use latcover::ratmat::{fmt_rat, rat, rat_int, RatMat2};
use serde::Serialize;
use serde_json::json;

use crate::report::Report;

/// A failure that stops a command before it can report checks.
#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Failed(String),
}

fn failed(e: impl std::fmt::Display) -> CommandError {
    CommandError::Failed(e.to_string())
}

const PRIMES: [i64; 4] = [2, 3, 5, 7];
const RAW_EXPECTED: usize = 6131;

fn run_enumeration(threads: usize) -> Result<(Enumeration, Catalog), CommandError> {
    let e = enumerate_minimal_coverings(SearchConfig {
        threads,
        ..SearchConfig::default()
    })
    .map_err(failed)?;
    let catalog = Catalog::from_enumeration(&e).map_err(failed)?;
    Ok((e, catalog))
}

pub fn enumerate(
    slots: usize,
    out: Option<&Path>,
    raw_count: bool,
    threads: usize,
) -> Result<Report, CommandError> {
    if slots != SLOTS {
        return Err(CommandError::Usage(format!(
            "only --slots {SLOTS} is supported, got {slots}"
        )));
    }
    let (e, catalog) = run_enumeration(threads)?;
    let mut r = enumeration_report(&e, &catalog, raw_count);
    if let Some(path) = out {
        fs::write(path, catalog.serialize()).map_err(|source| CommandError::Io {
            path: path.display().to_string(),
            source,
        })?;
        r.set("out", path.display().to_string());
    }
    Ok(r)
}

fn enumeration_report(e: &Enumeration, catalog: &Catalog, raw_count: bool) -> Report {
    let mut r = Report::new("enumerate");
    r.note(format!("raw {}", e.raw.len()));
    r.note(format!("minimal {}", e.minimal.len()));
    let counts = catalog.count_by_length();
    for (len, want) in [(3, 1), (4, 4), (5, 9), (6, 40)] {
        let got = counts.get(&len).copied().unwrap_or(0);
        r.check(
            format!("length {len} count"),
            got == want,
            format!("{got}, expected {want}"),
        );
    }
    r.check(
        "minimal count",
        e.minimal.len() == 54,
        format!("{}, expected 54", e.minimal.len()),
    );
    if raw_count {
        r.check(
            "raw count",
            e.raw.len() == RAW_EXPECTED,
            format!("{}, expected {RAW_EXPECTED}", e.raw.len()),
        );
    }
    r.set("slots", SLOTS);
    r.set("raw", e.raw.len());
    r.set("minimal", e.minimal.len());
    r.set("by_length", &counts);
    r
}

pub fn catalog_report(catalog: &Catalog) -> Report {
    let mut r = Report::new("verify-catalog");
    for c in verify_lemma_counts(catalog).checks {
        r.check(c.name, c.passed, c.detail);
    }
    let not_removal: Vec<String> = catalog
        .entries
        .iter()
        .filter(|e| !removal_minimal(e))
        .map(|e| e.to_string())
        .collect();
    r.check(
        "entries: removal-minimal",
        not_removal.is_empty(),
        not_removal.join("; "),
    );
    let not_replacement: Vec<String> = catalog
        .entries
        .iter()
        .filter(|e| !replacement_minimal(e, &PRIMES))
        .map(|e| e.to_string())
        .collect();
    r.check(
        "entries: replacement-minimal for primes 2, 3, 5, 7",
        not_replacement.is_empty(),
        not_replacement.join("; "),
    );
    r.set("entries", catalog.entries.len());
    r.set("by_length", catalog.count_by_length());
    r.set("provenance", &catalog.provenance.fields);
    r
}

pub fn verify_catalog(path: &Path) -> Result<Report, CommandError> {
    let text = fs::read_to_string(path).map_err(|source| CommandError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let catalog = Catalog::parse(&text).map_err(|e| failed(format!("{}: {e}", path.display())))?;
    Ok(catalog_report(&catalog))
}

#[derive(Serialize)]
struct ScanSummary {
    name: String,
    modulus: i64,
    scanned: usize,
    exceptions: Vec<serde_json::Value>,
}

fn scan_summary(s: &ScanReport) -> ScanSummary {
    ScanSummary {
        name: s.name.clone(),
        modulus: s.modulus,
        scanned: s.scanned,
        exceptions: s
            .exceptions
            .iter()
            .map(|f| json!({"tuple": f.tuple, "count": f.count, "detail": f.detail}))
            .collect(),
    }
}

pub fn verify_modular(modulus: Option<i64>) -> Result<Report, CommandError> {
    let scans = match modulus {
        Some(n) => scans_for_modulus(n).map_err(|e| CommandError::Usage(e.to_string()))?,
        None => all_scans(),
    };
    let mut r = Report::new("verify-modular");
    for s in &scans {
        r.note(format!(
            "{} mod {}: {} tuples scanned, {} exceptions",
            s.name,
            s.modulus,
            s.scanned,
            s.exceptions.len()
        ));
        for c in &s.clauses {
            r.check(
                format!("{}: {}", s.name, c.name),
                c.passed,
                c.detail.clone(),
            );
        }
    }
    r.set("scans", scans.iter().map(scan_summary).collect::<Vec<_>>());
    Ok(r)
}

pub fn verify_groebner() -> Result<Report, CommandError> {
    let g = verify_groebner_lemmas().map_err(failed)?;
    let mut r = Report::new("verify-groebner");
    for v in &g.verdicts {
        r.check(
            format!("{}: 3 in ideal = {}", v.name, v.expected),
            v.passed(),
            format!(
                "{} generators, basis of {}, contains 3: {}",
                v.generators, v.basis_size, v.contains_three
            ),
        );
    }
    r.check(
        "exceptional triple ideal contains t1^2 + t1t3 + t3^2",
        g.exceptional_membership,
        "",
    );
    let verdicts: Vec<_> = g
        .verdicts
        .iter()
        .map(|v| json!({"system": v.name, "generators": v.generators, "basis_size": v.basis_size, "contains_three": v.contains_three}))
        .collect();
    r.set("verdicts", verdicts);
    Ok(r)
}

pub fn form_check(
    f: &BinaryForm,
    t: &RatMat2,
    variant: Variant,
    expect: Option<bool>,
) -> Result<Report, CommandError> {
    let v = extraordinary_by_c3(f, t, variant).map_err(failed)?;
    let mut r = Report::new("form-check");
    r.note(format!("form {f} under T^-1 {variant} T, T = {t}"));
    for (m, c) in &v.order_three {
        r.note(format!("order 3: {m} case {c}"));
    }
    r.note(format!("extraordinary: {}", v.extraordinary));
    if let Some(want) = expect {
        r.check(
            format!("extraordinary = {want}"),
            v.extraordinary == want,
            format!("got {}", v.extraordinary),
        );
    }
    r.set("form", f.to_string());
    r.set("conjugator", t.to_string());
    r.set("variant", variant.to_string());
    r.set("discriminant", fmt_rat(&f.discriminant()));
    r.set("extraordinary", v.extraordinary);
    let order_three: Vec<_> = v
        .order_three
        .iter()
        .map(|(m, c)| json!({"matrix": m.to_string(), "case": c.to_string()}))
        .collect();
    r.set("order_three", order_three);
    Ok(r)
}

pub fn form_compare(
    f: &BinaryForm,
    g: &BinaryForm,
    n: i64,
    m: i64,
) -> Result<Report, CommandError> {
    let v = cross_value_check(f, g, n, m).map_err(failed)?;
    let mut r = Report::new("form-compare");
    let show = |ws: &[latcover::forms::ValueWitness]| {
        ws.iter()
            .take(5)
            .map(|w| format!("{} at {}", w.value, w.point))
            .collect::<Vec<_>>()
            .join("; ")
    };
    r.check(
        format!("every value of g on box {n} is a value of f on box {m}"),
        v.g_values_missing_from_f.is_empty(),
        show(&v.g_values_missing_from_f),
    );
    r.check(
        format!("every value of f on box {n} is a value of g on box {m}"),
        v.f_values_missing_from_g.is_empty(),
        show(&v.f_values_missing_from_g),
    );
    r.set("f", f.to_string());
    r.set("g", g.to_string());
    r.set("n", n);
    r.set("m", m);
    r.set("unmatched", v.unmatched());
    Ok(r)
}

/// Every reproduction check in one report.
pub fn verify_all(threads: usize) -> Result<Report, CommandError> {
    let mut all = Report::new("verify-all");
    let (e, catalog) = run_enumeration(threads)?;
    all.absorb(enumeration_report(&e, &catalog, true));
    all.absorb(catalog_report(&catalog));
    all.absorb(verify_modular(None)?);
    all.absorb(verify_groebner()?);

    let id = RatMat2::identity();
    let sext = sextic(1, 0).map_err(failed)?;
    let example = BinaryForm::from_ints(&[0, 1, 3, 0]).map_err(failed)?;
    let third = RatMat2::diag(rat(1, 3), rat_int(1));
    for (label, f, t, variant, want) in [
        ("F0", f0(), id, Variant::D3, true),
        ("sextic(1,0)", sext, sextic_conjugator(), Variant::D6, true),
        ("XY(X+3Y)", example, third, Variant::D3, false),
    ] {
        let mut r = form_check(&f, &t, variant, Some(want))?;
        r.command = format!("form-check {label}");
        all.absorb(r);
    }
    all.absorb(form_compare(&f0(), &f0().dagger(), 10, 60)?);
    Ok(all)
}
