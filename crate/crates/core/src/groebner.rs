//! Strong Gröbner bases over the integers and the ideal-membership facts
//! behind the pair and triple coefficient statements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::vars::*;
use crate::poly::{normal_form, PolyZ};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("basis grew past {0} elements")]
    BasisLimit(usize),
    #[error("more than {0} pairs processed")]
    PairLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits {
            max_basis: 2_000,
            max_pairs: 200_000,
        }
    }
}

/// Generators of an ideal of `Z[t1, ..., u4]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdealBasis {
    pub generators: Vec<PolyZ>,
}

impl IdealBasis {
    pub fn new(generators: Vec<PolyZ>) -> Self {
        IdealBasis {
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// `lt(g)` strongly divides `lt(f)`: monomial and coefficient both divide.
fn strongly_divides(g: &PolyZ, f: &PolyZ) -> bool {
    g.lm().divides(&f.lm()) && f.lc().is_multiple_of(g.lc())
}

/// Buchberger completion with S-polynomials and gcd-polynomials. Pairs are
/// taken smallest lcm first; S-polynomials are skipped when both the
/// leading monomials and the leading coefficients are coprime.
pub fn strong_groebner_with(
    b: &IdealBasis,
    limits: GroebnerLimits,
) -> Result<IdealBasis, GroebnerError> {
    let mut g: Vec<PolyZ> = Vec::new();
    for f in &b.generators {
        let h = normal_form(f, &g).normalized_sign();
        if !h.is_zero() {
            g.push(h);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(GroebnerError::PairLimit(limits.max_pairs));
        }
        let pos = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                (g[i].lm().lcm(&g[j].lm()), i, j)
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(pos);
        let (fi, fj) = (&g[i], &g[j]);
        let (mi, mj) = (fi.lm(), fj.lm());
        let (ai, aj) = (fi.lc().clone(), fj.lc().clone());
        let l = mi.lcm(&mj);
        let (si, sj) = (l.div(&mi), l.div(&mj));
        let mut new = Vec::new();

        if !(mi.coprime(&mj) && ai.gcd(&aj).is_one()) {
            let c = ai.lcm(&aj);
            let s = &fi.scale(&(&c / &ai), &si) - &fj.scale(&(&c / &aj), &sj);
            new.push(s);
        }
        if !aj.is_multiple_of(&ai) && !ai.is_multiple_of(&aj) {
            let (_, x, y) = ext_gcd(&ai, &aj);
            let gp = &fi.scale(&x, &si) + &fj.scale(&y, &sj);
            new.push(gp);
        }
        for p in new {
            let h = normal_form(&p, &g).normalized_sign();
            if h.is_zero() {
                continue;
            }
            let k = g.len();
            for i in 0..k {
                pairs.push((i, k));
            }
            g.push(h);
            if g.len() > limits.max_basis {
                return Err(GroebnerError::BasisLimit(limits.max_basis));
            }
        }
    }
    Ok(IdealBasis {
        generators: minimize(g),
    })
}

pub fn strong_groebner(b: &IdealBasis) -> Result<IdealBasis, GroebnerError> {
    strong_groebner_with(b, GroebnerLimits::default())
}

/// Drops elements whose leading term is strongly divisible by another's.
fn minimize(mut g: Vec<PolyZ>) -> Vec<PolyZ> {
    g.sort_by_key(|p| (p.lm(), p.lc().abs()));
    let mut kept: Vec<PolyZ> = Vec::new();
    for f in g {
        if !kept.iter().any(|k| strongly_divides(k, &f)) {
            kept.push(f);
        }
    }
    kept
}

/// `f` reduces to zero against a strong basis.
pub fn is_member(f: &PolyZ, basis: &IdealBasis) -> bool {
    normal_form(f, &basis.generators).is_zero()
}

/// Whether the nonzero integer `c` lies in the ideal.
pub fn contains_constant(b: &IdealBasis, c: i64) -> Result<bool, GroebnerError> {
    assert!(c != 0, "constant must be nonzero");
    let gb = strong_groebner(b)?;
    Ok(is_member(&PolyZ::constant(c), &gb))
}

/// The group elements appearing in the systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elt {
    R,
    R2,
    S,
    RS,
    R2S,
}

impl Elt {
    pub const ALL: [Elt; 5] = [Elt::R, Elt::R2, Elt::S, Elt::RS, Elt::R2S];

    pub fn name(self) -> &'static str {
        match self {
            Elt::R => "R",
            Elt::R2 => "R^2",
            Elt::S => "S",
            Elt::RS => "RS",
            Elt::R2S => "R^2S",
        }
    }

    /// Top coefficients `(p1, p2)` as polynomials.
    pub fn top(self) -> (PolyZ, PolyZ) {
        let two = || PolyZ::from(2);
        match self {
            Elt::R => (
                t1() * t2() + t2() * t3() + t3() * t4(),
                t2() * t2() + t2() * t4() + t4() * t4(),
            ),
            Elt::R2 => (
                t1() * t2() + t1() * t4() + t3() * t4(),
                t2() * t2() + t2() * t4() + t4() * t4(),
            ),
            Elt::S => (t3() * t4() - t1() * t2(), t4() * t4() - t2() * t2()),
            Elt::RS => (
                t1() * t2() + t1() * t4() + t2() * t3(),
                t2() * t2() + two() * t2() * t4(),
            ),
            Elt::R2S => (
                t1() * t4() + t2() * t3() + t3() * t4(),
                t4() * t4() + two() * t2() * t4(),
            ),
        }
    }

    /// First bottom coefficient `P1`, with `t1^2 - t3^2` for `S`.
    pub fn bottom_first(self) -> PolyZ {
        let two = || PolyZ::from(2);
        match self {
            Elt::R | Elt::R2 => t1() * t1() + t1() * t3() + t3() * t3(),
            Elt::S => t1() * t1() - t3() * t3(),
            Elt::RS => t1() * t1() + two() * t1() * t3(),
            Elt::R2S => t3() * t3() + two() * t1() * t3(),
        }
    }
}

pub fn coprime() -> PolyZ {
    u1() * t1() + u2() * t2() + u3() * t3() + u4() * t4() - PolyZ::from(1)
}

pub fn coprime_t2t4() -> PolyZ {
    u2() * t2() + u4() * t4() - PolyZ::from(1)
}

pub fn coprime_t1t3() -> PolyZ {
    u1() * t1() + u3() * t3() - PolyZ::from(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    /// Both top coefficients and the first bottom coefficient of two elements.
    Pair,
    /// The first top coefficient of three elements.
    Triple,
    /// Every coefficient of both equations for `(R^2, S)`.
    FullPair,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemKind::Pair => "pair",
            SystemKind::Triple => "triple",
            SystemKind::FullPair => "full pair",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaSystem {
    pub kind: SystemKind,
    pub elements: Vec<Elt>,
    pub basis: IdealBasis,
    /// Whether 3 is expected in the ideal.
    pub expect_three: bool,
}

impl LemmaSystem {
    pub fn name(&self) -> String {
        let names: Vec<&str> = self.elements.iter().map(|e| e.name()).collect();
        format!("{} ({})", self.kind, names.join(", "))
    }
}

fn pair_system(a: Elt, b: Elt) -> LemmaSystem {
    let (a1, a2) = a.top();
    let (b1, b2) = b.top();
    LemmaSystem {
        kind: SystemKind::Pair,
        elements: vec![a, b],
        basis: IdealBasis::new(vec![
            a1,
            a2,
            b1,
            b2,
            a.bottom_first(),
            b.bottom_first(),
            coprime(),
        ]),
        expect_three: !(a == Elt::R && b == Elt::R2),
    }
}

fn triple_system(a: Elt, b: Elt, c: Elt) -> LemmaSystem {
    LemmaSystem {
        kind: SystemKind::Triple,
        elements: vec![a, b, c],
        basis: IdealBasis::new(vec![
            a.top().0,
            b.top().0,
            c.top().0,
            coprime_t1t3(),
            coprime_t2t4(),
        ]),
        expect_three: (a, b, c) != (Elt::S, Elt::RS, Elt::R2S),
    }
}

/// The nine-generator system for `(R^2, S)` with both equations in full.
pub fn full_pair_system() -> LemmaSystem {
    let (r1, r2) = Elt::R2.top();
    let (s1, s2) = Elt::S.top();
    LemmaSystem {
        kind: SystemKind::FullPair,
        elements: vec![Elt::R2, Elt::S],
        basis: IdealBasis::new(vec![
            r1,
            r2,
            Elt::R2.bottom_first(),
            t1() * t2() + t2() * t3() + t3() * t4(),
            s1,
            s2,
            Elt::S.bottom_first(),
            t1() * t2() - t3() * t4(),
            coprime(),
        ]),
        expect_three: true,
    }
}

/// Ten pair systems, ten triple systems, then the full `(R^2, S)` system.
pub fn lemma_systems() -> Vec<LemmaSystem> {
    let mut out = Vec::new();
    let e = Elt::ALL;
    for i in 0..5 {
        for j in i + 1..5 {
            out.push(pair_system(e[i], e[j]));
        }
    }
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                out.push(triple_system(e[i], e[j], e[k]));
            }
        }
    }
    out.push(full_pair_system());
    out
}

/// `t1^2 + t1 t3 + t3^2`, a member of the exceptional triple ideal.
pub fn exceptional_member() -> PolyZ {
    t1() * t1() + t1() * t3() + t3() * t3()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub generators: usize,
    pub basis_size: usize,
    pub contains_three: bool,
    pub expected: bool,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.contains_three == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerReport {
    pub verdicts: Vec<Verdict>,
    pub exceptional_membership: bool,
}

impl GroebnerReport {
    pub fn passed(&self) -> bool {
        self.exceptional_membership && self.verdicts.iter().all(Verdict::passed)
    }
}

/// Computes every system's basis (in parallel) and compares the verdicts.
pub fn verify_groebner_lemmas() -> Result<GroebnerReport, GroebnerError> {
    let systems = lemma_systems();
    let bases: Vec<IdealBasis> = systems
        .par_iter()
        .map(|s| strong_groebner(&s.basis))
        .collect::<Result<_, _>>()?;
    let three = PolyZ::from(3);
    let verdicts = systems
        .iter()
        .zip(&bases)
        .map(|(s, gb)| Verdict {
            name: s.name(),
            generators: s.basis.generators.len(),
            basis_size: gb.generators.len(),
            contains_three: is_member(&three, gb),
            expected: s.expect_three,
        })
        .collect();
    let exceptional = systems
        .iter()
        .position(|s| s.kind == SystemKind::Triple && !s.expect_three)
        .expect("exceptional system present");
    Ok(GroebnerReport {
        verdicts,
        exceptional_membership: is_member(&exceptional_member(), &bases[exceptional]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> PolyZ {
        t1()
    }
    fn c(n: i64) -> PolyZ {
        PolyZ::from(n)
    }

    #[test]
    fn three_from_cyclotomic_pair() {
        let b = IdealBasis::new(vec![x() * x() + x() + c(1), x() - c(1)]);
        assert!(contains_constant(&b, 3).unwrap());
        assert!(!contains_constant(&b, 2).unwrap());
        let gb = strong_groebner(&b).unwrap();
        assert!(gb.generators.contains(&c(3)));
    }

    #[test]
    fn principal_constant() {
        let gb = strong_groebner(&IdealBasis::new(vec![c(3)])).unwrap();
        assert_eq!(gb.generators, vec![c(3)]);
        assert!(contains_constant(&IdealBasis::new(vec![c(1)]), 3).unwrap());
    }

    #[test]
    fn proper_ideal_has_no_constant() {
        let gb = strong_groebner(&IdealBasis::new(vec![t1(), t2()])).unwrap();
        assert!(gb.generators.iter().all(|g| !g.is_constant()));
        assert!(!contains_constant(&IdealBasis::new(vec![t1(), t2()]), 3).unwrap());
    }

    #[test]
    fn gcd_polynomial_needed() {
        // 2x and 3y generate x*y, which no leading term strongly divides
        let b = IdealBasis::new(vec![c(2) * t1(), c(3) * t2()]);
        let gb = strong_groebner(&b).unwrap();
        assert!(is_member(&(t1() * t2()), &gb));
        assert!(!is_member(&t1(), &gb));
        let b = IdealBasis::new(vec![c(4) * t1() + c(1), c(6) * t1()]);
        let gb = strong_groebner(&b).unwrap();
        assert!(is_member(&c(3), &gb));
        assert!(!is_member(&c(1), &gb));
    }

    #[test]
    fn system_shapes() {
        let s = lemma_systems();
        assert_eq!(s.iter().filter(|s| s.kind == SystemKind::Pair).count(), 10);
        assert_eq!(
            s.iter().filter(|s| s.kind == SystemKind::Triple).count(),
            10
        );
        assert_eq!(full_pair_system().basis.generators.len(), 9);
        let last = s.iter().rfind(|s| s.kind == SystemKind::Triple).unwrap();
        assert_eq!(last.elements, vec![Elt::S, Elt::RS, Elt::R2S]);
        assert!(last.basis.generators.contains(&(t3() * t4() - t1() * t2())));
        let first = &s[0];
        assert_eq!(first.elements, vec![Elt::R, Elt::R2]);
        assert!(!first.expect_three);
    }

    #[test]
    fn limits_are_enforced() {
        let b = full_pair_system().basis;
        let tight = GroebnerLimits {
            max_basis: 2_000,
            max_pairs: 3,
        };
        assert_eq!(
            strong_groebner_with(&b, tight),
            Err(GroebnerError::PairLimit(3))
        );
    }
}
