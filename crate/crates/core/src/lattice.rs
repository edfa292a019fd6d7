//! Subgroups of Z^2 in canonical echelon form.
//!
//! Every subgroup is stored through a unique basis:
//!
//! * rank 0: the zero subgroup;
//! * rank 1: a single generator `(x, y)` with `y > 0`, or `y == 0` and `x > 0`;
//! * rank 2: `g1 = (a, 0)`, `g2 = (c, b)` with `a, b >= 1` and `0 <= c < a`.
//!
//! Because the basis is unique, structural equality is subgroup equality.
//!
//! The text form used by catalogs and the CLI is a different (also unique)
//! normal form: the 2x2 matrix whose *columns* generate the lattice,
//! `(p 0; q r)` with `0 <= q < r`, written `p,0;q,r`. This is how coverings are
//! usually displayed, e.g. `1,0;1,2` is the lattice `{x = y mod 2}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{crt, ext_gcd, gcd, lcm};
use crate::ratmat::{Rat, RatMat2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("subgroup has rank {0}; the quotient Z^2/S is infinite")]
    InfiniteQuotient(u8),
    #[error("matrix is singular")]
    Singular,
    #[error("lattice data does not fit in 64-bit integers")]
    Overflow,
    #[error("cannot parse subgroup `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vec2Z {
    pub x: i64,
    pub y: i64,
}

impl Vec2Z {
    pub const fn new(x: i64, y: i64) -> Self {
        Vec2Z { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl From<(i64, i64)> for Vec2Z {
    fn from((x, y): (i64, i64)) -> Self {
        Vec2Z { x, y }
    }
}

impl fmt::Display for Vec2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Index of a subgroup: finite for rank 2, infinite otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(i64),
    Infinite,
}

impl Index {
    pub fn finite(self) -> Option<i64> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Repr {
    Zero,
    Line(Vec2Z),
    Lattice { a: i64, c: i64, b: i64 },
}

/// An additive subgroup of Z^2 (rank 0, 1 or 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup(Repr);

impl Default for Subgroup {
    fn default() -> Self {
        Subgroup::zero()
    }
}

impl Subgroup {
    pub const fn zero() -> Self {
        Subgroup(Repr::Zero)
    }

    pub const fn full() -> Self {
        Subgroup(Repr::Lattice { a: 1, c: 0, b: 1 })
    }

    /// `{(x, y) : x = 0 mod n}`.
    pub fn x_multiple(n: i64) -> Self {
        Subgroup::from_hermite(n.abs(), 0, 1)
    }

    /// `{(x, y) : y = 0 mod n}`.
    pub fn y_multiple(n: i64) -> Self {
        Subgroup::from_hermite(1, 0, n.abs())
    }

    /// Rank-2 subgroup with basis `(a, 0), (c, b)`; `c` is reduced mod `a`.
    pub fn from_hermite(a: i64, c: i64, b: i64) -> Self {
        assert!(a >= 1 && b >= 1, "hermite basis needs a, b >= 1");
        Subgroup(Repr::Lattice {
            a,
            c: c.rem_euclid(a),
            b,
        })
    }

    /// Lattice generated by the columns of `(p 0; q r)`, i.e. by `(p, q)` and `(0, r)`.
    pub fn from_columns(p: i64, q: i64, r: i64) -> Self {
        Subgroup::canonicalize(&[Vec2Z::new(p, q), Vec2Z::new(0, r)])
    }

    /// The unique canonical basis of the subgroup generated by `gens`.
    pub fn canonicalize(gens: &[Vec2Z]) -> Self {
        // Row reduction on the second coordinate: `pivot` carries gcd of all
        // y-coordinates, `a` collects the x-axis part.
        let mut pivot: Option<(i64, i64)> = None;
        let mut a: i64 = 0;
        let reduce = |v: i64, a: i64| if a > 0 { v.rem_euclid(a) } else { v };
        for g in gens {
            if g.y == 0 {
                a = gcd(a, g.x);
                continue;
            }
            match pivot {
                None => pivot = Some((g.x, g.y)),
                Some((pc, pb)) => {
                    let (d, s, t) = ext_gcd(pb, g.y);
                    let nc = (s as i128 * pc as i128 + t as i128 * g.x as i128) as i64;
                    let nc = reduce(nc, a);
                    let ex = (g.y / d) as i128 * pc as i128 - (pb / d) as i128 * g.x as i128;
                    let ex = i64::try_from(ex).expect("subgroup coordinates overflow");
                    a = gcd(a, ex);
                    pivot = Some((nc, d));
                }
            }
            if let Some((pc, pb)) = pivot {
                pivot = Some((reduce(pc, a), pb));
            }
        }
        match (pivot, a) {
            (None, 0) => Subgroup::zero(),
            (None, a) => Subgroup(Repr::Line(Vec2Z::new(a, 0))),
            (Some((c, b)), 0) => {
                let (c, b) = if b < 0 { (-c, -b) } else { (c, b) };
                Subgroup(Repr::Line(Vec2Z::new(c, b)))
            }
            (Some((c, b)), a) => {
                let (c, b) = if b < 0 { (-c, -b) } else { (c, b) };
                Subgroup::from_hermite(a, c, b)
            }
        }
    }

    pub fn rank(&self) -> u8 {
        match self.0 {
            Repr::Zero => 0,
            Repr::Line(_) => 1,
            Repr::Lattice { .. } => 2,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    pub fn is_full(&self) -> bool {
        matches!(self.0, Repr::Lattice { a: 1, b: 1, .. })
    }

    /// Canonical basis vectors (0, 1 or 2 of them).
    pub fn basis(&self) -> Vec<Vec2Z> {
        match self.0 {
            Repr::Zero => vec![],
            Repr::Line(v) => vec![v],
            Repr::Lattice { a, c, b } => vec![Vec2Z::new(a, 0), Vec2Z::new(c, b)],
        }
    }

    /// `(a, c, b)` for rank 2.
    pub fn hermite(&self) -> Option<(i64, i64, i64)> {
        match self.0 {
            Repr::Lattice { a, c, b } => Some((a, c, b)),
            _ => None,
        }
    }

    /// Column normal form `(p, q, r)`: the lattice is `Z(p, q) + Z(0, r)`, `0 <= q < r`.
    pub fn columns(&self) -> Option<(i64, i64, i64)> {
        let (a, c, b) = self.hermite()?;
        let (p, _, t) = ext_gcd(a, c);
        // s*(a, 0) + t*(c, b) = (p, t*b)
        let r = a * b / p;
        let q = (t as i128 * b as i128).rem_euclid(r as i128) as i64;
        Some((p, q, r))
    }

    pub fn index(&self) -> Index {
        match self.0 {
            Repr::Lattice { a, b, .. } => Index::Finite(a * b),
            _ => Index::Infinite,
        }
    }

    pub fn contains(&self, v: Vec2Z) -> bool {
        match self.0 {
            Repr::Zero => v.is_zero(),
            Repr::Line(g) => {
                if g.y != 0 {
                    v.y % g.y == 0 && v.x == (v.y / g.y) * g.x
                } else {
                    v.y == 0 && v.x % g.x == 0
                }
            }
            Repr::Lattice { a, c, b } => {
                if v.y % b != 0 {
                    return false;
                }
                let n = (v.y / b) as i128;
                (v.x as i128 - n * c as i128).rem_euclid(a as i128) == 0
            }
        }
    }

    /// Subgroup generated by this subgroup and `v`.
    pub fn adjoin(&self, v: Vec2Z) -> Self {
        let mut gens = self.basis();
        gens.push(v);
        Subgroup::canonicalize(&gens)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis().into_iter().all(|g| other.contains(g))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        match (self.0, other.0) {
            (Repr::Zero, _) | (_, Repr::Zero) => Subgroup::zero(),
            (Repr::Line(g), _) => line_meet(g, other),
            (_, Repr::Line(g)) => line_meet(g, self),
            (
                Repr::Lattice {
                    a: a1,
                    c: c1,
                    b: b1,
                },
                Repr::Lattice {
                    a: a2,
                    c: c2,
                    b: b2,
                },
            ) => lattice_meet((a1, c1, b1), (a2, c2, b2)),
        }
    }

    /// `{(i, j) : 0 <= i < a, 0 <= j < b}` for the canonical basis `(a, 0), (c, b)`.
    pub fn fundamental_domain(&self) -> Result<Vec<Vec2Z>, LatticeError> {
        let (a, _, b) = self
            .hermite()
            .ok_or(LatticeError::InfiniteQuotient(self.rank()))?;
        Ok((0..a)
            .flat_map(|i| (0..b).map(move |j| Vec2Z::new(i, j)))
            .collect())
    }

    /// The lattice `{v in Z^2 : gamma v in Z^2}`.
    pub fn lattice_of(gamma: &RatMat2) -> Result<Subgroup, LatticeError> {
        if gamma.det().is_zero() {
            return Err(LatticeError::Singular);
        }
        let row_a = row_congruence(&gamma.a, &gamma.b)?;
        let row_b = row_congruence(&gamma.c, &gamma.d)?;
        Ok(row_a.intersect(&row_b))
    }

    /// The `q + 1` sublattices of prime index `q` (rank 2 only).
    pub fn prime_index_sublattices(&self, q: i64) -> Vec<Subgroup> {
        let Some((a, c, b)) = self.hermite() else {
            return Vec::new();
        };
        let u = Vec2Z::new(a, 0);
        let w = Vec2Z::new(c, b);
        let mut out: Vec<Subgroup> = (0..q)
            .map(|k| {
                Subgroup::canonicalize(&[
                    Vec2Z::new(q * u.x, q * u.y),
                    Vec2Z::new(w.x + k * u.x, w.y + k * u.y),
                ])
            })
            .collect();
        out.push(Subgroup::canonicalize(&[u, Vec2Z::new(q * w.x, q * w.y)]));
        out
    }

    /// Sort key used by catalogs: index first, then the column normal form.
    pub fn sort_key(&self) -> (u8, i64, i64, i64, i64) {
        match self.0 {
            Repr::Zero => (0, 0, 0, 0, 0),
            Repr::Line(v) => (1, 0, v.x, v.y, 0),
            Repr::Lattice { a, b, .. } => {
                let (p, q, r) = self.columns().expect("rank 2");
                (2, a * b, p, q, r)
            }
        }
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// Intersection of `Z g` with an arbitrary subgroup.
fn line_meet(g: Vec2Z, other: &Subgroup) -> Subgroup {
    match other.0 {
        Repr::Zero => Subgroup::zero(),
        Repr::Line(h) => {
            if g.x as i128 * h.y as i128 != g.y as i128 * h.x as i128 {
                return Subgroup::zero();
            }
            // Both canonical generators point the same way; write them as k * p.
            let k1 = gcd(g.x, g.y);
            let k2 = gcd(h.x, h.y);
            let p = Vec2Z::new(g.x / k1, g.y / k1);
            let k = lcm(k1, k2);
            Subgroup::canonicalize(&[Vec2Z::new(p.x * k, p.y * k)])
        }
        Repr::Lattice { a, b, .. } => {
            // m * g lies in the lattice for m = index, so the least m divides it.
            let n = a * b;
            let m = (1..=n)
                .filter(|m| n % m == 0)
                .find(|&m| other.contains(Vec2Z::new(m * g.x, m * g.y)))
                .expect("index multiple always lies in the lattice");
            Subgroup::canonicalize(&[Vec2Z::new(m * g.x, m * g.y)])
        }
    }
}

fn lattice_meet((a1, c1, b1): (i64, i64, i64), (a2, c2, b2): (i64, i64, i64)) -> Subgroup {
    // (x, y) lies in (a, c, b) iff y = n b and x = n c mod a.
    let a = lcm(a1, a2);
    let l = lcm(b1, b2);
    let n1 = l / b1;
    let n2 = l / b2;
    let g = gcd(a1, a2);
    let drift = (n1 as i128 * c1 as i128 - n2 as i128 * c2 as i128).rem_euclid(g as i128) as i64;
    let k = g / gcd(g, drift);
    let b = k * l;
    let r1 = ((k * n1) as i128 * c1 as i128).rem_euclid(a1 as i128) as i64;
    let r2 = ((k * n2) as i128 * c2 as i128).rem_euclid(a2 as i128) as i64;
    let c = crt(r1, a1, r2, a2).expect("compatible by choice of k");
    Subgroup::from_hermite(a, c, b)
}

/// Lattice of `(x, y)` with `alpha x + beta y` integral.
fn row_congruence(alpha: &Rat, beta: &Rat) -> Result<Subgroup, LatticeError> {
    let den = alpha.denom().lcm(beta.denom());
    let to_i64 = |v: &BigInt| v.to_i64().ok_or(LatticeError::Overflow);
    let scale = BigRational::from_integer(den.clone());
    let m1 = (alpha * &scale).to_integer();
    let m2 = (beta * &scale).to_integer();
    if den.is_one() {
        return Ok(Subgroup::full());
    }
    let n = to_i64(&den)?;
    let m1 = to_i64(&m1.mod_floor(&den))?;
    let m2 = to_i64(&m2.mod_floor(&den))?;
    Ok(congruence_lattice(m1, m2, n))
}

/// `{(x, y) : m1 x + m2 y = 0 mod n}` for `n >= 1`.
pub fn congruence_lattice(m1: i64, m2: i64, n: i64) -> Subgroup {
    assert!(n >= 1);
    let g = gcd(m2, n);
    // x must satisfy m1 x = 0 mod g.
    let s = g / gcd(m1, g);
    let ng = n / g;
    let y0 = if ng == 1 {
        0
    } else {
        let (_, inv, _) = ext_gcd((m2 / g).rem_euclid(ng), ng);
        let rhs = (-(m1 as i128) * s as i128 / g as i128).rem_euclid(ng as i128);
        (rhs * inv as i128).rem_euclid(ng as i128) as i64
    };
    Subgroup::canonicalize(&[Vec2Z::new(s, y0), Vec2Z::new(0, ng)])
}

/// Exact sum of reciprocal indices.
pub fn density_sum(lattices: &[Subgroup]) -> Result<Rat, LatticeError> {
    lattices
        .iter()
        .try_fold(Rat::zero(), |acc, l| match l.index() {
            Index::Finite(n) => Ok(acc + BigRational::new(BigInt::one(), BigInt::from(n))),
            Index::Infinite => Err(LatticeError::InfiniteQuotient(l.rank())),
        })
}

/// True iff the union of `lattices` is Z^2.
pub fn is_cover(lattices: &[Subgroup]) -> bool {
    let full_rank: Vec<&Subgroup> = lattices.iter().filter(|l| l.rank() == 2).collect();
    if full_rank.is_empty() {
        return false;
    }
    if full_rank.iter().any(|l| l.is_full()) {
        return true;
    }
    let w = full_rank
        .iter()
        .fold(Subgroup::full(), |acc, l| acc.intersect(l));
    let (a, _, b) = w.hermite().expect("intersection of lattices has rank 2");
    (0..a).all(|i| {
        (0..b).all(|j| {
            let v = Vec2Z::new(i, j);
            full_rank.iter().any(|l| l.contains(v))
        })
    })
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Zero => write!(f, "0"),
            Repr::Line(v) => write!(f, "{},{}", v.x, v.y),
            Repr::Lattice { .. } => {
                let (p, q, r) = self.columns().expect("rank 2");
                write!(f, "{p},0;{q},{r}")
            }
        }
    }
}

impl FromStr for Subgroup {
    type Err = LatticeError;

    /// Accepts `0`, `u,v`, or a column matrix `p,s;q,r` (generators `(p, q)`, `(s, r)`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Parse(s.to_string());
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        let t = s.trim();
        if t == "0" {
            return Ok(Subgroup::zero());
        }
        match t.split_once(';') {
            Some((r0, r1)) => {
                let (p, s_) = r0.split_once(',').ok_or_else(bad)?;
                let (q, r) = r1.split_once(',').ok_or_else(bad)?;
                let (p, s_, q, r) = (num(p)?, num(s_)?, num(q)?, num(r)?);
                let sg = Subgroup::canonicalize(&[Vec2Z::new(p, q), Vec2Z::new(s_, r)]);
                if sg.rank() != 2 {
                    return Err(bad());
                }
                Ok(sg)
            }
            None => {
                let (u, v) = t.split_once(',').ok_or_else(bad)?;
                let v = Vec2Z::new(num(u)?, num(v)?);
                if v.is_zero() {
                    return Err(bad());
                }
                Ok(Subgroup::canonicalize(&[v]))
            }
        }
    }
}
