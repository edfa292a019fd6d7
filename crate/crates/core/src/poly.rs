//! Sparse polynomials with integer coefficients in the eight variables
//! `t1, t2, t3, t4, u1, u2, u3, u4`, ordered by degree reverse lexicographic
//! order with `t1 > t2 > ... > u4`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const NVARS: usize = 8;
pub const VAR_NAMES: [&str; NVARS] = ["t1", "t2", "t3", "t4", "u1", "u2", "u3", "u4"];

/// Exponent vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    /// `self / other`; the caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] - other.0[i]))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i].max(other.0[i])))
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// Graded, then the monomial with the smaller exponent in the last
/// differing variable is larger.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..NVARS).rev() {
                match self.0[i].cmp(&other.0[i]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(VAR_NAMES[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over Z; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyZ {
    terms: BTreeMap<Monomial, BigInt>,
}

impl PolyZ {
    pub fn zero() -> Self {
        PolyZ::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        PolyZ::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PolyZ { terms }
    }

    /// The variable with index `i` (`t1 = 0`, ..., `u4 = 7`).
    pub fn var(i: usize) -> Self {
        PolyZ::term(1, Monomial::var(i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.last_key_value()
    }

    pub fn lm(&self) -> Monomial {
        *self
            .leading()
            .expect("zero polynomial has no leading term")
            .0
    }

    pub fn lc(&self) -> &BigInt {
        self.leading()
            .expect("zero polynomial has no leading term")
            .1
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self - c * m * g`.
    pub fn sub_scaled(&mut self, c: &BigInt, m: &Monomial, g: &PolyZ) {
        for (gm, gc) in &g.terms {
            self.add_term(gm.mul(m), -(c * gc));
        }
    }

    pub fn scale(&self, c: &BigInt, m: &Monomial) -> PolyZ {
        let mut out = PolyZ::zero();
        if c.is_zero() {
            return out;
        }
        for (gm, gc) in &self.terms {
            out.terms.insert(gm.mul(m), c * gc);
        }
        out
    }

    /// Divides by the gcd of the coefficients and makes the leading
    /// coefficient positive.
    pub fn primitive(&self) -> PolyZ {
        let Some((_, lc)) = self.leading() else {
            return PolyZ::zero();
        };
        let content = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        let content = if lc.is_negative() { -content } else { content };
        PolyZ {
            terms: self.terms.iter().map(|(m, c)| (*m, c / &content)).collect(),
        }
    }

    /// Makes the leading coefficient positive.
    pub fn normalized_sign(self) -> PolyZ {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self,
        }
    }

    /// Evaluates with every coefficient and value reduced modulo `p`.
    pub fn eval_mod(&self, point: &[i64; NVARS], p: i64) -> i64 {
        let pb = BigInt::from(p);
        let mut acc = 0i64;
        for (m, c) in &self.terms {
            let mut v = i64::try_from(c.mod_floor(&pb)).expect("reduced");
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].rem_euclid(p) % p;
                }
            }
            acc = (acc + v) % p;
        }
        acc
    }

    pub fn eval(&self, point: &[i64; NVARS]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                v *= BigInt::from(point[i]).pow(u32::from(e));
            }
            acc += v;
        }
        acc
    }
}

impl Add for &PolyZ {
    type Output = PolyZ;
    fn add(self, o: &PolyZ) -> PolyZ {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &PolyZ {
    type Output = PolyZ;
    fn sub(self, o: &PolyZ) -> PolyZ {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &PolyZ {
    type Output = PolyZ;
    fn mul(self, o: &PolyZ) -> PolyZ {
        let mut out = PolyZ::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        PolyZ {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for PolyZ {
            type Output = PolyZ;
            fn $f(self, o: PolyZ) -> PolyZ {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for PolyZ {
    fn from(c: i64) -> Self {
        PolyZ::constant(c)
    }
}

impl fmt::Display for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Integer quotient with symmetric remainder: `c = q * d + r`, `|r| <= |d| / 2`.
pub fn symmetric_divmod(c: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let (mut q, mut r) = c.div_mod_floor(d);
    let twice: BigInt = &r * 2;
    if twice.abs() > d.abs() {
        r -= d;
        q += 1;
    }
    (q, r)
}

/// Reduces `f` by `basis` term by term, from the top. A term `c m` is
/// cancelled by `g` when `lm(g) | m` and `lc(g) | c`; otherwise, when
/// `lm(g) | m`, `c` is replaced by its symmetric remainder modulo `lc(g)` if
/// that is strictly smaller in absolute value.
pub fn normal_form(f: &PolyZ, basis: &[PolyZ]) -> PolyZ {
    let mut rest = f.clone();
    let mut out = PolyZ::zero();
    while let Some((m, c)) = rest.terms.last_key_value().map(|(m, c)| (*m, c.clone())) {
        let mut c = c;
        let mut progressed = true;
        while progressed && !c.is_zero() {
            progressed = false;
            if let Some(g) = basis
                .iter()
                .find(|g| !g.is_zero() && g.lm().divides(&m) && c.is_multiple_of(g.lc()))
            {
                let q = &c / g.lc();
                rest.sub_scaled(&q, &m.div(&g.lm()), g);
                c = BigInt::zero();
                break;
            }
            for g in basis.iter().filter(|g| !g.is_zero() && g.lm().divides(&m)) {
                let (q, r) = symmetric_divmod(&c, g.lc());
                if r.abs() < c.abs() {
                    rest.sub_scaled(&q, &m.div(&g.lm()), g);
                    c = r;
                    progressed = true;
                    break;
                }
            }
        }
        if !c.is_zero() {
            rest.terms.remove(&m);
            out.terms.insert(m, c);
        }
    }
    out
}

/// Builds polynomials from a compact term list: `[(coeff, [exponents])]`.
pub fn poly(terms: &[(i64, [u16; NVARS])]) -> PolyZ {
    let mut p = PolyZ::zero();
    for &(c, e) in terms {
        p.add_term(Monomial(e), BigInt::from(c));
    }
    p
}

/// Named variables for building the ideal systems.
pub mod vars {
    use super::PolyZ;

    pub fn t1() -> PolyZ {
        PolyZ::var(0)
    }
    pub fn t2() -> PolyZ {
        PolyZ::var(1)
    }
    pub fn t3() -> PolyZ {
        PolyZ::var(2)
    }
    pub fn t4() -> PolyZ {
        PolyZ::var(3)
    }
    pub fn u1() -> PolyZ {
        PolyZ::var(4)
    }
    pub fn u2() -> PolyZ {
        PolyZ::var(5)
    }
    pub fn u3() -> PolyZ {
        PolyZ::var(6)
    }
    pub fn u4() -> PolyZ {
        PolyZ::var(7)
    }
}

#[cfg(test)]
mod tests {
    use super::vars::*;
    use super::*;

    fn c(n: i64) -> PolyZ {
        PolyZ::from(n)
    }

    #[test]
    fn difference_of_squares() {
        let p = (t1() + c(1)) * (t1() - c(1));
        assert_eq!(p, t1() * t1() - c(1));
        assert_eq!(p.to_string(), "t1^2 - 1");
    }

    #[test]
    fn grevlex_examples() {
        let m = |e: [u16; NVARS]| Monomial(e);
        // degree first
        assert!(m([0, 0, 0, 0, 0, 0, 0, 2]) > m([1, 0, 0, 0, 0, 0, 0, 0]));
        // t1 is the largest variable
        assert!(m([1, 0, 0, 0, 0, 0, 0, 0]) > m([0, 1, 0, 0, 0, 0, 0, 0]));
        assert!(m([0, 0, 0, 0, 0, 0, 1, 0]) > m([0, 0, 0, 0, 0, 0, 0, 1]));
        // the smaller exponent in the last variable wins
        assert!(m([0, 1, 1, 0, 0, 0, 0, 0]) > m([1, 0, 0, 1, 0, 0, 0, 0]));
        assert!(m([2, 0, 0, 0, 0, 0, 0, 0]) > m([1, 0, 1, 0, 0, 0, 0, 0]));
        assert!(m([1, 0, 1, 0, 0, 0, 0, 0]) > m([0, 0, 2, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn normal_form_examples() {
        assert!(normal_form(&c(3), &[c(3)]).is_zero());
        assert_eq!(normal_form(&c(5), &[c(3)]), c(-1));
        assert_eq!(normal_form(&c(4), &[c(3)]), c(1));
        let g = t1() * t1() + t1() * t3() + t3() * t3();
        assert_eq!(
            normal_form(&(t1() * t1()), std::slice::from_ref(&g)),
            c(0) - t1() * t3() - t3() * t3()
        );
        assert_eq!(normal_form(&(t3() * t3()), &[g]), t3() * t3());
    }

    #[test]
    fn symmetric_divmod_bounds() {
        for c in -20i64..=20 {
            for d in [-7i64, -4, -3, -2, 2, 3, 4, 7] {
                let (q, r) = symmetric_divmod(&BigInt::from(c), &BigInt::from(d));
                assert_eq!(q.clone() * d + &r, BigInt::from(c));
                assert!(r.abs() * 2 <= BigInt::from(d.abs()), "{c} {d} {r}");
            }
        }
    }

    #[test]
    fn eval_mod_matches_eval() {
        let p = t1() * t2() - c(3) * u4() * u4() + c(7);
        let pt = [2, -3, 5, 1, 0, 0, 0, 4];
        let full = p.eval(&pt);
        assert_eq!(
            BigInt::from(p.eval_mod(&pt, 5)),
            full.mod_floor(&BigInt::from(5))
        );
    }

    #[test]
    fn primitive_part() {
        let p = c(-6) * t1() + c(4);
        assert_eq!(p.primitive(), c(3) * t1() - c(2));
    }
}
