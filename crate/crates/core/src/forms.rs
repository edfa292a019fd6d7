//! Binary forms over the rationals, their `GL(2, Q)` action, the dihedral
//! automorphism groups of order 6 and 12, and value-set comparisons.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::Vec2Z;
use crate::ratmat::{fmt_rat, parse_rat, rat_int, MatrixError, Rat, RatMat2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("a form needs degree at least 3, got {0}")]
    DegreeTooSmall(usize),
    #[error("the zero form is not allowed")]
    ZeroForm,
    #[error("form has zero discriminant")]
    ZeroDiscriminant,
    #[error("form has non-integral coefficients")]
    NotIntegral,
    #[error("matrix {0} has no finite order up to 12")]
    InfiniteOrder(String),
    #[error("{matrix} is not an automorphism of the form")]
    NotAutomorphism { matrix: String },
    #[error("unknown group variant `{0}`; expected d3 or d6")]
    BadVariant(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `sum c_i X^(d-i) Y^i`, coefficients listed from the highest power of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rat>,
}

/// Product of two homogeneous polynomials given by coefficient lists.
fn mul_homog(p: &[Rat], q: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn pow_homog(p: &[Rat], e: usize) -> Vec<Rat> {
    let mut acc = vec![Rat::one()];
    for _ in 0..e {
        acc = mul_homog(&acc, p);
    }
    acc
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self, FormError> {
        if coeffs.len() < 4 {
            return Err(FormError::DegreeTooSmall(coeffs.len().saturating_sub(1)));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(FormError::ZeroForm);
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, FormError> {
        BinaryForm::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn evaluate(&self, x: &Rat, y: &Rat) -> Rat {
        let d = self.degree();
        // Horner in x/y would divide; accumulate powers instead
        let mut xp = vec![Rat::one(); d + 1];
        let mut yp = vec![Rat::one(); d + 1];
        for k in 1..=d {
            xp[k] = &xp[k - 1] * x;
            yp[k] = &yp[k - 1] * y;
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &xp[d - i] * &yp[i])
            .sum()
    }

    pub fn evaluate_int(&self, x: i64, y: i64) -> Rat {
        self.evaluate(&rat_int(x), &rat_int(y))
    }

    /// `F(aX + bY, cX + dY)`.
    pub fn compose(&self, g: &RatMat2) -> BinaryForm {
        let d = self.degree();
        let l1 = [g.a.clone(), g.b.clone()];
        let l2 = [g.c.clone(), g.d.clone()];
        let mut out = vec![Rat::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = mul_homog(&pow_homog(&l1, d - i), &pow_homog(&l2, i));
            for (k, t) in term.iter().enumerate() {
                out[k] += c * t;
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn scale(&self, k: &Rat) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn is_automorphism(&self, g: &RatMat2) -> bool {
        !g.det().is_zero() && self.compose(g) == *self
    }

    /// `F(2X, Y)`.
    pub fn dagger(&self) -> BinaryForm {
        let d = self.degree();
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int(1i64 << (d - i)))
                .collect(),
        }
    }

    /// Discriminant, normalized so that a cubic `(a, b, c, d)` gives
    /// `18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2`, computed from the
    /// resultant of the two partial derivatives:
    /// `Res(F_X, F_Y) = (-1)^(d(d-1)/2) d^(d-2) disc(F)`.
    pub fn discriminant(&self) -> Rat {
        let d = self.degree();
        let fx: Vec<Rat> = (0..d)
            .map(|i| &self.coeffs[i] * rat_int((d - i) as i64))
            .collect();
        let fy: Vec<Rat> = (0..d)
            .map(|j| &self.coeffs[j + 1] * rat_int((j + 1) as i64))
            .collect();
        let res = resultant(&fx, &fy);
        let mut norm = rat_int(d as i64).pow((d - 2) as i32);
        if (d * (d - 1) / 2) % 2 == 1 {
            norm = -norm;
        }
        res / norm
    }

    /// `F(Z^2)` values on the box `|x|, |y| <= n`, with one witness each.
    pub fn values_on_box(&self, n: i64) -> Result<HashMap<BigInt, Vec2Z>, FormError> {
        if !self.is_integral() {
            return Err(FormError::NotIntegral);
        }
        let mut out = HashMap::new();
        for x in -n..=n {
            for y in -n..=n {
                let v = self.evaluate_int(x, y).to_integer();
                out.entry(v).or_insert(Vec2Z::new(x, y));
            }
        }
        Ok(out)
    }
}

/// Sylvester resultant of two binary forms of the same degree.
fn resultant(p: &[Rat], q: &[Rat]) -> Rat {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Rat::zero(); size];
        for (k, c) in p.iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Rat::zero(); size];
        for (k, c) in q.iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

fn determinant(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pv;
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
        }
    }
    det
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rat).collect();
        f.write_str(&parts.join(","))
    }
}

/// Comma-separated rationals, highest power of `X` first.
impl FromStr for BinaryForm {
    type Err = FormError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s.split(',').map(parse_rat).collect::<Result<Vec<_>, _>>()?;
        BinaryForm::new(coeffs)
    }
}

/// `XY(X + Y)`.
pub fn f0() -> BinaryForm {
    BinaryForm::from_ints(&[0, 1, 1, 0]).expect("valid cubic")
}

/// `aX^6 - 3aX^5Y + cX^4Y^2 + (5a - 2c)X^3Y^3 + cX^2Y^4 - 3aXY^5 + aY^6`.
pub fn sextic(a: i64, c: i64) -> Result<BinaryForm, FormError> {
    let f = BinaryForm::from_ints(&[a, -3 * a, c, 5 * a - 2 * c, c, -3 * a, a])?;
    if f.discriminant().is_zero() {
        return Err(FormError::ZeroDiscriminant);
    }
    Ok(f)
}

/// `diag(1, -1)`: the displayed sextic composed with it is `D6`-stable, so
/// the displayed sextic has automorphism group `T^-1 D6 T` for this `T`.
pub fn sextic_conjugator() -> RatMat2 {
    RatMat2::from_ints(1, 0, 0, -1)
}

/// `sextic(a, c)(X, -Y)`, the member of the family fixed by `D6` itself.
pub fn sextic_d6(a: i64, c: i64) -> Result<BinaryForm, FormError> {
    Ok(sextic(a, c)?.compose(&sextic_conjugator()))
}

/// A finite-order element of `GL(2, Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub matrix: RatMat2,
    pub order: u32,
}

impl GroupElement {
    pub fn new(matrix: RatMat2) -> Result<Self, FormError> {
        let order = matrix
            .order(12)
            .ok_or_else(|| FormError::InfiniteOrder(matrix.to_string()))?;
        Ok(GroupElement { matrix, order })
    }
}

pub fn s_matrix() -> RatMat2 {
    RatMat2::from_ints(0, 1, 1, 0)
}

pub fn r_matrix() -> RatMat2 {
    RatMat2::from_ints(0, 1, -1, -1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    D3,
    D6,
}

impl FromStr for Variant {
    type Err = FormError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "d3" => Ok(Variant::D3),
            "d6" => Ok(Variant::D6),
            _ => Err(FormError::BadVariant(s.to_string())),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::D3 => "d3",
            Variant::D6 => "d6",
        })
    }
}

/// `{id, R, R^2, S, SR, SR^2}` and that list followed by its negatives.
pub fn dihedral_groups() -> (Vec<GroupElement>, Vec<GroupElement>) {
    let r = r_matrix();
    let s = s_matrix();
    let r2 = &r * &r;
    let d3: Vec<GroupElement> = [
        RatMat2::identity(),
        r.clone(),
        r2.clone(),
        s.clone(),
        &s * &r,
        &s * &r2,
    ]
    .into_iter()
    .map(|m| GroupElement::new(m).expect("finite order"))
    .collect();
    let mut d6 = d3.clone();
    d6.extend(
        d3.iter()
            .map(|g| GroupElement::new(-&g.matrix).expect("finite order")),
    );
    (d3, d6)
}

pub fn group(variant: Variant) -> Vec<GroupElement> {
    let (d3, d6) = dihedral_groups();
    match variant {
        Variant::D3 => d3,
        Variant::D6 => d6,
    }
}

/// `T^-1 g T`.
pub fn conjugate(t: &RatMat2, g: &GroupElement) -> Result<GroupElement, FormError> {
    let m = g.matrix.conjugate_by(t)?;
    Ok(GroupElement {
        matrix: m,
        order: g.order,
    })
}

/// Admissible entry patterns of an order-3 automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryCase {
    /// All entries integral.
    A,
    /// `a, b, d` integral, `c` in `Z + 1/2`.
    B,
    /// `a, c, d` integral, `b` in `Z + 1/2`.
    C,
    /// All entries in `Z + 1/2`.
    D,
    None,
}

impl fmt::Display for CorollaryCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorollaryCase::A => "a",
            CorollaryCase::B => "b",
            CorollaryCase::C => "c",
            CorollaryCase::D => "d",
            CorollaryCase::None => "none",
        })
    }
}

fn is_half_odd(r: &Rat) -> bool {
    !r.is_integer() && (r * rat_int(2)).is_integer()
}

pub fn corollary_case(m: &RatMat2) -> CorollaryCase {
    let int = |r: &Rat| r.is_integer();
    let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
    if int(a) && int(b) && int(c) && int(d) {
        CorollaryCase::A
    } else if int(a) && int(d) && int(b) && is_half_odd(c) {
        CorollaryCase::B
    } else if int(a) && int(d) && is_half_odd(b) && int(c) {
        CorollaryCase::C
    } else if [a, b, c, d].into_iter().all(is_half_odd) {
        CorollaryCase::D
    } else {
        CorollaryCase::None
    }
}

/// Result of the order-3 criterion, with the elements examined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraordinaryVerdict {
    pub extraordinary: bool,
    pub order_three: Vec<(RatMat2, CorollaryCase)>,
}

/// Decides extraordinariness of `F` whose automorphism group is supplied as
/// `T^-1 G T` with `G` the chosen dihedral group; every conjugated element
/// is checked to fix `F` first.
pub fn extraordinary_by_c3(
    f: &BinaryForm,
    t: &RatMat2,
    variant: Variant,
) -> Result<ExtraordinaryVerdict, FormError> {
    let mut order_three = Vec::new();
    for g in group(variant) {
        let h = conjugate(t, &g)?;
        if !f.is_automorphism(&h.matrix) {
            return Err(FormError::NotAutomorphism {
                matrix: h.matrix.to_string(),
            });
        }
        if h.order == 3 {
            let case = corollary_case(&h.matrix);
            order_three.push((h.matrix, case));
        }
    }
    Ok(ExtraordinaryVerdict {
        extraordinary: order_three.iter().any(|(_, c)| *c != CorollaryCase::None),
        order_three,
    })
}

/// The group order is divisible by 3 for both dihedral variants; kept as an
/// explicit check of the hypothesis in the value-class decomposition.
pub fn order_divisible_by_three(variant: Variant) -> bool {
    group(variant).len().is_multiple_of(3)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueWitness {
    pub value: BigInt,
    pub point: Vec2Z,
}

/// Values found on the small box of one form but not on the large box of
/// the other, in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueReport {
    pub n: i64,
    pub m: i64,
    pub g_values_missing_from_f: Vec<ValueWitness>,
    pub f_values_missing_from_g: Vec<ValueWitness>,
}

impl ValueReport {
    pub fn unmatched(&self) -> usize {
        self.g_values_missing_from_f.len() + self.f_values_missing_from_g.len()
    }
}

fn missing(small: &HashMap<BigInt, Vec2Z>, large: &HashMap<BigInt, Vec2Z>) -> Vec<ValueWitness> {
    let mut out: Vec<ValueWitness> = small
        .iter()
        .filter(|(v, _)| !large.contains_key(v))
        .map(|(v, p)| ValueWitness {
            value: v.clone(),
            point: *p,
        })
        .collect();
    out.sort_by(|a, b| a.value.cmp(&b.value));
    out
}

/// Box comparison of value sets: every value of either form on
/// `|x|, |y| <= n` is searched among the other's values on `|x|, |y| <= m`.
/// Zero unmatched values is necessary, not sufficient, for equal value sets.
pub fn cross_value_check(
    f: &BinaryForm,
    g: &BinaryForm,
    n: i64,
    m: i64,
) -> Result<ValueReport, FormError> {
    let f_small = f.values_on_box(n)?;
    let g_small = g.values_on_box(n)?;
    let f_large = f.values_on_box(m)?;
    let g_large = g.values_on_box(m)?;
    Ok(ValueReport {
        n,
        m,
        g_values_missing_from_f: missing(&g_small, &f_large),
        f_values_missing_from_g: missing(&f_small, &g_large),
    })
}
