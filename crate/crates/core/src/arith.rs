//! Small integer helpers shared by the lattice and congruence code.

/// Non-negative gcd; `gcd(0, 0) == 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    i64::try_from(a).expect("gcd overflow")
}

/// Non-negative lcm; zero if either argument is zero.
pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflow").abs()
}

/// Returns `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    let cast = |v: i128| i64::try_from(v).expect("ext_gcd overflow");
    (cast(old_r), cast(old_s), cast(old_t))
}

/// Solves `x = r1 mod m1`, `x = r2 mod m2` for positive moduli. Returns the
/// solution reduced into `[0, lcm(m1, m2))`, or `None` if incompatible.
pub fn crt(r1: i64, m1: i64, r2: i64, m2: i64) -> Option<i64> {
    debug_assert!(m1 > 0 && m2 > 0);
    let (g, s, _) = ext_gcd(m1, m2);
    let diff = r2 - r1;
    if diff.rem_euclid(g) != 0 {
        return None;
    }
    let l = lcm(m1, m2) as i128;
    let step = (diff / g) as i128 * s as i128 % (m2 / g) as i128;
    let x = (r1 as i128 + m1 as i128 * step).rem_euclid(l);
    Some(x as i64)
}
