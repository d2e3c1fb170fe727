//! Certified real arithmetic for the few transcendental quantities the
//! diagram geometry needs.
//!
//! Every quantity is carried as a closed interval with exact rational
//! endpoints. Series are summed in exact arithmetic and the endpoints are
//! rounded outward onto a dyadic grid after each step, so an [`Interval`]
//! always contains the true value. The only transcendental inputs are π
//! (Machin's formula) and `sin`/`cos` of rational multiples of π (Taylor
//! series with an explicit remainder bound).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Working precisions (bits) tried in order when a comparison is ambiguous.
pub const PRECISION_TIERS: [u32; 2] = [128, 256];

/// Comparisons whose margin is below `2^-MARGIN_FLOOR_BITS` are reported as
/// precision exhaustion.
pub const MARGIN_FLOOR_BITS: u32 = 256;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.20e}, {:.20e}]", to_f64(&self.lo), to_f64(&self.hi))
    }
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point in the interval, or `None` when it straddles zero.
    pub fn certain_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Does the interval contain an integer?
    pub fn contains_integer(&self) -> bool {
        let ceil_lo = self.lo.ceil();
        ceil_lo <= self.hi
    }

    /// Widen the endpoints onto the grid `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Self {
        let scale = BigRational::from_integer(pow2(bits));
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval { lo, hi }
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_negative() {
            Interval {
                lo: &self.hi * q,
                hi: &self.lo * q,
            }
        } else {
            Interval {
                lo: &self.lo * q,
                hi: &self.hi * q,
            }
        }
    }

    /// Division; `None` when the divisor interval contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let inv = Interval::new(other.hi.recip(), other.lo.recip());
        Some(self.mul(&inv))
    }

    pub fn widen(&self, radius: &BigRational) -> Self {
        Interval {
            lo: &self.lo - radius,
            hi: &self.hi + radius,
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Interval `[(c − err)/2^prec, (c + err)/2^prec]` from a fixed-point value.
fn from_fixed(center: &BigInt, err: &BigInt, prec: u32) -> Interval {
    let den = pow2(prec);
    Interval::new(
        BigRational::new(center - err, den.clone()),
        BigRational::new(center + err, den),
    )
}

/// `atan(1/x)·2^prec` for integer `x >= 2`, with its error in ulps.
fn atan_inv_fixed(x: i64, prec: u32) -> (BigInt, BigInt) {
    let x2 = BigInt::from(x * x);
    // floor(2^prec / x^(2k+1)), exact by nested floor division
    let mut t = pow2(prec) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    while !t.is_zero() {
        let term = &t / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        t /= &x2;
        k += 1;
    }
    (sum, BigInt::from(k + 2))
}

/// Enclosure of π with width below `2^-bits`.
pub fn pi(bits: u32) -> Interval {
    let prec = bits + 16;
    let (a, ea) = atan_inv_fixed(5, prec);
    let (b, eb) = atan_inv_fixed(239, prec);
    let center = a * 16 - b * 4;
    let err = ea * 16 + eb * 4;
    from_fixed(&center, &err, prec).round_outward(bits + 4)
}

/// Fixed-point `(sin, cos)` of `m/2^prec` for `0 <= m/2^prec <= 2`, with a
/// common error bound in ulps.
fn sin_cos_fixed(m: &BigInt, prec: u32) -> (BigInt, BigInt, BigInt) {
    let one = pow2(prec);
    let m2 = (m * m) >> prec;
    let mut sin = m.clone();
    let mut cos = one.clone();
    let mut st = m.clone();
    let mut ct = one;
    let mut k: i64 = 1;
    let mut steps: i64 = 0;
    while !(st.is_zero() && ct.is_zero()) {
        ct = -((&ct * &m2) >> prec) / BigInt::from((2 * k - 1) * (2 * k));
        st = -((&st * &m2) >> prec) / BigInt::from((2 * k) * (2 * k + 1));
        cos += &ct;
        sin += &st;
        k += 1;
        steps += 1;
    }
    // each step loses at most a few ulps and later factors are below 2 in size
    (sin, cos, BigInt::from(8 * (steps + 2)))
}

/// Enclosures of `(sin x, cos x)` for `x` in `[0, 2]`.
fn sin_cos(x: &Interval, bits: u32) -> (Interval, Interval) {
    debug_assert!(!x.lo.is_negative() && x.hi <= rat(2, 1));
    let prec = bits + 32;
    let scale = BigRational::from_integer(pow2(prec));
    let m = (x.midpoint() * &scale).floor().to_integer();
    let (s, c, err) = sin_cos_fixed(&m, prec);
    // both functions are 1-Lipschitz: add the distance from the grid point
    let spread = x.width() / rat(2, 1) + BigRational::new(BigInt::one(), pow2(prec));
    (
        from_fixed(&s, &err, prec).widen(&spread).round_outward(bits + 8),
        from_fixed(&c, &err, prec).widen(&spread).round_outward(bits + 8),
    )
}

/// Enclosure of `tan(π p / q)` for `0 < p/q < 1/2`.
pub fn tan_pi_rational(p: i64, q: i64, bits: u32) -> Interval {
    assert!(p > 0 && 2 * p < q, "tan_pi_rational expects 0 < p/q < 1/2");
    let pi = pi(bits + 16);
    let x = pi.scale(&rat(p, q));
    let (s, c) = sin_cos(&x, bits + 16);
    s.div(&c)
        .expect("cos(pi p/q) is bounded away from zero for p/q < 1/2")
        .round_outward(bits + 4)
}

/// Enclosure of `tan(π b / n) / tan(π s / n)`, the fractional offset (in
/// half-chords) at which a chord of the `{n/s}` star polygon meets the
/// crossing circle of level `b`.
pub fn tan_ratio(b: i64, s: i64, n: i64, bits: u32) -> Interval {
    let num = tan_pi_rational(b, n, bits + 8);
    let den = tan_pi_rational(s, n, bits + 8);
    num.div(&den)
        .expect("tan(pi s/n) > 0")
        .round_outward(bits + 2)
}

/// Exact sign of `a + c·r` where `r` is only known through enclosures that can
/// be refined on demand.
///
/// `refine(bits)` must return an enclosure of `r` of width below `2^-bits`
/// (up to a small constant). The first tier is taken from `coarse` when given.
pub fn sign_of_linear<F>(
    a: &BigRational,
    c: &BigRational,
    coarse: Option<&Interval>,
    refine: F,
) -> Result<Ordering, PrecisionExhausted>
where
    F: Fn(u32) -> Interval,
{
    if c.is_zero() {
        return Ok(a.cmp(&BigRational::zero()));
    }
    for (i, &bits) in PRECISION_TIERS.iter().enumerate() {
        let r = match (i, coarse) {
            (0, Some(iv)) => iv.clone(),
            _ => refine(bits),
        };
        let value = r.scale(c).add(&Interval::point(a.clone()));
        if let Some(ord) = value.certain_sign() {
            return Ok(ord);
        }
    }
    Err(PrecisionExhausted {
        bits: MARGIN_FLOOR_BITS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("comparison margin below 2^-{bits}")]
pub struct PrecisionExhausted {
    pub bits: u32,
}

/// Best rational approximation with denominator at most `max_den`, from the
/// continued-fraction convergents and semiconvergents of `x`.
pub fn best_rational(x: &BigRational, max_den: i64) -> BigRational {
    let max_den = BigInt::from(max_den);
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut rem = x.clone();
    loop {
        let a = rem.floor().to_integer();
        let q2 = &a * &q1 + &q0;
        if q2 > max_den {
            // semiconvergent with the largest admissible partial quotient
            let k = (&max_den - &q0) / &q1;
            let semi = BigRational::new(&k * &p1 + &p0, &k * &q1 + &q0);
            let conv = BigRational::new(p1.clone(), q1.clone());
            let d_semi = (&semi - x).abs();
            let d_conv = (&conv - x).abs();
            return if d_semi < d_conv { semi } else { conv };
        }
        let p2 = &a * &p1 + &p0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rem - BigRational::from_integer(a);
        if frac.is_zero() {
            return BigRational::new(p1, q1);
        }
        rem = frac.recip();
    }
}

/// Reduced fraction `p/q` with `q > 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    rat(p, q)
}

/// `x mod 1` in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn within(iv: &Interval, x: f64, tol: f64) -> bool {
        (iv.midpoint_f64() - x).abs() < tol
    }

    #[test]
    fn pi_encloses_known_digits() {
        let p = pi(128);
        // 40 correct digits of pi
        let lo = BigRational::new(
            "3141592653589793238462643383279502884197".parse().unwrap(),
            BigInt::from(10).pow(39),
        );
        let hi = &lo + BigRational::new(BigInt::one(), BigInt::from(10).pow(39));
        assert!(p.lo() < &hi && p.hi() > &lo);
        assert!(p.width() < BigRational::new(BigInt::one(), pow2(120)));
    }

    #[test]
    fn tan_values() {
        let t = tan_pi_rational(1, 4, 128);
        assert!(t.contains(&rat(1, 1)));
        assert!(t.width() < BigRational::new(BigInt::one(), pow2(100)));
        let t3 = tan_pi_rational(1, 3, 128);
        assert!(within(&t3, 3f64.sqrt(), 1e-15));
        let r = tan_ratio(1, 2, 6, 128);
        // tan(pi/6)/tan(pi/3) = 1/3
        assert!(r.contains(&rat(1, 3)));
    }

    #[test]
    fn ratio_enclosure_is_narrow() {
        for (b, s, n) in [(1, 2, 5), (1, 3, 8), (2, 3, 8), (3, 4, 11)] {
            let r = tan_ratio(b, s, n, 128);
            assert!(r.width() < BigRational::new(BigInt::one(), pow2(64)));
            let f = ((std::f64::consts::PI * b as f64 / n as f64).tan())
                / ((std::f64::consts::PI * s as f64 / n as f64).tan());
            assert!(within(&r, f, 1e-14));
            assert!(r.lo().is_positive() && r.hi() < &rat(1, 1));
        }
    }

    #[test]
    fn linear_sign_refines() {
        let r = |bits| tan_ratio(1, 2, 5, bits);
        // r ~ 0.2360679..., 4r - 1 = sqrt(5) - 2 ... sign positive? 4*0.236 = 0.944 < 1
        let s = sign_of_linear(&rat(-1, 1), &rat(4, 1), None, r).unwrap();
        assert_eq!(s, Ordering::Less);
        let z = sign_of_linear(&rat(0, 1), &rat(0, 1), None, r).unwrap();
        assert_eq!(z, Ordering::Equal);
    }

    #[test]
    fn best_rational_finds_convergents() {
        let x = BigRational::new(BigInt::from(355), BigInt::from(113));
        assert_eq!(best_rational(&x, 200), x);
        let pi = pi(64).midpoint();
        assert_eq!(best_rational(&pi, 10), rat(22, 7));
        assert_eq!(best_rational(&pi, 120), rat(355, 113));
    }

    #[test]
    fn contains_integer_edges() {
        assert!(Interval::new(rat(1, 2), rat(3, 2)).contains_integer());
        assert!(!Interval::new(rat(1, 3), rat(2, 3)).contains_integer());
        assert!(Interval::point(rat(2, 1)).contains_integer());
    }
}

/// Serde helper: integers as plain numbers when they fit in 64 bits,
/// decimal strings otherwise.
pub mod serde_bigint {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => ser.serialize_i64(v),
            None => ser.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = BigInt;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
                Ok(v.into())
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
                Ok(v.into())
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
                v.parse().map_err(E::custom)
            }
        }
        de.deserialize_any(V)
    }
}

/// Serde helper: exact rationals as `"p/q"` strings.
pub mod serde_rational {
    use num_rational::BigRational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(de)?;
        super::parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: BigInt = p.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
    let q: BigInt = q.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(p, q))
}
