//! Exact scalars in `Q(v)` specialised at `v^2 = q`, and balanced quantum
//! integers, factorials and binomials evaluated in that field.
//!
//! A [`QScalar`] is `a + b*v` with rational `a`, `b`. When `q` is a perfect
//! square, `v` is rational and `b` is folded into `a` on construction, so the
//! representation stays canonical and equality is structural.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Returns `(p, e)` with `q = p^e` when `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        return Some((q, 1));
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn check_q(q: u32) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::InvalidQ(q))
}

fn exact_sqrt(q: u32) -> Option<u32> {
    let r = (q as f64).sqrt().round() as u32;
    (r * r == q).then_some(r)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    a: BigRational,
    b: BigRational,
    q: u32,
}

impl QScalar {
    /// Checked constructor; validates `q`.
    pub fn new(a: BigRational, b: BigRational, q: u32) -> Result<Self> {
        check_q(q)?;
        Ok(Self::normalized(a, b, q))
    }

    fn normalized(mut a: BigRational, mut b: BigRational, q: u32) -> Self {
        if let Some(r) = exact_sqrt(q) {
            if !b.is_zero() {
                a += &b * BigRational::from_integer(BigInt::from(r));
                b = BigRational::zero();
            }
        }
        Self { a, b, q }
    }

    pub fn zero(q: u32) -> Self {
        Self {
            a: BigRational::zero(),
            b: BigRational::zero(),
            q,
        }
    }

    pub fn one(q: u32) -> Self {
        Self::from_int(1, q)
    }

    pub fn from_int(n: i64, q: u32) -> Self {
        Self {
            a: BigRational::from_integer(BigInt::from(n)),
            b: BigRational::zero(),
            q,
        }
    }

    pub fn from_u64(n: u64, q: u32) -> Self {
        Self {
            a: BigRational::from_integer(BigInt::from(n)),
            b: BigRational::zero(),
            q,
        }
    }

    pub fn from_ratio(num: i64, den: i64, q: u32) -> Self {
        Self {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
            q,
        }
    }

    /// The generator `v` itself.
    pub fn v(q: u32) -> Self {
        Self::normalized(BigRational::zero(), BigRational::one(), q)
    }

    /// `v^k` for any integer `k`.
    pub fn v_pow(q: u32, k: i64) -> Self {
        let half = k.div_euclid(2);
        let qq = BigRational::from_integer(BigInt::from(q));
        let base = if half >= 0 {
            num_traits::pow(qq, half as usize)
        } else {
            num_traits::pow(qq.recip(), (-half) as usize)
        };
        if k.is_even() {
            Self {
                a: base,
                b: BigRational::zero(),
                q,
            }
        } else {
            Self::normalized(BigRational::zero(), base, q)
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn same_q(&self, other: &Self) -> Result<()> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(Error::QMismatch(self.q, other.q))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        Ok(Self {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            q: self.q,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        Ok(Self {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            q: self.q,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        let qq = BigRational::from_integer(BigInt::from(self.q));
        Ok(Self {
            a: &self.a * &other.a + &self.b * &other.b * qq,
            b: &self.a * &other.b + &self.b * &other.a,
            q: self.q,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let qq = BigRational::from_integer(BigInt::from(self.q));
        let norm = &self.a * &self.a - &self.b * &self.b * qq;
        // norm vanishes only for nonzero elements when q is a square, where b = 0
        debug_assert!(!norm.is_zero());
        Ok(Self {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
            q: self.q,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_q(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(n));
        Self {
            a: &self.a * &k,
            b: &self.b * &k,
            q: self.q,
        }
    }

    /// `{"a":"p/r","b":"s/t"}`.
    pub fn to_json(&self) -> Value {
        json!({ "a": ratio_string(&self.a), "b": ratio_string(&self.b) })
    }

    pub fn from_json(value: &Value, q: u32) -> Result<Self> {
        let field = |name: &str| -> Result<BigRational> {
            let s = value
                .get(name)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("missing string field {name:?}")))?;
            parse_ratio(s)
        };
        Self::new(field("a")?, field("b")?, q)
    }

    /// Compact rendering for tables: rationals stay rationals, pure multiples
    /// of an odd power of `v` are shown as `v^k` when the multiplier is `±1`.
    pub fn pretty(&self) -> String {
        if self.b.is_zero() {
            return self.a.to_string();
        }
        if self.a.is_zero() {
            let qq = BigRational::from_integer(BigInt::from(self.q));
            // b*v = b*q^j * v^(1-2j)
            for j in [0i32, 1, -1, 2, -2, 3, -3, 4, -4] {
                let scaled = if j >= 0 {
                    &self.b * num_traits::pow(qq.clone(), j as usize)
                } else {
                    &self.b / num_traits::pow(qq.clone(), (-j) as usize)
                };
                if scaled.abs().is_one() {
                    let k = 1 - 2 * j;
                    let sign = if scaled.is_negative() { "-" } else { "" };
                    return if k == 1 {
                        format!("{sign}v")
                    } else {
                        format!("{sign}v^{k}")
                    };
                }
            }
            return format!("{}*v", self.b);
        }
        format!("({self})")
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.q as f64).sqrt()
    }
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*v", self.a, -&self.b)
        } else {
            write!(f, "{} + {}*v", self.a, self.b)
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self}; q={})", self.q)
    }
}

// Operator forms panic on mismatched q; use the checked_* methods at API
// boundaries where contexts come from user input.
impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        self.checked_add(rhs).expect("QScalar q mismatch")
    }
}

impl Add for QScalar {
    type Output = QScalar;
    fn add(self, rhs: QScalar) -> QScalar {
        &self + &rhs
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        assert_eq!(self.q, rhs.q, "QScalar q mismatch");
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self.checked_sub(rhs).expect("QScalar q mismatch")
    }
}

impl Sub for QScalar {
    type Output = QScalar;
    fn sub(self, rhs: QScalar) -> QScalar {
        &self - &rhs
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        self.checked_mul(rhs).expect("QScalar q mismatch")
    }
}

impl Mul for QScalar {
    type Output = QScalar;
    fn mul(self, rhs: QScalar) -> QScalar {
        &self * &rhs
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            a: -self.a,
            b: -self.b,
            q: self.q,
        }
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -self.clone()
    }
}

/// Balanced quantum integer `[n]` in the variable `v^weight`:
/// `v^{w(1-n)} + v^{w(3-n)} + ... + v^{w(n-1)}`.
pub fn quantum_int(n: u32, weight: u32, q: u32) -> QScalar {
    let (n, w) = (n as i64, weight as i64);
    let mut acc = QScalar::zero(q);
    for j in 0..n {
        acc += &QScalar::v_pow(q, w * (1 - n + 2 * j));
    }
    acc
}

/// `[n]! = [n][n-1]...[1]` in the variable `v^weight`.
pub fn quantum_factorial(n: u32, weight: u32, q: u32) -> QScalar {
    (1..=n).fold(QScalar::one(q), |acc, k| &acc * &quantum_int(k, weight, q))
}

/// Balanced quantum binomial `[n; k]` in the variable `v^weight`.
pub fn q_binomial(n: u32, k: u32, weight: u32, q: u32) -> Result<QScalar> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    let num = quantum_factorial(n, weight, q);
    let den = &quantum_factorial(k, weight, q) * &quantum_factorial(n - k, weight, q);
    num.checked_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(QScalar::new(r(1, 1), r(0, 1), 12).is_err());
    }

    #[test]
    fn field_arith_examples() {
        let q = 2;
        let one = QScalar::one(q);
        let v = QScalar::v(q);
        assert_eq!(&one * &v, v);
        assert_eq!(&v * &v, QScalar::from_int(2, q));
        let vinv = v.inv().unwrap();
        assert_eq!(vinv, QScalar::new(r(0, 1), r(1, 2), q).unwrap());
        assert!((&vinv * &v).is_one());
    }

    #[test]
    fn division_errors() {
        let q = 3;
        assert_eq!(
            QScalar::one(q).checked_div(&QScalar::zero(q)),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            QScalar::one(2).checked_add(&QScalar::one(3)),
            Err(Error::QMismatch(2, 3))
        );
    }

    #[test]
    fn perfect_square_folds_v() {
        let v = QScalar::v(4);
        assert_eq!(v, QScalar::from_int(2, 4));
        assert!(v.b().is_zero());
        assert_eq!(QScalar::v_pow(4, -3), QScalar::from_ratio(1, 8, 4));
    }

    #[test]
    fn quantum_two_at_q2() {
        assert_eq!(
            quantum_int(2, 1, 2),
            QScalar::new(r(0, 1), r(3, 2), 2).unwrap()
        );
    }

    #[test]
    fn binomial_examples() {
        for q in [2, 3, 4] {
            for n in 0..6 {
                assert!(q_binomial(n, 0, 1, q).unwrap().is_one());
            }
            let expected = &(&QScalar::v_pow(q, 2) + &QScalar::one(q)) + &QScalar::v_pow(q, -2);
            assert_eq!(q_binomial(3, 1, 1, q).unwrap(), expected);
            assert_eq!(quantum_int(3, 1, q), expected);
        }
        assert_eq!(
            q_binomial(2, 3, 1, 2),
            Err(Error::BinomialRange { n: 2, k: 3 })
        );
    }

    #[test]
    fn pascal_symmetry_and_factorial_recursion() {
        for q in [2, 3, 4] {
            for w in 1..=3 {
                for n in 1..=8 {
                    let fact = quantum_factorial(n, w, q);
                    let rec = &quantum_int(n, w, q) * &quantum_factorial(n - 1, w, q);
                    assert_eq!(fact, rec);
                    for k in 1..=n {
                        let lhs = q_binomial(n, k, w, q).unwrap();
                        let rhs = &(&QScalar::v_pow(q, ((n - k) * w) as i64)
                            * &q_binomial(n - 1, k - 1, w, q).unwrap())
                            + &(&QScalar::v_pow(q, -((k * w) as i64))
                                * &q_binomial(n - 1, k.min(n - 1), w, q)
                                    .map(|b| if k > n - 1 { QScalar::zero(q) } else { b })
                                    .unwrap());
                        assert_eq!(lhs, rhs, "n={n} k={k} w={w} q={q}");
                        assert_eq!(lhs, q_binomial(n, n - k, w, q).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn json_and_text_rendering() {
        let x = QScalar::new(r(-1, 2), r(3, 4), 2).unwrap();
        assert_eq!(x.to_string(), "-1/2 + 3/4*v");
        assert_eq!(x.to_json(), json!({"a": "-1/2", "b": "3/4"}));
        assert_eq!(QScalar::from_json(&x.to_json(), 2).unwrap(), x);
        assert_eq!(QScalar::v_pow(2, -1).pretty(), "v^-1");
        assert_eq!(QScalar::v_pow(3, 3).pretty(), "v^3");
        assert_eq!(QScalar::from_int(3, 2).pretty(), "3");
    }

    #[test]
    fn v_powers_multiply() {
        for q in [2, 3, 4, 5] {
            for i in -5i64..=5 {
                for j in -5i64..=5 {
                    assert_eq!(
                        &QScalar::v_pow(q, i) * &QScalar::v_pow(q, j),
                        QScalar::v_pow(q, i + j)
                    );
                }
            }
        }
    }
}
