use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `a + b·√d` with `d` squarefree and greater than one; `d = 0` exactly when `b = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: BigInt,
}

/// Pulls square factors out of `d`, returning `(f, d')` with `d = f²·d'`.
fn squarefree(d: &BigInt) -> (BigInt, BigInt) {
    let mut rest = d.clone();
    let mut f = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &p * &p <= rest && p <= limit {
        let sq = &p * &p;
        while rest.is_multiple_of(&sq) {
            rest /= &sq;
            f *= &p;
        }
        p += 1;
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        return (f * r, BigInt::one());
    }
    (f, rest)
}

impl QuadraticNumber {
    pub fn rational(a: Rational) -> Self {
        QuadraticNumber {
            a,
            b: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(rational::int(n))
    }

    /// `a + b·√d` for a positive integer `d`, reduced to canonical form.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::InvalidInput("quadratic discriminant must be positive".into()));
        }
        let (f, core) = squarefree(&d);
        let b = b * Rational::from_integer(f);
        if core.is_one() {
            return Ok(Self::rational(a + b));
        }
        Ok(QuadraticNumber { a, b, d: core }.normalized())
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = BigInt::zero();
        }
        self
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The squarefree `d`, or `None` for a rational value.
    pub fn discriminant(&self) -> Option<&BigInt> {
        (!self.d.is_zero()).then_some(&self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// `a² - d·b²`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: the larger magnitude wins.
        match (&self.a * &self.a).cmp(&(Rational::from_integer(self.d.clone()) * &self.b * &self.b)) {
            Ordering::Greater => sa,
            _ => sb,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadraticNumber {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d.clone(),
        })
    }

    pub fn to_f64(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(0.0);
        rational::to_f64(&self.a) + rational::to_f64(&self.b) * d.sqrt()
    }

    /// Decimal expansion truncated toward zero after `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_rational() {
            return rational::to_decimal(&self.a, digits);
        }
        let neg = self.signum() < 0;
        let x = self.abs();
        let r = x.a.denom().lcm(x.b.denom());
        let p = (&x.a * Rational::from_integer(r.clone())).to_integer();
        let q = (&x.b * Rational::from_integer(r.clone())).to_integer();
        let scale = num_traits::pow(BigInt::from(10), digits);
        let root = (&q * &q * &x.d * &scale * &scale).sqrt();
        // floor(q·√d·10^k) for either sign of q; the radicand is never a square.
        let irr = if q.is_negative() { -root - 1 } else { root };
        let scaled = (p * &scale + irr).div_floor(&r);
        let (whole, frac) = scaled.div_rem(&scale);
        let mut frac = frac.to_string();
        while frac.len() < digits {
            frac.insert(0, '0');
        }
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.{frac}")
        }
    }

    /// `(p+q*sqrt(d))/r` for irrational values, `p/q` otherwise.
    pub fn render(&self) -> String {
        if self.is_rational() {
            return rational::to_string(&self.a);
        }
        let r = self.a.denom().lcm(self.b.denom());
        let p = (&self.a * Rational::from_integer(r.clone())).to_integer();
        let q = (&self.b * Rational::from_integer(r.clone())).to_integer();
        let op = if q.is_negative() { '-' } else { '+' };
        format!("({p}{op}{}*sqrt({}))/{r}", q.abs(), self.d)
    }

    /// Is this strictly between the rationals `lo` and `hi`?
    pub fn within(&self, lo: &Rational, hi: &Rational) -> bool {
        (self - &Self::rational(lo.clone())).signum() >= 0 && (self - &Self::rational(hi.clone())).signum() <= 0
    }

    fn field(&self, other: &Self) -> BigInt {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "values from different quadratic fields");
                self.d.clone()
            }
        }
    }
}

fn sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, o: &QuadraticNumber) -> QuadraticNumber {
        QuadraticNumber {
            d: self.field(o),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
        .normalized()
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, o: &QuadraticNumber) -> QuadraticNumber {
        self + &(-o)
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, o: &QuadraticNumber) -> QuadraticNumber {
        let d = self.field(o);
        QuadraticNumber {
            a: &self.a * &o.a + &self.b * &o.b * Rational::from_integer(d.clone()),
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        }
        .normalized()
    }
}

impl Div for &QuadraticNumber {
    type Output = QuadraticNumber;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadraticNumber) -> QuadraticNumber {
        self * &o.recip().expect("division by zero")
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}
