//! Double-double reals: an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`,
//! about 106 bits of significand. Error-free transforms follow Dekker and
//! Knuth; products use a fused multiply-add.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_complex::Complex;
use num_traits::{Num, One, Zero};

/// Scalars the dense eigensolver can run on.
pub trait Real:
    Num + Copy + PartialOrd + Neg<Output = Self> + Send + Sync + std::fmt::Debug + 'static
{
    /// Unit roundoff of the working precision.
    const ULP: f64;
    fn of(x: f64) -> Self;
    fn approx(self) -> f64;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `√(a² + b²)` without intermediate overflow.
    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let m = a.max(b);
        if m == Self::zero() {
            return m;
        }
        let (x, y) = (a / m, b / m);
        m * (x * x + y * y).sqrt()
    }
}

impl Real for f64 {
    const ULP: f64 = f64::EPSILON;
    fn of(x: f64) -> Self {
        x
    }
    fn approx(self) -> f64 {
        self
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    fn renorm(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, e + self.lo * b)
    }

    fn trunc(self) -> Dd {
        let t = self.hi.trunc();
        if t == self.hi {
            Dd::renorm(t, self.lo.trunc())
        } else {
            Dd::new(t, 0.0)
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x, 0.0)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::renorm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        Dd::renorm(q1, q2) + Dd::from(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, b: Dd) -> Dd {
        self - b * (self / b).trunc()
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Zero for Dd {
    fn zero() -> Dd {
        Dd::new(0.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for Dd {
    fn one() -> Dd {
        Dd::new(1.0, 0.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Dd, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Dd::from)
    }
}

impl Real for Dd {
    const ULP: f64 = f64::EPSILON * f64::EPSILON / 2.0;
    fn of(x: f64) -> Dd {
        Dd::from(x)
    }
    fn approx(self) -> f64 {
        self.hi + self.lo
    }
    fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
    fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::zero();
        }
        // One Newton step from the f64 root.
        let y = self.hi.sqrt();
        let (sq, e) = two_prod(y, y);
        let residual = (self - Dd::renorm(sq, e)).hi;
        Dd::renorm(y, residual / (2.0 * y))
    }
}

/// Principal square root.
pub fn csqrt<R: Real>(z: Complex<R>) -> Complex<R> {
    let r = z.re.hypot(z.im);
    if r == R::zero() {
        return Complex::new(R::zero(), R::zero());
    }
    let half = R::of(0.5);
    let t = ((r + z.re.abs()) * half).sqrt();
    if z.re >= R::zero() {
        Complex::new(t, z.im / (t + t))
    } else {
        let im = if z.im < R::zero() { -t } else { t };
        Complex::new(z.im.abs() / (t + t), im)
    }
}

pub fn cabs<R: Real>(z: Complex<R>) -> R {
    z.re.hypot(z.im)
}

pub fn to_c64<R: Real>(z: Complex<R>) -> Complex<f64> {
    Complex::new(z.re.approx(), z.im.approx())
}

pub fn from_c64<R: Real>(z: Complex<f64>) -> Complex<R> {
    Complex::new(R::of(z.re), R::of(z.im))
}
