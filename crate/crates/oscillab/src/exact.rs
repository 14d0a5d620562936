//! Exact scalar arithmetic shared by the symbol algebra.
//!
//! Wick-symbol coefficients are complex numbers with arbitrary-precision
//! rational components, so algebraic identities (brackets, averages,
//! cohomological residuals) can be checked coefficient-exactly. Floating
//! inputs are converted through [`rat_from_f64`], which is lossless: every
//! finite `f64` is a dyadic rational.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;
/// Complex scalar with exact rational components.
pub type CRat = num::complex::Complex<Rat>;

/// Converts a finite `f64` into the rational it represents exactly.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational representable as f64")
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn crat_zero() -> CRat {
    CRat::new(Rat::zero(), Rat::zero())
}

pub fn crat_one() -> CRat {
    CRat::new(Rat::one(), Rat::zero())
}

/// The imaginary unit.
pub fn crat_i() -> CRat {
    CRat::new(Rat::zero(), Rat::one())
}

pub fn crat_real(r: Rat) -> CRat {
    CRat::new(r, Rat::zero())
}

pub fn crat_int(re: i64, im: i64) -> CRat {
    CRat::new(rat_int(re), rat_int(im))
}

pub fn crat_from_c64(c: Complex64) -> CRat {
    CRat::new(rat_from_f64(c.re), rat_from_f64(c.im))
}

pub fn crat_to_c64(c: &CRat) -> Complex64 {
    Complex64::new(rat_to_f64(&c.re), rat_to_f64(&c.im))
}

/// Modulus of a complex rational, evaluated in floating point.
pub fn crat_abs_f64(c: &CRat) -> f64 {
    crat_to_c64(c).norm()
}

/// Exact factorial as a rational.
pub fn rat_factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=u64::from(n) {
        acc *= BigInt::from_u64(k).unwrap();
    }
    Rat::from_integer(acc)
}

/// `signum(r)` as {-1, 0, 1}.
pub fn rat_signum(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
