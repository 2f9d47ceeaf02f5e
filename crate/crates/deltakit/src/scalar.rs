//! Scalar types: arbitrary-precision integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_of(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Nearest integer; exact halves round up.
pub fn nearest_int(x: &Rat) -> Int {
    // floor(x + 1/2)
    let shifted = x + Rat::new(Int::one(), Int::from(2));
    shifted.floor().to_integer()
}

/// Canonical representative of x mod 1 in [0, 1).
pub fn mod_one(x: &Rat) -> Rat {
    x - x.floor()
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn rat_is_zero(x: &Rat) -> bool {
    x.is_zero()
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denom_lcm(xs: &[Rat]) -> Int {
    let mut l = Int::one();
    for x in xs {
        l = num_integer::lcm(l, x.denom().clone());
    }
    l.abs()
}
