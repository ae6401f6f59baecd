use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

/// An exact field of scalars.
///
/// Every value is kept in canonical form, so `==` is equality in the field.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// The class of `num/den`, or `None` when `den` vanishes in the field.
    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// 0 for the rationals, p for the prime field.
    fn characteristic() -> u64;

    /// Short name used in reports: `Q` or `F<p>`.
    fn label() -> String;

    /// Every element of the field when it is finite.
    fn elements() -> Option<Vec<Self>>;

    /// Roots in the field of the polynomial with coefficients `coeffs`
    /// (constant term first), without multiplicity, in a deterministic order.
    fn roots(coeffs: &[Self]) -> Vec<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Evaluates a polynomial (constant term first) at `x` by Horner's rule.
pub fn eval_poly<F: Field>(coeffs: &[F], x: &F) -> F {
    coeffs
        .iter()
        .rev()
        .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
}
