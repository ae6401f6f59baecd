use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{eval_poly, Field};

/// Exact rational number.
///
/// Values whose numerator and denominator fit in an `i64` are kept inline and
/// combined with `i128` intermediates; anything larger falls back to
/// `BigRational`. The representation is canonical, so derived structural
/// comparisons agree with numeric equality.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn integer(v: i64) -> Self {
        Self::from_i128(v as i128, 1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        if n == 0 {
            return Rational::Small(0, 1);
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic already normalizes.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(r)
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        match (&self, &rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c).filter(|&s| s != i64::MIN) {
                        return Rational::Small(s, 1);
                    }
                    return Rational::from_i128(*a as i128 + *c as i128, 1);
                }
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                Rational::from_i128(n, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        match (&self, &rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c).filter(|&p| p != i64::MIN) {
                        return Rational::Small(p, 1);
                    }
                }
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            // i64::MIN never occurs as a small numerator.
            Rational::Small(n, d) => Rational::Small(-n, d),
            Rational::Big(r) => Rational::from_big(-r),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Positive divisors of `n`, or `None` when `n` is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    const LIMIT: u64 = 1 << 40;
    let n = n.abs().to_u64()?;
    if n == 0 || n > LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small.into_iter().map(BigInt::from).collect())
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }

    fn one() -> Self {
        Rational::Small(1, 1)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    fn inv(&self) -> Option<Self> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(r) => Some(Rational::from_big(r.recip())),
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational::integer(v)
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Rational::from_big(BigRational::new(num.clone(), den.clone())))
    }

    fn characteristic() -> u64 {
        0
    }

    fn label() -> String {
        "Q".to_string()
    }

    fn elements() -> Option<Vec<Self>> {
        None
    }

    fn roots(coeffs: &[Self]) -> Vec<Self> {
        let mut c: Vec<Rational> = coeffs.to_vec();
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        if c[0].is_zero() {
            out.push(Rational::zero());
            while c[0].is_zero() {
                c.remove(0);
            }
        }
        if c.len() <= 1 {
            return out;
        }
        // Clear denominators to get an integer polynomial.
        let lcm = c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()));
        let ints: Vec<BigInt> = c
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
            return out;
        };
        let mut found: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let cand = Rational::from_fraction(&(p * sign), q).unwrap();
                    if !found.contains(&cand) && eval_poly(&c, &cand).is_zero() {
                        found.push(cand);
                    }
                }
            }
        }
        found.sort();
        out.extend(found);
        out
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Rational::new(2, 4), Rational::new(-1, -2));
        assert_eq!(Rational::new(0, -5), Rational::zero());
        assert_eq!(format!("{}", Rational::new(6, -4)), "-3/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::integer(i64::MAX);
        let sq = big.clone() * big.clone();
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq * big.inv().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
    }

    #[test]
    fn small_ops() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(a.clone() + b.clone(), Rational::new(1, 2));
        assert_eq!(a.clone() - b.clone(), Rational::new(1, 6));
        assert_eq!(a * b, Rational::new(1, 18));
    }

    #[test]
    fn rational_roots() {
        // (x - 2)(2x + 1) x = 2x^3 - 3x^2 - 2x
        let p = vec![
            Rational::zero(),
            Rational::integer(-2),
            Rational::integer(-3),
            Rational::integer(2),
        ];
        assert_eq!(
            Rational::roots(&p),
            vec![Rational::zero(), Rational::new(-1, 2), Rational::integer(2)]
        );
        // x^2 + 1 has no rational roots
        assert!(Rational::roots(&[Rational::one(), Rational::zero(), Rational::one()]).is_empty());
    }
}
