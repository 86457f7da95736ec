//! Exact scalars over the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The base field of an algebra: either ℚ or GF(p) for a prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// An exact field element in canonical form.
///
/// Rationals are kept reduced with a positive denominator; residues are kept
/// in `[0, p)`. Equal values therefore compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

impl FieldSpec {
    /// GF(p), rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Short identifier used in reports: `Q` or `GF(p)`.
    pub fn id(&self) -> String {
        match self {
            FieldSpec::Rationals => "Q".to_string(),
            FieldSpec::Prime(p) => format!("GF({p})"),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// Canonical scalar for `numerator / denominator`.
    pub fn normalize(&self, numerator: &BigInt, denominator: &BigInt) -> Result<Scalar> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(
                numerator.clone(),
                denominator.clone(),
            ))),
            FieldSpec::Prime(p) => {
                let den = bigint_mod(denominator, *p);
                if den == 0 {
                    return Err(Error::NotInvertible(denominator.to_string(), *p));
                }
                let num = bigint_mod(numerator, *p);
                Ok(Scalar::Residue {
                    value: mul_mod(num, pow_mod(den, p - 2, *p), *p),
                    modulus: *p,
                })
            }
        }
    }

    /// Maps a rational number into this field.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.normalize(q.numer(), q.denom())
    }

    /// Parses `"a"` or `"a/b"` (decimal, optional sign) into this field.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        self.from_rational(&parse_rational(s)?)
    }

    /// Whether `x` is a canonical element of this field.
    pub fn contains(&self, x: &Scalar) -> bool {
        match (self, x) {
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            (FieldSpec::Prime(p), Scalar::Residue { value, modulus }) => modulus == p && value < p,
            _ => false,
        }
    }

    /// All elements of a finite field, in residue order. Empty for ℚ.
    pub fn elements(&self) -> Vec<Scalar> {
        match self {
            FieldSpec::Rationals => Vec::new(),
            FieldSpec::Prime(p) => (0..*p)
                .map(|value| Scalar::Residue { value, modulus: *p })
                .collect(),
        }
    }

    /// The least residue outside `{x² + x}`; defined only in characteristic 2.
    pub fn find_omega(&self) -> Result<Scalar> {
        if self.characteristic() != 2 {
            return Err(Error::NotCharacteristicTwo);
        }
        let elements = self.elements();
        let image: Vec<Scalar> = elements.iter().map(|x| &(x * x) + x).collect();
        elements
            .into_iter()
            .find(|w| !image.contains(w))
            .ok_or(Error::NotCharacteristicTwo)
    }

    /// A random element; over ℚ an integer in `[-bound, bound]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-bound..=bound)),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: rng.gen_range(0..*p),
                modulus: *p,
            },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Parses a decimal rational `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::ParseScalar(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// `self += a * b`, the inner step of every elimination loop.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, .. },
                Scalar::Residue { value: y, .. },
            ) => {
                *value = ((*value as u128 + *x as u128 * *y as u128) % *modulus as u128) as u64;
            }
            (Scalar::Rational(q), Scalar::Rational(x), Scalar::Rational(y)) => {
                *q += x * y;
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rationals
            .normalize(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(2, 4).to_string(), "1/2");
        let gf2 = FieldSpec::prime(2).unwrap();
        assert_eq!(
            gf2.normalize(&BigInt::from(3), &BigInt::from(1)).unwrap(),
            gf2.one()
        );
        let gf5 = FieldSpec::prime(5).unwrap();
        let x = gf5.normalize(&BigInt::from(-1), &BigInt::from(3)).unwrap();
        assert_eq!(x, gf5.from_i64(3));
        // 3 * 3 = 9 = -1 mod 5
        assert_eq!(&x * &gf5.from_i64(3), gf5.from_i64(-1));
    }

    #[test]
    fn normalize_errors() {
        assert!(matches!(
            FieldSpec::Rationals.normalize(&BigInt::from(1), &BigInt::from(0)),
            Err(Error::ZeroDenominator)
        ));
        let gf3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(
            gf3.normalize(&BigInt::from(1), &BigInt::from(6)),
            Err(Error::NotInvertible(..))
        ));
        assert!(matches!(FieldSpec::prime(4), Err(Error::NotPrime(4))));
        assert!(matches!(FieldSpec::prime(1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(q(1, 2).inv().unwrap(), q(2, 1));
        let gf2 = FieldSpec::Prime(2);
        assert_eq!(gf2.one().inv().unwrap(), gf2.one());
        let gf7 = FieldSpec::Prime(7);
        assert_eq!(gf7.from_i64(3).inv().unwrap(), gf7.from_i64(5));
        assert!(matches!(gf7.zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(q(0, 1).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn omega() {
        let gf2 = FieldSpec::Prime(2);
        let w = gf2.find_omega().unwrap();
        assert_eq!(w, gf2.one());
        for x in gf2.elements() {
            assert_ne!(&(&x * &x) + &x, w);
        }
        assert!(matches!(
            FieldSpec::Rationals.find_omega(),
            Err(Error::NotCharacteristicTwo)
        ));
        assert!(matches!(
            FieldSpec::Prime(3).find_omega(),
            Err(Error::NotCharacteristicTwo)
        ));
    }

    #[test]
    fn parse_and_display() {
        let f = FieldSpec::Rationals;
        assert_eq!(f.parse("-3/6").unwrap().to_string(), "-1/2");
        assert_eq!(f.parse("4").unwrap().to_string(), "4");
        assert_eq!(f.parse("6/-4").unwrap().to_string(), "-3/2");
        assert!(f.parse("x").is_err());
        assert!(matches!(f.parse("1/0"), Err(Error::ZeroDenominator)));
        let gf5 = FieldSpec::Prime(5);
        assert_eq!(gf5.parse("-1").unwrap().to_string(), "4");
        assert_eq!(gf5.parse("1/2").unwrap().to_string(), "3");
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for p in [2u64, 3] {
            let f = FieldSpec::Prime(p);
            let els = f.elements();
            for a in &els {
                assert!((a + &(-a)).is_zero());
                if !a.is_zero() {
                    assert!((a * &a.inv().unwrap()).is_one());
                }
                for b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in &els {
                        assert_eq!(&(a + b) + c, a + &(b + c));
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }

    fn field_and_triple() -> impl Strategy<Value = (FieldSpec, i64, i64, i64, i64)> {
        (
            prop_oneof![
                Just(FieldSpec::Rationals),
                Just(FieldSpec::Prime(5)),
                Just(FieldSpec::Prime(7)),
                Just(FieldSpec::Prime(65_537)),
                Just(FieldSpec::Prime(4_294_967_291)),
            ],
            -1000i64..1000,
            -1000i64..1000,
            -1000i64..1000,
            1i64..50,
        )
    }

    proptest! {
        #[test]
        fn field_axioms((f, a, b, c, d) in field_and_triple()) {
            let a = f.normalize(&BigInt::from(a), &BigInt::from(d));
            prop_assume!(a.is_ok());
            let a = a.unwrap();
            let b = f.from_i64(b);
            let c = f.from_i64(c);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            let mut acc = a.clone();
            acc.add_mul(&b, &c);
            prop_assert_eq!(acc, &a + &(&b * &c));
        }

        #[test]
        fn normalize_is_canonical(n in -500i64..500, d in 1i64..60, k in 1i64..20) {
            let f = FieldSpec::Rationals;
            let x = f.normalize(&BigInt::from(n), &BigInt::from(d)).unwrap();
            let y = f.normalize(&BigInt::from(n * k), &BigInt::from(d * k)).unwrap();
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(f.parse(&x.to_string()).unwrap(), x);
        }
    }
}
