//! Prime fields `F_p` and the rationals: the bottom of every tower.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::FieldOps;

/// A prime field or `Q`.
pub trait PrimeField: FieldOps {
    /// 0 for `Q`.
    fn characteristic(&self) -> u64;

    fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// All elements in increasing integer order; `None` for `Q`.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    /// Integer value in `[0, p)` for finite fields.
    fn to_digit(&self, a: &Self::Elem) -> Option<u64>;

    fn format(&self, a: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Label used in spec and code files.
    fn label(&self) -> String;

    /// Embeds a rational number; `None` when the denominator vanishes mod p.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;

    /// Numerator and denominator of a rational element; `None` for finite fields.
    fn to_ratio(&self, a: &Self::Elem) -> Option<BigRational>;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Panics unless `p` is a prime below 2^32.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        assert!(p < 1 << 32, "characteristic too large");
        Fp { p }
    }

    pub fn try_new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::InvalidConstruction(format!(
                "{p} is not a supported prime"
            )));
        }
        Ok(Fp { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl FieldOps for Fp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(FieldOps::pow(self, a, self.p - 2))
    }
    fn from_int(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl PrimeField for Fp {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn to_digit(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid F_{} element '{s}'", self.p)))?;
        Ok(self.from_int(v))
    }
    fn label(&self) -> String {
        format!("F{}", self.p)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let p = BigInt::from(self.p);
        let n = mod_u64(num, &p);
        let d = mod_u64(den, &p);
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn to_ratio(&self, _a: &u64) -> Option<BigRational> {
        None
    }
}

fn mod_u64(v: &BigInt, p: &BigInt) -> u64 {
    let r = ((v % p) + p) % p;
    r.try_into().expect("residue fits")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_int(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl PrimeField for Rationals {
    fn characteristic(&self) -> u64 {
        0
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn to_digit(&self, _a: &BigRational) -> Option<u64> {
        None
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let t = s.trim();
        let bad = || Error::Parse(format!("invalid rational '{s}'"));
        let v = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
        };
        Ok(v)
    }
    fn label(&self) -> String {
        "Q".into()
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn to_ratio(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_table() {
        let f = Fp::new(7);
        for a in 1..7 {
            let i = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &i), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rational_parse_format() {
        let q = Rationals;
        let v = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&v), "-3/2");
        assert_eq!(q.format(&q.parse("5").unwrap()), "5");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn fp_from_ratio() {
        let f = Fp::new(5);
        let v = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.mul(&v, &2), 1);
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_none());
    }
}
