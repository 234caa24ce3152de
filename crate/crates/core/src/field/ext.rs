//! Simple extensions `P[α]/(μ(α))` of a prime field or `Q`.

use num_rational::BigRational;

use super::irreducible::{ben_or, irreducible_over_q, Tri};
use super::prime::PrimeField;
use crate::error::{Error, Result};
use crate::linalg::FieldOps;
use crate::text::split_top_level;
use crate::upoly;

/// Budget for the Kronecker step when certifying a modulus over `Q`.
const MODULUS_BUDGET: u64 = 2_000_000;

/// Element of an extension: power-basis coordinates over the prime field.
pub type FE<P> = Vec<<P as FieldOps>::Elem>;

#[derive(Clone, Debug)]
pub struct ExtField<P: PrimeField> {
    base: P,
    modulus: Vec<P::Elem>,
    degree: usize,
    // x^(e+i) mod μ for i in 0..e-1
    reduction: Vec<Vec<P::Elem>>,
}

impl<P: PrimeField> PartialEq for ExtField<P> {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.base.characteristic() == other.base.characteristic()
    }
}

impl<P: PrimeField> ExtField<P> {
    /// Checks that `modulus` (constant term first) is irreducible; normalizes it to monic.
    pub fn new(base: P, modulus: Vec<P::Elem>) -> Result<Self> {
        let modulus = upoly::monic(&base, &upoly::trimmed(&base, modulus));
        let degree = match upoly::degree(&modulus) {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::InvalidConstruction(
                    "modulus must have degree >= 1".into(),
                ))
            }
        };
        let irreducible = if base.is_finite() {
            ben_or(&base, &modulus, base.characteristic() as u128)
        } else {
            let q: Vec<BigRational> = modulus.iter().map(|c| base.to_ratio(c).unwrap()).collect();
            match irreducible_over_q(&q, MODULUS_BUDGET) {
                Tri::Yes => true,
                Tri::No => false,
                Tri::Unknown => {
                    return Err(Error::InvalidConstruction(
                        "could not certify irreducibility of the modulus".into(),
                    ))
                }
            }
        };
        if !irreducible {
            return Err(Error::InvalidConstruction("modulus is reducible".into()));
        }
        Ok(Self::new_unchecked(base, modulus, degree))
    }

    fn new_unchecked(base: P, modulus: Vec<P::Elem>, degree: usize) -> Self {
        let mut reduction = Vec::with_capacity(degree.saturating_sub(1));
        // x^e = -(μ_0 + ... + μ_{e-1} x^{e-1})
        let mut cur: Vec<P::Elem> = modulus[..degree].iter().map(|c| base.neg(c)).collect();
        for _ in 0..degree.saturating_sub(1) {
            reduction.push(cur.clone());
            let top = cur[degree - 1].clone();
            let mut next = vec![base.zero(); degree];
            for i in 1..degree {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..degree {
                next[i] = base.sub(&next[i], &base.mul(&top, &modulus[i]));
            }
            cur = next;
        }
        ExtField {
            base,
            modulus,
            degree,
            reduction,
        }
    }

    /// The prime field itself, viewed as a degree-1 extension.
    pub fn trivial(base: P) -> Self {
        let modulus = vec![base.zero(), base.one()];
        Self::new_unchecked(base, modulus, 1)
    }

    pub fn base(&self) -> &P {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[P::Elem] {
        &self.modulus
    }

    pub fn is_finite(&self) -> bool {
        self.base.is_finite()
    }

    /// `p^e`, if finite and representable.
    pub fn order(&self) -> Option<u128> {
        if !self.is_finite() {
            return None;
        }
        (self.base.characteristic() as u128).checked_pow(self.degree as u32)
    }

    pub fn generator(&self) -> FE<P> {
        if self.degree == 1 {
            // α is the root of the degree-1 modulus.
            return vec![self.base.neg(&self.modulus[0])];
        }
        let mut g = vec![self.base.zero(); self.degree];
        g[1] = self.base.one();
        g
    }

    pub fn embed(&self, c: &P::Elem) -> FE<P> {
        let mut v = vec![self.base.zero(); self.degree];
        v[0] = c.clone();
        v
    }

    /// The prime-field value if `x` lies in the prime field.
    pub fn as_base(&self, x: &FE<P>) -> Option<P::Elem> {
        if x[1..].iter().all(|c| self.base.is_zero(c)) {
            Some(x[0].clone())
        } else {
            None
        }
    }

    /// Evaluates a polynomial over `P` at `x`.
    pub fn eval_base_poly(&self, p: &[P::Elem], x: &FE<P>) -> FE<P> {
        p.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, x), &self.embed(c))
        })
    }

    pub fn from_index(&self, mut i: u128) -> FE<P> {
        let p = self.base.characteristic() as u128;
        (0..self.degree)
            .map(|_| {
                let digit = (i % p) as i64;
                i /= p;
                self.base.from_int(digit)
            })
            .collect()
    }

    pub fn index_of(&self, x: &FE<P>) -> Option<u128> {
        let p = self.base.characteristic() as u128;
        let mut acc = 0u128;
        for c in x.iter().rev() {
            acc = acc * p + self.base.to_digit(c)? as u128;
        }
        Some(acc)
    }

    /// Every element in index order; `None` for infinite fields.
    pub fn elements(&self) -> Option<Vec<FE<P>>> {
        let q = self.order()?;
        Some((0..q).map(|i| self.from_index(i)).collect())
    }

    /// Finite fields: the integer index; `Q`-extensions: a rational when the
    /// element is rational, otherwise `[c0,c1,...]` with trailing zeros dropped.
    pub fn format(&self, x: &FE<P>) -> String {
        if let Some(i) = self.index_of(x) {
            return i.to_string();
        }
        if let Some(c) = self.as_base(x) {
            return self.base.format(&c);
        }
        let mut v = x.clone();
        upoly::trim(&self.base, &mut v);
        let parts: Vec<String> = v.iter().map(|c| self.base.format(c)).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn parse(&self, s: &str) -> Result<FE<P>> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unbalanced brackets in '{s}'")))?;
            let parts = split_top_level(inner, ',');
            if parts.len() > self.degree {
                return Err(Error::ContextMismatch(format!(
                    "'{s}' has {} coordinates, field degree is {}",
                    parts.len(),
                    self.degree
                )));
            }
            let mut v = vec![self.base.zero(); self.degree];
            for (i, p) in parts.iter().enumerate() {
                if !p.trim().is_empty() {
                    v[i] = self.base.parse(p)?;
                }
            }
            return Ok(v);
        }
        if self.is_finite() {
            let i: u128 = t
                .parse()
                .map_err(|_| Error::Parse(format!("invalid field element '{s}'")))?;
            if i >= self.order().unwrap_or(u128::MAX) {
                return Err(Error::ContextMismatch(format!(
                    "element index {i} out of range"
                )));
            }
            return Ok(self.from_index(i));
        }
        Ok(self.embed(&self.base.parse(t)?))
    }
}

impl<P: PrimeField> FieldOps for ExtField<P> {
    type Elem = FE<P>;

    fn zero(&self) -> FE<P> {
        vec![self.base.zero(); self.degree]
    }
    fn one(&self) -> FE<P> {
        self.embed(&self.base.one())
    }
    fn is_zero(&self, a: &FE<P>) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn add(&self, a: &FE<P>, b: &FE<P>) -> FE<P> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &FE<P>, b: &FE<P>) -> FE<P> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &FE<P>) -> FE<P> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &FE<P>, b: &FE<P>) -> FE<P> {
        let e = self.degree;
        if e == 1 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let mut prod = vec![self.base.zero(); 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = self.base.add(&prod[i + j], &self.base.mul(x, y));
            }
        }
        let mut out: Vec<P::Elem> = prod[..e].to_vec();
        for (k, c) in prod[e..].iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reduction[k]) {
                *o = self.base.add(o, &self.base.mul(c, r));
            }
        }
        out
    }
    fn inv(&self, a: &FE<P>) -> Option<FE<P>> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree == 1 {
            return self.base.inv(&a[0]).map(|v| vec![v]);
        }
        let (g, s, _) = upoly::ext_gcd(&self.base, a, &self.modulus);
        debug_assert_eq!(upoly::degree(&g), Some(0));
        let mut v = s;
        v.resize(self.degree, self.base.zero());
        Some(v)
    }
    fn from_int(&self, v: i64) -> FE<P> {
        self.embed(&self.base.from_int(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::prime::{Fp, Rationals};

    #[test]
    fn f4_defining_relation() {
        let f4 = ExtField::new(Fp::new(2), vec![1, 1, 1]).unwrap();
        let th = f4.generator();
        assert_eq!(f4.mul(&th, &th), vec![1, 1]);
        assert_eq!(f4.format(&th), "2");
        assert_eq!(f4.parse("3").unwrap(), vec![1, 1]);
    }

    #[test]
    fn qi_defining_relation() {
        let q = Rationals;
        let qi = ExtField::new(q.clone(), vec![q.one(), q.zero(), q.one()]).unwrap();
        let i = qi.generator();
        assert_eq!(qi.mul(&i, &i), qi.from_int(-1));
        assert_eq!(qi.format(&qi.parse("[3,-1/2]").unwrap()), "[3,-1/2]");
        assert_eq!(qi.format(&qi.from_int(4)), "4");
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(ExtField::new(Fp::new(2), vec![1, 0, 1]).is_err());
    }

    #[test]
    fn inverses_in_f27() {
        let f = ExtField::new(Fp::new(3), vec![1, 2, 0, 1]).unwrap();
        for x in f.elements().unwrap().into_iter().skip(1) {
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
    }
}
