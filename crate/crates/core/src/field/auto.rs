//! Field automorphisms as prime-field-linear maps on power-basis coordinates.

use super::ext::{ExtField, FE};
use super::prime::PrimeField;
use crate::error::{Error, Result};
use crate::linalg::{self, FieldOps, Matrix};

#[derive(Clone, Debug)]
pub struct FieldAuto<P: PrimeField> {
    base: P,
    // column j = image of α^j
    matrix: Matrix<P::Elem>,
}

impl<P: PrimeField> PartialEq for FieldAuto<P> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl<P: PrimeField> Eq for FieldAuto<P> {}

impl<P: PrimeField> FieldAuto<P> {
    pub fn identity(field: &ExtField<P>) -> Self {
        FieldAuto {
            base: field.base().clone(),
            matrix: Matrix::identity(field.base(), field.degree()),
        }
    }

    /// The automorphism sending the generator to `image`, which must be a root of the modulus.
    pub fn from_image(field: &ExtField<P>, image: &FE<P>) -> Result<Self> {
        if !field.is_zero(&field.eval_base_poly(field.modulus(), image)) {
            return Err(Error::InvalidConstruction(format!(
                "{} is not a root of the modulus",
                field.format(image)
            )));
        }
        let e = field.degree();
        let mut cols = Vec::with_capacity(e);
        let mut pw = field.one();
        for _ in 0..e {
            cols.push(pw.clone());
            pw = field.mul(&pw, image);
        }
        Ok(FieldAuto {
            base: field.base().clone(),
            matrix: Matrix::from_cols(cols, e),
        })
    }

    /// `x ↦ x^(p^k)`.
    pub fn frobenius(field: &ExtField<P>, k: u32) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::InvalidConstruction(
                "Frobenius needs a finite field".into(),
            ));
        }
        let q = (field.base().characteristic() as u128).pow(k % field.degree() as u32);
        let img = pow_big(field, &field.generator(), q);
        Self::from_image(field, &img)
    }

    pub fn apply(&self, x: &FE<P>) -> FE<P> {
        linalg::mat_vec(&self.base, &self.matrix, x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        FieldAuto {
            base: self.base.clone(),
            matrix: linalg::mat_mul(&self.base, &self.matrix, &other.matrix),
        }
    }

    pub fn inverse(&self) -> Self {
        let m = linalg::inverse(&self.base, &self.matrix).expect("automorphisms are invertible");
        FieldAuto {
            base: self.base.clone(),
            matrix: m,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let step = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = FieldAuto {
            base: self.base.clone(),
            matrix: Matrix::identity(&self.base, self.matrix.rows()),
        };
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&step);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(&self.base, self.matrix.rows())
    }

    /// Smallest `j >= 1` with `φ^j = id`.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut j = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            j += 1;
        }
        j
    }

    pub fn matrix(&self) -> &Matrix<P::Elem> {
        &self.matrix
    }

    pub fn image_of_generator(&self, field: &ExtField<P>) -> FE<P> {
        self.apply(&field.generator())
    }

    /// `id`, `frob:<k>`, or the image of the generator.
    pub fn parse(field: &ExtField<P>, token: &str) -> Result<Self> {
        let t = token.trim();
        if t == "id" {
            return Ok(Self::identity(field));
        }
        if let Some(k) = t.strip_prefix("frob:") {
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid Frobenius exponent '{k}'")))?;
            return Self::frobenius(field, k);
        }
        Self::from_image(field, &field.parse(t)?)
    }

    pub fn format(&self, field: &ExtField<P>) -> String {
        if self.is_identity() {
            return "id".into();
        }
        if field.is_finite() {
            for k in 1..field.degree() as u32 {
                if Self::frobenius(field, k).is_ok_and(|f| f == *self) {
                    return format!("frob:{k}");
                }
            }
        }
        field.format(&self.image_of_generator(field))
    }
}

fn pow_big<P: PrimeField>(field: &ExtField<P>, x: &FE<P>, mut e: u128) -> FE<P> {
    let mut base = x.clone();
    let mut acc = field.one();
    while e > 0 {
        if e & 1 == 1 {
            acc = field.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = field.mul(&base, &base);
        }
    }
    acc
}
