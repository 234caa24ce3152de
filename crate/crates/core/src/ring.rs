//! Coefficient division rings: a field `K`, or a cyclic algebra `(E/C, γ, a)`.
//!
//! Both are handled by one type. An element is a coordinate vector
//! `(z_0, …, z_{d-1})` over `E` for `z = Σ z_i e^i`, with `e z = γ(z) e` and
//! `e^d = a`; a field is the case `d = 1`. The algebra is assumed to be a
//! division algebra, which is a hypothesis of the constructions using it.

use crate::error::{Error, Result};
use crate::field::{ExtField, FieldAuto, PrimeField, Subfield, FE};
use crate::linalg::{self, FieldOps, Matrix};
use crate::text::split_top_level;

pub type DElem<P> = Vec<FE<P>>;

#[derive(Clone, Debug)]
pub struct DivAlg<P: PrimeField> {
    e: ExtField<P>,
    d: usize,
    gamma_pows: Vec<FieldAuto<P>>,
    a: FE<P>,
    center: Subfield<P>,
}

/// A ring automorphism of `D`: `σ|_E` together with `c` where `σ(e) = c·e`.
#[derive(Clone, Debug)]
pub struct DAuto<P: PrimeField> {
    on_e: FieldAuto<P>,
    c: FE<P>,
    // π_i = c γ(c) ⋯ γ^{i-1}(c), so σ(e^i) = π_i e^i
    pis: Vec<FE<P>>,
}

impl<P: PrimeField> PartialEq for DAuto<P> {
    fn eq(&self, other: &Self) -> bool {
        self.on_e == other.on_e && self.c == other.c
    }
}

impl<P: PrimeField> DAuto<P> {
    pub fn on_e(&self) -> &FieldAuto<P> {
        &self.on_e
    }

    pub fn c(&self) -> &FE<P> {
        &self.c
    }
}

impl<P: PrimeField> DivAlg<P> {
    pub fn field(e: ExtField<P>) -> Self {
        let center = Subfield::whole(&e);
        let a = e.one();
        DivAlg {
            gamma_pows: vec![FieldAuto::identity(&e)],
            e,
            d: 1,
            a,
            center,
        }
    }

    /// `(E/C, γ, a)` with `C = Fix(γ)`, `d = ord(γ)`; division is not checked.
    pub fn cyclic(e: ExtField<P>, gamma: FieldAuto<P>, a: FE<P>) -> Result<Self> {
        let d = gamma.order();
        if d < 2 {
            return Err(Error::InvalidConstruction(
                "γ must be a nontrivial automorphism".into(),
            ));
        }
        if e.is_zero(&a) {
            return Err(Error::InvalidConstruction(
                "the cyclic algebra parameter a must be nonzero".into(),
            ));
        }
        if gamma.apply(&a) != a {
            return Err(Error::InvalidConstruction(
                "a must lie in the fixed field of γ".into(),
            ));
        }
        let center = Subfield::fixed_by(&e, &[&gamma]);
        let gamma_pows = (0..d as i64).map(|i| gamma.pow(i)).collect();
        Ok(DivAlg {
            e,
            d,
            gamma_pows,
            a,
            center,
        })
    }

    pub fn e(&self) -> &ExtField<P> {
        &self.e
    }

    pub fn base(&self) -> &P {
        self.e.base()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &FE<P> {
        &self.a
    }

    pub fn is_field(&self) -> bool {
        self.d == 1
    }

    /// The subfield `C` of `E`; for a field this is the field itself.
    pub fn center(&self) -> &Subfield<P> {
        &self.center
    }

    pub fn gamma(&self) -> &FieldAuto<P> {
        &self.gamma_pows[1 % self.d]
    }

    /// `γ^i` for any integer `i`.
    pub fn gamma_pow(&self, i: i64) -> &FieldAuto<P> {
        &self.gamma_pows[i.rem_euclid(self.d as i64) as usize]
    }

    /// Dimension over the prime field.
    pub fn prime_dim(&self) -> usize {
        self.d * self.e.degree()
    }

    pub fn is_finite(&self) -> bool {
        self.e.is_finite()
    }

    pub fn zero(&self) -> DElem<P> {
        vec![self.e.zero(); self.d]
    }

    pub fn one(&self) -> DElem<P> {
        self.embed(&self.e.one())
    }

    pub fn from_int(&self, v: i64) -> DElem<P> {
        self.embed(&self.e.from_int(v))
    }

    pub fn embed(&self, x: &FE<P>) -> DElem<P> {
        let mut v = self.zero();
        v[0] = x.clone();
        v
    }

    /// The algebra generator `e` (the unit when `D` is a field).
    pub fn e_elem(&self) -> DElem<P> {
        if self.d == 1 {
            return self.one();
        }
        let mut v = self.zero();
        v[1] = self.e.one();
        v
    }

    pub fn in_e(&self, x: &DElem<P>) -> Option<FE<P>> {
        if x[1..].iter().all(|c| self.e.is_zero(c)) {
            Some(x[0].clone())
        } else {
            None
        }
    }

    pub fn is_zero(&self, x: &DElem<P>) -> bool {
        x.iter().all(|c| self.e.is_zero(c))
    }

    pub fn is_one(&self, x: &DElem<P>) -> bool {
        *x == self.one()
    }

    pub fn add(&self, x: &DElem<P>, y: &DElem<P>) -> DElem<P> {
        x.iter().zip(y).map(|(a, b)| self.e.add(a, b)).collect()
    }

    pub fn sub(&self, x: &DElem<P>, y: &DElem<P>) -> DElem<P> {
        x.iter().zip(y).map(|(a, b)| self.e.sub(a, b)).collect()
    }

    pub fn neg(&self, x: &DElem<P>) -> DElem<P> {
        x.iter().map(|a| self.e.neg(a)).collect()
    }

    pub fn mul(&self, x: &DElem<P>, y: &DElem<P>) -> DElem<P> {
        if self.d == 1 {
            return vec![self.e.mul(&x[0], &y[0])];
        }
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if self.e.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.e.is_zero(yj) {
                    continue;
                }
                let mut t = self.e.mul(xi, &self.gamma_pows[i].apply(yj));
                let mut k = i + j;
                if k >= self.d {
                    k -= self.d;
                    t = self.e.mul(&t, &self.a);
                }
                out[k] = self.e.add(&out[k], &t);
            }
        }
        out
    }

    /// Multiplication by an element of `E` on the left.
    pub fn scale_e(&self, c: &FE<P>, x: &DElem<P>) -> DElem<P> {
        x.iter().map(|xi| self.e.mul(c, xi)).collect()
    }

    pub fn flatten(&self, x: &DElem<P>) -> Vec<P::Elem> {
        x.iter().flat_map(|c| c.iter().cloned()).collect()
    }

    pub fn unflatten(&self, v: &[P::Elem]) -> DElem<P> {
        v.chunks(self.e.degree()).map(|c| c.to_vec()).collect()
    }

    /// Prime-field basis `{α^j e^i}` of `D`.
    pub fn prime_basis(&self) -> Vec<DElem<P>> {
        let n = self.prime_dim();
        (0..n)
            .map(|k| {
                let mut v = vec![self.base().zero(); n];
                v[k] = self.base().one();
                self.unflatten(&v)
            })
            .collect()
    }

    /// Matrix of `y ↦ x y` over the prime field.
    pub fn left_mul_matrix(&self, x: &DElem<P>) -> Matrix<P::Elem> {
        let cols = self
            .prime_basis()
            .iter()
            .map(|b| self.flatten(&self.mul(x, b)))
            .collect();
        Matrix::from_cols(cols, self.prime_dim())
    }

    pub fn inv(&self, x: &DElem<P>) -> Option<DElem<P>> {
        if self.d == 1 {
            return self.e.inv(&x[0]).map(|v| vec![v]);
        }
        if self.is_zero(x) {
            return None;
        }
        let m = self.left_mul_matrix(x);
        let solver = linalg::LinearSolver::new(self.base(), &m)?;
        solver
            .solve(&self.flatten(&self.one()))
            .map(|v| self.unflatten(&v))
    }

    pub fn pow(&self, x: &DElem<P>, k: i64) -> DElem<P> {
        let b = if k < 0 {
            self.inv(x).expect("invertible")
        } else {
            x.clone()
        };
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &b);
        }
        acc
    }

    /// `u z u^{-1}`.
    pub fn conj(&self, u: &DElem<P>, z: &DElem<P>) -> DElem<P> {
        let ui = self.inv(u).expect("invertible");
        self.mul(&self.mul(u, z), &ui)
    }

    pub fn order(&self) -> Option<u128> {
        self.e.order()?.checked_pow(self.d as u32)
    }

    /// All elements in index order (E-coordinate `z_0` least significant).
    pub fn elements(&self) -> Option<Vec<DElem<P>>> {
        let q = self.e.order()?;
        let total = self.order()?;
        Some(
            (0..total)
                .map(|mut i| {
                    (0..self.d)
                        .map(|_| {
                            let x = self.e.from_index(i % q);
                            i /= q;
                            x
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// An `E`-element is written in the field encoding; anything else as `{z0;z1;…}`.
    pub fn format(&self, x: &DElem<P>) -> String {
        if let Some(z) = self.in_e(x) {
            return self.e.format(&z);
        }
        let parts: Vec<String> = x.iter().map(|c| self.e.format(c)).collect();
        format!("{{{}}}", parts.join(";"))
    }

    pub fn parse(&self, s: &str) -> Result<DElem<P>> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('{') {
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| Error::Parse(format!("unbalanced braces in '{s}'")))?;
            let parts = split_top_level(inner, ';');
            if parts.len() != self.d {
                return Err(Error::ContextMismatch(format!(
                    "'{s}' has {} components, algebra degree is {}",
                    parts.len(),
                    self.d
                )));
            }
            return parts.iter().map(|p| self.e.parse(p)).collect();
        }
        Ok(self.embed(&self.e.parse(t)?))
    }

    // Automorphisms.

    /// Builds `σ` from `σ|_E` and `c` with `σ(e) = c e`; `c` is ignored for fields.
    pub fn auto(&self, on_e: FieldAuto<P>, c: FE<P>) -> Result<DAuto<P>> {
        if self.d == 1 {
            return Ok(DAuto {
                on_e,
                c: self.e.one(),
                pis: vec![self.e.one()],
            });
        }
        if self.e.is_zero(&c) {
            return Err(Error::InvalidConstruction("σ(e) must be nonzero".into()));
        }
        if on_e.compose(self.gamma()) != self.gamma().compose(&on_e) {
            return Err(Error::InvalidConstruction(
                "σ|_E must commute with γ".into(),
            ));
        }
        let mut pis = vec![self.e.one()];
        for i in 1..=self.d {
            let next = self
                .e
                .mul(&pis[i - 1], &self.gamma_pows[(i - 1) % self.d].apply(&c));
            pis.push(next);
        }
        // (c e)^d = σ(a)
        if self.e.mul(&pis[self.d], &self.a) != on_e.apply(&self.a) {
            return Err(Error::InvalidConstruction("σ(e)^d must equal σ(a)".into()));
        }
        pis.truncate(self.d);
        Ok(DAuto { on_e, c, pis })
    }

    pub fn identity_auto(&self) -> DAuto<P> {
        self.auto(FieldAuto::identity(&self.e), self.e.one())
            .expect("identity")
    }

    pub fn apply(&self, s: &DAuto<P>, x: &DElem<P>) -> DElem<P> {
        if self.d == 1 {
            return vec![s.on_e.apply(&x[0])];
        }
        x.iter()
            .zip(&s.pis)
            .map(|(xi, pi)| self.e.mul(&s.on_e.apply(xi), pi))
            .collect()
    }

    /// `s ∘ t`.
    pub fn compose(&self, s: &DAuto<P>, t: &DAuto<P>) -> DAuto<P> {
        let c = self.e.mul(&s.on_e.apply(&t.c), &s.c);
        self.auto(s.on_e.compose(&t.on_e), c)
            .expect("composition of automorphisms")
    }

    pub fn inverse(&self, s: &DAuto<P>) -> DAuto<P> {
        let inv_e = s.on_e.inverse();
        let c = inv_e.apply(&self.e.inv(&s.c).expect("nonzero"));
        self.auto(inv_e, c).expect("inverse automorphism")
    }

    pub fn auto_pow(&self, s: &DAuto<P>, k: i64) -> DAuto<P> {
        let step = if k < 0 { self.inverse(s) } else { s.clone() };
        let mut acc = self.identity_auto();
        for _ in 0..k.unsigned_abs() {
            acc = self.compose(&acc, &step);
        }
        acc
    }

    /// Whether `s` equals conjugation by `u`, tested on a generating set.
    pub fn is_conjugation_by(&self, s: &DAuto<P>, u: &DElem<P>) -> bool {
        self.prime_basis()
            .iter()
            .all(|b| self.apply(s, b) == self.conj(u, b))
    }
}
