//! The skew polynomial ring `R = D[t; σ, δ]` with `t a = σ(a) t + δ(a)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{PrimeField, FE};
use crate::linalg::{self, FieldOps, Matrix};
use crate::ring::{DElem, DivAlg};
use crate::text::split_top_level;
use crate::tower::Tower;

/// Coefficients constant term first, no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug)]
pub struct SkewPoly<P: PrimeField> {
    coeffs: Vec<DElem<P>>,
}

impl<P: PrimeField> PartialEq for SkewPoly<P> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<P: PrimeField> Eq for SkewPoly<P> {}

impl<P: PrimeField> std::hash::Hash for SkewPoly<P> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<P: PrimeField> SkewPoly<P> {
    pub fn coeffs(&self) -> &[DElem<P>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` is the degree of the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&DElem<P>> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&DElem<P>> {
        self.coeffs.get(i)
    }
}

/// A left σ-derivation given as a prime-field-linear map on coordinates.
#[derive(Clone, Debug)]
pub struct Derivation<P: PrimeField> {
    matrix: Matrix<P::Elem>,
}

impl<P: PrimeField> Derivation<P> {
    /// Field coefficients only: `δ` is determined by `δ(α)` for the generator `α`.
    pub fn from_generator_image(tower: &Tower<P>, image: &FE<P>) -> Result<Self> {
        let ring = tower.ring();
        if !ring.is_field() {
            return Err(Error::InvalidConstruction(
                "derivations are supported for field coefficients only".into(),
            ));
        }
        let e = ring.e();
        let alpha = e.generator();
        let sa = tower.sigma_e_pow(1, &alpha);
        let mut cols = Vec::with_capacity(e.degree());
        let mut pw = e.one();
        let mut dpw = e.zero();
        for _ in 0..e.degree() {
            cols.push(dpw.clone());
            // δ(α·α^j) = σ(α) δ(α^j) + δ(α) α^j
            dpw = e.add(&e.mul(&sa, &dpw), &e.mul(image, &pw));
            pw = e.mul(&pw, &alpha);
        }
        let der = Derivation {
            matrix: Matrix::from_cols(cols, e.degree()),
        };
        // The relation μ(α) = 0 must be respected: check the product law on all basis pairs.
        let basis = ring.prime_basis();
        for x in &basis {
            for y in &basis {
                let lhs = der.apply(ring, &ring.mul(x, y));
                let rhs = ring.add(
                    &ring.mul(&tower.sigma_pow(1, x), &der.apply(ring, y)),
                    &ring.mul(&der.apply(ring, x), y),
                );
                if lhs != rhs {
                    return Err(Error::InvalidConstruction(
                        "δ violates the σ-derivation law".into(),
                    ));
                }
            }
        }
        Ok(der)
    }

    /// The inner derivation `δ(z) = c z − σ(z) c`.
    pub fn inner(tower: &Tower<P>, c: &FE<P>) -> Result<Self> {
        let e = tower.ring().e();
        let alpha = e.generator();
        let img = e.sub(&e.mul(c, &alpha), &e.mul(&tower.sigma_e_pow(1, &alpha), c));
        Self::from_generator_image(tower, &img)
    }

    pub fn apply(&self, ring: &DivAlg<P>, x: &DElem<P>) -> DElem<P> {
        ring.unflatten(&linalg::mat_vec(
            ring.base(),
            &self.matrix,
            &ring.flatten(x),
        ))
    }

    pub fn is_zero(&self, ring: &DivAlg<P>) -> bool {
        linalg::is_zero_matrix(ring.base(), &self.matrix)
    }
}

#[derive(Clone, Debug)]
pub struct SkewRing<P: PrimeField> {
    tower: Arc<Tower<P>>,
    delta: Option<Derivation<P>>,
}

impl<P: PrimeField> SkewRing<P> {
    pub fn new(tower: Tower<P>) -> Self {
        SkewRing {
            tower: Arc::new(tower),
            delta: None,
        }
    }

    pub fn with_delta(tower: Tower<P>, delta: Derivation<P>) -> Self {
        let delta = if delta.is_zero(tower.ring()) {
            None
        } else {
            Some(delta)
        };
        SkewRing {
            tower: Arc::new(tower),
            delta,
        }
    }

    pub fn tower(&self) -> &Tower<P> {
        &self.tower
    }

    pub fn ring(&self) -> &DivAlg<P> {
        self.tower.ring()
    }

    pub fn has_delta(&self) -> bool {
        self.delta.is_some()
    }

    pub fn require_no_delta(&self) -> Result<()> {
        if self.delta.is_some() {
            Err(Error::DeltaUnsupported)
        } else {
            Ok(())
        }
    }

    pub fn poly(&self, mut coeffs: Vec<DElem<P>>) -> SkewPoly<P> {
        let ring = self.ring();
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero(&self) -> SkewPoly<P> {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> SkewPoly<P> {
        self.constant(&self.ring().one())
    }

    pub fn constant(&self, c: &DElem<P>) -> SkewPoly<P> {
        self.poly(vec![c.clone()])
    }

    /// `c t^k`.
    pub fn monomial(&self, c: &DElem<P>, k: usize) -> SkewPoly<P> {
        let mut v = vec![self.ring().zero(); k + 1];
        v[k] = c.clone();
        self.poly(v)
    }

    pub fn t(&self) -> SkewPoly<P> {
        self.monomial(&self.ring().one(), 1)
    }

    pub fn is_monic(&self, p: &SkewPoly<P>) -> bool {
        p.lead().is_some_and(|l| self.ring().is_one(l))
    }

    pub fn add(&self, a: &SkewPoly<P>, b: &SkewPoly<P>) -> SkewPoly<P> {
        let ring = self.ring();
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = ring.zero();
        let v = (0..n)
            .map(|i| ring.add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        self.poly(v)
    }

    pub fn sub(&self, a: &SkewPoly<P>, b: &SkewPoly<P>) -> SkewPoly<P> {
        let ring = self.ring();
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = ring.zero();
        let v = (0..n)
            .map(|i| ring.sub(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
            .collect();
        self.poly(v)
    }

    pub fn neg(&self, a: &SkewPoly<P>) -> SkewPoly<P> {
        SkewPoly {
            coeffs: a.coeffs.iter().map(|c| self.ring().neg(c)).collect(),
        }
    }

    /// `c · a` with `c ∈ D` on the left.
    pub fn scale_left(&self, c: &DElem<P>, a: &SkewPoly<P>) -> SkewPoly<P> {
        self.poly(a.coeffs.iter().map(|x| self.ring().mul(c, x)).collect())
    }

    /// `t · a`.
    pub fn t_times(&self, a: &SkewPoly<P>) -> SkewPoly<P> {
        let ring = self.ring();
        let mut v = vec![ring.zero(); a.coeffs.len() + 1];
        for (j, c) in a.coeffs.iter().enumerate() {
            v[j + 1] = ring.add(&v[j + 1], &self.tower.sigma_pow(1, c));
            if let Some(d) = &self.delta {
                v[j] = ring.add(&v[j], &d.apply(ring, c));
            }
        }
        self.poly(v)
    }

    pub fn mul(&self, a: &SkewPoly<P>, b: &SkewPoly<P>) -> SkewPoly<P> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let ring = self.ring();
        if self.delta.is_some() {
            let mut acc = self.zero();
            let mut w = b.clone();
            for (i, ai) in a.coeffs.iter().enumerate() {
                if i > 0 {
                    w = self.t_times(&w);
                }
                if !ring.is_zero(ai) {
                    acc = self.add(&acc, &self.scale_left(ai, &w));
                }
            }
            return acc;
        }
        let mut v = vec![ring.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ring.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if ring.is_zero(bj) {
                    continue;
                }
                let term = ring.mul(ai, &self.tower.sigma_pow(i as i64, bj));
                v[i + j] = ring.add(&v[i + j], &term);
            }
        }
        self.poly(v)
    }

    /// Left-multiplies by the inverse of the leading coefficient.
    pub fn monic(&self, a: &SkewPoly<P>) -> SkewPoly<P> {
        match a.lead() {
            None => self.zero(),
            Some(l) => {
                let li = self.ring().inv(l).expect("nonzero leading coefficient");
                self.scale_left(&li, a)
            }
        }
    }

    /// `g = q f + r` with `deg r < deg f`.
    pub fn right_divmod(
        &self,
        g: &SkewPoly<P>,
        f: &SkewPoly<P>,
    ) -> Result<(SkewPoly<P>, SkewPoly<P>)> {
        let m = f.deg().ok_or(Error::DivisionByZero)?;
        let ring = self.ring();
        let fm = f.lead().unwrap();
        let monic = ring.is_one(fm);
        let mut r = g.clone();
        let mut q = vec![ring.zero(); g.coeffs.len().saturating_sub(m)];
        while let Some(dr) = r.deg() {
            if dr < m {
                break;
            }
            let k = dr - m;
            let top = r.lead().unwrap();
            let c = if monic {
                top.clone()
            } else {
                let lead = self.tower.sigma_pow(k as i64, fm);
                ring.mul(top, &ring.inv(&lead).expect("nonzero"))
            };
            let sub = if self.delta.is_some() {
                self.mul(&self.monomial(&c, k), f)
            } else {
                let mut v = vec![ring.zero(); k];
                v.extend(
                    f.coeffs
                        .iter()
                        .map(|fj| ring.mul(&c, &self.tower.sigma_pow(k as i64, fj))),
                );
                SkewPoly { coeffs: v }
            };
            r = self.sub(&r, &sub);
            // Guard against rounding-free but degenerate cancellation failures.
            debug_assert!(r.deg().is_none_or(|d| d < dr));
            q[k] = ring.add(&q[k], &c);
        }
        Ok((self.poly(q), r))
    }

    pub fn mod_r(&self, g: &SkewPoly<P>, f: &SkewPoly<P>) -> Result<SkewPoly<P>> {
        Ok(self.right_divmod(g, f)?.1)
    }

    /// `g = f q + r` with `deg r < deg f`.
    pub fn left_divmod(
        &self,
        g: &SkewPoly<P>,
        f: &SkewPoly<P>,
    ) -> Result<(SkewPoly<P>, SkewPoly<P>)> {
        self.require_no_delta()?;
        let m = f.deg().ok_or(Error::DivisionByZero)?;
        let ring = self.ring();
        let fm_inv = ring.inv(f.lead().unwrap()).expect("nonzero");
        let mut r = g.clone();
        let mut q = vec![ring.zero(); g.coeffs.len().saturating_sub(m)];
        while let Some(dr) = r.deg() {
            if dr < m {
                break;
            }
            let k = dr - m;
            let c = self
                .tower
                .sigma_pow(-(m as i64), &ring.mul(&fm_inv, r.lead().unwrap()));
            let mut v = vec![ring.zero(); k];
            v.extend(
                f.coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, fj)| ring.mul(fj, &self.tower.sigma_pow(j as i64, &c))),
            );
            r = self.sub(&r, &SkewPoly { coeffs: v });
            q[k] = ring.add(&q[k], &c);
        }
        Ok((self.poly(q), r))
    }

    /// Monic greatest common right divisor; `gcrd(a, 0) = monic(a)`.
    pub fn gcrd(&self, a: &SkewPoly<P>, b: &SkewPoly<P>) -> Result<SkewPoly<P>> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.mod_r(&x, &y)?;
            x = y;
            y = r;
        }
        Ok(self.monic(&x))
    }

    /// Monic least common left multiple, from the extended right Euclidean algorithm.
    pub fn lclm(&self, a: &SkewPoly<P>, b: &SkewPoly<P>) -> Result<SkewPoly<P>> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroOperand);
        }
        let mut r0 = a.clone();
        let mut r1 = b.clone();
        let mut s0 = self.one();
        let mut s1 = self.zero();
        while !r1.is_zero() {
            let (q, r2) = self.right_divmod(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        Ok(self.monic(&self.mul(&s1, a)))
    }

    /// `u^{-1} t^n`, a generator of the center over `F`.
    pub fn x_elem(&self) -> SkewPoly<P> {
        self.monomial(self.tower.u_inv(), self.tower.n())
    }

    /// `ĝ(u^{-1} t^n) = Σ ĝ_j u^{-j} t^{nj}` for `ĝ` over `F`.
    pub fn from_hat(&self, hat: &[FE<P>]) -> SkewPoly<P> {
        let ring = self.ring();
        let n = self.tower.n();
        let mut v = vec![ring.zero(); hat.len().saturating_sub(1) * n + 1];
        let mut upow = ring.one();
        for (j, c) in hat.iter().enumerate() {
            v[j * n] = ring.mul(&ring.embed(c), &upow);
            upow = ring.mul(&upow, self.tower.u_inv());
        }
        self.poly(v)
    }

    /// Commutes with `t` and with a prime-field basis of `D`.
    pub fn is_central(&self, p: &SkewPoly<P>) -> bool {
        let t = self.t();
        if self.mul(p, &t) != self.mul(&t, p) {
            return false;
        }
        self.ring().prime_basis().iter().all(|b| {
            let c = self.constant(b);
            self.mul(p, &c) == self.mul(&c, p)
        })
    }

    pub fn format(&self, p: &SkewPoly<P>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = p.coeffs.iter().map(|c| self.ring().format(c)).collect();
        parts.join(",")
    }

    pub fn parse(&self, s: &str) -> Result<SkewPoly<P>> {
        let parts = split_top_level(s, ',');
        if parts.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = parts
            .iter()
            .map(|p| self.ring().parse(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.poly(coeffs))
    }

    /// Human-readable form such as `t^2 + 2`; used in reports only.
    pub fn pretty(&self, p: &SkewPoly<P>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let ring = self.ring();
        let mut terms = Vec::new();
        for (i, c) in p.coeffs.iter().enumerate().rev() {
            if ring.is_zero(c) {
                continue;
            }
            let coef = ring.format(c);
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            terms.push(match (i, ring.is_one(c)) {
                (0, _) => coef,
                (_, true) => mono,
                _ => format!("({coef}){mono}"),
            });
        }
        terms.join(" + ")
    }
}
