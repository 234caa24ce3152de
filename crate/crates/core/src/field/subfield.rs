//! Subfields of an extension, stored as prime-field spans inside it.
//!
//! Arithmetic in a subfield is the ambient arithmetic: sums and products of
//! subfield elements stay in the subfield, so `ExtField` itself serves as the
//! `FieldOps` context for linear algebra over any of its subfields.

use super::auto::FieldAuto;
use super::ext::{ExtField, FE};
use super::prime::PrimeField;
use crate::linalg::{self, EchelonBasis, FieldOps, LinearSolver, Matrix};

#[derive(Clone, Debug)]
pub struct Subfield<P: PrimeField> {
    field: ExtField<P>,
    basis: Vec<FE<P>>,
    span: EchelonBasis<P>,
    solver: LinearSolver<P>,
}

impl<P: PrimeField> Subfield<P> {
    fn from_basis(field: &ExtField<P>, basis: Vec<FE<P>>) -> Self {
        let base = field.base();
        let mut span = EchelonBasis::new(base);
        for b in &basis {
            span.insert(b);
        }
        let w = Matrix::from_cols(basis.clone(), field.degree());
        let solver = LinearSolver::new(base, &w).expect("independent basis");
        Subfield {
            field: field.clone(),
            basis,
            span,
            solver,
        }
    }

    pub fn whole(field: &ExtField<P>) -> Self {
        let basis = (0..field.degree())
            .map(|i| {
                let mut v = field.zero();
                v[i] = field.base().one();
                v
            })
            .collect();
        Self::from_basis(field, basis)
    }

    pub fn prime(field: &ExtField<P>) -> Self {
        Self::from_basis(field, vec![field.one()])
    }

    /// Common fixed field of the given automorphisms.
    pub fn fixed_by(field: &ExtField<P>, autos: &[&FieldAuto<P>]) -> Self {
        let base = field.base();
        let e = field.degree();
        let mut rows = Vec::new();
        for a in autos {
            let m = a.matrix();
            for i in 0..e {
                let row: Vec<P::Elem> = (0..e)
                    .map(|j| {
                        let v = m.get(i, j).clone();
                        if i == j {
                            base.sub(&v, &base.one())
                        } else {
                            v
                        }
                    })
                    .collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Self::whole(field);
        }
        let ker = linalg::kernel(base, &Matrix::from_rows(rows));
        Self::from_basis(field, ker)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        // x = Σ a_i b_i = Σ c_j b'_j
        let base = self.field.base();
        let e = self.field.degree();
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| self.field.neg(b)));
        let ker = linalg::kernel(base, &Matrix::from_cols(cols, e));
        let mut span = EchelonBasis::new(base);
        let mut basis = Vec::new();
        for v in ker {
            let x = self
                .basis
                .iter()
                .zip(&v)
                .fold(self.field.zero(), |acc, (b, c)| {
                    self.field
                        .add(&acc, &self.field.mul(&self.field.embed(c), b))
                });
            if span.insert(&x) {
                basis.push(x);
            }
        }
        Self::from_basis(&self.field, basis)
    }

    pub fn field(&self) -> &ExtField<P> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FE<P>] {
        &self.basis
    }

    pub fn contains(&self, x: &FE<P>) -> bool {
        self.span.contains(x)
    }

    pub fn is_subfield_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Prime-field coordinates in this subfield's basis.
    pub fn coords(&self, x: &FE<P>) -> Option<Vec<P::Elem>> {
        self.solver.solve(x)
    }

    pub fn from_coords(&self, c: &[P::Elem]) -> FE<P> {
        let f = &self.field;
        self.basis.iter().zip(c).fold(f.zero(), |acc, (b, ci)| {
            f.add(&acc, &f.mul(&f.embed(ci), b))
        })
    }

    pub fn order(&self) -> Option<u128> {
        if !self.field.is_finite() {
            return None;
        }
        (self.field.base().characteristic() as u128).checked_pow(self.dim() as u32)
    }

    /// All elements, ordered by little-endian base-p digit index of their coordinates.
    pub fn elements(&self) -> Option<Vec<FE<P>>> {
        let q = self.order()?;
        let p = self.field.base().characteristic() as u128;
        let base = self.field.base();
        Some(
            (0..q)
                .map(|mut i| {
                    let c: Vec<P::Elem> = (0..self.dim())
                        .map(|_| {
                            let d = (i % p) as i64;
                            i /= p;
                            base.from_int(d)
                        })
                        .collect();
                    self.from_coords(&c)
                })
                .collect(),
        )
    }
}

/// A basis of the ambient field over a subfield, with coordinate extraction.
#[derive(Clone, Debug)]
pub struct RelBasis<P: PrimeField> {
    sub: Subfield<P>,
    basis: Vec<FE<P>>,
    solver: LinearSolver<P>,
}

impl<P: PrimeField> RelBasis<P> {
    /// Greedy basis drawn from powers of the generator.
    pub fn new(sub: &Subfield<P>) -> Self {
        let field = sub.field();
        let base = field.base();
        let mut span = EchelonBasis::new(base);
        let mut basis = Vec::new();
        let g = field.generator();
        let mut pw = field.one();
        let mut cols = Vec::new();
        // Degree-1 ambient fields have a trivial generator; fall back to unit vectors.
        let mut candidates: Vec<FE<P>> = Vec::new();
        for _ in 0..field.degree() {
            candidates.push(pw.clone());
            pw = field.mul(&pw, &g);
        }
        candidates.extend(Subfield::whole(field).basis().iter().cloned());
        for c in candidates {
            if span.rank() == field.degree() {
                break;
            }
            let prods: Vec<FE<P>> = sub.basis().iter().map(|s| field.mul(s, &c)).collect();
            if span.contains(&prods[0]) {
                continue;
            }
            for p in &prods {
                span.insert(p);
            }
            cols.extend(prods);
            basis.push(c);
        }
        let solver =
            LinearSolver::new(base, &Matrix::from_cols(cols, field.degree())).expect("basis");
        RelBasis {
            sub: sub.clone(),
            basis,
            solver,
        }
    }

    /// Basis of `sup` over `sub`, for subfields `sub ⊆ sup`.
    pub fn between(sub: &Subfield<P>, sup: &Subfield<P>) -> Self {
        let field = sub.field();
        let base = field.base();
        let mut span = EchelonBasis::new(base);
        let mut basis = Vec::new();
        let mut cols = Vec::new();
        for c in sup.basis() {
            let prods: Vec<FE<P>> = sub.basis().iter().map(|s| field.mul(s, c)).collect();
            if span.contains(&prods[0]) {
                continue;
            }
            for p in &prods {
                span.insert(p);
            }
            cols.extend(prods);
            basis.push(c.clone());
        }
        let solver =
            LinearSolver::new(base, &Matrix::from_cols(cols, field.degree())).expect("basis");
        RelBasis {
            sub: sub.clone(),
            basis,
            solver,
        }
    }

    pub fn sub(&self) -> &Subfield<P> {
        &self.sub
    }

    pub fn basis(&self) -> &[FE<P>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates in the subfield: `x = Σ c_i β_i`.
    pub fn coords(&self, x: &FE<P>) -> Vec<FE<P>> {
        let flat = self.solver.solve(x).expect("basis spans the field");
        let s = self.sub.dim();
        flat.chunks(s).map(|c| self.sub.from_coords(c)).collect()
    }

    pub fn combine(&self, c: &[FE<P>]) -> FE<P> {
        let f = self.sub.field();
        self.basis
            .iter()
            .zip(c)
            .fold(f.zero(), |acc, (b, ci)| f.add(&acc, &f.mul(ci, b)))
    }
}
