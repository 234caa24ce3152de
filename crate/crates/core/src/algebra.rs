//! The product `b ∘ c = (b + νρ(b_0) t^m) c mod_r f` on `R_m`, division
//! verdicts, nuclei and the idealisers of a spread set.

use crate::central::{is_irreducible, Irreducibility};
use crate::code::{CodeSpec, SpreadSet};
use crate::error::{Error, Result};
use crate::field::{ExtField, PrimeField, RelBasis, Subfield, FE};
use crate::linalg::{self, FieldOps, Matrix};
use crate::par::{self, Exec};
use crate::rank::digits;
use crate::skew::{SkewPoly, SkewRing};
use crate::tower::Level;

/// Sizes of `R_m` up to which the pair scan is used instead of the rank scan.
pub const PAIR_SCAN_LIMIT: u128 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    NuZero,
    Norm,
    NuNotInE,
    ENorm,
    Scan,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::NuZero => "nu-zero",
            Criterion::Norm => "norm",
            Criterion::NuNotInE => "nu-not-in-e",
            Criterion::ENorm => "e-norm",
            Criterion::Scan => "scan",
        }
    }

    /// Name used in division verdicts, where `ν = 0` means a Petit algebra.
    pub fn division_name(self) -> &'static str {
        match self {
            Criterion::NuZero => "petit",
            c => c.name(),
        }
    }
}

/// Norm criteria for irreducible `f` and `ν ≠ 0`: the `K`-case test when
/// `deg h = mn`, and for `l = 1` the `E`-branch tests when `f ∈ E[t;σ]` and
/// similar polynomials are declared to lie in `E[t;σ]`.
pub fn norm_criterion<P: PrimeField>(spec: &CodeSpec<P>) -> Result<Option<Criterion>> {
    let r = spec.ring();
    let tower = r.tower();
    let ring = r.ring();
    let e = ring.e();
    let report = spec.report();
    if !report.is_full_degree {
        return Ok(None);
    }
    let a0 = &spec.f().coeffs()[0];
    let norm_fp = |x: &FE<P>| tower.norm(x, Level::E, Level::FPrime);
    if ring.is_field() {
        let lhs = e.mul(
            &e.pow(&norm_fp(&a0[0])?, spec.l() as u64),
            &norm_fp(&spec.nu()[0])?,
        );
        return Ok((lhs != e.one()).then_some(Criterion::Norm));
    }
    // No finite instance can test an l > 1 version of the E-branch.
    if spec.l() > 1 || !spec.similar_in_e() {
        return Ok(None);
    }
    let in_e = |x: &crate::ring::DElem<P>| ring.in_e(x).is_some();
    let rho_keeps_e = in_e(&ring.apply(spec.rho(), &ring.embed(&e.generator())));
    if !rho_keeps_e || !spec.f().coeffs().iter().all(in_e) {
        return Ok(None);
    }
    let Some(nu) = ring.in_e(spec.nu()) else {
        return Ok(Some(Criterion::NuNotInE));
    };
    let a0 = ring.in_e(a0).expect("checked");
    let lhs = e.mul(&norm_fp(&a0)?, &norm_fp(&nu)?);
    Ok((lhs != e.one()).then_some(Criterion::ENorm))
}

/// `Rf` is two-sided: `f D ⊆ Rf` and `f t ∈ Rf`.
pub fn right_invariant<P: PrimeField>(r: &SkewRing<P>, f: &SkewPoly<P>) -> Result<bool> {
    for b in r.ring().prime_basis() {
        if !r.mod_r(&r.mul(f, &r.constant(&b)), f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(r.mod_r(&r.mul(f, &r.t()), f)?.is_zero())
}

fn require_l_one<P: PrimeField>(spec: &CodeSpec<P>) -> Result<()> {
    if spec.l() != 1 {
        return Err(Error::PreconditionFailed(format!(
            "the algebra needs l = 1, got l = {}",
            spec.l()
        )));
    }
    Ok(())
}

/// `(b + νρ(b_0) t^m) c mod_r f` for `deg b, deg c < m`.
pub fn circ<P: PrimeField>(
    spec: &CodeSpec<P>,
    b: &SkewPoly<P>,
    c: &SkewPoly<P>,
) -> Result<SkewPoly<P>> {
    require_l_one(spec)?;
    let m = spec.m();
    for p in [b, c] {
        if p.deg().is_some_and(|d| d >= m) {
            return Err(Error::DegreeOutOfRange(format!(
                "operands of ∘ need degree below m = {m}"
            )));
        }
    }
    let r = spec.ring();
    r.mod_r(&r.mul(&lift(spec, b), c), spec.f())
}

/// `b ↦ b + νρ(b_0) t^m`, the element of `A` acting as `L_b`.
fn lift<P: PrimeField>(spec: &CodeSpec<P>, b: &SkewPoly<P>) -> SkewPoly<P> {
    let ring = spec.ring().ring();
    let d: Vec<_> = (0..spec.lm())
        .map(|i| b.coeff(i).cloned().unwrap_or_else(|| ring.zero()))
        .collect();
    spec.build_a_element(&d).expect("length lm")
}

/// `F'`-basis of `R_m`, position-major; it matches [`CodeSpec::generators`] under `b ↦ b + νρ(b_0)t^m`.
pub fn rm_basis<P: PrimeField>(spec: &CodeSpec<P>) -> Vec<SkewPoly<P>> {
    let r = spec.ring();
    let basis = r.tower().fp_basis_of_d();
    (0..spec.m())
        .flat_map(|j| basis.iter().map(move |b| r.monomial(b, j)))
        .collect()
}

/// `F'`-coordinates of an element of `R_m` in [`rm_basis`].
pub fn rm_coords<P: PrimeField>(spec: &CodeSpec<P>, p: &SkewPoly<P>) -> Vec<FE<P>> {
    let r = spec.ring();
    let z = r.ring().zero();
    (0..spec.m())
        .flat_map(|j| r.tower().fp_coords(p.coeff(j).unwrap_or(&z)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionVerdict<P: PrimeField> {
    Division {
        by: Criterion,
    },
    NotDivision {
        left: SkewPoly<P>,
        right: SkewPoly<P>,
    },
    Unknown,
}

impl<P: PrimeField> DivisionVerdict<P> {
    pub fn summary(&self) -> String {
        match self {
            DivisionVerdict::Division { by } => format!("division=yes by={}", by.division_name()),
            DivisionVerdict::NotDivision { .. } => "division=no by=scan".into(),
            DivisionVerdict::Unknown => "division=unknown by=none".into(),
        }
    }
}

/// The theorem-backed division criteria; `None` when none applies.
pub fn division_criteria<P: PrimeField>(
    spec: &CodeSpec<P>,
    budget: u128,
) -> Result<Option<Criterion>> {
    require_l_one(spec)?;
    let r = spec.ring();
    if !matches!(
        is_irreducible(r, spec.report(), budget)?,
        Irreducibility::Irreducible
    ) {
        return Ok(None);
    }
    if r.ring().is_zero(spec.nu()) {
        return Ok(Some(Criterion::NuZero));
    }
    norm_criterion(spec)
}

/// Criteria, then a zero-divisor scan: pairs for small `R_m`, ranks of `M_a` above that.
pub fn check_division<P: PrimeField>(
    spec: &CodeSpec<P>,
    budget: u128,
    exec: Exec,
) -> Result<DivisionVerdict<P>> {
    if let Some(by) = division_criteria(spec, budget)? {
        return Ok(DivisionVerdict::Division { by });
    }
    let Some(size) = spec.codeword_count() else {
        return Ok(DivisionVerdict::Unknown);
    };
    if size > budget {
        return Ok(DivisionVerdict::Unknown);
    }
    let found = if size <= PAIR_SCAN_LIMIT {
        zero_divisor_by_pairs(spec, budget, exec)?
    } else {
        match SpreadSet::new(spec) {
            Ok(ss) => zero_divisor_by_rank(&ss, budget, exec)?,
            Err(Error::SNotOne { .. }) => return Ok(DivisionVerdict::Unknown),
            Err(e) => return Err(e),
        }
    };
    Ok(match found {
        Some((left, right)) => DivisionVerdict::NotDivision { left, right },
        None => DivisionVerdict::Division {
            by: Criterion::Scan,
        },
    })
}

fn rm_elements<P: PrimeField>(spec: &CodeSpec<P>, budget: u128) -> Result<Vec<SkewPoly<P>>> {
    let total = spec.codeword_count().ok_or(Error::InfiniteField)?;
    if total > budget {
        return Err(Error::BudgetExceeded {
            visited: budget,
            total,
        });
    }
    let elems = spec.ring().tower().fp_field().elements().expect("finite");
    let basis = rm_basis(spec);
    Ok((0..total)
        .map(|i| spec.combine(&basis, &digits::<P>(&elems, i, basis.len())))
        .collect())
}

/// First nonzero pair with `b ∘ c = 0`, by brute force over `R_m × R_m`.
pub fn zero_divisor_by_pairs<P: PrimeField>(
    spec: &CodeSpec<P>,
    budget: u128,
    exec: Exec,
) -> Result<Option<(SkewPoly<P>, SkewPoly<P>)>> {
    require_l_one(spec)?;
    let all = rm_elements(spec, budget)?;
    let r = spec.ring();
    let f = spec.f();
    let right_partner = |i: u64| -> Option<usize> {
        let a = lift(spec, &all[i as usize]);
        (1..all.len()).find(|&j| {
            r.mod_r(&r.mul(&a, &all[j]), f)
                .expect("f nonzero")
                .is_zero()
        })
    };
    let n = all.len() as u64 - 1;
    let hit = par::find_first(exec, n, |i| right_partner(i + 1).is_some());
    Ok(hit.map(|i| {
        let j = right_partner(i + 1).expect("found");
        (all[i as usize + 1].clone(), all[j].clone())
    }))
}

/// First `a` (in index order) with singular `M_a`, paired with a kernel vector read back in `R_m`.
pub fn zero_divisor_by_rank<P: PrimeField>(
    ss: &SpreadSet<P>,
    budget: u128,
    exec: Exec,
) -> Result<Option<(SkewPoly<P>, SkewPoly<P>)>> {
    let spec = ss.spec();
    require_l_one(spec)?;
    let total = spec.codeword_count().ok_or(Error::InfiniteField)?;
    if total > budget {
        return Err(Error::BudgetExceeded {
            visited: budget,
            total,
        });
    }
    let elems = spec.ring().tower().fp_field().elements().expect("finite");
    let dim = spec.dim_fp();
    let k = ss.k();
    let eh = ss.ehat();
    let hit = par::find_first(exec, (total - 1) as u64, |i| {
        linalg::rank(
            eh,
            &ss.matrix_of_coords(&digits::<P>(&elems, i as u128 + 1, dim)),
        ) < k
    });
    let Some(i) = hit else { return Ok(None) };
    let c = digits::<P>(&elems, i as u128 + 1, dim);
    let ker = linalg::kernel(eh, &ss.matrix_of_coords(&c));
    let right = ss.vf().element(&ker[0])?;
    let left = spec.combine(&rm_basis(spec), &c);
    Ok(Some((left, right)))
}

#[derive(Clone, Debug)]
pub struct NucleiReport<P: PrimeField> {
    pub left: Vec<SkewPoly<P>>,
    pub middle: Vec<SkewPoly<P>>,
    pub right: Vec<SkewPoly<P>>,
    pub center: Vec<SkewPoly<P>>,
}

impl<P: PrimeField> NucleiReport<P> {
    pub fn dims(&self) -> NucleiDims {
        NucleiDims {
            left: self.left.len(),
            middle: self.middle.len(),
            right: self.right.len(),
            center: self.center.len(),
        }
    }
}

/// Dimensions over `F'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NucleiDims {
    pub left: usize,
    pub middle: usize,
    pub right: usize,
    pub center: usize,
}

/// Structure constants of `∘` in [`rm_basis`]: `table[i][j]` are the coordinates of `e_i ∘ e_j`.
pub fn structure_constants<P: PrimeField>(spec: &CodeSpec<P>) -> Result<Vec<Vec<Vec<FE<P>>>>> {
    let basis = rm_basis(spec);
    basis
        .iter()
        .map(|b| {
            basis
                .iter()
                .map(|c| Ok(rm_coords(spec, &circ(spec, b, c)?)))
                .collect()
        })
        .collect()
}

/// The unital isotope `x * y = R_1^{-1}(x) ∘ L_1^{-1}(y)` with identity `1 ∘ 1`.
/// For `ν = 0` it is `∘` itself.
#[derive(Clone, Debug)]
pub struct Isotope<P: PrimeField> {
    spec: CodeSpec<P>,
    basis: Vec<SkewPoly<P>>,
    table: Vec<Vec<Vec<FE<P>>>>,
}

impl<P: PrimeField> Isotope<P> {
    /// Fails when `L_1` or `R_1` is singular.
    pub fn new(spec: &CodeSpec<P>) -> Result<Self> {
        require_l_one(spec)?;
        let e = spec.e();
        let t = structure_constants(spec)?;
        let n = t.len();
        let one = rm_coords(spec, &spec.ring().one());
        let side = |left: bool| -> Result<Matrix<FE<P>>> {
            let mut m = Matrix::zeros(e, n, n);
            for j in 0..n {
                for (p, op) in one.iter().enumerate() {
                    if e.is_zero(op) {
                        continue;
                    }
                    let col = if left { &t[p][j] } else { &t[j][p] };
                    for (c, x) in col.iter().enumerate() {
                        let v = e.add(m.get(c, j), &e.mul(op, x));
                        m.set(c, j, v);
                    }
                }
            }
            linalg::inverse(e, &m).ok_or_else(|| {
                Error::PreconditionFailed("1 is a zero divisor; no unital isotope".into())
            })
        };
        let (li, ri) = (side(true)?, side(false)?);
        let mut table = vec![vec![vec![e.zero(); n]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                for p in 0..n {
                    let rp = ri.get(p, i);
                    if e.is_zero(rp) {
                        continue;
                    }
                    for q in 0..n {
                        let c = e.mul(rp, li.get(q, j));
                        if e.is_zero(&c) {
                            continue;
                        }
                        for (o, v) in out.iter_mut().zip(&t[p][q]) {
                            *o = e.add(o, &e.mul(&c, v));
                        }
                    }
                }
            }
        }
        Ok(Isotope {
            spec: spec.clone(),
            basis: rm_basis(spec),
            table,
        })
    }

    pub fn table(&self) -> &[Vec<Vec<FE<P>>>] {
        &self.table
    }

    pub fn mul(&self, x: &SkewPoly<P>, y: &SkewPoly<P>) -> SkewPoly<P> {
        let e = self.spec.e();
        let (cx, cy) = (rm_coords(&self.spec, x), rm_coords(&self.spec, y));
        let mut out = vec![e.zero(); self.basis.len()];
        for (i, a) in cx.iter().enumerate() {
            for (j, b) in cy.iter().enumerate() {
                let c = e.mul(a, b);
                if e.is_zero(&c) {
                    continue;
                }
                for (o, v) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = e.add(o, &e.mul(&c, v));
                }
            }
        }
        self.spec.combine(&self.basis, &out)
    }

    pub fn one(&self) -> SkewPoly<P> {
        let one = self.spec.ring().one();
        circ(&self.spec, &one, &one).expect("degree 0")
    }
}

/// Nuclei and center of the unital [`Isotope`], from the associator equations on basis triples.
pub fn nuclei<P: PrimeField>(spec: &CodeSpec<P>) -> Result<NucleiReport<P>> {
    let e = spec.e();
    let iso = Isotope::new(spec)?;
    let t = iso.table();
    let n = t.len();
    // (x∘y)∘z and x∘(y∘z) on basis vectors
    let prod = |x: &[FE<P>], z: usize| -> Vec<FE<P>> {
        let mut out = vec![e.zero(); n];
        for (p, xp) in x.iter().enumerate() {
            if e.is_zero(xp) {
                continue;
            }
            for (o, v) in out.iter_mut().zip(&t[p][z]) {
                *o = e.add(o, &e.mul(xp, v));
            }
        }
        out
    };
    let prod_l = |z: usize, x: &[FE<P>]| -> Vec<FE<P>> {
        let mut out = vec![e.zero(); n];
        for (p, xp) in x.iter().enumerate() {
            if e.is_zero(xp) {
                continue;
            }
            for (o, v) in out.iter_mut().zip(&t[z][p]) {
                *o = e.add(o, &e.mul(xp, v));
            }
        }
        out
    };
    let mut assoc = vec![vec![vec![Vec::new(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = prod(&t[i][j], k);
                let rhs = prod_l(i, &t[j][k]);
                assoc[i][j][k] = lhs.iter().zip(&rhs).map(|(a, b)| e.sub(a, b)).collect();
            }
        }
    }
    // rows of the system in the unknown x = Σ x_i e_i
    let slot_rows = |slot: usize| -> Vec<Vec<FE<P>>> {
        let mut rows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    rows.push(
                        (0..n)
                            .map(|i| {
                                let v = match slot {
                                    0 => &assoc[i][a][b],
                                    1 => &assoc[a][i][b],
                                    _ => &assoc[a][b][i],
                                };
                                v[c].clone()
                            })
                            .collect(),
                    );
                }
            }
        }
        rows
    };
    let mut comm = Vec::new();
    for j in 0..n {
        for c in 0..n {
            comm.push((0..n).map(|i| e.sub(&t[i][j][c], &t[j][i][c])).collect());
        }
    }
    let (l, m, r) = (slot_rows(0), slot_rows(1), slot_rows(2));
    let mut all = comm;
    all.extend(l.iter().cloned());
    all.extend(m.iter().cloned());
    all.extend(r.iter().cloned());
    let basis = rm_basis(spec);
    let solve = |rows: Vec<Vec<FE<P>>>| -> Vec<SkewPoly<P>> {
        linalg::kernel(e, &Matrix::from_rows(rows))
            .iter()
            .map(|v| spec.combine(&basis, v))
            .collect()
    };
    Ok(NucleiReport {
        left: solve(l),
        middle: solve(m),
        right: solve(r),
        center: solve(all),
    })
}

/// `F'`-linear view of `E_ĥ^k`: coordinates `(position, power of x, F-over-F' basis)`.
#[derive(Clone, Debug)]
pub struct FpView<P: PrimeField> {
    f_over_fp: RelBasis<P>,
    deg_hat: usize,
    k: usize,
}

impl<P: PrimeField> FpView<P> {
    pub fn new(ss: &SpreadSet<P>) -> Self {
        let tower = ss.spec().ring().tower();
        FpView {
            f_over_fp: RelBasis::between(tower.fp_field(), tower.f_field()),
            deg_hat: ss.ehat().degree(),
            k: ss.k(),
        }
    }

    /// `dim_{F'} E_ĥ^k`.
    pub fn dim(&self) -> usize {
        self.k * self.per_entry()
    }

    fn per_entry(&self) -> usize {
        self.deg_hat * self.f_over_fp.len()
    }

    fn entry_coords(&self, z: &[FE<P>]) -> Vec<FE<P>> {
        z.iter().flat_map(|c| self.f_over_fp.coords(c)).collect()
    }

    /// The `F'`-basis of `E_ĥ`, in coordinate order.
    pub fn entry_basis(&self, ehat: &crate::central::EHat<P>) -> Vec<Vec<FE<P>>> {
        let e = ehat.ambient();
        let mut out = Vec::new();
        for i in 0..self.deg_hat {
            for b in self.f_over_fp.basis() {
                let mut v = vec![e.zero(); self.deg_hat];
                v[i] = b.clone();
                out.push(v);
            }
        }
        out
    }

    /// An `E_ĥ`-matrix as an `F'`-matrix on `F'^{dim}`.
    pub fn matrix(&self, ehat: &crate::central::EHat<P>, m: &Matrix<Vec<FE<P>>>) -> Matrix<FE<P>> {
        let entry_basis = self.entry_basis(ehat);
        let mut cols = Vec::with_capacity(self.dim());
        for j in 0..self.k {
            for b in &entry_basis {
                let col: Vec<FE<P>> = (0..self.k)
                    .flat_map(|i| self.entry_coords(&ehat.mul(m.get(i, j), b)))
                    .collect();
                cols.push(col);
            }
        }
        Matrix::from_cols(cols, self.dim())
    }
}

/// Idealisers of a matrix set inside an ambient space, over `F'`.
#[derive(Clone, Debug)]
pub struct IdealiserReport<P: PrimeField> {
    pub left: Vec<Matrix<FE<P>>>,
    pub right: Vec<Matrix<FE<P>>>,
    pub centraliser: Vec<Matrix<FE<P>>>,
    /// `I_l ∩ C`.
    pub centre: Vec<Matrix<FE<P>>>,
}

impl<P: PrimeField> IdealiserReport<P> {
    pub fn dims(&self) -> [usize; 4] {
        [
            self.left.len(),
            self.right.len(),
            self.centraliser.len(),
            self.centre.len(),
        ]
    }
}

fn flat<T: Clone>(m: &Matrix<T>) -> Vec<T> {
    m.entries().to_vec()
}

fn dot<P: PrimeField>(e: &ExtField<P>, a: &[FE<P>], b: &[FE<P>]) -> FE<P> {
    a.iter()
        .zip(b)
        .fold(e.zero(), |acc, (x, y)| e.add(&acc, &e.mul(x, y)))
}

/// `I_l`, `I_r`, the centraliser and `I_l ∩ C` of `span(set)` within `span(ambient)`.
pub fn idealisers_in<P: PrimeField>(
    e: &ExtField<P>,
    ambient: &[Matrix<FE<P>>],
    set: &[Matrix<FE<P>>],
) -> IdealiserReport<P> {
    let ann = linalg::kernel(e, &Matrix::from_rows(set.iter().map(flat).collect()));
    let left_rows: Vec<Vec<FE<P>>> = {
        let prods: Vec<Vec<Vec<FE<P>>>> = ambient
            .iter()
            .map(|a| {
                set.iter()
                    .map(|s| flat(&linalg::mat_mul(e, a, s)))
                    .collect()
            })
            .collect();
        membership_rows(e, &ann, &prods, set.len())
    };
    let right_rows = {
        let prods: Vec<Vec<Vec<FE<P>>>> = ambient
            .iter()
            .map(|a| {
                set.iter()
                    .map(|s| flat(&linalg::mat_mul(e, s, a)))
                    .collect()
            })
            .collect();
        membership_rows(e, &ann, &prods, set.len())
    };
    let mut cent_rows = Vec::new();
    let comms: Vec<Vec<Vec<FE<P>>>> = ambient
        .iter()
        .map(|a| {
            set.iter()
                .map(|s| {
                    flat(&linalg::mat_sub(
                        e,
                        &linalg::mat_mul(e, a, s),
                        &linalg::mat_mul(e, s, a),
                    ))
                })
                .collect()
        })
        .collect();
    let entries = ambient.first().map_or(0, |a| a.rows() * a.cols());
    for g in 0..set.len() {
        for p in 0..entries {
            cent_rows.push(comms.iter().map(|c| c[g][p].clone()).collect());
        }
    }
    let solve = |rows: Vec<Vec<FE<P>>>| -> Vec<Matrix<FE<P>>> {
        let ker = if rows.is_empty() {
            (0..ambient.len())
                .map(|i| {
                    (0..ambient.len())
                        .map(|j| if i == j { e.one() } else { e.zero() })
                        .collect()
                })
                .collect()
        } else {
            linalg::kernel(e, &Matrix::from_rows(rows))
        };
        ker.iter()
            .map(|c| {
                ambient.iter().zip(c).fold(
                    Matrix::zeros(e, ambient[0].rows(), ambient[0].cols()),
                    |acc, (a, ci)| linalg::mat_add(e, &acc, &linalg::mat_scale(e, ci, a)),
                )
            })
            .collect()
    };
    let mut centre_rows = left_rows.clone();
    centre_rows.extend(cent_rows.iter().cloned());
    IdealiserReport {
        left: solve(left_rows),
        right: solve(right_rows),
        centraliser: solve(cent_rows),
        centre: solve(centre_rows),
    }
}

fn membership_rows<P: PrimeField>(
    e: &ExtField<P>,
    ann: &[Vec<FE<P>>],
    prods: &[Vec<Vec<FE<P>>>],
    set_len: usize,
) -> Vec<Vec<FE<P>>> {
    let mut rows = Vec::new();
    for g in 0..set_len {
        for w in ann {
            rows.push(prods.iter().map(|p| dot(e, w, &p[g])).collect());
        }
    }
    rows
}

/// Idealisers of the spread set in `M_k(E_ĥ)`, viewed over `F'`.
pub fn idealisers<P: PrimeField>(ss: &SpreadSet<P>) -> IdealiserReport<P> {
    let view = FpView::new(ss);
    let eh = ss.ehat();
    let e = eh.ambient();
    let k = ss.k();
    let mut ambient = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for b in view.entry_basis(eh) {
                let mut m = Matrix::zeros(eh, k, k);
                m.set(i, j, b);
                ambient.push(view.matrix(eh, &m));
            }
        }
    }
    let set: Vec<_> = ss
        .generator_matrices()
        .iter()
        .map(|m| view.matrix(eh, m))
        .collect();
    idealisers_in(e, &ambient, &set)
}

/// Nuclei through the unital isotope `{M_a M_e^{-1}}`, `e` the element acting as `L_1`,
/// with `Nuc_l ↔ I_l`, `Nuc_m ↔ I_r`, `Nuc_r ↔` centraliser in `End_{F'}(V_f)`.
pub fn nuclei_via_idealisers<P: PrimeField>(ss: &SpreadSet<P>) -> Result<NucleiDims> {
    let spec = ss.spec();
    require_l_one(spec)?;
    let eh = ss.ehat();
    let e = eh.ambient();
    let r = spec.ring();
    let me = ss.matrix_of(&lift(spec, &r.one()))?;
    let inv = linalg::inverse(eh, &me).ok_or_else(|| {
        Error::PreconditionFailed("1 is a left zero divisor; no unital isotope".into())
    })?;
    let view = FpView::new(ss);
    let set: Vec<_> = ss
        .generator_matrices()
        .iter()
        .map(|m| view.matrix(eh, &linalg::mat_mul(eh, m, &inv)))
        .collect();
    let dim = view.dim();
    let mut ambient = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut m = Matrix::zeros(e, dim, dim);
            m.set(i, j, e.one());
            ambient.push(m);
        }
    }
    let rep = idealisers_in(e, &ambient, &set);
    Ok(NucleiDims {
        left: rep.left.len(),
        middle: rep.right.len(),
        right: rep.centraliser.len(),
        center: rep.centre.len(),
    })
}

/// `[Fix(φ) : F']` for an automorphism of `K`.
pub fn fix_dim_over_fp<P: PrimeField>(
    spec: &CodeSpec<P>,
    phi: &crate::field::FieldAuto<P>,
) -> usize {
    let tower = spec.ring().tower();
    Subfield::fixed_by(spec.e(), &[phi]).dim() / tower.fp_field().dim()
}

/// Idealiser dimensions predicted over `F'` for `K`-coefficients with
/// `deg h = mn`, `n > 1`, `lm > 2`, `l ≤ n/2`; `None` outside those hypotheses.
pub fn predicted_idealisers<P: PrimeField>(spec: &CodeSpec<P>) -> Option<[usize; 4]> {
    let r = spec.ring();
    let tower = r.tower();
    let ring = r.ring();
    let n = tower.n();
    if !ring.is_field()
        || !spec.report().is_full_degree
        || n < 2
        || spec.lm() <= 2
        || 2 * spec.l() > n
    {
        return None;
    }
    let k_dim = spec.e().degree() / tower.fp_field().dim();
    let ehat = spec.ehat_over_fp();
    if ring.is_zero(spec.nu()) {
        return Some([k_dim, k_dim, ehat, spec.f_over_fp()]);
    }
    let rho = spec.rho();
    let mixed = ring.compose(
        &ring.inverse(rho),
        &ring.auto_pow(tower.sigma(), spec.lm() as i64),
    );
    Some([
        fix_dim_over_fp(spec, rho.on_e()),
        fix_dim_over_fp(spec, mixed.on_e()),
        ehat,
        1,
    ])
}

/// Nuclei dimensions predicted for a division algebra with `K`-coefficients,
/// `deg h = mn`, `n > 1`, `m > 2`, `ν ≠ 0`.
pub fn predicted_nuclei<P: PrimeField>(spec: &CodeSpec<P>) -> Option<NucleiDims> {
    let r = spec.ring();
    let tower = r.tower();
    let ring = r.ring();
    if spec.l() != 1
        || !ring.is_field()
        || !spec.report().is_full_degree
        || tower.n() < 2
        || spec.m() <= 2
        || ring.is_zero(spec.nu())
    {
        return None;
    }
    let rho = spec.rho();
    let mixed = ring.compose(
        &ring.inverse(rho),
        &ring.auto_pow(tower.sigma(), spec.m() as i64),
    );
    Some(NucleiDims {
        left: fix_dim_over_fp(spec, rho.on_e()),
        middle: fix_dim_over_fp(spec, mixed.on_e()),
        right: spec.f_over_fp() * spec.m(),
        center: 1,
    })
}

/// Monic right divisors of `h` of degree `deg` with coefficients in finite `D`, by
/// exhaustive search over `|D|^deg` candidates.
pub fn monic_divisors_of_h<P: PrimeField>(
    spec: &CodeSpec<P>,
    deg: usize,
    budget: u128,
) -> Result<Vec<SkewPoly<P>>> {
    let r = spec.ring();
    let ring = r.ring();
    let elems = ring.elements().ok_or(Error::InfiniteField)?;
    let q = elems.len() as u128;
    let total = q.checked_pow(deg as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded {
            visited: budget,
            total,
        });
    }
    let h = &spec.report().h;
    let mut out = Vec::new();
    for mut i in 0..total {
        let mut c: Vec<_> = (0..deg)
            .map(|_| {
                let x = elems[(i % q) as usize].clone();
                i /= q;
                x
            })
            .collect();
        c.push(ring.one());
        let g = r.poly(c);
        if r.mod_r(h, &g)?.is_zero() {
            out.push(g);
        }
    }
    Ok(out)
}
