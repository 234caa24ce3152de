//! The set `A`, the right `E_f`-module `V_f = R/Rf` with a chosen basis, and
//! the spread set of matrices `M_a` over `E_ĥ`.

use crate::central::{mclm, EHat, MclmReport};
use crate::error::{Error, Result};
use crate::field::{ExtField, PrimeField, FE};
use crate::linalg::{EchelonBasis, FieldOps, LinearSolver, Matrix};
use crate::ring::{DAuto, DElem};
use crate::skew::{SkewPoly, SkewRing};
use crate::tower::Level;

/// Parameters `(n, m, l, ν, ρ, f)`; `n`, `σ`, `ρ` and `u` come from the tower.
#[derive(Clone, Debug)]
pub struct CodeSpec<P: PrimeField> {
    ring: SkewRing<P>,
    f: SkewPoly<P>,
    l: usize,
    nu: DElem<P>,
    report: MclmReport<P>,
    similar_in_e: bool,
}

impl<P: PrimeField> CodeSpec<P> {
    /// `l = 0` gives the zero code and is accepted so that degenerate inputs can be reported.
    pub fn new(ring: SkewRing<P>, f: &SkewPoly<P>, l: usize, nu: DElem<P>) -> Result<Self> {
        let report = mclm(&ring, f)?;
        let k = report.k.ok_or_else(|| {
            Error::PreconditionFailed(format!(
                "d m / deg ĥ is not an integer (deg ĥ = {})",
                report.hhat_degree()
            ))
        })?;
        if l >= k {
            return Err(Error::PreconditionFailed(format!(
                "l = {l} must be below k = {k}"
            )));
        }
        Ok(CodeSpec {
            f: report.f.clone(),
            ring,
            l,
            nu,
            report,
            similar_in_e: false,
        })
    }

    /// Declares that every monic polynomial similar to `f` has coefficients in `E`.
    pub fn with_similar_in_e(mut self, yes: bool) -> Self {
        self.similar_in_e = yes;
        self
    }

    pub fn similar_in_e(&self) -> bool {
        self.similar_in_e
    }

    pub fn ring(&self) -> &SkewRing<P> {
        &self.ring
    }

    pub fn f(&self) -> &SkewPoly<P> {
        &self.f
    }

    pub fn m(&self) -> usize {
        self.report.m
    }

    pub fn n(&self) -> usize {
        self.ring.tower().n()
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn lm(&self) -> usize {
        self.l * self.report.m
    }

    pub fn k(&self) -> usize {
        self.report.k.expect("checked at construction")
    }

    pub fn s(&self) -> usize {
        self.report.s.expect("checked at construction")
    }

    pub fn nu(&self) -> &DElem<P> {
        &self.nu
    }

    pub fn rho(&self) -> &DAuto<P> {
        self.ring.tower().rho()
    }

    pub fn report(&self) -> &MclmReport<P> {
        &self.report
    }

    pub fn e(&self) -> &ExtField<P> {
        self.ring.ring().e()
    }

    /// `[F : F']`.
    pub fn f_over_fp(&self) -> usize {
        self.ring.tower().f_over_fp()
    }

    /// `dim_{F'} A = l m d [E:F']`.
    pub fn dim_fp(&self) -> usize {
        self.lm() * self.ring.tower().fp_basis_of_d().len()
    }

    /// `[E_ĥ : F']`.
    pub fn ehat_over_fp(&self) -> usize {
        self.report.hhat_degree() * self.f_over_fp()
    }

    /// `d_0 + … + d_{lm-1} t^{lm-1} + ν ρ(d_0) t^{lm}`.
    pub fn build_a_element(&self, d: &[DElem<P>]) -> Result<SkewPoly<P>> {
        if d.len() != self.lm() {
            return Err(Error::LengthMismatch {
                expected: self.lm(),
                got: d.len(),
            });
        }
        let ring = self.ring.ring();
        let mut coeffs = d.to_vec();
        if let Some(d0) = d.first() {
            coeffs.push(ring.mul(&self.nu, &ring.apply(self.rho(), d0)));
        }
        Ok(self.ring.poly(coeffs))
    }

    /// `F'`-basis of `A`: one basis element of `D` in one position, position-major.
    pub fn generators(&self) -> Vec<SkewPoly<P>> {
        let ring = self.ring.ring();
        let basis = self.ring.tower().fp_basis_of_d();
        let mut out = Vec::new();
        for pos in 0..self.lm() {
            for b in &basis {
                let mut d = vec![ring.zero(); self.lm()];
                d[pos] = b.clone();
                out.push(self.build_a_element(&d).expect("length lm"));
            }
        }
        out
    }

    /// `|F'|^{dim A}` when `F'` is finite.
    pub fn codeword_count(&self) -> Option<u128> {
        let q = self.ring.tower().fp_field().order()?;
        q.checked_pow(self.dim_fp() as u32)
    }

    /// The `F'`-coordinates of the codeword with the given index (first coordinate least significant).
    pub fn coords_of_index(&self, mut index: u128) -> Option<Vec<FE<P>>> {
        let elems = self.ring.tower().fp_field().elements()?;
        let q = elems.len() as u128;
        Some(
            (0..self.dim_fp())
                .map(|_| {
                    let c = elems[(index % q) as usize].clone();
                    index /= q;
                    c
                })
                .collect(),
        )
    }

    pub fn combine(&self, gens: &[SkewPoly<P>], coords: &[FE<P>]) -> SkewPoly<P> {
        let ring = self.ring.ring();
        gens.iter()
            .zip(coords)
            .fold(self.ring.zero(), |acc, (g, c)| {
                if ring.e().is_zero(c) {
                    acc
                } else {
                    self.ring
                        .add(&acc, &self.ring.scale_left(&ring.embed(c), g))
                }
            })
    }

    pub fn ehat(&self) -> EHat<P> {
        EHat::new(self.e(), &self.report.hhat)
    }
}

/// A basis `b_1, …, b_k` of `V_f` over `E_f ≅ E_ĥ` with coordinate extraction.
#[derive(Clone, Debug)]
pub struct VfBasis<P: PrimeField> {
    ring: SkewRing<P>,
    f: SkewPoly<P>,
    residues: Vec<SkewPoly<P>>,
    deg_hat: usize,
    solver: LinearSolver<ExtField<P>>,
}

impl<P: PrimeField> VfBasis<P> {
    /// Greedy over `t^j` (`j < m`), then `β t^j` for an `F`-basis `β` of `D`.
    pub fn new(spec: &CodeSpec<P>) -> Result<Self> {
        if spec.s() != 1 {
            return Err(Error::SNotOne { s: spec.s() });
        }
        let r = spec.ring();
        let ring = r.ring();
        let e = ring.e();
        let f = spec.f().clone();
        let m = spec.m();
        let deg_hat = spec.report().hhat_degree();
        let x = r.x_elem();
        let mut candidates: Vec<SkewPoly<P>> = (0..m).map(|j| r.monomial(&ring.one(), j)).collect();
        for j in 0..m {
            for b in r.tower().f_basis_of_d() {
                candidates.push(r.monomial(&b, j));
            }
        }
        let mut span = EchelonBasis::new(e);
        let mut residues = Vec::new();
        let mut cols = Vec::new();
        for c in candidates {
            if residues.len() == spec.k() {
                break;
            }
            let v = residue_coords(r, m, &c);
            if span.contains(&v) {
                continue;
            }
            let mut p = c.clone();
            for i in 0..deg_hat {
                if i > 0 {
                    p = r.mod_r(&r.mul(&x, &p), &f)?;
                }
                let w = residue_coords(r, m, &p);
                span.insert(&w);
                cols.push(w);
            }
            residues.push(c);
        }
        if residues.len() != spec.k() {
            return Err(Error::InvalidConstruction(
                "no E_f-basis of V_f found".into(),
            ));
        }
        let rows = cols[0].len();
        let solver = LinearSolver::new(e, &Matrix::from_cols(cols, rows))
            .ok_or_else(|| Error::InvalidConstruction("V_f basis is dependent".into()))?;
        Ok(VfBasis {
            ring: r.clone(),
            f,
            residues,
            deg_hat,
            solver,
        })
    }

    pub fn residues(&self) -> &[SkewPoly<P>] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// `E_ĥ`-coordinates of `p + Rf`.
    pub fn coords(&self, p: &SkewPoly<P>) -> Result<Vec<Vec<FE<P>>>> {
        let p = self.ring.mod_r(p, &self.f)?;
        let v = residue_coords(&self.ring, self.f.deg().unwrap(), &p);
        let sol = self.solver.solve(&v).expect("basis spans V_f");
        Ok(sol.chunks(self.deg_hat).map(|c| c.to_vec()).collect())
    }

    /// `Σ b_c ẑ_c(u^{-1} t^n) mod_r f`.
    pub fn element(&self, z: &[Vec<FE<P>>]) -> Result<SkewPoly<P>> {
        let r = &self.ring;
        let mut acc = r.zero();
        for (b, zc) in self.residues.iter().zip(z) {
            acc = r.add(&acc, &r.mul(&r.from_hat(zc), b));
        }
        r.mod_r(&acc, &self.f)
    }
}

fn residue_coords<P: PrimeField>(r: &SkewRing<P>, m: usize, p: &SkewPoly<P>) -> Vec<FE<P>> {
    let z = r.ring().zero();
    (0..m)
        .flat_map(|j| r.tower().f_coords(p.coeff(j).unwrap_or(&z)))
        .collect()
}

/// Matrix of `p + Rf ↦ a p + Rf` in the basis; no degree restriction on `a`.
pub fn left_mult_matrix<P: PrimeField>(
    vf: &VfBasis<P>,
    a: &SkewPoly<P>,
) -> Result<Matrix<Vec<FE<P>>>> {
    let r = &vf.ring;
    let cols = vf
        .residues
        .iter()
        .map(|b| vf.coords(&r.mul(a, b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(cols, vf.len()))
}

/// The generator matrices of the spread set and the data to evaluate it.
#[derive(Clone, Debug)]
pub struct SpreadSet<P: PrimeField> {
    spec: CodeSpec<P>,
    vf: VfBasis<P>,
    ehat: EHat<P>,
    generators: Vec<SkewPoly<P>>,
    matrices: Vec<Matrix<Vec<FE<P>>>>,
}

impl<P: PrimeField> SpreadSet<P> {
    pub fn new(spec: &CodeSpec<P>) -> Result<Self> {
        let vf = VfBasis::new(spec)?;
        let generators = spec.generators();
        let matrices = generators
            .iter()
            .map(|g| left_mult_matrix(&vf, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpreadSet {
            spec: spec.clone(),
            ehat: spec.ehat(),
            vf,
            generators,
            matrices,
        })
    }

    pub fn spec(&self) -> &CodeSpec<P> {
        &self.spec
    }

    pub fn vf(&self) -> &VfBasis<P> {
        &self.vf
    }

    pub fn ehat(&self) -> &EHat<P> {
        &self.ehat
    }

    pub fn generators(&self) -> &[SkewPoly<P>] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> &[Matrix<Vec<FE<P>>>] {
        &self.matrices
    }

    pub fn k(&self) -> usize {
        self.vf.len()
    }

    /// `M_a` for `deg a ≤ l m`.
    pub fn matrix_of(&self, a: &SkewPoly<P>) -> Result<Matrix<Vec<FE<P>>>> {
        if let Some(da) = a.deg() {
            if da > self.spec.lm() {
                return Err(Error::DegreeTooHigh {
                    degree: da,
                    max: self.spec.lm(),
                });
            }
        }
        left_mult_matrix(&self.vf, a)
    }

    /// `Σ c_g M_g` for `F'`-coordinates `c`.
    pub fn matrix_of_coords(&self, coords: &[FE<P>]) -> Matrix<Vec<FE<P>>> {
        let k = self.k();
        let eh = &self.ehat;
        let mut out = Matrix::zeros(eh, k, k);
        for (mg, c) in self.matrices.iter().zip(coords) {
            if eh.ambient().is_zero(c) {
                continue;
            }
            let ce = eh.embed(c);
            for i in 0..k {
                for j in 0..k {
                    let v = eh.add(out.get(i, j), &eh.mul(&ce, mg.get(i, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn codeword(&self, index: u128) -> Option<(SkewPoly<P>, Matrix<Vec<FE<P>>>)> {
        let c = self.spec.coords_of_index(index)?;
        Some((
            self.spec.combine(&self.generators, &c),
            self.matrix_of_coords(&c),
        ))
    }

    /// All codewords in index order; fails without output beyond `budget`.
    pub fn enumerate(&self, budget: u128) -> Result<Vec<(SkewPoly<P>, Matrix<Vec<FE<P>>>)>> {
        let total = self.spec.codeword_count().ok_or(Error::InfiniteField)?;
        if total > budget {
            return Err(Error::BudgetExceeded {
                visited: budget,
                total,
            });
        }
        Ok((0..total)
            .map(|i| self.codeword(i).expect("finite"))
            .collect())
    }

    /// Text form of the generator matrices.
    pub fn to_code_file(&self, header: Vec<(String, String)>) -> CodeFile<P> {
        CodeFile {
            header,
            k: self.k(),
            matrices: self.matrices.clone(),
        }
    }
}

/// Entry-wise formula for `M_a` when `f = t^n - θ`, `m = n`, `l = 1`, with
/// entries in `K` under `x ↦ θ`.
pub fn tn_theta_matrix<P: PrimeField>(
    r: &SkewRing<P>,
    theta: &FE<P>,
    a: &[FE<P>],
    nu: &FE<P>,
) -> Result<Matrix<FE<P>>> {
    let tower = r.tower();
    let n = tower.n();
    if !tower.ring().is_field() {
        return Err(Error::ShapeMismatch("field coefficients required".into()));
    }
    if a.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "expected {n} coefficients, got {}",
            a.len()
        )));
    }
    let e = tower.ring().e();
    let rho = tower.rho().on_e();
    let top = e.mul(nu, &rho.apply(&a[0]));
    let mut m = Matrix::zeros(e, n, n);
    for i in 0..n {
        let s = |z: &FE<P>| tower.sigma_e_pow(-(i as i64), z);
        for j in 0..n {
            let v = if i == j {
                e.add(&s(&a[0]), &e.mul(&s(&top), theta))
            } else if i > j {
                s(&a[i - j])
            } else {
                e.mul(&s(&a[n + i - j]), theta)
            };
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// `θ` when `spec` has the shape required by [`tn_theta_matrix`].
pub fn tn_theta_parameter<P: PrimeField>(spec: &CodeSpec<P>) -> Option<FE<P>> {
    let r = spec.ring();
    let tower = r.tower();
    let ring = tower.ring();
    let n = tower.n();
    if !ring.is_field() || !tower.u_is_one() || spec.m() != n || spec.l() != 1 {
        return None;
    }
    let c = spec.f().coeffs();
    if c[1..n].iter().any(|x| !ring.is_zero(x)) || spec.report().hhat_degree() != n {
        return None;
    }
    let theta = ring.e().neg(&c[0][0]);
    tower.contains(Level::E, &theta).then_some(theta)
}

/// `Σ v_i θ^i`: an element of `E_ĥ` read in `E` through `x ↦ θ`.
pub fn ehat_at<P: PrimeField>(e: &ExtField<P>, v: &[FE<P>], theta: &FE<P>) -> FE<P> {
    v.iter()
        .rev()
        .fold(e.zero(), |acc, c| e.add(&e.mul(&acc, theta), c))
}

/// Line-oriented text form of a spread set: free header lines, then `k`,
/// then one `matrix <id>` block of `k` rows per generator.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeFile<P: PrimeField> {
    pub header: Vec<(String, String)>,
    pub k: usize,
    pub matrices: Vec<Matrix<Vec<FE<P>>>>,
}

const MAGIC: &str = "# skewcodes spread set";

impl<P: PrimeField> CodeFile<P> {
    pub fn to_text(&self, ehat: &EHat<P>) -> String {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        for (k, v) in &self.header {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out.push_str(&format!("k = {}\n", self.k));
        out.push_str(&format!("matrices = {}\n", self.matrices.len()));
        for (id, m) in self.matrices.iter().enumerate() {
            out.push_str(&format!("matrix {id}\n"));
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|x| ehat.format(x)).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    /// Header lines only, so that the caller can rebuild `E_ĥ` before [`CodeFile::parse`].
    pub fn read_header(text: &str) -> Result<Vec<(String, String)>> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l == MAGIC => {}
            _ => return Err(Error::Parse("line 1: missing code file marker".into())),
        }
        let mut header = Vec::new();
        for (no, line) in lines {
            if line.starts_with("matrix ") {
                break;
            }
            let (k, v) = line
                .split_once(" = ")
                .ok_or_else(|| Error::Parse(format!("line {}: expected 'key = value'", no + 1)))?;
            header.push((k.to_string(), v.to_string()));
        }
        Ok(header)
    }

    pub fn parse(text: &str, ehat: &EHat<P>) -> Result<Self> {
        let mut header = Self::read_header(text)?;
        let take = |header: &mut Vec<(String, String)>, key: &str| -> Result<usize> {
            let pos = header
                .iter()
                .position(|(k, _)| k == key)
                .ok_or_else(|| Error::Parse(format!("missing header key '{key}'")))?;
            let (_, v) = header.remove(pos);
            v.parse()
                .map_err(|_| Error::Parse(format!("invalid value for '{key}': '{v}'")))
        };
        let k = take(&mut header, "k")?;
        let count = take(&mut header, "matrices")?;
        let body: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .skip_while(|(_, l)| !l.starts_with("matrix "))
            .collect();
        if body.len() != count * (k + 1) {
            return Err(Error::Parse(format!(
                "expected {count} matrices of {k} rows, found {} body lines",
                body.len()
            )));
        }
        let mut matrices = Vec::with_capacity(count);
        for (id, block) in body.chunks(k + 1).enumerate() {
            let (no, head) = block[0];
            if head != format!("matrix {id}") {
                return Err(Error::Parse(format!(
                    "line {}: expected 'matrix {id}'",
                    no + 1
                )));
            }
            let mut rows = Vec::with_capacity(k);
            for &(no, line) in &block[1..] {
                let row = line
                    .split(' ')
                    .map(|tok| ehat.parse(tok))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
                if row.len() != k {
                    return Err(Error::Parse(format!(
                        "line {}: expected {k} entries",
                        no + 1
                    )));
                }
                rows.push(row);
            }
            matrices.push(Matrix::from_rows(rows));
        }
        Ok(CodeFile {
            header,
            k,
            matrices,
        })
    }
}
