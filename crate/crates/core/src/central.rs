//! The center of `R`: minimal central left multiples, `E_ĥ`, reduced norms,
//! irreducibility and similarity.

use crate::error::{Error, Result};
use crate::field::irreducible::{ben_or, irreducible_over_q, Tri};
use crate::field::{ExtField, PrimeField, FE};
use crate::linalg::{EchelonBasis, FieldOps, LinearSolver, Matrix};
use crate::skew::{SkewPoly, SkewRing};
use crate::tower::Level;
use crate::upoly;

/// Kronecker budget for irreducibility of `ĥ` over `Q`.
const HAT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug)]
pub struct MclmReport<P: PrimeField> {
    /// Monic input.
    pub f: SkewPoly<P>,
    /// `ĥ(u^{-1} t^n)`.
    pub h: SkewPoly<P>,
    /// Monic over `F`, constant first; entries are elements of `E` lying in `F`.
    pub hhat: Vec<FE<P>>,
    pub m: usize,
    /// `d n / s`, when integral.
    pub k: Option<usize>,
    /// `d m / deg ĥ`, when integral.
    pub s: Option<usize>,
    pub is_full_degree: bool,
}

impl<P: PrimeField> MclmReport<P> {
    pub fn hhat_degree(&self) -> usize {
        self.hhat.len() - 1
    }

    pub fn h0(&self) -> &FE<P> {
        &self.hhat[0]
    }
}

/// Krylov construction of the minimal central left multiple.
pub fn mclm<P: PrimeField>(r: &SkewRing<P>, f: &SkewPoly<P>) -> Result<MclmReport<P>> {
    r.require_no_delta()?;
    let m = match f.deg() {
        Some(m) if m >= 1 => m,
        _ => return Err(Error::DegreeOutOfRange("mclm needs deg f >= 1".into())),
    };
    let ring = r.ring();
    if ring.is_zero(&f.coeffs()[0]) {
        return Err(Error::NotCoprimeWithT);
    }
    let f = r.monic(f);
    let tower = r.tower();
    let e = ring.e();
    let x = r.x_elem();
    let coords = |p: &SkewPoly<P>| -> Vec<FE<P>> {
        let z = ring.zero();
        (0..m)
            .flat_map(|j| tower.f_coords(p.coeff(j).unwrap_or(&z)))
            .collect()
    };
    let mut span = EchelonBasis::new(e);
    let mut rows: Vec<Vec<FE<P>>> = Vec::new();
    let mut cur = r.one();
    let hhat = loop {
        let v = coords(&cur);
        if span.contains(&v) {
            let solver = LinearSolver::new(e, &Matrix::from_cols(rows.clone(), v.len()))
                .expect("previous residues are independent");
            let c = solver.solve(&v).expect("in span");
            let mut hat: Vec<FE<P>> = c.iter().map(|ci| e.neg(ci)).collect();
            hat.push(e.one());
            break hat;
        }
        span.insert(&v);
        rows.push(v);
        cur = r.mod_r(&r.mul(&x, &cur), &f)?;
    };
    debug_assert!(hhat.iter().all(|c| tower.contains(Level::F, c)));
    let h = r.from_hat(&hhat);
    let dh = hhat.len() - 1;
    let d = tower.d();
    let s = (d * m).is_multiple_of(dh).then(|| d * m / dh);
    let k = s.and_then(|s| (d * tower.n()).is_multiple_of(s).then(|| d * tower.n() / s));
    Ok(MclmReport {
        is_full_degree: dh == d * m,
        f,
        h,
        hhat,
        m,
        k,
        s,
    })
}

/// Irreducibility of `ĥ` over `F`.
pub fn hat_irreducible<P: PrimeField>(r: &SkewRing<P>, hhat: &[FE<P>]) -> Tri {
    let tower = r.tower();
    let e = tower.ring().e();
    match upoly::degree(hhat) {
        None | Some(0) => return Tri::No,
        Some(1) => return Tri::Yes,
        _ => {}
    }
    let fsub = tower.f_field();
    if let Some(q) = fsub.order() {
        return if ben_or(e, hhat, q) {
            Tri::Yes
        } else {
            Tri::No
        };
    }
    if fsub.dim() == 1 {
        let base = e.base();
        let coeffs: Option<Vec<_>> = hhat
            .iter()
            .map(|c| e.as_base(c).and_then(|b| base.to_ratio(&b)))
            .collect();
        if let Some(coeffs) = coeffs {
            return irreducible_over_q(&coeffs, HAT_BUDGET);
        }
    }
    Tri::Unknown
}

/// The field `E_ĥ = F[x]/(ĥ)`; elements are `F`-coordinate vectors of length `deg ĥ`.
#[derive(Clone, Debug)]
pub struct EHat<P: PrimeField> {
    e: ExtField<P>,
    hhat: Vec<FE<P>>,
}

impl<P: PrimeField> EHat<P> {
    /// `hhat` must be monic and irreducible over `F`; this is not rechecked.
    pub fn new(e: &ExtField<P>, hhat: &[FE<P>]) -> Self {
        EHat {
            e: e.clone(),
            hhat: upoly::monic(e, hhat),
        }
    }

    pub fn degree(&self) -> usize {
        self.hhat.len() - 1
    }

    pub fn ambient(&self) -> &ExtField<P> {
        &self.e
    }

    pub fn modulus(&self) -> &[FE<P>] {
        &self.hhat
    }

    fn pad(&self, mut v: Vec<FE<P>>) -> Vec<FE<P>> {
        v.resize(self.degree(), self.e.zero());
        v
    }

    /// Reduces a polynomial over `F` modulo `ĥ`.
    pub fn reduce(&self, p: &[FE<P>]) -> Vec<FE<P>> {
        self.pad(upoly::rem(&self.e, p, &self.hhat))
    }

    pub fn embed(&self, c: &FE<P>) -> Vec<FE<P>> {
        self.reduce(std::slice::from_ref(c))
    }

    /// The class of `x`.
    pub fn x(&self) -> Vec<FE<P>> {
        self.reduce(&[self.e.zero(), self.e.one()])
    }

    /// `[c0,c1,…]`, each coordinate in the field encoding.
    pub fn format(&self, v: &[FE<P>]) -> String {
        let parts: Vec<String> = v.iter().map(|c| self.e.format(c)).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn parse(&self, s: &str) -> Result<Vec<FE<P>>> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected '[…]' for an E_h element, got '{t}'")))?;
        let parts = crate::text::split_top_level(inner, ',');
        if parts.len() != self.degree() {
            return Err(Error::LengthMismatch {
                expected: self.degree(),
                got: parts.len(),
            });
        }
        parts.iter().map(|p| self.e.parse(p)).collect()
    }
}

impl<P: PrimeField> FieldOps for EHat<P> {
    type Elem = Vec<FE<P>>;

    fn zero(&self) -> Self::Elem {
        vec![self.e.zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.e.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.e.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.e.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.e.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.e.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.pad(upoly::mulmod(&self.e, a, b, &self.hhat))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s, _) = upoly::ext_gcd(&self.e, a, &self.hhat);
        (upoly::degree(&g) == Some(0)).then(|| self.reduce(&s))
    }

    fn from_int(&self, v: i64) -> Self::Elem {
        self.embed(&self.e.from_int(v))
    }
}

/// Reduced norm as a polynomial over `F` in `x = u^{-1} t^n`: the determinant
/// of left multiplication by `f` on `R` viewed as a right `E[x]`-module with
/// basis `e^i t^j` (`i < d`, `j < n`).
pub fn reduced_norm<P: PrimeField>(r: &SkewRing<P>, f: &SkewPoly<P>) -> Result<Vec<FE<P>>> {
    r.require_no_delta()?;
    let tower = r.tower();
    let ring = tower.ring();
    let e = ring.e();
    let (d, n) = (ring.d(), tower.n());
    let u_e = ring.in_e(tower.u()).expect("u lies in E");
    let size = d * n;
    let mut mat: Vec<Vec<Vec<FE<P>>>> = vec![vec![Vec::new(); size]; size];
    let mut e_pow = ring.one();
    for i in 0..d {
        for (k, ak) in f.coeffs().iter().enumerate() {
            if ring.is_zero(ak) {
                continue;
            }
            let w = ring.mul(ak, &tower.sigma_pow(k as i64, &e_pow));
            for j in 0..n {
                let (q, rr) = ((k + j) / n, (k + j) % n);
                let col = i * n + j;
                for (ip, wi) in w.iter().enumerate() {
                    if e.is_zero(wi) {
                        continue;
                    }
                    // w_{i'} e^{i'} t^{nq+r} = e^{i'} t^r σ^{-r}(γ^{-i'}(w_{i'})) u^q x^q
                    let z = ring.gamma_pow(-(ip as i64)).apply(wi);
                    let z = tower.sigma_e_pow(-(rr as i64), &z);
                    let c = e.mul(&z, &e.pow(&u_e, q as u64));
                    let mut mono = vec![e.zero(); q + 1];
                    mono[q] = c;
                    let row = ip * n + rr;
                    mat[row][col] = upoly::add(e, &mat[row][col], &mono);
                }
            }
        }
        e_pow = ring.mul(&e_pow, &ring.e_elem());
    }
    let det = poly_det(e, mat);
    if !det.iter().all(|c| tower.contains(Level::F, c)) {
        return Err(Error::PreconditionFailed("reduced norm left F[x]".into()));
    }
    Ok(det)
}

/// Fraction-free (Bareiss) determinant over `E[x]`.
fn poly_det<P: PrimeField>(e: &ExtField<P>, mut m: Vec<Vec<Vec<FE<P>>>>) -> Vec<FE<P>> {
    let n = m.len();
    let mut negate = false;
    let mut prev = vec![e.one()];
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_empty()) else {
            return Vec::new();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = upoly::sub(
                    e,
                    &upoly::mul(e, &m[i][j], &m[k][k]),
                    &upoly::mul(e, &m[i][k], &m[k][j]),
                );
                let (q, rem) = upoly::divrem(e, &num, &prev);
                debug_assert!(rem.is_empty());
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        upoly::sub(e, &[], &det)
    } else {
        det
    }
}

/// `(-1)^{d r (n-1)} N_{E/F}(a_m) N_{E/C}(u)^m`, the leading coefficient of the
/// reduced norm, with `r = m mod n`.
pub fn norm_leading_constant<P: PrimeField>(r: &SkewRing<P>, f: &SkewPoly<P>) -> Result<FE<P>> {
    let tower = r.tower();
    let ring = tower.ring();
    let e = ring.e();
    let m = f.deg().ok_or(Error::ZeroOperand)?;
    let am = ring.in_e(f.lead().unwrap()).ok_or(Error::NotInE)?;
    let u = ring.in_e(tower.u()).ok_or(Error::NotInE)?;
    let nu = tower.norm(&u, Level::E, Level::C)?;
    let mut c = e.mul(&tower.norm(&am, Level::E, Level::F)?, &e.pow(&nu, m as u64));
    if (tower.d() * (m % tower.n()) * (tower.n() - 1)) % 2 == 1 {
        c = e.neg(&c);
    }
    Ok(c)
}

/// `N_{E/F}(a_0) = (-1)^{dr(n-1)} N_{E/F}(a_m) N_{E/C}(u)^m h_0`.
pub fn norm_constant_check<P: PrimeField>(r: &SkewRing<P>, report: &MclmReport<P>) -> Result<bool> {
    if !report.is_full_degree {
        return Err(Error::PreconditionFailed(format!(
            "deg h = {} is below d m n = {}",
            report.h.deg().unwrap_or(0),
            r.tower().d() * report.m * r.tower().n()
        )));
    }
    let tower = r.tower();
    let ring = tower.ring();
    let e = ring.e();
    let a0 = ring.in_e(&report.f.coeffs()[0]).ok_or(Error::NotInE)?;
    let lhs = tower.norm(&a0, Level::E, Level::F)?;
    let rhs = e.mul(&norm_leading_constant(r, &report.f)?, report.h0());
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility<P: PrimeField> {
    Irreducible,
    /// A monic proper right divisor, when one was found.
    Reducible(Option<SkewPoly<P>>),
    Unknown,
}

/// Fast path via `ĥ`, then an exhaustive search for monic right divisors of
/// degree `1..m-1` over finite `D`, visiting at most `budget` candidates.
pub fn is_irreducible<P: PrimeField>(
    r: &SkewRing<P>,
    report: &MclmReport<P>,
    budget: u128,
) -> Result<Irreducibility<P>> {
    r.require_no_delta()?;
    let f = &report.f;
    if report.m == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let hat = hat_irreducible(r, &report.hhat);
    if report.is_full_degree && hat == Tri::Yes {
        return Ok(Irreducibility::Irreducible);
    }
    let ring = r.ring();
    let scan = ring.order().and_then(|q| {
        let mut total: u128 = 0;
        for j in 1..report.m {
            total = total.checked_add(q.checked_pow(j as u32)?)?;
        }
        (total <= budget).then_some(())
    });
    if scan.is_some() {
        let elems = ring.elements().expect("finite");
        for j in 1..report.m {
            let mut idx = vec![0usize; j];
            loop {
                let mut coeffs: Vec<_> = idx.iter().map(|&i| elems[i].clone()).collect();
                coeffs.push(ring.one());
                let g = r.poly(coeffs);
                if r.mod_r(f, &g)?.is_zero() {
                    return Ok(Irreducibility::Reducible(Some(g)));
                }
                if !odometer(&mut idx, elems.len()) {
                    break;
                }
            }
        }
        return Ok(Irreducibility::Irreducible);
    }
    // f irreducible forces ĥ irreducible.
    if hat == Tri::No {
        return Ok(Irreducibility::Reducible(None));
    }
    Ok(Irreducibility::Unknown)
}

fn odometer(idx: &mut [usize], radix: usize) -> bool {
    for d in idx.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Similarity {
    Similar,
    NotSimilar,
    Unknown,
}

/// For irreducible inputs: similar iff equal degree and equal mclm.
pub fn are_similar<P: PrimeField>(
    r: &SkewRing<P>,
    f: &SkewPoly<P>,
    g: &SkewPoly<P>,
    budget: u128,
) -> Result<Similarity> {
    let rf = mclm(r, f)?;
    let rg = mclm(r, g)?;
    let mut unknown = false;
    for rep in [&rf, &rg] {
        match is_irreducible(r, rep, budget)? {
            Irreducibility::Irreducible => {}
            Irreducibility::Reducible(_) => return Err(Error::NotIrreducible),
            Irreducibility::Unknown => unknown = true,
        }
    }
    if unknown {
        return Ok(Similarity::Unknown);
    }
    Ok(if rf.m == rg.m && rf.hhat == rg.hhat {
        Similarity::Similar
    } else {
        Similarity::NotSimilar
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldAuto, Fp};
    use crate::ring::DivAlg;
    use crate::tower::Tower;

    fn f4() -> SkewRing<Fp> {
        let f4 = ExtField::new(Fp::new(2), vec![1, 1, 1]).unwrap();
        let ring = DivAlg::field(f4.clone());
        let sigma = ring
            .auto(FieldAuto::frobenius(&f4, 1).unwrap(), f4.one())
            .unwrap();
        SkewRing::new(Tower::new(ring.clone(), sigma, None, ring.identity_auto()).unwrap())
    }

    fn fe(r: &SkewRing<Fp>, s: &str) -> FE<Fp> {
        r.ring().e().parse(s).unwrap()
    }

    #[test]
    fn mclm_of_t2_plus_theta() {
        let r = f4();
        let f = r.parse("2,0,1").unwrap();
        let rep = mclm(&r, &f).unwrap();
        assert_eq!(rep.hhat, vec![fe(&r, "1"), fe(&r, "1"), fe(&r, "1")]);
        assert_eq!(rep.h, r.parse("1,0,1,0,1").unwrap());
        assert_eq!((rep.k, rep.s, rep.is_full_degree), (Some(2), Some(1), true));
        assert!(norm_constant_check(&r, &rep).unwrap());
        assert_eq!(reduced_norm(&r, &f).unwrap(), rep.hhat);
    }

    #[test]
    fn linear_f_gives_degree_one_hat() {
        let r = f4();
        for c in ["1", "2", "3"] {
            let f = r.parse(&format!("{c},1")).unwrap();
            let rep = mclm(&r, &f).unwrap();
            let cc = fe(&r, c);
            let e = r.ring().e();
            let prod = e.mul(&cc, &r.tower().sigma_e_pow(1, &cc));
            assert_eq!(
                rep.h,
                r.poly(vec![vec![prod], r.ring().zero(), r.ring().one()])
            );
            assert!(r.is_central(&rep.h));
        }
    }

    #[test]
    fn zero_constant_rejected() {
        let r = f4();
        assert!(matches!(
            mclm(&r, &r.parse("0,1,1").unwrap()),
            Err(Error::NotCoprimeWithT)
        ));
    }

    #[test]
    fn irreducibility_verdicts() {
        let r = f4();
        let rep = mclm(&r, &r.parse("2,0,1").unwrap()).unwrap();
        assert_eq!(
            is_irreducible(&r, &rep, 1000).unwrap(),
            Irreducibility::Irreducible
        );
        let rep = mclm(&r, &r.parse("1,0,1").unwrap()).unwrap();
        match is_irreducible(&r, &rep, 1000).unwrap() {
            Irreducibility::Reducible(Some(g)) => {
                assert!(r.mod_r(&r.parse("1,0,1").unwrap(), &g).unwrap().is_zero())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn similarity() {
        let r = f4();
        let a = r.parse("2,0,1").unwrap();
        let b = r.parse("3,0,1").unwrap();
        assert_eq!(are_similar(&r, &a, &b, 1000).unwrap(), Similarity::Similar);
        assert_eq!(are_similar(&r, &a, &a, 1000).unwrap(), Similarity::Similar);
        assert!(matches!(
            are_similar(&r, &a, &r.parse("1,0,1").unwrap(), 1000),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn ehat_field_axioms_small() {
        let r = f4();
        let e = r.ring().e();
        let k = EHat::new(e, &[e.one(), e.one(), e.one()]);
        let x = k.x();
        assert!(k.is_one(&k.mul(&x, &k.inv(&x).unwrap())));
        assert_eq!(k.parse(&k.format(&x)).unwrap(), x);
    }
}
