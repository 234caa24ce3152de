//! The coefficient ring together with `σ`, `ρ`, `u` and the registered chain
//! `E ⊇ C ⊇ F ⊇ F'` of subfields, with relative norms along that chain.

use crate::error::{Error, Result};
use crate::field::{FieldAuto, PrimeField, RelBasis, Subfield, FE};
use crate::linalg::FieldOps;
use crate::ring::{DAuto, DElem, DivAlg};

/// Members of the registered chain, largest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    /// The maximal subfield `E` (equal to `K` for field coefficients).
    E,
    /// The center `C` of `D`.
    C,
    /// `F = C ∩ Fix(σ)`.
    F,
    /// `F' = F ∩ Fix(ρ)`.
    FPrime,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::E => "E",
            Level::C => "C",
            Level::F => "F",
            Level::FPrime => "F'",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Tower<P: PrimeField> {
    ring: DivAlg<P>,
    sigma: DAuto<P>,
    sigma_pows: Vec<DAuto<P>>,
    n: usize,
    u: DElem<P>,
    u_inv: DElem<P>,
    u_is_one: bool,
    rho: DAuto<P>,
    f_field: Subfield<P>,
    fp_field: Subfield<P>,
    e_over_f: RelBasis<P>,
    e_over_fp: RelBasis<P>,
}

impl<P: PrimeField> Tower<P> {
    /// `u = None` means `u = 1`. `n` is computed as the order of `σ` modulo
    /// inner automorphisms, i.e. the order of `σ` on the center.
    pub fn new(
        ring: DivAlg<P>,
        sigma: DAuto<P>,
        u: Option<DElem<P>>,
        rho: DAuto<P>,
    ) -> Result<Self> {
        let e = ring.e().clone();
        let c_field = ring.center().clone();
        let sig_e = sigma.on_e().clone();
        for b in c_field.basis() {
            if !c_field.contains(&sig_e.apply(b)) {
                return Err(Error::InvalidConstruction(
                    "σ must map the center to itself".into(),
                ));
            }
        }
        // Skolem–Noether: σ^j is inner iff it fixes the center pointwise.
        let mut n = 1;
        let mut acc = sig_e.clone();
        while !c_field.basis().iter().all(|b| acc.apply(b) == *b) {
            acc = acc.compose(&sig_e);
            n += 1;
            if n > e.degree() * ring.d() {
                return Err(Error::InvalidConstruction(
                    "σ has no finite order on the center".into(),
                ));
            }
        }
        let u = u.unwrap_or_else(|| ring.one());
        if ring.is_zero(&u) {
            return Err(Error::InvalidConstruction("u must be nonzero".into()));
        }
        if !ring.is_field() && ring.in_e(&u).is_none() {
            return Err(Error::InvalidConstruction("u must lie in E".into()));
        }
        if ring.apply(&sigma, &u) != u {
            return Err(Error::InvalidConstruction("u must lie in Fix(σ)".into()));
        }
        let sigma_n = ring.auto_pow(&sigma, n as i64);
        if !ring.is_conjugation_by(&sigma_n, &u) {
            return Err(Error::InvalidConstruction(format!(
                "σ^{n} is not conjugation by u"
            )));
        }
        let fix_sigma = Subfield::fixed_by(&e, &[&sig_e]);
        let f_field = c_field.intersect(&fix_sigma);
        let rho_e = rho.on_e().clone();
        for b in f_field.basis() {
            if !f_field.contains(&rho_e.apply(b)) {
                return Err(Error::InvalidConstruction("ρ must map F to itself".into()));
            }
        }
        let fp_field = f_field.intersect(&Subfield::fixed_by(&e, &[&rho_e]));
        let sigma_pows = (0..n as i64).map(|r| ring.auto_pow(&sigma, r)).collect();
        let u_inv = ring.inv(&u).expect("nonzero");
        let u_is_one = ring.is_one(&u);
        Ok(Tower {
            e_over_f: RelBasis::new(&f_field),
            e_over_fp: RelBasis::new(&fp_field),
            ring,
            sigma,
            sigma_pows,
            n,
            u,
            u_inv,
            u_is_one,
            rho,
            f_field,
            fp_field,
        })
    }

    pub fn ring(&self) -> &DivAlg<P> {
        &self.ring
    }

    pub fn sigma(&self) -> &DAuto<P> {
        &self.sigma
    }

    pub fn rho(&self) -> &DAuto<P> {
        &self.rho
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.ring.d()
    }

    pub fn u(&self) -> &DElem<P> {
        &self.u
    }

    pub fn u_inv(&self) -> &DElem<P> {
        &self.u_inv
    }

    pub fn u_is_one(&self) -> bool {
        self.u_is_one
    }

    pub fn subfield(&self, level: Level) -> &Subfield<P> {
        match level {
            Level::E => unreachable!("E is the ambient field"),
            Level::C => self.ring.center(),
            Level::F => &self.f_field,
            Level::FPrime => &self.fp_field,
        }
    }

    pub fn dim(&self, level: Level) -> usize {
        match level {
            Level::E => self.ring.e().degree(),
            l => self.subfield(l).dim(),
        }
    }

    pub fn contains(&self, level: Level, x: &FE<P>) -> bool {
        match level {
            Level::E => true,
            l => self.subfield(l).contains(x),
        }
    }

    pub fn f_field(&self) -> &Subfield<P> {
        &self.f_field
    }

    pub fn fp_field(&self) -> &Subfield<P> {
        &self.fp_field
    }

    /// `[F : F']`.
    pub fn f_over_fp(&self) -> usize {
        self.f_field.dim() / self.fp_field.dim()
    }

    pub fn e_over_f(&self) -> &RelBasis<P> {
        &self.e_over_f
    }

    pub fn e_over_fp(&self) -> &RelBasis<P> {
        &self.e_over_fp
    }

    /// `σ^k(z)` for any integer `k`, via `σ^{qn+r}(z) = u^q σ^r(z) u^{-q}`.
    pub fn sigma_pow(&self, k: i64, z: &DElem<P>) -> DElem<P> {
        let n = self.n as i64;
        let r = k.rem_euclid(n) as usize;
        let q = k.div_euclid(n);
        let w = self.ring.apply(&self.sigma_pows[r], z);
        if q == 0 || self.u_is_one {
            return w;
        }
        let uq = self.ring.pow(&self.u, q);
        let uqi = self.ring.pow(&self.u_inv, q);
        self.ring.mul(&self.ring.mul(&uq, &w), &uqi)
    }

    /// `σ^k` restricted to `E` (inner parts act trivially on `E` only when `u ∈ E`,
    /// which the constructor enforces).
    pub fn sigma_e_pow(&self, k: i64, z: &FE<P>) -> FE<P> {
        let w = self.sigma_pow(k, &self.ring.embed(z));
        self.ring.in_e(&w).expect("σ preserves E")
    }

    pub fn apply_auto(&self, phi: &DAuto<P>, x: &DElem<P>, power: i64) -> DElem<P> {
        self.ring.apply(&self.ring.auto_pow(phi, power), x)
    }

    /// Relative norm along the registered chain; each step is a product of
    /// conjugates under the cyclic group generating that step.
    pub fn norm(&self, x: &FE<P>, from: Level, to: Level) -> Result<FE<P>> {
        if to < from {
            return Err(Error::NotInTower {
                from: from.name().into(),
                to: to.name().into(),
            });
        }
        if !self.contains(from, x) {
            return Err(Error::ContextMismatch(format!(
                "element is not in {}",
                from.name()
            )));
        }
        let e = self.ring.e();
        let mut cur = x.clone();
        let mut level = from;
        while level < to {
            let (next, gen, count): (Level, FieldAuto<P>, usize) = match level {
                Level::E => (Level::C, self.ring.gamma().clone(), self.ring.d()),
                Level::C => (
                    Level::F,
                    self.sigma.on_e().clone(),
                    self.dim(Level::C) / self.dim(Level::F),
                ),
                Level::F => (Level::FPrime, self.rho.on_e().clone(), self.f_over_fp()),
                Level::FPrime => unreachable!(),
            };
            let mut conj = cur.clone();
            let mut prod = e.one();
            for _ in 0..count {
                prod = e.mul(&prod, &conj);
                conj = gen.apply(&conj);
            }
            cur = prod;
            level = next;
        }
        Ok(cur)
    }

    /// Fixed subfield of `phi` inside a level, with the index.
    pub fn fix_field(&self, phi: &FieldAuto<P>, within: Level) -> (Subfield<P>, usize) {
        let e = self.ring.e();
        let fixed = Subfield::fixed_by(e, &[phi]);
        let sub = match within {
            Level::E => fixed,
            l => self.subfield(l).intersect(&fixed),
        };
        let idx = self.dim(within) / sub.dim();
        (sub, idx)
    }

    /// Coordinates of `x ∈ D` over `F`: `d · [E:F]` elements of `F`.
    pub fn f_coords(&self, x: &DElem<P>) -> Vec<FE<P>> {
        x.iter().flat_map(|c| self.e_over_f.coords(c)).collect()
    }

    pub fn from_f_coords(&self, c: &[FE<P>]) -> DElem<P> {
        c.chunks(self.e_over_f.len())
            .map(|ch| self.e_over_f.combine(ch))
            .collect()
    }

    /// Coordinates of `x ∈ D` over `F'`: `d · [E:F']` elements of `F'`.
    pub fn fp_coords(&self, x: &DElem<P>) -> Vec<FE<P>> {
        x.iter().flat_map(|c| self.e_over_fp.coords(c)).collect()
    }

    /// `F'`-basis of `D`: `β_r e^i` for an `F'`-basis `β` of `E`.
    pub fn fp_basis_of_d(&self) -> Vec<DElem<P>> {
        let mut out = Vec::new();
        for i in 0..self.d() {
            for b in self.e_over_fp.basis() {
                let mut v = self.ring.zero();
                v[i] = b.clone();
                out.push(v);
            }
        }
        out
    }

    /// `F`-basis of `D`, in the same pattern.
    pub fn f_basis_of_d(&self) -> Vec<DElem<P>> {
        let mut out = Vec::new();
        for i in 0..self.d() {
            for b in self.e_over_f.basis() {
                let mut v = self.ring.zero();
                v[i] = b.clone();
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ExtField, Fp, Rationals};

    fn f4_tower() -> Tower<Fp> {
        let f4 = ExtField::new(Fp::new(2), vec![1, 1, 1]).unwrap();
        let ring = DivAlg::field(f4.clone());
        let sigma = ring
            .auto(FieldAuto::frobenius(&f4, 1).unwrap(), f4.one())
            .unwrap();
        let rho = ring.identity_auto();
        Tower::new(ring, sigma, None, rho).unwrap()
    }

    #[test]
    fn f4_norms_and_levels() {
        let t = f4_tower();
        assert_eq!(t.n(), 2);
        assert_eq!(t.dim(Level::F), 1);
        let th = t.ring().e().generator();
        assert_eq!(t.norm(&th, Level::E, Level::F).unwrap(), t.ring().e().one());
        assert!(matches!(
            t.norm(&th, Level::F, Level::E),
            Err(Error::NotInTower { .. })
        ));
    }

    #[test]
    fn frobenius_power_one_maps_theta_to_theta_plus_one() {
        let t = f4_tower();
        let th = t.ring().embed(&t.ring().e().generator());
        assert_eq!(
            t.apply_auto(t.sigma(), &th, 1),
            t.ring().parse("3").unwrap()
        );
        assert_eq!(t.sigma_pow(-1, &th), t.sigma_pow(1, &th));
    }

    #[test]
    fn norm_of_one_plus_i_is_two() {
        let q = Rationals;
        let qi = ExtField::new(q.clone(), vec![q.one(), q.zero(), q.one()]).unwrap();
        let ring = DivAlg::field(qi.clone());
        let conj = FieldAuto::parse(&qi, "[0,-1]").unwrap();
        let sigma = ring.auto(conj, qi.one()).unwrap();
        let t = Tower::new(ring.clone(), sigma, None, ring.identity_auto()).unwrap();
        let x = qi.parse("[1,1]").unwrap();
        assert_eq!(t.norm(&x, Level::E, Level::F).unwrap(), qi.from_int(2));
        let (fix, idx) = t.fix_field(&FieldAuto::identity(&qi), Level::E);
        assert_eq!((fix.dim(), idx), (2, 1));
    }

    #[test]
    fn degenerate_inner_case() {
        // D = (Q(i)/Q, conj, -1), σ = conjugation by i: n = 1, u = i.
        let q = Rationals;
        let qi = ExtField::new(q.clone(), vec![q.one(), q.zero(), q.one()]).unwrap();
        let conj = FieldAuto::parse(&qi, "[0,-1]").unwrap();
        let h = DivAlg::cyclic(qi.clone(), conj, qi.from_int(-1)).unwrap();
        let sigma = h.auto(FieldAuto::identity(&qi), qi.from_int(-1)).unwrap();
        let u = h.embed(&qi.generator());
        let t = Tower::new(h.clone(), sigma.clone(), Some(u), h.identity_auto()).unwrap();
        assert_eq!(t.n(), 1);
        assert_eq!(t.dim(Level::F), 1);
        assert!(Tower::new(h.clone(), sigma, None, h.identity_auto()).is_err());
    }
}
