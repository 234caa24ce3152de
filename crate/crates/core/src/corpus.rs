//! Textual instance descriptions and the named instances used by tests,
//! benches and the command line.

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::field::{ExtField, FieldAuto, PrimeField};
use crate::linalg::FieldOps;
use crate::ring::DivAlg;
use crate::skew::SkewRing;
use crate::tower::Tower;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Prime(u64),
    Rationals,
}

/// All parameters as text, in the element syntax of [`DivAlg::parse`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDesc {
    pub name: String,
    /// A prime, or `Q`.
    pub base: String,
    /// Modulus of `E` over the base, constant term first.
    pub modulus: Vec<String>,
    /// `γ` and `a` for a cyclic algebra `(E/C, γ, a)`.
    pub gamma: Option<String>,
    pub a: Option<String>,
    pub sigma: String,
    /// `σ(e) = c e` on the algebra generator.
    pub sigma_c: Option<String>,
    pub rho: String,
    pub rho_c: Option<String>,
    pub u: Option<String>,
    pub f: String,
    pub l: usize,
    pub nu: String,
    pub similar_in_e: bool,
}

impl InstanceDesc {
    /// A field tower `E = base[x]/(modulus)` with `ρ = id`, `l = 1`, `ν = 0`.
    pub fn field(name: &str, base: &str, modulus: &[&str], sigma: &str, f: &str) -> Self {
        InstanceDesc {
            name: name.into(),
            base: base.into(),
            modulus: modulus.iter().map(|s| s.to_string()).collect(),
            gamma: None,
            a: None,
            sigma: sigma.into(),
            sigma_c: None,
            rho: "id".into(),
            rho_c: None,
            u: None,
            f: f.into(),
            l: 1,
            nu: "0".into(),
            similar_in_e: false,
        }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_nu(mut self, nu: &str) -> Self {
        self.nu = nu.into();
        self
    }

    pub fn with_rho(mut self, rho: &str) -> Self {
        self.rho = rho.into();
        self
    }

    pub fn with_l(mut self, l: usize) -> Self {
        self.l = l;
        self
    }

    pub fn with_f(mut self, f: &str) -> Self {
        self.f = f.into();
        self
    }

    pub fn base_kind(&self) -> Result<BaseKind> {
        let b = self.base.trim();
        if b == "Q" {
            return Ok(BaseKind::Rationals);
        }
        let p: u64 = b
            .parse()
            .map_err(|_| Error::Parse(format!("base must be a prime or Q, got '{b}'")))?;
        crate::field::Fp::try_new(p)?;
        Ok(BaseKind::Prime(p))
    }

    pub fn build_ring<P: PrimeField>(&self, base: P) -> Result<SkewRing<P>> {
        let modulus = self
            .modulus
            .iter()
            .map(|c| base.parse(c))
            .collect::<Result<Vec<_>>>()?;
        let e = ExtField::new(base, modulus)?;
        let ring = match (&self.gamma, &self.a) {
            (None, None) => DivAlg::field(e.clone()),
            (Some(g), Some(a)) => DivAlg::cyclic(e.clone(), FieldAuto::parse(&e, g)?, e.parse(a)?)?,
            _ => {
                return Err(Error::InvalidConstruction(
                    "a cyclic algebra needs both gamma and a".into(),
                ))
            }
        };
        let auto = |on_e: &str, c: &Option<String>| -> Result<_> {
            let c = match c {
                Some(c) => e.parse(c)?,
                None => FieldOps::one(&e),
            };
            ring.auto(FieldAuto::parse(&e, on_e)?, c)
        };
        let sigma = auto(&self.sigma, &self.sigma_c)?;
        let rho = auto(&self.rho, &self.rho_c)?;
        let u = self.u.as_deref().map(|u| ring.parse(u)).transpose()?;
        Ok(SkewRing::new(Tower::new(ring, sigma, u, rho)?))
    }

    pub fn build_spec<P: PrimeField>(&self, base: P) -> Result<CodeSpec<P>> {
        let r = self.build_ring(base)?;
        let f = r.parse(&self.f)?;
        let nu = r.ring().parse(&self.nu)?;
        Ok(CodeSpec::new(r, &f, self.l, nu)?.with_similar_in_e(self.similar_in_e))
    }
}

const F4: &[&str] = &["1", "1", "1"];
const F8: &[&str] = &["1", "1", "0", "1"];
const F9: &[&str] = &["2", "2", "1"];
const QI: &[&str] = &["1", "0", "1"];

/// `F_4 = F_2(θ)`, `θ^2 = θ + 1`, `σ` the Frobenius, `f = t^2 + θ`.
pub fn instance_a() -> InstanceDesc {
    InstanceDesc::field("F4 t^2+theta", "2", F4, "frob:1", "2,0,1")
}

/// `F_8 = F_2(w)`, `w^3 = w + 1`, `σ` the Frobenius (`n = 3`), `f = t^2 + t + w`.
pub fn instance_f8() -> InstanceDesc {
    InstanceDesc::field("F8 t^2+t+w", "2", F8, "frob:1", "2,1,1")
}

/// `F_9 = F_3(g)`, `g^2 = g + 1`, `σ` the Frobenius, `f = t^3 + t + g`, irreducible with `deg h = 6`.
pub fn instance_f9() -> InstanceDesc {
    InstanceDesc::field("F9 t^3+t+g", "3", F9, "frob:1", "3,1,0,1")
}

/// `Q(i)` with complex conjugation, `f = t^2 - i`, `ν = 2`.
pub fn instance_qi() -> InstanceDesc {
    InstanceDesc::field("Q(i) t^2-i", "Q", QI, "[0,-1]", "[0,-1],0,1").with_nu("2")
}

/// Hamilton quaternions over `Q(√2)` inside `E = Q(α)`, `α = √2 + i`,
/// with `σ: √2 ↦ -√2` fixing `i` and `j`.
pub fn quaternions(f: &str) -> InstanceDesc {
    InstanceDesc {
        name: "H over Q(sqrt2)".into(),
        base: "Q".into(),
        modulus: ["9", "0", "-2", "0", "1"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        gamma: Some("[0,2/3,0,-1/3]".into()),
        a: Some("-1".into()),
        sigma: "[0,-2/3,0,1/3]".into(),
        sigma_c: None,
        rho: "id".into(),
        rho_c: None,
        u: None,
        f: f.into(),
        l: 1,
        nu: "0".into(),
        similar_in_e: false,
    }
}

/// The same quaternions with `σ = id`, so `n = 1` and `t` is central.
pub fn quaternions_inner(f: &str) -> InstanceDesc {
    let mut q = quaternions(f);
    q.name = "H over Q(sqrt2), sigma = id".into();
    q.sigma = "id".into();
    q
}

/// Finite code instances; every one builds a spread set (`s = 1`).
pub fn finite_codes() -> Vec<InstanceDesc> {
    let mut out = Vec::new();
    for (nu, name) in [
        ("0", "A nu=0"),
        ("1", "A nu=1"),
        ("2", "A nu=theta"),
        ("3", "A nu=theta^2"),
    ] {
        out.push(instance_a().with_nu(nu).named(name));
    }
    out.push(
        instance_a()
            .with_nu("2")
            .with_rho("frob:1")
            .named("A nu=theta rho=frob"),
    );
    out.push(instance_a().with_f("2,1").named("F4 t+theta").with_nu("1"));
    for nu in ["0", "1", "3"] {
        out.push(instance_f8().with_nu(nu).named(&format!("F8 l=1 nu={nu}")));
    }
    out.push(instance_f8().with_l(2).named("F8 l=2 nu=0"));
    out.push(instance_f8().with_l(2).with_nu("1").named("F8 l=2 nu=1"));
    for nu in ["0", "1", "2", "3"] {
        out.push(instance_f9().with_nu(nu).named(&format!("F9 m=3 nu={nu}")));
    }
    out.push(
        instance_f9()
            .with_nu("4")
            .with_rho("frob:1")
            .named("F9 m=3 nu=4 rho=frob"),
    );
    for nu in ["0", "1", "3"] {
        out.push(
            instance_f9()
                .with_f("6,0,1")
                .with_nu(nu)
                .named(&format!("F9 t^2-g nu={nu}")),
        );
    }
    out
}

/// Finite `l = 1` instances with `t^n - θ` shape (`m = n`).
pub fn tn_theta_instances() -> Vec<InstanceDesc> {
    let mut out = Vec::new();
    for nu in ["0", "1", "2", "3"] {
        for rho in ["id", "frob:1"] {
            out.push(
                instance_a()
                    .with_nu(nu)
                    .with_rho(rho)
                    .named(&format!("A nu={nu} rho={rho}")),
            );
        }
    }
    for nu in ["0", "1", "5"] {
        for rho in ["id", "frob:1"] {
            out.push(
                InstanceDesc::field("F9 t^2-g", "3", F9, "frob:1", "6,0,1")
                    .with_nu(nu)
                    .with_rho(rho)
                    .named(&format!("F9 t^2-g nu={nu} rho={rho}")),
            );
        }
    }
    out
}

/// Towers and polynomials for the mclm checks, over `F_4`, `F_8`, `F_9` and `Q(i)`.
pub fn mclm_instances() -> Vec<InstanceDesc> {
    let mut out = Vec::new();
    for f in [
        "2,0,1", "2,1", "1,1", "3,1,1", "2,1,1", "1,0,1", "2,2,0,1", "3,0,0,1",
    ] {
        out.push(InstanceDesc::field(
            &format!("F4 f={f}"),
            "2",
            F4,
            "frob:1",
            f,
        ));
    }
    for f in ["2,0,1", "2,1,1", "2,1", "3,1,1", "1,0,0,1", "5,0,0,1"] {
        out.push(InstanceDesc::field(
            &format!("F8 f={f}"),
            "2",
            F8,
            "frob:1",
            f,
        ));
    }
    for f in [
        "3,1,0,1", "6,0,0,1", "3,0,1", "6,0,1", "3,1", "1,2,1", "2,0,0,1",
    ] {
        out.push(InstanceDesc::field(
            &format!("F9 f={f}"),
            "3",
            F9,
            "frob:1",
            f,
        ));
    }
    for f in [
        "[0,-1],0,1",
        "[0,-2],0,1",
        "[0,1],1",
        "[1,1],0,1",
        "2,[0,1],1",
    ] {
        out.push(InstanceDesc::field(
            &format!("Q(i) f={f}"),
            "Q",
            QI,
            "[0,-1]",
            f,
        ));
    }
    out
}
