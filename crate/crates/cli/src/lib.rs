//! Batch front end: a TOML instance file in, line-oriented `key=value` text out.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use skewcodes::algebra::{check_division, nuclei, DivisionVerdict};
use skewcodes::central::{
    is_irreducible, mclm, norm_constant_check, norm_leading_constant, reduced_norm, Irreducibility,
};
use skewcodes::code::{CodeSpec, SpreadSet, VfBasis};
use skewcodes::corpus::{BaseKind, InstanceDesc};
use skewcodes::field::{Fp, PrimeField, Rationals, FE};
use skewcodes::par::Exec;
use skewcodes::rank::{certify_mrd, rank_via_gcrd, MrdVerdict, DEFAULT_BUDGET};
use skewcodes::skew::{SkewPoly, SkewRing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => EXIT_PARSE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

impl From<skewcodes::Error> for CliError {
    fn from(e: skewcodes::Error) -> Self {
        match e {
            skewcodes::Error::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub tower: TowerBlock,
    pub poly: PolyBlock,
    #[serde(default)]
    pub code: CodeBlock,
    #[serde(default)]
    pub run: RunBlock,
}

/// Element strings use the library syntax: integers index a finite field,
/// `[c0,c1,..]` is a polynomial in the generator, `{z0;z1}` an algebra element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerBlock {
    /// A prime or `Q`.
    pub base: String,
    /// Constant term first.
    pub modulus: Vec<String>,
    pub sigma: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_c: Option<String>,
    #[serde(default = "identity")]
    pub rho: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_c: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
}

fn identity() -> String {
    "id".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyBlock {
    pub f: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeBlock {
    #[serde(default = "one")]
    pub l: usize,
    #[serde(default = "zero")]
    pub nu: String,
    #[serde(default)]
    pub similar_in_e: bool,
}

fn one() -> usize {
    1
}

fn zero() -> String {
    "0".into()
}

impl Default for CodeBlock {
    fn default() -> Self {
        CodeBlock {
            l: 1,
            nu: zero(),
            similar_in_e: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    /// Force single-threaded scans.
    #[serde(default)]
    pub sequential: bool,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            match e.span() {
                Some(span) => {
                    let (line, col) = line_col(text, span.start);
                    CliError::Parse(format!("line {line}, column {col}: {msg}"))
                }
                None => CliError::Parse(msg),
            }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec files always serialize")
    }

    pub fn from_desc(d: &InstanceDesc) -> Self {
        SpecFile {
            name: Some(d.name.clone()),
            tower: TowerBlock {
                base: d.base.clone(),
                modulus: d.modulus.clone(),
                sigma: d.sigma.clone(),
                sigma_c: d.sigma_c.clone(),
                rho: d.rho.clone(),
                rho_c: d.rho_c.clone(),
                u: d.u.clone(),
                gamma: d.gamma.clone(),
                a: d.a.clone(),
            },
            poly: PolyBlock { f: d.f.clone() },
            code: CodeBlock {
                l: d.l,
                nu: d.nu.clone(),
                similar_in_e: d.similar_in_e,
            },
            run: RunBlock::default(),
        }
    }

    pub fn to_desc(&self) -> InstanceDesc {
        let t = &self.tower;
        InstanceDesc {
            name: self.name.clone().unwrap_or_default(),
            base: t.base.clone(),
            modulus: t.modulus.clone(),
            gamma: t.gamma.clone(),
            a: t.a.clone(),
            sigma: t.sigma.clone(),
            sigma_c: t.sigma_c.clone(),
            rho: t.rho.clone(),
            rho_c: t.rho_c.clone(),
            u: t.u.clone(),
            f: self.poly.f.clone(),
            l: self.code.l,
            nu: self.code.nu.clone(),
            similar_in_e: self.code.similar_in_e,
        }
    }

    /// `key = value` lines for a code file header.
    pub fn header(&self) -> Vec<(String, String)> {
        let t = &self.tower;
        let mut h = Vec::new();
        if let Some(n) = &self.name {
            h.push(("name".into(), n.clone()));
        }
        h.push(("base".into(), t.base.clone()));
        h.push(("modulus".into(), t.modulus.join(",")));
        let optional = [
            ("gamma", &t.gamma),
            ("a", &t.a),
            ("sigma_c", &t.sigma_c),
            ("rho_c", &t.rho_c),
            ("u", &t.u),
        ];
        h.push(("sigma".into(), t.sigma.clone()));
        h.push(("rho".into(), t.rho.clone()));
        for (k, v) in optional {
            if let Some(v) = v {
                h.push((k.into(), v.clone()));
            }
        }
        h.push(("f".into(), self.poly.f.clone()));
        h.push(("l".into(), self.code.l.to_string()));
        h.push(("nu".into(), self.code.nu.clone()));
        h
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

#[derive(Parser, Debug)]
#[command(
    name = "skewcodes",
    version,
    about = "Skew polynomial codes and nonassociative algebras"
)]
pub struct Cli {
    /// Instance file (TOML).
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Output path for build-code; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cap on exhaustive scan sizes; overrides `run.budget`.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads for scans; 1 runs sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Minimal central left multiple of f.
    Mclm,
    /// Reduced norm of f and the constant-term identity.
    Norm,
    /// Write the spread set as a code file.
    BuildCode,
    /// Single-line verdicts.
    Check {
        #[arg(value_enum)]
        what: Check,
    },
    /// Rank of M_a for one residue a.
    Rank {
        /// Coefficients of a, constant first.
        #[arg(long)]
        element: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Mrd,
    Division,
    Nuclei,
    Norm,
}

/// Text for stdout and the exit status to report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            exit: EXIT_OK,
        }
    }

    fn verdict(stdout: String, unknown: bool) -> Self {
        let exit = if unknown { EXIT_UNKNOWN } else { EXIT_OK };
        Outcome { stdout, exit }
    }
}

/// Reads the instance file named on the command line and runs the command.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let path = cli
        .spec
        .as_ref()
        .ok_or_else(|| CliError::Parse("--spec <path> is required".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let spec = SpecFile::parse(&text)?;
    let outcome = with_jobs(cli.jobs, |exec| {
        execute(&spec, &cli.command, cli.budget, exec)
    })??;
    if let (Command::BuildCode, Some(out)) = (&cli.command, &cli.out) {
        std::fs::write(out, &outcome.stdout)
            .map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
        let k = outcome
            .stdout
            .lines()
            .find_map(|l| l.strip_prefix("k = "))
            .unwrap_or("?");
        return Ok(Outcome::ok(format!("code_file={} k={k}\n", out.display())));
    }
    Ok(outcome)
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce(Exec) -> T + Send) -> Result<T> {
    match jobs {
        Some(1) => Ok(f(Exec::Sequential)),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Precondition(format!("--jobs {n}: {e}")))?;
            Ok(pool.install(|| f(Exec::Parallel)))
        }
        None => Ok(f(Exec::default())),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T>(_jobs: Option<usize>, f: impl FnOnce(Exec) -> T) -> Result<T> {
    Ok(f(Exec::Sequential))
}

/// Runs `cmd` on an already parsed spec. Build-code returns the file text.
pub fn execute(spec: &SpecFile, cmd: &Command, budget: Option<u64>, exec: Exec) -> Result<Outcome> {
    let exec = if spec.run.sequential {
        Exec::Sequential
    } else {
        exec
    };
    let budget = budget
        .or(spec.run.budget)
        .map_or(DEFAULT_BUDGET, u128::from);
    let desc = spec.to_desc();
    let ctx = Ctx {
        spec,
        desc: &desc,
        budget,
        exec,
    };
    match desc.base_kind()? {
        BaseKind::Prime(p) => ctx.dispatch(Fp::try_new(p)?, cmd),
        BaseKind::Rationals => ctx.dispatch(Rationals, cmd),
    }
}

struct Ctx<'a> {
    spec: &'a SpecFile,
    desc: &'a InstanceDesc,
    budget: u128,
    exec: Exec,
}

impl Ctx<'_> {
    fn dispatch<P: PrimeField>(&self, base: P, cmd: &Command) -> Result<Outcome> {
        match cmd {
            Command::Mclm => self.mclm(&self.desc.build_ring(base)?),
            Command::Norm => self.norm(&self.desc.build_ring(base)?),
            Command::BuildCode => self.build_code(&self.desc.build_spec(base)?),
            Command::Check { what: Check::Norm } => self.check_norm(&self.desc.build_ring(base)?),
            Command::Check { what: Check::Mrd } => self.check_mrd(&self.desc.build_spec(base)?),
            Command::Check {
                what: Check::Division,
            } => self.check_division(&self.desc.build_spec(base)?),
            Command::Check {
                what: Check::Nuclei,
            } => self.nuclei(&self.desc.build_spec(base)?),
            Command::Rank { element } => self.rank(&self.desc.build_spec(base)?, element),
        }
    }

    fn mclm<P: PrimeField>(&self, r: &SkewRing<P>) -> Result<Outcome> {
        let rep = mclm(r, &r.parse(&self.desc.f)?)?;
        let irr = match is_irreducible(r, &rep, self.budget)? {
            Irreducibility::Irreducible => "yes",
            Irreducibility::Reducible(_) => "no",
            Irreducibility::Unknown => "unknown",
        };
        let e = r.tower().ring().e();
        Ok(Outcome::ok(format!(
            "hhat={} k={} s={} irreducible={irr}\nh={} m={} full_degree={}\n",
            list(e, &rep.hhat),
            opt(rep.k),
            opt(rep.s),
            r.format(&rep.h),
            rep.m,
            yes_no(rep.is_full_degree),
        )))
    }

    fn norm<P: PrimeField>(&self, r: &SkewRing<P>) -> Result<Outcome> {
        let f = r.parse(&self.desc.f)?;
        let e = r.tower().ring().e();
        let rn = reduced_norm(r, &f)?;
        let c = norm_leading_constant(r, &f)?;
        Ok(Outcome::ok(format!(
            "reduced_norm={} leading_constant={}\n",
            list(e, &rn),
            e.format(&c)
        )))
    }

    fn check_norm<P: PrimeField>(&self, r: &SkewRing<P>) -> Result<Outcome> {
        let rep = mclm(r, &r.parse(&self.desc.f)?)?;
        let pass = norm_constant_check(r, &rep)?;
        let verdict = if pass { "pass" } else { "fail" };
        Ok(Outcome::ok(format!("norm_constant_check={verdict}\n")))
    }

    fn build_code<P: PrimeField>(&self, spec: &CodeSpec<P>) -> Result<Outcome> {
        let ss = SpreadSet::new(spec)?;
        let mut header = self.spec.header();
        header.push(("hhat".into(), list(spec.e(), &spec.report().hhat)));
        Ok(Outcome::ok(ss.to_code_file(header).to_text(ss.ehat())))
    }

    fn check_mrd<P: PrimeField>(&self, spec: &CodeSpec<P>) -> Result<Outcome> {
        let v = certify_mrd(spec, self.budget, self.exec)?;
        let bound = spec.k() - spec.l() + 1;
        let mut out = v.summary(bound);
        out.push('\n');
        if let MrdVerdict::NotMrd { witness, .. } = &v {
            out.push_str(&format!("witness={}\n", spec.ring().format(witness)));
        }
        Ok(Outcome::verdict(out, matches!(v, MrdVerdict::Unknown)))
    }

    fn check_division<P: PrimeField>(&self, spec: &CodeSpec<P>) -> Result<Outcome> {
        let v = check_division(spec, self.budget, self.exec)?;
        let mut out = v.summary();
        out.push('\n');
        if let DivisionVerdict::NotDivision { left, right } = &v {
            let r = spec.ring();
            out.push_str(&format!(
                "left={} right={}\n",
                r.format(left),
                r.format(right)
            ));
        }
        Ok(Outcome::verdict(out, matches!(v, DivisionVerdict::Unknown)))
    }

    fn nuclei<P: PrimeField>(&self, spec: &CodeSpec<P>) -> Result<Outcome> {
        let rep = nuclei(spec)?;
        let r = spec.ring();
        let mut out = String::new();
        for (name, basis) in [
            ("nuc_l", &rep.left),
            ("nuc_m", &rep.middle),
            ("nuc_r", &rep.right),
            ("center", &rep.center),
        ] {
            out.push_str(&format!("{name} dim_Fprime={}\n", basis.len()));
            for b in basis {
                out.push_str(&format!("  {}\n", r.format(b)));
            }
        }
        Ok(Outcome::ok(out))
    }

    fn rank<P: PrimeField>(&self, spec: &CodeSpec<P>, element: &str) -> Result<Outcome> {
        let a: SkewPoly<P> = spec.ring().parse(element)?;
        let vf = VfBasis::new(spec)?;
        let cert = rank_via_gcrd(&vf, spec, &a)?;
        Ok(Outcome::ok(format!(
            "rank={} gcrd_degree={} k={}\n",
            cert.gaussian_rank,
            cert.gcrd_degree,
            spec.k()
        )))
    }
}

fn list<P: PrimeField>(e: &skewcodes::field::ExtField<P>, v: &[FE<P>]) -> String {
    let parts: Vec<String> = v.iter().map(|x| e.format(x)).collect();
    format!("[{}]", parts.join(","))
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "none".into(), |x| x.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
