//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Proc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewcodes::algebra::{
    check_division, circ, division_criteria, monic_divisors_of_h, nuclei, nuclei_via_idealisers,
    zero_divisor_by_pairs, zero_divisor_by_rank, DivisionVerdict, NucleiDims,
};
use skewcodes::central::{is_irreducible, mclm, Irreducibility, MclmReport};
use skewcodes::code::{
    ehat_at, tn_theta_matrix, tn_theta_parameter, CodeFile, CodeSpec, SpreadSet, VfBasis,
};
use skewcodes::corpus::{
    finite_codes, instance_a, instance_f8, instance_f9, instance_qi, mclm_instances,
    tn_theta_instances, BaseKind, InstanceDesc,
};
use skewcodes::field::{ExtField, FieldAuto, Fp, PrimeField, Rationals, FE};
use skewcodes::linalg::{self, FieldOps, Matrix};
use skewcodes::par::Exec;
use skewcodes::rank::{
    certify_mrd, column_rank, min_distance, mrd_criteria, rank_via_gcrd, singleton_rhs,
    DistanceMode, MrdVerdict,
};
use skewcodes::skew::{SkewPoly, SkewRing};
use skewcodes::tower::Level;
use skewcodes_cli::SpecFile;

const BUDGET: u128 = 1 << 20;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fp(desc: &InstanceDesc) -> CodeSpec<Fp> {
    match desc.base_kind().unwrap() {
        BaseKind::Prime(p) => desc.build_spec(Fp::new(p)).unwrap(),
        BaseKind::Rationals => panic!("{} is not finite", desc.name),
    }
}

fn q(desc: &InstanceDesc) -> CodeSpec<Rationals> {
    desc.build_spec(Rationals).unwrap()
}

fn conj_product<P: PrimeField>(e: &ExtField<P>, phi: &FieldAuto<P>, x: &FE<P>, n: usize) -> FE<P> {
    let mut acc = e.one();
    let mut c = x.clone();
    for _ in 0..n {
        acc = e.mul(&acc, &c);
        c = phi.apply(&c);
    }
    acc
}

fn from_digits<T: Clone>(elems: &[T], mut idx: u128, len: usize) -> Vec<T> {
    let q = elems.len() as u128;
    (0..len)
        .map(|_| {
            let x = elems[(idx % q) as usize].clone();
            idx /= q;
            x
        })
        .collect()
}

fn rank_formula() -> Outcome {
    let spec = fp(&instance_a());
    let vf = VfBasis::new(&spec).unwrap();
    let ring = spec.ring();
    let elems = ring.ring().elements().unwrap();
    let start = Instant::now();
    let mut dist = [0usize; 3];
    for idx in 0..256 {
        let a = ring.poly(from_digits(&elems, idx, 4));
        let cert = rank_via_gcrd(&vf, &spec, &a).unwrap();
        ensure!(
            cert.gaussian_rank == 2 - cert.gcrd_degree / 2 && cert.gcrd_degree.is_multiple_of(2),
            "a = {}: rank {} vs deg gcrd {}",
            ring.format(&a),
            cert.gaussian_rank,
            cert.gcrd_degree
        );
        dist[cert.gaussian_rank] += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 5.0, "took {secs:.2}s");
    ensure!(dist == [1, 75, 180], "rank distribution {dist:?}");
    Ok(format!("256 residues, ranks {dist:?}, {secs:.2}s"))
}

fn mclm_checks<P: PrimeField>(
    r: &SkewRing<P>,
    f: &SkewPoly<P>,
    rep: &MclmReport<P>,
) -> Result<(), String> {
    let tower = r.tower();
    let e = tower.ring().e();
    ensure!(rep.hhat.last() == Some(&e.one()), "ĥ not monic");
    ensure!(
        rep.hhat.iter().all(|c| tower.contains(Level::F, c)),
        "ĥ not over F"
    );
    ensure!(rep.h == r.from_hat(&rep.hhat), "h is not ĥ(u^-1 t^n)");
    ensure!(r.is_central(&rep.h), "h not central");
    let t = r.t();
    ensure!(r.mul(&rep.h, &t) == r.mul(&t, &rep.h), "h t != t h");
    for b in tower.ring().prime_basis() {
        let c = r.constant(&b);
        ensure!(
            r.mul(&rep.h, &c) == r.mul(&c, &rep.h),
            "h does not commute with D"
        );
    }
    ensure!(
        r.mod_r(&rep.h, f).unwrap().is_zero(),
        "f does not right-divide h"
    );
    ensure!(
        r.left_divmod(&rep.h, f).unwrap().1.is_zero(),
        "f does not left-divide h"
    );
    if let Irreducibility::Reducible(Some(g)) = is_irreducible(r, rep, BUDGET).unwrap() {
        ensure!(
            r.mod_r(f, &g).unwrap().is_zero(),
            "witness does not divide f"
        );
        ensure!(
            r.mod_r(&rep.h, &g).unwrap().is_zero(),
            "witness does not right-divide h"
        );
        ensure!(
            r.left_divmod(&rep.h, &g).unwrap().1.is_zero(),
            "right divisor of h is not a left divisor"
        );
    }
    Ok(())
}

fn minimal_finite(r: &SkewRing<Fp>, f: &SkewPoly<Fp>, rep: &MclmReport<Fp>) -> Result<(), String> {
    let e = r.ring().e();
    let felems = r.tower().f_field().elements().unwrap();
    for deg in 1..rep.hhat_degree() {
        for idx in 0..(felems.len() as u128).pow(deg as u32) {
            let mut g = from_digits(&felems, idx, deg);
            g.push(e.one());
            ensure!(
                !r.mod_r(&r.from_hat(&g), f).unwrap().is_zero(),
                "smaller central multiple of degree {deg}"
            );
        }
    }
    Ok(())
}

fn minimal_krylov<P: PrimeField>(
    r: &SkewRing<P>,
    f: &SkewPoly<P>,
    rep: &MclmReport<P>,
) -> Result<(), String> {
    let tower = r.tower();
    let z = tower.ring().zero();
    let x = r.x_elem();
    let mut cur = r.one();
    let mut cols = Vec::new();
    for _ in 0..rep.hhat_degree() {
        let res = r.mod_r(&cur, f).unwrap();
        cols.push(
            (0..rep.m)
                .flat_map(|j| tower.f_coords(res.coeff(j).unwrap_or(&z)))
                .collect::<Vec<_>>(),
        );
        cur = r.mul(&x, &cur);
    }
    let len = cols[0].len();
    let rank = linalg::rank(tower.ring().e(), &Matrix::from_cols(cols, len));
    ensure!(rank == rep.hhat_degree(), "Krylov rank {rank} below deg ĥ");
    Ok(())
}

fn mclm_corpus() -> Outcome {
    let corpus = mclm_instances();
    ensure!(corpus.len() >= 20, "only {} instances", corpus.len());
    let mut kinds = std::collections::BTreeSet::new();
    for desc in &corpus {
        let res = match desc.base_kind().unwrap() {
            BaseKind::Prime(p) => {
                let r = desc.build_ring(Fp::new(p)).unwrap();
                let f = r.parse(&desc.f).unwrap();
                let rep = mclm(&r, &f).unwrap();
                kinds.insert(format!("F{}", r.ring().e().order().unwrap()));
                mclm_checks(&r, &f, &rep).and_then(|_| minimal_finite(&r, &f, &rep))
            }
            BaseKind::Rationals => {
                let r = desc.build_ring(Rationals).unwrap();
                let f = r.parse(&desc.f).unwrap();
                let rep = mclm(&r, &f).unwrap();
                kinds.insert(format!("Q^{}", r.ring().e().degree()));
                mclm_checks(&r, &f, &rep).and_then(|_| minimal_krylov(&r, &f, &rep))
            }
        };
        res.map_err(|e| format!("{}: {e}", desc.name))?;
    }
    for k in ["F4", "F8", "F9", "Q^2"] {
        ensure!(kinds.contains(k), "no instance over {k}");
    }
    Ok(format!("{} instances over {kinds:?}", corpus.len()))
}

fn norm_identity_one<P: PrimeField>(desc: &InstanceDesc, base: P) -> Result<bool, String> {
    let r = desc.build_ring(base).unwrap();
    let rep = mclm(&r, &r.parse(&desc.f).unwrap()).unwrap();
    if !rep.is_full_degree {
        return Ok(false);
    }
    let tower = r.tower();
    let e = tower.ring().e();
    let n = tower.n();
    let a0 = tower.ring().in_e(&rep.f.coeffs()[0]).unwrap();
    let lhs = conj_product(e, tower.sigma().on_e(), &a0, n);
    let mut rhs = rep.h0().clone();
    if rep.m * (n - 1) % 2 == 1 {
        rhs = e.neg(&rhs);
    }
    ensure!(
        lhs == rhs,
        "{}: N(a0) = {} but ±h0 = {}",
        desc.name,
        e.format(&lhs),
        e.format(&rhs)
    );
    Ok(true)
}

fn norm_identity() -> Outcome {
    let mut full = 0;
    for desc in mclm_instances() {
        let ok = match desc.base_kind().unwrap() {
            BaseKind::Prime(p) => norm_identity_one(&desc, Fp::new(p))?,
            BaseKind::Rationals => norm_identity_one(&desc, Rationals)?,
        };
        full += ok as usize;
    }
    ensure!(full >= 15, "only {full} full-degree instances");
    Ok(format!("{full} full-degree instances"))
}

const MRD_LIMIT: u128 = 1 << 16;

fn mrd_agreement() -> Outcome {
    let (mut checked, mut by_criteria) = (0, 0);
    for desc in finite_codes() {
        let spec = fp(&desc);
        if spec.codeword_count().unwrap() > MRD_LIMIT {
            continue;
        }
        checked += 1;
        let exhaustive = min_distance(
            &spec,
            None,
            DistanceMode::GcrdExhaustive,
            MRD_LIMIT,
            Exec::default(),
        )
        .unwrap();
        if mrd_criteria(&spec, BUDGET).unwrap().is_some() {
            by_criteria += 1;
            ensure!(
                exhaustive.is_mrd,
                "{}: criterion says MRD, d = {}",
                desc.name,
                exhaustive.min_distance
            );
        }
        let v = certify_mrd(&spec, MRD_LIMIT, Exec::default()).unwrap();
        ensure!(
            matches!(v, MrdVerdict::Mrd { .. }) == exhaustive.is_mrd
                && !matches!(v, MrdVerdict::Unknown),
            "{}: verdict {} vs exhaustive d = {}",
            desc.name,
            v.summary(spec.k() - spec.l() + 1),
            exhaustive.min_distance
        );
    }
    let spec = q(&instance_qi());
    let v = certify_mrd(&spec, MRD_LIMIT, Exec::Sequential).unwrap();
    ensure!(
        v.summary(2) == "mrd=yes d=2 bound=2 by=norm",
        "Q(i): {}",
        v.summary(2)
    );
    let ss = SpreadSet::new(&spec).unwrap();
    let ranks: Vec<_> = ss
        .generator_matrices()
        .iter()
        .map(|m| column_rank(ss.ehat(), m))
        .collect();
    ensure!(ranks == [2, 2, 2, 2], "Q(i) generator ranks {ranks:?}");
    Ok(format!(
        "{checked} finite codes, {by_criteria} by criteria; Q(i) MRD by norm"
    ))
}

fn singleton() -> Outcome {
    let mut certified = 0;
    for desc in finite_codes() {
        let spec = fp(&desc);
        if spec.codeword_count().unwrap() > MRD_LIMIT {
            continue;
        }
        if let MrdVerdict::Mrd { distance, .. } =
            certify_mrd(&spec, MRD_LIMIT, Exec::default()).unwrap()
        {
            certified += 1;
            let k = spec.k();
            let by_hand = k
                * (k - distance + 1)
                * spec.report().hhat_degree()
                * spec.ring().tower().f_over_fp();
            ensure!(
                spec.dim_fp() == by_hand && by_hand == singleton_rhs(&spec, distance),
                "{}: dim {} vs {by_hand}",
                desc.name,
                spec.dim_fp()
            );
        }
    }
    let spec = q(&instance_qi());
    let MrdVerdict::Mrd { distance, .. } = certify_mrd(&spec, MRD_LIMIT, Exec::Sequential).unwrap()
    else {
        return Err("Q(i) not certified".into());
    };
    ensure!(
        spec.dim_fp() == singleton_rhs(&spec, distance),
        "Q(i) dimension"
    );
    Ok(format!("{} certified codes at equality", certified + 1))
}

fn division_agreement() -> Outcome {
    const LIMIT: u128 = 1 << 12;
    let (mut yes, mut no) = (0, 0);
    for desc in finite_codes()
        .iter()
        .chain(tn_theta_instances().iter())
        .filter(|d| d.l == 1)
    {
        let spec = fp(desc);
        if spec.codeword_count().unwrap() > LIMIT {
            continue;
        }
        let crit = division_criteria(&spec, BUDGET).unwrap();
        let pairs = zero_divisor_by_pairs(&spec, LIMIT, Exec::default()).unwrap();
        let ranks =
            zero_divisor_by_rank(&SpreadSet::new(&spec).unwrap(), LIMIT, Exec::default()).unwrap();
        ensure!(
            pairs.is_none() == ranks.is_none(),
            "{}: pair and rank scans disagree",
            desc.name
        );
        if crit.is_some() {
            ensure!(
                pairs.is_none(),
                "{}: criterion {crit:?} with zero divisors",
                desc.name
            );
        }
        for (b, c) in pairs.iter().chain(ranks.iter()) {
            ensure!(
                !b.is_zero() && !c.is_zero() && circ(&spec, b, c).unwrap().is_zero(),
                "{}: bad witness",
                desc.name
            );
        }
        match check_division(&spec, LIMIT, Exec::default()).unwrap() {
            DivisionVerdict::Division { .. } if pairs.is_none() => yes += 1,
            DivisionVerdict::NotDivision { .. } if pairs.is_some() => no += 1,
            v => return Err(format!("{}: {}", desc.name, v.summary())),
        }
    }
    ensure!(yes >= 8 && no >= 4, "{yes} division, {no} not");
    Ok(format!("{yes} division, {no} with zero divisors"))
}

/// `F'`-dimension of `{x in E : φ(x) = ψ(x)}`, by counting.
fn agree_dim(
    spec: &CodeSpec<Fp>,
    phi: impl Fn(&FE<Fp>) -> FE<Fp>,
    psi: impl Fn(&FE<Fp>) -> FE<Fp>,
) -> usize {
    let e = spec.e();
    let fixed = e
        .elements()
        .unwrap()
        .iter()
        .filter(|x| phi(x) == psi(x))
        .count();
    let q = spec.ring().tower().fp_field().order().unwrap() as usize;
    (fixed as f64).log(q as f64).round() as usize
}

fn nuclei_match() -> Outcome {
    let spec = fp(&instance_f9().with_nu("1"));
    ensure!(
        (spec.n(), spec.m(), spec.report().h.deg()) == (2, 3, Some(6)),
        "F9 shape"
    );
    let div = check_division(&spec, 1 << 12, Exec::default()).unwrap();
    ensure!(
        matches!(div, DivisionVerdict::Division { .. }),
        "F9 ν = 1: {}",
        div.summary()
    );
    let sigma = spec.ring().tower().sigma().on_e().clone();
    let rho = spec.rho().on_e().clone();
    let sigma_m = |x: &FE<Fp>| (0..spec.m()).fold(x.clone(), |y, _| sigma.apply(&y));
    let want = NucleiDims {
        left: agree_dim(&spec, |x| rho.apply(x), |x| x.clone()),
        middle: agree_dim(&spec, sigma_m, |x| rho.apply(x)),
        right: spec.f_over_fp() * spec.m(),
        center: 1,
    };
    let got = nuclei(&spec).unwrap().dims();
    ensure!(got == want, "F9: {got:?} vs {want:?}");
    let mut compared = 0;
    for desc in finite_codes()
        .iter()
        .chain(tn_theta_instances().iter())
        .filter(|d| d.l == 1)
    {
        let spec = fp(desc);
        let is_division = matches!(
            check_division(&spec, 1 << 12, Exec::default()).unwrap(),
            DivisionVerdict::Division { .. }
        );
        match (
            nuclei(&spec),
            nuclei_via_idealisers(&SpreadSet::new(&spec).unwrap()),
        ) {
            (Ok(a), Ok(b)) => {
                ensure!(a.dims() == b, "{}: {:?} vs {b:?}", desc.name, a.dims());
                compared += 1;
            }
            _ => ensure!(
                !is_division,
                "{}: no nuclei for a division algebra",
                desc.name
            ),
        }
    }
    for rho in ["id", "[0,-1]"] {
        let spec = q(&instance_qi().with_rho(rho));
        let a = nuclei(&spec).unwrap().dims();
        let b = nuclei_via_idealisers(&SpreadSet::new(&spec).unwrap()).unwrap();
        ensure!(a == b, "Q(i) ρ = {rho}: {a:?} vs {b:?}");
        compared += 1;
    }
    Ok(format!(
        "F9 dims ({}, {}, {}, {}); {compared} instances agree across routes",
        got.left, got.middle, got.right, got.center
    ))
}

fn generic<P: PrimeField>(ss: &SpreadSet<P>, a: &[FE<P>], theta: &FE<P>) -> Matrix<FE<P>> {
    let spec = ss.spec();
    let d: Vec<_> = a.iter().map(|x| spec.ring().ring().embed(x)).collect();
    let elem = spec.build_a_element(&d).unwrap();
    ss.matrix_of(&elem)
        .unwrap()
        .map(|v| ehat_at(spec.e(), v, theta))
}

fn random_qi(e: &ExtField<Rationals>, rng: &mut ChaCha8Rng) -> FE<Rationals> {
    let mut part = || format!("{}/{}", rng.gen_range(-9i64..=9), rng.gen_range(1i64..=5));
    e.parse(&format!("[{},{}]", part(), part())).unwrap()
}

fn closed_form() -> Outcome {
    let mut finite = 0;
    for desc in tn_theta_instances() {
        let spec = fp(&desc);
        let theta = tn_theta_parameter(&spec).ok_or(format!("{}: not t^n - θ", desc.name))?;
        let ss = SpreadSet::new(&spec).unwrap();
        let elems = spec.e().elements().unwrap();
        let n = spec.n();
        for idx in 0..(elems.len() as u128).pow(n as u32) {
            let a = from_digits(&elems, idx, n);
            let closed = tn_theta_matrix(spec.ring(), &theta, &a, &spec.nu()[0]).unwrap();
            ensure!(
                generic(&ss, &a, &theta) == closed,
                "{}: mismatch",
                desc.name
            );
            finite += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (nu, rho) in [
        ("2", "id"),
        ("2", "[0,-1]"),
        ("[1,3]", "id"),
        ("[1/2,-1]", "[0,-1]"),
    ] {
        let spec = q(&instance_qi().with_nu(nu).with_rho(rho));
        let theta = tn_theta_parameter(&spec).unwrap();
        let ss = SpreadSet::new(&spec).unwrap();
        for _ in 0..25 {
            let a = [random_qi(spec.e(), &mut rng), random_qi(spec.e(), &mut rng)];
            let closed = tn_theta_matrix(spec.ring(), &theta, &a, &spec.nu()[0]).unwrap();
            ensure!(
                generic(&ss, &a, &theta) == closed,
                "Q(i) ν = {nu}: mismatch"
            );
        }
    }
    // [[z0 + νρ(z0) i, z1 i], [conj z1, conj z0 + conj(νρ(z0)) i]]
    for rho in ["id", "[0,-1]"] {
        let spec = q(&instance_qi().with_rho(rho));
        let e = spec.e();
        let i = e.parse("[0,1]").unwrap();
        let conj = FieldAuto::parse(e, "[0,-1]").unwrap();
        let rho = FieldAuto::parse(e, rho).unwrap();
        let nu = e.parse("2").unwrap();
        let ss = SpreadSet::new(&spec).unwrap();
        for _ in 0..20 {
            let (z0, z1) = (random_qi(e, &mut rng), random_qi(e, &mut rng));
            let top = e.mul(&nu, &rho.apply(&z0));
            let display = Matrix::from_rows(vec![
                vec![e.add(&z0, &e.mul(&top, &i)), e.mul(&z1, &i)],
                vec![
                    conj.apply(&z1),
                    e.add(&conj.apply(&z0), &e.mul(&conj.apply(&top), &i)),
                ],
            ]);
            ensure!(
                generic(&ss, &[z0, z1], &i) == display,
                "b = 1 display differs"
            );
        }
    }
    Ok(format!(
        "{finite} finite inputs, 100 random Q(i) inputs, b = 1 display"
    ))
}

fn divisor_norm() -> Outcome {
    let mut total = 0;
    for desc in [
        instance_a(),
        instance_a().with_nu("1"),
        instance_a().with_f("1,1,1"),
        instance_f8(),
    ] {
        let spec = fp(&desc);
        let tower = spec.ring().tower();
        let norm = |g: &SkewPoly<Fp>| {
            let c = spec.ring().ring().in_e(&g.coeffs()[0]).unwrap();
            conj_product(spec.e(), tower.sigma().on_e(), &c, tower.n())
        };
        let want = norm(spec.f());
        let divisors = monic_divisors_of_h(&spec, spec.m(), BUDGET).unwrap();
        ensure!(!divisors.is_empty(), "{}: no divisors", desc.name);
        for g in &divisors {
            ensure!(
                spec.ring().mod_r(&spec.report().h, g).unwrap().is_zero(),
                "{}: not a divisor",
                desc.name
            );
            ensure!(
                norm(g) == want,
                "{}: N(g0) differs for g = {}",
                desc.name,
                spec.ring().format(g)
            );
        }
        total += divisors.len();
    }
    Ok(format!("{total} monic degree-m divisors over F4 and F8"))
}

fn skewcodes(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Proc::new(env!("CARGO_BIN_EXE_skewcodes"))
        .args(args)
        .output()
        .unwrap();
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn serialization() -> Outcome {
    let mut files = 0;
    for desc in finite_codes() {
        let spec = fp(&desc);
        let ss = SpreadSet::new(&spec).unwrap();
        let text = ss
            .to_code_file(vec![("name".into(), desc.name.clone())])
            .to_text(ss.ehat());
        let back =
            CodeFile::<Fp>::parse(&text, ss.ehat()).map_err(|e| format!("{}: {e}", desc.name))?;
        ensure!(
            back.to_text(ss.ehat()) == text,
            "{}: bytes differ after round trip",
            desc.name
        );
        files += 1;
    }
    let dir = tempfile::tempdir().unwrap();
    let mut runs = 0;
    for desc in [instance_a(), instance_f9().with_nu("1"), instance_qi()] {
        let path = dir.path().join("spec.toml");
        std::fs::write(&path, SpecFile::from_desc(&desc).to_toml()).unwrap();
        let spec = path.to_str().unwrap();
        let out = dir.path().join("code.txt");
        let commands: [&[&str]; 6] = [
            &["mclm"],
            &["norm"],
            &["check", "mrd"],
            &["check", "division"],
            &["check", "nuclei"],
            &["build-code"],
        ];
        for cmd in commands {
            let args: Vec<&str> = ["--spec", spec].iter().chain(cmd).copied().collect();
            let first = skewcodes(&args);
            let again = skewcodes(&args);
            let serial = skewcodes(&[&args[..], &["--jobs", "1"]].concat());
            ensure!(
                first == again && first == serial,
                "{}: `{}` not deterministic",
                desc.name,
                cmd.join(" ")
            );
            runs += 3;
        }
        let written = skewcodes(&["--spec", spec, "build-code", "--out", out.to_str().unwrap()]);
        ensure!(written.1 == 0, "{}: build-code --out failed", desc.name);
        let bytes = std::fs::read_to_string(&out).unwrap();
        ensure!(
            bytes.as_bytes() == skewcodes(&["--spec", spec, "build-code"]).0,
            "{}: --out bytes differ",
            desc.name
        );
        files += 1;
    }
    Ok(format!(
        "{files} code files round-trip, {runs} CLI runs identical"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("rank formula", rank_formula),
        ("mclm correctness", mclm_corpus),
        ("norm constant term", norm_identity),
        ("MRD certification", mrd_agreement),
        ("Singleton attainment", singleton),
        ("division three-way", division_agreement),
        ("nuclei", nuclei_match),
        ("closed form t^n - θ", closed_form),
        ("divisor norm law", divisor_norm),
        ("serialization", serialization),
    ];
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
                        let msg = p
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                            .unwrap_or_default();
                        Err(format!("panicked: {msg}"))
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), res)) in criteria.iter().zip(&results).enumerate() {
        match res {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
