mod common;

use skewcodes::central::{mclm, norm_constant_check, norm_leading_constant, reduced_norm};
use skewcodes::corpus::{mclm_instances, quaternions, BaseKind, InstanceDesc};
use skewcodes::field::{Fp, PrimeField, Rationals};
use skewcodes::linalg::FieldOps;
use skewcodes::skew::SkewRing;
use skewcodes::tower::Level;
use skewcodes::{upoly, Error};

/// Returns whether the instance was full degree.
fn check<P: PrimeField>(r: &SkewRing<P>, desc: &InstanceDesc) -> bool {
    let f = r.parse(&desc.f).unwrap();
    let rep = mclm(r, &f).unwrap();
    if !rep.is_full_degree {
        assert!(matches!(
            norm_constant_check(r, &rep),
            Err(Error::PreconditionFailed(_))
        ));
        return false;
    }
    assert!(norm_constant_check(r, &rep).unwrap(), "{}", desc.name);

    // independent: N_{K/F}(a_0) as a product of σ-conjugates, sign (-1)^{m(n-1)}
    let tower = r.tower();
    let e = tower.ring().e();
    let n = tower.n();
    let ef = tower.dim(Level::E) / tower.dim(Level::F);
    assert_eq!(ef, n);
    let a0 = tower.ring().in_e(&rep.f.coeffs()[0]).unwrap();
    let lhs = common::conj_product(e, tower.sigma().on_e(), &a0, n);
    let mut rhs = rep.h0().clone();
    if rep.m * (n - 1) % 2 == 1 {
        rhs = e.neg(&rhs);
    }
    assert_eq!(lhs, rhs, "{}", desc.name);

    // the determinant route: reduced norm = leading constant times ĥ
    let rn = reduced_norm(r, &f).unwrap();
    let c = norm_leading_constant(r, &f).unwrap();
    assert_eq!(rn, upoly::scale(e, &c, &rep.hhat), "{}", desc.name);
    true
}

fn run(desc: &InstanceDesc) -> bool {
    match desc.base_kind().unwrap() {
        BaseKind::Prime(p) => check(&desc.build_ring(Fp::new(p)).unwrap(), desc),
        BaseKind::Rationals => check(&desc.build_ring(Rationals).unwrap(), desc),
    }
}

#[test]
fn full_degree_corpus() {
    let full = mclm_instances().iter().filter(|d| run(d)).count();
    assert!(full >= 15, "only {full} full-degree instances");
}

#[test]
fn quaternion_instance_is_not_full_degree() {
    // γ-twisted f = t - i has ĥ of degree 1 < d m = 2
    assert!(!run(&quaternions("[0,-1/6,0,-1/6],1")));
}
