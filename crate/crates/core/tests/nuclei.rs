mod common;

use skewcodes::algebra::{
    check_division, circ, idealisers, nuclei, nuclei_via_idealisers, predicted_idealisers,
    predicted_nuclei, rm_basis, DivisionVerdict, Isotope, NucleiDims,
};
use skewcodes::code::{CodeSpec, SpreadSet};
use skewcodes::corpus::{finite_codes, instance_a, instance_f9, instance_qi, tn_theta_instances};
use skewcodes::field::PrimeField;
use skewcodes::par::Exec;
use skewcodes::skew::SkewPoly;
use skewcodes::Error;

fn dims(l: usize, m: usize, r: usize, c: usize) -> NucleiDims {
    NucleiDims {
        left: l,
        middle: m,
        right: r,
        center: c,
    }
}

fn assoc<P: PrimeField>(
    iso: &Isotope<P>,
    x: &SkewPoly<P>,
    y: &SkewPoly<P>,
    z: &SkewPoly<P>,
) -> bool {
    iso.mul(&iso.mul(x, y), z) == iso.mul(x, &iso.mul(y, z))
}

/// Every reported basis element associates in its slot with all basis pairs,
/// where the product is rebuilt from `∘` as `R_1^{-1}(x) ∘ L_1^{-1}(y)`.
fn check_slots<P: PrimeField>(spec: &CodeSpec<P>) -> NucleiDims {
    let rep = nuclei(spec).unwrap();
    let iso = Isotope::new(spec).unwrap();
    let basis = rm_basis(spec);
    let r = spec.ring();
    // the isotope has identity 1 ∘ 1, and (x ∘ 1) * (1 ∘ y) = x ∘ y
    let u = iso.one();
    for x in &basis {
        assert_eq!(&iso.mul(&u, x), x);
        assert_eq!(&iso.mul(x, &u), x);
        for y in &basis {
            let xe = circ(spec, x, &r.one()).unwrap();
            let ey = circ(spec, &r.one(), y).unwrap();
            assert_eq!(iso.mul(&xe, &ey), circ(spec, x, y).unwrap());
        }
    }
    for y in &basis {
        for z in &basis {
            assert!(rep.left.iter().all(|x| assoc(&iso, x, y, z)));
            assert!(rep.middle.iter().all(|x| assoc(&iso, y, x, z)));
            assert!(rep.right.iter().all(|x| assoc(&iso, y, z, x)));
        }
        for x in &rep.center {
            assert_eq!(iso.mul(x, y), iso.mul(y, x));
        }
    }
    rep.dims()
}

#[test]
fn f9_division_instance_matches_prediction() {
    // N(g) = g^4 = 2 in F_3, so ν = 1 gives a division algebra by the norm test
    let spec = common::fp(&instance_f9().with_nu("1"));
    assert_eq!((spec.n(), spec.m(), spec.report().h.deg()), (2, 3, Some(6)));
    assert_eq!(
        check_division(&spec, 1 << 12, Exec::default())
            .unwrap()
            .summary(),
        "division=yes by=norm"
    );
    let expected = dims(2, 1, 3, 1);
    assert_eq!(predicted_nuclei(&spec), Some(expected));
    assert_eq!(check_slots(&spec), expected);
    let ss = SpreadSet::new(&spec).unwrap();
    assert_eq!(nuclei_via_idealisers(&ss).unwrap(), expected);
    assert_eq!(predicted_idealisers(&spec), Some([2, 1, 3, 1]));
    assert_eq!(idealisers(&ss).dims(), [2, 1, 3, 1]);
}

#[test]
fn f9_with_rho_frobenius() {
    // ρ = σ: Nuc_l = Fix(σ) = F_3 and Nuc_m = Fix(σ^{-1} σ^3) = F_9
    let spec = common::fp(&instance_f9().with_nu("4").with_rho("frob:1"));
    let expected = predicted_nuclei(&spec).unwrap();
    assert_eq!(expected, dims(1, 2, 3, 1));
    if matches!(
        check_division(&spec, 1 << 12, Exec::default()).unwrap(),
        DivisionVerdict::Division { .. }
    ) {
        assert_eq!(check_slots(&spec), expected);
    }
}

#[test]
fn associator_route_equals_idealiser_route() {
    let (mut compared, mut division) = (0, 0);
    for desc in finite_codes()
        .iter()
        .chain(tn_theta_instances().iter())
        .filter(|d| d.l == 1)
    {
        let spec = common::fp(desc);
        let ss = SpreadSet::new(&spec).unwrap();
        let is_division = matches!(
            check_division(&spec, 1 << 12, Exec::default()).unwrap(),
            DivisionVerdict::Division { .. }
        );
        match (nuclei(&spec), nuclei_via_idealisers(&ss)) {
            (Ok(a), Ok(b)) => {
                assert_eq!(a.dims(), b, "{}", desc.name);
                compared += 1;
                division += is_division as usize;
            }
            // no unital isotope when 1 is a zero divisor
            (Err(Error::PreconditionFailed(_)), _) | (_, Err(Error::PreconditionFailed(_))) => {
                assert!(!is_division, "{}", desc.name)
            }
            (Err(e), _) | (_, Err(e)) => panic!("{}: {e}", desc.name),
        }
    }
    assert_eq!((compared, division), (20, 14));
}

#[test]
fn qi_nuclei() {
    for (rho, fixed) in [("id", 2), ("[0,-1]", 1)] {
        let spec = common::q(&instance_qi().with_rho(rho));
        let expected = dims(fixed, fixed, 2, 1);
        assert_eq!(check_slots(&spec), expected, "rho = {rho}");
        assert_eq!(
            nuclei_via_idealisers(&SpreadSet::new(&spec).unwrap()).unwrap(),
            expected
        );
    }
}

#[test]
fn petit_nuclei() {
    // ν = 0: Nuc_l = Nuc_m = K and Nuc_r is the eigenring E_f
    let spec = common::fp(&instance_a());
    assert_eq!(check_slots(&spec), dims(2, 2, 2, 1));
    let spec = common::fp(&instance_f9());
    assert_eq!(check_slots(&spec), dims(2, 2, 3, 1));
    assert_eq!(predicted_idealisers(&spec), Some([2, 2, 3, 1]));
    assert_eq!(
        idealisers(&SpreadSet::new(&spec).unwrap()).dims(),
        [2, 2, 3, 1]
    );
}
