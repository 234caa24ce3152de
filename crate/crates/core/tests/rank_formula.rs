mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewcodes::code::{left_mult_matrix, CodeSpec, VfBasis};
use skewcodes::corpus::{instance_a, instance_f8, instance_f9};
use skewcodes::field::{Fp, PrimeField};
use skewcodes::linalg::{self, FieldOps, Matrix};
use skewcodes::rank::{column_rank, rank_via_gcrd};
use skewcodes::skew::SkewPoly;
use skewcodes::Error;

fn poly_from_index<P: PrimeField>(spec: &CodeSpec<P>, mut idx: u128, len: usize) -> SkewPoly<P> {
    let ring = spec.ring().ring();
    let elems = ring.elements().unwrap();
    let q = elems.len() as u128;
    let c = (0..len)
        .map(|_| {
            let x = elems[(idx % q) as usize].clone();
            idx /= q;
            x
        })
        .collect();
    spec.ring().poly(c)
}

#[test]
fn all_256_residues_over_f4() {
    let spec = common::fp(&instance_a());
    let vf = VfBasis::new(&spec).unwrap();
    let start = Instant::now();
    let mut seen = [0usize; 3];
    for idx in 0..256 {
        let a = poly_from_index(&spec, idx, 4);
        let cert = rank_via_gcrd(&vf, &spec, &a).unwrap();
        assert_eq!(cert.gaussian_rank, cert.formula_rank);
        assert_eq!(cert.gcrd_degree % 2, 0);
        seen[cert.gaussian_rank] += 1;
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
    // R/Rh is M_2(F_4): |GL_2(F_4)| = 15 * 12 and (4^2 - 1)^2 / 3 rank-one matrices
    assert_eq!(seen, [1, 75, 180]);
}

#[test]
fn rank_examples() {
    let spec = common::fp(&instance_a());
    let vf = VfBasis::new(&spec).unwrap();
    let r = spec.ring();
    let zero = rank_via_gcrd(&vf, &spec, &r.zero()).unwrap();
    assert_eq!((zero.gaussian_rank, zero.gcrd_degree), (0, 4));
    let f = rank_via_gcrd(&vf, &spec, spec.f()).unwrap();
    assert_eq!((f.gaussian_rank, f.gcrd_degree), (1, 2));
    let t = rank_via_gcrd(&vf, &spec, &r.t()).unwrap();
    assert_eq!((t.gaussian_rank, t.gcrd_degree), (2, 0));
    assert!(matches!(
        rank_via_gcrd(&vf, &spec, &r.monomial(&r.ring().one(), 4)),
        Err(Error::DegreeOutOfRange(_))
    ));
}

#[test]
fn column_rank_trivial_cases() {
    let spec = common::fp(&instance_a());
    let eh = spec.ehat();
    assert_eq!(column_rank(&eh, &Matrix::identity(&eh, 2)), 2);
    assert_eq!(column_rank(&eh, &Matrix::zeros(&eh, 2, 2)), 0);
    let vf = VfBasis::new(&spec).unwrap();
    let mt = left_mult_matrix(&vf, &spec.ring().t()).unwrap();
    // [[0, x], [1, 0]] by hand: swap rows, both pivots nonzero
    assert_eq!(
        mt,
        Matrix::from_rows(vec![vec![eh.zero(), eh.x()], vec![eh.one(), eh.zero()]])
    );
    assert_eq!(column_rank(&eh, &mt), 2);
}

fn random_samples(spec: &CodeSpec<Fp>, samples: usize, seed: u64) {
    let vf = VfBasis::new(spec).unwrap();
    let dh = spec.report().h.deg().unwrap();
    let q = spec.ring().ring().order().unwrap();
    let total = q.pow(dh as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eh = spec.ehat();
    for _ in 0..samples {
        let a = poly_from_index(spec, rng.gen_range(0..total), dh);
        let cert = rank_via_gcrd(&vf, spec, &a).unwrap();
        // rank-nullity: the kernel of M_a has E_ĥ-dimension deg gcrd / m
        let m = left_mult_matrix(&vf, &a).unwrap();
        assert_eq!(linalg::kernel(&eh, &m).len(), cert.gcrd_degree / spec.m());
        assert_eq!(cert.gaussian_rank + cert.gcrd_degree / spec.m(), spec.k());
    }
}

#[test]
fn random_residues_over_f8() {
    random_samples(&common::fp(&instance_f8()), 1000, 8);
}

#[test]
fn random_residues_over_f9() {
    random_samples(&common::fp(&instance_f9()), 1000, 9);
}
