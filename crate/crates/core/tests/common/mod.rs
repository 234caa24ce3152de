#![allow(dead_code)]

use skewcodes::code::CodeSpec;
use skewcodes::corpus::{BaseKind, InstanceDesc};
use skewcodes::field::{ExtField, FieldAuto, Fp, PrimeField, Rationals, FE};
use skewcodes::linalg::FieldOps;

pub const BUDGET: u128 = 1 << 20;

pub fn fp(desc: &InstanceDesc) -> CodeSpec<Fp> {
    match desc.base_kind().unwrap() {
        BaseKind::Prime(p) => desc
            .build_spec(Fp::new(p))
            .unwrap_or_else(|e| panic!("{}: {e}", desc.name)),
        BaseKind::Rationals => panic!("{} is not finite", desc.name),
    }
}

pub fn q(desc: &InstanceDesc) -> CodeSpec<Rationals> {
    desc.build_spec(Rationals)
        .unwrap_or_else(|e| panic!("{}: {e}", desc.name))
}

/// Product of the `n` conjugates `x, φ(x), …, φ^{n-1}(x)`.
pub fn conj_product<P: PrimeField>(
    e: &ExtField<P>,
    phi: &FieldAuto<P>,
    x: &FE<P>,
    n: usize,
) -> FE<P> {
    let mut acc = e.one();
    let mut c = x.clone();
    for _ in 0..n {
        acc = e.mul(&acc, &c);
        c = phi.apply(&c);
    }
    acc
}
