//! Irreducibility tests for commutative polynomials.
//!
//! Finite fields use Ben-Or's test. Over `Q` the polynomial is made primitive
//! in `Z[x]`; rational roots are ruled out, mod-p factor degree patterns are
//! intersected, and whatever remains is settled by Kronecker's method under a
//! search budget.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::prime::{is_prime, Fp, PrimeField, Rationals};
use crate::linalg::FieldOps;
use crate::upoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

/// Ben-Or test over a field with `q` elements.
pub fn ben_or<F: FieldOps>(ops: &F, f: &[F::Elem], q: u128) -> bool {
    let f = upoly::monic(ops, &upoly::trimmed(ops, f.to_vec()));
    let Some(n) = upoly::degree(&f) else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let x = vec![ops.zero(), ops.one()];
    let mut y = upoly::rem(ops, &x, &f);
    for _ in 1..=n / 2 {
        y = upoly::powmod(ops, &y, q, &f);
        let g = upoly::gcd(ops, &f, &upoly::sub(ops, &y, &x));
        if upoly::degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Degrees of the irreducible factors of a squarefree monic polynomial.
pub fn ddf_degrees<F: FieldOps>(ops: &F, f: &[F::Elem], q: u128) -> Vec<usize> {
    let mut f = upoly::monic(ops, f);
    let x = vec![ops.zero(), ops.one()];
    let mut y = upoly::rem(ops, &x, &f);
    let mut out = Vec::new();
    let mut i = 0;
    while upoly::degree(&f).unwrap_or(0) > 0 {
        i += 1;
        let n = upoly::degree(&f).unwrap();
        if 2 * i > n {
            out.push(n);
            break;
        }
        y = upoly::powmod(ops, &y, q, &f);
        let g = upoly::gcd(ops, &f, &upoly::sub(ops, &y, &x));
        let dg = upoly::degree(&g).unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat_n(i, dg / i));
            f = upoly::divrem(ops, &f, &g).0;
            y = upoly::rem(ops, &y, &f);
        }
    }
    out
}

/// Irreducibility over `Q`; `budget` caps the Kronecker search.
pub fn irreducible_over_q(coeffs: &[BigRational], budget: u64) -> Tri {
    let q = Rationals;
    let f = upoly::trimmed(&q, coeffs.to_vec());
    let Some(n) = upoly::degree(&f) else {
        return Tri::No;
    };
    match n {
        0 => return Tri::No,
        1 => return Tri::Yes,
        _ => {}
    }
    let z = primitive_integer(&f);
    if z[0].is_zero() {
        return Tri::No;
    }
    if let Some(has_root) = has_rational_root(&z) {
        if has_root {
            return Tri::No;
        }
    }
    let possible = mod_p_degrees(&z, n);
    let candidates: Vec<usize> = possible
        .iter()
        .copied()
        .filter(|&j| j >= 1 && j <= n / 2)
        .collect();
    if candidates.is_empty() {
        return Tri::Yes;
    }
    let mut spent = 0u64;
    for j in candidates {
        match kronecker_factor(&z, j, budget, &mut spent) {
            Some(true) => return Tri::No,
            Some(false) => {}
            None => return Tri::Unknown,
        }
    }
    Tri::Yes
}

fn primitive_integer(f: &[BigRational]) -> Vec<BigInt> {
    let den = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = ints.into_iter().map(|c| c / &content).collect();
    if out.last().unwrap().is_negative() {
        for c in &mut out {
            *c = -c.clone();
        }
    }
    out
}

fn eval_int(f: &[BigInt], x: &BigRational) -> BigRational {
    f.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

/// Positive divisors; `None` when the value is too large to factor by trial division.
fn divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let v = v.abs().to_u64()?;
    if v == 0 || v > 1u64 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= v {
        if v % i == 0 {
            out.push(BigInt::from(i));
            if i * i != v {
                out.push(BigInt::from(v / i));
            }
        }
        i += 1;
    }
    out.sort();
    Some(out)
}

fn has_rational_root(z: &[BigInt]) -> Option<bool> {
    let ps = divisors(&z[0])?;
    let qs = divisors(z.last().unwrap())?;
    for p in &ps {
        for qd in &qs {
            for sign in [1, -1] {
                let x = BigRational::new(p * sign, qd.clone());
                if eval_int(z, &x).is_zero() {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

/// Degrees that a factor over `Q` could have, from up to 12 good primes.
fn mod_p_degrees(z: &[BigInt], n: usize) -> BTreeSet<usize> {
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut used = 0;
    let mut p = 2u64;
    while used < 12 && p < 500 {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let fp = Fp::new(p);
        let pb = BigInt::from(p);
        if (z.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let red: Vec<u64> = z
            .iter()
            .map(|c| fp.from_ratio(c, &BigInt::one()).unwrap())
            .collect();
        let red = upoly::trimmed(&fp, red);
        let der = upoly::derivative(&fp, &red);
        if upoly::degree(&upoly::gcd(&fp, &red, &der)) != Some(0) {
            continue;
        }
        used += 1;
        let degs = ddf_degrees(&fp, &red, p as u128);
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for d in degs {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() <= 2 {
            break;
        }
    }
    possible
}

/// `Some(true)` if a degree-`j` factor exists, `Some(false)` if none does,
/// `None` once the budget is exhausted.
fn kronecker_factor(z: &[BigInt], j: usize, budget: u64, spent: &mut u64) -> Option<bool> {
    let q = Rationals;
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut x = 0i64;
    while points.len() <= j {
        let xr = BigRational::from_integer(BigInt::from(x));
        let v = eval_int(z, &xr);
        if !v.is_zero() {
            points.push(xr);
            values.push(v.to_integer());
        }
        x = if x <= 0 { 1 - x } else { -x };
    }
    let divs: Vec<Vec<BigInt>> = values.iter().map(divisors).collect::<Option<_>>()?;
    let fq: Vec<BigRational> = z
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut idx = vec![0usize; j + 1];
    let mut signs = vec![1i32; j + 1];
    loop {
        *spent += 1;
        if *spent > budget {
            return None;
        }
        let targets: Vec<BigRational> = (0..=j)
            .map(|i| BigRational::from_integer(&divs[i][idx[i]] * signs[i]))
            .collect();
        let g = interpolate(&points, &targets);
        if upoly::degree(&g) == Some(j) && g.iter().all(|c| c.is_integer()) {
            let (_, r) = upoly::divrem(&q, &fq, &g);
            if r.is_empty() {
                return Some(true);
            }
        }
        // Odometer over signs of entries 1..=j, then divisor indices.
        let mut advanced = false;
        for sg in signs.iter_mut().skip(1) {
            if *sg == 1 {
                *sg = -1;
                advanced = true;
                break;
            }
            *sg = 1;
        }
        if advanced {
            continue;
        }
        let mut t = 0;
        while t <= j {
            idx[t] += 1;
            if idx[t] < divs[t].len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
        if t > j {
            return Some(false);
        }
    }
}

fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let q = Rationals;
    let mut out = Vec::new();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = vec![q.one()];
        let mut den = q.one();
        for (k, xk) in xs.iter().enumerate() {
            if k == i {
                continue;
            }
            basis = upoly::mul(&q, &basis, &[-xk.clone(), q.one()]);
            den *= xi - xk;
        }
        let c = yi / den;
        out = upoly::add(&q, &out, &upoly::scale(&q, &c, &basis));
    }
    out
}
