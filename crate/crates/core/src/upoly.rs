//! Commutative univariate polynomials over a [`FieldOps`] context.
//!
//! Polynomials are plain coefficient vectors, constant term first, with no
//! trailing zeros. The zero polynomial is the empty vector.

use crate::linalg::FieldOps;

pub fn trim<F: FieldOps>(ops: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| ops.is_zero(c)) {
        p.pop();
    }
}

pub fn trimmed<F: FieldOps>(ops: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    trim(ops, &mut p);
    p
}

/// `None` for the zero polynomial.
pub fn degree<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn add<F: FieldOps>(ops: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = ops.zero();
    let out = (0..n)
        .map(|i| ops.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(ops, out)
}

pub fn sub<F: FieldOps>(ops: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = ops.zero();
    let out = (0..n)
        .map(|i| ops.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(ops, out)
}

pub fn scale<F: FieldOps>(ops: &F, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    trimmed(ops, a.iter().map(|x| ops.mul(c, x)).collect())
}

pub fn mul<F: FieldOps>(ops: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ops.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ops.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ops.add(&out[i + j], &ops.mul(x, y));
        }
    }
    trimmed(ops, out)
}

/// Euclidean division; panics on a zero divisor.
pub fn divrem<F: FieldOps>(ops: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = ops.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(ops, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![ops.zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = ops.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = ops.sub(&r[shift + j], &ops.mul(&c, bj));
        }
        q[shift] = c;
        trim(ops, &mut r);
    }
    (trimmed(ops, q), r)
}

pub fn rem<F: FieldOps>(ops: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(ops, a, b).1
}

pub fn monic<F: FieldOps>(ops: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = ops.inv(l).expect("nonzero leading coefficient");
            scale(ops, &inv, a)
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd<F: FieldOps>(ops: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trimmed(ops, a.to_vec());
    let mut y = trimmed(ops, b.to_vec());
    while !y.is_empty() {
        let r = rem(ops, &x, &y);
        x = y;
        y = r;
    }
    monic(ops, &x)
}

/// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ext_gcd<F: FieldOps>(
    ops: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
    let mut r0 = trimmed(ops, a.to_vec());
    let mut r1 = trimmed(ops, b.to_vec());
    let mut s0 = vec![ops.one()];
    let mut s1 = Vec::new();
    let mut t0 = Vec::new();
    let mut t1 = vec![ops.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(ops, &r0, &r1);
        let s2 = sub(ops, &s0, &mul(ops, &q, &s1));
        let t2 = sub(ops, &t0, &mul(ops, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = ops.inv(l).expect("nonzero");
            (
                scale(ops, &inv, &r0),
                scale(ops, &inv, &s0),
                scale(ops, &inv, &t0),
            )
        }
    }
}

pub fn mulmod<F: FieldOps>(ops: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(ops, &mul(ops, a, b), m)
}

pub fn powmod<F: FieldOps>(ops: &F, a: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut base = rem(ops, a, m);
    let mut acc = rem(ops, &[ops.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(ops, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(ops, &base, &base, m);
        }
    }
    acc
}

pub fn eval<F: FieldOps>(ops: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter()
        .rev()
        .fold(ops.zero(), |acc, c| ops.add(&ops.mul(&acc, x), c))
}

pub fn derivative<F: FieldOps>(ops: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let out = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ops.mul(&ops.from_int(i as i64), c))
        .collect();
    trimmed(ops, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::prime::Fp;

    #[test]
    fn divrem_roundtrip_over_f5() {
        let f = Fp::new(5);
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&f, &a, &b);
        assert!(r.len() < b.len());
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = Fp::new(7);
        let a = mul(&f, &[1, 1], &[2, 3, 1]);
        let b = mul(&f, &[1, 1], &[5, 1]);
        let (g, s, t) = ext_gcd(&f, &a, &b);
        assert_eq!(g, vec![1, 1]);
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
    }

    #[test]
    fn powmod_matches_repeated_product() {
        let f = Fp::new(3);
        let m = vec![1, 0, 1, 1];
        let x = vec![0, 1];
        let mut acc = vec![1];
        for _ in 0..11 {
            acc = mulmod(&f, &acc, &x, &m);
        }
        assert_eq!(powmod(&f, &x, 11, &m), acc);
    }
}
