//! Seeded random corpora shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use bftorus::exactmat::IntMatrix;
use bftorus::ideals::{lattice_from_generators, FractionalIdeal, GeneratorMode};
use bftorus::numberfield::NumberField;
use bftorus::polyring::RatPoly;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows).unwrap()
}

pub fn cubic_a() -> IntMatrix {
    m(&[&[0, 1, 0], &[0, 0, 1], &[1, -7, 23]])
}

pub fn cubic_b() -> IntMatrix {
    m(&[&[0, -1, -11], &[1, 0, -3], &[0, 2, 23]])
}

pub fn cubic_c() -> IntMatrix {
    m(&[&[0, 1, 0], &[1, 0, 4], &[6, -2, 23]])
}

pub fn random_entries(r: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..n).map(|_| (0..n).map(|_| BigInt::from(r.gen_range(lo..=hi))).collect()).collect();
    IntMatrix::from_rows(rows).unwrap()
}

/// `n×n` with entries in `[−6, 6]`, determinant `±1` and irreducible
/// characteristic polynomial, by rejection.
pub fn random_automorphism(r: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    loop {
        let a = random_entries(r, n, -6, 6);
        if a.det().unwrap().abs().is_one() && NumberField::new(a.char_poly().unwrap()).is_ok() {
            return a;
        }
    }
}

/// Dimensions cycle through 2, 3, 4.
pub fn matrix_corpus(seed: u64, count: usize) -> Vec<IntMatrix> {
    let mut r = rng(seed);
    (0..count).map(|i| random_automorphism(&mut r, 2 + i % 3)).collect()
}

pub fn field_of(a: &IntMatrix) -> Arc<NumberField> {
    NumberField::new(a.char_poly().unwrap()).unwrap()
}

/// Random integer polynomial of degree `< n`, not identically zero.
pub fn random_int_poly(r: &mut ChaCha8Rng, n: usize, h: i64) -> RatPoly {
    loop {
        let c: Vec<i64> = (0..n).map(|_| r.gen_range(-h..=h)).collect();
        if c.iter().any(|x| *x != 0) {
            return RatPoly::from_i64(&c);
        }
    }
}

/// Module closure of `{m, a}` for a random integer `m` and a random
/// algebraic integer `a` of `Z[β]`.
pub fn random_ideal(r: &mut ChaCha8Rng, k: &Arc<NumberField>) -> FractionalIdeal {
    loop {
        let m = BigInt::from(r.gen_range(1..=12));
        let c: Vec<i64> = (0..k.degree()).map(|_| r.gen_range(-9..=9)).collect();
        let a = k.element_from_ints(&c).unwrap();
        if a.is_zero() {
            continue;
        }
        let l = lattice_from_generators(k, &[k.from_integer(m), a], GeneratorMode::ModuleClosure).unwrap();
        return FractionalIdeal::new(l).unwrap();
    }
}

/// Product of random elementary matrices; returns `(P, P⁻¹)`.
pub fn random_unimodular(r: &mut ChaCha8Rng, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut q = IntMatrix::identity(n);
    for _ in 0..steps {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n);
        while j == i {
            j = r.gen_range(0..n);
        }
        let c = r.gen_range(-2i64..=2);
        let mut e = IntMatrix::identity(n);
        let mut einv = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(c);
        einv[(i, j)] = BigInt::from(-c);
        p = p.mul(&e).unwrap();
        q = einv.mul(&q).unwrap();
    }
    (p, q)
}

/// 2×2, entries in `[−4, 4]`, determinant ±1, no eigenvalue on the unit circle.
pub fn random_hyperbolic(r: &mut ChaCha8Rng) -> IntMatrix {
    loop {
        let a = random_entries(r, 2, -4, 4);
        let d = a.det().unwrap();
        let t = a.trace();
        let hyperbolic = if d.is_one() {
            t.abs() > BigInt::from(2)
        } else if d == BigInt::from(-1) {
            !t.is_zero()
        } else {
            false
        };
        if hyperbolic {
            return a;
        }
    }
}
