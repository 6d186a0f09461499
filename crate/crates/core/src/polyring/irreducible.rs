//! Exact irreducibility over Q for monic integer polynomials.
//!
//! Distinct-degree factorization modulo small primes bounds the degrees a
//! rational factor could have. Any degree that survives the sieve is settled
//! by an exhaustive Kronecker search: a monic factor of degree `d` is fixed
//! by its values at `d` integer points, and each value must divide the
//! value of `p` there.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::divisors;
use super::{discriminant, IntPoly};

const SIEVE_PRIMES: [u64; 30] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113,
];

/// True iff the monic integer polynomial `p` is irreducible over Q.
/// Non-monic input and constants return `false`.
pub fn is_irreducible(p: &IntPoly) -> bool {
    if !p.is_monic() {
        return false;
    }
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    if discriminant(p).map(|d| d.is_zero()).unwrap_or(true) {
        // repeated factor
        return false;
    }
    let candidates = sieve_degrees(p, n);
    for d in candidates {
        if has_monic_factor_of_degree(p, d) {
            return false;
        }
    }
    true
}

/// Degrees `1..=n/2` compatible with the factorization pattern modulo every
/// sieve prime at which `p` stays square-free.
fn sieve_degrees(p: &IntPoly, n: usize) -> BTreeSet<usize> {
    let mut possible: BTreeSet<usize> = (1..=n / 2).collect();
    for &ell in &SIEVE_PRIMES {
        if possible.is_empty() {
            break;
        }
        let f = reduce_mod(p, ell);
        if !is_squarefree_mod(&f, ell) {
            continue;
        }
        let degs = ddf_degrees(f, ell);
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for d in degs {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        possible.retain(|d| sums.contains(d));
    }
    possible
}

type ModPoly = Vec<u64>;

fn reduce_mod(p: &IntPoly, ell: u64) -> ModPoly {
    let m = BigInt::from(ell);
    let mut v: ModPoly = p.coeffs().iter().map(|c| c.mod_floor(&m).to_u64().expect("small")).collect();
    trim(&mut v);
    v
}

fn trim(v: &mut ModPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, ell: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(ell));
    e.x.mod_floor(&BigInt::from(ell)).to_u64().expect("small")
}

fn make_monic(v: &mut ModPoly, ell: u64) {
    if let Some(&l) = v.last() {
        let inv = inv_mod(l, ell);
        for c in v.iter_mut() {
            *c = *c * inv % ell;
        }
    }
}

fn rem(a: &ModPoly, b: &ModPoly, ell: u64) -> ModPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().expect("nonzero divisor"), ell);
    while r.len() > db {
        let lead = *r.last().unwrap() * inv % ell;
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + ell - lead * bc % ell) % ell;
        }
        trim(&mut r);
    }
    r
}

fn mulmod(a: &ModPoly, b: &ModPoly, m: &ModPoly, ell: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % ell;
        }
    }
    trim(&mut out);
    rem(&out, m, ell)
}

fn powmod(a: &ModPoly, e: u64, m: &ModPoly, ell: u64) -> ModPoly {
    let mut result: ModPoly = vec![1];
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, m, ell);
        }
        base = mulmod(&base, &base, m, ell);
        e >>= 1;
    }
    result
}

fn gcd(a: &ModPoly, b: &ModPoly, ell: u64) -> ModPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, ell);
        a = b;
        b = r;
    }
    make_monic(&mut a, ell);
    a
}

fn sub(a: &ModPoly, b: &ModPoly, ell: u64) -> ModPoly {
    let n = a.len().max(b.len());
    let mut out: ModPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + ell - b.get(i).copied().unwrap_or(0)) % ell)
        .collect();
    trim(&mut out);
    out
}

fn divide(a: &ModPoly, b: &ModPoly, ell: u64) -> ModPoly {
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), ell);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    while r.len() > db {
        let lead = *r.last().unwrap() * inv % ell;
        let shift = r.len() - 1 - db;
        q[shift] = lead;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + ell - lead * bc % ell) % ell;
        }
        trim(&mut r);
    }
    trim(&mut q);
    q
}

fn is_squarefree_mod(f: &ModPoly, ell: u64) -> bool {
    if f.len() < 2 {
        return false;
    }
    let df: ModPoly = {
        let mut d: ModPoly = f.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % ell) * c % ell).collect();
        trim(&mut d);
        d
    };
    if df.is_empty() {
        return false;
    }
    gcd(f, &df, ell).len() == 1
}

/// Degrees of the irreducible factors of a square-free monic `f` over F_ell.
fn ddf_degrees(mut f: ModPoly, ell: u64) -> Vec<usize> {
    make_monic(&mut f, ell);
    let mut degs = Vec::new();
    let mut h = rem(&vec![0, 1], &f, ell);
    let mut d = 1;
    while f.len() - 1 >= 2 * d {
        h = powmod(&h, ell, &f, ell);
        let g = gcd(&sub(&h, &vec![0, 1], ell), &f, ell);
        if g.len() > 1 {
            let k = (g.len() - 1) / d;
            degs.extend(std::iter::repeat(d).take(k));
            f = divide(&f, &g, ell);
            h = rem(&h, &f, ell);
        }
        d += 1;
    }
    if f.len() > 1 {
        degs.push(f.len() - 1);
    }
    degs
}

/// Exhaustive search for a monic integer factor of degree `d` (1 ≤ d < deg p).
fn has_monic_factor_of_degree(p: &IntPoly, d: usize) -> bool {
    // nodes: d integers with p(a) ≠ 0 and few divisors
    let mut values: Vec<(BigInt, BigInt)> = Vec::new();
    for a in -12i64..=12 {
        let a = BigInt::from(a);
        let v = p.eval(&a);
        if v.is_zero() {
            // integer root gives a linear factor; deg p ≥ 2 here
            return true;
        }
        values.push((a, v));
    }
    let mut pool: Vec<(usize, BigInt, Vec<BigInt>)> = values
        .into_iter()
        .filter_map(|(a, v)| divisors(&v).ok().map(|ds| (ds.len(), a, ds)))
        .collect();
    pool.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.abs().cmp(&y.1.abs())));
    let nodes: Vec<(BigInt, Vec<BigInt>)> = pool
        .into_iter()
        .take(d)
        .map(|(_, a, divs)| {
            let signed: Vec<BigInt> = divs.iter().flat_map(|x| [x.clone(), -x.clone()]).collect();
            (a, signed)
        })
        .collect();
    assert!(nodes.len() == d, "too few factorable interpolation nodes");
    let xs: Vec<BigInt> = nodes.iter().map(|(a, _)| a.clone()).collect();
    // search over r(aᵢ) = q(aᵢ) − aᵢ^d, pruning on integrality of divided differences
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    search(p, d, &xs, &nodes, &mut table)
}

fn search(
    p: &IntPoly,
    d: usize,
    xs: &[BigInt],
    nodes: &[(BigInt, Vec<BigInt>)],
    table: &mut Vec<Vec<BigInt>>,
) -> bool {
    let i = table.len();
    if i == d {
        let q = newton_to_monic(d, xs, table);
        return p.div_exact_monic(&q).is_some();
    }
    let xi = &xs[i];
    let xi_d = xi.pow(d as u32);
    for v in &nodes[i].1 {
        // row i of the divided-difference table: f[xᵢ], f[xᵢ₋₁, xᵢ], …
        let mut row = Vec::with_capacity(i + 1);
        row.push(v - &xi_d);
        let mut ok = true;
        for k in 1..=i {
            let num = &row[k - 1] - &table[i - 1][k - 1];
            let den = xi - &xs[i - k];
            if !(&num % &den).is_zero() {
                ok = false;
                break;
            }
            row.push(num / den);
        }
        if !ok {
            continue;
        }
        table.push(row);
        if search(p, d, xs, nodes, table) {
            return true;
        }
        table.pop();
    }
    false
}

/// `x^d + r(x)` where `r` has the Newton coefficients `table[k][k]`.
fn newton_to_monic(d: usize, xs: &[BigInt], table: &[Vec<BigInt>]) -> IntPoly {
    let mut r = IntPoly::zero();
    let mut basis = IntPoly::one();
    for k in 0..d {
        r = &r + &(&basis * &IntPoly::constant(table[k][k].clone()));
        basis = &basis * &IntPoly::new(vec![-xs[k].clone(), BigInt::one()]);
    }
    &r + &IntPoly::monomial(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn example_polynomials() {
        assert!(is_irreducible(&p(&[-1, 7, -23, 1])));
        assert!(is_irreducible(&p(&[1, -34, 1])));
        assert!(!is_irreducible(&p(&[-1, 0, 1])));
        // x⁴ − 7x³ − 7x + 1: no ±1 roots; a quadratic split would need
        // a² + 7a ∓ 2 = 0 for an integer a, and 57, 41 are not squares
        assert!(is_irreducible(&p(&[1, -7, 0, -7, 1])));
    }

    #[test]
    fn products_are_reducible() {
        let a = p(&[1, 1, 1]);
        let b = p(&[3, 0, 1]);
        assert!(!is_irreducible(&(&a * &b)));
        let c = p(&[-2, 0, 0, 1]);
        assert!(!is_irreducible(&(&c * &p(&[5, 1, 0, 1]))));
        // x⁴ + 1 is irreducible but reducible mod every prime
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])));
        // Swinnerton-Dyer style: (x² − 2)(x² − 3) is reducible
        assert!(!is_irreducible(&(&p(&[-2, 0, 1]) * &p(&[-3, 0, 1]))));
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(!is_irreducible(&p(&[5])));
        assert!(is_irreducible(&p(&[5, 1])));
        assert!(!is_irreducible(&p(&[1, 2, 1])));
        assert!(!is_irreducible(&p(&[1, 0, 2])));
    }

    /// Brute-force oracle for monic quartics/cubics/quadratics: rational
    /// roots, then quadratic × quadratic splits by divisor pairs of c₀.
    fn brute_reducible(c: &[i64]) -> bool {
        let n = c.len() - 1;
        let poly = IntPoly::from_i64(c);
        let c0 = c[0];
        if c0 == 0 {
            return true;
        }
        for r in 1..=c0.abs() {
            if c0 % r == 0 {
                for root in [r, -r] {
                    if poly.eval(&BigInt::from(root)).is_zero() {
                        return true;
                    }
                }
            }
        }
        if n == 4 {
            // (x² + a x + b)(x² + (c₃ − a) x + e), b e = c₀
            for b in 1..=c0.abs() {
                if c0 % b != 0 {
                    continue;
                }
                for bs in [b, -b] {
                    let e = c0 / bs;
                    for a in -200i64..=200 {
                        let f = IntPoly::from_i64(&[bs, a, 1]);
                        let g = IntPoly::from_i64(&[e, c[3] - a, 1]);
                        if &f * &g == poly {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn agrees_with_brute_force(coeffs in proptest::collection::vec(-50i64..=50, 2..=4)) {
            let mut c = coeffs.clone();
            c.push(1);
            let poly = IntPoly::from_i64(&c);
            prop_assert_eq!(is_irreducible(&poly), !brute_reducible(&c));
        }

        #[test]
        fn products_of_random_factors_detected(
            a in proptest::collection::vec(-9i64..=9, 1..=3),
            b in proptest::collection::vec(-9i64..=9, 1..=3),
        ) {
            let mut fa = a.clone();
            fa.push(1);
            let mut fb = b.clone();
            fb.push(1);
            let prod = &IntPoly::from_i64(&fa) * &IntPoly::from_i64(&fb);
            prop_assert!(!is_irreducible(&prod));
        }
    }
}
