mod common;

use std::sync::Arc;

use bftorus::exactmat::IntMatrix;
use bftorus::ideals::{Order, ZLattice};
use bftorus::numberfield::NumberField;
use bftorus::orders::enumerate_order_lattice;
use bftorus::polyring::{square_part, IntPoly};
use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;

fn divisors(f: i64) -> Vec<i64> {
    (1..=f).filter(|d| f % d == 0).collect()
}

/// Every order between `Z[β]` and `(1/F)Z[β]`, by walking all Hermite
/// bases `H` with pivots dividing `F` and testing `(1/F)·H·Zⁿ`.
fn orders_by_transversal(k: &Arc<NumberField>) -> Vec<Order> {
    let n = k.degree();
    let (f, _) = square_part(&k.discriminant()).unwrap();
    let f = f.to_i64().unwrap();
    let zb = ZLattice::equation_order(k);
    let divs = divisors(f);
    let mut found = Vec::new();
    let mut diag = vec![0usize; n];
    loop {
        let pivots: Vec<i64> = diag.iter().map(|&i| divs[i]).collect();
        // off-diagonal entries of row i range over [0, pivot_i)
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut off = vec![0i64; slots.len()];
        loop {
            let mut h = IntMatrix::zeros(n, n);
            for i in 0..n {
                h[(i, i)] = BigInt::from(pivots[i]);
            }
            for (s, &(i, j)) in slots.iter().enumerate() {
                h[(i, j)] = BigInt::from(off[s]);
            }
            let l = ZLattice::from_parts(k, BigInt::from(f), &h).unwrap();
            if l.contains_lattice(&zb).unwrap() {
                if let Ok(o) = Order::new(l) {
                    if !found.contains(&o) {
                        found.push(o);
                    }
                }
            }
            // odometer over the off-diagonal entries
            let mut s = 0;
            while s < slots.len() {
                off[s] += 1;
                if off[s] < pivots[slots[s].0] {
                    break;
                }
                off[s] = 0;
                s += 1;
            }
            if s == slots.len() {
                break;
            }
        }
        let mut i = 0;
        while i < n {
            diag[i] += 1;
            if diag[i] < divs.len() {
                break;
            }
            diag[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    found
}

fn assert_same_orders(k: &Arc<NumberField>) {
    let lat = enumerate_order_lattice(k).unwrap();
    let oracle = orders_by_transversal(k);
    assert_eq!(oracle.len(), lat.nodes().len(), "field {}", k.poly());
    for o in &oracle {
        assert!(lat.position(o).is_some(), "{o} missing for {}", k.poly());
    }
}

#[test]
fn transversal_oracle_on_example_fields() {
    for c in [[1, -34, 1].as_slice(), &[-1, 7, -23, 1]] {
        assert_same_orders(&NumberField::new(IntPoly::from_i64(c)).unwrap());
    }
}

#[test]
fn transversal_oracle_on_random_fields() {
    let mut checked = 0;
    for a in matrix_corpus(2024, 60) {
        let k = field_of(&a);
        let (f, _) = square_part(&k.discriminant()).unwrap();
        let budget = if k.degree() == 2 { 60 } else if k.degree() == 3 { 12 } else { 4 };
        if f > BigInt::from(budget) {
            continue;
        }
        assert_same_orders(&k);
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} fields were small enough");
}

/// `[Z_K : Z[β]]` from the discriminant alone.
fn quadratic_conductor(disc: &BigInt) -> BigInt {
    let (_, delta) = square_part(disc).unwrap();
    let fundamental = if delta.mod_floor(&BigInt::from(4)) == BigInt::one() { delta } else { delta * 4 };
    let sq = disc / &fundamental;
    let m = sq.sqrt();
    assert_eq!(&m * &m, sq);
    m
}

#[test]
fn quadratic_orders_form_the_divisor_lattice() {
    let mut r = rng(20);
    let mut done = 0;
    while done < 20 {
        let t = r.gen_range(-60i64..=60);
        let s = if r.gen_bool(0.5) { 1 } else { -1 };
        let Ok(k) = NumberField::new(IntPoly::from_i64(&[s, -t, 1])) else { continue };
        let m = quadratic_conductor(&k.discriminant()).to_i64().unwrap();
        let lat = enumerate_order_lattice(&k).unwrap();
        let idx: Vec<i64> = lat.nodes().iter().map(|o| o.index().to_i64().unwrap()).collect();
        let mut want = divisors(m);
        want.sort_by_key(|d| std::cmp::Reverse(*d));
        let mut got = idx.clone();
        got.sort_by_key(|d| std::cmp::Reverse(*d));
        assert_eq!(got, want, "x^2-({t})x+({s})");
        // R_i ⊆ R_j iff [R_i : Z[β]] divides [R_j : Z[β]]; covers are prime steps
        let mut edges = Vec::new();
        for (i, a) in idx.iter().enumerate() {
            for (j, b) in idx.iter().enumerate() {
                if b % a == 0 && a != b && is_prime(b / a) {
                    edges.push((i, j));
                }
            }
        }
        edges.sort();
        assert_eq!(lat.edges(), edges.as_slice(), "x^2-({t})x+({s})");
        for (i, a) in idx.iter().enumerate() {
            for (j, b) in idx.iter().enumerate() {
                let inside = lat.nodes()[j].contains_lattice(&lat.nodes()[i]).unwrap();
                assert_eq!(inside, b % a == 0);
            }
        }
        done += 1;
    }
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn discriminant_scales_with_index() {
    for a in matrix_corpus(7, 30) {
        let k = field_of(&a);
        let lat = enumerate_order_lattice(&k).unwrap();
        for o in lat.nodes() {
            let idx = o.index();
            assert_eq!(o.discriminant() * &idx * &idx, k.discriminant());
        }
        let zk = lat.maximal_order();
        assert!(lat.nodes().iter().all(|o| zk.contains_lattice(o).unwrap()));
        assert!(zk.discriminant().abs() <= k.discriminant().abs());
    }
}
