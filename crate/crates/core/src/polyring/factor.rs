//! Integer factorization: trial division, then Pollard–Brent rho.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Rho iterations per attempt before switching polynomial constant.
const RHO_ITERATIONS: u64 = 1 << 22;
const RHO_ATTEMPTS: u64 = 8;

const MR_BASES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller–Rabin with fixed bases. The first 13 bases make the test
/// deterministic below 3.3·10²⁴.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, c: u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let m = 128u64;
    let mut y = BigInt::from(2);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut iters = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        iters += r;
        if iters > RHO_ITERATIONS {
            return None;
        }
    }
    if g == *n {
        // backtrack one step at a time
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn split(n: &BigInt) -> Result<Vec<BigInt>> {
    if n.is_one() {
        return Ok(Vec::new());
    }
    if is_probable_prime(n) {
        return Ok(vec![n.clone()]);
    }
    let r = n.sqrt();
    if &r * &r == *n {
        let mut f = split(&r)?;
        f.extend(f.clone());
        return Ok(f);
    }
    for c in 1..=RHO_ATTEMPTS {
        if let Some(d) = pollard_brent(n, c) {
            let mut f = split(&d)?;
            f.extend(split(&(n / &d))?);
            return Ok(f);
        }
    }
    Err(Error::FactorizationIncomplete(n.clone()))
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
/// `n = 0` is rejected.
pub fn factorize(n: &BigInt, trial_bound: u64) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::FactorizationIncomplete(n.clone()));
    }
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut d = 2u64;
    while d <= trial_bound {
        let db = BigInt::from(d);
        if &db * &db > m {
            break;
        }
        let mut e = 0;
        while (&m % &db).is_zero() {
            m /= &db;
            e += 1;
        }
        if e > 0 {
            push(db, e, &mut out);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let small_enough = m.to_u64().is_some_and(|v| v <= trial_bound.saturating_mul(trial_bound));
        let rest = if small_enough { vec![m] } else { split(&m)? };
        for p in rest {
            push(p, 1, &mut out);
        }
    }
    out.sort();
    Ok(out)
}

/// Writes `d = F²·Δ` with `Δ` square-free and `F > 0` maximal.
pub fn square_part(d: &BigInt) -> Result<(BigInt, BigInt)> {
    square_part_with_bound(d, DEFAULT_TRIAL_BOUND)
}

pub fn square_part_with_bound(d: &BigInt, trial_bound: u64) -> Result<(BigInt, BigInt)> {
    let mut f = BigInt::one();
    let mut delta = if d.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factorize(d, trial_bound)? {
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            delta *= p;
        }
    }
    Ok((f, delta))
}

/// All positive divisors of `|n|`, ascending.
pub(crate) fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n, DEFAULT_TRIAL_BOUND)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}
