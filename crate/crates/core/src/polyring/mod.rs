//! Univariate polynomials over Z and Q.
//!
//! Coefficients are stored constant term first with no trailing zeros, so
//! structural equality is polynomial equality.

mod factor;
mod irreducible;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;

pub use factor::{factorize, is_probable_prime, square_part, square_part_with_bound, DEFAULT_TRIAL_BOUND};
pub use irreducible::is_irreducible;
pub use parse::parse_poly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Clone + Zero + One + PartialEq> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = T::one();
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }
}

impl<T> Poly<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T>,
{
    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl<'a, T> Add for &'a Poly<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T>,
{
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<'a, T> Sub for &'a Poly<T>
where
    T: Clone + Zero + One + PartialEq + Sub<Output = T>,
{
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a - b
                })
                .collect(),
        )
    }
}

impl<'a, T> Mul for &'a Poly<T>
where
    T: Clone + Zero + One + PartialEq + Add<Output = T> + Mul<Output = T>,
{
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<'a, T> Neg for &'a Poly<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
{
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if !d.is_monic() {
            return None;
        }
        let Some(n) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if n < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * di;
            }
            q[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Companion matrix: multiplication by `x` on the power basis
    /// `1, x, …, x^(n−1)` in the column convention (last column holds `−cᵢ`).
    pub fn companion(&self) -> Result<IntMatrix> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = self.degree().unwrap_or(0);
        let mut m = IntMatrix::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = BigInt::one();
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i].clone();
        }
        Ok(m)
    }

    pub fn display_var(&self, var: &str) -> String {
        self.to_rational().display_var(var)
    }
}

impl RatPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_i64(coeffs).to_rational()
    }

    /// `Some` when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .all(|c| c.is_integer())
            .then(|| IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => RatPoly::zero(),
        }
    }

    /// Division with remainder over Q.
    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= dd) else {
            return Ok((RatPoly::zero(), self.clone()));
        };
        let mut q = vec![BigRational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * di;
            }
            q[k] = c;
        }
        Ok((RatPoly::new(q), RatPoly::new(rem)))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Canonical text form in the variable `var`, e.g. `x^3-23x^2+7x-1`
    /// or `(1/2)x^2+1/2`.
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = c.abs();
            let coef = if a.is_integer() {
                a.to_integer().to_string()
            } else if k == 0 {
                format!("{}/{}", a.numer(), a.denom())
            } else {
                format!("({}/{})", a.numer(), a.denom())
            };
            match k {
                0 => out.push_str(&coef),
                _ => {
                    if !a.is_one() {
                        out.push_str(&coef);
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push('^');
                        out.push_str(&k.to_string());
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

/// Reduction of `g` modulo the monic polynomial `p`: the unique
/// representative of degree `< deg p`.
pub fn poly_mod(g: &RatPoly, p: &IntPoly) -> Result<RatPoly> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(g.div_rem(&p.to_rational())?.1)
}

/// Resultant as the determinant of the Sylvester matrix of `(a, b)`.
///
/// With this convention `Res(a, b) = lc(a)^deg(b) · ∏ b(αᵢ)` over the roots
/// `αᵢ` of `a`; in particular `Res(x − a, x − b) = a − b`, and for monic `p`
/// the value `Res(p, g)` is the norm of `g(β)` in `Q[x]/(p)`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    // n rows of a's coefficients, then m rows of b's, highest degree first
    for r in 0..n {
        for (k, c) in a.coeffs().iter().enumerate() {
            s[(r, r + m - k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.coeffs().iter().enumerate() {
            s[(n + r, r + n - k)] = c.clone();
        }
    }
    s.det().expect("square")
}

/// Discriminant of a monic polynomial: `(−1)^(n(n−1)/2) · Res(p, p′)`.
pub fn discriminant(p: &IntPoly) -> Result<BigInt> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree().unwrap_or(0);
    let r = resultant(p, &p.derivative());
    Ok(if (n * n.saturating_sub(1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn discriminants_of_examples() {
        assert_eq!(discriminant(&IntPoly::from_i64(&[1, -34, 1])).unwrap(), BigInt::from(1152));
        assert_eq!(discriminant(&IntPoly::from_i64(&[-1, 7, -23, 1])).unwrap(), BigInt::from(-21248));
        assert_eq!(discriminant(&IntPoly::from_i64(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        assert_eq!(discriminant(&IntPoly::from_i64(&[1, -34, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn poly_mod_substitutes() {
        let x5 = RatPoly::monomial(5);
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(poly_mod(&x5, &p).unwrap(), RatPoly::from_i64(&[0, 4]));
        assert_eq!(poly_mod(&x5, &IntPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn derivative_of_example() {
        let p = IntPoly::from_i64(&[-1, 7, -23, 1]);
        assert_eq!(p.derivative(), IntPoly::from_i64(&[7, -46, 3]));
    }

    #[test]
    fn resultant_of_linears() {
        // Res(x − a, x − b) = a − b
        let a = IntPoly::from_i64(&[-3, 1]);
        let b = IntPoly::from_i64(&[-10, 1]);
        assert_eq!(resultant(&a, &b), BigInt::from(3 - 10));
    }

    #[test]
    fn display_round_trip() {
        let p = IntPoly::from_i64(&[-1, 7, -23, 1]);
        assert_eq!(p.to_string(), "x^3-23x^2+7x-1");
        let q = RatPoly::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::zero(),
            BigRational::new(1.into(), 2.into()),
        ]);
        assert_eq!(q.to_string(), "(1/2)x^2+1/2");
        assert_eq!(parse_poly(&q.to_string(), "x").unwrap(), q);
        assert_eq!(parse_poly(&p.to_string(), "x").unwrap(), p.to_rational());
    }

    #[test]
    fn exact_monic_division() {
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(p.div_exact_monic(&IntPoly::from_i64(&[1, 1])), Some(IntPoly::from_i64(&[-1, 1])));
        assert_eq!(p.div_exact_monic(&IntPoly::from_i64(&[2, 1])), None);
    }

    proptest! {
        #[test]
        fn quadratic_discriminant_formula(b in -1000i64..=1000, c in -1000i64..=1000) {
            let p = IntPoly::from_i64(&[c, b, 1]);
            prop_assert_eq!(discriminant(&p).unwrap(), BigInt::from(b * b - 4 * c));
        }

        #[test]
        fn discriminant_reassembles(coeffs in proptest::collection::vec(-30i64..=30, 2..5)) {
            let mut c = coeffs.clone();
            c.push(1);
            let d = discriminant(&IntPoly::from_i64(&c)).unwrap();
            prop_assume!(!d.is_zero());
            let (f, delta) = square_part(&d).unwrap();
            prop_assert_eq!(&f * &f * &delta, d);
        }
    }
}
