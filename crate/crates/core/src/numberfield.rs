//! Arithmetic in `K = Q[x]/(p(x))` on the power basis `1, β, …, β^(n−1)`.
//!
//! Trace and norm are read off multiplication matrices, never from
//! numerical embeddings.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{IntMatrix, RatMatrix};
use crate::polyring::{discriminant, is_irreducible, parse_poly, poly_mod, IntPoly, RatPoly};

#[derive(Debug)]
pub struct NumberField {
    poly: IntPoly,
    degree: usize,
    /// power-basis coordinates of β^k for k < 2n − 1
    powers: Vec<Vec<BigInt>>,
    /// Tr(β^(i+j))
    trace_form: IntMatrix,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// `p` must be monic and irreducible over Q.
    pub fn new(p: IntPoly) -> Result<Arc<Self>> {
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_irreducible(&p) {
            return Err(Error::ReduciblePolynomial(p.to_string()));
        }
        let n = p.degree().expect("monic");
        let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(2 * n);
        let mut cur = vec![BigInt::zero(); n];
        cur[0] = BigInt::one();
        for _ in 0..(2 * n).saturating_sub(1).max(1) {
            powers.push(cur.clone());
            // multiply by β: shift up and fold β^n = −Σ cᵢ βⁱ
            let top = cur[n - 1].clone();
            for i in (1..n).rev() {
                cur[i] = cur[i - 1].clone() - &top * &p.coeffs()[i];
            }
            cur[0] = -(&top * &p.coeffs()[0]);
        }
        let companion = p.companion()?;
        let mut traces = Vec::with_capacity(2 * n);
        let mut cp = IntMatrix::identity(n);
        for _ in 0..(2 * n).saturating_sub(1).max(1) {
            traces.push(cp.trace());
            cp = cp.mul(&companion)?;
        }
        let mut trace_form = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                trace_form[(i, j)] = traces[i + j].clone();
            }
        }
        Ok(Arc::new(NumberField { poly: p, degree: n, powers, trace_form }))
    }

    pub fn parse(s: &str) -> Result<Arc<Self>> {
        let p = parse_poly(s, "x")?.to_integer().ok_or_else(|| Error::Parse("field polynomial must have integer coefficients".into()))?;
        Self::new(p)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant(&self.poly).expect("monic")
    }

    /// `p(0) = ±1`, i.e. β is a unit and companion-type matrices are
    /// torus automorphisms.
    pub fn generator_is_unit(&self) -> bool {
        self.poly.coeff(0).abs().is_one()
    }

    /// Gram matrix of the trace form on the power basis.
    pub fn trace_form(&self) -> &IntMatrix {
        &self.trace_form
    }

    pub(crate) fn mul_coords(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = self.degree;
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x * y;
                for (k, pk) in self.powers[i + j].iter().enumerate() {
                    if !pk.is_zero() {
                        out[k] += &c * BigRational::from_integer(pk.clone());
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `a` on the power basis (column `j` holds
    /// the coordinates of `a·β^j`).
    pub(crate) fn mul_matrix(&self, a: &[BigRational]) -> RatMatrix {
        let n = self.degree;
        let mut m = RatMatrix::zeros(n, n);
        let mut basis = vec![BigRational::zero(); n];
        for j in 0..n {
            basis.iter_mut().for_each(|x| *x = BigRational::zero());
            basis[j] = BigRational::one();
            for (i, v) in self.mul_coords(a, &basis).into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn element(self: &Arc<Self>, coords: Vec<BigRational>) -> Result<FieldElement> {
        if coords.len() != self.degree {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a degree {} field",
                coords.len(),
                self.degree
            )));
        }
        Ok(FieldElement { field: Arc::clone(self), coords })
    }

    pub fn element_from_ints(self: &Arc<Self>, coords: &[i64]) -> Result<FieldElement> {
        self.element(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// `g(β)`, reducing `g` modulo `p`.
    pub fn from_poly(self: &Arc<Self>, g: &RatPoly) -> FieldElement {
        let r = poly_mod(g, &self.poly).expect("p is nonzero");
        let coords = (0..self.degree).map(|i| r.coeff(i)).collect();
        FieldElement { field: Arc::clone(self), coords }
    }

    pub fn from_integer(self: &Arc<Self>, k: BigInt) -> FieldElement {
        self.from_poly(&RatPoly::constant(BigRational::from_integer(k)))
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_integer(BigInt::one())
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.from_integer(BigInt::zero())
    }

    /// The class β of `x`.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.from_poly(&RatPoly::monomial(1))
    }

    /// Parses an element written as a polynomial in `b`, e.g. `(1/2)b^2+3`.
    pub fn parse_element(self: &Arc<Self>, s: &str) -> Result<FieldElement> {
        Ok(self.from_poly(&parse_poly(s, "b")?))
    }
}

/// Element of `K` as rational coordinates on the power basis.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The element as a polynomial of degree `< n` in β.
    pub fn as_poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, coords: Vec<BigRational>) -> FieldElement {
        FieldElement { field: Arc::clone(&self.field), coords }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.mul_coords(&self.coords, &other.coords)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        self.with(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.field.one();
        for _ in 0..k {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let inv = self.multiplication_matrix().inverse()?;
        Ok(self.with(inv.column(0)))
    }

    /// Multiplication by `self` on the power basis.
    pub fn multiplication_matrix(&self) -> RatMatrix {
        self.field.mul_matrix(&self.coords)
    }

    /// `M` with `self·basis_j = Σᵢ M_ij · basis_i`.
    pub fn multiplication_matrix_in(&self, basis: &[FieldElement]) -> Result<RatMatrix> {
        multiplication_matrix(self, basis)
    }

    pub fn trace(&self) -> BigRational {
        self.multiplication_matrix().trace()
    }

    pub fn norm(&self) -> BigRational {
        self.multiplication_matrix().det().expect("square")
    }

    pub fn minimal_polynomial(&self) -> RatPoly {
        // the characteristic polynomial is a power of the minimal one
        let c = self.multiplication_matrix().char_poly().expect("square");
        let g = c.gcd(&c.derivative());
        c.div_rem(&g).expect("g divides c").0.monic()
    }

    pub fn is_integral(&self) -> bool {
        self.minimal_polynomial().to_integer().is_some()
    }

    pub fn is_unit(&self) -> bool {
        self.is_integral() && self.norm().abs().is_one()
    }
}

/// Matrix of multiplication by `a` with respect to `basis`, in the column
/// convention `a·basis_j = Σᵢ M_ij · basis_i`.
pub fn multiplication_matrix(a: &FieldElement, basis: &[FieldElement]) -> Result<RatMatrix> {
    let n = a.field.degree;
    if basis.len() != n {
        return Err(Error::DimensionMismatch(format!("basis of length {} in degree {n}", basis.len())));
    }
    for b in basis {
        a.check(b)?;
    }
    let cols: Vec<Vec<BigRational>> = basis.iter().map(|b| b.coords.clone()).collect();
    let bm = RatMatrix::from_columns(&cols)?;
    let binv = bm.inverse().map_err(|_| Error::DependentBasis)?;
    binv.mul(&a.multiplication_matrix())?.mul(&bm)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_poly().display_var("b"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::resultant;
    use proptest::prelude::*;

    fn ex_field() -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64(&[-1, 7, -23, 1])).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn beta_times_inverse() {
        let k = ex_field();
        let b = k.generator();
        assert_eq!(b.mul(&b.inverse().unwrap()).unwrap(), k.one());
        assert_eq!(k.zero().inverse(), Err(Error::ZeroInverse));
    }

    #[test]
    fn square_in_quadratic_field() {
        let k = NumberField::new(IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        let x = k.parse_element("1+b").unwrap();
        assert_eq!(x.mul(&x).unwrap(), k.element_from_ints(&[3, 2]).unwrap());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let k1 = ex_field();
        let k2 = NumberField::new(IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(k1.generator().mul(&k2.one()), Err(Error::FieldMismatch));
        // same polynomial built twice is the same field
        assert!(ex_field().one().add(&k1.one()).is_ok());
    }

    #[test]
    fn reducible_polynomial_rejected() {
        assert!(matches!(NumberField::new(IntPoly::from_i64(&[-1, 0, 1])), Err(Error::ReduciblePolynomial(_))));
        assert_eq!(NumberField::new(IntPoly::from_i64(&[1, 0, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn companion_is_multiplication_by_beta() {
        let k = ex_field();
        let m = k.generator().multiplication_matrix().to_integer().unwrap();
        assert_eq!(m, k.poly().companion().unwrap());
        let basis: Vec<_> = (0..3).map(|i| k.generator().pow(i)).collect();
        assert_eq!(k.generator().multiplication_matrix_in(&basis).unwrap(), m.to_rational());
        assert_eq!(k.one().multiplication_matrix_in(&basis).unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn multiplication_on_ideal_basis() {
        let k = ex_field();
        let basis = vec![
            k.parse_element("8").unwrap(),
            k.parse_element("b+7").unwrap(),
            k.parse_element("b^2+7").unwrap(),
        ];
        let m = k.generator().multiplication_matrix_in(&basis).unwrap().to_integer().unwrap();
        let expected = IntMatrix::from_i64_rows(&[&[-7, -7, -20], &[8, 7, 0], &[0, 1, 23]]).unwrap();
        assert_eq!(m, expected);
        assert_eq!(m.char_poly().unwrap(), *k.poly());
    }

    #[test]
    fn dependent_basis_rejected() {
        let k = ex_field();
        let basis = vec![k.one(), k.one(), k.generator()];
        assert_eq!(k.generator().multiplication_matrix_in(&basis), Err(Error::DependentBasis));
    }

    #[test]
    fn trace_and_norm() {
        let k = ex_field();
        assert_eq!(k.generator().trace(), q(23, 1));
        assert_eq!(k.generator().norm(), q(1, 1));
        assert_eq!(k.one().trace(), q(3, 1));
        let g = k.parse_element("b+1").unwrap();
        assert_eq!(g.norm(), q(32, 1));
    }

    #[test]
    fn integrality() {
        let k = ex_field();
        assert!(k.parse_element("(1/2)b+1/2").unwrap().is_integral());
        assert!(k.parse_element("(1/4)b^2+3/4").unwrap().is_integral());
        assert!(!k.parse_element("1/2").unwrap().is_integral());
        assert!(k.generator().is_unit());
        assert!(!k.parse_element("b+1").unwrap().is_unit());
    }

    #[test]
    fn minimal_polynomials() {
        let k = ex_field();
        assert_eq!(k.generator().minimal_polynomial(), k.poly().to_rational());
        assert_eq!(k.from_integer(5.into()).minimal_polynomial(), RatPoly::from_i64(&[-5, 1]));
    }

    fn elem(k: &Arc<NumberField>) -> impl Strategy<Value = FieldElement> {
        let k = Arc::clone(k);
        proptest::collection::vec((-9i64..=9, 1i64..=4), 3)
            .prop_map(move |v| k.element(v.into_iter().map(|(a, b)| q(a, b)).collect()).unwrap())
    }

    fn int_elem(k: &Arc<NumberField>) -> impl Strategy<Value = FieldElement> {
        let k = Arc::clone(k);
        proptest::collection::vec(-9i64..=9, 3).prop_map(move |v| k.element_from_ints(&v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn norm_is_multiplicative(a in elem(&ex_field()), b in elem(&ex_field())) {
            prop_assert_eq!(a.mul(&b).unwrap().norm(), a.norm() * b.norm());
            prop_assert_eq!(a.add(&b).unwrap().trace(), a.trace() + b.trace());
        }

        #[test]
        fn norm_is_resultant(g in proptest::collection::vec(-9i64..=9, 1..6)) {
            let k = ex_field();
            let gp = IntPoly::from_i64(&g);
            let a = k.from_poly(&gp.to_rational());
            prop_assert_eq!(a.norm(), BigRational::from_integer(resultant(k.poly(), &gp)));
        }

        #[test]
        fn integral_closure_sampling(a in int_elem(&ex_field()), b in int_elem(&ex_field())) {
            let k = ex_field();
            let h = k.parse_element("(1/2)b+1/2").unwrap();
            let x = a.mul(&h).unwrap();
            let y = b.add(&h).unwrap();
            prop_assert!(x.is_integral() && y.is_integral());
            prop_assert!(x.mul(&y).unwrap().is_integral());
            prop_assert!(x.add(&y).unwrap().is_integral());
        }
    }
}
