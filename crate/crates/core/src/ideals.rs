//! Full-rank lattices in `K`, fractional ideals and orders.
//!
//! A [`ZLattice`] is stored as `(1/d)·B·Zⁿ` where the columns of the integer
//! matrix `B` are power-basis coordinate vectors, `B` is in column Hermite
//! form and `gcd(d, content(B)) = 1`. This representation is unique, so
//! lattice equality is plain value equality.
//!
//! Every lattice operation reduces to linear algebra on these bases:
//! sums and products through Hermite forms of generator matrices,
//! intersections through coordinate duals, colon lattices as
//! intersections of scaled copies, and trace duals through the inverse
//! of the trace Gram matrix.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::debug::debug_asserts_enabled;
use crate::error::{Error, Result};
use crate::exactmat::{hermite_basis_of_span, IntMatrix, RatMatrix};
use crate::group::AbelianGroup;
use crate::numberfield::{FieldElement, NumberField};

/// How [`lattice_from_generators`] interprets its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GeneratorMode {
    /// The Z-span of the generators, which must have rank `n`.
    #[default]
    Strict,
    /// The Z[β]-module generated, i.e. the Z-span of all `βᵏ·g` with `k < n`.
    ModuleClosure,
}

#[derive(Clone, Debug)]
pub struct ZLattice {
    field: Arc<NumberField>,
    denom: BigInt,
    basis: IntMatrix,
}

impl PartialEq for ZLattice {
    fn eq(&self, other: &Self) -> bool {
        self.denom == other.denom && self.basis == other.basis && *self.field == *other.field
    }
}

impl Eq for ZLattice {}

impl Hash for ZLattice {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.denom.hash(state);
        self.basis.hash(state);
    }
}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

impl ZLattice {
    /// Z-span of rational power-basis coordinate vectors.
    pub fn from_rational_columns(field: &Arc<NumberField>, cols: &[Vec<BigRational>]) -> Result<Self> {
        let n = field.degree();
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch(format!("coordinate vectors must have length {n}")));
        }
        let d = cols.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let scaled: Vec<Vec<BigInt>> = cols
            .iter()
            .map(|c| c.iter().map(|x| (x * BigRational::from_integer(d.clone())).to_integer()).collect())
            .collect();
        if scaled.is_empty() {
            return Err(Error::NotFullRank);
        }
        let m = IntMatrix::from_columns(&scaled)?;
        let basis = hermite_basis_of_span(&m).ok_or(Error::NotFullRank)?;
        Ok(Self::normalized(field, d, basis))
    }

    /// `(1/denom)·basis·Zⁿ` for any nonsingular integer `basis`.
    pub fn from_parts(field: &Arc<NumberField>, denom: BigInt, basis: &IntMatrix) -> Result<Self> {
        let n = field.degree();
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::DimensionMismatch(format!("basis must be {n}x{n}")));
        }
        if !denom.is_positive() {
            return Err(Error::DimensionMismatch("denominator must be positive".into()));
        }
        let h = hermite_basis_of_span(basis).ok_or(Error::NotFullRank)?;
        Ok(Self::normalized(field, denom, h))
    }

    fn normalized(field: &Arc<NumberField>, d: BigInt, basis: IntMatrix) -> Self {
        let g = d.gcd(&basis.content());
        let (denom, basis) = if g.is_one() { (d, basis) } else { (&d / &g, basis.map(|x| x / &g)) };
        ZLattice { field: Arc::clone(field), denom, basis }
    }

    fn from_rat_matrix(field: &Arc<NumberField>, m: &RatMatrix) -> Result<Self> {
        Self::from_rational_columns(field, &m.columns())
    }

    /// `Z[β]` itself.
    pub fn equation_order(field: &Arc<NumberField>) -> Self {
        ZLattice { field: Arc::clone(field), denom: BigInt::one(), basis: IntMatrix::identity(field.degree()) }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// Hermite basis `B`; the lattice is spanned by the columns of `B/d`.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `B/d` as a rational matrix.
    pub fn rational_basis(&self) -> RatMatrix {
        let d = BigRational::from_integer(self.denom.clone());
        self.basis.to_rational().map(|x| x / &d)
    }

    pub fn basis_elements(&self) -> Vec<FieldElement> {
        self.rational_basis()
            .columns()
            .into_iter()
            .map(|c| self.field.element(c).expect("column length is n"))
            .collect()
    }

    /// `det(B)/dⁿ`; equals `1/[L : Z[β]]` when `L ⊇ Z[β]` and `[Z[β] : L]`
    /// when `L ⊆ Z[β]`.
    pub fn covolume(&self) -> BigRational {
        let det: BigInt = (0..self.degree()).map(|i| self.basis[(i, i)].clone()).product();
        BigRational::new(det, self.denom.pow(self.degree() as u32))
    }

    /// Coordinates of a power-basis vector with respect to the lattice basis.
    fn solve(&self, v: &[BigRational]) -> Vec<BigRational> {
        // B is upper triangular: back substitution on B·x = d·v
        let n = self.degree();
        let d = BigRational::from_integer(self.denom.clone());
        let mut x = vec![BigRational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = &v[i] * &d;
            for (j, xj) in x.iter().enumerate().skip(i + 1) {
                acc -= xj * BigRational::from_integer(self.basis[(i, j)].clone());
            }
            x[i] = acc / BigRational::from_integer(self.basis[(i, i)].clone());
        }
        x
    }

    pub fn coordinates(&self, a: &FieldElement) -> Result<Vec<BigRational>> {
        same_field(&self.field, a.field())?;
        Ok(self.solve(a.coords()))
    }

    pub fn contains(&self, a: &FieldElement) -> Result<bool> {
        Ok(self.coordinates(a)?.iter().all(|x| x.is_integer()))
    }

    /// `other ⊆ self`.
    pub fn contains_lattice(&self, other: &ZLattice) -> Result<bool> {
        same_field(&self.field, &other.field)?;
        Ok(other.rational_basis().columns().iter().all(|c| self.solve(c).iter().all(|x| x.is_integer())))
    }

    pub fn is_beta_stable(&self) -> bool {
        let beta = self.field.generator();
        self.basis_elements().iter().all(|w| self.contains(&beta.mul(w).expect("same field")).expect("same field"))
    }

    pub fn sum(&self, other: &ZLattice) -> Result<ZLattice> {
        same_field(&self.field, &other.field)?;
        let mut cols = self.rational_basis().columns();
        cols.extend(other.rational_basis().columns());
        Self::from_rational_columns(&self.field, &cols)
    }

    /// Z-span of all products `vᵢ·wⱼ`.
    pub fn product(&self, other: &ZLattice) -> Result<ZLattice> {
        same_field(&self.field, &other.field)?;
        let mut cols = Vec::with_capacity(self.degree() * other.degree());
        let a = self.rational_basis().columns();
        let b = other.rational_basis().columns();
        for v in &a {
            for w in &b {
                cols.push(self.field.mul_coords(v, w));
            }
        }
        Self::from_rational_columns(&self.field, &cols)
    }

    /// `a·L`; `a` must be nonzero.
    pub fn scale(&self, a: &FieldElement) -> Result<ZLattice> {
        same_field(&self.field, a.field())?;
        if a.is_zero() {
            return Err(Error::NotFullRank);
        }
        Self::from_rat_matrix(&self.field, &a.multiplication_matrix().mul(&self.rational_basis())?)
    }

    pub fn scale_rational(&self, q: &BigRational) -> Result<ZLattice> {
        if q.is_zero() {
            return Err(Error::NotFullRank);
        }
        let q = q.abs();
        let d = &self.denom * q.denom();
        Ok(Self::normalized(&self.field, d, self.basis.map(|x| x * q.numer())))
    }

    /// Dual with respect to the coordinate dot product: `{x : x·L ⊆ Z}`.
    fn coordinate_dual(&self) -> ZLattice {
        let inv = self.rational_basis().inverse().expect("lattice bases are nonsingular");
        Self::from_rat_matrix(&self.field, &inv.transpose()).expect("full rank")
    }

    pub fn intersect(&self, other: &ZLattice) -> Result<ZLattice> {
        same_field(&self.field, &other.field)?;
        Ok(self.coordinate_dual().sum(&other.coordinate_dual())?.coordinate_dual())
    }

    /// `(self : other) = {z ∈ K : z·other ⊆ self}`.
    pub fn colon(&self, other: &ZLattice) -> Result<ZLattice> {
        same_field(&self.field, &other.field)?;
        let mut acc: Option<ZLattice> = None;
        for nu in other.basis_elements() {
            let piece = self.scale(&nu.inverse()?)?;
            acc = Some(match acc {
                None => piece,
                Some(l) => l.intersect(&piece)?,
            });
        }
        acc.ok_or(Error::NotFullRank)
    }

    /// `{z ∈ K : Tr(z·y) ∈ Z for all y ∈ L}`.
    pub fn trace_dual_lattice(&self) -> ZLattice {
        let g_inv = self.field.trace_form().to_rational().inverse().expect("separable field");
        let w_inv_t = self.rational_basis().inverse().expect("nonsingular").transpose();
        Self::from_rat_matrix(&self.field, &g_inv.mul(&w_inv_t).expect("square")).expect("full rank")
    }

    /// Gram determinant `det(Tr(wᵢ·wⱼ))` of the basis.
    pub fn discriminant(&self) -> BigRational {
        let w = self.rational_basis();
        let g = self.field.trace_form().to_rational();
        w.transpose().mul(&g).and_then(|m| m.mul(&w)).and_then(|m| m.det()).expect("square")
    }

    /// Sort key: covolume first, then basis entries and denominator.
    pub fn canonical_key(&self) -> (BigRational, BigInt, Vec<BigInt>) {
        (self.covolume(), self.denom.clone(), self.basis.entries().to_vec())
    }
}

impl fmt::Display for ZLattice {
    /// Basis listing such as `(1, b, (1/2)b^2+1/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.basis_elements().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The lattice spanned by `gens` (strict) or the Z[β]-module they generate.
pub fn lattice_from_generators(
    field: &Arc<NumberField>,
    gens: &[FieldElement],
    mode: GeneratorMode,
) -> Result<ZLattice> {
    let mut cols = Vec::new();
    let beta = field.generator();
    for g in gens {
        same_field(field, g.field())?;
        match mode {
            GeneratorMode::Strict => cols.push(g.coords().to_vec()),
            GeneratorMode::ModuleClosure => {
                let mut x = g.clone();
                for _ in 0..field.degree() {
                    cols.push(x.coords().to_vec());
                    x = beta.mul(&x)?;
                }
            }
        }
    }
    ZLattice::from_rational_columns(field, &cols)
}

/// A β-stable lattice, i.e. a fractional Z[β]-ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FractionalIdeal(ZLattice);

impl Deref for FractionalIdeal {
    type Target = ZLattice;
    fn deref(&self) -> &ZLattice {
        &self.0
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<ZLattice> for FractionalIdeal {
    type Error = Error;
    fn try_from(l: ZLattice) -> Result<Self> {
        FractionalIdeal::new(l)
    }
}

impl FractionalIdeal {
    pub fn new(l: ZLattice) -> Result<Self> {
        if l.is_beta_stable() {
            Ok(FractionalIdeal(l))
        } else {
            Err(Error::NotAnIdeal)
        }
    }

    pub fn from_generators(field: &Arc<NumberField>, gens: &[FieldElement], mode: GeneratorMode) -> Result<Self> {
        Self::new(lattice_from_generators(field, gens, mode)?)
    }

    /// `α·R`.
    pub fn principal(alpha: &FieldElement, r: &Order) -> Result<Self> {
        Ok(FractionalIdeal(r.lattice().scale(alpha)?))
    }

    pub fn lattice(&self) -> &ZLattice {
        &self.0
    }

    pub fn into_lattice(self) -> ZLattice {
        self.0
    }

    pub fn scale(&self, a: &FieldElement) -> Result<FractionalIdeal> {
        Ok(FractionalIdeal(self.0.scale(a)?))
    }

    /// `(R : I)`.
    pub fn inverse_in(&self, r: &Order) -> Result<FractionalIdeal> {
        Ok(FractionalIdeal(r.colon(self)?))
    }
}

/// A β-stable lattice that is a ring with 1; always contains `Z[β]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order(FractionalIdeal);

impl Deref for Order {
    type Target = FractionalIdeal;
    fn deref(&self) -> &FractionalIdeal {
        &self.0
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<ZLattice> for Order {
    type Error = Error;
    fn try_from(l: ZLattice) -> Result<Self> {
        Order::new(l)
    }
}

impl Order {
    pub fn new(l: ZLattice) -> Result<Self> {
        let ideal = FractionalIdeal::new(l)?;
        if !ideal.contains(&ideal.field().one())? {
            return Err(Error::NotAnOrder("does not contain 1"));
        }
        if ideal.product(&ideal)? != ideal.0 {
            return Err(Error::NotAnOrder("not closed under multiplication"));
        }
        Ok(Order(ideal))
    }

    /// `Z[β]`.
    pub fn equation_order(field: &Arc<NumberField>) -> Self {
        Order(FractionalIdeal(ZLattice::equation_order(field)))
    }

    pub fn ideal(&self) -> &FractionalIdeal {
        &self.0
    }

    /// `[R : Z[β]]`.
    pub fn index(&self) -> BigInt {
        self.covolume().recip().to_integer()
    }

    /// Discriminant of the order, `disc(p)/[R : Z[β]]²`.
    pub fn discriminant(&self) -> BigInt {
        ZLattice::discriminant(self).to_integer()
    }
}

/// `I·J`.
pub fn product(i: &FractionalIdeal, j: &FractionalIdeal) -> Result<FractionalIdeal> {
    Ok(FractionalIdeal(i.0.product(j)?))
}

/// `I + J`.
pub fn sum(i: &FractionalIdeal, j: &FractionalIdeal) -> Result<FractionalIdeal> {
    Ok(FractionalIdeal(i.0.sum(j)?))
}

/// `I ∩ J`.
pub fn intersect(i: &FractionalIdeal, j: &FractionalIdeal) -> Result<FractionalIdeal> {
    Ok(FractionalIdeal(i.0.intersect(j)?))
}

/// `(M : N) = {z ∈ K : z·N ⊆ M}`.
pub fn colon(m: &ZLattice, n: &ZLattice) -> Result<ZLattice> {
    m.colon(n)
}

/// `C(I) = (I : I)`.
pub fn coefficient_ring(i: &FractionalIdeal) -> Order {
    let c = i.colon(i).expect("same field");
    Order::new(c).expect("the multiplier ring of an ideal is an order")
}

fn ensure_module_over(i: &FractionalIdeal, r: &Order) -> Result<()> {
    if i.product(r)? == i.0 {
        Ok(())
    } else {
        Err(Error::NotAModule)
    }
}

/// `I·(R : I) = R`. Requires `R ⊆ C(I)`.
pub fn is_invertible(i: &FractionalIdeal, r: &Order) -> Result<bool> {
    ensure_module_over(i, r)?;
    let inv = r.colon(i)?;
    let answer = i.product(&inv)? == r.0 .0;
    if debug_asserts_enabled() {
        let via_ring = coefficient_ring(i) == *r && r.colon(&inv)? == i.0;
        let inv_ideal = FractionalIdeal::new(inv).expect("colon of ideals is an ideal");
        let via_inverse = coefficient_ring(&inv_ideal) == *r;
        assert_eq!(answer, via_ring, "invertibility disagrees with C(I) = R and divisoriality");
        assert_eq!(answer, via_inverse, "invertibility disagrees with C(I^-1) = R");
    }
    Ok(answer)
}

/// `(R : (R : I)) = I`. Requires `R ⊆ C(I)`.
pub fn is_divisorial(i: &FractionalIdeal, r: &Order) -> Result<bool> {
    ensure_module_over(i, r)?;
    Ok(r.colon(&r.colon(i)?)? == i.0)
}

/// `I* = {z ∈ K : Tr(z·y) ∈ Z for all y ∈ I}`.
pub fn trace_dual(i: &FractionalIdeal) -> FractionalIdeal {
    let dual = FractionalIdeal(i.trace_dual_lattice());
    if debug_asserts_enabled() {
        let dp = i.field().from_poly(&i.field().poly().derivative().to_rational());
        let lhs = dual.scale(&dp).expect("p' (β) is nonzero");
        let rhs = ZLattice::equation_order(i.field()).colon(i).expect("same field");
        assert_eq!(*lhs, rhs, "p'(β)·I* differs from (Z[β] : I)");
    }
    dual
}

/// `I/J` for `J ⊆ I`, via the Smith form of the basis change.
pub fn quotient_group(i: &ZLattice, j: &ZLattice) -> Result<AbelianGroup> {
    same_field(&i.field, &j.field)?;
    let cols: Vec<Vec<BigRational>> = j.rational_basis().columns().iter().map(|c| i.solve(c)).collect();
    let x = RatMatrix::from_columns(&cols)?.to_integer().ok_or(Error::NotASublattice)?;
    Ok(AbelianGroup::from_smith_diagonal(&x.smith_normal_form().diagonal()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::IntPoly;
    use proptest::prelude::*;

    fn field() -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64(&[-1, 7, -23, 1])).unwrap()
    }

    fn elems(k: &Arc<NumberField>, s: &[&str]) -> Vec<FieldElement> {
        s.iter().map(|x| k.parse_element(x).unwrap()).collect()
    }

    fn lat(k: &Arc<NumberField>, s: &[&str]) -> ZLattice {
        lattice_from_generators(k, &elems(k, s), GeneratorMode::Strict).unwrap()
    }

    fn ideal(k: &Arc<NumberField>, s: &[&str]) -> FractionalIdeal {
        FractionalIdeal::new(lat(k, s)).unwrap()
    }

    fn ideal_i(k: &Arc<NumberField>) -> FractionalIdeal {
        ideal(k, &["8", "b+7", "b^2+7"])
    }

    fn ideal_j(k: &Arc<NumberField>) -> FractionalIdeal {
        ideal(k, &["2", "b+1", "b^2+1"])
    }

    fn ring_r(k: &Arc<NumberField>) -> Order {
        Order::new(lat(k, &["1", "b", "(1/2)b^2+1/2"])).unwrap()
    }

    fn zb(k: &Arc<NumberField>) -> Order {
        Order::equation_order(k)
    }

    #[test]
    fn generators_of_equation_order() {
        let k = field();
        let l = lat(&k, &["1", "b", "b^2"]);
        assert_eq!(l.denom(), &BigInt::one());
        assert_eq!(l.basis(), &IntMatrix::identity(3));
        assert_eq!(l, *zb(&k).lattice());
    }

    #[test]
    fn example_ideals_have_expected_bases() {
        let k = field();
        let i = ideal_i(&k);
        let expected = IntMatrix::from_i64_rows(&[&[8, 7, 7], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(i.basis(), &expected);
        let j = ideal_j(&k);
        let expected = IntMatrix::from_i64_rows(&[&[2, 1, 1], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(j.basis(), &expected);
    }

    #[test]
    fn strict_mode_rejects_rank_deficiency() {
        let k = field();
        let gens = elems(&k, &["2", "b+1"]);
        assert_eq!(lattice_from_generators(&k, &gens, GeneratorMode::Strict), Err(Error::NotFullRank));
        // the module they generate is J
        let l = lattice_from_generators(&k, &gens, GeneratorMode::ModuleClosure).unwrap();
        assert_eq!(l, *ideal_j(&k).lattice());
    }

    #[test]
    fn non_stable_lattice_is_not_an_ideal() {
        let k = field();
        assert_eq!(FractionalIdeal::new(lat(&k, &["2", "b", "b^2"])), Err(Error::NotAnIdeal));
        assert!(matches!(Order::new(lat(&k, &["2", "b", "b^2"])), Err(Error::NotAnIdeal)));
        assert_eq!(Order::new(ideal_i(&k).into_lattice()), Err(Error::NotAnOrder("does not contain 1")));
    }

    #[test]
    fn inverses_match_listed_bases() {
        // the listed inverses are taken in the coefficient ring R
        let k = field();
        let r = ring_r(&k);
        let i_inv = r.colon(&ideal_i(&k)).unwrap();
        assert_eq!(i_inv, lat(&k, &["1", "(1/2)b+1/2", "(1/16)b^2+(1/8)b+9/16"]));
        let j_inv = r.colon(&ideal_j(&k)).unwrap();
        assert_eq!(j_inv, lat(&k, &["1", "(1/2)b-1/2", "(1/4)b^2+(1/2)b+1/4"]));
        // over Z[β] the inverse of I is smaller
        let z = zb(&k);
        let zi = z.colon(&ideal_i(&k)).unwrap();
        assert_eq!(zi, lat(&k, &["1", "b", "(1/8)b^2+(1/4)b+1/8"]));
        assert!(i_inv.contains_lattice(&zi).unwrap() && i_inv != zi);
    }

    #[test]
    fn coefficient_rings_of_example_ideals() {
        let k = field();
        let r = ring_r(&k);
        assert_eq!(coefficient_ring(&ideal_i(&k)), r);
        assert_eq!(coefficient_ring(&ideal_j(&k)), r);
        assert_eq!(coefficient_ring(&zb(&k)), zb(&k));
        let i_inv = ideal_i(&k).inverse_in(&r).unwrap();
        assert_eq!(coefficient_ring(&i_inv), r);
        // C(J⁻¹) = J⁻¹, an order strictly above R
        let j_inv = ideal_j(&k).inverse_in(&r).unwrap();
        let c = coefficient_ring(&j_inv);
        assert_eq!(*c.lattice(), *j_inv.lattice());
        assert!(c.contains_lattice(&r).unwrap() && c != r);
    }

    #[test]
    fn invertibility_of_example_ideals() {
        crate::debug::set_debug_asserts(Some(true));
        let k = field();
        let r = ring_r(&k);
        assert!(is_invertible(&ideal_i(&k), &r).unwrap());
        assert!(!is_invertible(&ideal_j(&k), &r).unwrap());
        let alpha = k.parse_element("b^2+3b-5").unwrap();
        assert!(is_invertible(&FractionalIdeal::principal(&alpha, &r).unwrap(), &r).unwrap());
        // R is not contained in C(I) when R is too big
        let big = coefficient_ring(&ideal_j(&k).inverse_in(&r).unwrap());
        assert_eq!(is_invertible(&ideal_i(&k), &big), Err(Error::NotAModule));
    }

    #[test]
    fn colon_and_product_identities() {
        let k = field();
        let z = zb(&k);
        let r = ring_r(&k);
        let conductor = z.colon(&r).unwrap();
        // I·(Z[β] : I) = (Z[β] : C(I)) for both ideals
        for i in [ideal_i(&k), ideal_j(&k)] {
            let inv = i.inverse_in(&z).unwrap();
            assert_eq!(*product(&i, &inv).unwrap(), conductor);
        }
        let i = ideal_i(&k);
        assert_eq!(*product(&i, &i.inverse_in(&r).unwrap()).unwrap(), *r.lattice());
        let j = ideal_j(&k);
        let jj = product(&j, &j.inverse_in(&r).unwrap()).unwrap();
        assert!(r.contains_lattice(&jj).unwrap());
        assert_ne!(*jj, *r.lattice());
        assert_eq!(*product(&i, &z).unwrap(), *i.lattice());
    }

    #[test]
    fn lattice_algebra() {
        let k = field();
        let i = ideal_i(&k);
        let j = ideal_j(&k);
        let s = sum(&i, &j).unwrap();
        let m = intersect(&i, &j).unwrap();
        assert!(s.contains_lattice(&i).unwrap() && s.contains_lattice(&j).unwrap());
        assert!(i.contains_lattice(&m).unwrap() && j.contains_lattice(&m).unwrap());
        // I ⊆ J here, so the sum is J and the intersection is I
        assert_eq!(*s, *j.lattice());
        assert_eq!(*m, *i.lattice());
        let c = i.colon(&i).unwrap();
        assert!(c.contains_lattice(&zb(&k)).unwrap());
    }

    #[test]
    fn trace_dual_of_equation_order() {
        crate::debug::set_debug_asserts(Some(true));
        let k = field();
        let z = zb(&k);
        let dual = trace_dual(&z);
        // p(x)/(x−β) = x² + (β−23)x + (β² − 23β + 7)
        let dp = k.parse_element("3b^2-46b+7").unwrap();
        let bs = elems(&k, &["b^2-23b+7", "b-23", "1"]);
        let dp_inv = dp.inverse().unwrap();
        let expected: Vec<FieldElement> = bs.iter().map(|b| b.mul(&dp_inv).unwrap()).collect();
        assert_eq!(*dual, lattice_from_generators(&k, &expected, GeneratorMode::Strict).unwrap());
        for (i, bi) in expected.iter().enumerate() {
            for j in 0..3 {
                let t = bi.mul(&k.generator().pow(j as u32)).unwrap().trace();
                assert_eq!(t, BigRational::from_integer(BigInt::from((i == j) as i64)));
            }
        }
    }

    #[test]
    fn double_dual_is_identity() {
        let k = field();
        let i = ideal_i(&k);
        assert_eq!(trace_dual(&trace_dual(&i)), i);
    }

    #[test]
    fn quotient_groups() {
        let k = field();
        let z = zb(&k);
        assert_eq!(quotient_group(&z, &z).unwrap(), AbelianGroup::trivial());
        let five = z.scale_rational(&BigRational::from_integer(5.into())).unwrap();
        assert_eq!(quotient_group(&z, &five).unwrap().to_string(), "Z5+Z5+Z5");
        assert_eq!(quotient_group(&five, &z), Err(Error::NotASublattice));
        let bm1 = k.parse_element("b-1").unwrap();
        assert_eq!(quotient_group(&z, &z.scale(&bm1).unwrap()).unwrap().to_string(), "Z16");
        let i = ideal_i(&k);
        assert_eq!(quotient_group(&i, &i.scale(&bm1).unwrap()).unwrap().order(), Some(BigInt::from(16)));
    }

    #[test]
    fn order_invariants() {
        let k = field();
        assert_eq!(zb(&k).index(), BigInt::one());
        assert_eq!(zb(&k).discriminant(), BigInt::from(-21248));
        assert_eq!(ring_r(&k).index(), BigInt::from(2));
        assert_eq!(ring_r(&k).discriminant(), BigInt::from(-21248 / 4));
    }

    #[test]
    fn mixed_fields() {
        let k = field();
        let k2 = NumberField::new(IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(zb(&k).sum(&ZLattice::equation_order(&k2)), Err(Error::FieldMismatch));
    }

    #[test]
    fn display_lists_basis() {
        let k = field();
        assert_eq!(ring_r(&k).to_string(), "(1, b, (1/2)b^2+1/2)");
    }

    fn small_field() -> impl Strategy<Value = Arc<NumberField>> {
        // cubic and quartic unit-constant polynomials with non-squarefree
        // discriminants show up often enough in this box
        (proptest::collection::vec(-6i64..=6, 2..=3), prop_oneof![Just(1i64), Just(-1i64)]).prop_filter_map(
            "irreducible",
            |(mid, c0)| {
                let mut c = vec![c0];
                c.extend(mid);
                c.push(1);
                NumberField::new(IntPoly::from_i64(&c)).ok()
            },
        )
    }

    fn random_ideal() -> impl Strategy<Value = FractionalIdeal> {
        (small_field(), 1i64..=12, proptest::collection::vec(-8i64..=8, 4)).prop_map(|(k, m, g)| {
            let n = k.degree();
            let a = k.element_from_ints(&g[..n]).unwrap();
            let gens = vec![k.from_integer(m.into()), a];
            FractionalIdeal::from_generators(&k, &gens, GeneratorMode::ModuleClosure).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn index_equals_norm(i in random_ideal(), g in proptest::collection::vec(-6i64..=6, 4)) {
            let k = Arc::clone(i.field());
            let alpha = k.element_from_ints(&g[..k.degree()]).unwrap();
            prop_assume!(!alpha.is_zero());
            let q = quotient_group(&i, &i.scale(&alpha).unwrap()).unwrap();
            prop_assert_eq!(BigRational::from_integer(q.order().unwrap()), alpha.norm().abs());
        }

        #[test]
        fn unit_factors_do_not_change_quotients(i in random_ideal(), g in proptest::collection::vec(-6i64..=6, 4), e in 1u32..4) {
            let k = Arc::clone(i.field());
            let lambda = k.element_from_ints(&g[..k.degree()]).unwrap();
            prop_assume!(!lambda.is_zero());
            // β is a unit of Z[β] ⊆ C(I)
            let alpha = k.generator().pow(e).mul(&lambda).unwrap();
            prop_assert_eq!(
                quotient_group(&i, &i.scale(&alpha).unwrap()).unwrap(),
                quotient_group(&i, &i.scale(&lambda).unwrap()).unwrap()
            );
        }

        #[test]
        fn dual_identity(i in random_ideal()) {
            let k = Arc::clone(i.field());
            let dp = k.from_poly(&k.poly().derivative().to_rational());
            let lhs = trace_dual(&i).scale(&dp).unwrap();
            prop_assert_eq!(lhs.lattice(), &ZLattice::equation_order(&k).colon(&i).unwrap());
            prop_assert_eq!(trace_dual(&trace_dual(&i)), i);
        }

        #[test]
        fn ideals_are_divisorial_over_equation_order(i in random_ideal()) {
            let z = Order::equation_order(i.field());
            prop_assert!(is_divisorial(&i, &z).unwrap());
        }

        #[test]
        fn colon_chain(i in random_ideal()) {
            let z = Order::equation_order(i.field());
            let inv = FractionalIdeal::new(z.colon(&i).unwrap()).unwrap();
            let ii = product(&i, &inv).unwrap();
            let lhs = z.colon(&ii).unwrap();
            let c_inv = coefficient_ring(&inv);
            let c_i = coefficient_ring(&i);
            prop_assert_eq!(&lhs, c_inv.lattice());
            prop_assert_eq!(c_inv, c_i);
        }

        #[test]
        fn endpoint_torsion(i in random_ideal(), g in proptest::collection::vec(-4i64..=4, 4)) {
            let r = coefficient_ring(&i);
            // α drawn from R: an integer combination of R's basis
            let basis = r.basis_elements();
            let mut alpha = i.field().zero();
            for (c, w) in g.iter().zip(&basis) {
                alpha = alpha.add(&w.scale(&BigRational::from_integer((*c).into()))).unwrap();
            }
            prop_assume!(!alpha.is_zero());
            let qi = quotient_group(&i, &i.scale(&alpha).unwrap()).unwrap();
            let qr = quotient_group(&r, &r.scale(&alpha).unwrap()).unwrap();
            let full = |q: &AbelianGroup, n: usize| {
                let mut t = vec![BigInt::one(); n - q.torsion().len()];
                t.extend(q.torsion().iter().cloned());
                t
            };
            let n = i.degree();
            let (ti, tr) = (full(&qi, n), full(&qr, n));
            prop_assert_eq!(&ti[0], &tr[0]);
            prop_assert_eq!(&ti[n - 1], &tr[n - 1]);
        }

        #[test]
        fn canonical_form_is_unique(i in random_ideal(), u in proptest::collection::vec(-3i64..=3, 3)) {
            // re-derive the lattice from a scrambled basis
            let n = i.degree();
            let mut t = IntMatrix::identity(n);
            for (s, &c) in u.iter().enumerate().take(n - 1) {
                t[(s, s + 1)] = BigInt::from(c);
            }
            let mut scrambled = i.basis().mul(&t).unwrap();
            scrambled.swap_cols(0, n - 1);
            let again = ZLattice::from_parts(i.field(), i.denom().clone(), &scrambled).unwrap();
            prop_assert_eq!(&again, i.lattice());
        }
    }
}
