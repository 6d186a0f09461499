//! The finite lattice of orders between `Z[β]` and the maximal order.
//!
//! Enumeration walks upward from `Z[β]`. If `R ⊊ S` are orders then `S/R`
//! has an element of some prime order `q`, so `S` contains `R[x]` for an
//! `x ∈ (1/q)R` outside `R`; and `q` divides `[S : Z[β]]`, which divides
//! `F` where `disc(p) = F²·Δ`. Adjoining the integral elements of
//! `(1/q)R` for all primes `q | F` therefore reaches every order.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::Result;
use crate::ideals::{FractionalIdeal, Order, ZLattice};
use crate::numberfield::{FieldElement, NumberField};
use crate::polyring::{factorize, square_part, DEFAULT_TRIAL_BOUND};

#[derive(Clone, Debug)]
pub struct OrderLattice {
    field: Arc<NumberField>,
    nodes: Vec<Order>,
    /// `(lower, upper)` cover relations, sorted.
    edges: Vec<(usize, usize)>,
    min: usize,
    max: usize,
}

impl OrderLattice {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Nodes sorted by index over `Z[β]`, then by Hermite basis.
    pub fn nodes(&self) -> &[Order] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Position of `Z[β]`.
    pub fn min_index(&self) -> usize {
        self.min
    }

    /// Position of the maximal order.
    pub fn max_index(&self) -> usize {
        self.max
    }

    pub fn maximal_order(&self) -> &Order {
        &self.nodes[self.max]
    }

    pub fn position(&self, r: &Order) -> Option<usize> {
        self.nodes.iter().position(|x| x == r)
    }

    /// Orders covering node `i`.
    pub fn covers_of(&self, i: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == i).map(|e| e.1).collect()
    }

    /// Orders covered by node `i`.
    pub fn covered_by(&self, i: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.1 == i).map(|e| e.0).collect()
    }

    /// Levels by longest chain from `Z[β]`.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.nodes.len()];
        // nodes are sorted by index, and an edge always raises the index
        for i in 0..self.nodes.len() {
            for j in self.covered_by(i) {
                level[i] = level[i].max(level[j] + 1);
            }
        }
        level
    }

    /// Text rendering, top level first:
    ///
    /// ```text
    /// level 2
    ///   [2] index 4  (1, b, ...)  <- 1
    /// ```
    pub fn render_ascii(&self) -> String {
        let level = self.levels();
        let top = level.iter().copied().max().unwrap_or(0);
        let mut out = String::new();
        for l in (0..=top).rev() {
            let _ = writeln!(out, "level {l}");
            for (i, node) in self.nodes.iter().enumerate().filter(|(i, _)| level[*i] == l) {
                let _ = write!(out, "  [{i}] index {}  {}", node.index(), node);
                let below = self.covered_by(i);
                if !below.is_empty() {
                    let list: Vec<String> = below.iter().map(ToString::to_string).collect();
                    let _ = write!(out, "  <- {}", list.join(" "));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Representatives of the nonzero points of `P^(n−1)(F_q)`: vectors whose
/// first nonzero entry is 1.
fn projective_points(n: usize, q: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = q.pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![0u64; n];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = code % q;
                code /= q;
            }
            out.push(v);
        }
    }
    out
}

/// `R[x] = Σ_{k<n} xᵏ·R` for integral `x`.
fn adjoin(r: &Order, x: &FieldElement) -> Order {
    let n = r.degree();
    let mut acc: ZLattice = r.lattice().clone();
    let mut xk = x.clone();
    for _ in 1..n {
        acc = acc.sum(&r.scale(&xk).expect("x is nonzero")).expect("same field");
        xk = xk.mul(x).expect("same field");
    }
    Order::new(acc).expect("adjoining an integral element to an order gives an order")
}

/// Orders strictly above `r` of the form `R[x]`, `x ∈ (1/q)R` integral.
fn one_step_extensions(r: &Order, primes: &[u64]) -> Vec<Order> {
    let basis = r.basis_elements();
    let n = basis.len();
    let mut out: Vec<Order> = Vec::new();
    for &q in primes {
        let inv_q = BigRational::new(BigInt::one(), BigInt::from(q));
        for v in projective_points(n, q) {
            let mut x = r.field().zero();
            for (c, w) in v.iter().zip(&basis) {
                if *c != 0 {
                    x = x.add(&w.scale(&BigRational::from_integer(BigInt::from(*c)))).expect("same field");
                }
            }
            let x = x.scale(&inv_q);
            if !x.is_integral() {
                continue;
            }
            let s = adjoin(r, &x);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// All orders `R` with `Z[β] ⊆ R ⊆ Z_K`, with their Hasse diagram.
pub fn enumerate_order_lattice(field: &Arc<NumberField>) -> Result<OrderLattice> {
    let (f, _) = square_part(&field.discriminant())?;
    let primes: Vec<u64> = factorize(&f, DEFAULT_TRIAL_BOUND)?
        .into_iter()
        .map(|(p, _)| p.to_u64().expect("prime factors of F fit the search"))
        .collect();
    let start = Order::equation_order(field);
    let mut seen: HashMap<ZLattice, ()> = HashMap::new();
    seen.insert(start.lattice().clone(), ());
    let mut found = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        for s in one_step_extensions(&r, &primes) {
            if seen.insert(s.lattice().clone(), ()).is_none() {
                debug_assert!(f.is_multiple_of(&s.index()));
                found.push(s.clone());
                queue.push_back(s);
            }
        }
    }
    found.sort_by_key(|o| {
        let (_, denom, entries) = o.canonical_key();
        (o.index(), denom, entries)
    });
    let m = found.len();
    let mut incl = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            incl[i][j] = i != j && found[j].contains_lattice(&found[i]).expect("same field");
        }
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if incl[i][j] && !(0..m).any(|k| incl[i][k] && incl[k][j]) {
                edges.push((i, j));
            }
        }
    }
    edges.sort();
    let min = 0;
    let max = (0..m).find(|&j| (0..m).all(|i| i == j || incl[i][j])).expect("the maximal order contains every order");
    Ok(OrderLattice { field: Arc::clone(field), nodes: found, edges, min, max })
}

pub fn maximal_order(field: &Arc<NumberField>) -> Result<Order> {
    let lat = enumerate_order_lattice(field)?;
    Ok(lat.maximal_order().clone())
}

/// `(Z[β] : R)`, the largest `Z[β]`-ideal inside `R` with coefficient ring `R`.
pub fn conductor(r: &Order) -> FractionalIdeal {
    let zb = Order::equation_order(r.field());
    r.inverse_in(&zb).expect("same field")
}

/// Conductors of the orders covering `Z[β]`: exactly the non-invertible
/// prime ideals of `Z[β]`.
pub fn non_invertible_primes(field: &Arc<NumberField>) -> Result<Vec<FractionalIdeal>> {
    let lat = enumerate_order_lattice(field)?;
    Ok(lat.covers_of(lat.min_index()).into_iter().map(|i| conductor(&lat.nodes()[i])).collect())
}

/// Number of elements of `Z[β]/P` when `P ⊆ Z[β]` is a prime ideal, or
/// `None` if `P` is not prime. Used as an independent primality check on
/// conductors: `Z[β]/P` must be a field, i.e. have prime-power size and no
/// ideal strictly between `P` and `Z[β]`.
pub fn residue_field_size(p: &FractionalIdeal) -> Option<BigInt> {
    let zb = ZLattice::equation_order(p.field());
    if !zb.contains_lattice(p).ok()? {
        return None;
    }
    let size = p.covolume().to_integer();
    let fac = factorize(&size, DEFAULT_TRIAL_BOUND).ok()?;
    if fac.len() != 1 {
        return None;
    }
    let q = fac[0].0.to_u64()?;
    // a proper ideal strictly between P and Z[β] is generated by P and one
    // element x ∈ Z[β] \ P with q·x ∈ P; it suffices to try such x
    let n = p.degree();
    let basis = zb.basis_elements();
    let k = p.field();
    for v in projective_points(n, q) {
        let mut x = k.zero();
        for (c, w) in v.iter().zip(&basis) {
            x = x.add(&w.scale(&BigRational::from_integer(BigInt::from(*c)))).ok()?;
        }
        if p.contains(&x).ok()? {
            continue;
        }
        let gens: Vec<FieldElement> = p.basis_elements().into_iter().chain(std::iter::once(x)).collect();
        let i = FractionalIdeal::from_generators(k, &gens, crate::ideals::GeneratorMode::ModuleClosure).ok()?;
        if *i != zb {
            return None;
        }
    }
    Some(size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{coefficient_ring, lattice_from_generators, GeneratorMode};
    use crate::polyring::IntPoly;

    fn field(c: &[i64]) -> Arc<NumberField> {
        NumberField::new(IntPoly::from_i64(c)).unwrap()
    }

    fn order(k: &Arc<NumberField>, s: &[&str]) -> Order {
        let gens: Vec<FieldElement> = s.iter().map(|x| k.parse_element(x).unwrap()).collect();
        Order::new(lattice_from_generators(k, &gens, GeneratorMode::Strict).unwrap()).unwrap()
    }

    #[test]
    fn projective_point_counts() {
        assert_eq!(projective_points(3, 2).len(), 7);
        assert_eq!(projective_points(2, 3).len(), 4);
        assert_eq!(projective_points(4, 3).len(), 40);
    }

    #[test]
    fn quadratic_example_lattice() {
        // β = 17 + 12√2, so √2 = (β − 17)/12
        let k = field(&[1, -34, 1]);
        let lat = enumerate_order_lattice(&k).unwrap();
        assert_eq!(lat.nodes().len(), 6);
        let idx: Vec<i64> = lat.nodes().iter().map(|o| o.index().try_into().unwrap()).collect();
        assert_eq!(idx, vec![1, 2, 3, 4, 6, 12]);
        // Z[k√2] has index 12/k; inclusion is divisibility of indices
        let expected: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)];
        assert_eq!(lat.edges(), expected.as_slice());
        for (pos, kk) in [(5usize, 1i64), (4, 2), (3, 3), (2, 4), (1, 6), (0, 12)] {
            let root2k = k.parse_element(&format!("({kk}/12)b-{}/12", 17 * kk)).unwrap();
            let o = Order::new(lattice_from_generators(&k, &[k.one(), root2k], GeneratorMode::Strict).unwrap()).unwrap();
            assert_eq!(lat.nodes()[pos], o, "Z[{kk}√2]");
        }
        assert_eq!(lat.maximal_order().discriminant(), BigInt::from(8));
    }

    #[test]
    fn squarefree_discriminant_gives_single_node() {
        let k = field(&[-1, 1, 0, 1]);
        let lat = enumerate_order_lattice(&k).unwrap();
        assert_eq!(lat.nodes().len(), 1);
        assert!(lat.edges().is_empty());
        assert!(non_invertible_primes(&k).unwrap().is_empty());
    }

    #[test]
    fn conductor_of_equation_order() {
        let k = field(&[-1, 7, -23, 1]);
        let z = Order::equation_order(&k);
        assert_eq!(*conductor(&z), **z);
    }

    #[test]
    fn cubic_example_conductors() {
        let k = field(&[-1, 7, -23, 1]);
        let lat = enumerate_order_lattice(&k).unwrap();
        for node in lat.nodes() {
            assert_eq!(coefficient_ring(&conductor(node)), *node);
        }
        let primes = non_invertible_primes(&k).unwrap();
        assert!(!primes.is_empty());
        let z = Order::equation_order(&k);
        for p in &primes {
            assert!(residue_field_size(p).is_some(), "{p} is not prime");
            assert!(!crate::ideals::is_invertible(p, &z).unwrap());
        }
        let zk = lat.maximal_order();
        let disc_k = zk.discriminant();
        let idx = zk.index();
        assert_eq!(&idx * &idx * disc_k, k.discriminant());
    }

    #[test]
    fn cubic_example_lattice() {
        let k = field(&[-1, 7, -23, 1]);
        let lat = enumerate_order_lattice(&k).unwrap();
        let expected = [
            order(&k, &["1", "b", "b^2"]),
            order(&k, &["1", "b", "(1/2)b^2+1/2"]),
            order(&k, &["1", "b", "(1/4)b^2+(1/2)b+1/4"]),
            order(&k, &["1", "b", "(1/4)b^2+3/4"]),
            order(&k, &["1", "(1/2)b+1/2", "(1/4)b^2+3/4"]),
            order(&k, &["1", "(1/2)b+1/2", "(1/8)b^2+7/8"]),
        ];
        assert_eq!(lat.nodes(), expected.as_slice());
        assert_eq!(lat.edges(), &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)]);
        assert_eq!((lat.min_index(), lat.max_index()), (0, 5));
        // with denominator 2 the vertex (1, β, (β+1)²/2) would coincide with
        // (1, β, (β²+1)/2); the diagram needs (β+1)²/4
        let halved = lattice_from_generators(
            &k,
            &[k.one(), k.generator(), k.parse_element("(1/2)b^2+b+1/2").unwrap()],
            GeneratorMode::Strict,
        )
        .unwrap();
        assert_eq!(halved, *expected[1].lattice());
        assert_eq!(lat.covers_of(0), vec![1]);
        assert_eq!(non_invertible_primes(&k).unwrap().len(), 1);
    }

    #[test]
    fn ascii_rendering_lists_every_node() {
        let k = field(&[1, -34, 1]);
        let text = enumerate_order_lattice(&k).unwrap().render_ascii();
        assert_eq!(text.lines().filter(|l| l.trim_start().starts_with('[')).count(), 6);
        assert!(text.starts_with("level 3\n  [5] index 12"));
    }
}
