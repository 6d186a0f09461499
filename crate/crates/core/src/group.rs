//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;

/// `Z^free_rank ⊕ Z_{a₁} ⊕ … ⊕ Z_{a_m}` with `a₁ | a₂ | … | a_m` and every
/// `aᵢ ≥ 2`. Two groups are isomorphic iff the values are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Reads a Smith diagonal `d₁ | d₂ | …`: zeros become free summands and
    /// units are dropped.
    pub fn from_smith_diagonal(diag: &[BigInt]) -> Self {
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for d in diag {
            let d = d.abs();
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        debug_assert!(torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        AbelianGroup { free_rank, torsion }
    }

    /// `⊕ Z_{oᵢ}` for arbitrary orders (`0` meaning `Z`), brought to
    /// invariant-factor form.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().collect();
        let mut m = IntMatrix::zeros(orders.len(), orders.len());
        for (i, o) in orders.into_iter().enumerate() {
            m[(i, i)] = o;
        }
        AbelianGroup::from_smith_diagonal(&m.smith_normal_form().diagonal())
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Cardinality, or `None` for infinite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut g = AbelianGroup::from_cyclic_orders(self.torsion.iter().chain(&other.torsion).cloned());
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    pub fn with_free_rank(&self, extra: usize) -> Self {
        AbelianGroup { free_rank: self.free_rank + extra, torsion: self.torsion.clone() }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|a| format!("Z{a}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Accepts the display syntax, e.g. `Z^2+Z2+Z8`, `Z16`, `0`; summands
    /// may come in any order.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(AbelianGroup::trivial());
        }
        let bad = || Error::Parse(format!("bad group summand in {s:?}"));
        let mut free = 0usize;
        let mut orders = Vec::new();
        for part in s.split('+') {
            let rest = part.strip_prefix('Z').ok_or_else(bad)?;
            if rest.is_empty() {
                free += 1;
            } else if let Some(r) = rest.strip_prefix('^') {
                free += r.parse::<usize>().map_err(|_| bad())?;
            } else {
                let a: BigInt = rest.parse().map_err(|_| bad())?;
                if !a.is_positive() {
                    return Err(bad());
                }
                orders.push(a);
            }
        }
        Ok(AbelianGroup::from_cyclic_orders(orders).with_free_rank(free))
    }
}
