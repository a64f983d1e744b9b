use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Axis, P1Point};
use crate::error::{NahmError, Result};

use super::HiggsBundle;

/// Where a ledger entry lives.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    /// A point of the base line `(u:v)`.
    Source(P1Point),
    /// A point of the dual line `(x:y)`.
    Dual(P1Point),
    /// A branch of a spectral curve through `(base, fiber)`.
    Branch { base: P1Point, fiber: P1Point, index: usize },
    /// The points of a spectral curve over a base point of `axis` that lie
    /// off the parabolic section.
    Away { axis: Axis, point: P1Point },
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Source(p) => write!(f, "z={}", p),
            Site::Dual(p) => write!(f, "ξ={}", p),
            Site::Branch { base, fiber, index } => write!(f, "({}, {})#{}", base, fiber, index),
            Site::Away { axis, point } => write!(f, "off-section over {} {}", axis.name(), point),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub site: Site,
    pub weight: BigRational,
    pub multiplicity: u32,
    /// Marks a zero-weight piece that is exactly the quotient along the
    /// divisor at this site, so that it may be deleted.
    pub deletable: bool,
}

impl LedgerEntry {
    pub fn new(site: Site, weight: BigRational, multiplicity: u32) -> Self {
        LedgerEntry { site, weight, multiplicity, deletable: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightLedger {
    pub entries: Vec<LedgerEntry>,
    /// `χ(E(-D))` of the underlying sheaf.
    pub base_chi: i64,
}

impl WeightLedger {
    pub fn new(base_chi: i64, entries: Vec<LedgerEntry>) -> Self {
        WeightLedger { entries, base_chi }
    }

    pub fn weight_sum(&self) -> BigRational {
        self.entries
            .iter()
            .fold(BigRational::zero(), |acc, e| acc + &e.weight * BigRational::from_integer(e.multiplicity.into()))
    }

    pub fn total_multiplicity(&self, site: &Site) -> u32 {
        self.entries.iter().filter(|e| &e.site == site).map(|e| e.multiplicity).sum()
    }

    /// Entries sorted by site then weight, for comparisons.
    pub fn normalized(&self) -> WeightLedger {
        let mut merged: Vec<LedgerEntry> = Vec::new();
        let mut sorted = self.entries.clone();
        sorted.sort_by(|a, b| a.site.cmp(&b.site).then(a.weight.cmp(&b.weight)));
        for e in sorted {
            match merged.last_mut() {
                Some(last) if last.site == e.site && last.weight == e.weight => {
                    last.multiplicity += e.multiplicity;
                    last.deletable &= e.deletable;
                }
                _ => merged.push(e),
            }
        }
        WeightLedger { entries: merged, base_chi: self.base_chi }
    }

    /// Multiset of `(site, weight, multiplicity)` ignoring flags.
    pub fn multiset(&self) -> Vec<(Site, BigRational, u32)> {
        self.normalized().entries.into_iter().map(|e| (e.site, e.weight, e.multiplicity)).collect()
    }

    /// Disjoint union with summed `baseChi`.
    pub fn union(&self, other: &WeightLedger) -> WeightLedger {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        WeightLedger { entries, base_chi: self.base_chi + other.base_chi }
    }

    pub fn relocate(&self, f: impl Fn(&Site) -> Site) -> WeightLedger {
        WeightLedger {
            entries: self.entries.iter().map(|e| LedgerEntry { site: f(&e.site), ..e.clone() }).collect(),
            base_chi: self.base_chi,
        }
    }
}

pub fn parabolic_euler_char(l: &WeightLedger) -> BigRational {
    BigRational::from_integer(BigInt::from(l.base_chi)) + l.weight_sum()
}

/// `deg E + Σ α · dim gr`.
pub fn parabolic_degree(h: &HiggsBundle) -> BigRational {
    let mut total = BigRational::from_integer(BigInt::from(h.degree()));
    for pp in &h.parabolic {
        for (w, m) in pp.weights.iter().zip(pp.multiplicities(h.rank)) {
            total += w * BigRational::from_integer(BigInt::from(m));
        }
    }
    total
}

fn entries_of(h: &HiggsBundle) -> Vec<LedgerEntry> {
    let mut out = Vec::new();
    for pp in &h.parabolic {
        for (w, m) in pp.weights.iter().zip(pp.multiplicities(h.rank)) {
            let mut e = LedgerEntry::new(Site::Source(pp.location.clone()), w.clone(), m as u32);
            e.deletable = w.is_zero();
            out.push(e);
        }
    }
    out
}

/// Ledger of `E(D)` with `D` the reduced parabolic divisor: `baseChi = χ(E)`.
pub fn ledger_of_e_d(h: &HiggsBundle) -> WeightLedger {
    WeightLedger::new(h.degree() + h.rank as i64, entries_of(h))
}

/// Ledger of `E(P)` with parabolic divisor `P + ∞`: `baseChi = χ(E(-∞)) = deg E`,
/// so that its parabolic Euler characteristic is the parabolic degree.
pub fn ledger_of_e_p(h: &HiggsBundle) -> WeightLedger {
    WeightLedger::new(h.degree(), entries_of(h))
}

/// Removes the zero-weight pieces along `e`. The sheaf is twisted down by
/// `e` while `e` leaves the parabolic divisor, so `χ(P(-D))` is unchanged.
pub fn delete_divisor(l: &WeightLedger, e: &[(Site, u32)]) -> Result<WeightLedger> {
    let mut out = l.clone();
    for (site, m) in e {
        let here: Vec<&LedgerEntry> = out.entries.iter().filter(|x| &x.site == site).collect();
        if here.is_empty() {
            continue;
        }
        let ok = here.iter().all(|x| x.weight.is_zero() && x.deletable);
        let total: u32 = here.iter().map(|x| x.multiplicity).sum();
        if !ok {
            return Err(NahmError::Condition(format!(
                "cannot delete along {}: the entries there are not zero-weight quotients",
                site
            )));
        }
        if total != *m {
            return Err(NahmError::Condition(format!(
                "cannot delete along {}: divisor multiplicity {} but zero-weight length {}",
                site, m, total
            )));
        }
        out.entries.retain(|x| &x.site != site);
    }
    Ok(out)
}

/// Adds zero-weight pieces along `e`; inverse of [`delete_divisor`].
pub fn add_divisor(l: &WeightLedger, e: &[(Site, u32)]) -> Result<WeightLedger> {
    let mut out = l.clone();
    for (site, m) in e {
        if out.entries.iter().any(|x| &x.site == site) {
            return Err(NahmError::Condition(format!("cannot add along {}: already in the ledger", site)));
        }
        if *m == 0 {
            continue;
        }
        out.entries.push(LedgerEntry { site: site.clone(), weight: BigRational::zero(), multiplicity: *m, deletable: true });
    }
    Ok(out)
}
