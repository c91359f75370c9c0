//! The 2-torsion group Γ = (Z/2)^{2g}, its characters, the Weil pairing, and
//! the two sums over Γ / Γ̂ whose equality is the total mirror identity.
//!
//! Elements and characters are bit vectors of length 2g stored in a `u64`,
//! bit `i` being the `i`-th coordinate in a fixed symplectic basis
//! `e_1..e_g, f_1..f_g` with `w(e_i, f_i) = 1`.

use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::catalog;
use crate::error::{Error, Result};
use crate::genus::{Genus, Side};
use crate::hodge;
use crate::poly::LaurentPoly;

pub const DEFAULT_ENUMERATION_BOUND: u32 = 24;

fn check_bits(g: Genus, bits: u64) -> Result<u64> {
    let len = g.group_rank();
    if len < 64 && bits >> len != 0 {
        return Err(Error::LengthMismatch {
            left: (64 - bits.leading_zeros()) as usize,
            right: len as usize,
        });
    }
    Ok(bits)
}

fn swap_halves(g: Genus, bits: u64) -> u64 {
    let n = g.get();
    let low_mask = (1u64 << n) - 1;
    ((bits & low_mask) << n) | ((bits >> n) & low_mask)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    genus: Genus,
    bits: u64,
}

impl GroupElement {
    pub fn identity(genus: Genus) -> Self {
        GroupElement { genus, bits: 0 }
    }

    pub fn from_bits(genus: Genus, bits: u64) -> Result<Self> {
        Ok(GroupElement {
            genus,
            bits: check_bits(genus, bits)?,
        })
    }

    pub fn from_bools(genus: Genus, coords: &[bool]) -> Result<Self> {
        let len = genus.group_rank() as usize;
        if coords.len() != len {
            return Err(Error::LengthMismatch {
                left: coords.len(),
                right: len,
            });
        }
        let bits = coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        Ok(GroupElement { genus, bits })
    }

    /// The `i`-th basis vector, 0-based: `e_{i+1}` for `i < g`, `f_{i-g+1}` after.
    pub fn basis(genus: Genus, i: u32) -> Result<Self> {
        if i >= genus.group_rank() {
            return Err(Error::LengthMismatch {
                left: i as usize + 1,
                right: genus.group_rank() as usize,
            });
        }
        Ok(GroupElement {
            genus,
            bits: 1 << i,
        })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.genus.group_rank() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_identity(&self) -> bool {
        self.bits == 0
    }

    pub fn try_add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.genus != other.genus {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(GroupElement {
            genus: self.genus,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn coordinate(&self, i: u32) -> bool {
        (self.bits >> i) & 1 == 1
    }
}

/// Panics when the two elements live in groups of different rank; use
/// [`GroupElement::try_add`] to get an error instead.
impl Add for GroupElement {
    type Output = GroupElement;

    fn add(self, rhs: GroupElement) -> GroupElement {
        self.try_add(&rhs)
            .expect("group elements of different genus")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.genus.group_rank() {
            f.write_str(if self.coordinate(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A character of Γ, i.e. a linear functional `x -> Σ k_i x_i mod 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupCharacter {
    genus: Genus,
    bits: u64,
}

impl GroupCharacter {
    pub fn trivial(genus: Genus) -> Self {
        GroupCharacter { genus, bits: 0 }
    }

    pub fn from_bits(genus: Genus, bits: u64) -> Result<Self> {
        Ok(GroupCharacter {
            genus,
            bits: check_bits(genus, bits)?,
        })
    }

    /// The dual basis functional ε_{i+1}.
    pub fn dual_basis(genus: Genus, i: u32) -> Result<Self> {
        let e = GroupElement::basis(genus, i)?;
        Ok(GroupCharacter {
            genus,
            bits: e.bits,
        })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_trivial(&self) -> bool {
        self.bits == 0
    }

    pub fn evaluate(&self, x: &GroupElement) -> Result<u8> {
        if self.genus != x.genus {
            return Err(Error::LengthMismatch {
                left: self.genus.group_rank() as usize,
                right: x.len(),
            });
        }
        Ok(((self.bits & x.bits).count_ones() & 1) as u8)
    }

    pub fn try_add(&self, other: &GroupCharacter) -> Result<GroupCharacter> {
        if self.genus != other.genus {
            return Err(Error::LengthMismatch {
                left: self.genus.group_rank() as usize,
                right: other.genus.group_rank() as usize,
            });
        }
        Ok(GroupCharacter {
            genus: self.genus,
            bits: self.bits ^ other.bits,
        })
    }
}

/// Σ_i a_i b_{g+i} + a_{g+i} b_i mod 2.
pub fn weil_pairing(a: &GroupElement, b: &GroupElement) -> Result<u8> {
    if a.genus != b.genus {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.genus.get();
    let low = (1u64 << n) - 1;
    let cross = ((a.bits & low) & (b.bits >> n)) ^ ((a.bits >> n) & (b.bits & low));
    Ok((cross.count_ones() & 1) as u8)
}

/// w(γ) = w(γ, ·).
pub fn element_to_character(gamma: &GroupElement) -> GroupCharacter {
    GroupCharacter {
        genus: gamma.genus,
        bits: swap_halves(gamma.genus, gamma.bits),
    }
}

/// The unique γ with w(γ, ·) = κ. The Gram matrix of the standard form is
/// its own inverse over F_2, so this is again the half swap.
pub fn character_to_element(kappa: &GroupCharacter) -> GroupElement {
    GroupElement {
        genus: kappa.genus,
        bits: swap_halves(kappa.genus, kappa.bits),
    }
}

/// |Γ| = 2^{2g}.
pub fn group_order(g: Genus) -> u128 {
    1u128 << g.group_rank()
}

/// A polynomial plus `opaque_multiplicity` copies of the unknown
/// T = IE(M(C,SL_2)/Γ), the trivial-isotypic term that has no closed form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpaqueSum {
    pub known: LaurentPoly,
    pub opaque_multiplicity: i64,
}

impl OpaqueSum {
    pub fn known(known: LaurentPoly) -> Self {
        OpaqueSum {
            known,
            opaque_multiplicity: 0,
        }
    }

    pub fn opaque() -> Self {
        OpaqueSum {
            known: LaurentPoly::zero(),
            opaque_multiplicity: 1,
        }
    }

    pub fn scale(&self, count: u128) -> OpaqueSum {
        let c = BigRational::from_integer(BigInt::from(count));
        let m = i64::try_from(count).expect("opaque multiplicity overflows i64");
        OpaqueSum {
            known: self.known.scale(&c),
            opaque_multiplicity: self.opaque_multiplicity * m,
        }
    }

    pub fn difference(&self, other: &OpaqueSum) -> OpaqueSum {
        OpaqueSum {
            known: &self.known - &other.known,
            opaque_multiplicity: self.opaque_multiplicity - other.opaque_multiplicity,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.known.is_zero() && self.opaque_multiplicity == 0
    }
}

impl Add for OpaqueSum {
    type Output = OpaqueSum;

    fn add(self, rhs: OpaqueSum) -> OpaqueSum {
        OpaqueSum {
            known: self.known + rhs.known,
            opaque_multiplicity: self.opaque_multiplicity + rhs.opaque_multiplicity,
        }
    }
}

impl fmt::Display for OpaqueSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*T",
            self.known.to_pretty_string(),
            self.opaque_multiplicity
        )
    }
}

/// One summand `IE(X_γ/Γ)(uv)^{F(γ)}` of the stringy sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementTerm {
    Opaque,
    Known(Arc<LaurentPoly>),
}

/// Where the fixed-locus polynomial of a nontrivial element comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermSource {
    Catalog,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMode {
    ClosedForm,
    /// Iterate over all 2^{2g} elements; refused when 2g exceeds `bound`.
    Enumerate {
        bound: u32,
    },
}

/// Per-element stringy term for the fixed loci of `side`.
///
/// The identity fixes everything, so its quotient is the opaque T; every
/// other element contributes its fixed-locus quotient times `(uv)^{F(γ)}`.
pub fn fixed_locus_term(
    g: Genus,
    side: Side,
    source: TermSource,
) -> impl Fn(&GroupElement) -> ElementTerm + Sync {
    let quotient = match (source, side) {
        (TermSource::Catalog, _) => catalog::ie_fixed_quotient(g, side),
        (TermSource::Oracle, Side::Dolbeault) => hodge::dolbeault_fixed_model(g).e_polynomial(),
        (TermSource::Oracle, Side::Betti) => hodge::betti_fixed_model(g).e_polynomial(),
    };
    let shift = LaurentPoly::uv().pow(catalog::fermionic_shift(g, false));
    let nontrivial = Arc::new(&quotient * &shift);
    move |gamma: &GroupElement| {
        if gamma.is_identity() {
            ElementTerm::Opaque
        } else {
            ElementTerm::Known(Arc::clone(&nontrivial))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationStats {
    pub elements: u64,
    pub opaque_elements: u64,
    /// Number of pairwise-distinct known terms seen.
    pub distinct_terms: usize,
}

#[derive(Default)]
struct Tally {
    elements: u64,
    opaque: u64,
    known: Vec<(Arc<LaurentPoly>, u64)>,
}

impl Tally {
    fn record(&mut self, poly: Arc<LaurentPoly>, count: u64) {
        self.elements += count;
        match self
            .known
            .iter_mut()
            .find(|(p, _)| Arc::ptr_eq(p, &poly) || **p == *poly)
        {
            Some((_, c)) => *c += count,
            None => self.known.push((poly, count)),
        }
    }

    fn push(mut self, term: ElementTerm) -> Self {
        match term {
            ElementTerm::Opaque => {
                self.elements += 1;
                self.opaque += 1;
            }
            ElementTerm::Known(p) => self.record(p, 1),
        }
        self
    }

    fn merge(mut self, other: Tally) -> Self {
        self.elements += other.opaque;
        self.opaque += other.opaque;
        for (p, c) in other.known {
            self.record(p, c);
        }
        self
    }
}

/// Stringy sum Σ_γ term(γ) by full enumeration, in parallel chunks.
pub fn enumerate_stringy<F>(g: Genus, bound: u32, term: &F) -> Result<(OpaqueSum, EnumerationStats)>
where
    F: Fn(&GroupElement) -> ElementTerm + Sync,
{
    let bits = g.group_rank();
    if bits > bound || bits >= 64 {
        return Err(Error::EnumerationBound { bits, bound });
    }
    let tally = (0..1u64 << bits)
        .into_par_iter()
        .fold(Tally::default, |t, b| {
            t.push(term(&GroupElement { genus: g, bits: b }))
        })
        .reduce(Tally::default, Tally::merge);

    let mut sum = OpaqueSum {
        known: LaurentPoly::zero(),
        opaque_multiplicity: i64::try_from(tally.opaque).expect("count fits i64"),
    };
    for (p, c) in &tally.known {
        sum.known += &p.scale(&BigRational::from_integer(BigInt::from(*c)));
    }
    let stats = EnumerationStats {
        elements: tally.elements,
        opaque_elements: tally.opaque,
        distinct_terms: tally.known.len(),
    };
    Ok((sum, stats))
}

/// Stringy sum from one identity term and one representative nontrivial
/// term, using that every nontrivial element of Γ behaves alike for r = 2.
pub fn closed_form_stringy<F>(g: Genus, term: &F) -> OpaqueSum
where
    F: Fn(&GroupElement) -> ElementTerm + Sync,
{
    let as_sum = |t: ElementTerm| match t {
        ElementTerm::Opaque => OpaqueSum::opaque(),
        ElementTerm::Known(p) => OpaqueSum::known((*p).clone()),
    };
    let identity = as_sum(term(&GroupElement::identity(g)));
    let representative = GroupElement::basis(g, 0).expect("g >= 2 has a basis");
    identity + as_sum(term(&representative)).scale(group_order(g) - 1)
}

pub fn stringy_sum_with<F>(g: Genus, mode: SumMode, term: &F) -> Result<OpaqueSum>
where
    F: Fn(&GroupElement) -> ElementTerm + Sync,
{
    match mode {
        SumMode::ClosedForm => Ok(closed_form_stringy(g, term)),
        SumMode::Enumerate { bound } => enumerate_stringy(g, bound, term).map(|(s, _)| s),
    }
}

/// IE_st(M(C,PGL_2)) = Σ_γ IE(M_γ/Γ)(uv)^{F(γ)} with catalog fixed-locus terms.
pub fn stringy_sum(g: Genus, side: Side, mode: SumMode) -> Result<OpaqueSum> {
    stringy_sum_with(g, mode, &fixed_locus_term(g, side, TermSource::Catalog))
}

/// IE(M(C,SL_2)) = Σ_κ IE(M)_κ: the trivial character gives T, the
/// 2^{2g} − 1 others give identical κ-pieces.
pub fn isotypic_sum(g: Genus, side: Side) -> OpaqueSum {
    let kappa = match side {
        Side::Dolbeault => catalog::ie_dol_sl2_kappa(g),
        Side::Betti => catalog::ie_betti_sl2_kappa(g),
    };
    OpaqueSum::opaque() + OpaqueSum::known(kappa).scale(group_order(g) - 1)
}
