//! Bigraded cohomology models for the fixed loci.
//!
//! A [`BigradedSpace`] is a multiset of classes, each with a Hodge type
//! `(p, q)`, a compactly supported degree `d`, an optional perverse degree `k`
//! and the character `±1` of the inversion involution. Spaces are assembled
//! from a handful of building blocks (punctured line, elliptic curve, affine
//! line) with Künneth products, and quotients by inversion are modelled by
//! keeping the invariant classes, which is the intersection cohomology of a
//! space with only quotient singularities.
//!
//! This is the brute-force side of the fixed-locus identities: nothing here
//! uses the closed forms from [`crate::catalog`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genus::Genus;
use crate::poly::{Exponent, LaurentPoly};

/// Character of the inversion involution on a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_parity(self != other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ClassKey {
    p: u32,
    q: u32,
    d: u32,
    k: Option<i64>,
    sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohClass {
    pub p: u32,
    pub q: u32,
    pub d: u32,
    pub k: Option<i64>,
    pub sign: Sign,
    pub mult: u128,
}

impl CohClass {
    fn key(&self) -> ClassKey {
        ClassKey {
            p: self.p,
            q: self.q,
            d: self.d,
            k: self.k,
            sign: self.sign,
        }
    }

    fn from_entry(key: &ClassKey, mult: u128) -> Self {
        CohClass {
            p: key.p,
            q: key.q,
            d: key.d,
            k: key.k,
            sign: key.sign,
            mult,
        }
    }
}

/// How perverse degrees are attached to the classes of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerverseRule {
    /// `k = d`
    EqualsDegree,
    /// `k = d - c`
    DegreeMinus(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigradedSpace {
    classes: BTreeMap<ClassKey, u128>,
    label: String,
}

impl BigradedSpace {
    pub fn empty(label: impl Into<String>) -> Self {
        BigradedSpace {
            classes: BTreeMap::new(),
            label: label.into(),
        }
    }

    /// H*_c of a point.
    pub fn point() -> Self {
        let mut s = BigradedSpace::empty("pt");
        s.insert(CohClass {
            p: 0,
            q: 0,
            d: 0,
            k: None,
            sign: Sign::Plus,
            mult: 1,
        });
        s
    }

    pub fn from_classes(
        label: impl Into<String>,
        classes: impl IntoIterator<Item = CohClass>,
    ) -> Self {
        let mut s = BigradedSpace::empty(label);
        for c in classes {
            s.insert(c);
        }
        s
    }

    /// Adds a class, merging multiplicities on equal keys. Zero-multiplicity
    /// classes are dropped.
    pub fn insert(&mut self, class: CohClass) {
        if class.mult == 0 {
            return;
        }
        let slot = self.classes.entry(class.key()).or_insert(0);
        *slot = slot
            .checked_add(class.mult)
            .expect("class multiplicity overflows u128");
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn classes(&self) -> impl Iterator<Item = CohClass> + '_ {
        self.classes
            .iter()
            .map(|(k, m)| CohClass::from_entry(k, *m))
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Σ mult.
    pub fn total_dimension(&self) -> u128 {
        self.classes.values().sum()
    }

    /// Künneth product: types, degrees and perverse degrees add, signs
    /// multiply, multiplicities multiply. Perverse degrees survive only when
    /// both factors carry them.
    pub fn product(&self, other: &BigradedSpace) -> BigradedSpace {
        let mut out = BigradedSpace::empty(format!("{} x {}", self.label, other.label));
        for a in self.classes() {
            for b in other.classes() {
                out.insert(CohClass {
                    p: a.p + b.p,
                    q: a.q + b.q,
                    d: a.d + b.d,
                    k: a.k.zip(b.k).map(|(x, y)| x + y),
                    sign: a.sign.times(b.sign),
                    mult: a.mult.checked_mul(b.mult).expect("multiplicity overflow"),
                });
            }
        }
        out
    }

    /// n-fold Künneth power; `power(0)` is a point.
    pub fn power(&self, n: u32) -> BigradedSpace {
        (0..n).fold(BigradedSpace::point(), |acc, _| acc.product(self))
    }

    /// Product with H*_c(C^m): shifts `(p, q, d)` by `(m, m, 2m)`.
    pub fn tate_twist(&self, m: u32) -> BigradedSpace {
        let mut out = BigradedSpace::empty(if m == 0 {
            self.label.clone()
        } else {
            format!("{} x C^{m}", self.label)
        });
        for c in self.classes() {
            out.insert(CohClass {
                p: c.p + m,
                q: c.q + m,
                d: c.d + 2 * m,
                ..c
            });
        }
        out
    }

    fn filter_sign(&self, keep: Sign, label: String) -> BigradedSpace {
        BigradedSpace {
            classes: self
                .classes
                .iter()
                .filter(|(k, _)| k.sign == keep)
                .map(|(k, m)| (*k, *m))
                .collect(),
            label,
        }
    }

    /// Classes fixed by the involution; the cohomology of the quotient.
    pub fn invariant_part(&self) -> BigradedSpace {
        self.filter_sign(Sign::Plus, format!("({})/(Z/2)", self.label))
    }

    pub fn anti_invariant_part(&self) -> BigradedSpace {
        self.filter_sign(Sign::Minus, format!("({})^-", self.label))
    }

    pub fn assign_perverse(&self, rule: PerverseRule) -> BigradedSpace {
        let shift = match rule {
            PerverseRule::EqualsDegree => 0,
            PerverseRule::DegreeMinus(c) => c,
        };
        let mut out = BigradedSpace::empty(self.label.clone());
        for c in self.classes() {
            out.insert(CohClass {
                k: Some(i64::from(c.d) - shift),
                ..c
            });
        }
        out
    }

    /// Σ mult·(−1)^d·u^p v^q.
    pub fn e_polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.classes().map(|c| {
            (
                Exponent::new(c.p.into(), c.q.into(), 0),
                signed_mult(c.mult, c.d),
            )
        }))
    }

    /// Σ mult·(−1)^d·u^p v^q q^k; every class must carry a perverse degree.
    pub fn pie_polynomial(&self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for c in self.classes() {
            let k = c.k.ok_or(Error::MissingPerverseDegree {
                p: c.p,
                q: c.q,
                d: c.d,
            })?;
            out.add_term(
                Exponent::new(c.p.into(), c.q.into(), k),
                signed_mult(c.mult, c.d),
            );
        }
        Ok(out)
    }

    /// Diagnostic listing, one row per class.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "classes": self.classes().map(|c| serde_json::json!({
                "p": c.p,
                "q": c.q,
                "d": c.d,
                "k": c.k,
                "sign": c.sign,
                "mult": c.mult.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn signed_mult(mult: u128, degree: u32) -> BigRational {
    let m = BigInt::from(mult);
    BigRational::from_integer(if degree % 2 == 1 { -m } else { m })
}

/// H*_c(C^*): the degree-1 class of type (0,0), negated by inversion, and the
/// degree-2 class of type (1,1).
fn punctured_line() -> BigradedSpace {
    BigradedSpace::from_classes(
        "C*",
        [
            CohClass {
                p: 0,
                q: 0,
                d: 1,
                k: None,
                sign: Sign::Minus,
                mult: 1,
            },
            CohClass {
                p: 1,
                q: 1,
                d: 2,
                k: None,
                sign: Sign::Plus,
                mult: 1,
            },
        ],
    )
}

/// H*(E) of an elliptic curve; inversion acts by −1 on H^1.
fn elliptic_curve() -> BigradedSpace {
    BigradedSpace::from_classes(
        "E",
        [
            CohClass {
                p: 0,
                q: 0,
                d: 0,
                k: None,
                sign: Sign::Plus,
                mult: 1,
            },
            CohClass {
                p: 1,
                q: 0,
                d: 1,
                k: None,
                sign: Sign::Minus,
                mult: 1,
            },
            CohClass {
                p: 0,
                q: 1,
                d: 1,
                k: None,
                sign: Sign::Minus,
                mult: 1,
            },
            CohClass {
                p: 1,
                q: 1,
                d: 2,
                k: None,
                sign: Sign::Plus,
                mult: 1,
            },
        ],
    )
}

/// H*_c((C^*)^n) with the inversion character, as the n-th Künneth power of
/// the punctured line.
///
/// A subset S of the n degree-1 generators contributes a class of type
/// `(|S|, |S|)` in degree `n + |S|` with sign `(−1)^{n−|S|}`.
pub fn torus_cohomology(n: u32) -> BigradedSpace {
    punctured_line().power(n).with_label(format!("(C*)^{n}"))
}

/// H*(A) for an abelian variety of dimension n: type (r, s) with
/// multiplicity C(n,r)·C(n,s) in degree r + s, sign (−1)^{r+s}.
pub fn abelian_variety_cohomology(n: u32) -> BigradedSpace {
    elliptic_curve().power(n).with_label(format!("A^{n}"))
}

/// Cotangent bundle of a (g−1)-dimensional abelian variety modulo inversion:
/// the Dolbeault fixed locus of a nontrivial 2-torsion point.
pub fn dolbeault_fixed_model(g: Genus) -> BigradedSpace {
    let n = g.get() - 1;
    abelian_variety_cohomology(n)
        .tate_twist(n)
        .invariant_part()
        .with_label(format!("T*A^{n}/(Z/2)"))
}

/// (C^*)^{2g−2} modulo inversion: the Betti fixed locus.
pub fn betti_fixed_model(g: Genus) -> BigradedSpace {
    let n = g.two_g_minus_two();
    torus_cohomology(n)
        .invariant_part()
        .with_label(format!("(C*)^{n}/(Z/2)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn class(p: u32, q: u32, d: u32, sign: Sign, mult: u128) -> CohClass {
        CohClass {
            p,
            q,
            d,
            k: None,
            sign,
            mult,
        }
    }

    fn binomial(n: u32, k: u32) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
    }

    #[test]
    fn torus_small_cases() {
        let t0: Vec<_> = torus_cohomology(0).classes().collect();
        assert_eq!(t0, vec![class(0, 0, 0, Sign::Plus, 1)]);

        let t1: Vec<_> = torus_cohomology(1).classes().collect();
        assert_eq!(
            t1,
            vec![
                class(0, 0, 1, Sign::Minus, 1),
                class(1, 1, 2, Sign::Plus, 1)
            ]
        );

        assert_eq!(
            torus_cohomology(2).invariant_part().e_polynomial(),
            p("u^2 v^2 + 1")
        );
        assert_eq!(torus_cohomology(2).e_polynomial(), p("u^2 v^2 - 2 u v + 1"));
    }

    #[test]
    fn torus_matches_subset_enumeration() {
        for n in 0..=10u32 {
            let mut brute = BigradedSpace::empty("subsets");
            for mask in 0u32..(1 << n) {
                let s = mask.count_ones();
                brute.insert(class(s, s, n + s, Sign::from_parity((n - s) % 2 == 1), 1));
            }
            let built = torus_cohomology(n);
            assert_eq!(
                built.classes().collect::<Vec<_>>(),
                brute.classes().collect::<Vec<_>>()
            );
            for c in built.classes() {
                assert_eq!(c.mult, binomial(n, c.p));
            }
        }
    }

    #[test]
    fn abelian_small_cases() {
        assert_eq!(
            abelian_variety_cohomology(0).classes().collect::<Vec<_>>(),
            vec![class(0, 0, 0, Sign::Plus, 1)]
        );
        let a1: Vec<_> = abelian_variety_cohomology(1).classes().collect();
        assert_eq!(a1.len(), 4);
        for expected in [
            class(0, 0, 0, Sign::Plus, 1),
            class(1, 0, 1, Sign::Minus, 1),
            class(0, 1, 1, Sign::Minus, 1),
            class(1, 1, 2, Sign::Plus, 1),
        ] {
            assert!(a1.contains(&expected), "{expected:?}");
        }
        let a2 = abelian_variety_cohomology(2);
        assert_eq!(a2.total_dimension(), 16);
        assert_eq!(a2.invariant_part().total_dimension(), 8);
    }

    #[test]
    fn abelian_multiplicities_are_binomial_products() {
        for n in 0..=7u32 {
            for c in abelian_variety_cohomology(n).classes() {
                assert_eq!(c.mult, binomial(n, c.p) * binomial(n, c.q));
                assert_eq!(c.d, c.p + c.q);
                assert_eq!(c.sign, Sign::from_parity(c.d % 2 == 1));
            }
        }
    }

    #[test]
    fn tate_twist_examples() {
        let line = BigradedSpace::point().tate_twist(1);
        assert_eq!(
            line.classes().collect::<Vec<_>>(),
            vec![class(1, 1, 2, Sign::Plus, 1)]
        );
        let a = abelian_variety_cohomology(2);
        assert_eq!(a.tate_twist(0), a);
        assert_eq!(
            abelian_variety_cohomology(1)
                .tate_twist(1)
                .invariant_part()
                .e_polynomial(),
            p("u v + u^2 v^2")
        );
    }

    #[test]
    fn invariant_part_examples() {
        assert_eq!(
            torus_cohomology(1)
                .invariant_part()
                .classes()
                .collect::<Vec<_>>(),
            vec![class(1, 1, 2, Sign::Plus, 1)]
        );
        let pos = BigradedSpace::point().tate_twist(3);
        assert_eq!(
            pos.invariant_part().classes().collect::<Vec<_>>(),
            pos.classes().collect::<Vec<_>>()
        );
        let inv = abelian_variety_cohomology(1).invariant_part();
        assert_eq!(inv.total_dimension(), 2);
        assert!(inv.classes().all(|c| c.d % 2 == 0));
    }

    #[test]
    fn e_polynomial_examples() {
        assert!(BigradedSpace::point().e_polynomial().is_one());
        let g2 = Genus::new(2).unwrap();
        assert_eq!(betti_fixed_model(g2).e_polynomial(), p("u^2 v^2 + 1"));
    }

    #[test]
    fn perverse_assignment() {
        let g2 = Genus::new(2).unwrap();
        let m = dolbeault_fixed_model(g2).assign_perverse(PerverseRule::EqualsDegree);
        let ks: Vec<_> = m.classes().map(|c| (c.p, c.q, c.d, c.k)).collect();
        assert_eq!(ks, vec![(1, 1, 2, Some(2)), (2, 2, 4, Some(4))]);
        assert_eq!(m.pie_polynomial().unwrap(), p("u v q^2 + u^2 v^2 q^4"));

        let base = dolbeault_fixed_model(g2);
        assert_eq!(
            base.assign_perverse(PerverseRule::DegreeMinus(0)),
            base.assign_perverse(PerverseRule::EqualsDegree)
        );
        assert!(BigradedSpace::empty("0")
            .pie_polynomial()
            .unwrap()
            .is_zero());
        assert_eq!(
            base.pie_polynomial(),
            Err(Error::MissingPerverseDegree { p: 1, q: 1, d: 2 })
        );
    }

    #[test]
    fn fixed_models_g2_g3() {
        let g2 = Genus::new(2).unwrap();
        let g3 = Genus::new(3).unwrap();
        assert_eq!(dolbeault_fixed_model(g2).e_polynomial(), p("u v + u^2 v^2"));
        assert_eq!(
            betti_fixed_model(g3).e_polynomial(),
            p("u^4 v^4 + 6 u^2 v^2 + 1")
        );
        for g in 2..=12 {
            let g = Genus::new(g).unwrap();
            assert!(betti_fixed_model(g).classes().all(|c| c.p == c.q));
            assert_eq!(
                dolbeault_fixed_model(g).total_dimension(),
                1u128 << (2 * g.get() - 3)
            );
        }
    }

    #[test]
    fn json_listing() {
        let j = torus_cohomology(1).to_json();
        assert_eq!(j["classes"].as_array().unwrap().len(), 2);
        assert_eq!(j["classes"][0]["sign"], "-1");
        assert_eq!(j["classes"][1]["d"], 2);
    }

    fn arb_space() -> impl Strategy<Value = BigradedSpace> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..5, any::<bool>(), 1u128..4), 0..5).prop_map(
            |rows| {
                BigradedSpace::from_classes(
                    "rand",
                    rows.into_iter()
                        .map(|(p, q, d, odd, m)| class(p, q, d, Sign::from_parity(odd), m)),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn kunneth(a in arb_space(), b in arb_space()) {
            prop_assert_eq!(a.product(&b).e_polynomial(), &a.e_polynomial() * &b.e_polynomial());
        }

        #[test]
        fn involution_split(a in arb_space(), b in arb_space()) {
            let s = a.product(&b);
            prop_assert_eq!(
                s.invariant_part().total_dimension() + s.anti_invariant_part().total_dimension(),
                s.total_dimension()
            );
        }

        #[test]
        fn pie_at_q_one_is_e(a in arb_space(), c in -3i64..4) {
            let s = a.assign_perverse(PerverseRule::DegreeMinus(c));
            prop_assert_eq!(s.pie_polynomial().unwrap().erase_q(), s.e_polynomial());
        }
    }
}
