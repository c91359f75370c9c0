//! Exact sparse Laurent polynomials in `u`, `v`, `q` over arbitrary-precision
//! rationals.
//!
//! A [`LaurentPoly`] is kept in canonical form at all times: a sorted map from
//! [`Exponent`] to a nonzero [`BigRational`]. Two polynomials are equal iff
//! their maps are equal, so `==` is structural.
//!
//! The text format (see [`LaurentPoly::to_canonical_string`]) lists terms in
//! descending exponent order as `c * u^a v^b q^k` joined by ` + ` / ` - `.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent vector of a monomial `u^u v^v q^q`.
///
/// The derived ordering is lexicographic on `(u, v, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent {
    pub u: i64,
    pub v: i64,
    pub q: i64,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { u: 0, v: 0, q: 0 };

    pub const fn new(u: i64, v: i64, q: i64) -> Self {
        Exponent { u, v, q }
    }

    pub fn total_degree(self) -> i64 {
        self.u + self.v + self.q
    }

    fn is_nonnegative(self) -> bool {
        self.u >= 0 && self.v >= 0 && self.q >= 0
    }
}

impl Add for Exponent {
    type Output = Exponent;

    fn add(self, rhs: Exponent) -> Exponent {
        Exponent::new(self.u + rhs.u, self.v + rhs.v, self.q + rhs.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigRational::one(), Exponent::ZERO)
    }

    pub fn constant(c: impl Into<BigRational>) -> Self {
        LaurentPoly::monomial(c.into(), Exponent::ZERO)
    }

    pub fn integer(c: i64) -> Self {
        LaurentPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(coeff: BigRational, exp: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// `c * u^a v^b q^k` with an integer coefficient.
    pub fn term(c: i64, a: i64, b: i64, k: i64) -> Self {
        LaurentPoly::monomial(
            BigRational::from_integer(BigInt::from(c)),
            Exponent::new(a, b, k),
        )
    }

    pub fn u() -> Self {
        LaurentPoly::term(1, 1, 0, 0)
    }

    pub fn v() -> Self {
        LaurentPoly::term(1, 0, 1, 0)
    }

    pub fn q() -> Self {
        LaurentPoly::term(1, 0, 0, 1)
    }

    /// The product `uv`, the Tate class.
    pub fn uv() -> Self {
        LaurentPoly::term(1, 1, 1, 0)
    }

    /// The product `uvq`.
    pub fn uvq() -> Self {
        LaurentPoly::term(1, 1, 1, 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exponent::ZERO).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: Exponent) -> BigRational {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Largest `a + b + k` over the support, `None` for the zero polynomial.
    pub fn max_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.total_degree()).max()
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.is_nonnegative())
    }

    pub fn has_nonnegative_integer_coefficients(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> LaurentPoly {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Multiplies by the monomial `u^a v^b q^k`.
    pub fn shift(&self, by: Exponent) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e + by, c.clone()))
                .collect(),
        }
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Applies an exponent map that is injective on the support.
    fn map_exponents(&self, f: impl Fn(Exponent) -> Exponent) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (f(*e), c.clone())))
    }

    /// `p(u q^{[su]}, v q^{[sv]}, q)`: each `u^a v^b q^c` becomes
    /// `u^a v^b q^{c + a[su] + b[sv]}`.
    pub fn substitute_scaled(&self, scale_u_by_q: bool, scale_v_by_q: bool) -> LaurentPoly {
        let su = i64::from(scale_u_by_q);
        let sv = i64::from(scale_v_by_q);
        self.map_exponents(|e| Exponent::new(e.u, e.v, e.q + su * e.u + sv * e.v))
    }

    /// `(uvq)^dim * p(u, v, 1/(uvq))`, i.e. `u^a v^b q^c` becomes
    /// `u^{dim+a-c} v^{dim+b-c} q^{dim-c}`.
    ///
    /// Applying it twice multiplies by `(uv)^dim`; it is an involution only
    /// for `dim = 0`.
    pub fn rhl_transform(&self, dim: u64) -> LaurentPoly {
        let d = dim as i64;
        self.map_exponents(|e| Exponent::new(d + e.u - e.q, d + e.v - e.q, d - e.q))
    }

    /// Sets `q = 1`, merging terms that differ only in their `q` exponent.
    pub fn erase_q(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.u, e.v, 0), c.clone())),
        )
    }

    pub fn evaluate(
        &self,
        u0: &BigRational,
        v0: &BigRational,
        q0: &BigRational,
    ) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let term = c * rat_pow(u0, e.u, 'u')? * rat_pow(v0, e.v, 'v')? * rat_pow(q0, e.q, 'q')?;
            acc += term;
        }
        Ok(acc)
    }

    pub fn evaluate_int(&self, u0: i64, v0: i64, q0: i64) -> Result<BigRational> {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        self.evaluate(&r(u0), &r(v0), &r(q0))
    }

    /// Every term as `c * u^a v^b q^k`, highest exponent first.
    pub fn to_canonical_string(&self) -> String {
        self.render(|out, coeff, e| {
            out.push_str(&format_rational(coeff));
            out.push_str(&format!(" * u^{} v^{} q^{}", e.u, e.v, e.q));
        })
    }

    /// Human-oriented form: unit coefficients and zero exponents dropped,
    /// e.g. `u^4 v^4 + u^3 v^3`.
    pub fn to_pretty_string(&self) -> String {
        self.render(|out, coeff, e| {
            let mut factors = Vec::new();
            for (name, x) in [('u', e.u), ('v', e.v), ('q', e.q)] {
                match x {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{x}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&format_rational(coeff));
            } else {
                if !coeff.is_one() {
                    out.push_str(&format_rational(coeff));
                    out.push(' ');
                }
                out.push_str(&factors.join(" "));
            }
        })
    }

    /// Shared sign/separator handling; `body` writes the absolute coefficient
    /// and monomial.
    fn render(&self, body: impl Fn(&mut String, &BigRational, &Exponent)) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            body(&mut out, &c.abs(), e);
        }
        out
    }
}

fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn rat_pow(base: &BigRational, exp: i64, var: char) -> Result<BigRational> {
    if exp == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() {
        return if exp < 0 {
            Err(Error::DivisionByZero { var, exponent: exp })
        } else {
            Ok(BigRational::zero())
        };
    }
    let b = if exp < 0 { base.recip() } else { base.clone() };
    let mut n = exp.unsigned_abs();
    let mut result = BigRational::one();
    let mut sq = b;
    while n > 0 {
        if n & 1 == 1 {
            result *= &sq;
        }
        n >>= 1;
        if n > 0 {
            sq = &sq * &sq;
        }
    }
    Ok(result)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(*ea + *eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse()
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_canonical_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reads both the canonical and the pretty format.
///
/// Grammar: `poly := ["-"] term (("+" | "-") term)*`,
/// `term := [rational ["*"]] factor*`, `factor := ("u"|"v"|"q") ["^" int]`.
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut poly = LaurentPoly::zero();
        let mut negative = self.eat('-');
        loop {
            let (exp, coeff) = self.parse_term()?;
            poly.add_term(exp, if negative { -coeff } else { coeff });
            self.skip_ws();
            if self.pos == self.src.len() {
                return Ok(poly);
            }
            negative = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Err(self.err("expected `+` or `-`"));
            };
        }
    }

    fn parse_term(&mut self) -> Result<(Exponent, BigRational)> {
        self.skip_ws();
        let mut coeff = BigRational::one();
        let mut saw_anything = false;
        if let Some(num) = self.digits() {
            let numer: BigInt = num.parse().map_err(|_| self.err("bad integer"))?;
            let mut c = BigRational::from_integer(numer);
            if self.peek() == Some('/') {
                self.pos += 1;
                let den = self
                    .digits()
                    .ok_or_else(|| self.err("expected denominator"))?;
                let den: BigInt = den.parse().map_err(|_| self.err("bad integer"))?;
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                c = BigRational::new(c.to_integer(), den);
            }
            coeff = c;
            saw_anything = true;
            self.eat('*');
        }
        let mut exp = Exponent::ZERO;
        loop {
            self.skip_ws();
            let var = match self.peek() {
                Some(c @ ('u' | 'v' | 'q')) => c,
                _ => break,
            };
            self.pos += 1;
            let mut power = 1i64;
            if self.eat('^') {
                self.skip_ws();
                let neg = self.eat('-');
                self.skip_ws();
                let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                power = d
                    .parse::<i64>()
                    .map_err(|_| self.err("exponent overflow"))?;
                if neg {
                    power = -power;
                }
            }
            match var {
                'u' => exp.u += power,
                'v' => exp.v += power,
                _ => exp.q += power,
            }
            saw_anything = true;
            self.eat('*');
        }
        if !saw_anything {
            return Err(self.err("expected a term"));
        }
        Ok((exp, coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(2))
    }

    #[test]
    fn add_examples() {
        let uv = LaurentPoly::uv();
        assert!((&uv + &(-&uv)).is_zero());
        assert_eq!(p("u^4 v^4") + p("u^3 v^3"), p("u^4 v^4 + u^3 v^3"));

        let plus = (&uv + &LaurentPoly::one()).pow(2).scale(&half());
        let minus = (&uv - &LaurentPoly::one()).pow(2).scale(&half());
        assert_eq!(plus + minus, p("u^2 v^2 + 1"));
    }

    #[test]
    fn mul_examples() {
        let uv = LaurentPoly::uv();
        let one = LaurentPoly::one();
        assert_eq!(uv.pow(3) * (&uv + &one), p("u^4 v^4 + u^3 v^3"));
        let x = p("3/4 u^-2 v q^5 - 7");
        assert_eq!(&x * &one, x);
        assert_eq!((&uv - &one) * (&uv + &one), p("u^2 v^2 - 1"));
    }

    #[test]
    fn pow_examples() {
        let one = LaurentPoly::one();
        let u1 = &LaurentPoly::u() + &one;
        assert!(u1.pow(0).is_one());
        assert_eq!((&LaurentPoly::uv() + &one).pow(2), p("u^2 v^2 + 2 u v + 1"));
        let a = (&LaurentPoly::u() - &one).pow(2) * (&LaurentPoly::v() - &one).pow(2);
        assert_eq!(
            a,
            p("u^2 v^2 - 2 u^2 v - 2 u v^2 + u^2 + v^2 + 4 u v - 2 u - 2 v + 1")
        );
    }

    #[test]
    fn pow_matches_repeated_product() {
        let x = p("u - 2 v q + 1/3");
        let mut naive = LaurentPoly::one();
        for n in 0..9 {
            assert_eq!(x.pow(n), naive);
            naive = &naive * &x;
        }
    }

    #[test]
    fn substitute_scaled_examples() {
        assert_eq!(
            p("u^4 v^4 + u^3 v^3").substitute_scaled(true, true),
            p("u^4 v^4 q^8 + u^3 v^3 q^6")
        );
        assert!(LaurentPoly::one().substitute_scaled(true, true).is_one());
        assert_eq!(LaurentPoly::uv().substitute_scaled(true, false), p("u v q"));
    }

    #[test]
    fn rhl_transform_examples() {
        assert_eq!(
            p("u^3 v^3 q^4 + u^4 v^4 q^6").rhl_transform(6),
            p("u^5 v^5 q^2 + u^4 v^4")
        );
        assert!(LaurentPoly::one().rhl_transform(0).is_one());
        // q-free polynomials are fixed at dim 0.
        let x = p("u^2 - 3 v + 1");
        assert_eq!(x.rhl_transform(0), x);
    }

    #[test]
    fn rhl_transform_matches_substitution_definition() {
        // (uvq)^dim * p(u, v, 1/(uvq)) computed by expanding each q^c as (uvq)^{-c}.
        let x = p("u^3 v^3 q^4 + 2 u^4 v^4 q^6 - u q^-1 + 5");
        let dim = 6;
        let mut expected = LaurentPoly::zero();
        for (e, c) in x.terms() {
            let base = LaurentPoly::monomial(c.clone(), Exponent::new(e.u, e.v, 0));
            let inv = LaurentPoly::term(1, -e.q, -e.q, -e.q);
            expected += &(&base * &inv);
        }
        expected = &expected * &LaurentPoly::uvq().pow(dim);
        assert_eq!(x.rhl_transform(dim as u64), expected);
    }

    #[test]
    fn evaluate_examples() {
        let x = p("u^4 v^4 + u^3 v^3");
        assert_eq!(
            x.evaluate_int(1, 1, 1).unwrap(),
            BigRational::from_integer(2.into())
        );
        assert!(LaurentPoly::zero()
            .evaluate_int(7, -3, 0)
            .unwrap()
            .is_zero());
        assert_eq!(
            p("u^-1").evaluate_int(0, 1, 1),
            Err(Error::DivisionByZero {
                var: 'u',
                exponent: -1
            })
        );
        assert_eq!(
            p("u^-2 + v").evaluate_int(2, 3, 0).unwrap(),
            BigRational::new(BigInt::from(13), BigInt::from(4))
        );
    }

    #[test]
    fn text_formats() {
        let x = p("u^4 v^4 + u^3 v^3");
        assert_eq!(x.to_pretty_string(), "u^4 v^4 + u^3 v^3");
        assert_eq!(x.to_canonical_string(), "1 * u^4 v^4 q^0 + 1 * u^3 v^3 q^0");
        let y = p("-1/2 u^-1 q + 3 - v");
        assert_eq!(
            y.to_canonical_string(),
            "-1 * u^0 v^1 q^0 + 3 * u^0 v^0 q^0 - 1/2 * u^-1 v^0 q^1"
        );
        assert_eq!(y.to_pretty_string(), "-v + 3 - 1/2 u^-1 q");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("0"), LaurentPoly::zero());
        assert_eq!(p("2/4 u"), p("1/2 u"));
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("u +".parse::<LaurentPoly>().is_err());
        assert!("1/0 u".parse::<LaurentPoly>().is_err());
        assert!("x^2".parse::<LaurentPoly>().is_err());
        assert!("u^".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn erase_q_merges_terms() {
        assert_eq!(p("u q^2 + u q^-1 - v q").erase_q(), p("2 u - v"));
    }

    prop_compose! {
        fn arb_poly()(terms in prop::collection::vec(
            ((-3i64..4, -3i64..4, -3i64..4), -5i64..6, 1i64..4),
            0..6,
        )) -> LaurentPoly {
            LaurentPoly::from_terms(terms.into_iter().map(|((a, b, c), n, d)| {
                (Exponent::new(a, b, c), BigRational::new(BigInt::from(n), BigInt::from(d)))
            }))
        }
    }

    proptest! {
        #[test]
        fn canonical_round_trip(x in arb_poly()) {
            let s = x.to_canonical_string();
            let back: LaurentPoly = s.parse().unwrap();
            prop_assert_eq!(back.to_canonical_string(), s);
            prop_assert_eq!(&back, &x);
            let pretty: LaurentPoly = x.to_pretty_string().parse().unwrap();
            prop_assert_eq!(pretty, x);
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn no_stored_zero_coefficients(a in arb_poly(), b in arb_poly()) {
            for x in [&a + &b, &a * &b, &a - &b] {
                prop_assert!(x.terms().all(|(_, c)| !c.is_zero()));
            }
        }

        #[test]
        fn rhl_twice_multiplies_by_uv_power(x in arb_poly(), dim in 0u64..9) {
            let twice = x.rhl_transform(dim).rhl_transform(dim);
            prop_assert_eq!(twice, &x * &LaurentPoly::uv().pow(dim as u32));
        }

        #[test]
        fn scaled_substitution_then_q_one(x in arb_poly()) {
            let s = x.substitute_scaled(true, true);
            prop_assert_eq!(s.erase_q(), x.erase_q());
            let at = |p: &LaurentPoly| p.evaluate_int(2, 3, 1).unwrap();
            prop_assert_eq!(at(&s), at(&x));
        }
    }
}
