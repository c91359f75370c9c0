//! Closed-form polynomials, parametrised by genus.
//!
//! Every formula here is written directly from its closed form; the
//! independent route to the fixed-locus polynomials lives in
//! [`crate::hodge`].
//!
//! The perverse formulas are obtained from the intersection ones under the
//! purity reading `u^a v^b <-> degree a + b`: a piece whose perverse filtration
//! is concentrated in degree `d - c` becomes `q^{-c} * p(uq, vq)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::genus::{Genus, Side};
use crate::poly::{Exponent, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaId {
    IeDolSl2Kappa,
    IeBettiSl2Kappa,
    EBettiSl2KappaOrdinary,
    IeDolFixedQuotient,
    IeBettiFixedQuotient,
    PieDolSl2Kappa,
    PieFixedQuotient,
    FermionicShift,
    TotalDimension,
}

impl FormulaId {
    pub const ALL: [FormulaId; 9] = [
        FormulaId::IeDolSl2Kappa,
        FormulaId::IeBettiSl2Kappa,
        FormulaId::EBettiSl2KappaOrdinary,
        FormulaId::IeDolFixedQuotient,
        FormulaId::IeBettiFixedQuotient,
        FormulaId::PieDolSl2Kappa,
        FormulaId::PieFixedQuotient,
        FormulaId::FermionicShift,
        FormulaId::TotalDimension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::IeDolSl2Kappa => "ie_dol_sl2_kappa",
            FormulaId::IeBettiSl2Kappa => "ie_betti_sl2_kappa",
            FormulaId::EBettiSl2KappaOrdinary => "e_betti_sl2_kappa_ordinary",
            FormulaId::IeDolFixedQuotient => "ie_dol_fixed_quotient",
            FormulaId::IeBettiFixedQuotient => "ie_betti_fixed_quotient",
            FormulaId::PieDolSl2Kappa => "pie_dol_sl2_kappa",
            FormulaId::PieFixedQuotient => "pie_fixed_quotient",
            FormulaId::FermionicShift => "fermionic_shift",
            FormulaId::TotalDimension => "total_dimension",
        }
    }

    /// The statement this formula encodes.
    pub fn provenance(self) -> &'static str {
        match self {
            FormulaId::IeDolSl2Kappa => {
                "IE(M_Dol(C,SL2))_k for a nontrivial character k: \
                 1/2 (uv)^(3g-3) ((u+1)^(g-1)(v+1)^(g-1) + (u-1)^(g-1)(v-1)^(g-1))"
            }
            FormulaId::IeBettiSl2Kappa => {
                "IE(M_B(C,SL2))_k for a nontrivial character k: \
                 1/2 (uv)^(2g-2) ((uv+1)^(2g-2) + (uv-1)^(2g-2))"
            }
            FormulaId::EBettiSl2KappaOrdinary => {
                "ordinary E(M_B(C,SL2))_k for a nontrivial character k, q = uv: \
                 1/2 q^(2g-2) ((q+1)^(2g-2) + (q-1)^(2g-2) - 2)"
            }
            FormulaId::IeDolFixedQuotient => {
                "IE(M_Dol(C,SL2)_y / Gamma), y != 0, a quotient of T*(abelian variety of dim g-1) \
                 by inversion: (uv)^(g-1) 1/2 ((u+1)^(g-1)(v+1)^(g-1) + (u-1)^(g-1)(v-1)^(g-1))"
            }
            FormulaId::IeBettiFixedQuotient => {
                "IE(M_B(C,SL2)_y / Gamma) = IE((C*)^(2g-2) / (Z/2)), y != 0: \
                 1/2 ((uv+1)^(2g-2) + (uv-1)^(2g-2))"
            }
            FormulaId::PieDolSl2Kappa => {
                "PIE(M_Dol(C,SL2))_k, k nontrivial: perverse filtration on IH^d concentrated \
                 in degree d-2g+2, realised as q^(2-2g) IE_k(uq, vq)"
            }
            FormulaId::PieFixedQuotient => {
                "PIE(M_Dol(C,SL2)_y / Gamma), y != 0: perverse filtration concentrated in \
                 degree d, realised as IE(uq, vq)"
            }
            FormulaId::FermionicShift => {
                "F(y) = 1/2 codim M_Dol(C,SL2)_y = 2g-2 for y != 0 (y an involution), 0 for y = 0"
            }
            FormulaId::TotalDimension => "dim M_Dol(C,SL_r) = 2(r^2-1)(g-1)",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().replace('-', "_").to_ascii_lowercase();
        FormulaId::ALL
            .into_iter()
            .find(|id| id.name() == wanted)
            .ok_or_else(|| Error::UnknownFormula(s.to_string()))
    }
}

/// Value of a catalog entry: most are polynomials, two are integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaValue {
    Poly(LaurentPoly),
    Integer(u64),
}

/// Evaluates a catalog entry. `rank` is only read by `total_dimension`; the
/// Fermionic shift is reported for a nontrivial element.
pub fn evaluate(id: FormulaId, g: Genus, rank: u32) -> Result<FormulaValue> {
    Ok(match id {
        FormulaId::IeDolSl2Kappa => FormulaValue::Poly(ie_dol_sl2_kappa(g)),
        FormulaId::IeBettiSl2Kappa => FormulaValue::Poly(ie_betti_sl2_kappa(g)),
        FormulaId::EBettiSl2KappaOrdinary => FormulaValue::Poly(e_betti_sl2_kappa_ordinary(g)),
        FormulaId::IeDolFixedQuotient => FormulaValue::Poly(ie_fixed_quotient(g, Side::Dolbeault)),
        FormulaId::IeBettiFixedQuotient => FormulaValue::Poly(ie_fixed_quotient(g, Side::Betti)),
        FormulaId::PieDolSl2Kappa => FormulaValue::Poly(pie_dol_sl2_kappa(g)),
        FormulaId::PieFixedQuotient => FormulaValue::Poly(pie_fixed_quotient(g)),
        FormulaId::FermionicShift => FormulaValue::Integer(fermionic_shift(g, false).into()),
        FormulaId::TotalDimension => FormulaValue::Integer(total_dimension(rank, g)?),
    })
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn uv_power(n: u32) -> LaurentPoly {
    LaurentPoly::term(1, n.into(), n.into(), 0)
}

fn var_plus(var: &LaurentPoly, c: i64) -> LaurentPoly {
    var + &LaurentPoly::integer(c)
}

/// ½((u+1)^n(v+1)^n + (u−1)^n(v−1)^n)
fn even_part_uv(n: u32) -> LaurentPoly {
    let (u, v) = (LaurentPoly::u(), LaurentPoly::v());
    let plus = &var_plus(&u, 1).pow(n) * &var_plus(&v, 1).pow(n);
    let minus = &var_plus(&u, -1).pow(n) * &var_plus(&v, -1).pow(n);
    (plus + minus).scale(&half())
}

/// ½((uv+1)^n + (uv−1)^n + shift)
fn even_part_q(n: u32, shift: i64) -> LaurentPoly {
    let uv = LaurentPoly::uv();
    let sum = var_plus(&uv, 1).pow(n) + var_plus(&uv, -1).pow(n) + LaurentPoly::integer(shift);
    sum.scale(&half())
}

pub fn ie_dol_sl2_kappa(g: Genus) -> LaurentPoly {
    let n = g.get() - 1;
    &uv_power(3 * n) * &even_part_uv(n)
}

pub fn ie_betti_sl2_kappa(g: Genus) -> LaurentPoly {
    let n = g.two_g_minus_two();
    &uv_power(n) * &even_part_q(n, 0)
}

/// The ordinary (not intersection) E-polynomial of the κ-piece, with the
/// single variable `q` read as `uv`.
pub fn e_betti_sl2_kappa_ordinary(g: Genus) -> LaurentPoly {
    let n = g.two_g_minus_two();
    &uv_power(n) * &even_part_q(n, -2)
}

pub fn ie_fixed_quotient(g: Genus, side: Side) -> LaurentPoly {
    match side {
        Side::Dolbeault => {
            let n = g.get() - 1;
            &uv_power(n) * &even_part_uv(n)
        }
        Side::Betti => even_part_q(g.two_g_minus_two(), 0),
    }
}

/// F(γ): 0 for the identity, half the fixed-locus codimension otherwise.
pub fn fermionic_shift(g: Genus, gamma_is_trivial: bool) -> u32 {
    if gamma_is_trivial {
        0
    } else {
        g.two_g_minus_two()
    }
}

/// 2(r²−1)(g−1).
pub fn total_dimension(rank: u32, g: Genus) -> Result<u64> {
    if rank < 2 {
        return Err(Error::RankTooSmall(rank));
    }
    let r = u64::from(rank);
    Ok(2 * (r * r - 1) * u64::from(g.get() - 1))
}

pub fn pie_dol_sl2_kappa(g: Genus) -> LaurentPoly {
    let shift = -i64::from(g.two_g_minus_two());
    ie_dol_sl2_kappa(g)
        .substitute_scaled(true, true)
        .shift(Exponent::new(0, 0, shift))
}

pub fn pie_fixed_quotient(g: Genus) -> LaurentPoly {
    ie_fixed_quotient(g, Side::Dolbeault).substitute_scaled(true, true)
}
