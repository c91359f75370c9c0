//! Identity checks. Each check returns a [`VerificationReport`] whose
//! `difference` is zero exactly when the check passes.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::catalog::{self, FormulaId};
use crate::error::{Error, Result};
use crate::gamma::{self, SumMode, TermSource};
use crate::genus::{Genus, Side};
use crate::hodge;
use crate::poly::{Exponent, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    TmsKappa,
    TmsTotal,
    OrdinaryFailure,
    PerverseKappa,
    Q1Specialization,
    /// RHL symmetry of the per-κ perverse polynomial; expected to fail.
    RhlKappa,
    /// RHL symmetry of an arbitrary polynomial.
    RhlSymmetry,
}

impl Identity {
    /// The identities a sweep runs by default, in report order.
    pub const SWEEP: [Identity; 6] = [
        Identity::TmsKappa,
        Identity::TmsTotal,
        Identity::OrdinaryFailure,
        Identity::PerverseKappa,
        Identity::Q1Specialization,
        Identity::RhlKappa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::TmsKappa => "tms-kappa",
            Identity::TmsTotal => "tms-total",
            Identity::OrdinaryFailure => "ordinary-failure",
            Identity::PerverseKappa => "perverse-kappa",
            Identity::Q1Specialization => "q1-specialization",
            Identity::RhlKappa => "rhl-kappa",
            Identity::RhlSymmetry => "rhl-symmetry",
        }
    }

    /// Whether a correct run reports `passed = true`. Only the per-κ RHL
    /// check is an observed negative.
    pub fn expected_pass(self) -> bool {
        !matches!(self, Identity::RhlKappa)
    }

    /// Whether the check is run once per side or has a fixed side.
    pub fn per_side(self) -> bool {
        matches!(self, Identity::TmsKappa | Identity::TmsTotal)
    }

    fn provenance(self) -> &'static str {
        match self {
            Identity::TmsKappa => {
                "IE(M(C,SL2))_k = IE(M(C,SL2)_y/Gamma)(uv)^F(y), y = w(k), k nontrivial"
            }
            Identity::TmsTotal => "IE(M(C,SL2)) = IE_st(M(C,PGL2)) = sum over y of IE(M_y/Gamma)(uv)^F(y)",
            Identity::OrdinaryFailure => {
                "ordinary E(M_B(C,SL2))_k differs from E(M_B(C,SL2)_y/Gamma)q^F(y) by exactly q^(2g-2), q = uv"
            }
            Identity::PerverseKappa => {
                "PIE(M_Dol(C,SL2))_k = PIE(M_Dol(C,SL2)_y/Gamma)(uvq)^F(y), k nontrivial"
            }
            Identity::Q1Specialization => "PIE(...; u, v, 1) = IE(...; u, v) for both perverse polynomials",
            Identity::RhlKappa => {
                "PIE_k(u,v,q) = (uvq)^dim PIE_k(u,v,1/(uvq)), dim = 2(r^2-1)(g-1), tested on one k-piece"
            }
            Identity::RhlSymmetry => "p(u,v,q) = (uvq)^dim p(u,v,1/(uvq))",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().replace('_', "-").to_ascii_lowercase();
        Identity::SWEEP
            .into_iter()
            .chain([Identity::RhlSymmetry])
            .find(|id| id.name() == wanted)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: Identity,
    pub genus: Option<u32>,
    pub side: Option<Side>,
    pub passed: bool,
    pub difference: LaurentPoly,
    /// Left-hand side as computed; not part of the JSON record.
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    /// Only set by the ordinary-failure check.
    pub gap: Option<LaurentPoly>,
    pub detail: Option<String>,
    pub elapsed: Duration,
    pub provenance: String,
}

impl VerificationReport {
    fn new(
        identity: Identity,
        genus: Option<Genus>,
        side: Option<Side>,
        lhs: LaurentPoly,
        rhs: LaurentPoly,
        difference: LaurentPoly,
        started: Instant,
    ) -> Self {
        VerificationReport {
            identity,
            genus: genus.map(Genus::get),
            side,
            passed: difference.is_zero(),
            difference,
            lhs,
            rhs,
            gap: None,
            detail: None,
            elapsed: started.elapsed(),
            provenance: identity.provenance().to_string(),
        }
    }

    pub fn matches_expectation(&self) -> bool {
        self.passed == self.identity.expected_pass()
    }

    pub fn to_record(&self, include_timing: bool) -> ReportRecord {
        ReportRecord {
            identity: self.identity.name().to_string(),
            genus: self.genus,
            side: self.side,
            passed: self.passed,
            difference: self.difference.to_canonical_string(),
            elapsed_ms: if include_timing {
                self.elapsed.as_secs_f64() * 1000.0
            } else {
                0.0
            },
            provenance: self.provenance.clone(),
            gap: self.gap.as_ref().map(LaurentPoly::to_canonical_string),
            detail: self.detail.clone(),
        }
    }
}

/// JSON shape of a report. Field order is fixed, so serialisation is
/// byte-stable for equal inputs (with timing disabled).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub identity: String,
    pub genus: Option<u32>,
    pub side: Option<Side>,
    pub passed: bool,
    pub difference: String,
    pub elapsed_ms: f64,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn uv_power(n: u32) -> LaurentPoly {
    LaurentPoly::uv().pow(n)
}

/// Catalog κ-piece against the oracle's fixed-locus model times (uv)^{F(γ)}.
pub fn check_tms_kappa(g: Genus, side: Side) -> VerificationReport {
    let started = Instant::now();
    let lhs = match side {
        Side::Dolbeault => catalog::ie_dol_sl2_kappa(g),
        Side::Betti => catalog::ie_betti_sl2_kappa(g),
    };
    let model = match side {
        Side::Dolbeault => hodge::dolbeault_fixed_model(g),
        Side::Betti => hodge::betti_fixed_model(g),
    };
    let rhs = &model.e_polynomial() * &uv_power(catalog::fermionic_shift(g, false));
    let difference = &lhs - &rhs;
    VerificationReport::new(
        Identity::TmsKappa,
        Some(g),
        Some(side),
        lhs,
        rhs,
        difference,
        started,
    )
}

/// Isotypic sum against stringy sum as opaque-aware sums.
///
/// `passed` additionally requires the opaque multiplicities to agree.
pub fn check_tms_total(g: Genus, side: Side, mode: SumMode) -> Result<VerificationReport> {
    let started = Instant::now();
    let isotypic = gamma::isotypic_sum(g, side);
    let term = gamma::fixed_locus_term(g, side, TermSource::Catalog);
    let (stringy, detail) = match mode {
        SumMode::ClosedForm => (gamma::closed_form_stringy(g, &term), None),
        SumMode::Enumerate { bound } => {
            let (sum, stats) = gamma::enumerate_stringy(g, bound, &term)?;
            let agrees = sum == gamma::closed_form_stringy(g, &term);
            let note = format!(
                "enumerated {} elements ({} opaque, {} distinct nontrivial terms); closed form agrees: {}",
                stats.elements, stats.opaque_elements, stats.distinct_terms, agrees
            );
            (sum, Some(note))
        }
    };
    let diff = isotypic.difference(&stringy);
    let mut report = VerificationReport::new(
        Identity::TmsTotal,
        Some(g),
        Some(side),
        isotypic.known.clone(),
        stringy.known.clone(),
        diff.known.clone(),
        started,
    );
    report.passed = diff.is_zero();
    let multiplicities = format!(
        "opaque multiplicities {} = {}",
        isotypic.opaque_multiplicity, stringy.opaque_multiplicity
    );
    report.detail = Some(match detail {
        Some(d) => format!("{multiplicities}; {d}"),
        None => multiplicities,
    });
    Ok(report)
}

/// Reproduces the failure for ordinary cohomology: passes iff the two sides
/// differ and the gap is exactly (uv)^{2g−2}.
pub fn check_ordinary_failure(g: Genus) -> VerificationReport {
    let started = Instant::now();
    let lhs = catalog::e_betti_sl2_kappa_ordinary(g);
    let rhs =
        &catalog::ie_fixed_quotient(g, Side::Betti) * &uv_power(catalog::fermionic_shift(g, false));
    let gap = &rhs - &lhs;
    let predicted = uv_power(g.two_g_minus_two());
    let difference = &gap - &predicted;
    let mut report = VerificationReport::new(
        Identity::OrdinaryFailure,
        Some(g),
        Some(Side::Betti),
        lhs,
        rhs,
        difference,
        started,
    );
    report.passed = report.difference.is_zero() && !gap.is_zero();
    report.gap = Some(gap);
    report
}

/// The two sides of the per-κ perverse identity.
pub fn perverse_kappa_sides(g: Genus) -> (LaurentPoly, LaurentPoly) {
    let lhs = catalog::pie_dol_sl2_kappa(g);
    let rhs = &catalog::pie_fixed_quotient(g)
        * &LaurentPoly::uvq().pow(catalog::fermionic_shift(g, false));
    (lhs, rhs)
}

pub fn check_perverse_kappa(g: Genus) -> VerificationReport {
    let started = Instant::now();
    let (lhs, rhs) = perverse_kappa_sides(g);
    let difference = &lhs - &rhs;
    VerificationReport::new(
        Identity::PerverseKappa,
        Some(g),
        Some(Side::Dolbeault),
        lhs,
        rhs,
        difference,
        started,
    )
}

/// Passes iff `rhl_transform(p, dim) == p`.
pub fn check_rhl_symmetry(p: &LaurentPoly, dim: u64) -> VerificationReport {
    let started = Instant::now();
    let transformed = p.rhl_transform(dim);
    let difference = &transformed - p;
    let mut report = VerificationReport::new(
        Identity::RhlSymmetry,
        None,
        None,
        p.clone(),
        transformed,
        difference,
        started,
    );
    report.detail = Some(format!("dim = {dim}"));
    report
}

/// RHL symmetry of the per-κ perverse polynomial with dim = 2(r²−1)(g−1),
/// r = 2. Observed to fail for every genus.
pub fn check_rhl_kappa(g: Genus) -> VerificationReport {
    let started = Instant::now();
    let dim = catalog::total_dimension(2, g).expect("rank 2 is valid");
    let p = catalog::pie_dol_sl2_kappa(g);
    let mut report = check_rhl_symmetry(&p, dim);
    report.identity = Identity::RhlKappa;
    report.genus = Some(g.get());
    report.side = Some(Side::Dolbeault);
    report.provenance = Identity::RhlKappa.provenance().to_string();
    report.elapsed = started.elapsed();
    report
}

/// Both perverse polynomials at q = 1 against their IE counterparts. The
/// difference packs the κ-piece discrepancy as the q-free part and the
/// fixed-locus discrepancy as the coefficient of q.
pub fn check_q1_specialization(g: Genus) -> VerificationReport {
    let started = Instant::now();
    let kappa = catalog::pie_dol_sl2_kappa(g).erase_q();
    let fixed = catalog::pie_fixed_quotient(g).erase_q();
    let d_kappa = &kappa - &catalog::ie_dol_sl2_kappa(g);
    let d_fixed = &fixed - &catalog::ie_fixed_quotient(g, Side::Dolbeault);
    let difference = &d_kappa + &d_fixed.shift(Exponent::new(0, 0, 1));
    VerificationReport::new(
        Identity::Q1Specialization,
        Some(g),
        Some(Side::Dolbeault),
        kappa,
        fixed,
        difference,
        started,
    )
}

/// Runs one identity for one genus. Per-side identities use `side`; the
/// others ignore it.
pub fn run_check(
    identity: Identity,
    g: Genus,
    side: Side,
    mode: SumMode,
) -> Result<VerificationReport> {
    Ok(match identity {
        Identity::TmsKappa => check_tms_kappa(g, side),
        Identity::TmsTotal => check_tms_total(g, side, mode)?,
        Identity::OrdinaryFailure => check_ordinary_failure(g),
        Identity::PerverseKappa => check_perverse_kappa(g),
        Identity::Q1Specialization => check_q1_specialization(g),
        Identity::RhlKappa => check_rhl_kappa(g),
        Identity::RhlSymmetry => {
            let dim = catalog::total_dimension(2, g).expect("rank 2 is valid");
            check_rhl_symmetry(&catalog::pie_dol_sl2_kappa(g), dim)
        }
    })
}

/// Provenance of the catalog formulas an identity reads.
pub fn formulas_used(identity: Identity) -> &'static [FormulaId] {
    match identity {
        Identity::TmsKappa => &[
            FormulaId::IeDolSl2Kappa,
            FormulaId::IeBettiSl2Kappa,
            FormulaId::FermionicShift,
        ],
        Identity::TmsTotal => &[
            FormulaId::IeDolSl2Kappa,
            FormulaId::IeBettiSl2Kappa,
            FormulaId::IeDolFixedQuotient,
            FormulaId::IeBettiFixedQuotient,
            FormulaId::FermionicShift,
        ],
        Identity::OrdinaryFailure => &[
            FormulaId::EBettiSl2KappaOrdinary,
            FormulaId::IeBettiFixedQuotient,
            FormulaId::FermionicShift,
        ],
        Identity::PerverseKappa => &[
            FormulaId::PieDolSl2Kappa,
            FormulaId::PieFixedQuotient,
            FormulaId::FermionicShift,
        ],
        Identity::Q1Specialization => &[
            FormulaId::PieDolSl2Kappa,
            FormulaId::PieFixedQuotient,
            FormulaId::IeDolSl2Kappa,
            FormulaId::IeDolFixedQuotient,
        ],
        Identity::RhlKappa | Identity::RhlSymmetry => {
            &[FormulaId::PieDolSl2Kappa, FormulaId::TotalDimension]
        }
    }
}
