//! Closed-form predictors for the determinant symbol. Each predictor
//! evaluates only its stated hypotheses and formula — never the determinant
//! itself — so that comparisons against the oracle are meaningful. The lone
//! exceptions are the mirror identity (which relates two determinants by
//! construction) and the scale reduction helper.

use crate::arith::{legendre, legendre_of, sqrt_mod, LegendreSymbol, Prime, Residue};
use crate::detcore;
use crate::lucas::{v_zero_indices, LucasParams};
use crate::trinom::{self, Convention};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredictError {
    #[error("c is divisible by the modulus {0}")]
    CDivisible(u64),
}

/// Identifiers for every predictor the scan harness knows about. The display
/// names double as the CLI vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PredictorId {
    Shewu,
    Thm12,
    Cor11,
    Thm13,
    Cor21,
    Cor22,
    Cor23,
    Lemma11,
    Eq17,
}

impl PredictorId {
    pub const ALL: [PredictorId; 9] = [
        PredictorId::Shewu,
        PredictorId::Thm12,
        PredictorId::Cor11,
        PredictorId::Thm13,
        PredictorId::Cor21,
        PredictorId::Cor22,
        PredictorId::Cor23,
        PredictorId::Lemma11,
        PredictorId::Eq17,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PredictorId::Shewu => "shewu",
            PredictorId::Thm12 => "thm12",
            PredictorId::Cor11 => "cor11",
            PredictorId::Thm13 => "thm13",
            PredictorId::Cor21 => "cor21",
            PredictorId::Cor22 => "cor22",
            PredictorId::Cor23 => "cor23",
            PredictorId::Lemma11 => "lemma11",
            PredictorId::Eq17 => "eq17",
        }
    }

    pub fn parse(s: &str) -> Option<PredictorId> {
        PredictorId::ALL.iter().copied().find(|id| id.name() == s)
    }
}

impl fmt::Display for PredictorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One checked hypothesis, kept so reports can explain coverage gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub description: String,
    pub holds: bool,
}

impl Hypothesis {
    pub fn new(description: impl Into<String>, holds: bool) -> Hypothesis {
        Hypothesis {
            description: description.into(),
            holds,
        }
    }
}

/// A predictor's verdict: a symbol value, a constrained set of values, or
/// not applicable (carrying the first failed hypothesis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicted {
    Value(LegendreSymbol),
    OneOf(Vec<LegendreSymbol>),
    NotApplicable { reason: String },
}

impl Predicted {
    /// Whether an oracle symbol is consistent with this verdict. A
    /// not-applicable verdict never counts as a mismatch.
    pub fn admits(&self, oracle: LegendreSymbol) -> bool {
        match self {
            Predicted::Value(s) => *s == oracle,
            Predicted::OneOf(set) => set.contains(&oracle),
            Predicted::NotApplicable { .. } => true,
        }
    }
}

impl fmt::Display for Predicted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicted::Value(s) => write!(f, "{s}"),
            Predicted::OneOf(set) => {
                let parts: Vec<String> = set.iter().map(|s| s.to_string()).collect();
                f.write_str(&parts.join("|"))
            }
            Predicted::NotApplicable { .. } => f.write_str("NA"),
        }
    }
}

/// A prediction together with its provenance. A value is present exactly
/// when every recorded hypothesis holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub source: PredictorId,
    pub hypotheses: Vec<Hypothesis>,
    pub value: Predicted,
}

impl Prediction {
    /// Builds from a hypothesis list: the verdict closure runs only when all
    /// hypotheses hold; otherwise the first failure becomes the reason.
    pub fn when(
        source: PredictorId,
        hypotheses: Vec<Hypothesis>,
        verdict: impl FnOnce() -> Predicted,
    ) -> Prediction {
        match hypotheses.iter().find(|h| !h.holds) {
            Some(failed) => Prediction {
                source,
                value: Predicted::NotApplicable {
                    reason: failed.description.clone(),
                },
                hypotheses,
            },
            None => Prediction {
                source,
                value: verdict(),
                hypotheses,
            },
        }
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self.value, Predicted::NotApplicable { .. })
    }

    pub fn symbol(&self) -> Option<LegendreSymbol> {
        match self.value {
            Predicted::Value(s) => Some(s),
            _ => None,
        }
    }
}

/// Exponent parity of (p-1)/2, used wherever a symbol is raised to that
/// power.
fn half_parity(p: Prime) -> u64 {
    p.half() % 2
}

/// Canonical residue of b as a small i64, so that expressions like b^2 - 4
/// stay far away from integer overflow for arbitrary inputs.
fn canonical(b: i64, p: Prime) -> i64 {
    Residue::from_int(b, p).value() as i64
}

/// Zero-scan criterion at c = 1, split on the character of b^2 - 4.
///
/// Non-square discriminant: a companion-sequence zero v_k(-b, 1) = 0 for
/// some k in [2, p-1] forces symbol 0, otherwise the symbol is
/// ((-b-2)|p)^((p-1)/2) * (2b|p).
///
/// Square discriminant: the companion-zero criterion does not detect the
/// singular cases (the first counterexample is b = 1, p = 7, where the
/// determinant vanishes but v_k(-1, 1) never does). The zero detection that
/// does agree with the determinant everywhere is the vanishing of U(k) for
/// some k in [2, p-2], plus the forced zero at p | b (there u_{p-1}(-b, 1)
/// vanishes); otherwise the symbol is ((-b-2)|p)^((p-1)/2).
pub fn predict_shewu(b: i64, p: Prime) -> Prediction {
    let b = canonical(b, p);
    let disc = legendre(b * b - 4, p);
    let hyps = vec![Hypothesis::new(
        "p does not divide b^2 - 4",
        disc != LegendreSymbol::Zero,
    )];
    Prediction::when(PredictorId::Shewu, hyps, || {
        let base = legendre(-b - 2, p).pow(half_parity(p));
        match disc {
            LegendreSymbol::MinusOne => {
                if !v_zero_indices(LucasParams::new(-b, 1), p, 2, p.value() - 1).is_empty() {
                    return Predicted::Value(LegendreSymbol::Zero);
                }
                Predicted::Value(base * legendre(2 * b, p))
            }
            LegendreSymbol::One => {
                if b == 0 || trinom::u_scan_zero(Convention::adopted(), b, 1, p).is_some() {
                    return Predicted::Value(LegendreSymbol::Zero);
                }
                Predicted::Value(base)
            }
            LegendreSymbol::Zero => unreachable!("hypothesis checked"),
        }
    })
}

/// For p = 1 (mod 4) with b^2 - 4 a non-residue, the symbol is (2b|p).
pub fn predict_thm12(b: i64, p: Prime) -> Prediction {
    let b = canonical(b, p);
    let hyps = vec![
        Hypothesis::new("p = 1 (mod 4)", p.value() % 4 == 1),
        Hypothesis::new(
            "(b^2 - 4 | p) = -1",
            legendre(b * b - 4, p) == LegendreSymbol::MinusOne,
        ),
    ];
    Prediction::when(PredictorId::Thm12, hyps, || {
        Predicted::Value(legendre(2 * b, p))
    })
}

/// For p = 1 (mod 4) with b^2 + 4 a non-residue, the symbol at c = -1 is
/// (b|p).
pub fn predict_cor11(b: i64, p: Prime) -> Prediction {
    let b = canonical(b, p);
    let hyps = vec![
        Hypothesis::new("p = 1 (mod 4)", p.value() % 4 == 1),
        Hypothesis::new(
            "(b^2 + 4 | p) = -1",
            legendre(b * b + 4, p) == LegendreSymbol::MinusOne,
        ),
    ];
    Prediction::when(PredictorId::Cor11, hyps, || {
        Predicted::Value(legendre(b, p))
    })
}

/// For (p|7) = -1 and p != 15 (mod 16), the symbol at (b, c) = (1, 16) is
/// (-2|p). The cell has b^2 - 4c = -63, so p in {3, 7} must be excluded:
/// both hypotheses of the underlying c = 1 reduction degenerate there, and
/// at p = 3 the formula is in fact wrong (the determinant symbol is -1,
/// (-2|3) = 1). p = 7 is already ruled out by (7|7) = 0.
pub fn predict_thm13(p: Prime) -> Prediction {
    let seven = Prime::new(7).expect("7 is prime");
    let hyps = vec![
        Hypothesis::new(
            "p does not divide b^2 - 4c = -63",
            p.value() != 3 && p.value() != 7,
        ),
        Hypothesis::new(
            "(p | 7) = -1",
            legendre(p.value() as i64, seven) == LegendreSymbol::MinusOne,
        ),
        Hypothesis::new("p != 15 (mod 16)", p.value() % 16 != 15),
    ];
    Prediction::when(PredictorId::Thm13, hyps, || {
        Predicted::Value(legendre(-2, p))
    })
}

/// For p = 1 (mod 4) and p = +-2 (mod 5), the symbol at (1, -1) is 1.
pub fn predict_cor21(p: Prime) -> Prediction {
    let m5 = p.value() % 5;
    let hyps = vec![
        Hypothesis::new("p = 1 (mod 4)", p.value() % 4 == 1),
        Hypothesis::new("p = +-2 (mod 5)", m5 == 2 || m5 == 3),
    ];
    Prediction::when(PredictorId::Cor21, hyps, || {
        Predicted::Value(LegendreSymbol::One)
    })
}

/// Case split at (2, -1): -1 exactly for p = 5 (mod 8), 0 for p = 3 (mod 4),
/// and one of {0, 1} for p = 1 (mod 8).
pub fn predict_cor22(p: Prime) -> Prediction {
    let pv = p.value();
    let hyps = vec![Hypothesis::new("p is an odd prime", true)];
    Prediction::when(PredictorId::Cor22, hyps, || {
        if pv % 8 == 5 {
            Predicted::Value(LegendreSymbol::MinusOne)
        } else if pv % 4 == 3 {
            Predicted::Value(LegendreSymbol::Zero)
        } else {
            Predicted::OneOf(vec![LegendreSymbol::Zero, LegendreSymbol::One])
        }
    })
}

/// For p = +-2 (mod 5) at (3, 1): (6|p) when p = 1 (mod 4), 0 when
/// p = 3 (mod 4).
pub fn predict_cor23(p: Prime) -> Prediction {
    let m5 = p.value() % 5;
    let hyps = vec![Hypothesis::new("p = +-2 (mod 5)", m5 == 2 || m5 == 3)];
    Prediction::when(PredictorId::Cor23, hyps, || {
        if p.value() % 4 == 1 {
            Predicted::Value(legendre(6, p))
        } else {
            Predicted::Value(LegendreSymbol::Zero)
        }
    })
}

/// Residue-level mirror identity: the determinant at (-b, c) equals
/// (-1|p) times the determinant at (b, c). Checked on the oracle values
/// themselves.
pub fn relation_neg_b(b: i64, c: i64, p: Prime) -> bool {
    let b = canonical(b, p);
    let lhs = detcore::dp_det(-b, c, p);
    let rhs = detcore::dp_det(b, c, p);
    let mirrored = match legendre(-1, p) {
        LegendreSymbol::One => rhs,
        _ => -rhs,
    };
    lhs == mirrored
}

/// Outcome of reducing (b, c) to the c = 1 axis when c is a square s^2:
/// the symbol at (b, c) equals (s|p)^parity times the symbol at (b', 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaleReduction {
    pub sqrt_c: Residue,
    pub b_prime: Residue,
    /// (p-1)/2 mod 2, the exponent on (sqrt_c | p).
    pub parity: u64,
}

impl ScaleReduction {
    pub fn sign_factor(&self) -> LegendreSymbol {
        legendre_of(self.sqrt_c).pow(self.parity)
    }
}

/// When c has a square root s mod p, rewrites (b, c) as (b * s^-1, 1) with
/// the accompanying sign exponent; `None` when c is a non-residue. Errors
/// when p | c.
pub fn scale_reduce(b: i64, c: i64, p: Prime) -> Result<Option<ScaleReduction>, PredictError> {
    let c_r = Residue::from_int(c, p);
    if c_r.is_zero() {
        return Err(PredictError::CDivisible(p.value()));
    }
    let Some(s) = sqrt_mod(c_r) else {
        return Ok(None);
    };
    let s_inv = s.inv().expect("s != 0 since c != 0");
    Ok(Some(ScaleReduction {
        sqrt_c: s,
        b_prime: Residue::from_int(b, p) * s_inv,
        parity: half_parity(p),
    }))
}

/// Symbol predicted for (b, c) from the mirror identity: (-1|p) times the
/// oracle symbol at (-b, c). Unlike the closed-form predictors this one
/// consumes a determinant, for the mirrored cell.
fn predict_eq17(b: i64, c: i64, p: Prime) -> Prediction {
    let b = canonical(b, p);
    Prediction::when(PredictorId::Eq17, Vec::new(), || {
        Predicted::Value(legendre(-1, p) * detcore::dp_symbol(-b, c, p))
    })
}

fn residues_match(x: i64, want: i64, p: Prime) -> bool {
    Residue::from_int(x, p) == Residue::from_int(want, p)
}

/// Uniform entry point for the scan harness: evaluates a predictor on a grid
/// cell (p, b, c), recording the cell constraints the predictor needs (for
/// example c = 1) as explicit hypotheses.
pub fn evaluate(id: PredictorId, b: i64, c: i64, p: Prime) -> Prediction {
    evaluate_with(id, b, c, p, Convention::adopted())
}

/// Like [`evaluate`], with an explicit trinomial-coefficient convention for
/// the lemma11 predictor.
pub fn evaluate_with(
    id: PredictorId,
    b: i64,
    c: i64,
    p: Prime,
    convention: Convention,
) -> Prediction {
    let c_is = |want: i64, label: &str| {
        Hypothesis::new(format!("c = {label} (mod p)"), residues_match(c, want, p))
    };
    let b_is = |want: i64, label: &str| {
        Hypothesis::new(format!("b = {label} (mod p)"), residues_match(b, want, p))
    };
    match id {
        PredictorId::Shewu => with_domain(vec![c_is(1, "1")], || predict_shewu(b, p), id),
        PredictorId::Thm12 => with_domain(vec![c_is(1, "1")], || predict_thm12(b, p), id),
        PredictorId::Cor11 => with_domain(vec![c_is(-1, "-1")], || predict_cor11(b, p), id),
        PredictorId::Thm13 => {
            with_domain(vec![b_is(1, "1"), c_is(16, "16")], || predict_thm13(p), id)
        }
        PredictorId::Cor21 => {
            with_domain(vec![b_is(1, "1"), c_is(-1, "-1")], || predict_cor21(p), id)
        }
        PredictorId::Cor22 => {
            with_domain(vec![b_is(2, "2"), c_is(-1, "-1")], || predict_cor22(p), id)
        }
        PredictorId::Cor23 => {
            with_domain(vec![b_is(3, "3"), c_is(1, "1")], || predict_cor23(p), id)
        }
        PredictorId::Lemma11 => trinom::lemma11_predict_with(convention, b, c, p),
        PredictorId::Eq17 => predict_eq17(b, c, p),
    }
}

fn with_domain(
    domain: Vec<Hypothesis>,
    inner: impl FnOnce() -> Prediction,
    source: PredictorId,
) -> Prediction {
    if let Some(failed) = domain.iter().find(|h| !h.holds) {
        return Prediction {
            source,
            value: Predicted::NotApplicable {
                reason: failed.description.clone(),
            },
            hypotheses: domain,
        };
    }
    let mut prediction = inner();
    let mut hypotheses = domain;
    hypotheses.append(&mut prediction.hypotheses);
    prediction.hypotheses = hypotheses;
    prediction
}
