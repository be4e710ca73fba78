//! Complexity classes from the growth of Betti numbers on a finite window.

use std::fmt;

use super::link::LinkageDatum;
use crate::error::{Error, Result};
use crate::homcore::{betti, BettiTable, PresentedModule};
use crate::stdbasis::Ideal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CxClass {
    Zero,
    One,
    Two,
    AtLeastThree,
    Inconclusive,
}

impl fmt::Display for CxClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CxClass::Zero => "0",
            CxClass::One => "1",
            CxClass::Two => "2",
            CxClass::AtLeastThree => ">=3",
            CxClass::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityEstimate {
    pub betti: BettiTable,
    pub class: CxClass,
    /// `β_{i+2} - β_i` over the window.
    pub second_differences: Vec<i64>,
    /// Only class 0 is certified (a syzygy vanished); the rest is window evidence.
    pub certified: bool,
    pub window: (usize, usize),
}

/// Classifies `β_2..β_bound`: 0 when some `β_i` vanishes; 1 when the tail of `β_{i+2} - β_i`
/// is non-positive; 2 when that tail is a positive constant; `>=3` when it is increasing.
/// The tail is the last three differences.
pub fn classify(table: &BettiTable, lo: usize) -> ComplexityEstimate {
    let hi = table.bound;
    if table.terminates() {
        return ComplexityEstimate {
            betti: table.clone(),
            class: CxClass::Zero,
            second_differences: Vec::new(),
            certified: true,
            window: (lo, hi),
        };
    }
    let d2: Vec<i64> = (lo..=hi.saturating_sub(2)).map(|i| table.get(i + 2) as i64 - table.get(i) as i64).collect();
    let tail = &d2[d2.len().saturating_sub(3)..];
    let class = if tail.is_empty() {
        CxClass::Inconclusive
    } else if tail.iter().all(|&d| d <= 0) {
        CxClass::One
    } else if tail.iter().all(|&d| d == tail[0]) {
        CxClass::Two
    } else if tail.windows(2).all(|w| w[1] > w[0]) && tail[0] > 0 {
        CxClass::AtLeastThree
    } else {
        CxClass::Inconclusive
    };
    ComplexityEstimate { betti: table.clone(), class, second_differences: d2, certified: false, window: (lo, hi) }
}

/// Resolves `M` through `bound >= 6` and classifies the window `[2, bound]`.
pub fn complexity(m: &PresentedModule, bound: usize) -> Result<ComplexityEstimate> {
    if bound < 6 {
        return Err(Error::Inconclusive(format!("complexity needs a window bound of at least 6, got {bound}")));
    }
    Ok(classify(&betti(m, bound), 2))
}

/// Which statement relating `cx M`, `cx N` and `cx A/q` applies to a linked pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferRegime {
    /// `A/q` has finite projective dimension: `cx M = cx N`.
    Perfect,
    /// `cx A/q > cx M` with `A/q` of infinite projective dimension: `cx N = cx A/q`.
    Dominant,
    /// Neither hypothesis is detected on the window.
    NoPrediction,
}

#[derive(Debug, Clone)]
pub struct TransferReport {
    pub m: ComplexityEstimate,
    pub n: ComplexityEstimate,
    pub quotient: ComplexityEstimate,
    pub regime: TransferRegime,
    /// The predicted equality holds for the window classes (`None` without a prediction).
    pub matches: Option<bool>,
}

pub fn complexity_transfer_check(datum: &LinkageDatum, bound: usize) -> Result<TransferReport> {
    let m = complexity(&datum.m, bound)?;
    let n = complexity(&datum.n, bound)?;
    let aq = PresentedModule::cyclic(&Ideal::new(&datum.ambient, datum.q.gens().to_vec()));
    let quotient = complexity(&aq, bound)?;
    let known = |c: CxClass| c != CxClass::Inconclusive;
    let regime = if quotient.class == CxClass::Zero {
        TransferRegime::Perfect
    } else if known(quotient.class) && known(m.class) && quotient.class > m.class {
        TransferRegime::Dominant
    } else {
        TransferRegime::NoPrediction
    };
    let matches = match regime {
        TransferRegime::Perfect => Some(m.class == n.class),
        TransferRegime::Dominant => Some(n.class == quotient.class),
        TransferRegime::NoPrediction => None,
    };
    Ok(TransferReport { m, n, quotient, regime, matches })
}
