//! Vanishing of Ext and Tor on a window of degrees.

use super::operators::eisenbud_operators;
use crate::error::Result;
use crate::homcore::{ext_from_resolution, resolve, tor_from_resolution, PresentedModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VanishingMode {
    /// `Ext^i(first, second)`.
    ExtFrom,
    /// `Ext^i(second, first)`.
    ExtInto,
    /// `Tor_i(first, second)`.
    Tor,
}

impl VanishingMode {
    pub fn name(&self) -> &'static str {
        match self {
            VanishingMode::ExtFrom => "ext_from",
            VanishingMode::ExtInto => "ext_into",
            VanishingMode::Tor => "tor",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingVerdict {
    pub mode: VanishingMode,
    pub window: (usize, usize),
    pub vanishes_on_window: bool,
    /// Degrees in the window with a nonzero module.
    pub nonzero: Vec<usize>,
    /// The window result holds in all large degrees: the base is a hypersurface and the
    /// resolution is 2-periodic across the window, or the resolution is finite.
    pub periodic_upgrade: bool,
}

impl VanishingVerdict {
    pub const LABEL: &'static str = "window evidence";
}

pub fn vanishing_verdict(
    first: &PresentedModule,
    second: &PresentedModule,
    mode: VanishingMode,
    window: (usize, usize),
) -> Result<VanishingVerdict> {
    first.check_same_ring(second)?;
    let (w0, w1) = window;
    let (resolved, other) = match mode {
        VanishingMode::ExtFrom | VanishingMode::Tor => (first, second),
        VanishingMode::ExtInto => (second, first),
    };
    let res = resolve(resolved, w1 + 1);
    let nonzero: Vec<usize> = (w0..=w1)
        .filter(|&i| {
            let h = match mode {
                VanishingMode::Tor => tor_from_resolution(&res, other, i),
                _ => ext_from_resolution(&res, other, i),
            };
            !h.is_zero()
        })
        .collect();
    let hypersurface = first.ring().quotient().len() == 1;
    // A finite resolution certifies vanishing past its length just as periodicity does.
    let periodic_upgrade = if res.finished {
        true
    } else if hypersurface {
        let ops = eisenbud_operators(resolved, w1.max(w0 + 2))?;
        ops.periodic_from().is_some_and(|i| i <= w0)
    } else {
        false
    };
    Ok(VanishingVerdict { mode, window, vanishes_on_window: nonzero.is_empty(), nonzero, periodic_upgrade })
}
