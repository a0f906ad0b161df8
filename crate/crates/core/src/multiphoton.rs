// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Photon bookkeeping for the harmonic peaks.
//!
//! Frequencies are measured as `ω_d + nδω` with `ω₁ = ω_d + δω` and
//! `ω₂ = ω_d − δω`. Each allowed peak is the output of one leading-order
//! process; its descriptor counts the quanta absorbed from each field.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::model::ScenarioKind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("index {n} is forbidden for {kind}: {reason}")]
pub struct ForbiddenIndex {
    pub kind: ScenarioKind,
    pub n: i32,
    pub reason: &'static str,
}

/// Leading-order amplitude exponents of a peak.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scaling {
    /// Power of `Ω₁` in `|S_n|` at fixed bath or partner parameters.
    pub omega1_net: u32,
    /// Power of `f` in the squeezed weak-drive term including the `f/Ω₁`
    /// prefactor; equal to `omega1_net` for the other scenarios.
    pub omega1_raw: u32,
    /// Power of the partner: `Ω₂` (two-tone), `m` (squeezed), none (Fock).
    pub partner: u32,
    /// Squeezed only: the partner enters as `m*`.
    pub partner_conj: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessDescriptor {
    pub n: i32,
    /// `ω₁` photons absorbed; negative means emitted.
    pub coh_absorbed: i32,
    /// `ω₂` photons of the second classical tone absorbed (two-tone only).
    pub second_absorbed: i32,
    /// Correlated `2ω₂` pairs absorbed (squeezed only).
    pub pairs_absorbed: i32,
    /// Fock photons at `ω₂` absorbed (Fock only).
    pub fock_photon: i32,
    pub scaling: Scaling,
}

impl ProcessDescriptor {
    /// Quanta in minus quanta out, excluding the scattered photon.
    pub fn photon_balance(&self) -> i32 {
        self.coh_absorbed + self.second_absorbed + 2 * self.pairs_absorbed + self.fock_photon
    }

    /// Net energy absorbed, in units of `δω` about `ω_d`.
    pub fn detuning_balance(&self) -> i32 {
        self.coh_absorbed - self.second_absorbed - 2 * self.pairs_absorbed - self.fock_photon
    }

    /// One photon out at `ω_d + nδω`.
    pub fn closes(&self) -> bool {
        self.photon_balance() == 1 && self.detuning_balance() == self.n
    }
}

/// Indices `|n| ≤ n_max` at which a peak may appear.
pub fn allowed_indices(kind: ScenarioKind, n_max: u32) -> BTreeSet<i32> {
    let top = n_max as i32;
    (-top..=top).filter(|&n| forbidden_reason(kind, n).is_none()).collect()
}

fn forbidden_reason(kind: ScenarioKind, n: i32) -> Option<&'static str> {
    if n % 2 == 0 {
        return Some("even index");
    }
    match kind {
        ScenarioKind::TwoTone => None,
        ScenarioKind::Squeezed => (n.rem_euclid(4) != 1).then_some("mod-4 class"),
        ScenarioKind::Fock => (!matches!(n, -1 | 1 | 3)).then_some("photon-number ceiling"),
    }
}

pub fn process_descriptor(kind: ScenarioKind, n: i32) -> Result<ProcessDescriptor, ForbiddenIndex> {
    if let Some(reason) = forbidden_reason(kind, n) {
        return Err(ForbiddenIndex { kind, n, reason });
    }
    let zero = ProcessDescriptor {
        n,
        coh_absorbed: 0,
        second_absorbed: 0,
        pairs_absorbed: 0,
        fock_photon: 0,
        scaling: Scaling { omega1_net: 0, omega1_raw: 0, partner: 0, partner_conj: false },
    };
    let d = match kind {
        ScenarioKind::TwoTone => {
            // n = ±(2l+1): l+1 photons of one tone in, l of the other out.
            let l = (n.abs() - 1) / 2;
            let (a, b) = if n > 0 { (l + 1, -l) } else { (-l, l + 1) };
            let (p1, p2) = if n > 0 { (l + 1, l) } else { (l, l + 1) };
            ProcessDescriptor {
                coh_absorbed: a,
                second_absorbed: b,
                scaling: Scaling {
                    omega1_net: p1 as u32,
                    omega1_raw: p1 as u32,
                    partner: p2 as u32,
                    partner_conj: false,
                },
                ..zero
            }
        }
        ScenarioKind::Squeezed => {
            let k = (1 - n) / 4;
            let p = (1 - 2 * k).unsigned_abs();
            ProcessDescriptor {
                coh_absorbed: 1 - 2 * k,
                pairs_absorbed: k,
                scaling: Scaling { omega1_net: p, omega1_raw: p + 1, partner: k.unsigned_abs(), partner_conj: k < 0 },
                ..zero
            }
        }
        ScenarioKind::Fock => {
            let (coh, fock, p) = match n {
                1 => (1, 0, 1),
                -1 => (0, 1, 0),
                _ => (2, -1, 2),
            };
            ProcessDescriptor {
                coh_absorbed: coh,
                fock_photon: fock,
                scaling: Scaling { omega1_net: p, omega1_raw: p, partner: 0, partner_conj: false },
                ..zero
            }
        }
    };
    Ok(d)
}

/// Leading-order exponents of `|S_n|`.
pub fn predicted_scaling(kind: ScenarioKind, n: i32) -> Result<Scaling, ForbiddenIndex> {
    process_descriptor(kind, n).map(|d| d.scaling)
}
