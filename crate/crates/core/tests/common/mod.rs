//! Family specs shared by the integration tests.
#![allow(dead_code)]

use inertia_core::graphs::{BipartiteCase, FamilySpec, Nova};

/// Non-decreasing sequences of `len` values drawn from `lo..=hi`.
pub fn multisets(lo: usize, hi: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in multisets(first, hi, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Novas with `alphas` cycles of size 3..=5 and `betas` arms of length 1..=3.
fn novas(alphas: std::ops::RangeInclusive<usize>, betas: std::ops::RangeInclusive<usize>, max_order: usize) -> Vec<Nova> {
    let mut out = Vec::new();
    for alpha in alphas {
        for beta in betas.clone() {
            for cycles in multisets(3, 5, alpha) {
                for arms in multisets(1, 3, beta) {
                    let nova = Nova::new(cycles.clone(), arms);
                    if nova.order() <= max_order {
                        out.push(nova);
                    }
                }
            }
        }
    }
    out
}

pub const FAMILY_MAX_ORDER: usize = 12;

pub fn paths() -> Vec<FamilySpec> {
    (1..=10).map(FamilySpec::Path).collect()
}

pub fn cycles() -> Vec<FamilySpec> {
    (3..=10).map(FamilySpec::Cycle).collect()
}

pub fn stars() -> Vec<FamilySpec> {
    (1..=4).flat_map(|k| multisets(1, 3, k)).map(FamilySpec::GeneralizedStar).collect()
}

pub fn bouquets() -> Vec<FamilySpec> {
    (1..=3).flat_map(|k| multisets(3, 5, k)).map(FamilySpec::Bouquet).collect()
}

pub fn supernovas() -> Vec<FamilySpec> {
    novas(1..=2, 1..=3, usize::MAX).into_iter().map(FamilySpec::Supernova).collect()
}

pub fn pulsars() -> Vec<FamilySpec> {
    let parts = novas(1..=2, 1..=3, FAMILY_MAX_ORDER);
    let mut out = Vec::new();
    for (i, first) in parts.iter().enumerate() {
        for second in &parts[i..] {
            for bridge in 4..=FAMILY_MAX_ORDER {
                if first.order() + second.order() + bridge - 2 > FAMILY_MAX_ORDER {
                    break;
                }
                for gap in 2..=bridge - 2 {
                    out.push(FamilySpec::Pulsar { first: first.clone(), second: second.clone(), bridge, gap });
                }
            }
        }
    }
    out
}

pub fn binary_stars() -> Vec<FamilySpec> {
    let firsts = novas(1..=2, 1..=3, FAMILY_MAX_ORDER);
    let seconds = novas(1..=2, 0..=3, FAMILY_MAX_ORDER);
    let mut out = Vec::new();
    for first in &firsts {
        for second in &seconds {
            for w in 2..=FAMILY_MAX_ORDER {
                if first.order() + second.order() + w - 2 > FAMILY_MAX_ORDER {
                    break;
                }
                out.push(FamilySpec::BinaryStar { first: first.clone(), second: second.clone(), w });
            }
        }
    }
    out
}

pub fn bipartite_joins() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for d in 1..=4 {
                    for case in BipartiteCase::ALL {
                        out.push(FamilySpec::BipartiteJoin { a, b, c, d, case });
                    }
                }
            }
        }
    }
    out
}

/// Every spec of the formula/engine sweep.
pub fn sweep() -> Vec<FamilySpec> {
    let mut all = paths();
    all.extend(cycles());
    all.extend(stars());
    all.extend(bouquets());
    all.extend(supernovas());
    all.extend(pulsars());
    all.extend(binary_stars());
    all.extend(bipartite_joins());
    all
}
