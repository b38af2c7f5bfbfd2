//! Closed-form inertia sets for the named graph families.
//!
//! Every function returns a concrete [`InertiaSet`] for concrete parameters.
//! Bounds are computed in signed arithmetic; a term whose range falls outside
//! `0..=n` is clamped or dropped, so small parameters simply lose the terms
//! that cannot occur.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{InertiaSet, Trapezoid};
use crate::graphs::{BipartiteCase, FamilySpec, GraphError, Nova};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("no closed form for {0}; use the recursion engine")]
    Unsupported(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, FormulaError> {
    Err(FormulaError::InvalidSpec(msg.into()))
}

/// Which closed form produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Provenance {
    Path,
    Cycle,
    DisjointPaths,
    GeneralizedStar,
    Bouquet,
    Supernova,
    Pulsar,
    BinaryStarAdjacent,
    BinaryStarSeparated,
    CompleteBipartite,
    BipartiteJoin,
    DisjointUnionSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub set: InertiaSet,
    pub provenance: Provenance,
    /// Parameter values substituted into the closed form, keyed by name.
    pub parameters: BTreeMap<String, usize>,
}

impl FormulaResult {
    fn new(set: InertiaSet, provenance: Provenance, params: &[(&str, usize)]) -> FormulaResult {
        let parameters = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        FormulaResult { set, provenance, parameters }
    }

    pub fn order(&self) -> usize {
        self.parameters["n"]
    }
}

/// Union of `T^inset_[lo,hi]` terms with signed bounds; empty terms vanish.
fn terms(spec: &[(usize, i64, i64)]) -> InertiaSet {
    InertiaSet::from_trapezoids(spec.iter().filter_map(|&(k, lo, hi)| Trapezoid::from_signed(k, lo, hi)))
}

fn signed(x: usize) -> i64 {
    x as i64
}

/// `T_[n-1,n]`.
pub fn inertia_path(n: usize) -> Result<InertiaSet, FormulaError> {
    if n < 1 {
        return invalid("path needs n >= 1");
    }
    Ok(InertiaSet::from_trapezoid(Trapezoid::flat(n - 1, n)))
}

/// `T_[n-2,n]`.
pub fn inertia_cycle(n: usize) -> Result<InertiaSet, FormulaError> {
    if n < 3 {
        return invalid("cycle needs n >= 3");
    }
    Ok(InertiaSet::from_trapezoid(Trapezoid::flat(n - 2, n)))
}

/// `T_[n-k,n]` for `k` disjoint paths on `n` vertices in total.
pub fn inertia_disjoint_paths(n: usize, k: usize) -> Result<InertiaSet, FormulaError> {
    if k < 1 || k > n {
        return invalid(format!("disjoint paths need 1 <= k <= n (k={k}, n={n})"));
    }
    Ok(InertiaSet::from_trapezoid(Trapezoid::flat(n - k, n)))
}

/// `T_[n-1,n] ∪ T^1_[n-p+1,n]` for a generalized star with `p` arms.
pub fn inertia_generalized_star(n: usize, p: usize) -> Result<InertiaSet, FormulaError> {
    if p < 1 || n < p + 1 {
        return invalid(format!("generalized star needs p >= 1 and n >= p+1 (p={p}, n={n})"));
    }
    let n = signed(n);
    let p = signed(p);
    Ok(terms(&[(0, n - 1, n), (1, n - p + 1, n)]))
}

/// `T_[n-k-1,n]` for a bouquet of `k` cycles.
pub fn inertia_bouquet(n: usize, k: usize) -> Result<InertiaSet, FormulaError> {
    if k < 1 || n < 2 * k + 1 {
        return invalid(format!("bouquet needs k >= 1 and n >= 2k+1 (k={k}, n={n})"));
    }
    Ok(InertiaSet::from_trapezoid(Trapezoid::flat(n - k - 1, n)))
}

/// `T_[n-α-1,n] ∪ T^1_[n-α-β+1,n]` for `α` cycles and `β` pendant paths.
pub fn inertia_supernova(n: usize, alpha: usize, beta: usize) -> Result<InertiaSet, FormulaError> {
    if alpha < 1 || beta < 1 {
        return invalid("supernova needs at least one cycle and one pendant path");
    }
    if n < 2 * alpha + beta + 1 {
        return invalid(format!("supernova with {alpha} cycles and {beta} paths needs n >= {}", 2 * alpha + beta + 1));
    }
    let (n, a, b) = (signed(n), signed(alpha), signed(beta));
    Ok(terms(&[(0, n - a - 1, n), (1, n - a - b + 1, n)]))
}

/// Inertia of a pulsar built from supernovas `(α₁, β₁)` and `(α₂, β₂)`:
///
/// ```text
/// T_[n-α₁-α₂-2, n] ∪ T^1_[n-α₁-α₂-β₁, n] ∪ T^1_[n-α₁-α₂-β₂, n] ∪ T^2_[n-α₁-α₂-β₁-β₂, n]
/// ```
pub fn inertia_pulsar(n: usize, alpha1: usize, beta1: usize, alpha2: usize, beta2: usize) -> Result<InertiaSet, FormulaError> {
    // two centers, each cycle adds >= 2 vertices, each arm >= 1, the bridge >= 2 more
    let least = 2 + 2 * (alpha1 + alpha2) + beta1 + beta2 + 2;
    if n < least {
        return invalid(format!("no pulsar with these counts has {n} vertices (need >= {least})"));
    }
    let (n, a1, b1, a2, b2) = (signed(n), signed(alpha1), signed(beta1), signed(alpha2), signed(beta2));
    let a = a1 + a2;
    Ok(terms(&[(0, n - a - 2, n), (1, n - a - b1, n), (1, n - a - b2, n), (2, n - a - b1 - b2, n)]))
}

/// Inertia of a binary star: supernova `H` (`α` cycles, `β` paths) and
/// supernova `K` (`δ` cycles, `γ` paths, one of which is the `w`-vertex path
/// reaching `H`'s center).
///
/// ```text
/// w = 2: T_[n-α-δ-1, n] ∪ T^1_[n-α-γ-δ+1, n] ∪ T^1_[n-α-β-δ+1, n] ∪ T^2_[n-α-β-γ-δ+3, n]
/// w > 2: same, with the T^2 term starting at n-α-β-γ-δ+2
/// ```
pub fn inertia_binary_star(
    n: usize,
    alpha: usize,
    beta: usize,
    delta_cycles: usize,
    gamma: usize,
    w: usize,
) -> Result<InertiaSet, FormulaError> {
    if w < 2 {
        return invalid("binary star needs w >= 2");
    }
    if gamma < 1 {
        return invalid("the connecting path is one of K's paths, so gamma >= 1");
    }
    let least = 2 + 2 * (alpha + delta_cycles) + beta + (gamma - 1) + (w - 2);
    if n < least {
        return invalid(format!("no binary star with these counts has {n} vertices (need >= {least})"));
    }
    let (n, a, b, d, g) = (signed(n), signed(alpha), signed(beta), signed(delta_cycles), signed(gamma));
    let top = if w == 2 { 3 } else { 2 };
    Ok(terms(&[
        (0, n - a - d - 1, n),
        (1, n - a - g - d + 1, n),
        (1, n - a - b - d + 1, n),
        (2, n - a - b - g - d + top, n),
    ]))
}

/// `T_[b,a+b] ∪ T^1_[2,b-1]` for `K_{a,b}` with `1 <= a <= b`.
pub fn inertia_complete_bipartite(a: usize, b: usize) -> Result<InertiaSet, FormulaError> {
    if a < 1 || a > b {
        return invalid(format!("K_{{a,b}} formula needs 1 <= a <= b (a={a}, b={b})"));
    }
    Ok(bipartite_part(a, b))
}

/// Inertia of `K_{x,y}` in any order; a zero side leaves isolated vertices.
fn bipartite_part(x: usize, y: usize) -> InertiaSet {
    let (a, b) = (x.min(y), x.max(y));
    if a == 0 {
        return InertiaSet::from_trapezoid(Trapezoid::flat(0, b));
    }
    terms(&[(0, signed(b), signed(a + b)), (1, 2, signed(b) - 1)])
}

/// `K_{a,b}` and `K_{c,d}` sharing one vertex, located per `case`.
pub fn inertia_bipartite_join(a: usize, b: usize, c: usize, d: usize, case: BipartiteCase) -> Result<InertiaSet, FormulaError> {
    if [a, b, c, d].contains(&0) {
        return invalid("bipartite join parts must be nonempty");
    }
    let n = a + b + c + d - 1;
    let (in_a, in_c) = case.sides();
    let (a2, b2) = if in_a { (a - 1, b) } else { (a, b - 1) };
    let (c2, d2) = if in_c { (c - 1, d) } else { (c, d - 1) };
    let whole = bipartite_part(a, b).add(&bipartite_part(c, d)).cap(n);
    let bump = InertiaSet::from_trapezoid(Trapezoid::new(1, 2, 2));
    let split = bipartite_part(a2, b2).add(&bipartite_part(c2, d2)).add(&bump).cap(n);
    Ok(whole.union(&split))
}

/// Closed form for any spec except explicit joins.
pub fn inertia_formula(spec: &FamilySpec) -> Result<FormulaResult, FormulaError> {
    spec.validate()?;
    let n = spec.order()?;
    let res = match spec {
        FamilySpec::Path(len) => FormulaResult::new(inertia_path(*len)?, Provenance::Path, &[("n", n)]),
        FamilySpec::Cycle(len) => FormulaResult::new(inertia_cycle(*len)?, Provenance::Cycle, &[("n", n)]),
        FamilySpec::DisjointPaths(sizes) => {
            let k = sizes.len();
            FormulaResult::new(inertia_disjoint_paths(n, k)?, Provenance::DisjointPaths, &[("n", n), ("k", k)])
        }
        FamilySpec::GeneralizedStar(arms) => star_result(n, arms.len())?,
        FamilySpec::Bouquet(cycles) => {
            let k = cycles.len();
            FormulaResult::new(inertia_bouquet(n, k)?, Provenance::Bouquet, &[("n", n), ("k", k)])
        }
        FamilySpec::Supernova(nova) => nova_result(nova)?,
        FamilySpec::Pulsar { first, second, .. } => {
            let (a1, b1) = (first.cycles.len(), first.arms.len());
            let (a2, b2) = (second.cycles.len(), second.arms.len());
            FormulaResult::new(
                inertia_pulsar(n, a1, b1, a2, b2)?,
                Provenance::Pulsar,
                &[("n", n), ("alpha1", a1), ("beta1", b1), ("alpha2", a2), ("beta2", b2)],
            )
        }
        FamilySpec::BinaryStar { first, second, w } => {
            let (alpha, beta) = (first.cycles.len(), first.arms.len());
            let delta = second.cycles.len();
            let gamma = second.arms.len() + 1;
            let provenance = if *w == 2 { Provenance::BinaryStarAdjacent } else { Provenance::BinaryStarSeparated };
            FormulaResult::new(
                inertia_binary_star(n, alpha, beta, delta, gamma, *w)?,
                provenance,
                &[("n", n), ("alpha", alpha), ("beta", beta), ("delta", delta), ("gamma", gamma), ("w", *w)],
            )
        }
        FamilySpec::CompleteBipartite(x, y) => {
            let (a, b) = (*x.min(y), *x.max(y));
            FormulaResult::new(inertia_complete_bipartite(a, b)?, Provenance::CompleteBipartite, &[("n", n), ("a", a), ("b", b)])
        }
        FamilySpec::BipartiteJoin { a, b, c, d, case } => FormulaResult::new(
            inertia_bipartite_join(*a, *b, *c, *d, *case)?,
            Provenance::BipartiteJoin,
            &[("n", n), ("a", *a), ("b", *b), ("c", *c), ("d", *d)],
        ),
        FamilySpec::Join { .. } => return Err(FormulaError::Unsupported(spec.to_string())),
        FamilySpec::DisjointUnion(parts) => {
            let mut set = InertiaSet::origin();
            for part in parts {
                set = set.add(&inertia_formula(part)?.set);
            }
            FormulaResult::new(set, Provenance::DisjointUnionSum, &[("n", n), ("components", parts.len())])
        }
    };
    Ok(res)
}

fn star_result(n: usize, p: usize) -> Result<FormulaResult, FormulaError> {
    Ok(FormulaResult::new(inertia_generalized_star(n, p)?, Provenance::GeneralizedStar, &[("n", n), ("p", p)]))
}

/// Supernovas with no cycles are stars and with no arms are bouquets.
fn nova_result(nova: &Nova) -> Result<FormulaResult, FormulaError> {
    let n = nova.order();
    let (alpha, beta) = (nova.cycles.len(), nova.arms.len());
    match (alpha, beta) {
        (0, 0) => Ok(FormulaResult::new(inertia_path(1)?, Provenance::Path, &[("n", 1)])),
        (0, p) => star_result(n, p),
        (k, 0) => Ok(FormulaResult::new(inertia_bouquet(n, k)?, Provenance::Bouquet, &[("n", n), ("k", k)])),
        (a, b) => Ok(FormulaResult::new(
            inertia_supernova(n, a, b)?,
            Provenance::Supernova,
            &[("n", n), ("alpha", a), ("beta", b)],
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> InertiaSet {
        s.parse().unwrap()
    }

    #[test]
    fn path_and_cycle() {
        assert_eq!(inertia_path(1).unwrap(), set("T_[0,1]"));
        assert_eq!(inertia_path(3).unwrap(), set("T_[2,3]"));
        assert_eq!(inertia_path(4).unwrap(), set("T_[3,4]"));
        assert!(inertia_path(0).is_err());
        assert_eq!(inertia_cycle(5).unwrap(), set("T_[3,5]"));
        assert_eq!(inertia_cycle(3).unwrap(), set("T_[1,3]"));
        assert_eq!(inertia_cycle(4).unwrap(), inertia_complete_bipartite(2, 2).unwrap());
        assert!(inertia_cycle(2).is_err());
        for n in 1..12 {
            assert_eq!(inertia_path(n).unwrap().min_rank().unwrap(), n - 1);
        }
        for n in 3..12 {
            assert_eq!(inertia_cycle(n).unwrap().min_rank().unwrap(), n - 2);
        }
    }

    #[test]
    fn disjoint_paths() {
        assert_eq!(inertia_disjoint_paths(2, 2).unwrap(), set("T_[0,2]"));
        assert_eq!(inertia_disjoint_paths(6, 6).unwrap(), set("T_[0,6]"));
        assert_eq!(inertia_disjoint_paths(5, 2).unwrap(), inertia_path(2).unwrap().add(&inertia_path(3).unwrap()));
        assert!(inertia_disjoint_paths(2, 3).is_err());
    }

    #[test]
    fn generalized_star() {
        for n in 2..10 {
            assert_eq!(inertia_generalized_star(n, 1).unwrap(), inertia_path(n).unwrap());
        }
        assert_eq!(inertia_generalized_star(4, 3).unwrap(), set("T_[3,4] U T^1_[2,4]"));
        assert!(inertia_generalized_star(3, 3).is_err());
    }

    #[test]
    fn bouquet() {
        for n in 3..10 {
            assert_eq!(inertia_bouquet(n, 1).unwrap(), inertia_cycle(n).unwrap());
        }
        assert_eq!(inertia_bouquet(5, 2).unwrap(), set("T_[2,5]"));
        assert!(inertia_bouquet(4, 2).is_err());
    }

    #[test]
    fn supernova() {
        assert_eq!(inertia_supernova(5, 1, 1).unwrap(), set("T_[3,5]"));
        assert_eq!(inertia_supernova(5, 1, 2).unwrap(), set("T_[3,5]"));
        assert_eq!(inertia_supernova(6, 1, 3).unwrap(), set("T_[4,6] U T^1_[3,6]"));
        assert!(inertia_supernova(5, 0, 2).is_err());
        assert!(inertia_supernova(4, 1, 2).is_err());
    }

    #[test]
    fn pulsar_smallest_instance() {
        // two novas of one triangle and one pendant vertex each on a 4-cycle
        let n = 4 + 4 + 2;
        let s = inertia_pulsar(n, 1, 1, 1, 1).unwrap();
        assert_eq!(s, set("T_[6,10] U T^1_[7,10] U T^2_[6,10]"));
        assert_eq!(s, set("T_[6,10]"));
        assert!(inertia_pulsar(9, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn binary_star_cases_differ_in_top_term_only() {
        let two = inertia_binary_star(12, 1, 3, 0, 3, 2).unwrap();
        let three = inertia_binary_star(12, 1, 3, 0, 3, 3).unwrap();
        let diff = three.difference(&two);
        assert!(!diff.is_empty());
        assert!(diff.iter().all(|p| p.inset() >= 2 && p.rank() == 12 - 1 - 3 - 3 + 2));
        assert!(two.is_subset(&three));
    }

    #[test]
    fn complete_bipartite() {
        assert_eq!(inertia_complete_bipartite(1, 2).unwrap(), inertia_path(3).unwrap());
        assert_eq!(inertia_complete_bipartite(2, 2).unwrap(), inertia_cycle(4).unwrap());
        assert_eq!(inertia_complete_bipartite(1, 1).unwrap(), set("T_[1,2]"));
        assert_eq!(inertia_complete_bipartite(2, 3).unwrap(), set("T_[3,5] U T^1_[2,2]"));
        assert!(inertia_complete_bipartite(3, 2).is_err());
    }

    #[test]
    fn bipartite_join_shared_term() {
        for (a, b, c, d) in [(2, 3, 2, 4), (3, 4, 2, 3), (4, 4, 4, 4)] {
            let n = a + b + c + d - 1;
            let shared = bipartite_part(a, b).add(&bipartite_part(c, d)).cap(n);
            let claimed = terms(&[
                (0, b + d, n),
                (1, 2 + b, a + b + d - 1),
                (1, 2 + d, b + c + d - 1),
                (2, 4, b + d - 2),
            ]
            .map(|(k, lo, hi)| (k, lo as i64, hi as i64)));
            assert_eq!(shared, claimed, "K_{a},{b} + K_{c},{d}");
        }
        assert_eq!(inertia_bipartite_join(1, 1, 1, 1, BipartiteCase::AC).unwrap(), inertia_path(3).unwrap());
    }

    #[test]
    fn bipartite_join_min_rank_at_most_four() {
        for a in 2..=4 {
            for b in a..=4 {
                for c in 2..=4 {
                    for d in c..=4 {
                        for case in BipartiteCase::ALL {
                            let s = inertia_bipartite_join(a, b, c, d, case).unwrap();
                            assert!(s.min_rank().unwrap() <= 4);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dispatcher() {
        let r = inertia_formula(&FamilySpec::DisjointPaths(vec![1, 1])).unwrap();
        assert_eq!(r.set, set("T_[0,2]"));
        let r = inertia_formula(&FamilySpec::DisjointUnion(vec![FamilySpec::Path(1), FamilySpec::Path(1)])).unwrap();
        assert_eq!(r.set, set("T_[0,2]"));
        let nova = Nova::new(vec![3], vec![1, 1, 1]);
        let r = inertia_formula(&FamilySpec::Supernova(nova)).unwrap();
        assert_eq!(r.set, inertia_supernova(6, 1, 3).unwrap());
        assert_eq!(r.provenance, Provenance::Supernova);
        let r = inertia_formula(&FamilySpec::Supernova(Nova::new(vec![], vec![2, 2]))).unwrap();
        assert_eq!(r.provenance, Provenance::GeneralizedStar);
        let p = FamilySpec::Pulsar {
            first: Nova::new(vec![3], vec![1]),
            second: Nova::new(vec![3], vec![1]),
            bridge: 5,
            gap: 2,
        };
        let r = inertia_formula(&p).unwrap();
        assert_eq!(r.order(), p.build().unwrap().order());
        let j = FamilySpec::Join {
            left: Box::new(FamilySpec::Cycle(5)),
            left_at: 0,
            right: Box::new(FamilySpec::Path(3)),
            right_at: 1,
        };
        assert!(matches!(inertia_formula(&j), Err(FormulaError::Unsupported(_))));
    }
}
