//! Trapezoid algebra for inertia sets.
//!
//! An inertia point `(p, q)` records how many positive and negative
//! eigenvalues a symmetric matrix has. The symbol `T^k_[m,n]` stands for the
//! lattice region
//!
//! ```text
//! { (p, q) : p >= k, q >= k, m <= p + q <= n }
//! ```
//!
//! Inertia sets of graphs are finite unions of such regions. The point set is
//! the canonical value; the trapezoid list is a derived view that can always
//! be recomputed with [`decompose`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operation is undefined on the empty inertia set")]
    EmptySet,
    #[error("trapezoid {0} is empty")]
    EmptyOperand(Trapezoid),
    #[error("point set is not a union of trapezoids (stuck at {0})")]
    NotRepresentable(InertiaPoint),
    #[error("T-notation parse error at byte {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },
}

/// Partial inertia `(pos, neg)` of a real symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct InertiaPoint {
    pub pos: usize,
    pub neg: usize,
}

impl InertiaPoint {
    pub const fn new(pos: usize, neg: usize) -> Self {
        InertiaPoint { pos, neg }
    }

    pub const fn rank(self) -> usize {
        self.pos + self.neg
    }

    /// The point of `-A` when `self` is the point of `A`.
    pub const fn swapped(self) -> Self {
        InertiaPoint { pos: self.neg, neg: self.pos }
    }

    /// Distance from the nearer axis.
    pub fn inset(self) -> usize {
        self.pos.min(self.neg)
    }
}

impl From<(usize, usize)> for InertiaPoint {
    fn from((pos, neg): (usize, usize)) -> Self {
        InertiaPoint { pos, neg }
    }
}

impl From<InertiaPoint> for (usize, usize) {
    fn from(p: InertiaPoint) -> Self {
        (p.pos, p.neg)
    }
}

impl fmt::Display for InertiaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)
    }
}

/// The region `T^inset_[lo,hi]`.
///
/// Any triple is accepted; a trapezoid with `lo > hi` or `hi < 2 * inset`
/// contains no points and [`Trapezoid::is_empty`] reports it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Trapezoid {
    #[serde(rename = "k")]
    pub inset: usize,
    #[serde(rename = "m")]
    pub lo: usize,
    #[serde(rename = "n")]
    pub hi: usize,
}

impl Trapezoid {
    pub const fn new(inset: usize, lo: usize, hi: usize) -> Self {
        Trapezoid { inset, lo, hi }
    }

    /// `T_[lo,hi]`, the zero-inset region.
    pub const fn flat(lo: usize, hi: usize) -> Self {
        Trapezoid { inset: 0, lo, hi }
    }

    /// Builds `T^inset_[lo,hi]` from possibly out-of-range integer bounds.
    ///
    /// Negative `lo` is clamped to zero. `None` means the region is empty.
    pub fn from_signed(inset: usize, lo: i64, hi: i64) -> Option<Self> {
        if hi < 0 {
            return None;
        }
        let t = Trapezoid::new(inset, lo.max(0) as usize, hi as usize);
        (!t.is_empty()).then_some(t)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || self.hi < 2 * self.inset
    }

    /// Smallest rank actually present: every member has rank at least `2 * inset`.
    pub fn effective_lo(&self) -> usize {
        self.lo.max(2 * self.inset)
    }

    pub fn contains(&self, p: InertiaPoint) -> bool {
        p.pos >= self.inset && p.neg >= self.inset && (self.lo..=self.hi).contains(&p.rank())
    }

    /// Same point set with `lo` raised to [`Trapezoid::effective_lo`].
    pub fn normalized(&self) -> Self {
        Trapezoid { lo: self.effective_lo(), ..*self }
    }

    /// Every lattice point of the region, in lexicographic order.
    pub fn expand(&self) -> BTreeSet<InertiaPoint> {
        let mut out = BTreeSet::new();
        if self.is_empty() {
            return out;
        }
        for rank in self.effective_lo()..=self.hi {
            for pos in self.inset..=rank - self.inset {
                out.insert(InertiaPoint::new(pos, rank - pos));
            }
        }
        out
    }
}

impl fmt::Display for Trapezoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inset == 0 {
            write!(f, "T_[{},{}]", self.lo, self.hi)
        } else {
            write!(f, "T^{}_[{},{}]", self.inset, self.lo, self.hi)
        }
    }
}

/// Closed-form sum of two nonempty trapezoids.
///
/// Insets add and rank bounds add. Bounds are normalized first, so the result
/// always equals the Minkowski sum of the two regions.
pub fn trapezoid_add_formula(a: Trapezoid, b: Trapezoid) -> Result<Trapezoid, AlgebraError> {
    for t in [a, b] {
        if t.is_empty() {
            return Err(AlgebraError::EmptyOperand(t));
        }
    }
    Ok(Trapezoid::new(
        a.inset + b.inset,
        a.effective_lo() + b.effective_lo(),
        a.hi + b.hi,
    ))
}

/// A finite set of inertia points.
///
/// Equality and ordering look only at the points. The trapezoid decomposition
/// is computed on first request and cached.
#[derive(Clone, Default)]
pub struct InertiaSet {
    points: BTreeSet<InertiaPoint>,
    decomposition: OnceLock<Option<Vec<Trapezoid>>>,
}

impl PartialEq for InertiaSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for InertiaSet {}

impl std::hash::Hash for InertiaSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.points.hash(state);
    }
}

impl fmt::Debug for InertiaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InertiaSet({self})")
    }
}

impl InertiaSet {
    pub fn empty() -> Self {
        InertiaSet::default()
    }

    /// `{(0,0)}`, the inertia set of the graph with no vertices.
    pub fn origin() -> Self {
        InertiaSet::from_points([InertiaPoint::new(0, 0)])
    }

    pub fn from_points<I, P>(points: I) -> Self
    where
        I: IntoIterator<Item = P>,
        P: Into<InertiaPoint>,
    {
        InertiaSet {
            points: points.into_iter().map(Into::into).collect(),
            decomposition: OnceLock::new(),
        }
    }

    pub fn from_trapezoid(t: Trapezoid) -> Self {
        InertiaSet { points: t.expand(), decomposition: OnceLock::new() }
    }

    pub fn from_trapezoids<I: IntoIterator<Item = Trapezoid>>(ts: I) -> Self {
        let mut points = BTreeSet::new();
        for t in ts {
            points.extend(t.expand());
        }
        InertiaSet { points, decomposition: OnceLock::new() }
    }

    pub fn points(&self) -> &BTreeSet<InertiaPoint> {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = InertiaPoint> + '_ {
        self.points.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: InertiaPoint) -> bool {
        self.points.contains(&p)
    }

    pub fn is_subset(&self, other: &InertiaSet) -> bool {
        self.points.is_subset(&other.points)
    }

    /// Points of `self` that are not in `other`.
    pub fn difference(&self, other: &InertiaSet) -> InertiaSet {
        InertiaSet::from_points(self.points.difference(&other.points).copied())
    }

    pub fn insert(&mut self, p: InertiaPoint) -> bool {
        let fresh = self.points.insert(p);
        if fresh {
            self.decomposition = OnceLock::new();
        }
        fresh
    }

    pub fn union(&self, other: &InertiaSet) -> InertiaSet {
        InertiaSet::from_points(self.points.union(&other.points).copied())
    }

    /// Minkowski sum. Adding the empty set gives the empty set.
    pub fn add(&self, other: &InertiaSet) -> InertiaSet {
        let mut sums: Vec<InertiaPoint> = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                sums.push(InertiaPoint::new(a.pos + b.pos, a.neg + b.neg));
            }
        }
        sums.sort_unstable();
        sums.dedup();
        InertiaSet::from_points(sums)
    }

    /// Keeps the points of rank at most `max_rank`.
    pub fn cap(&self, max_rank: usize) -> InertiaSet {
        InertiaSet::from_points(self.points.iter().copied().filter(|p| p.rank() <= max_rank))
    }

    /// Image under `(p, q) -> (q, p)`.
    pub fn swapped(&self) -> InertiaSet {
        InertiaSet::from_points(self.points.iter().map(|p| p.swapped()))
    }

    pub fn is_swap_symmetric(&self) -> bool {
        self.points.iter().all(|p| self.points.contains(&p.swapped()))
    }

    pub fn min_rank(&self) -> Result<usize, AlgebraError> {
        self.points.iter().map(|p| p.rank()).min().ok_or(AlgebraError::EmptySet)
    }

    pub fn max_rank(&self) -> Result<usize, AlgebraError> {
        self.points.iter().map(|p| p.rank()).max().ok_or(AlgebraError::EmptySet)
    }

    /// All points achieving the minimum rank.
    pub fn min_rank_line(&self) -> Result<InertiaSet, AlgebraError> {
        let mr = self.min_rank()?;
        Ok(InertiaSet::from_points(self.points.iter().copied().filter(|p| p.rank() == mr)))
    }

    /// True iff the set is exactly `T_[m,n]` for some `m <= n`.
    pub fn is_trapezoidal(&self) -> bool {
        match (self.min_rank(), self.max_rank()) {
            (Ok(lo), Ok(hi)) => {
                let t = Trapezoid::flat(lo, hi);
                // The points all lie in t, so equal counts means equal sets.
                self.points.iter().all(|p| t.contains(*p)) && t.expand().len() == self.len()
            }
            _ => false,
        }
    }

    /// Canonical trapezoid decomposition, cached on first use.
    pub fn decomposition(&self) -> Result<&[Trapezoid], AlgebraError> {
        let cached = self.decomposition.get_or_init(|| decompose(&self.points).ok());
        match cached {
            Some(ts) => Ok(ts),
            // Recompute only to recover the diagnostic point.
            None => Err(decompose(&self.points).expect_err("decomposition failed before")),
        }
    }

    /// T-notation text, or `EMPTY`.
    pub fn to_t_notation(&self) -> Result<String, AlgebraError> {
        let ts = self.decomposition()?;
        if ts.is_empty() {
            return Ok("EMPTY".to_string());
        }
        Ok(ts.iter().map(Trapezoid::to_string).collect::<Vec<_>>().join(" U "))
    }
}

impl fmt::Display for InertiaSet {
    /// T-notation when representable, otherwise the explicit point list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_t_notation() {
            Ok(s) => f.write_str(&s),
            Err(_) => {
                let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
                write!(f, "{{{}}}", pts.join(","))
            }
        }
    }
}

impl FromIterator<InertiaPoint> for InertiaSet {
    fn from_iter<I: IntoIterator<Item = InertiaPoint>>(iter: I) -> Self {
        InertiaSet::from_points(iter)
    }
}

impl From<Trapezoid> for InertiaSet {
    fn from(t: Trapezoid) -> Self {
        InertiaSet::from_trapezoid(t)
    }
}

/// Union of the expansions of a list of trapezoids.
pub fn expand_all(ts: &[Trapezoid]) -> BTreeSet<InertiaPoint> {
    ts.iter().flat_map(|t| t.expand()).collect()
}

/// Greedy canonical decomposition of a point set into trapezoids.
///
/// Each step takes, among the trapezoids contained in `points` that still
/// cover an uncovered point, the one with the smallest inset, then the
/// smallest lower rank, then the largest upper rank. Trapezoids made
/// redundant by later picks are dropped at the end.
pub fn decompose(points: &BTreeSet<InertiaPoint>) -> Result<Vec<Trapezoid>, AlgebraError> {
    let Some(max_rank) = points.iter().map(|p| p.rank()).max() else {
        return Ok(Vec::new());
    };
    let row_full = |inset: usize, rank: usize| {
        rank >= 2 * inset
            && (inset..=rank - inset).all(|pos| points.contains(&InertiaPoint::new(pos, rank - pos)))
    };

    let mut uncovered = points.clone();
    let mut picked: Vec<Trapezoid> = Vec::new();
    while let Some(&first) = uncovered.iter().next() {
        let mut choice = None;
        'search: for inset in 0..=max_rank / 2 {
            let mut lo = 2 * inset;
            while lo <= max_rank {
                if !row_full(inset, lo) {
                    lo += 1;
                    continue;
                }
                let mut hi = lo;
                while hi < max_rank && row_full(inset, hi + 1) {
                    hi += 1;
                }
                let t = Trapezoid::new(inset, lo, hi);
                if uncovered.iter().any(|p| t.contains(*p)) {
                    choice = Some(t);
                    break 'search;
                }
                lo = hi + 1;
            }
        }
        let t = choice.ok_or(AlgebraError::NotRepresentable(first))?;
        uncovered.retain(|p| !t.contains(*p));
        picked.push(t);
    }

    // Drop any trapezoid whose points are all covered by the others.
    let mut i = 0;
    while i < picked.len() {
        let t = picked[i];
        let covered = t.expand().iter().all(|p| {
            picked.iter().enumerate().any(|(j, o)| j != i && o.contains(*p))
        });
        if covered {
            picked.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(picked)
}

/// Parses `term (" U " term)*` or `EMPTY`, where
/// `term := "T" ("^" k)? "_[" m "," n "]"`.
pub fn parse_t_notation(text: &str) -> Result<InertiaSet, AlgebraError> {
    Ok(InertiaSet::from_trapezoids(parse_terms(text)?))
}

/// Parses T-notation into its literal list of terms, empty ones included.
pub fn parse_terms(text: &str) -> Result<Vec<Trapezoid>, AlgebraError> {
    let src = text.trim();
    let offset = text.len() - text.trim_start().len();
    if src == "EMPTY" {
        return Ok(Vec::new());
    }
    let mut cur = Cursor { src: src.as_bytes(), pos: 0, offset };
    let mut terms = vec![cur.term()?];
    while !cur.done() {
        cur.literal(" U ")?;
        terms.push(cur.term()?);
    }
    Ok(terms)
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Cursor<'_> {
    fn done(&self) -> bool {
        self.pos == self.src.len()
    }

    fn fail<T>(&self, expected: &str) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse { pos: self.offset + self.pos, expected: expected.to_string() })
    }

    fn literal(&mut self, lit: &str) -> Result<(), AlgebraError> {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.fail(&format!("{lit:?}"))
        }
    }

    fn number(&mut self) -> Result<usize, AlgebraError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("a nonnegative integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().or_else(|_| {
            self.pos = start;
            self.fail("an integer that fits in usize")
        })
    }

    fn term(&mut self) -> Result<Trapezoid, AlgebraError> {
        self.literal("T")?;
        let inset = if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            self.number()?
        } else {
            0
        };
        self.literal("_[")?;
        let lo = self.number()?;
        self.literal(",")?;
        let hi = self.number()?;
        self.literal("]")?;
        Ok(Trapezoid::new(inset, lo, hi))
    }
}

impl FromStr for InertiaSet {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_t_notation(s)
    }
}

impl Serialize for InertiaSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("InertiaSet", 2)?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("decomposition", &self.decomposition().ok())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for InertiaSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            points: Vec<InertiaPoint>,
        }
        let wire = Wire::deserialize(deserializer)?;
        Ok(InertiaSet::from_points(wire.points))
    }
}
