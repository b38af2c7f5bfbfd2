//! Brute-force realization oracle.
//!
//! Enumerates (or samples) symmetric matrices with a graph's zero/non-zero
//! pattern over a finite grid of entry values and records which inertia
//! points occur. An attained point is a certificate of membership; a point
//! that is never attained proves nothing.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{InertiaPoint, InertiaSet};
use crate::graphs::Graph;
use crate::linalg::{integer_inertia, jacobi_eigenvalues};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_BUDGET: u64 = 2_000_000;
pub const DEFAULT_MAX_ORDER: usize = 7;
pub const HARD_MAX_ORDER: usize = 10;
pub const DEFAULT_SEED: u64 = 0x5EED_1E27;

/// Work is split into this many chunks regardless of thread count, so that
/// sampled matrices and witnesses do not depend on the machine.
const CHUNKS: u64 = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("matrix is not symmetric at ({i}, {j})")]
    NonSymmetric { i: usize, j: usize },
    #[error("entry ({i}, {j}) does not match the graph's zero/non-zero pattern")]
    PatternViolation { i: usize, j: usize },
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("graph order {order} exceeds the oracle cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

/// A real symmetric matrix whose off-diagonal support is exactly a graph's
/// edge set.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    order: usize,
    entries: Vec<f64>,
}

impl Realization {
    /// Validates a row-major `order * order` matrix against `g`.
    pub fn new(g: &Graph, entries: Vec<f64>) -> Result<Realization, OracleError> {
        let n = g.order();
        if entries.len() != n * n {
            return Err(OracleError::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(OracleError::NonSymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if (entries[i * n + j] != 0.0) != g.has_edge(i, j) {
                    return Err(OracleError::PatternViolation { i, j });
                }
            }
        }
        Ok(Realization { order: n, entries })
    }

    /// Builds the matrix from its diagonal and one value per edge, in the
    /// order of [`Graph::edges`].
    pub fn from_parts(g: &Graph, diag: &[f64], offdiag: &[f64]) -> Result<Realization, OracleError> {
        let n = g.order();
        if diag.len() != n {
            return Err(OracleError::DimensionMismatch { expected: n, got: diag.len() });
        }
        if offdiag.len() != g.edge_count() {
            return Err(OracleError::DimensionMismatch { expected: g.edge_count(), got: offdiag.len() });
        }
        let mut entries = vec![0.0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        for (&(u, v), &x) in g.edges().iter().zip(offdiag) {
            entries[u * n + v] = x;
            entries[v * n + u] = x;
        }
        Realization::new(g, entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.order.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn negated(&self) -> Realization {
        Realization { order: self.order, entries: self.entries.iter().map(|x| -x).collect() }
    }

    /// `D A D` for the diagonal matrix `D = diag(d)`. Non-zero `d` keeps the
    /// pattern, so the result is again a realization of the same graph.
    pub fn scaled(&self, d: &[f64]) -> Result<Realization, OracleError> {
        let n = self.order;
        if d.len() != n {
            return Err(OracleError::DimensionMismatch { expected: n, got: d.len() });
        }
        if let Some(i) = d.iter().position(|&x| x == 0.0 || !x.is_finite()) {
            return Err(OracleError::InvalidConfig(format!("scaling entry {i} must be finite and non-zero")));
        }
        let entries = (0..n * n).map(|k| d[k / n] * self.entries[k] * d[k % n]).collect();
        Ok(Realization { order: n, entries })
    }
}

impl Serialize for Realization {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

/// Eigenvalue sign counts of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatrixInertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
    pub tolerance_used: f64,
}

impl MatrixInertia {
    pub fn point(&self) -> InertiaPoint {
        InertiaPoint::new(self.pos, self.neg)
    }
}

/// Inertia of a realization. An eigenvalue is zero iff
/// `|λ| <= tol * max(1, max |λ|)`.
pub fn matrix_inertia(r: &Realization, tol: f64) -> Result<MatrixInertia, OracleError> {
    symmetric_inertia(&r.entries, r.order, tol)
}

/// Inertia of an arbitrary row-major symmetric matrix.
pub fn symmetric_inertia(entries: &[f64], n: usize, tol: f64) -> Result<MatrixInertia, OracleError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(OracleError::InvalidConfig(format!("tolerance must be positive, got {tol}")));
    }
    if entries.len() != n * n {
        return Err(OracleError::DimensionMismatch { expected: n * n, got: entries.len() });
    }
    for i in 0..n {
        for j in i + 1..n {
            if entries[i * n + j] != entries[j * n + i] {
                return Err(OracleError::NonSymmetric { i, j });
            }
        }
    }
    Ok(classify(&jacobi_eigenvalues(entries, n), tol))
}

fn classify(eigenvalues: &[f64], tol: f64) -> MatrixInertia {
    let scale = eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let threshold = tol * scale;
    let mut out = MatrixInertia { pos: 0, neg: 0, zero: 0, tolerance_used: threshold };
    for &x in eigenvalues {
        if x.abs() <= threshold {
            out.zero += 1;
        } else if x > 0.0 {
            out.pos += 1;
        } else {
            out.neg += 1;
        }
    }
    out
}

/// Candidate values for off-diagonal (edge) and diagonal entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub offdiag: Vec<f64>,
    pub diag: Vec<f64>,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { offdiag: vec![-2.0, -1.0, 1.0, 2.0], diag: vec![-2.0, -1.0, 0.0, 1.0, 2.0] }
    }
}

impl Grid {
    pub fn new(offdiag: Vec<f64>, diag: Vec<f64>) -> Result<Grid, OracleError> {
        let g = Grid { offdiag, diag };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if self.offdiag.is_empty() || self.diag.is_empty() {
            return Err(OracleError::InvalidGrid("value sets must be non-empty".into()));
        }
        if self.offdiag.iter().chain(&self.diag).any(|x| !x.is_finite()) {
            return Err(OracleError::InvalidGrid("values must be finite".into()));
        }
        if self.offdiag.contains(&0.0) {
            return Err(OracleError::InvalidGrid("off-diagonal values must be non-zero".into()));
        }
        Ok(())
    }

    /// Number of matrices for a graph, saturating at `u128::MAX`.
    pub fn size(&self, g: &Graph) -> u128 {
        let mut total: u128 = 1;
        for _ in 0..g.order() {
            total = total.saturating_mul(self.diag.len() as u128);
        }
        for _ in 0..g.edge_count() {
            total = total.saturating_mul(self.offdiag.len() as u128);
        }
        total
    }

    fn integer_values(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let conv = |v: &[f64]| -> Option<Vec<i64>> {
            v.iter().map(|&x| (x.fract() == 0.0 && x.abs() <= 1e6).then_some(x as i64)).collect()
        };
        Some((conv(&self.offdiag)?, conv(&self.diag)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub grid: Grid,
    pub budget: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub max_order: usize,
    /// Worker threads; 0 uses the available parallelism.
    pub threads: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid: Grid::default(),
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            tolerance: DEFAULT_TOLERANCE,
            max_order: DEFAULT_MAX_ORDER,
            threads: 0,
        }
    }
}

/// Everything the oracle learned about one graph.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub attained: InertiaSet,
    /// First witness per attained point, in chunk order.
    pub witnesses: BTreeMap<InertiaPoint, Realization>,
    pub matrices_tested: u64,
    pub exhaustive: bool,
    pub seed: u64,
    /// True when eigenvalue signs were counted exactly over the integers.
    pub exact: bool,
    /// Matrices with `pos + neg + zero != order`.
    pub conservation_failures: u64,
    /// Matrices where `-A` did not swap `pos` and `neg`.
    pub duality_failures: u64,
}

#[derive(Default)]
struct ChunkResult {
    first: BTreeMap<InertiaPoint, Vec<f64>>,
    tested: u64,
    conservation_failures: u64,
    duality_failures: u64,
}

struct Job<'a> {
    g: &'a Graph,
    grid: &'a Grid,
    ints: Option<(Vec<i64>, Vec<i64>)>,
    tol: f64,
}

impl Job<'_> {
    fn n(&self) -> usize {
        self.g.order()
    }

    /// Digits: one diagonal choice per vertex, then one off-diagonal choice
    /// per edge.
    fn radices(&self) -> Vec<u64> {
        let mut r = vec![self.grid.diag.len() as u64; self.n()];
        r.extend(std::iter::repeat_n(self.grid.offdiag.len() as u64, self.g.edge_count()));
        r
    }

    fn fill_f64(&self, digits: &[u64], out: &mut [f64]) {
        let n = self.n();
        out.fill(0.0);
        for i in 0..n {
            out[i * n + i] = self.grid.diag[digits[i] as usize];
        }
        for (e, &(u, v)) in self.g.edges().iter().enumerate() {
            let x = self.grid.offdiag[digits[n + e] as usize];
            out[u * n + v] = x;
            out[v * n + u] = x;
        }
    }

    fn fill_i64(&self, ints: &(Vec<i64>, Vec<i64>), digits: &[u64], out: &mut [i64]) {
        let n = self.n();
        out.fill(0);
        for i in 0..n {
            out[i * n + i] = ints.1[digits[i] as usize];
        }
        for (e, &(u, v)) in self.g.edges().iter().enumerate() {
            let x = ints.0[digits[n + e] as usize];
            out[u * n + v] = x;
            out[v * n + u] = x;
        }
    }

    fn numeric(&self, m: &[f64]) -> (usize, usize, usize) {
        let mi = classify(&jacobi_eigenvalues(m, self.n()), self.tol);
        (mi.pos, mi.neg, mi.zero)
    }

    fn visit(&self, digits: &[u64], fm: &mut [f64], im: &mut [i64], out: &mut ChunkResult) {
        let n = self.n();
        let exact = self.ints.as_ref().and_then(|ints| {
            self.fill_i64(ints, digits, im);
            let plus = integer_inertia(im, n)?;
            im.iter_mut().for_each(|x| *x = -*x);
            let minus = integer_inertia(im, n)?;
            Some((plus, minus))
        });
        let (plus, minus) = match exact {
            Some(pm) => pm,
            None => {
                self.fill_f64(digits, fm);
                let plus = self.numeric(fm);
                fm.iter_mut().for_each(|x| *x = -*x);
                (plus, self.numeric(fm))
            }
        };
        out.tested += 1;
        if plus.0 + plus.1 + plus.2 != n || minus.0 + minus.1 + minus.2 != n {
            out.conservation_failures += 1;
        }
        if (minus.0, minus.1, minus.2) != (plus.1, plus.0, plus.2) {
            out.duality_failures += 1;
        }
        let p = InertiaPoint::new(plus.0, plus.1);
        out.first.entry(p).or_insert_with(|| {
            self.fill_f64(digits, fm);
            fm.to_vec()
        });
    }
}

fn decode(mut index: u128, radices: &[u64], digits: &mut [u64]) {
    for (d, &r) in digits.iter_mut().zip(radices) {
        *d = (index % r as u128) as u64;
        index /= r as u128;
    }
}

/// Runs the grid (exhaustively if it fits the budget, otherwise by seeded
/// uniform sampling) and records every attained inertia point.
pub fn enumerate_realizations(g: &Graph, config: &OracleConfig) -> Result<Enumeration, OracleError> {
    config.grid.validate()?;
    if config.max_order > HARD_MAX_ORDER {
        return Err(OracleError::InvalidConfig(format!(
            "order cap {} exceeds the hard maximum {HARD_MAX_ORDER}",
            config.max_order
        )));
    }
    if g.order() > config.max_order {
        return Err(OracleError::TooLarge { order: g.order(), cap: config.max_order });
    }
    if !(config.tolerance > 0.0 && config.tolerance.is_finite()) {
        return Err(OracleError::InvalidConfig(format!("tolerance must be positive, got {}", config.tolerance)));
    }
    if config.budget == 0 {
        return Err(OracleError::InvalidConfig("budget must be positive".into()));
    }

    let job = Job { g, grid: &config.grid, ints: config.grid.integer_values(), tol: config.tolerance };
    let radices = job.radices();
    let total = config.grid.size(g);
    let exhaustive = total <= config.budget as u128;
    let work = if exhaustive { total as u64 } else { config.budget };
    let chunks = CHUNKS.min(work);
    let bounds = |c: u64| (work * c / chunks, work * (c + 1) / chunks);

    let run_chunk = |c: u64| -> ChunkResult {
        let n = g.order();
        let mut out = ChunkResult::default();
        let mut digits = vec![0u64; radices.len()];
        let mut fm = vec![0.0; n * n];
        let mut im = vec![0i64; n * n];
        let (start, end) = bounds(c);
        if exhaustive {
            for idx in start..end {
                decode(idx as u128, &radices, &mut digits);
                job.visit(&digits, &mut fm, &mut im, &mut out);
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(c);
            for _ in start..end {
                for (d, &r) in digits.iter_mut().zip(&radices) {
                    *d = rng.gen_range(0..r);
                }
                job.visit(&digits, &mut fm, &mut im, &mut out);
            }
        }
        out
    };

    let threads = match config.threads {
        0 => std::thread::available_parallelism().map_or(1, |p| p.get()),
        t => t,
    }
    .min(chunks as usize)
    .max(1);
    let results: Vec<Mutex<Option<ChunkResult>>> = (0..chunks).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let c = next.fetch_add(1, Ordering::Relaxed);
        if c >= chunks as usize {
            break;
        }
        let r = run_chunk(c as u64);
        *results[c].lock().expect("chunk slot poisoned") = Some(r);
    };
    if threads == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(worker);
            }
        });
    }

    let mut e = Enumeration {
        attained: InertiaSet::empty(),
        witnesses: BTreeMap::new(),
        matrices_tested: 0,
        exhaustive,
        seed: config.seed,
        exact: job.ints.is_some(),
        conservation_failures: 0,
        duality_failures: 0,
    };
    for slot in results {
        let r = slot.into_inner().expect("chunk slot poisoned").expect("every chunk ran");
        e.matrices_tested += r.tested;
        e.conservation_failures += r.conservation_failures;
        e.duality_failures += r.duality_failures;
        for (p, m) in r.first {
            e.witnesses.entry(p).or_insert_with(|| Realization { order: g.order(), entries: m });
        }
    }
    e.attained = e.witnesses.keys().copied().collect();
    Ok(e)
}

fn as_point_list<S: Serializer>(set: &InertiaSet, s: S) -> Result<S::Ok, S::Error> {
    set.points().serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub order: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub point: InertiaPoint,
    pub matrix: Realization,
}

/// Oracle verdict for one graph against a predicted inertia set.
#[derive(Debug, Clone, Serialize)]
pub struct AttainedReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices_tested: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<bool>,
    #[serde(serialize_with = "as_point_list")]
    pub attained: InertiaSet,
    pub witnesses: Vec<Witness>,
    #[serde(serialize_with = "as_point_list")]
    pub predicted: InertiaSet,
    pub containment_ok: bool,
    #[serde(serialize_with = "as_point_list")]
    pub violations: InertiaSet,
    /// Predicted points the grid did not reach. Informational only.
    #[serde(serialize_with = "as_point_list")]
    pub missing_predicted: InertiaSet,
}

/// Compares attained points with a prediction. Only points outside the
/// prediction are failures.
pub fn verify_containment(attained: &InertiaSet, predicted: &InertiaSet) -> AttainedReport {
    let violations = attained.difference(predicted);
    AttainedReport {
        graph: None,
        grid: None,
        seed: None,
        matrices_tested: None,
        exhaustive: None,
        attained: attained.clone(),
        witnesses: Vec::new(),
        predicted: predicted.clone(),
        containment_ok: violations.is_empty(),
        violations,
        missing_predicted: predicted.difference(attained),
    }
}

impl AttainedReport {
    pub fn from_enumeration(g: &Graph, config: &OracleConfig, e: &Enumeration, predicted: &InertiaSet) -> AttainedReport {
        let mut report = verify_containment(&e.attained, predicted);
        report.graph = Some(GraphSummary { order: g.order(), edges: g.edges().to_vec() });
        report.grid = Some(config.grid.clone());
        report.seed = Some(e.seed);
        report.matrices_tested = Some(e.matrices_tested);
        report.exhaustive = Some(e.exhaustive);
        report.witnesses = e.witnesses.iter().map(|(&point, m)| Witness { point, matrix: m.clone() }).collect();
        report
    }
}

/// The positive semidefinite rank `n - 1` realization of `P_n`: diagonal
/// `(1, 2, ..., 2, 1)` and `-1` on every edge.
pub fn witness_minrank_path(n: usize) -> Result<Realization, OracleError> {
    if n < 2 {
        return Err(OracleError::InvalidConfig(format!("path witness needs n >= 2, got {n}")));
    }
    let g = Graph::path(n);
    let diag: Vec<f64> = (0..n).map(|i| if i == 0 || i == n - 1 { 1.0 } else { 2.0 }).collect();
    Realization::from_parts(&g, &diag, &vec![-1.0; n - 1])
}
