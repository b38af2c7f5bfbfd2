//! Inertia sets by repeated vertex joins along the block / cut-vertex tree.
//!
//! For graphs `F` and `G` on at least two vertices sharing exactly one vertex
//! `v`, with `n = |F| + |G| - 1`:
//!
//! ```text
//! I(F ⊕_v G) = [I(F) + I(G)]_n ∪ [I(F - v) + I(G - v) + T^1_[2,2]]_n
//! ```
//!
//! The engine peels one leaf block at a time, using closed forms for the
//! blocks themselves (edges, cycles, complete bipartite graphs) and summing
//! over components whenever a vertex deletion disconnects a graph.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{InertiaSet, Trapezoid};
use crate::formulas;
use crate::graphs::{canonical_form, cut_vertex_blocks, BlockKind, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("block on vertices {vertices:?} is not an edge, cycle or complete bipartite graph")]
    UnsupportedBlock { vertices: Vec<usize>, kind: BlockKind },
    #[error("graph is disconnected; split it into components first")]
    Disconnected,
    #[error("join inputs violate preconditions: {0}")]
    InvalidJoin(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The four inertia sets and vertex count that determine a vertex join.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinInputs {
    pub i_f: InertiaSet,
    pub i_g: InertiaSet,
    pub i_f_minus_v: InertiaSet,
    pub i_g_minus_v: InertiaSet,
    /// `|F| + |G| - 1`
    pub n: usize,
}

pub fn join_inertia(j: &JoinInputs) -> Result<InertiaSet, EngineError> {
    if j.n < 3 {
        return Err(EngineError::InvalidJoin(format!("n = {} < 3", j.n)));
    }
    for (name, s) in [("I(F)", &j.i_f), ("I(G)", &j.i_g), ("I(F-v)", &j.i_f_minus_v), ("I(G-v)", &j.i_g_minus_v)] {
        if s.is_empty() {
            return Err(EngineError::InvalidJoin(format!("{name} is empty")));
        }
    }
    let whole = j.i_f.add(&j.i_g).cap(j.n);
    let bump = InertiaSet::from_trapezoid(Trapezoid::new(1, 2, 2));
    let split = j.i_f_minus_v.add(&j.i_g_minus_v).add(&bump).cap(j.n);
    Ok(whole.union(&split))
}

/// How the engine chooses which leaf block to peel next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelOrder {
    /// The leaf block listed first by [`cut_vertex_blocks`].
    First,
    /// A uniformly random leaf block at every step.
    Random(u64),
}

/// Largest graph whose memo key is computed.
const MEMO_MAX_ORDER: usize = 10;
const MEMO_MAX_ORDERINGS: usize = 40_320;

type MemoKey = (usize, Vec<(usize, usize)>);

pub struct Engine {
    memo: HashMap<MemoKey, InertiaSet>,
    memoize: bool,
    rng: Option<ChaCha8Rng>,
    joins: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Engine {
        Engine { memo: HashMap::new(), memoize: true, rng: None, joins: 0 }
    }

    /// An engine with the given peel order. Random peeling disables the memo
    /// so that every subproblem is actually recomputed along the new order.
    pub fn with_peel_order(order: PeelOrder) -> Engine {
        match order {
            PeelOrder::First => Engine::new(),
            PeelOrder::Random(seed) => Engine {
                memo: HashMap::new(),
                memoize: false,
                rng: Some(ChaCha8Rng::seed_from_u64(seed)),
                joins: 0,
            },
        }
    }

    /// Number of join steps evaluated so far.
    pub fn joins(&self) -> usize {
        self.joins
    }

    /// Inertia set of any supported graph: components are handled separately
    /// and summed, isolated vertices contribute `T_[0,1]`.
    pub fn inertia(&mut self, g: &Graph) -> Result<InertiaSet, EngineError> {
        let mut total = InertiaSet::origin();
        for comp in g.connected_components() {
            total = total.add(&self.recursive_inertia(&comp)?);
        }
        Ok(total)
    }

    /// Inertia set of a connected graph whose blocks are all supported.
    pub fn recursive_inertia(&mut self, g: &Graph) -> Result<InertiaSet, EngineError> {
        if !g.is_connected() {
            return Err(EngineError::Disconnected);
        }
        if g.order() <= 1 {
            return Ok(InertiaSet::from_trapezoid(Trapezoid::flat(0, g.order())));
        }
        let key = self.memo_key(g);
        if let Some(hit) = key.as_ref().and_then(|k| self.memo.get(k)) {
            return Ok(hit.clone());
        }

        let tree = cut_vertex_blocks(g)?;
        let result = if tree.blocks.len() == 1 {
            let block = &tree.blocks[0];
            block_inertia(block.kind).ok_or_else(|| EngineError::UnsupportedBlock {
                vertices: block.vertices.clone(),
                kind: block.kind,
            })?
        } else {
            let leaves = tree.leaf_blocks();
            let (leaf, v) = match self.rng.as_mut() {
                Some(rng) => *leaves.choose(rng).expect("a block tree with two blocks has leaves"),
                None => leaves[0],
            };
            let block = &tree.blocks[leaf];
            let rest: Vec<usize> = (0..g.order()).filter(|&x| x == v || !block.contains(x)).collect();
            let f = g.induced_subgraph(&block.vertices);
            let h = g.induced_subgraph(&rest);
            let v_in_f = block.vertices.binary_search(&v).expect("cut vertex lies in its block");
            let v_in_h = rest.binary_search(&v).expect("cut vertex lies in the rest");
            let inputs = JoinInputs {
                i_f: self.recursive_inertia(&f)?,
                i_g: self.recursive_inertia(&h)?,
                i_f_minus_v: self.inertia(&f.delete_vertex(v_in_f)?)?,
                i_g_minus_v: self.inertia(&h.delete_vertex(v_in_h)?)?,
                n: g.order(),
            };
            self.joins += 1;
            join_inertia(&inputs)?
        };

        if let Some(k) = key {
            self.memo.insert(k, result.clone());
        }
        Ok(result)
    }

    fn memo_key(&self, g: &Graph) -> Option<MemoKey> {
        if !self.memoize || g.order() > MEMO_MAX_ORDER {
            return None;
        }
        canonical_form(g, MEMO_MAX_ORDERINGS).map(|edges| (g.order(), edges))
    }
}

/// Closed-form inertia of a single block, if its shape is supported.
pub fn block_inertia(kind: BlockKind) -> Option<InertiaSet> {
    match kind {
        BlockKind::Edge => formulas::inertia_path(2).ok(),
        BlockKind::Cycle(k) => formulas::inertia_cycle(k).ok(),
        BlockKind::CompleteBipartite(a, b) => formulas::inertia_complete_bipartite(a, b).ok(),
        BlockKind::Other => None,
    }
}

/// Inertia set of a connected graph with a fresh engine.
pub fn recursive_inertia(g: &Graph) -> Result<InertiaSet, EngineError> {
    Engine::new().recursive_inertia(g)
}
