use super::price::PriceBase;
use super::stepfill::StepFill;
use crate::hypergraph::{EdgeId, HyperEdge, ResourceId};

/// Mutable state of one online run.
///
/// Resources and edges are registered lazily, so adaptive adversaries can
/// keep minting fresh vertices.
#[derive(Clone, Debug)]
pub struct AlgorithmState {
    price: PriceBase,
    pub(crate) x: Vec<f64>,
    pub(crate) y: Vec<f64>,
    pub(crate) weights: Vec<f64>,
    pub(crate) vertices: Vec<Vec<ResourceId>>,
    /// Per resource: edges with `y > 0`, ordered by `(weight, id)`.
    pub(crate) support: Vec<Vec<EdgeId>>,
}

impl AlgorithmState {
    pub fn new(k: usize) -> Self {
        AlgorithmState {
            price: PriceBase::new(k),
            x: Vec::new(),
            y: Vec::new(),
            weights: Vec::new(),
            vertices: Vec::new(),
            support: Vec::new(),
        }
    }

    /// A state whose resources start at the given fill levels with no edges
    /// behind them. Only meaningful for unweighted water-filling and greedy,
    /// whose decisions depend on fills alone.
    pub fn with_fills(k: usize, fills: Vec<f64>) -> Self {
        let n = fills.len();
        AlgorithmState { x: fills, support: vec![Vec::new(); n], ..AlgorithmState::new(k) }
    }

    pub fn price_base(&self) -> PriceBase {
        self.price
    }

    pub fn k(&self) -> usize {
        self.price.k()
    }

    pub fn fill(&self, r: ResourceId) -> f64 {
        self.x.get(r.0).copied().unwrap_or(0.0)
    }

    pub fn allocation(&self, e: EdgeId) -> f64 {
        self.y.get(e.0).copied().unwrap_or(0.0)
    }

    pub fn fills(&self) -> &[f64] {
        &self.x
    }

    pub fn allocations(&self) -> &[f64] {
        &self.y
    }

    pub fn num_edges(&self) -> usize {
        self.y.len()
    }

    pub(crate) fn register(&mut self, edge: &HyperEdge) {
        let id = edge.id.0;
        if self.y.len() <= id {
            self.y.resize(id + 1, 0.0);
            self.weights.resize(id + 1, 0.0);
            self.vertices.resize(id + 1, Vec::new());
        }
        self.weights[id] = edge.weight;
        self.vertices[id] = edge.vertices.clone();
        if let Some(max) = edge.vertices.iter().map(|v| v.0).max() {
            if self.x.len() <= max {
                self.x.resize(max + 1, 0.0);
                self.support.resize(max + 1, Vec::new());
            }
        }
    }

    fn support_key(&self, e: EdgeId) -> (f64, EdgeId) {
        (self.weights[e.0], e)
    }

    pub(crate) fn support_insert(&mut self, r: ResourceId, e: EdgeId) {
        let key = self.support_key(e);
        let list = &self.support[r.0];
        let pos = list.partition_point(|&f| {
            let k = (self.weights[f.0], f);
            k.0 < key.0 || (k.0 == key.0 && k.1 < key.1)
        });
        if list.get(pos) != Some(&e) {
            self.support[r.0].insert(pos, e);
        }
    }

    pub(crate) fn support_remove(&mut self, r: ResourceId, e: EdgeId) {
        self.support[r.0].retain(|&f| f != e);
    }

    pub fn step_fill(&self, r: ResourceId) -> StepFill {
        let items = self
            .support
            .get(r.0)
            .map(|l| l.iter().map(|e| (self.weights[e.0], self.y[e.0])).collect())
            .unwrap_or_default();
        StepFill::from_support(items)
    }

    /// Recomputes fills from the allocation; used to cross-check the
    /// incrementally maintained levels.
    pub fn recomputed_fills(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.x.len()];
        for (e, vs) in self.vertices.iter().enumerate() {
            for v in vs {
                x[v.0] += self.y[e];
            }
        }
        x
    }
}
