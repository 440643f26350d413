//! Randomly colored red/blue families against integral algorithms.
//!
//! Each phase brings two edges on the same "old" vertices. One is colored
//! red and keeps its private vertices untouched forever; the other is blue
//! and hands one private vertex to every later phase. An online algorithm
//! cannot tell the two apart when they arrive, yet any blue edge it keeps
//! blocks everything afterwards.

use std::collections::BTreeMap;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::{rng, Rng};
use crate::error::{Error, Result};
use crate::hypergraph::{parse_instance, serialize_instance, EdgeId, Instance, ResourceId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColoredInstance {
    pub instance: Instance,
    /// Edge pairs in arrival order, one pair per phase.
    pub phases: Vec<(EdgeId, EdgeId)>,
    pub colors: BTreeMap<EdgeId, Color>,
    /// The sets `A_1..A_{k/2}` used to extend the recursive half (H_k only).
    pub a_sets: Option<Vec<Vec<ResourceId>>>,
}

#[derive(Serialize, Deserialize)]
struct ColorFile {
    phases: Vec<(EdgeId, EdgeId)>,
    colors: BTreeMap<EdgeId, Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a_sets: Option<Vec<Vec<ResourceId>>>,
}

impl ColoredInstance {
    pub fn red_edges(&self) -> Vec<EdgeId> {
        self.colors.iter().filter(|(_, c)| **c == Color::Red).map(|(e, _)| *e).collect()
    }

    /// The color metadata alone, as written next to a generated instance.
    pub fn colors_json(&self) -> String {
        let file = ColorFile {
            phases: self.phases.clone(),
            colors: self.colors.clone(),
            a_sets: self.a_sets.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("color metadata serializes");
        s.push('\n');
        s
    }

    /// Instance file with `colors`, `phases` (and `a_sets`) merged in.
    pub fn to_json(&self) -> String {
        let mut inst: serde_json::Value =
            serde_json::from_str(&serialize_instance(&self.instance)).expect("valid json");
        let meta: serde_json::Value = serde_json::from_str(&self.colors_json()).expect("valid json");
        if let (Some(a), serde_json::Value::Object(b)) = (inst.as_object_mut(), meta) {
            a.extend(b);
        }
        let mut s = serde_json::to_string_pretty(&inst).expect("json serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<ColoredInstance> {
        let instance = parse_instance(text)?;
        let meta: ColorFile = serde_json::from_str(text).map_err(Error::from_json)?;
        Ok(ColoredInstance { instance, phases: meta.phases, colors: meta.colors, a_sets: meta.a_sets })
    }
}

struct Phase {
    first: Vec<usize>,
    second: Vec<usize>,
    first_red: bool,
}

struct Builder {
    rng: Rng,
    next: usize,
}

impl Builder {
    fn fresh(&mut self, n: usize) -> Vec<usize> {
        let v: Vec<usize> = (self.next..self.next + n).collect();
        self.next += n;
        v
    }

    fn coin(&mut self) -> bool {
        self.rng.next_u64() >> 63 == 1
    }

    /// The `k/2` phases of G_k plus the unconsumed private vertices of each
    /// blue edge.
    fn gk_phases(&mut self, k: usize) -> (Vec<Phase>, Vec<Vec<usize>>) {
        let mut phases = Vec::with_capacity(k / 2);
        let mut pools: Vec<Vec<usize>> = Vec::new();
        for _ in 0..k / 2 {
            let shared: Vec<usize> = pools.iter_mut().map(|p| p.remove(0)).collect();
            let own = k - shared.len();
            let (p1, p2) = (self.fresh(own), self.fresh(own));
            let first_red = self.coin();
            pools.push(if first_red { p2.clone() } else { p1.clone() });
            let join = |p: Vec<usize>| shared.iter().copied().chain(p).collect::<Vec<_>>();
            phases.push(Phase { first: join(p1), second: join(p2), first_red });
        }
        (phases, pools)
    }

    fn hk_phases(&mut self, k: usize) -> (Vec<Phase>, Option<Vec<Vec<usize>>>) {
        if k == 1 {
            let v = self.fresh(1);
            let first_red = self.coin();
            return (vec![Phase { first: v.clone(), second: v, first_red }], None);
        }
        let (mut phases, pools) = self.gk_phases(k);
        let a_sets: Vec<Vec<usize>> = (0..k / 2).map(|i| pools.iter().map(|p| p[i]).collect()).collect();
        let (sub, _) = self.hk_phases(k / 2);
        for (mut ph, a) in sub.into_iter().zip(&a_sets) {
            ph.first.extend(a);
            ph.second.extend(a);
            phases.push(ph);
        }
        (phases, Some(a_sets))
    }

    fn finish(self, k: usize, phases: Vec<Phase>, a_sets: Option<Vec<Vec<usize>>>) -> ColoredInstance {
        let mut edges = Vec::with_capacity(2 * phases.len());
        let mut pairs = Vec::with_capacity(phases.len());
        let mut colors = BTreeMap::new();
        for ph in phases {
            let (a, b) = (EdgeId(edges.len()), EdgeId(edges.len() + 1));
            let (ca, cb) = if ph.first_red { (Color::Red, Color::Blue) } else { (Color::Blue, Color::Red) };
            colors.insert(a, ca);
            colors.insert(b, cb);
            pairs.push((a, b));
            edges.push(ph.first);
            edges.push(ph.second);
        }
        ColoredInstance {
            instance: Instance::unweighted(k.max(2), self.next, edges),
            phases: pairs,
            colors,
            a_sets: a_sets.map(|s| s.into_iter().map(|v| v.into_iter().map(ResourceId).collect()).collect()),
        }
    }
}

/// The `k/2`-phase red/blue distribution; the red edges form a matching of
/// size `k/2`.
pub fn gen_gk(k: usize, seed: u64) -> Result<ColoredInstance> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::Parameter(format!("k must be even and at least 2, got {k}")));
    }
    let mut b = Builder { rng: rng(seed), next: 0 };
    let (phases, _) = b.gk_phases(k);
    Ok(b.finish(k, phases, None))
}

/// The recursive `k`-phase distribution; the red edges form a perfect-size
/// matching of `k` edges.
pub fn gen_hk(k: usize, seed: u64) -> Result<ColoredInstance> {
    if k < 2 || !k.is_power_of_two() {
        return Err(Error::Parameter(format!("k must be a power of 2 and at least 2, got {k}")));
    }
    let mut b = Builder { rng: rng(seed), next: 0 };
    let (phases, a_sets) = b.hk_phases(k);
    Ok(b.finish(k, phases, a_sets))
}

/// The base of the recursion: a red and a blue singleton on one vertex.
pub fn gen_h1(seed: u64) -> ColoredInstance {
    let mut b = Builder { rng: rng(seed), next: 0 };
    let (phases, _) = b.hk_phases(1);
    b.finish(1, phases, None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RedBlueViolation {
    /// The phase is not two existing, consecutive, oppositely colored edges.
    Phase { phase: usize },
    /// An edge belongs to no phase.
    Unphased(EdgeId),
    RedsOverlap(EdgeId, EdgeId),
    BlueMissesLater { blue: EdgeId, later: EdgeId },
    RedMeetsLater { red: EdgeId, later: EdgeId },
}

/// Checks that phases pair every edge with one red and one blue, that red
/// edges are disjoint, that blue edges meet every edge of later phases and
/// that red edges meet none of them.
pub fn verify_redblue(ci: &ColoredInstance) -> Vec<RedBlueViolation> {
    let inst = &ci.instance;
    let n = inst.num_edges();
    let mut out = Vec::new();
    let mut phase_of = vec![None; n];
    let mut expect = 0;
    for (p, &(a, b)) in ci.phases.iter().enumerate() {
        let colors = (ci.colors.get(&a), ci.colors.get(&b));
        let ok = a.0 == expect
            && b.0 == expect + 1
            && b.0 < n
            && matches!(colors, (Some(x), Some(y)) if x != y);
        if !ok {
            out.push(RedBlueViolation::Phase { phase: p });
        }
        for e in [a, b] {
            if e.0 < n {
                phase_of[e.0] = Some(p);
            }
        }
        expect = b.0 + 1;
    }
    for (e, p) in phase_of.iter().enumerate() {
        if p.is_none() {
            out.push(RedBlueViolation::Unphased(EdgeId(e)));
        }
    }

    let color = |e: usize| ci.colors.get(&EdgeId(e)).copied();
    let reds: Vec<usize> = (0..n).filter(|&e| color(e) == Some(Color::Red)).collect();
    for (i, &a) in reds.iter().enumerate() {
        for &b in &reds[i + 1..] {
            if inst.arrivals[a].intersects(&inst.arrivals[b]) {
                out.push(RedBlueViolation::RedsOverlap(EdgeId(a), EdgeId(b)));
            }
        }
    }
    for e in 0..n {
        let Some(pe) = phase_of[e] else { continue };
        for later in 0..n {
            let Some(pl) = phase_of[later] else { continue };
            if pl <= pe {
                continue;
            }
            let meets = inst.arrivals[e].intersects(&inst.arrivals[later]);
            match color(e) {
                Some(Color::Blue) if !meets => out.push(RedBlueViolation::BlueMissesLater {
                    blue: EdgeId(e),
                    later: EdgeId(later),
                }),
                Some(Color::Red) if meets => out.push(RedBlueViolation::RedMeetsLater {
                    red: EdgeId(e),
                    later: EdgeId(later),
                }),
                _ => {}
            }
        }
    }
    out
}
