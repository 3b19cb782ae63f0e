//! The four strategy utility functions and the delta evaluator used by both
//! stages of an iteration.
//!
//! Attribute utility counts neighbors of the payoff-relevant type over κ;
//! structural utility is either triangles over C(κ,2) (embeddedness) or
//! isolated neighbors over κ (social capital). Totals stay in [0, 2] while
//! the degree cap holds.
//!
//! Deltas are computed incrementally but only over *integer* neighborhood
//! counts; the float value is always produced by the same formulas as a full
//! recomputation, so the two routes agree bitwise.

use crate::engine::Ablation;
use crate::error::{Error, Result};
use crate::graph::{AgentId, NetworkState};
use crate::strategy::{AgentProfile, AttributeDim, AttributeType, Strategy, StructureDim};

/// One agent's utility split into its two components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilityBreakdown {
    pub attribute: f64,
    pub structural: f64,
    pub total: f64,
}

/// A single edge modification at the evaluating agent, identified by the
/// other endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeChange {
    Add(AgentId),
    Delete(AgentId),
}

#[inline]
fn choose2(k: usize) -> usize {
    k * (k.saturating_sub(1)) / 2
}

#[inline]
fn per_kappa(count: usize, kappa: usize) -> f64 {
    count as f64 / kappa as f64
}

#[inline]
fn per_pairs(count: usize, kappa: usize) -> f64 {
    count as f64 / choose2(kappa) as f64
}

fn attr_value(strategy: Strategy, same: usize, degree: usize, kappa: usize, ablation: Ablation) -> f64 {
    if ablation == Ablation::IgnoreAttribute {
        return 0.0;
    }
    match strategy.attribute {
        AttributeDim::Homophily => per_kappa(same, kappa),
        AttributeDim::Heterophily => per_kappa(degree - same, kappa),
    }
}

fn struct_value(
    strategy: Strategy,
    triangles: usize,
    isolated: usize,
    kappa: usize,
    ablation: Ablation,
) -> Result<f64> {
    if ablation == Ablation::IgnoreStructure {
        return Ok(0.0);
    }
    match strategy.structure {
        StructureDim::Embedded => {
            if kappa < 2 {
                return Err(Error::config(
                    "embedded strategy requires a degree cap of at least 2",
                ));
            }
            Ok(per_pairs(triangles, kappa))
        }
        StructureDim::SocialCapital => Ok(per_kappa(isolated, kappa)),
    }
}

fn same_type_neighbors(g: &NetworkState, profiles: &[AgentProfile], v: AgentId) -> usize {
    let ty = profiles[v.index()].attr_type;
    g.neighbors(v)
        .iter()
        .filter(|&&u| profiles[u as usize].attr_type == ty)
        .count()
}

/// U_v^a: the attribute component of `v`'s utility.
pub fn attribute_utility(
    g: &NetworkState,
    profiles: &[AgentProfile],
    v: AgentId,
    kappa: usize,
    ablation: Ablation,
) -> f64 {
    let same = same_type_neighbors(g, profiles, v);
    let degree = g.neighbors(v).len();
    attr_value(profiles[v.index()].strategy, same, degree, kappa, ablation)
}

/// U_v^s: the structural component of `v`'s utility.
pub fn structural_utility(
    g: &NetworkState,
    profiles: &[AgentProfile],
    v: AgentId,
    kappa: usize,
    ablation: Ablation,
) -> Result<f64> {
    let strategy = profiles[v.index()].strategy;
    let (triangles, isolated) = match strategy.structure {
        StructureDim::Embedded => (g.triangles_at(v)?, 0),
        StructureDim::SocialCapital => (0, g.isolated_neighbors(v)?),
    };
    struct_value(strategy, triangles, isolated, kappa, ablation)
}

/// U_v = U_v^a + U_v^s.
pub fn total_utility(
    g: &NetworkState,
    profiles: &[AgentProfile],
    v: AgentId,
    kappa: usize,
    ablation: Ablation,
) -> Result<UtilityBreakdown> {
    let attribute = attribute_utility(g, profiles, v, kappa, ablation);
    let structural = structural_utility(g, profiles, v, kappa, ablation)?;
    Ok(UtilityBreakdown {
        attribute,
        structural,
        total: attribute + structural,
    })
}

/// U_v(G″) − U_v(G′), where G′ is the current graph plus the agent's own
/// pending proposal edge (if any) and G″ is G′ with `change` applied.
///
/// Pure: no state is mutated. Precondition violations (adding a present
/// edge, deleting an absent one) are contract errors.
pub fn utility_delta(
    g: &NetworkState,
    profiles: &[AgentProfile],
    v: AgentId,
    change: EdgeChange,
    assumed_extra: Option<AgentId>,
    kappa: usize,
    ablation: Ablation,
) -> Result<f64> {
    let eval = DeltaEval::new(g, profiles, v, assumed_extra, kappa, ablation)?;
    match change {
        EdgeChange::Add(u) => eval.add_delta(u),
        EdgeChange::Delete(u) => eval.delete_delta(u),
    }
}

/// Evaluates many single-edge deltas for one agent against a fixed
/// neighborhood view N(v) ∪ {assumed proposal target}.
///
/// Member-member adjacency comes from the real graph; the assumed edge is
/// incident to `v` itself so it never links two members.
pub(crate) struct DeltaEval<'a> {
    g: &'a NetworkState,
    v: AgentId,
    v_type: AttributeType,
    strategy: Strategy,
    kappa: usize,
    ablation: Ablation,
    types: &'a [AgentProfile],
    /// N(v) plus the assumed extra endpoint, sorted.
    members: Vec<u32>,
    /// Per member: edges to other members.
    adj_count: Vec<u32>,
    same: usize,
    triangles: usize,
    isolated: usize,
}

impl<'a> DeltaEval<'a> {
    pub fn new(
        g: &'a NetworkState,
        profiles: &'a [AgentProfile],
        v: AgentId,
        assumed_extra: Option<AgentId>,
        kappa: usize,
        ablation: Ablation,
    ) -> Result<Self> {
        let mut members: Vec<u32> = g.neighbors(v).to_vec();
        if let Some(p) = assumed_extra {
            if p == v || g.has_edge(v, p) {
                return Err(Error::contract(format!(
                    "assumed proposal edge ({v}, {p}) is not a valid pending edge"
                )));
            }
            members.insert(members.partition_point(|&x| x < p.0), p.0);
        }
        let profile = profiles[v.index()];
        let mut adj_count = vec![0u32; members.len()];
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if g.has_edge(AgentId(members[i]), AgentId(members[j])) {
                    adj_count[i] += 1;
                    adj_count[j] += 1;
                }
            }
        }
        let triangles = adj_count.iter().map(|&c| c as usize).sum::<usize>() / 2;
        let isolated = adj_count.iter().filter(|&&c| c == 0).count();
        let same = members
            .iter()
            .filter(|&&u| profiles[u as usize].attr_type == profile.attr_type)
            .count();
        Ok(DeltaEval {
            g,
            v,
            v_type: profile.attr_type,
            strategy: profile.strategy,
            kappa,
            ablation,
            types: profiles,
            members,
            adj_count,
            same,
            triangles,
            isolated,
        })
    }

    fn value(&self, same: usize, degree: usize, triangles: usize, isolated: usize) -> Result<f64> {
        let a = attr_value(self.strategy, same, degree, self.kappa, self.ablation);
        let s = struct_value(self.strategy, triangles, isolated, self.kappa, self.ablation)?;
        Ok(a + s)
    }

    fn current(&self) -> Result<f64> {
        self.value(self.same, self.members.len(), self.triangles, self.isolated)
    }

    #[inline]
    fn is_same_type(&self, u: AgentId) -> bool {
        self.types[u.index()].attr_type == self.v_type
    }

    /// Utility change from adding edge (v, u) on top of the view.
    pub fn add_delta(&self, u: AgentId) -> Result<f64> {
        if u == self.v || self.members.binary_search(&u.0).is_ok() {
            return Err(Error::contract(format!(
                "add of edge ({}, {u}) already present in the evaluated view",
                self.v
            )));
        }
        // Integer count updates; u's adjacencies to members come from G.
        let mut ties = 0usize;
        let mut de_isolated = 0usize;
        for (i, &x) in self.members.iter().enumerate() {
            if self.g.has_edge(AgentId(x), u) {
                ties += 1;
                if self.adj_count[i] == 0 {
                    de_isolated += 1;
                }
            }
        }
        let same = self.same + usize::from(self.is_same_type(u));
        let triangles = self.triangles + ties;
        let isolated = self.isolated - de_isolated + usize::from(ties == 0);
        let after = self.value(same, self.members.len() + 1, triangles, isolated)?;
        Ok(after - self.current()?)
    }

    /// Utility change from deleting the real edge (v, x).
    pub fn delete_delta(&self, x: AgentId) -> Result<f64> {
        if !self.g.has_edge(self.v, x) {
            return Err(Error::contract(format!(
                "delete of absent edge ({}, {x})",
                self.v
            )));
        }
        let pos = self
            .members
            .binary_search(&x.0)
            .expect("real neighbor is a member");
        let mut newly_isolated = 0usize;
        if self.adj_count[pos] > 0 {
            for (i, &y) in self.members.iter().enumerate() {
                if i != pos && self.adj_count[i] == 1 && self.g.has_edge(AgentId(y), x) {
                    newly_isolated += 1;
                }
            }
        }
        let same = self.same - usize::from(self.is_same_type(x));
        let triangles = self.triangles - self.adj_count[pos] as usize;
        let isolated = self.isolated - usize::from(self.adj_count[pos] == 0) + newly_isolated;
        let after = self.value(same, self.members.len() - 1, triangles, isolated)?;
        Ok(after - self.current()?)
    }
}
