//! Switch networks and their resolution to equipotential components.
//!
//! A [`SwitchNet`] is pure topology: named nodes, N/P switches between node
//! pairs, and a build-time source designation per switch. Resolution inputs
//! (rail drivers and gate levels) are supplied per call, so a net is immutable
//! and freely shareable. Resolution unions nodes across closed switches and
//! assigns each component the rail of its driver; a component holding both
//! rails is a short and reported as a conflict.

use std::collections::BTreeSet;

use thiserror::Error;

use super::Rail;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct NodeId(pub(crate) u32);

impl From<NodeId> for usize {
    fn from(id: NodeId) -> usize {
        id.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GateId(pub(crate) u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SwitchId(pub(crate) u32);

/// Switch polarity. N-type closes on a PLUS gate, P-type on a MINUS gate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Polarity {
    N,
    P,
}

#[derive(Clone, Debug)]
pub struct Switch {
    pub a: NodeId,
    pub b: NodeId,
    pub polarity: Polarity,
    pub gate: GateId,
    /// Which terminal is the source, fixed at build time by the y/ȳ rail
    /// convention. Must be `a` or `b`.
    pub source: NodeId,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetError {
    #[error("short circuit: component {{{}}} is driven to both rails", .nodes.join(", "))]
    Conflict { nodes: Vec<String> },
    #[error("floating node observed: {node}")]
    Floating { node: String },
}

#[derive(Clone, Debug, Default)]
pub struct SwitchNet {
    node_names: Vec<String>,
    switches: Vec<Switch>,
    next_gate: u32,
}

impl SwitchNet {
    pub fn new() -> Self {
        SwitchNet::default()
    }

    pub fn add_node(&mut self, name: impl Into<String>) -> NodeId {
        let id = NodeId(self.node_names.len() as u32);
        self.node_names.push(name.into());
        id
    }

    /// Gates are identifiers for input lines; several switches may share one.
    pub fn add_gate(&mut self) -> GateId {
        let id = GateId(self.next_gate);
        self.next_gate += 1;
        id
    }

    pub fn add_switch(
        &mut self,
        a: NodeId,
        b: NodeId,
        polarity: Polarity,
        gate: GateId,
        source: NodeId,
    ) -> SwitchId {
        assert!(
            source == a || source == b,
            "source must be a switch terminal"
        );
        let id = SwitchId(self.switches.len() as u32);
        self.switches.push(Switch {
            a,
            b,
            polarity,
            gate,
            source,
        });
        id
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn switch_count(&self) -> usize {
        self.switches.len()
    }

    pub fn gate_count(&self) -> usize {
        self.next_gate as usize
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        &self.node_names[id.0 as usize]
    }

    pub fn node_ids(&self) -> Vec<NodeId> {
        (0..self.node_names.len())
            .map(|i| NodeId(i as u32))
            .collect()
    }

    pub fn switch(&self, id: SwitchId) -> &Switch {
        &self.switches[id.0 as usize]
    }

    pub fn switches(&self) -> &[Switch] {
        &self.switches
    }

    pub fn is_closed(&self, id: SwitchId, gates: &GateLevels) -> bool {
        let sw = &self.switches[id.0 as usize];
        match sw.polarity {
            Polarity::N => gates.get(sw.gate) == Rail::Plus,
            Polarity::P => gates.get(sw.gate) == Rail::Minus,
        }
    }

    /// Resolves the net under the given drivers and gate levels.
    ///
    /// The result is independent of node and switch enumeration order: the
    /// partition into equipotential components is a property of the closed
    /// edge set alone, and potentials are assigned per component from its
    /// drivers.
    pub fn resolve(
        &self,
        drivers: &[(NodeId, Rail)],
        gates: &GateLevels,
    ) -> Result<Resolution, NetError> {
        let n = self.node_names.len();
        let mut uf = UnionFind::new(n);
        for (i, sw) in self.switches.iter().enumerate() {
            if self.is_closed(SwitchId(i as u32), gates) {
                uf.union(sw.a.0 as usize, sw.b.0 as usize);
            }
        }
        let mut potential: Vec<Option<Rail>> = vec![None; n];
        let mut component_rail: Vec<Option<Rail>> = vec![None; n];
        let mut conflicted: Option<usize> = None;
        for &(node, rail) in drivers {
            let root = uf.find(node.0 as usize);
            match component_rail[root] {
                None => component_rail[root] = Some(rail),
                Some(r) if r == rail => {}
                Some(_) => {
                    // Report the conflict on the component with the smallest
                    // member so the diagnostic is enumeration-independent.
                    conflicted = Some(match conflicted {
                        None => root,
                        Some(prev) => {
                            let mut min =
                                |r: usize| (0..n).filter(|&i| uf.find(i) == r).min().unwrap_or(r);
                            if min(root) < min(prev) {
                                root
                            } else {
                                prev
                            }
                        }
                    });
                }
            }
        }
        if let Some(root) = conflicted {
            let nodes: BTreeSet<String> = (0..n)
                .filter(|&i| uf.find(i) == root)
                .map(|i| self.node_names[i].clone())
                .collect();
            return Err(NetError::Conflict {
                nodes: nodes.into_iter().collect(),
            });
        }
        for i in 0..n {
            potential[i] = component_rail[uf.find(i)];
        }
        Ok(Resolution {
            potential,
            names: self.node_names.clone(),
        })
    }

    /// One Hadamard step: resolve, connect each selected switch's gate line to
    /// the potential of its designated source, then re-resolve.
    ///
    /// Gate lines not selected keep their applied level (their charge is not
    /// drained). Errors if a selected source node is floating or if the
    /// re-resolved net shorts.
    pub fn source_out(
        &self,
        drivers: &[(NodeId, Rail)],
        gates: &GateLevels,
        selected: &[SwitchId],
    ) -> Result<SourceOutcome, NetError> {
        let before = self.resolve(drivers, gates)?;
        let mut after_gates = gates.clone();
        for &id in selected {
            let sw = &self.switches[id.0 as usize];
            let v = before.get(sw.source)?;
            after_gates.set(sw.gate, v);
        }
        let after = self.resolve(drivers, &after_gates)?;
        Ok(SourceOutcome {
            gates: after_gates,
            resolution: after,
        })
    }

    /// Returns a copy with nodes, switches, and gates relabelled by the given
    /// permutations. Used to check enumeration-order independence.
    pub fn permuted(
        &self,
        node_perm: &[usize],
        switch_perm: &[usize],
        gate_perm: &[usize],
    ) -> SwitchNet {
        assert_eq!(node_perm.len(), self.node_names.len());
        assert_eq!(switch_perm.len(), self.switches.len());
        assert_eq!(gate_perm.len(), self.next_gate as usize);
        let mut names = vec![String::new(); node_perm.len()];
        for (old, &new) in node_perm.iter().enumerate() {
            names[new] = self.node_names[old].clone();
        }
        let mut switches = vec![None; switch_perm.len()];
        for (old, &new) in switch_perm.iter().enumerate() {
            let sw = &self.switches[old];
            switches[new] = Some(Switch {
                a: NodeId(node_perm[sw.a.0 as usize] as u32),
                b: NodeId(node_perm[sw.b.0 as usize] as u32),
                polarity: sw.polarity,
                gate: GateId(gate_perm[sw.gate.0 as usize] as u32),
                source: NodeId(node_perm[sw.source.0 as usize] as u32),
            });
        }
        SwitchNet {
            node_names: names,
            switches: switches.into_iter().map(Option::unwrap).collect(),
            next_gate: self.next_gate,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateLevels(Vec<Rail>);

impl GateLevels {
    pub fn uniform(count: usize, level: Rail) -> Self {
        GateLevels(vec![level; count])
    }

    pub fn get(&self, id: GateId) -> Rail {
        self.0[id.0 as usize]
    }

    pub fn set(&mut self, id: GateId, level: Rail) {
        self.0[id.0 as usize] = level;
    }

    pub fn get_index(&self, i: usize) -> Rail {
        self.0[i]
    }

    pub fn set_index(&mut self, i: usize, level: Rail) {
        self.0[i] = level;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Node potentials after a successful resolution. `None` marks an undriven
/// (floating) component; reading such a node is an error.
#[derive(Clone, Debug)]
pub struct Resolution {
    potential: Vec<Option<Rail>>,
    names: Vec<String>,
}

impl Resolution {
    pub fn get(&self, node: NodeId) -> Result<Rail, NetError> {
        self.potential[node.0 as usize].ok_or_else(|| NetError::Floating {
            node: self.names[node.0 as usize].clone(),
        })
    }

    pub fn try_get(&self, node: NodeId) -> Option<Rail> {
        self.potential[node.0 as usize]
    }
}

#[derive(Debug)]
pub struct SourceOutcome {
    pub gates: GateLevels,
    pub resolution: Resolution,
}

/// Every closed switch must bridge equal potentials; holds by construction
/// after any successful resolve, checked explicitly in tests.
pub fn zero_current(net: &SwitchNet, gates: &GateLevels, res: &Resolution) -> bool {
    (0..net.switch_count()).all(|i| {
        let id = SwitchId(i as u32);
        if !net.is_closed(id, gates) {
            return true;
        }
        let sw = net.switch(id);
        res.try_get(sw.a) == res.try_get(sw.b)
    })
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        // Union by the smaller index when ranks tie, keeping roots (and thus
        // everything derived from them) enumeration-order independent.
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                self.parent[hi] = lo;
                self.rank[lo] += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_closed_switch_propagates_the_driver() {
        let mut net = SwitchNet::new();
        let a = net.add_node("drv");
        let b = net.add_node("free");
        let g = net.add_gate();
        net.add_switch(a, b, Polarity::N, g, b);
        let gates = GateLevels::uniform(1, Rail::Plus);
        let res = net.resolve(&[(a, Rail::Plus)], &gates).unwrap();
        assert_eq!(res.get(b).unwrap(), Rail::Plus);
        // Open switch leaves the far node floating.
        let res = net
            .resolve(&[(a, Rail::Plus)], &GateLevels::uniform(1, Rail::Minus))
            .unwrap();
        assert!(matches!(res.get(b), Err(NetError::Floating { .. })));
        assert_eq!(res.try_get(b), None);
    }

    #[test]
    fn shorting_both_rails_is_a_conflict() {
        let mut net = SwitchNet::new();
        let y = net.add_node("y");
        let y_bar = net.add_node("y_bar");
        let g = net.add_gate();
        net.add_switch(y, y_bar, Polarity::N, g, y_bar);
        let gates = GateLevels::uniform(1, Rail::Plus);
        let err = net
            .resolve(&[(y, Rail::Plus), (y_bar, Rail::Minus)], &gates)
            .unwrap_err();
        match err {
            NetError::Conflict { nodes } => {
                assert_eq!(nodes, vec!["y".to_string(), "y_bar".to_string()])
            }
            other => panic!("expected a conflict, got {other:?}"),
        }
    }

    #[test]
    fn sourcing_a_floating_source_is_an_error() {
        let mut net = SwitchNet::new();
        let a = net.add_node("drv");
        let b = net.add_node("free");
        let g = net.add_gate();
        let sw = net.add_switch(a, b, Polarity::N, g, b);
        let gates = GateLevels::uniform(1, Rail::Minus);
        let err = net
            .source_out(&[(a, Rail::Plus)], &gates, &[sw])
            .unwrap_err();
        assert!(matches!(err, NetError::Floating { .. }));
    }
}
