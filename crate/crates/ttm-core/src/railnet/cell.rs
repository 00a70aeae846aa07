//! The four single-input dual-rail XOR cells and their sourcing-out step.
//!
//! Each cell is a four-switch bridge between the corner nodes y, ȳ, y⊕f and
//! its complement. For balanced kinds the switches realizing the minterms sit
//! on the (y, \overline{y⊕f}) / (y⊕f, ȳ) branch pair and the maxterms on the
//! other pair; for constant kinds minterms and maxterms share the same
//! parallel branches. Source designation is fixed at build time from the
//! y = +V / ȳ = -V convention: a P switch sources away from the ȳ corner and
//! an N switch away from the y corner.

use super::net::{GateId, GateLevels, NetError, NodeId, Polarity, SwitchId, SwitchNet};
use super::{QuadVector, Rail};

/// The four single-input Boolean functions a cell can realize.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CellKind {
    /// f = x
    Identity,
    /// f = x̄
    Negation,
    /// f = 0
    Const0,
    /// f = 1
    Const1,
}

impl CellKind {
    pub fn eval(self, x: bool) -> bool {
        match self {
            CellKind::Identity => x,
            CellKind::Negation => !x,
            CellKind::Const0 => false,
            CellKind::Const1 => true,
        }
    }

    pub fn is_balanced(self) -> bool {
        matches!(self, CellKind::Identity | CellKind::Negation)
    }
}

/// Gate lines of one cell in (x_N, x̄_N, x_P, x̄_P) order.
#[derive(Clone, Copy, Debug)]
pub struct QuadGates {
    pub x_n: GateId,
    pub x_n_bar: GateId,
    pub x_p: GateId,
    pub x_p_bar: GateId,
}

impl QuadGates {
    pub fn as_array(&self) -> [GateId; 4] {
        [self.x_n, self.x_n_bar, self.x_p, self.x_p_bar]
    }

    pub fn set_all(&self, gates: &mut GateLevels, level: Rail) {
        for g in self.as_array() {
            gates.set(g, level);
        }
    }

    pub fn read(&self, gates: &GateLevels) -> QuadVector {
        QuadVector {
            x_n: gates.get(self.x_n),
            x_n_bar: gates.get(self.x_n_bar),
            x_p: gates.get(self.x_p),
            x_p_bar: gates.get(self.x_p_bar),
        }
    }
}

/// Corner nodes, gate lines, and switch ids of one cell within a larger net.
#[derive(Clone, Debug)]
pub struct CellPorts {
    pub kind: CellKind,
    pub y: NodeId,
    pub y_bar: NodeId,
    /// The y⊕f corner.
    pub out: NodeId,
    /// The \overline{y⊕f} corner.
    pub out_bar: NodeId,
    pub gates: QuadGates,
    pub switches: [SwitchId; 4],
}

/// N switches source away from the y corner, P switches away from ȳ.
fn designate_source(polarity: Polarity, a: NodeId, b: NodeId, y: NodeId, y_bar: NodeId) -> NodeId {
    match polarity {
        Polarity::N => {
            if a == y_bar || b == y_bar {
                y_bar
            } else if a == y {
                b
            } else {
                a
            }
        }
        Polarity::P => {
            if a == y || b == y {
                y
            } else if a == y_bar {
                b
            } else {
                a
            }
        }
    }
}

/// Appends one cell between an existing corner pair, creating the output
/// corner pair and four fresh gate lines. This is the building block shared
/// by single cells and cascades.
pub fn append_cell(
    net: &mut SwitchNet,
    kind: CellKind,
    y: NodeId,
    y_bar: NodeId,
    label: &str,
) -> CellPorts {
    let out = net.add_node(format!("{label}.out"));
    let out_bar = net.add_node(format!("{label}.out_bar"));
    let gates = QuadGates {
        x_n: net.add_gate(),
        x_n_bar: net.add_gate(),
        x_p: net.add_gate(),
        x_p_bar: net.add_gate(),
    };
    // (polarity, gate, branch) per kind; branch order matches the gate order
    // x_N, x̄_N, x_P, x̄_P.
    let branches: [(Polarity, GateId, NodeId, NodeId); 4] = match kind {
        CellKind::Identity => [
            (Polarity::N, gates.x_n, y, out_bar),
            (Polarity::N, gates.x_n_bar, y_bar, out),
            (Polarity::P, gates.x_p, y, out),
            (Polarity::P, gates.x_p_bar, y_bar, out_bar),
        ],
        CellKind::Negation => [
            (Polarity::N, gates.x_n, y, out),
            (Polarity::N, gates.x_n_bar, y_bar, out_bar),
            (Polarity::P, gates.x_p, y, out_bar),
            (Polarity::P, gates.x_p_bar, y_bar, out),
        ],
        CellKind::Const0 => [
            (Polarity::N, gates.x_n, y, out),
            (Polarity::N, gates.x_n_bar, y_bar, out_bar),
            (Polarity::P, gates.x_p, y, out),
            (Polarity::P, gates.x_p_bar, y_bar, out_bar),
        ],
        CellKind::Const1 => [
            (Polarity::N, gates.x_n, y, out_bar),
            (Polarity::N, gates.x_n_bar, y_bar, out),
            (Polarity::P, gates.x_p, y, out_bar),
            (Polarity::P, gates.x_p_bar, y_bar, out),
        ],
    };
    let mut switches = Vec::with_capacity(4);
    for (polarity, gate, a, b) in branches {
        let source = designate_source(polarity, a, b, y, y_bar);
        switches.push(net.add_switch(a, b, polarity, gate, source));
    }
    CellPorts {
        kind,
        y,
        y_bar,
        out,
        out_bar,
        gates,
        switches: [switches[0], switches[1], switches[2], switches[3]],
    }
}

/// A standalone single-input cell with its own y/ȳ corners.
#[derive(Clone, Debug)]
pub struct SingleCell {
    net: SwitchNet,
    ports: CellPorts,
}

impl SingleCell {
    pub fn build(kind: CellKind) -> SingleCell {
        let mut net = SwitchNet::new();
        let y = net.add_node("y");
        let y_bar = net.add_node("y_bar");
        let ports = append_cell(&mut net, kind, y, y_bar, "cell");
        SingleCell { net, ports }
    }

    pub fn kind(&self) -> CellKind {
        self.ports.kind
    }

    pub fn net(&self) -> &SwitchNet {
        &self.net
    }

    pub fn ports(&self) -> &CellPorts {
        &self.ports
    }

    fn drivers(&self, y: bool) -> [(NodeId, Rail); 2] {
        [
            (self.ports.y, Rail::from_bool(y)),
            (self.ports.y_bar, Rail::from_bool(!y)),
        ]
    }

    /// Evaluates the cell by switch-level resolution. The output is read at
    /// the \overline{y⊕f} corner.
    pub fn evaluate(&self, x: bool, y: bool) -> Result<bool, NetError> {
        let gates = GateLevels::uniform(self.net.gate_count(), Rail::from_bool(x));
        let res = self.net.resolve(&self.drivers(y), &gates)?;
        Ok(res.get(self.ports.out_bar)?.is_high())
    }

    /// Sources out all four gates starting from an arbitrary prior gate state,
    /// under the fixed y = +V / ȳ = -V drivers.
    pub fn source_out_from(&self, prior: QuadVector) -> Result<QuadVector, NetError> {
        let mut gates = GateLevels::uniform(self.net.gate_count(), Rail::Minus);
        let q = self.ports.gates;
        gates.set(q.x_n, prior.x_n);
        gates.set(q.x_n_bar, prior.x_n_bar);
        gates.set(q.x_p, prior.x_p);
        gates.set(q.x_p_bar, prior.x_p_bar);
        let out = self
            .net
            .source_out(&self.drivers(true), &gates, &self.ports.switches)?;
        Ok(q.read(&out.gates))
    }

    /// Sources out after the conventional common-mode preparation: the same
    /// level applied to all four inputs.
    pub fn source_out(&self, applied: Rail) -> Result<QuadVector, NetError> {
        self.source_out_from(QuadVector::uniform(applied))
    }
}

pub fn build_single_cell(kind: CellKind) -> SingleCell {
    SingleCell::build(kind)
}
