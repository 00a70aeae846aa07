//! Cascaded-Toffoli chains realizing f(x) = s1·x1 ⊕ s2·x2 ⊕ ... for a hidden
//! control word, and the one-query Bernstein-Vazirani recovery.
//!
//! Each stage is a configurable cell: a balanced (f = x) cell where the
//! control bit is set, a constant-0 cell where it is clear. Stages chain
//! output-corner pair to input-corner pair, so the y register value ripples
//! through the XOR of the selected inputs. Per-cell source lines are fixed at
//! build time from the known x = 0 initial vector; they never depend on the
//! control word, which is not externally readable.

use crate::bits::Bits;
use crate::railnet::{
    append_cell, classify_quad, CellKind, CellPorts, GateLevels, NetError, NodeId, QuadMode,
    QuadVector, Rail, SwitchId, SwitchNet,
};

/// One stage of a cascade. The control bit is not stored anywhere the
/// recovery path reads; it survives only as the cell's structure.
pub struct ToffoliCell {
    ports: CellPorts,
}

impl ToffoliCell {
    pub fn ports(&self) -> &CellPorts {
        &self.ports
    }

    pub fn is_balanced(&self) -> bool {
        self.ports.kind.is_balanced()
    }
}

/// An n-cell chain computing the parity of the control-selected inputs.
pub struct CascadeCircuit {
    net: SwitchNet,
    y: NodeId,
    y_bar: NodeId,
    cells: Vec<ToffoliCell>,
    out: NodeId,
    out_bar: NodeId,
    swap_outputs: bool,
}

/// Builds the hidden-control circuit for f(x) = ⊕ s_i x_i.
pub fn synthesize_cascade(s: &Bits) -> CascadeCircuit {
    let n = s.width();
    let mut net = SwitchNet::new();
    let y = net.add_node("y");
    let y_bar = net.add_node("y_bar");
    let (mut cy, mut cy_bar) = (y, y_bar);
    let mut cells = Vec::with_capacity(n);
    for i in 0..n {
        let kind = if s.get(i) {
            CellKind::Identity
        } else {
            CellKind::Const0
        };
        let ports = append_cell(&mut net, kind, cy, cy_bar, &format!("q{}", i + 1));
        cy = ports.out;
        cy_bar = ports.out_bar;
        cells.push(ToffoliCell { ports });
    }
    // An XOR chain is an ODD function; with an even number of balanced
    // stages the drawn f / f̄ port labels exchange relative to the odd case.
    // The electrical readout below is the joined-to-y rule and holds either
    // way.
    let swap_outputs = s.count_ones().is_multiple_of(2);
    CascadeCircuit {
        net,
        y,
        y_bar,
        cells,
        out: cy,
        out_bar: cy_bar,
        swap_outputs,
    }
}

impl CascadeCircuit {
    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[ToffoliCell] {
        &self.cells
    }

    pub fn net(&self) -> &SwitchNet {
        &self.net
    }

    pub fn outputs_swapped(&self) -> bool {
        self.swap_outputs
    }

    /// The terminal carrying f: the final corner joined to y = +V when the
    /// output is a logic 1.
    pub fn f_terminal(&self) -> NodeId {
        self.out_bar
    }

    fn y_drivers(&self) -> [(NodeId, Rail); 2] {
        [(self.y, Rail::Plus), (self.y_bar, Rail::Minus)]
    }

    pub(crate) fn input_gates(&self, x: &Bits) -> GateLevels {
        let mut gates = GateLevels::uniform(self.net.gate_count(), Rail::Minus);
        for (i, cell) in self.cells.iter().enumerate() {
            cell.ports
                .gates
                .set_all(&mut gates, Rail::from_bool(x.get(i)));
        }
        gates
    }

    /// Switch-level evaluation of ⊕ s_i x_i.
    pub fn evaluate(&self, x: &Bits) -> Result<bool, NetError> {
        debug_assert_eq!(x.width(), self.n());
        let res = self.net.resolve(&self.y_drivers(), &self.input_gates(x))?;
        Ok(res.get(self.out_bar)? == res.get(self.y)?)
    }

    /// Reversible ripple: impose a value on the output pair and read the y
    /// register that settles, y = f ⊕ (⊕ s_i x_i). Used by the Simon bank.
    pub(crate) fn ripple_y(&self, x: &Bits, f_imposed: bool) -> Result<bool, NetError> {
        let drivers = [
            (self.out, Rail::from_bool(f_imposed)),
            (self.out_bar, Rail::from_bool(!f_imposed)),
        ];
        let res = self.net.resolve(&drivers, &self.input_gates(x))?;
        Ok(res.get(self.y)?.is_high())
    }

    /// Forward output under an explicit y register value, f' = y ⊕ (⊕ s_i x_i).
    pub(crate) fn output_from_y(&self, x: &Bits, y: bool) -> Result<bool, NetError> {
        let drivers = [
            (self.y, Rail::from_bool(y)),
            (self.y_bar, Rail::from_bool(!y)),
        ];
        let res = self.net.resolve(&drivers, &self.input_gates(x))?;
        Ok(res.get(self.out)?.is_high())
    }

    /// One simultaneous Hadamard step over every stage: common-mode zero
    /// input, all quads sourced out atomically, each read back as common or
    /// differential pairs. Returns the recovered control word and the query
    /// count, which is one.
    pub fn bv_recover(&self) -> Result<(Bits, u64), NetError> {
        let gates = GateLevels::uniform(self.net.gate_count(), Rail::Minus);
        let selected: Vec<SwitchId> = self
            .cells
            .iter()
            .flat_map(|c| c.ports.switches.iter().copied())
            .collect();
        let outcome = self.net.source_out(&self.y_drivers(), &gates, &selected)?;
        let mut s = Bits::zero(self.n());
        for (i, cell) in self.cells.iter().enumerate() {
            let quad = cell.ports.gates.read(&outcome.gates);
            s.set(i, classify_quad(&quad) == QuadMode::DifferentialPairs);
        }
        Ok((s, 1))
    }

    /// Per-stage sourced vectors from the same single step, for inspection.
    pub fn recovery_vectors(&self) -> Result<Vec<QuadVector>, NetError> {
        let gates = GateLevels::uniform(self.net.gate_count(), Rail::Minus);
        let selected: Vec<SwitchId> = self
            .cells
            .iter()
            .flat_map(|c| c.ports.switches.iter().copied())
            .collect();
        let outcome = self.net.source_out(&self.y_drivers(), &gates, &selected)?;
        Ok(self
            .cells
            .iter()
            .map(|c| c.ports.gates.read(&outcome.gates))
            .collect())
    }
}

/// Arithmetic reference for the cascade function.
pub fn parity_of_selected(s: &Bits, x: &Bits) -> bool {
    s.dot(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Bits {
        Bits::parse(s).unwrap()
    }

    #[test]
    fn synthesis_cell_kinds_follow_controls() {
        let c = synthesize_cascade(&bits("110"));
        let kinds: Vec<bool> = c.cells.iter().map(|c| c.is_balanced()).collect();
        assert_eq!(kinds, vec![true, true, false]);
        assert_eq!(c.cells[2].ports().kind, CellKind::Const0);
    }

    #[test]
    fn evaluation_matches_parity_arithmetic() {
        for s in ["110", "000", "101", "1", "1111"] {
            let s = bits(s);
            let c = synthesize_cascade(&s);
            for x in Bits::all(s.width()) {
                assert_eq!(
                    c.evaluate(&x).unwrap(),
                    parity_of_selected(&s, &x),
                    "s={s} x={x}"
                );
            }
        }
    }

    #[test]
    fn worked_example_values() {
        let c = synthesize_cascade(&bits("110"));
        assert!(!c.evaluate(&bits("000")).unwrap());
        assert!(!c.evaluate(&bits("111")).unwrap());
        assert!(c.evaluate(&bits("101")).unwrap());
        let c = synthesize_cascade(&bits("101"));
        assert!(!c.evaluate(&bits("101")).unwrap());
    }

    #[test]
    fn output_assignment_swaps_on_even_count() {
        assert!(synthesize_cascade(&bits("110")).outputs_swapped());
        assert!(!synthesize_cascade(&bits("100")).outputs_swapped());
        assert!(synthesize_cascade(&bits("000")).outputs_swapped());
    }

    #[test]
    fn recovery_vectors_match_worked_example() {
        let c = synthesize_cascade(&bits("110"));
        let v = c.recovery_vectors().unwrap();
        use Rail::{Minus as M, Plus as P};
        assert_eq!(v[0].as_array(), [M, M, P, M]);
        assert_eq!(v[1].as_array(), [M, M, P, M]);
        assert_eq!(v[2].as_array(), [P, M, P, M]);
    }

    #[test]
    fn recovery_round_trip_small() {
        for n in 1..=5 {
            for w in 0..(1u64 << n) {
                let s = Bits::from_word(w, n);
                let (got, queries) = synthesize_cascade(&s).bv_recover().unwrap();
                assert_eq!(got, s);
                assert_eq!(queries, 1);
            }
        }
    }

    #[test]
    fn single_cell_recovery_reduces_to_deutsch() {
        let (s, _) = synthesize_cascade(&bits("1")).bv_recover().unwrap();
        assert_eq!(s, bits("1"));
    }

    #[test]
    fn hardware_scales_linearly() {
        for n in [1usize, 4, 16, 64] {
            let c = synthesize_cascade(&Bits::zero(n));
            assert_eq!(c.net().switch_count(), 4 * n);
            assert_eq!(c.net().node_count(), 2 * n + 2);
            assert_eq!(c.net().gate_count(), 4 * n);
        }
    }

    #[test]
    fn recovery_matches_classical_unit_vector_oracle() {
        // The classical baseline takes n + 1 queries: s_i = f(e_i) ⊕ f(0).
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(8);
        for _ in 0..50 {
            let s = crate::simon::random_secret(8, &mut rng);
            let c = synthesize_cascade(&s);
            let mut classical = Bits::zero(8);
            let f0 = c.evaluate(&Bits::zero(8)).unwrap();
            let mut queries = 1;
            for i in 0..8 {
                classical.set(i, c.evaluate(&Bits::unit(8, i)).unwrap() ^ f0);
                queries += 1;
            }
            assert_eq!(queries, 9);
            let (recovered, one) = c.bv_recover().unwrap();
            assert_eq!(recovered, classical);
            assert_eq!(one, 1);
        }
    }

    #[test]
    fn ripple_inverts_forward_output() {
        let s = bits("1011");
        let c = synthesize_cascade(&s);
        for x in Bits::all(4) {
            for f in [false, true] {
                let y = c.ripple_y(&x, f).unwrap();
                assert_eq!(y, f ^ parity_of_selected(&s, &x));
                assert_eq!(c.output_from_y(&x, y).unwrap(), f);
            }
        }
    }
}
