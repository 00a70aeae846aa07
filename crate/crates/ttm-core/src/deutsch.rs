//! Balanced-vs-constant classification (the Deutsch and Deutsch-Jozsa
//! problems) on switch networks, plus the classical brute-force baseline.
//!
//! Multi-input oracles are monolithic minterm networks: each minterm is a
//! series chain replicated on the two horizontal branches, and each vertical
//! branch realizes the DeMorgan complement as series-connected parallel
//! groups. Four of the answer variable's switches sit adjacent to the four
//! corners; classification sources out exactly those four gates and reads the
//! analog rail sum. The network grows as O(2^n) switches, so widths above two
//! are gated behind an explicit opt-in.

use thiserror::Error;

use crate::bits::Bits;
use crate::railnet::{
    classify_quad, sum_detector, CellKind, GateId, GateLevels, NetError, NodeId, Polarity,
    QuadGates, QuadMode, QuadVector, Rail, SingleCell, SwitchId, SwitchNet,
};

/// Verdict of a balanced-vs-constant query.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Balanced,
    Constant,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("truth table is neither balanced nor constant")]
    PromiseViolation,
    #[error("variable x{} never affects a balanced table", .0 + 1)]
    RedundantInput(usize),
    #[error("width {0} needs the exponential network; pass allow_exponential")]
    ExponentialGate(usize),
    #[error("width {0} out of supported range 1..=4")]
    Width(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// A Boolean function of up to four inputs, indexed by assignment word with
/// x1 as the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, bits: Vec<bool>) -> TruthTable {
        assert!((1..=4).contains(&n));
        assert_eq!(bits.len(), 1 << n);
        TruthTable { n, bits }
    }

    /// Parses "0110"-style value lists in assignment order (x = 00..0 first).
    pub fn parse(s: &str) -> Option<TruthTable> {
        let n = match s.len() {
            2 => 1,
            4 => 2,
            8 => 3,
            16 => 4,
            _ => return None,
        };
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        Some(TruthTable::new(n, bits?))
    }

    pub fn from_fn(n: usize, f: impl Fn(Bits) -> bool) -> TruthTable {
        let bits = (0..(1u64 << n)).map(|w| f(Bits::from_word(w, n))).collect();
        TruthTable::new(n, bits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: Bits) -> bool {
        self.bits[x.word() as usize]
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The truth-table census, or `None` outside the promise.
    pub fn census(&self) -> Option<Classification> {
        match self.ones() {
            0 => Some(Classification::Constant),
            k if k == self.bits.len() => Some(Classification::Constant),
            k if k == self.bits.len() / 2 => Some(Classification::Balanced),
            _ => None,
        }
    }

    pub fn is_redundant(&self, var: usize) -> bool {
        let flip = 1u64 << (self.n - 1 - var);
        (0..self.bits.len() as u64).all(|w| self.bits[w as usize] == self.bits[(w ^ flip) as usize])
    }

    pub fn redundant_vars(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.is_redundant(v)).collect()
    }

    /// Drops redundant variables. Meaningful for balanced tables, where at
    /// least one variable always remains.
    pub fn reduce(&self) -> TruthTable {
        let kept: Vec<usize> = (0..self.n).filter(|&v| !self.is_redundant(v)).collect();
        assert!(!kept.is_empty(), "cannot reduce a constant table");
        let m = kept.len();
        let bits = (0..(1u64 << m))
            .map(|w| {
                let mut full = Bits::zero(self.n);
                for (j, &v) in kept.iter().enumerate() {
                    full.set(v, (w >> (m - 1 - j)) & 1 == 1);
                }
                self.eval(full)
            })
            .collect();
        TruthTable::new(m, bits)
    }
}

/// A black-box minterm network exposing only the answer qubit's four lines.
#[derive(Debug)]
pub struct OracleCircuit {
    table: TruthTable,
    net: SwitchNet,
    y: NodeId,
    y_bar: NodeId,
    out: NodeId,
    out_bar: NodeId,
    var_gates: Vec<Vec<GateId>>,
    answer_gates: QuadGates,
    answer_switches: [SwitchId; 4],
}

/// The two-input builder. Rejects tables outside the promise and
/// balanced tables that still carry a redundant variable (eliminating those
/// is the caller's job, see [`classify_table`]).
pub fn build_two_input(table: &TruthTable) -> Result<OracleCircuit, BuildError> {
    if table.n() != 2 {
        return Err(BuildError::Width(table.n()));
    }
    build_minterm_network(table, false)
}

/// General builder for widths 1..=4. Widths above two cost O(2^n) switches
/// and require `allow_exponential`.
pub fn build_minterm_network(
    table: &TruthTable,
    allow_exponential: bool,
) -> Result<OracleCircuit, BuildError> {
    let n = table.n();
    if !(1..=4).contains(&n) {
        return Err(BuildError::Width(n));
    }
    if n > 2 && !allow_exponential {
        return Err(BuildError::ExponentialGate(n));
    }
    let census = table.census().ok_or(BuildError::PromiseViolation)?;
    if census == Classification::Balanced {
        if let Some(&v) = table.redundant_vars().first() {
            return Err(BuildError::RedundantInput(v));
        }
    }
    Ok(Builder::new(table.clone()).build(census))
}

struct Builder {
    table: TruthTable,
    net: SwitchNet,
    y: NodeId,
    y_bar: NodeId,
    out: NodeId,
    out_bar: NodeId,
    var_gates: Vec<Vec<GateId>>,
}

impl Builder {
    fn new(table: TruthTable) -> Builder {
        let var_gates = vec![Vec::new(); table.n()];
        let mut net = SwitchNet::new();
        let y = net.add_node("y");
        let y_bar = net.add_node("y_bar");
        let out = net.add_node("out");
        let out_bar = net.add_node("out_bar");
        Builder {
            table,
            net,
            y,
            y_bar,
            out,
            out_bar,
            var_gates,
        }
    }

    fn minterms(&self) -> Vec<u64> {
        (0..(1u64 << self.table.n()))
            .filter(|&w| self.table.eval(Bits::from_word(w, self.table.n())))
            .collect()
    }

    fn literal(&self, minterm: u64, var: usize) -> Polarity {
        // Plain literals are N switches, complemented ones P, so every gate
        // line receives the plain variable value.
        if (minterm >> (self.table.n() - 1 - var)) & 1 == 1 {
            Polarity::N
        } else {
            Polarity::P
        }
    }

    fn add_switch(
        &mut self,
        a: NodeId,
        b: NodeId,
        polarity: Polarity,
        var: usize,
        source: NodeId,
    ) -> SwitchId {
        let gate = self.net.add_gate();
        self.var_gates[var].push(gate);
        self.net.add_switch(a, b, polarity, gate, source)
    }

    /// A series chain for one minterm between two corners. `answer_at_far`
    /// reverses the variable order so x1's switch touches `far`. Switches
    /// adjacent to a corner source at that corner, bent by the polarity rule
    /// (N sources away from y, P away from ȳ); interior switches are inert.
    fn chain(
        &mut self,
        near: NodeId,
        far: NodeId,
        minterm: u64,
        answer_at_far: bool,
        label: &str,
    ) -> SwitchId {
        let n = self.table.n();
        let (y, y_bar) = (self.y, self.y_bar);
        let order: Vec<usize> = if answer_at_far {
            (0..n).rev().collect()
        } else {
            (0..n).collect()
        };
        let mut prev = near;
        let mut answer_switch = None;
        for (pos, &v) in order.iter().enumerate() {
            let next = if pos + 1 == n {
                far
            } else {
                self.net.add_node(format!("{label}.m{minterm}.{pos}"))
            };
            let polarity = self.literal(minterm, v);
            let source = if pos + 1 == n {
                pick_source(polarity, prev, next, y, y_bar, next)
            } else if pos == 0 {
                pick_source(polarity, prev, next, y, y_bar, prev)
            } else {
                prev
            };
            let id = self.add_switch(prev, next, polarity, v, source);
            if v == 0 {
                answer_switch = Some(id);
            }
            prev = next;
        }
        answer_switch.expect("every chain contains x1")
    }

    /// A series of parallel groups (the DeMorgan complement) between two
    /// corners, one group per minterm. The answer switch comes from the
    /// first group (touching `near`) or, when `answer_in_last` is set, from
    /// the final group touching `far`.
    fn group_branch(
        &mut self,
        near: NodeId,
        far: NodeId,
        minterms: &[u64],
        answer_in_last: bool,
        label: &str,
    ) -> SwitchId {
        let n = self.table.n();
        let (y, y_bar) = (self.y, self.y_bar);
        let mut prev = near;
        let mut answer_switch = None;
        for (gi, &m) in minterms.iter().enumerate() {
            let last = gi + 1 == minterms.len();
            let next = if last {
                far
            } else {
                self.net.add_node(format!("{label}.g{gi}"))
            };
            for v in 0..n {
                let polarity = match self.literal(m, v) {
                    Polarity::N => Polarity::P,
                    Polarity::P => Polarity::N,
                };
                let preferred = if last && gi != 0 { next } else { prev };
                let source = pick_source(polarity, prev, next, y, y_bar, preferred);
                let id = self.add_switch(prev, next, polarity, v, source);
                if v == 0 && (if answer_in_last { last } else { gi == 0 }) {
                    answer_switch = Some(id);
                }
            }
            prev = next;
        }
        answer_switch.expect("a group contains x1")
    }

    fn build(mut self, census: Classification) -> OracleCircuit {
        let (y, y_bar, out, out_bar) = (self.y, self.y_bar, self.out, self.out_bar);
        let n = self.table.n();
        let a_bit = 1u64 << (n - 1);

        let (x_n, x_n_bar, x_p, x_p_bar);
        match census {
            Classification::Balanced => {
                let minterms = self.minterms();
                match minterms.iter().copied().find(|&m| m & a_bit != 0) {
                    Some(m_plus) => {
                        // Horizontal branches: the function itself, with the
                        // answer qubit's N switches at the far corners of the
                        // m_plus chains.
                        for &m in &minterms {
                            if m != m_plus {
                                self.chain(y, out_bar, m, false, "h1");
                                self.chain(out, y_bar, m, false, "h2");
                            }
                        }
                        x_n = self.chain(y, out_bar, m_plus, true, "h1");
                        x_n_bar = self.chain(out, y_bar, m_plus, true, "h2");
                        // Vertical branches: the complement, answer group
                        // first.
                        let mut order = vec![m_plus];
                        order.extend(minterms.iter().copied().filter(|&m| m != m_plus));
                        x_p = self.group_branch(y, out, &order, false, "v1");
                        x_p_bar = self.group_branch(out_bar, y_bar, &order, false, "v2");
                    }
                    None => {
                        // Every minterm carries the complemented answer
                        // literal; only f = x̄ reaches here (anything wider
                        // would have a redundant input). The quad mirrors:
                        // P switches sit on the chains, N in the groups.
                        let m_star = minterms[0];
                        for &m in &minterms {
                            if m != m_star {
                                self.chain(y, out_bar, m, false, "h1");
                                self.chain(out, y_bar, m, false, "h2");
                            }
                        }
                        x_p = self.chain(y, out_bar, m_star, false, "h1");
                        x_p_bar = self.chain(out, y_bar, m_star, false, "h2");
                        let mut order: Vec<u64> =
                            minterms.iter().copied().filter(|&m| m != m_star).collect();
                        order.push(m_star);
                        x_n = self.group_branch(y, out, &order, true, "v1");
                        x_n_bar = self.group_branch(out_bar, y_bar, &order, true, "v2");
                    }
                }
            }
            Classification::Constant => {
                let high = self.table.eval(Bits::zero(n));
                // Conducting corner pairs; for f = 1 they are the minterm
                // positions, for f = 0 the maxterm positions.
                let (b1, b2) = if high {
                    ((y, out_bar), (out, y_bar))
                } else {
                    ((y, out), (y_bar, out_bar))
                };
                let all: Vec<u64> = (0..(1u64 << n)).collect();
                let plains: Vec<u64> = all.iter().copied().filter(|&m| m & a_bit != 0).collect();
                let others: Vec<u64> = all.iter().copied().filter(|&m| m & a_bit == 0).collect();
                let m_plus = plains[0];
                let m_plus2 = *plains.get(1).unwrap_or(&plains[0]);
                let m_minus = others[0];
                let m_minus2 = *others.get(1).unwrap_or(&others[0]);
                for &m in &all {
                    if m != m_plus && m != m_minus {
                        self.chain(b1.0, b1.1, m, false, "b1");
                    }
                    if m != m_plus2 && m != m_minus2 {
                        self.chain(b2.0, b2.1, m, false, "b2");
                    }
                }
                // x_N far from y on b1; x̄_N at the ȳ corner of b2.
                x_n = self.chain(b1.0, b1.1, m_plus, true, "b1");
                x_p = self.chain(b1.0, b1.1, m_minus, false, "b1");
                let (near2, far2) = b2;
                if near2 == y_bar {
                    x_n_bar = self.chain(near2, far2, m_plus2, false, "b2");
                    x_p_bar = self.chain(near2, far2, m_minus2, true, "b2");
                } else {
                    x_n_bar = self.chain(near2, far2, m_plus2, true, "b2");
                    x_p_bar = self.chain(near2, far2, m_minus2, false, "b2");
                }
            }
        }

        let gate_of = |id: SwitchId, net: &SwitchNet| net.switch(id).gate;
        let answer_gates = QuadGates {
            x_n: gate_of(x_n, &self.net),
            x_n_bar: gate_of(x_n_bar, &self.net),
            x_p: gate_of(x_p, &self.net),
            x_p_bar: gate_of(x_p_bar, &self.net),
        };
        OracleCircuit {
            table: self.table,
            net: self.net,
            y,
            y_bar,
            out,
            out_bar,
            var_gates: self.var_gates,
            answer_gates,
            answer_switches: [x_n, x_n_bar, x_p, x_p_bar],
        }
    }
}

/// Corner-adjacent source designation under the y/ȳ convention: take the
/// preferred (adjacent-corner) end unless the polarity rule forbids it.
fn pick_source(
    polarity: Polarity,
    a: NodeId,
    b: NodeId,
    y: NodeId,
    y_bar: NodeId,
    preferred: NodeId,
) -> NodeId {
    let other = |node: NodeId| if node == a { b } else { a };
    match polarity {
        Polarity::N => {
            if preferred == y {
                other(y)
            } else if a == y_bar || b == y_bar {
                y_bar
            } else {
                preferred
            }
        }
        Polarity::P => {
            if preferred == y_bar {
                other(y_bar)
            } else if a == y || b == y {
                y
            } else {
                preferred
            }
        }
    }
}

impl OracleCircuit {
    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn net(&self) -> &SwitchNet {
        &self.net
    }

    pub fn answer_gates(&self) -> QuadGates {
        self.answer_gates
    }

    /// The output corner pair (y⊕f, \overline{y⊕f}).
    pub fn output_nodes(&self) -> (NodeId, NodeId) {
        (self.out, self.out_bar)
    }

    fn drivers(&self) -> [(NodeId, Rail); 2] {
        [(self.y, Rail::Plus), (self.y_bar, Rail::Minus)]
    }

    fn input_gates(&self, x: Bits) -> GateLevels {
        let mut gates = GateLevels::uniform(self.net.gate_count(), Rail::Minus);
        for (v, ids) in self.var_gates.iter().enumerate() {
            for &g in ids {
                gates.set(g, Rail::from_bool(x.get(v)));
            }
        }
        gates
    }

    /// Switch-level evaluation; must reproduce the truth table.
    pub fn evaluate(&self, x: Bits) -> Result<bool, NetError> {
        let res = self.net.resolve(&self.drivers(), &self.input_gates(x))?;
        Ok(res.get(self.out_bar)?.is_high())
    }

    /// Sources out only the answer qubit's four gates and returns its vector.
    pub fn source_out_answer(&self, initial: Rail) -> Result<QuadVector, NetError> {
        let gates = GateLevels::uniform(self.net.gate_count(), initial);
        let outcome = self
            .net
            .source_out(&self.drivers(), &gates, &self.answer_switches)?;
        Ok(self.answer_gates.read(&outcome.gates))
    }
}

fn verdict(v: QuadVector) -> Classification {
    debug_assert_eq!(
        sum_detector(&v) != 0,
        classify_quad(&v) == QuadMode::DifferentialPairs
    );
    if sum_detector(&v) != 0 {
        Classification::Balanced
    } else {
        Classification::Constant
    }
}

/// Classifies a single-input cell as a black box: common-mode input, one
/// source-out, then the sum detector. Returns the verdict and the query
/// count, which is always one.
pub fn deutsch_classify(cell: &SingleCell) -> Result<(Classification, u64), NetError> {
    deutsch_classify_from(cell, Rail::Minus)
}

/// Same with an explicit initial input level; the verdict does not depend
/// on it.
pub fn deutsch_classify_from(
    cell: &SingleCell,
    initial: Rail,
) -> Result<(Classification, u64), NetError> {
    Ok((verdict(cell.source_out(initial)?), 1))
}

/// Classifies a multi-input circuit by sourcing out the answer qubit alone.
pub fn deutsch_jozsa_classify(circuit: &OracleCircuit) -> Result<(Classification, u64), NetError> {
    deutsch_jozsa_classify_from(circuit, Rail::Minus)
}

pub fn deutsch_jozsa_classify_from(
    circuit: &OracleCircuit,
    initial: Rail,
) -> Result<(Classification, u64), NetError> {
    Ok((verdict(circuit.source_out_answer(initial)?), 1))
}

/// Classifies any promise table, eliminating redundant variables first (the
/// elimination the builder refuses to do silently). Exactly one source-out
/// query either way.
pub fn classify_table(table: &TruthTable) -> Result<(Classification, u64), ClassifyError> {
    let census = table.census().ok_or(BuildError::PromiseViolation)?;
    let reduced = if census == Classification::Balanced {
        table.reduce()
    } else {
        table.clone()
    };
    if reduced.n() == 1 {
        let kind = match (
            reduced.eval(Bits::zero(1)),
            reduced.eval(Bits::from_word(1, 1)),
        ) {
            (false, true) => CellKind::Identity,
            (true, false) => CellKind::Negation,
            (false, false) => CellKind::Const0,
            (true, true) => CellKind::Const1,
        };
        Ok(deutsch_classify(&SingleCell::build(kind))?)
    } else {
        let circuit = build_minterm_network(&reduced, true)?;
        Ok(deutsch_jozsa_classify(&circuit)?)
    }
}

/// The classical baseline: query assignments in increasing order, answer
/// BALANCED at the first disagreement, CONSTANT after 2^(n-1) + 1 agreeing
/// queries.
pub fn brute_force_classify(n: usize, oracle: impl Fn(Bits) -> bool) -> (Classification, u64) {
    let needed = (1u64 << (n - 1)) + 1;
    let first = oracle(Bits::zero(n));
    let mut queries = 1;
    for w in 1..(1u64 << n) {
        if queries == needed {
            break;
        }
        queries += 1;
        if oracle(Bits::from_word(w, n)) != first {
            return (Classification::Balanced, queries);
        }
    }
    (Classification::Constant, queries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_detects_promise() {
        assert_eq!(
            TruthTable::parse("0110").unwrap().census(),
            Some(Classification::Balanced)
        );
        assert_eq!(
            TruthTable::parse("1111").unwrap().census(),
            Some(Classification::Constant)
        );
        assert_eq!(TruthTable::parse("0111").unwrap().census(), None);
    }

    #[test]
    fn builder_rejects_bad_tables() {
        let not_promise = TruthTable::parse("0111").unwrap();
        assert_eq!(
            build_two_input(&not_promise).unwrap_err(),
            BuildError::PromiseViolation
        );
        // f = A has B redundant.
        let f_a = TruthTable::parse("0011").unwrap();
        assert_eq!(
            build_two_input(&f_a).unwrap_err(),
            BuildError::RedundantInput(1)
        );
        let n3 = TruthTable::parse("01101001").unwrap();
        assert_eq!(
            build_minterm_network(&n3, false).unwrap_err(),
            BuildError::ExponentialGate(3)
        );
    }

    #[test]
    fn circuits_reproduce_their_tables() {
        for s in ["1001", "0110", "1111", "0000"] {
            let t = TruthTable::parse(s).unwrap();
            let c = build_two_input(&t).unwrap();
            for x in Bits::all(2) {
                assert_eq!(c.evaluate(x).unwrap(), t.eval(x), "table {s} at {x}");
            }
        }
    }

    #[test]
    fn three_input_parity_network_evaluates() {
        let t = TruthTable::from_fn(3, |x| x.get(0) ^ x.get(1) ^ x.get(2));
        let c = build_minterm_network(&t, true).unwrap();
        for x in Bits::all(3) {
            assert_eq!(c.evaluate(x).unwrap(), t.eval(x));
        }
    }

    #[test]
    fn single_input_networks_match_the_hand_built_cells() {
        use crate::railnet::SingleCell;
        let cases = [
            ("01", CellKind::Identity),
            ("10", CellKind::Negation),
            ("00", CellKind::Const0),
            ("11", CellKind::Const1),
        ];
        for (table, kind) in cases {
            let t = TruthTable::parse(table).unwrap();
            let circuit = build_minterm_network(&t, false).unwrap();
            let cell = SingleCell::build(kind);
            for x in [false, true] {
                assert_eq!(
                    circuit.evaluate(Bits::from_word(x as u64, 1)).unwrap(),
                    cell.evaluate(x, true).unwrap()
                );
            }
            for initial in [Rail::Minus, Rail::Plus] {
                assert_eq!(
                    circuit.source_out_answer(initial).unwrap(),
                    cell.source_out(initial).unwrap(),
                    "{table} from {initial:?}"
                );
            }
        }
    }

    #[test]
    fn wider_networks_classify_behind_the_gate() {
        // Widths 3 and 4 cost O(2^n) switches and sit behind the opt-in.
        let tables = [
            "01101001",
            "00011110",
            "11111111",
            "00000000",
            "0110100110010110",
        ];
        for s in tables {
            let t = TruthTable::parse(s).unwrap();
            let c = build_minterm_network(&t, true).unwrap();
            for x in Bits::all(t.n()) {
                assert_eq!(c.evaluate(x).unwrap(), t.eval(x), "{s} at {x}");
            }
            for initial in [Rail::Minus, Rail::Plus] {
                let (got, queries) = deutsch_jozsa_classify_from(&c, initial).unwrap();
                assert_eq!(got, t.census().unwrap(), "{s} from {initial:?}");
                assert_eq!(queries, 1);
            }
        }
    }

    #[test]
    fn dj_classification_all_initial_levels() {
        for s in ["1001", "0110", "1111", "0000"] {
            let t = TruthTable::parse(s).unwrap();
            let c = build_two_input(&t).unwrap();
            for initial in [Rail::Plus, Rail::Minus] {
                let (got, queries) = deutsch_jozsa_classify_from(&c, initial).unwrap();
                assert_eq!(got, t.census().unwrap(), "table {s} from {initial:?}");
                assert_eq!(queries, 1);
            }
        }
    }

    #[test]
    fn mixed_level_initial_inputs_classify_too() {
        // The promise only requires a set output before sourcing out, so any
        // full input assignment is a valid starting state.
        for s in ["1001", "0110", "1111", "0000"] {
            let t = TruthTable::parse(s).unwrap();
            let c = build_two_input(&t).unwrap();
            for x in Bits::all(2) {
                let gates = c.input_gates(x);
                let outcome = c
                    .net
                    .source_out(&c.drivers(), &gates, &c.answer_switches)
                    .unwrap();
                let v = c.answer_gates.read(&outcome.gates);
                assert_eq!(verdict(v), t.census().unwrap(), "table {s} from x={x}");
            }
        }
    }

    #[test]
    fn classify_table_covers_all_eight_promise_tables() {
        let tables = [
            "0011", "1100", "0101", "1010", "0110", "1001", "0000", "1111",
        ];
        for s in tables {
            let t = TruthTable::parse(s).unwrap();
            let (got, queries) = classify_table(&t).unwrap();
            assert_eq!(got, t.census().unwrap(), "table {s}");
            assert_eq!(queries, 1);
        }
    }

    #[test]
    fn brute_force_query_counts() {
        let (c, q) = brute_force_classify(1, |x| x.get(0));
        assert_eq!((c, q), (Classification::Balanced, 2));
        let (c, q) = brute_force_classify(2, |_| false);
        assert_eq!((c, q), (Classification::Constant, 3));
        let (c, q) = brute_force_classify(2, |x| x.get(0));
        assert_eq!(c, Classification::Balanced);
        assert!(q <= 3);
    }
}
