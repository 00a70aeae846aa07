//! The function bank: n programmable separable circuits on a shared x bus,
//! fitted to streamed data by the H-pulse protocol.
//!
//! Imposing a data element on a circuit's output exploits reversibility: the
//! y register settles to f ⊕ (⊕_j s_j x_j). A pulse then compares every y
//! against its latched previous value and toggles one control bit per toggled
//! circuit, always at a position where the input changed. After any pulse
//! each circuit reproduces the element just imposed, whether or not its
//! controls moved.

use rand::Rng;
use thiserror::Error;

use crate::bits::Bits;
use crate::bv::{synthesize_cascade, CascadeCircuit};
use crate::railnet::NetError;

/// Whether ripples run through the switch network or its XOR arithmetic
/// shadow. The two must agree; tests and the acceptance suite compare them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RippleMode {
    SwitchLevel,
    Algebraic,
}

/// One programmable separable circuit: a control row over a cascade.
pub struct SeparableCircuit {
    row: Bits,
    cascade: CascadeCircuit,
}

impl SeparableCircuit {
    pub fn new(row: Bits) -> SeparableCircuit {
        SeparableCircuit {
            row,
            cascade: synthesize_cascade(&row),
        }
    }

    pub fn row(&self) -> Bits {
        self.row
    }

    /// Imposes a value on the function output and reads the settled y
    /// register through the switch network.
    pub fn ripple_y(&self, x: &Bits, f_imposed: bool) -> Result<bool, NetError> {
        self.cascade.ripple_y(x, f_imposed)
    }

    /// The same relation in XOR arithmetic, y = f ⊕ (row · x).
    pub fn ripple_y_algebraic(&self, x: &Bits, f_imposed: bool) -> bool {
        f_imposed ^ self.row.dot(x)
    }

    /// Forward output under a held y value, f' = y ⊕ (row · x).
    pub fn output(&self, x: &Bits, y: bool) -> Result<bool, NetError> {
        self.cascade.output_from_y(x, y)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PulseError {
    #[error("input vector did not change; the pulse would be a no-op")]
    NoChange,
    #[error(transparent)]
    Net(#[from] NetError),
}

/// What one H-pulse did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulseReport {
    /// Circuits whose y register toggled in the ripple phase.
    pub toggled_y: Vec<usize>,
    /// (circuit, input position) control toggles applied on the rising edge.
    pub s_toggles: Vec<(usize, usize)>,
}

/// The Simon machine state: n circuits sharing one x bus, with the previous
/// x and y values latched between pulses.
pub struct FunctionBank {
    n: usize,
    circuits: Vec<SeparableCircuit>,
    y: Bits,
    initial_y: Bits,
    x_prev: Bits,
    y_prev: Bits,
    mode: RippleMode,
    h_pulses: u64,
}

/// Initializes the bank at x = 0 with all controls clear and each y set so
/// the circuit outputs the given f(0). One priming pulse latches the state.
pub fn init_bank(n: usize, f0: Bits, mode: RippleMode) -> FunctionBank {
    assert_eq!(f0.width(), n);
    let circuits: Vec<SeparableCircuit> = (0..n)
        .map(|_| SeparableCircuit::new(Bits::zero(n)))
        .collect();
    let zero = Bits::zero(n);
    let mut y = Bits::zero(n);
    for (i, circuit) in circuits.iter().enumerate() {
        let yi = match mode {
            RippleMode::SwitchLevel => circuit
                .ripple_y(&zero, f0.get(i))
                .expect("a ladder with one driven pair cannot short"),
            RippleMode::Algebraic => circuit.ripple_y_algebraic(&zero, f0.get(i)),
        };
        y.set(i, yi);
    }
    FunctionBank {
        n,
        circuits,
        y,
        initial_y: y,
        x_prev: zero,
        y_prev: y,
        mode,
        h_pulses: 1,
    }
}

impl FunctionBank {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Bits> {
        self.circuits.iter().map(|c| c.row()).collect()
    }

    pub fn circuits(&self) -> &[SeparableCircuit] {
        &self.circuits
    }

    pub fn y(&self) -> Bits {
        self.y
    }

    pub fn initial_y(&self) -> Bits {
        self.initial_y
    }

    pub fn x_prev(&self) -> Bits {
        self.x_prev
    }

    pub fn h_pulses(&self) -> u64 {
        self.h_pulses
    }

    fn ripple(&self, i: usize, x: &Bits, f: bool) -> Result<bool, NetError> {
        match self.mode {
            RippleMode::SwitchLevel => self.circuits[i].ripple_y(x, f),
            RippleMode::Algebraic => Ok(self.circuits[i].ripple_y_algebraic(x, f)),
        }
    }

    /// One H-pulse: impose (new_x, new_f), let every y settle, toggle one
    /// control bit per toggled circuit at a changed input position on the
    /// rising edge, re-settle, and latch on the falling edge.
    pub fn h_pulse(
        &mut self,
        new_x: Bits,
        new_f: Bits,
        rng: &mut impl Rng,
    ) -> Result<PulseReport, PulseError> {
        assert_eq!(new_x.width(), self.n);
        assert_eq!(new_f.width(), self.n);
        if new_x == self.x_prev {
            return Err(PulseError::NoChange);
        }
        let changed = self.x_prev.diff_positions(&new_x);

        // Asynchronous ripple.
        let mut settled = Bits::zero(self.n);
        for i in 0..self.n {
            settled.set(i, self.ripple(i, &new_x, new_f.get(i))?);
        }

        // Rising edge: toggle controls where y toggled.
        let mut toggled_y = Vec::new();
        let mut s_toggles = Vec::new();
        for i in 0..self.n {
            if settled.get(i) == self.y_prev.get(i) {
                self.y.set(i, settled.get(i));
                continue;
            }
            toggled_y.push(i);
            let j = if changed.len() == 1 {
                changed[0]
            } else {
                changed[rng.random_range(0..changed.len())]
            };
            let mut row = self.circuits[i].row();
            row.toggle(j);
            self.circuits[i] = SeparableCircuit::new(row);
            s_toggles.push((i, j));
            self.y.set(i, self.ripple(i, &new_x, new_f.get(i))?);
        }

        // Falling edge: latch.
        self.x_prev = new_x;
        self.y_prev = self.y;
        self.h_pulses += 1;
        Ok(PulseReport {
            toggled_y,
            s_toggles,
        })
    }

    /// The output each circuit produces for an input under its held y value;
    /// after a pulse this reproduces the imposed data element.
    pub fn output(&self, i: usize, x: &Bits) -> Result<bool, NetError> {
        match self.mode {
            RippleMode::SwitchLevel => self.circuits[i].output(x, self.y.get(i)),
            RippleMode::Algebraic => Ok(self.y.get(i) ^ self.circuits[i].row().dot(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn bits(s: &str) -> Bits {
        Bits::parse(s).unwrap()
    }

    #[test]
    fn init_sets_y_to_f0() {
        for mode in [RippleMode::SwitchLevel, RippleMode::Algebraic] {
            let bank = init_bank(4, bits("1101"), mode);
            assert_eq!(bank.y(), bits("1101"));
            assert_eq!(init_bank(4, bits("0000"), mode).y(), bits("0000"));
            for i in 0..4 {
                assert_eq!(bank.output(i, &Bits::zero(4)).unwrap(), bits("1101").get(i));
            }
        }
    }

    #[test]
    fn ripple_matches_algebra() {
        let rows = ["0000", "1000", "1100", "1011"];
        for r in rows {
            let c = SeparableCircuit::new(bits(r));
            for x in Bits::all(4) {
                for f in [false, true] {
                    assert_eq!(c.ripple_y(&x, f).unwrap(), c.ripple_y_algebraic(&x, f));
                }
            }
        }
    }

    #[test]
    fn ripple_examples() {
        let c = SeparableCircuit::new(bits("0000"));
        assert!(!c.ripple_y(&bits("1000"), false).unwrap());
        let c = SeparableCircuit::new(bits("1000"));
        assert!(c.ripple_y(&bits("1100"), false).unwrap());
        for x in Bits::all(4) {
            let c = SeparableCircuit::new(bits("0110"));
            assert_eq!(c.ripple_y(&Bits::zero(4), x.get(0)).unwrap(), x.get(0));
        }
    }

    #[test]
    fn no_change_pulse_is_flagged_and_inert() {
        let mut bank = init_bank(4, bits("1101"), RippleMode::SwitchLevel);
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let before_rows = bank.rows();
        let err = bank
            .h_pulse(Bits::zero(4), bits("1101"), &mut rng)
            .unwrap_err();
        assert_eq!(err, PulseError::NoChange);
        assert_eq!(bank.rows(), before_rows);
        assert_eq!(bank.h_pulses(), 1);
    }

    #[test]
    fn post_pulse_consistency() {
        let mut bank = init_bank(4, bits("1101"), RippleMode::SwitchLevel);
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let data = [("1000", "1000"), ("1100", "1001"), ("1110", "0110")];
        for (x, f) in data {
            bank.h_pulse(bits(x), bits(f), &mut rng).unwrap();
            for i in 0..4 {
                assert_eq!(bank.output(i, &bits(x)).unwrap(), bits(f).get(i));
            }
        }
    }
}
