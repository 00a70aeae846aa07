//! The switch-level core: two-valued logic rails, four-rail qubit vectors
//! with common/differential mode classification, switch networks resolved to
//! equipotential components, the four single-input gate cells, sourcing-out,
//! and the 2x2 Hadamard arithmetic.
//!
//! Rails are ideal two-valued potentials; switches close exactly on gate
//! polarity (N on PLUS, P on MINUS) with threshold voltages abstracted away.
//! All values are immutable after construction; resolution and sourcing-out
//! return new state.

mod cell;
pub mod hadamard;
mod net;

pub use cell::{append_cell, build_single_cell, CellKind, CellPorts, QuadGates, SingleCell};
pub use net::{
    zero_current, GateId, GateLevels, NetError, NodeId, Polarity, Resolution, SourceOutcome,
    Switch, SwitchId, SwitchNet,
};

use serde::Serialize;

/// A logic potential: PLUS is +V, MINUS is -V.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Rail {
    Plus,
    Minus,
}

impl Rail {
    pub fn complement(self) -> Rail {
        match self {
            Rail::Plus => Rail::Minus,
            Rail::Minus => Rail::Plus,
        }
    }

    pub fn from_bool(v: bool) -> Rail {
        if v {
            Rail::Plus
        } else {
            Rail::Minus
        }
    }

    pub fn is_high(self) -> bool {
        self == Rail::Plus
    }

    /// +1 for PLUS, -1 for MINUS.
    pub fn signum(self) -> i32 {
        match self {
            Rail::Plus => 1,
            Rail::Minus => -1,
        }
    }
}

/// Mode of a rail pair: COMMON when both rails are equal, DIFFERENTIAL when
/// they are at opposite levels.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum PairMode {
    Common,
    Differential,
}

pub fn classify_pair(a: Rail, b: Rail) -> PairMode {
    if a == b {
        PairMode::Common
    } else {
        PairMode::Differential
    }
}

/// Mode of a four-rail vector taken as a pair of pairs. It is COMMON as
/// pairs when both sub-pairs have the same mode and DIFFERENTIAL otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum QuadMode {
    CommonPairs,
    DifferentialPairs,
}

/// The four-rail qubit input (x_N, x̄_N, x_P, x̄_P).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct QuadVector {
    pub x_n: Rail,
    pub x_n_bar: Rail,
    pub x_p: Rail,
    pub x_p_bar: Rail,
}

impl QuadVector {
    pub fn uniform(level: Rail) -> Self {
        QuadVector {
            x_n: level,
            x_n_bar: level,
            x_p: level,
            x_p_bar: level,
        }
    }

    pub fn as_array(&self) -> [Rail; 4] {
        [self.x_n, self.x_n_bar, self.x_p, self.x_p_bar]
    }

    pub fn n_pair_mode(&self) -> PairMode {
        classify_pair(self.x_n, self.x_n_bar)
    }

    pub fn p_pair_mode(&self) -> PairMode {
        classify_pair(self.x_p, self.x_p_bar)
    }
}

pub fn classify_quad(q: &QuadVector) -> QuadMode {
    if q.n_pair_mode() == q.p_pair_mode() {
        QuadMode::CommonPairs
    } else {
        QuadMode::DifferentialPairs
    }
}

/// Algebraic rail sum (count of PLUS minus count of MINUS), the analog
/// discriminator read after sourcing out. On sourced-out cell vectors the sum
/// is nonzero exactly for balanced cells.
pub fn sum_detector(q: &QuadVector) -> i32 {
    q.as_array().iter().map(|r| r.signum()).sum()
}
