//! The bistable elimination mesh: fitted control rows as a GF(2) system and
//! the coax procedure that pushes the mesh from the all-zero stable state to
//! the secret-string stable state.
//!
//! When the rows reach rank n-1 the homogeneous system has exactly the two
//! stable input states {0, ŝ}. A candidate is extracted by forcing single
//! inputs high in turn, at most n attempts, mirroring the physical coax. The
//! elimination here is deliberately independent of the reference solver in
//! [`crate::oracle`]; the two routes are compared test-side on every run.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::bits::Bits;

use super::FunctionBank;

/// The fitted rows plus the y-toggle flags against the initial register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationSystem {
    pub rows: Vec<Bits>,
    /// rhs\[i\] set means y_i toggled: that circuit's output is used at
    /// logic 1 instead of logic 0.
    pub rhs: Bits,
}

impl EliminationSystem {
    pub fn width(&self) -> usize {
        self.rows.first().map(|r| r.width()).unwrap_or(0)
    }
}

/// Snapshot of the bank as a linear system.
pub fn build_elimination(bank: &FunctionBank) -> EliminationSystem {
    EliminationSystem {
        rows: bank.rows(),
        rhs: bank.y().xor(&bank.initial_y()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshOutcome {
    pub candidate: Option<Bits>,
    /// Rank of the homogeneous row space.
    pub rank: usize,
    /// Coax attempts spent (indices forced high), at most n.
    pub coax_attempts: usize,
}

/// Linear-independent reduction by the xor-basis method; returns the basis
/// of the span.
fn xor_basis(words: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for mut w in words {
        for &b in &basis {
            w = w.min(w ^ b);
        }
        if w != 0 {
            basis.push(w);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// Forward elimination + back substitution for the coax-constrained system
/// rows·x = rhs, x_forced = 1. Returns the unique solution if one exists.
fn solve_forced(rows: &[u64], rhs_bits: &[bool], width: usize, forced: usize) -> Option<u64> {
    let mut sys: Vec<(u64, bool)> = rows.iter().copied().zip(rhs_bits.iter().copied()).collect();
    sys.push((1u64 << (width - 1 - forced), true));
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut top = 0;
    for col in 0..width {
        let bit = 1u64 << (width - 1 - col);
        let Some(r) = (top..sys.len()).find(|&r| sys[r].0 & bit != 0) else {
            continue;
        };
        sys.swap(top, r);
        let (prow, prhs) = sys[top];
        for (rr, row) in sys.iter_mut().enumerate() {
            if rr != top && row.0 & bit != 0 {
                row.0 ^= prow;
                row.1 ^= prhs;
            }
        }
        pivots.push((col, top));
        top += 1;
    }
    if sys[top..].iter().any(|&(r, b)| r == 0 && b) {
        return None;
    }
    if top < width {
        return None;
    }
    let mut x = 0u64;
    for &(col, r) in &pivots {
        if sys[r].1 {
            x |= 1 << (width - 1 - col);
        }
    }
    Some(x)
}

/// Settles the mesh: a candidate exists exactly when the homogeneous
/// nullspace is {0, ŝ} (rank n-1) and the affine system is consistent. The
/// candidate is found by coaxing: force x_k = 1 for k = 1..n and take the
/// first consistent full assignment.
pub fn settle_mesh(system: &EliminationSystem) -> MeshOutcome {
    let n = system.width();
    if n == 0 {
        return MeshOutcome {
            candidate: None,
            rank: 0,
            coax_attempts: 0,
        };
    }
    let words: Vec<u64> = system.rows.iter().map(|r| r.word()).collect();
    let rank = xor_basis(words.iter().copied()).len();
    // Consistency of rows·x = rhs: augmenting the rhs column must not grow
    // the span.
    let aug_rank = xor_basis(
        words
            .iter()
            .enumerate()
            .map(|(i, &w)| (w << 1) | u64::from(system.rhs.get(i))),
    )
    .len();
    let consistent = aug_rank == rank;
    if rank != n - 1 || !consistent {
        return MeshOutcome {
            candidate: None,
            rank,
            coax_attempts: 0,
        };
    }
    for k in 0..n {
        if let Some(x) = solve_forced(&words, &vec![false; words.len()], n, k) {
            return MeshOutcome {
                candidate: Some(Bits::from_word(x, n)),
                rank,
                coax_attempts: k + 1,
            };
        }
    }
    MeshOutcome {
        candidate: None,
        rank,
        coax_attempts: n,
    }
}

/// The dual-inverter element inside a programmable cell, feeding corner
/// rails back to the gate rails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeedbackCell {
    /// The cell's control bit.
    pub control: bool,
}

impl FeedbackCell {
    /// The two allowed stable patterns: with the control set, gates must sit
    /// high exactly when the corner pairs are in the crossed (minterm
    /// shorted) arrangement; with the control clear the cell must pass its
    /// corner value through unchanged.
    pub fn is_stable(&self, in_val: bool, out_val: bool, gate: bool) -> bool {
        if self.control {
            gate == (in_val ^ out_val)
        } else {
            in_val == out_val
        }
    }
}

/// Per-cell stability of the whole mesh at an input assignment, with each
/// circuit's output forced to its rhs flag. Cell (i, j) sees the chain value
/// arriving from the y side and the value constrained from the forced output
/// side.
pub fn mesh_cell_stability(system: &EliminationSystem, x: &Bits) -> Vec<Vec<bool>> {
    let n = system.width();
    let q = |row: &Bits, t: usize| row.get(t) && x.get(t);
    system
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            (0..n)
                .map(|j| {
                    // Chain value arriving from the y side, and the value the
                    // forced output constrains backwards onto the cell.
                    let in_val = (0..j).fold(false, |a, t| a ^ q(row, t));
                    let out_val = system.rhs.get(i) ^ (j + 1..n).fold(false, |a, t| a ^ q(row, t));
                    FeedbackCell {
                        control: row.get(j),
                    }
                    .is_stable(in_val, out_val, x.get(j))
                })
                .collect()
        })
        .collect()
}

/// True when every feedback cell is stable, which happens exactly on
/// solutions of rows·x = rhs.
pub fn mesh_is_stable(system: &EliminationSystem, x: &Bits) -> bool {
    mesh_cell_stability(system, x).iter().flatten().all(|&s| s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxOutcome {
    pub settled: Option<Bits>,
    pub steps: u64,
}

/// Seeded local relaxation over the feedback cells: starting from the coaxed
/// state with one input forced high, repeatedly flip an input of some
/// unstable circuit (never the forced one) until every cell is stable or the
/// step budget runs out. Models the physical settling; the step count is the
/// honest cost figure.
pub fn relax_mesh(
    system: &EliminationSystem,
    forced: usize,
    seed: u64,
    max_steps: u64,
) -> RelaxOutcome {
    let n = system.width();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut x = Bits::unit(n, forced);
    let mut steps = 0;
    while steps < max_steps {
        let unsat: Vec<usize> = (0..system.rows.len())
            .filter(|&i| system.rows[i].dot(&x) != system.rhs.get(i))
            .collect();
        if unsat.is_empty() {
            return RelaxOutcome {
                settled: Some(x),
                steps,
            };
        }
        let i = unsat[rng.random_range(0..unsat.len())];
        let candidates: Vec<usize> = (0..n)
            .filter(|&j| system.rows[i].get(j) && j != forced)
            .collect();
        if candidates.is_empty() {
            break;
        }
        x.toggle(candidates[rng.random_range(0..candidates.len())]);
        steps += 1;
    }
    RelaxOutcome {
        settled: None,
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&str], rhs: &str) -> EliminationSystem {
        EliminationSystem {
            rows: rows.iter().map(|s| Bits::parse(s).unwrap()).collect(),
            rhs: Bits::parse(rhs).unwrap(),
        }
    }

    #[test]
    fn settles_the_worked_system() {
        let s = sys(&["0110", "1111", "0010", "1011"], "0000");
        let out = settle_mesh(&s);
        assert_eq!(out.rank, 3);
        assert_eq!(out.candidate, Some(Bits::parse("1001").unwrap()));
        // The first coax index with a set candidate bit is x1.
        assert_eq!(out.coax_attempts, 1);
    }

    #[test]
    fn rank_deficient_systems_settle_to_none() {
        let s = sys(&["0110", "0110", "0000", "0110"], "0000");
        assert_eq!(settle_mesh(&s).candidate, None);
        let zero = sys(&["0000", "0000", "0000", "0000"], "0000");
        let out = settle_mesh(&zero);
        assert_eq!((out.candidate, out.rank), (None, 0));
    }

    #[test]
    fn full_rank_has_no_second_state() {
        let s = sys(&["100", "010", "001"], "000");
        assert_eq!(settle_mesh(&s).candidate, None);
    }

    #[test]
    fn inconsistent_rhs_settles_to_none() {
        let s = sys(&["0110", "0110", "1111", "1011"], "0100");
        assert_eq!(settle_mesh(&s).candidate, None);
    }

    #[test]
    fn coax_skips_zero_bits_of_the_candidate() {
        // Candidate 0110: forcing x1 = 1 is inconsistent, x2 works.
        let s = sys(&["1000", "0110", "0001"], "000");
        let out = settle_mesh(&s);
        assert_eq!(out.candidate, Some(Bits::parse("0110").unwrap()));
        assert_eq!(out.coax_attempts, 2);
    }

    #[test]
    fn stability_holds_exactly_on_solutions() {
        let s = sys(&["0110", "1111", "0010", "1011"], "0000");
        for x in Bits::all(4) {
            let solves = s
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.dot(&x) == s.rhs.get(i));
            assert_eq!(mesh_is_stable(&s, &x), solves, "x={x}");
        }
        assert!(mesh_is_stable(&s, &Bits::zero(4)));
        assert!(mesh_is_stable(&s, &Bits::parse("1001").unwrap()));
    }

    #[test]
    fn relaxation_reaches_the_candidate() {
        let s = sys(&["0110", "1111", "0010", "1011"], "0000");
        let out = relax_mesh(&s, 0, 42, 10_000);
        assert_eq!(out.settled, Some(Bits::parse("1001").unwrap()));
    }
}
