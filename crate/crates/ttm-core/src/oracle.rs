//! Independent reference implementations used to verify every main-path
//! result: a brute-force Simon solver, dense GF(2) linear algebra, and
//! separable-function enumeration.
//!
//! Pivot and scan orders are fixed lowest-index-first so oracle outputs are
//! reproducible byte for byte. Nothing here touches the switch-level
//! machinery; agreement between the two routes is what the test suites check.

use std::collections::HashMap;

use thiserror::Error;

use crate::bits::Bits;
use crate::simon::SimonInstance;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("the all-zero secret string is not an allowed value")]
    SecretZero,
}

/// A GF(2) linear system: uniform-width coefficient rows and a rhs bit per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2System {
    pub rows: Vec<Bits>,
    pub rhs: Bits,
}

impl Gf2System {
    pub fn homogeneous(rows: Vec<Bits>) -> Gf2System {
        let m = rows.len().max(1);
        Gf2System {
            rhs: Bits::zero(m),
            rows,
        }
    }

    pub fn width(&self) -> usize {
        self.rows.first().map(|r| r.width()).unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Solution {
    pub rank: usize,
    /// `None` when the system is inconsistent.
    pub particular: Option<Bits>,
    pub nullspace_basis: Vec<Bits>,
}

impl Gf2Solution {
    pub fn consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// Enumerates the full nullspace (including zero). Basis sizes above 20
    /// are rejected to keep this a desk-scale helper.
    pub fn nullspace(&self, width: usize) -> Vec<Bits> {
        assert!(self.nullspace_basis.len() <= 20);
        let k = self.nullspace_basis.len();
        (0..(1u64 << k))
            .map(|sel| {
                let mut v = Bits::zero(width);
                for (i, b) in self.nullspace_basis.iter().enumerate() {
                    if sel >> i & 1 == 1 {
                        v = v.xor(b);
                    }
                }
                v
            })
            .collect()
    }
}

/// Gauss-Jordan elimination over GF(2) with lowest-index pivot columns.
pub fn gf2_solve(system: &Gf2System) -> Gf2Solution {
    let m = system.rows.len();
    let width = system.width();
    if width == 0 {
        return Gf2Solution {
            rank: 0,
            particular: Some(Bits::zero(1)),
            nullspace_basis: vec![],
        };
    }
    let mut rows: Vec<(Bits, bool)> = system
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| (*r, system.rhs.get(i)))
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; width];
    let mut next_row = 0;
    for (col, pivot) in pivot_of_col.iter_mut().enumerate() {
        let Some(found) = (next_row..m).find(|&r| rows[r].0.get(col)) else {
            continue;
        };
        rows.swap(next_row, found);
        let (prow, prhs) = rows[next_row];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && row.0.get(col) {
                row.0 = row.0.xor(&prow);
                row.1 ^= prhs;
            }
        }
        *pivot = Some(next_row);
        next_row += 1;
    }
    let rank = next_row;
    let inconsistent = rows[rank..].iter().any(|&(r, b)| r.is_zero() && b);
    let particular = if inconsistent {
        None
    } else {
        let mut x = Bits::zero(width);
        for (col, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(r) = *pivot {
                x.set(col, rows[r].1);
            }
        }
        Some(x)
    };
    let mut basis = Vec::new();
    for free in 0..width {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = Bits::zero(width);
        v.set(free, true);
        for (col, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(r) = *pivot {
                if rows[r].0.get(free) {
                    v.set(col, true);
                }
            }
        }
        basis.push(v);
    }
    Gf2Solution {
        rank,
        particular,
        nullspace_basis: basis,
    }
}

/// Scans inputs in increasing order until two collide, and returns the xor of
/// the colliding pair with the number of oracle queries spent. The pigeonhole
/// bound is 2^(n-1) + 1 queries.
pub fn brute_force_simon(instance: &SimonInstance) -> (Bits, u64) {
    let n = instance.n();
    let mut seen: HashMap<u64, u64> = HashMap::new();
    let mut queries = 0u64;
    for w in 0..(1u64 << n) {
        let x = Bits::from_word(w, n);
        let v = instance.query(x).word();
        queries += 1;
        if let Some(prev) = seen.insert(v, w) {
            return (Bits::from_word(prev ^ w, n), queries);
        }
    }
    unreachable!("a 2:1 function collides within 2^(n-1)+1 scans");
}

/// All nonzero coefficient vectors orthogonal to the secret, in increasing
/// order. There are 2^(n-1) - 1 of them.
pub fn enumerate_separable(secret: Bits) -> Result<Vec<Bits>, OracleError> {
    if secret.is_zero() {
        return Err(OracleError::SecretZero);
    }
    let n = secret.width();
    assert!(n <= 24, "enumeration capped at 24 bits");
    Ok((1..(1u64 << n))
        .map(|w| Bits::from_word(w, n))
        .filter(|y| !y.dot(&secret))
        .collect())
}

/// Number of inputs where the separable function r·x ⊕ flag matches bit `i`
/// of the instance value.
pub fn agreement_count(row: Bits, flag: bool, i: usize, instance: &SimonInstance) -> usize {
    let n = instance.n();
    assert!(n <= 12, "exhaustive census capped at 12 bits");
    Bits::all(n)
        .filter(|&x| (row.dot(&x) ^ flag) == instance.f(x).get(i))
        .count()
}

/// Exhaustively checks a fitted bank against an instance: every row must be
/// orthogonal to the candidate, and each fitted function r_i . x ⊕ c_i must
/// agree with the instance bit function on at least half of all inputs. The
/// flag c_i starts from the machine state (the recorded y-toggle xor the
/// instance value at zero); a fit that tracks the complement core counts
/// through the complement rewriting rule, which flips the flag when more
/// than half the values deviate.
pub fn exhaustive_verify(
    rows: &[Bits],
    y_toggles: &Bits,
    s_hat: Bits,
    instance: &SimonInstance,
) -> bool {
    let n = instance.n();
    assert!(n <= 12, "exhaustive verification capped at 12 bits");
    let f0 = instance.f(Bits::zero(n));
    let half = 1usize << (n - 1);
    rows.iter().enumerate().all(|(i, row)| {
        if row.dot(&s_hat) {
            return false;
        }
        let flag = f0.get(i) ^ y_toggles.get(i);
        let agree = agreement_count(*row, flag, i, instance);
        agree.max((1usize << n) - agree) >= half
    })
}
