//! Switch-level simulator of dual-rail reversible switching networks.
//!
//! Builds ideal-switch models of the self-configuring reversible logic family
//! in which a Hadamard step is realized by feedback (sourcing out gate
//! charge), and runs classical emulations of the Deutsch, Deutsch-Jozsa,
//! Bernstein-Vazirani, and Simon oracle algorithms on them. Every main-path
//! result can be cross-checked against the independent brute-force and GF(2)
//! reference implementations in [`oracle`].

pub mod bits;
pub mod bv;
pub mod deutsch;
pub mod oracle;
pub mod railnet;
pub mod simon;

pub use bits::Bits;

/// Default scalar type for the real-amplitude helpers.
pub type Amplitude = f64;

/// [`railnet::hadamard::hadamard2`] at the default scalar type.
pub fn hadamard2(v: [Amplitude; 2]) -> [Amplitude; 2] {
    railnet::hadamard::hadamard2(v)
}
