//! Truncated power series in the formal variables with polynomial
//! coefficients, and truncated jets at a rational basepoint.

mod fps;
mod jet;

pub use fps::Fps;
pub use jet::Jet;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 8;

/// Variable names `prefix1..prefixN`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}
