//! Switch for the expensive internal cross-checks.
//!
//! When enabled, invertibility tests also evaluate the equivalent
//! characterizations through coefficient rings and divisoriality, and
//! trace duals are compared against the colon ideal `(Z[β] : I)`; a
//! disagreement panics. The switch reads `BFTORUS_DEBUG_ASSERT=1` unless
//! overridden with [`set_debug_asserts`].

use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::OnceLock;

pub const ENV_VAR: &str = "BFTORUS_DEBUG_ASSERT";

const UNSET: u8 = 0;
const OFF: u8 = 1;
const ON: u8 = 2;

static OVERRIDE: AtomicU8 = AtomicU8::new(UNSET);
static FROM_ENV: OnceLock<bool> = OnceLock::new();

pub fn debug_asserts_enabled() -> bool {
    match OVERRIDE.load(Ordering::Relaxed) {
        OFF => false,
        ON => true,
        _ => *FROM_ENV.get_or_init(|| std::env::var(ENV_VAR).is_ok_and(|v| v == "1")),
    }
}

/// `Some(b)` forces the checks on or off; `None` returns to the
/// environment setting.
pub fn set_debug_asserts(on: Option<bool>) {
    let v = match on {
        None => UNSET,
        Some(false) => OFF,
        Some(true) => ON,
    };
    OVERRIDE.store(v, Ordering::Relaxed);
}
