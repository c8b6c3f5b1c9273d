//! Exact exterior calculus on the Heisenberg group `H^n`.
//!
//! * [`coeff`]: rational polynomials, the coefficient ring.
//! * [`frame`]: left-invariant frame, forms, multivectors, `d`, Hodge star.
//! * [`rumin`]: the Rumin complex (`I^k`, `J^k`, `d_Q`, `D`, `d_c`).
//! * [`contact`]: smooth maps, pushforward, pullback, contactness.
//! * [`surface`]: characteristic points of parametrized surfaces in `H^1`.

/// Debug-build postcondition. Disabled under `fault-dtheta` so that the
/// verification harness, not an assertion, reports the injected fault.
macro_rules! postcondition {
    ($($arg:tt)*) => {
        if cfg!(all(debug_assertions, not(feature = "fault-dtheta"))) {
            assert!($($arg)*);
        }
    };
}

pub mod coeff;
pub mod contact;
pub mod error;
pub mod frame;
pub mod linalg;
pub mod random;
pub mod rumin;
pub mod surface;

pub use coeff::{rat, rat_int, Monomial, Point, PolyCoeff, Rational};
pub use contact::{FrameMatrix, SmoothMap};
pub use error::{Error, Result};
pub use frame::{Blade, Form, MultiVector};
pub use rumin::{QuotientClass, SubspaceBasis, SubspaceKind};
pub use surface::{CharPoint, HeisVector, ParamSurface};
