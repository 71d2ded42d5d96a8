//! Kakeya sets over finite fields.
//!
//! - [`gf`]: arithmetic in `F_q`, `q = p^k ≤ 2^16`
//! - [`space`]: points, canonical directions and lines of `F_q^n`
//! - [`kakeya`]: explicit constructions and exhaustive verification
//! - [`polymethod`]: polynomials vanishing to multiplicity `m` on a point set,
//!   line restrictions and leading forms
//! - [`bounds`]: exact lower bounds `N_q(n,m)/C(m+n-1,n)` and their asymptotics
//! - [`search`]: exact minimum Kakeya sets in the plane for small `q`
//! - [`io`]: JSON file formats

pub mod bounds;
pub mod error;
pub mod gf;
pub mod io;
pub mod kakeya;
pub mod polymethod;
pub mod search;
pub mod space;

pub use error::{Error, Result};
pub use gf::Field;
pub use kakeya::{construct, verify, KakeyaSet, Variant, Verdict};
pub use space::{Direction, LineSpec, Point, Space};
