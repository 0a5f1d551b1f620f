//! Points, dynamics sets and target sets.

mod cone;
mod dynamics;
mod point;
mod target;

pub use cone::{AxisCone, NormalCone};
pub use dynamics::Dynamics;
pub use point::Point;
pub use target::{Target, TargetKind, TargetTag};

pub(crate) use dynamics::first_argmax_abs;
pub(crate) use point::linalg;
