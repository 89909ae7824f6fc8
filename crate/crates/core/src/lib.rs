//! Exact quaternion-matrix switches and the virtual knot invariants they induce.

pub mod field;
pub mod linalg;
pub mod linkinv;
pub mod par;
pub mod quat2;
pub mod solver;
pub mod switch;
pub mod verify;
