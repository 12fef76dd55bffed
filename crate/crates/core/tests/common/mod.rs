#![allow(dead_code)]

pub mod dot;
pub mod gen;
pub mod oracle;
pub mod props;

pub const TOL: f64 = 1e-9;

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
