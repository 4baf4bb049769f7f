//! Exact moment, hyponormality and subnormality computations for 1- and
//! 2-variable weighted shifts.

#![allow(clippy::result_large_err, clippy::needless_range_loop)]

pub mod cli;
pub mod exactnum;
pub mod measures;
pub mod sfc;
pub mod shift1d;
pub mod shift2d;
pub mod verify;
