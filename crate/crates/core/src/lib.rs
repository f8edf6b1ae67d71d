#![no_std]
extern crate alloc;

pub mod arith;
pub mod graph;
pub mod blowup;
pub mod space;
pub mod valuation;
