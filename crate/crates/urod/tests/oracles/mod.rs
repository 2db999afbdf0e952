//! Independent oracles used only by tests.

#![allow(dead_code)]

pub mod weyl_kac;
