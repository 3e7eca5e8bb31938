//! Germ files, report rendering and the command implementations behind the
//! `milnorsig` binary.

pub mod app;
pub mod germfile;
pub mod render;
