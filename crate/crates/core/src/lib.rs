pub mod shapes;
pub mod ring;
pub mod qoracle;
pub mod geometry;
pub mod cli;
