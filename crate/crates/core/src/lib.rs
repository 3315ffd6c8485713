pub mod cli;
pub mod ed;
pub mod homotopy;
pub mod poly;
pub mod topology;
