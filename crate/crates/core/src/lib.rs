pub mod exchange;
pub mod group;
pub mod io;
pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod scattering;
