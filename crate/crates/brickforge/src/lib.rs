pub mod calculus;
pub mod census;
pub mod normal;
pub mod polyhedron;
pub mod surfaces;
