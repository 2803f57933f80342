pub mod acceptance;
pub mod admissibility;
pub mod cobordism;
pub mod domain;
pub mod floer;
pub mod linalg;
pub mod spinc;
pub mod surface;
