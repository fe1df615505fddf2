pub mod cohomology;
pub mod complexes;
pub mod exactla;
pub mod geometry;
pub mod properties;
pub mod spectral;
