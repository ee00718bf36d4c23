pub mod cayley;
pub mod gauss;
pub mod hopf;
pub mod lie;
pub mod linalg;
pub mod weights;
