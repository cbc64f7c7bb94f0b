//! Exact rational computations for rational homotopy theory: free graded
//! commutative DGAs, cohomology, minimal models, homotopies and obstruction
//! classes, Whitehead and Massey products, and the exterior-algebra
//! embedding tests behind (non-)scalability of manifolds.

pub mod algebra;
pub mod cohomology;
pub mod commands;
pub mod element;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod homotopy;
pub mod hopf;
pub mod linalg;
pub mod massey;
pub mod minimal;
pub mod monomial;
pub mod morphism;
pub mod obstruction;
pub mod random;
pub mod report;
pub mod ring;
pub mod scalability;
pub mod verify;
pub mod whitehead;

pub use algebra::{Cdga, FreeCdga};
pub use element::Element;
pub use error::{Error, Result};
pub use linalg::Q;
pub use monomial::{Generator, Monomial};
pub use morphism::DgaMorphism;
pub use ring::RingPresentation;
