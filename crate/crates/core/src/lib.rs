//! Brown–Thompson group F₃ as ternary tree pairs, its central monoid, and the
//! links built from its elements.

pub mod address;
pub mod diagram;
pub mod element;
pub mod error;
pub mod expr;
pub mod fingerprint;
pub mod group;
pub mod invariants;
pub mod links;
pub mod monoid;
pub mod moves;
pub mod poly;
pub mod svg;
pub mod thompson_f;
pub mod tree;
pub mod treelink;
pub mod verify;

pub use address::{Address, TriadicInterval};
pub use element::Element;
pub use error::{Error, Result};
pub use tree::TernaryTree;
