//! Forest-skein groups `L_n ⊂ G_n ⊂ M_n` of the category
//! `FS⟨a,b | τ_n(a) = ρ_n(b)⟩`.

pub mod action;
pub mod element;
pub mod error;
pub mod forest;
pub mod gamma;
pub mod generators;
pub mod perm;
pub mod point;
pub mod random;
pub mod render;
pub mod selftest;
pub mod skein;
pub mod syntax;
pub mod transducer;

pub use error::{Error, Result};
pub use forest::{Address, Colour, ColourWord, Forest, Side, Tree};
pub use element::{GroupElement, TypeTag};
pub use perm::Permutation;
pub use point::RationalPoint;
pub use skein::SkeinContext;
pub use transducer::Transducer;
