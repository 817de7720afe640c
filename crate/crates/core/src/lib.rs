//! Unimodular-row graphs over commutative rings, E2 words, path words with
//! their homotopy moves, and the simplicial homology of the resulting complexes.

pub mod error;
pub mod euclid;
pub mod farey;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod par;
pub mod path;
pub mod projline;
pub mod ring;
pub mod snf;
pub mod words;

pub use error::{Error, Result};
pub use matrix::Mat2;
pub use projline::{Vertex, ProjPoint};
pub use ring::{Elem, HeightBound, Ring, RingDesc};
