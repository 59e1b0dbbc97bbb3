//! Graph coloring complexes `Hom(G, K_n)`.
//!
//! * [`graph`]: simple graphs, independent sets, chromatic number, graph6.
//! * [`covering`]: coverings of a graph and the covering number `chi_dot`.
//! * [`hom`]: the cell complex of multihomomorphisms and its subcomplexes `Δ_I`.
//! * [`homology`] and [`snf`]: integral cellular homology via Smith normal
//!   form, with an order-complex cross-check.
//! * [`collapse`]: the explicit collapse of `Δ_I` onto a smaller Hom complex.
//! * [`nerve`]: the cover by the `Δ_I` and the connectivity verifier.

pub mod collapse;
pub mod covering;
pub mod error;
pub mod graph;
pub mod hom;
pub mod homology;
pub mod nerve;
pub mod snf;

pub use error::{Error, Result};
pub use graph::{Format, Graph, VertexSet};
pub use hom::{CellComplex, ColorSet, MultiHom, DEFAULT_CELL_CAP};
