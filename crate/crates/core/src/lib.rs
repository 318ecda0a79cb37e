pub mod closed_form;
pub mod coordinates;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lamination;
pub mod oracle;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use surface::{
    DoubledSurface, EdgeKind, ShearSign, StarEntry, SurfaceDescription, SurfaceSignature,
    TriangulatedSurface, ValidationReport, VertexKind,
};
