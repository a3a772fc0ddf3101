pub mod algebra;
pub mod bimodule;
pub mod cocycle;
pub mod corep;
pub mod cyclotomic;
pub mod error;
pub mod linalg;
pub mod quiver;
pub mod shuffle;

pub use algebra::{classify, try_truncation, ClassificationEntry, ExportFormat, MajidAlgebra, VerificationReport};
pub use bimodule::ArrowBimodule;
pub use cocycle::{CocycleParams, Parameters};
pub use corep::{CycleModule, FusionData, IntervalModule};
pub use cyclotomic::{CycloNum, RootOfUnity};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use quiver::{Path, PathVector};
pub use shuffle::{GaussScalar, QuiverAlgebra};
