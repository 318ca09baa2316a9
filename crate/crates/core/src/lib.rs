//! Meromorphic decoders of stabilizer codes with exact arithmetic over `Q(i)`.

pub mod decoder;
pub mod error;
pub mod exactnum;
pub mod merofn;
pub mod poly;
pub mod projective;
pub mod stabcode;
pub mod zxw;

pub use decoder::{analyze, conjecture_probe, css_decoder, mero_decoder, mero_decoder_multi, DistillReport};
pub use error::{Error, Result};
pub use exactnum::{ExtScalar, GaussianInteger, GaussianRational, PointedScalar, Rational};
pub use merofn::{BranchDivisor, MeroFn, MultiMeroFn, RhAudit};
pub use poly::{MultiPoly, UniPoly};
pub use projective::{Matrix, Mobius, PointedProjPoint, StateClass};
pub use stabcode::{PauliOp, StabCode, WeightEnumerator};
pub use zxw::{eval_pointwise, eval_symbolic, Color, SpiderExpr};
