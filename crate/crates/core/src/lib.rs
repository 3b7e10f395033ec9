pub mod cyclo;
pub mod error;
pub mod identities;
pub mod io;
pub mod linalg;
mod modp;
pub mod parse;
pub mod pbw;
pub mod pi_degree;
pub mod rep;
pub mod simple_mods;
pub mod smash;
pub mod verma;

pub use cyclo::CycloNum;
pub use error::{Error, Result};
pub use pbw::{AlgebraElement, Generator, Presentation};
pub use rep::MatrixModule;
