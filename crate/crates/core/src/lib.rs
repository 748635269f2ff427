pub mod algebra;
pub mod classify;
pub mod closure;
pub mod error;
pub mod format;
pub mod germs;
pub mod report;
pub mod substitution;
pub mod tent;
pub mod tiling;
pub mod weak_equiv;
pub mod word;

pub use error::{Error, Result};
pub use substitution::Substitution;
pub use word::{Letter, Word};
