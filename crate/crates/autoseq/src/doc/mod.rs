//! External document formats: JSON for automata, sequence specifications and
//! characters, DOT for visualization. All rationals travel as reduced
//! `"num/den"` strings and documents reject unknown fields.

mod dot;
mod json;

pub use dot::dfao_to_dot;
pub use json::{
    character_from_json, character_to_json, dfao_from_json, dfao_to_json, spec_from_json,
    spec_to_json, DocError,
};
