//! The in-repo fixture library, compiled into the crate.

use crate::ce::CharacterData;
use crate::error::Result;
use crate::io::{parse_characters, AlgebraFile, AlgebraInput};

/// `(name, JSON text)` of every algebra fixture.
pub const ALGEBRAS: &[(&str, &str)] = &[
    ("abelian3", include_str!("../fixtures/abelian3.json")),
    ("h3", include_str!("../fixtures/h3.json")),
    ("h5", include_str!("../fixtures/h5.json")),
    ("filiform4", include_str!("../fixtures/filiform4.json")),
    ("q_plus_h3", include_str!("../fixtures/q_plus_h3.json")),
    ("exc", include_str!("../fixtures/exc.json")),
    ("split_filiform4", include_str!("../fixtures/split_filiform4.json")),
    ("r2", include_str!("../fixtures/r2.json")),
    ("sl2", include_str!("../fixtures/sl2.json")),
];

pub const EXC_CHARACTERS: &str = include_str!("../fixtures/exc_characters.json");

/// Nilpotent fixtures that carry a natural grading.
pub const GRADED_NILPOTENT: &[&str] = &["abelian3", "h3", "h5", "filiform4", "q_plus_h3"];

pub fn text(name: &str) -> Option<&'static str> {
    ALGEBRAS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Loads a fixture by name; panics on unknown names.
pub fn load(name: &str) -> Result<AlgebraInput> {
    let t = text(name).unwrap_or_else(|| panic!("no fixture named {}", name));
    AlgebraFile::from_json(t, name)?.resolve()
}

pub fn exc_characters() -> CharacterData {
    parse_characters(EXC_CHARACTERS, "exc_characters").expect("fixture parses")
}
