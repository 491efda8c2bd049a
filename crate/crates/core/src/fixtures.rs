//! The bundled example algebras.

use crate::algebra::{parse_algebra, BoundQuiver, StringAlgebra};

pub const C8: &str = include_str!("../fixtures/C8.alg");
pub const DT: &str = include_str!("../fixtures/DT.alg");
pub const L2: &str = include_str!("../fixtures/L2.alg");
pub const A2: &str = include_str!("../fixtures/A2.alg");

pub const ALL: [(&str, &str); 4] = [("C8", C8), ("DT", DT), ("L2", L2), ("A2", A2)];

pub fn bound_quiver(text: &str) -> BoundQuiver {
    parse_algebra(text).expect("bundled fixture parses").algebra
}

pub fn load(text: &str) -> StringAlgebra {
    StringAlgebra::new(bound_quiver(text)).expect("bundled fixture is a string algebra")
}

pub fn by_name(name: &str) -> Option<StringAlgebra> {
    ALL.iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, text)| load(text))
}
