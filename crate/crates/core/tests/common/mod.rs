#![allow(dead_code)]

use gorcheck_core::gen::{random_gentle_algebra, random_string_algebra, GenLimits};
use gorcheck_core::{fixtures, RelationId, StringAlgebra, StringWord};

pub fn rel(alg: &StringAlgebra, labels: &str) -> RelationId {
    alg.relations()
        .map(|(id, _)| id)
        .find(|&id| alg.render_relation(id) == labels)
        .unwrap_or_else(|| panic!("no relation {labels} in {}", alg.name()))
}

pub fn rels(alg: &StringAlgebra, chain: &[RelationId]) -> Vec<String> {
    chain.iter().map(|&r| alg.render_relation(r)).collect()
}

pub fn word(alg: &StringAlgebra, text: &str) -> StringWord {
    StringWord::parse(alg, text).unwrap()
}

pub fn fixture_algebras() -> Vec<StringAlgebra> {
    fixtures::ALL.iter().map(|(_, t)| fixtures::load(t)).collect()
}

pub fn generated(seed: u64) -> StringAlgebra {
    StringAlgebra::new(random_string_algebra(&GenLimits::new(6, 10, 4, seed)).unwrap()).unwrap()
}

pub fn gentle(seed: u64) -> StringAlgebra {
    StringAlgebra::new(random_gentle_algebra(&GenLimits::new(6, 10, 4, seed)).unwrap()).unwrap()
}
