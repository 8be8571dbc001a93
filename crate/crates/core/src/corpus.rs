//! Bundled example pairs, compiled into the binary.

use crate::error::Result;
use crate::io;
use crate::matched_pair::MatchedPair;

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub json: &'static str,
}

impl CorpusEntry {
    pub fn pair(&self) -> Result<MatchedPair> {
        io::parse_pair(self.json)
    }
}

const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "trivial-z2z2",
        json: include_str!("../corpus/trivial-z2z2.json"),
    },
    CorpusEntry {
        name: "trivial-z2z3",
        json: include_str!("../corpus/trivial-z2z3.json"),
    },
    CorpusEntry {
        name: "s3-z3z2",
        json: include_str!("../corpus/s3-z3z2.json"),
    },
    CorpusEntry {
        name: "s3-z2z3",
        json: include_str!("../corpus/s3-z2z3.json"),
    },
    CorpusEntry {
        name: "s4-d4z3",
        json: include_str!("../corpus/s4-d4z3.json"),
    },
];

pub fn corpus() -> &'static [CorpusEntry] {
    ENTRIES
}

pub fn find(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}
