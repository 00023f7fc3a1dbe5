//! Named reference networks.
//!
//! Where two published configurations exist for the same experiment both are
//! shipped, suffixed `_text` and `_caption`.

use serde::Serialize;

use crate::boolean::FunctionCatalog;
use crate::error::{QabnError, Result};
use crate::network::factorial;
use crate::specfile::SpecFile;

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "or_cycle",
        summary: "single OR gate, identity wiring; alternates between two basis states",
        source: "functions = OR:2\nwiring = [0, 1, 2]\ninput = (11,0)\n",
    },
    Preset {
        name: "fig5_caption",
        summary: "XNOR:1 + NOR:2, five qubits",
        source: "functions = XNOR:1, NOR:2\nwiring = [2, 1, 0, 4, 3]\ninput = (+,1)(1-,0)\n",
    },
    Preset {
        name: "fig5_text",
        summary: "XNOR:1 + NOR:2, five qubits, alternative wiring and input",
        source: "functions = XNOR:1, NOR:2\nwiring = [0, 3, 2, 1, 4]\ninput = (+,+)(10,0)\n",
    },
    Preset {
        name: "fig6",
        summary: "XNOR:1 + NOR:2, five qubits",
        source: "functions = XNOR:1, NOR:2\nwiring = [4, 1, 0, 3, 2]\ninput = (-,+)(+0,0)\n",
    },
    Preset {
        name: "fig7",
        summary: "XNOR:1 + NOR:2 + NAND:2, eight qubits with self-wired positions 1, 5 and 7",
        source: "functions = XNOR:1, NOR:2, NAND:2\nwiring = [6, 1, 3, 2, 0, 5, 4, 7]\ninput = (0,+)(-+,0)(0-,0)\n",
    },
    Preset {
        name: "fig9_text",
        summary: "XNOR:1 + NOR:2 + NAND:2, eight qubits, long state cycle",
        source: "functions = XNOR:1, NOR:2, NAND:2\nwiring = [6, 5, 7, 4, 0, 3, 1, 2]\ninput = (-,+)(-0,0)(1+,0)\n",
    },
    Preset {
        name: "fig9_caption",
        summary: "NOR:2 + NAND:2 + XNOR:1, eight qubits, long state cycle, alternative wiring and input",
        source: "functions = NOR:2, NAND:2, XNOR:1\nwiring = [6, 3, 1, 4, 5, 7, 2, 0]\ninput = (-+,0)(-+,0)(-,1)\n",
    },
    Preset {
        name: "fig1_classical",
        summary: "classical AND/OR/OR network on three variables",
        source: "cvar 0 = AND:2(1, 2)\ncvar 1 = OR:2(0, 2)\ncvar 2 = OR:2(0, 1)\n",
    },
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.name).collect()
}

pub fn preset(name: &str) -> Result<SpecFile> {
    let p = PRESETS
        .iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| QabnError::Domain(format!("unknown preset {name:?}; known: {}", preset_names().join(", "))))?;
    SpecFile::parse(p.source)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArityCount {
    pub arity: usize,
    pub functions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingReport {
    pub catalog: Vec<ArityCount>,
    pub qubits: usize,
    /// `q!`, decimal.
    pub wirings: String,
    pub note: String,
}

/// Catalog sizes and the number of bijective wirings on `q` qubits.
pub fn counting_report(q: usize) -> CountingReport {
    let wirings = factorial(q).to_string();
    let mut note = format!("wirings are bijections of {q} qubit positions, counted as {q}! = {wirings}.");
    if q == 9 {
        note.push_str(
            " A figure of 81 is also quoted for three two-input functions on 9 qubits; \
             it does not equal the bijection count and is not used here.",
        );
    }
    CountingReport {
        catalog: (1..=2)
            .map(|k| ArityCount { arity: k, functions: FunctionCatalog.entries_of_arity(k).len() })
            .collect(),
        qubits: q,
        wirings,
        note,
    }
}
