//! Classical Boolean functions as truth tables.
//!
//! A table of arity `k` stores `2^k` output bits. Entry `i` is the function
//! value on the `k`-bit input whose big-endian encoding is `i`, so the first
//! input bit `x1` is the most significant bit of the index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QabnError, Result};

/// Largest arity accepted anywhere in the crate.
pub const MAX_ARITY: usize = 4;

/// A single-output Boolean function of `arity` inputs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruthTable {
    arity: u8,
    // bit i holds f(i)
    bits: u16,
}

impl TruthTable {
    /// Build a table from its output column (`outputs[i] = f(i)`).
    pub fn new(arity: usize, outputs: &[u8]) -> Result<TruthTable> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(QabnError::Domain(format!("arity {arity} not in 1..={MAX_ARITY}")));
        }
        let len = 1usize << arity;
        if outputs.len() != len {
            return Err(QabnError::Domain(format!("a {arity}-input table needs {len} outputs, got {}", outputs.len())));
        }
        let mut bits = 0u16;
        for (i, &o) in outputs.iter().enumerate() {
            match o {
                0 => {}
                1 => bits |= 1 << i,
                other => return Err(QabnError::Domain(format!("output {other} is not a bit"))),
            }
        }
        Ok(TruthTable { arity: arity as u8, bits })
    }

    /// Build a table from its packed column, bit `i` holding `f(i)`.
    pub fn from_bits(arity: usize, bits: u16) -> Result<TruthTable> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(QabnError::Domain(format!("arity {arity} not in 1..={MAX_ARITY}")));
        }
        if arity < 4 && bits >> (1 << arity) != 0 {
            return Err(QabnError::Domain(format!("bits {bits:#x} exceed a {arity}-input table")));
        }
        Ok(TruthTable { arity: arity as u8, bits })
    }

    /// Build a table from a `0`/`1` string such as `"0001"` (AND).
    pub fn from_bit_str(arity: usize, s: &str) -> Result<TruthTable> {
        let outputs = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(QabnError::Parse(format!("invalid truth-table digit {other:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        TruthTable::new(arity, &outputs)
    }

    /// Build a table by evaluating `f` on every input, `x[0]` being `x1`.
    pub fn from_fn(arity: usize, f: impl Fn(&[u8]) -> u8) -> Result<TruthTable> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(QabnError::Domain(format!("arity {arity} not in 1..={MAX_ARITY}")));
        }
        let outputs: Vec<u8> = (0..1usize << arity).map(|i| f(&decode(i, arity))).collect();
        TruthTable::new(arity, &outputs)
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// Number of rows, `2^arity`.
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Output for the input whose big-endian index is `index`.
    #[inline]
    pub fn output(&self, index: usize) -> u8 {
        debug_assert!(index < self.len());
        ((self.bits >> index) & 1) as u8
    }

    pub fn outputs(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.output(i)).collect()
    }

    /// Evaluate on an explicit bit sequence `x1 x2 … xk`.
    pub fn eval(&self, x: &[u8]) -> Result<u8> {
        if x.len() != self.arity() {
            return Err(QabnError::Arity { expected: self.arity(), got: x.len() });
        }
        let mut index = 0usize;
        for &bit in x {
            if bit > 1 {
                return Err(QabnError::Domain(format!("input {bit} is not a bit")));
            }
            index = (index << 1) | bit as usize;
        }
        Ok(self.output(index))
    }

    /// The output column as a string, e.g. `"0111"` for OR.
    pub fn bit_string(&self) -> String {
        (0..self.len()).map(|i| if self.output(i) == 1 { '1' } else { '0' }).collect()
    }

    /// Whether the function can be implemented reversibly on its own input
    /// bits. Only a bijection `x -> f(x)` qualifies, which for a single output
    /// bit means arity 1 and a balanced column (ID or NOT).
    pub fn needs_ancilla(&self) -> bool {
        !(self.arity == 1 && self.output(0) != self.output(1))
    }

    /// Canonical catalog name, if this table has one.
    pub fn canonical_name(&self) -> Option<&'static str> {
        CATALOG.iter().find(|e| e.arity == self.arity() && e.bits == self.bit_string()).map(|e| e.name)
    }

    /// The `TT:k=K:BITS` literal for this table.
    pub fn literal(&self) -> String {
        format!("TT:k={}:{}", self.arity, self.bit_string())
    }
}

// Arity first, then the output column read from row 0 down.
impl Ord for TruthTable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.arity.cmp(&other.arity).then_with(|| self.bit_string().cmp(&other.bit_string()))
    }
}

impl PartialOrd for TruthTable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.canonical_name() {
            Some(name) => write!(f, "{name}:{}", self.arity),
            None => f.write_str(&self.literal()),
        }
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Big-endian decoding of `index` into `arity` bits.
pub fn decode(index: usize, arity: usize) -> Vec<u8> {
    (0..arity).map(|j| ((index >> (arity - 1 - j)) & 1) as u8).collect()
}

/// All `2^(2^k)` tables of arity `k`, in lexicographic order of the output
/// column read from row 0 downwards.
pub fn enumerate_functions(k: usize) -> Result<Vec<TruthTable>> {
    if k == 0 || k > MAX_ARITY {
        return Err(QabnError::Domain(format!("k = {k} not in 1..={MAX_ARITY}")));
    }
    let rows = 1usize << k;
    let count = 1u64 << rows;
    Ok((0..count)
        .map(|code| {
            // row 0 is the most significant position of `code`
            let outputs: Vec<u8> = (0..rows).map(|i| ((code >> (rows - 1 - i)) & 1) as u8).collect();
            TruthTable::new(k, &outputs).expect("enumerated table is well formed")
        })
        .collect())
}

struct CatalogEntry {
    name: &'static str,
    arity: usize,
    bits: &'static str,
}

const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "CONST0", arity: 1, bits: "00" },
    CatalogEntry { name: "ID", arity: 1, bits: "01" },
    CatalogEntry { name: "NOT", arity: 1, bits: "10" },
    CatalogEntry { name: "CONST1", arity: 1, bits: "11" },
    CatalogEntry { name: "CONST0", arity: 2, bits: "0000" },
    CatalogEntry { name: "AND", arity: 2, bits: "0001" },
    CatalogEntry { name: "NIMPLY", arity: 2, bits: "0010" },
    CatalogEntry { name: "X1", arity: 2, bits: "0011" },
    CatalogEntry { name: "CNIMPLY", arity: 2, bits: "0100" },
    CatalogEntry { name: "X2", arity: 2, bits: "0101" },
    CatalogEntry { name: "XOR", arity: 2, bits: "0110" },
    CatalogEntry { name: "OR", arity: 2, bits: "0111" },
    CatalogEntry { name: "NOR", arity: 2, bits: "1000" },
    CatalogEntry { name: "XNOR", arity: 2, bits: "1001" },
    CatalogEntry { name: "NOTX2", arity: 2, bits: "1010" },
    CatalogEntry { name: "CIMPLY", arity: 2, bits: "1011" },
    CatalogEntry { name: "NOTX1", arity: 2, bits: "1100" },
    CatalogEntry { name: "IMPLY", arity: 2, bits: "1101" },
    CatalogEntry { name: "NAND", arity: 2, bits: "1110" },
    CatalogEntry { name: "CONST1", arity: 2, bits: "1111" },
];

// Two-input gate names used with a single logical input. The gate acts on
// (x, y) directly, so its one-input table is what gets XORed onto y.
const ALIASES: &[CatalogEntry] =
    &[CatalogEntry { name: "XOR", arity: 1, bits: "01" }, CatalogEntry { name: "XNOR", arity: 1, bits: "10" }];

/// Named functions of arity 1 and 2.
#[derive(Debug, Clone, Copy, Default)]
pub struct FunctionCatalog;

impl FunctionCatalog {
    /// Every `(name, table)` pair, arity 1 first.
    pub fn entries(&self) -> Vec<(&'static str, TruthTable)> {
        CATALOG.iter().map(|e| (e.name, TruthTable::from_bit_str(e.arity, e.bits).expect("catalog entry"))).collect()
    }

    pub fn entries_of_arity(&self, k: usize) -> Vec<(&'static str, TruthTable)> {
        self.entries().into_iter().filter(|(_, t)| t.arity() == k).collect()
    }

    /// Case-insensitive lookup. Without an arity the name must be unique
    /// across arities (CONST0/CONST1 need one).
    pub fn lookup(&self, name: &str, arity: Option<usize>) -> Result<TruthTable> {
        let upper = name.trim().to_ascii_uppercase();
        let hits: Vec<&CatalogEntry> =
            CATALOG.iter().filter(|e| e.name == upper && arity.is_none_or(|k| e.arity == k)).collect();
        let entry = match hits.as_slice() {
            [one] => *one,
            [] => match arity {
                Some(k) => ALIASES
                    .iter()
                    .find(|e| e.name == upper && e.arity == k)
                    .ok_or_else(|| QabnError::Parse(format!("unknown function {name}:{k}")))?,
                None => return Err(QabnError::Parse(format!("unknown function {name:?}"))),
            },
            _ => return Err(QabnError::Parse(format!("function {name:?} exists at several arities; write {upper}:K"))),
        };
        TruthTable::from_bit_str(entry.arity, entry.bits)
    }
}

/// A function as it appears in a network: a display label plus its table.
///
/// The label keeps aliases such as `XNOR:1` readable when a spec is written
/// back out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionRef {
    pub label: String,
    pub table: TruthTable,
}

impl FunctionRef {
    pub fn new(label: impl Into<String>, table: TruthTable) -> FunctionRef {
        FunctionRef { label: label.into(), table }
    }

    /// Label a table by its catalog name, or its literal when unnamed.
    pub fn from_table(table: TruthTable) -> FunctionRef {
        match table.canonical_name() {
            Some(name) => FunctionRef::new(name, table),
            None => FunctionRef::new(table.literal(), table),
        }
    }

    /// Parse `NAME`, `NAME:K` or `TT:k=K:BITS`.
    pub fn parse(text: &str) -> Result<FunctionRef> {
        let text = text.trim();
        if text.is_empty() {
            return Err(QabnError::Parse("empty function name".into()));
        }
        if text.len() >= 3 && text[..3].eq_ignore_ascii_case("TT:") {
            let rest = &text[3..];
            let (k_part, bits) = rest
                .split_once(':')
                .ok_or_else(|| QabnError::Parse(format!("malformed literal {text:?}, expected TT:k=K:BITS")))?;
            let k = k_part
                .trim()
                .strip_prefix("k=")
                .or_else(|| k_part.trim().strip_prefix("K="))
                .and_then(|k| k.trim().parse::<usize>().ok())
                .ok_or_else(|| QabnError::Parse(format!("malformed arity in {text:?}")))?;
            let table = TruthTable::from_bit_str(k, bits.trim())?;
            return Ok(FunctionRef { label: table.literal(), table });
        }
        let (name, arity) = match text.split_once(':') {
            Some((name, k)) => {
                let k = k.trim().parse::<usize>().map_err(|_| QabnError::Parse(format!("bad arity in {text:?}")))?;
                (name.trim(), Some(k))
            }
            None => (text, None),
        };
        let table = FunctionCatalog.lookup(name, arity)?;
        Ok(FunctionRef { label: name.to_ascii_uppercase(), table })
    }

    pub fn arity(&self) -> usize {
        self.table.arity()
    }
}

impl fmt::Display for FunctionRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.label.starts_with("TT:") {
            f.write_str(&self.label)
        } else {
            write!(f, "{}:{}", self.label, self.table.arity())
        }
    }
}
