use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolean::FunctionRef;
use crate::error::{QabnError, Result};

use super::layout::QubitLayout;

/// One of the four allowed single-qubit input states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Zero,
    One,
    Plus,
    Minus,
}

impl Symbol {
    pub const ALL: [Symbol; 4] = [Symbol::Zero, Symbol::One, Symbol::Plus, Symbol::Minus];

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            '+' => Some(Symbol::Plus),
            // ASCII hyphen or the Unicode minus sign
            '-' | '\u{2212}' => Some(Symbol::Minus),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Plus => '+',
            Symbol::Minus => '-',
        }
    }

    /// Amplitudes of `|0>` and `|1>`.
    pub fn amplitudes(self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Symbol::Zero => (1.0, 0.0),
            Symbol::One => (0.0, 1.0),
            Symbol::Plus => (h, h),
            Symbol::Minus => (h, -h),
        }
    }

    pub fn is_basis(self) -> bool {
        matches!(self, Symbol::Zero | Symbol::One)
    }
}

/// Logical inputs and ancilla of one function block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputGroup {
    pub x: Vec<Symbol>,
    pub y: Symbol,
}

/// A product input state written as `(XS,Y)(XS,Y)…`, one group per function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputStateExpr {
    pub groups: Vec<InputGroup>,
}

impl InputStateExpr {
    /// Parse the grammar only; arities are checked by [`InputStateExpr::check_layout`].
    pub fn parse(text: &str) -> Result<InputStateExpr> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(QabnError::Parse("empty input state".into()));
        }
        let mut groups = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let n = groups.len() + 1;
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| QabnError::Parse(format!("group {n}: expected '(' in {rest:?}")))?;
            let close = body.find(')').ok_or_else(|| QabnError::Parse(format!("group {n}: missing ')'")))?;
            let inner = &body[..close];
            rest = &body[close + 1..];
            let (xs, y) = inner
                .split_once(',')
                .ok_or_else(|| QabnError::Parse(format!("group {n}: expected (XS,Y), got ({inner})")))?;
            let parse_syms = |s: &str| -> Result<Vec<Symbol>> {
                s.chars()
                    .map(|c| {
                        Symbol::from_char(c).ok_or_else(|| QabnError::Parse(format!("group {n}: invalid symbol {c:?}")))
                    })
                    .collect()
            };
            let x = parse_syms(xs)?;
            let y = parse_syms(y)?;
            if x.is_empty() {
                return Err(QabnError::Parse(format!("group {n}: no input symbols")));
            }
            let [y] = y[..] else {
                return Err(QabnError::Parse(format!("group {n}: ancilla needs exactly one symbol")));
            };
            groups.push(InputGroup { x, y });
        }
        Ok(InputStateExpr { groups })
    }

    /// Check group count and per-group arity against a layout.
    pub fn check_layout(&self, layout: &QubitLayout) -> Result<()> {
        if self.groups.len() != layout.blocks.len() {
            return Err(QabnError::Parse(format!(
                "input has {} groups but the network has {} functions",
                self.groups.len(),
                layout.blocks.len()
            )));
        }
        for (i, (group, block)) in self.groups.iter().zip(&layout.blocks).enumerate() {
            if group.x.len() != block.inputs.len() {
                return Err(QabnError::Parse(format!(
                    "group {}: {} input symbols for a {}-input function",
                    i + 1,
                    group.x.len(),
                    block.inputs.len()
                )));
            }
        }
        Ok(())
    }

    /// Symbols in qubit order.
    pub fn symbols(&self) -> Vec<Symbol> {
        self.groups.iter().flat_map(|g| g.x.iter().copied().chain(std::iter::once(g.y))).collect()
    }

    pub fn qubit_count(&self) -> usize {
        self.groups.iter().map(|g| g.x.len() + 1).sum()
    }
}

impl fmt::Display for InputStateExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.groups {
            f.write_str("(")?;
            for s in &g.x {
                write!(f, "{}", s.as_char())?;
            }
            write!(f, ",{})", g.y.as_char())?;
        }
        Ok(())
    }
}

/// The complete definition of one quantum network experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub functions: Vec<FunctionRef>,
    /// `wiring[j]` is the output wire feeding input `j` at the next step.
    pub wiring: Vec<usize>,
    pub input: InputStateExpr,
    pub rng_seed: Option<u64>,
}

impl NetworkSpec {
    pub fn new(
        functions: Vec<FunctionRef>,
        wiring: Vec<usize>,
        input: InputStateExpr,
        rng_seed: Option<u64>,
    ) -> Result<NetworkSpec> {
        let spec = NetworkSpec { functions, wiring, input, rng_seed };
        spec.validate()?;
        Ok(spec)
    }

    /// Convenience constructor from the textual pieces of a spec file.
    pub fn parse(functions: &str, wiring: &[usize], input: &str) -> Result<NetworkSpec> {
        let functions = functions.split(',').map(FunctionRef::parse).collect::<Result<Vec<_>>>()?;
        NetworkSpec::new(functions, wiring.to_vec(), InputStateExpr::parse(input)?, None)
    }

    pub fn qubit_count(&self) -> usize {
        self.functions.iter().map(|f| f.arity() + 1).sum()
    }

    pub fn layout(&self) -> QubitLayout {
        QubitLayout::for_functions(&self.functions)
    }

    pub fn validate(&self) -> Result<()> {
        if self.functions.is_empty() {
            return Err(QabnError::Domain("a network needs at least one function".into()));
        }
        let q = self.qubit_count();
        check_wiring(&self.wiring, q)?;
        self.input.check_layout(&self.layout())
    }
}

/// `wiring` must be a permutation of `0..q`.
pub fn check_wiring(wiring: &[usize], q: usize) -> Result<()> {
    if wiring.len() != q {
        return Err(QabnError::Domain(format!("wiring has {} entries for {q} qubits", wiring.len())));
    }
    let mut seen = vec![false; q];
    for &w in wiring {
        if w >= q || std::mem::replace(&mut seen[w], true) {
            return Err(QabnError::Domain(format!("wiring {wiring:?} is not a permutation of 0..{q}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_groups() {
        let e = InputStateExpr::parse("(+,1)(1-,0)").unwrap();
        assert_eq!(e.groups.len(), 2);
        assert_eq!(e.groups[1].x, vec![Symbol::One, Symbol::Minus]);
        assert_eq!(e.qubit_count(), 5);
        assert_eq!(e.to_string(), "(+,1)(1-,0)");
        assert_eq!(InputStateExpr::parse(" ( 0 ,\u{2212} ) ").unwrap().to_string(), "(0,-)");
    }

    #[test]
    fn grammar_errors_name_the_group() {
        for bad in ["", "(0,0", "(0,0)(x,0)", "(0,00)", "(,0)", "0,0", "(0;0)"] {
            assert!(InputStateExpr::parse(bad).is_err(), "{bad:?}");
        }
        let err = InputStateExpr::parse("(0,0)(01,)").unwrap_err().to_string();
        assert!(err.contains("group 2"), "{err}");
    }

    #[test]
    fn spec_validation() {
        assert!(NetworkSpec::parse("XNOR:1, NOR:2", &[2, 1, 0, 4, 3], "(+,1)(1-,0)").is_ok());
        // arity mismatch in group 2
        let err = NetworkSpec::parse("XNOR:1, NOR:2", &[2, 1, 0, 4, 3], "(+,1)(1,0)").unwrap_err();
        assert!(err.to_string().contains("group 2"));
        // not a permutation
        assert!(NetworkSpec::parse("XNOR:1, NOR:2", &[2, 1, 0, 4, 4], "(+,1)(1-,0)").is_err());
        assert!(NetworkSpec::parse("XNOR:1, NOR:2", &[2, 1, 0, 4], "(+,1)(1-,0)").is_err());
        // group count
        assert!(NetworkSpec::parse("XNOR:1", &[0, 1], "(+,1)(1-,0)").is_err());
    }
}
