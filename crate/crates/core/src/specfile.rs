//! Line-oriented network files.
//!
//! ```text
//! # comments run to end of line
//! functions = XNOR:1, NOR:2
//! wiring    = [2, 1, 0, 4, 3]
//! input     = (+,1)(1-,0)
//! seed      = 7
//! steps     = 60
//! cvar 0    = AND(1, 2)      # classical variable x1 = AND(x2, x3), 0-based
//! ```
//!
//! Whitespace is insignificant. A file holds a quantum network
//! (`functions`, `wiring`, `input` together), a classical network (`cvar`
//! lines), or both.

use std::fmt::Write as _;

use crate::boolean::FunctionRef;
use crate::classical::{ClassicalNet, ClassicalNode};
use crate::error::{QabnError, Result};
use crate::network::{check_wiring, InputStateExpr, NetworkSpec, QubitLayout};

#[derive(Debug, Clone, PartialEq)]
pub struct SpecFile {
    pub network: Option<NetworkSpec>,
    pub classical: Option<ClassicalNet>,
    pub seed: Option<u64>,
    pub steps: Option<u64>,
}

fn line_err(line: usize, message: impl Into<String>) -> QabnError {
    QabnError::Line { line, message: message.into() }
}

fn parse_index_list(text: &str, line: usize) -> Result<Vec<usize>> {
    text.split(',').map(|t| t.parse::<usize>().map_err(|_| line_err(line, format!("{t:?} is not an index")))).collect()
}

fn parse_cvar(key: &str, value: &str, line: usize) -> Result<(usize, ClassicalNode)> {
    let index = key[4..].parse::<usize>().map_err(|_| line_err(line, format!("bad variable index in {key:?}")))?;
    let (name, args) = value
        .strip_suffix(')')
        .and_then(|v| v.split_once('('))
        .ok_or_else(|| line_err(line, format!("expected FUNC(i,j), got {value:?}")))?;
    let function = FunctionRef::parse(name).map_err(|e| e.at_line(line))?;
    let inputs = if args.is_empty() { Vec::new() } else { parse_index_list(args, line)? };
    if inputs.len() != function.arity() {
        return Err(line_err(line, format!("{} takes {} inputs, got {}", function, function.arity(), inputs.len())));
    }
    Ok((index, ClassicalNode { function, inputs }))
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile> {
        let mut functions: Option<(usize, String)> = None;
        let mut wiring: Option<(usize, Vec<usize>)> = None;
        let mut input: Option<(usize, String)> = None;
        let mut seed = None;
        let mut steps = None;
        let mut cvars: Vec<(usize, usize, ClassicalNode)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body: String = raw.split('#').next().unwrap_or("").chars().filter(|c| !c.is_whitespace()).collect();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| line_err(line, format!("expected `key = value`, got {:?}", raw.trim())))?;
            let key = key.to_ascii_lowercase();
            fn set<T>(slot: &mut Option<T>, v: T, key: &str, line: usize) -> Result<()> {
                if slot.is_some() {
                    return Err(line_err(line, format!("duplicate `{key}`")));
                }
                *slot = Some(v);
                Ok(())
            }
            match key.as_str() {
                "functions" => set(&mut functions, (line, value.to_string()), &key, line)?,
                "wiring" => {
                    let inner = value
                        .strip_prefix('[')
                        .and_then(|v| v.strip_suffix(']'))
                        .ok_or_else(|| line_err(line, "wiring must be a bracketed list"))?;
                    set(&mut wiring, (line, parse_index_list(inner, line)?), &key, line)?
                }
                "input" => set(&mut input, (line, value.to_string()), &key, line)?,
                "seed" => {
                    let v = value.parse::<u64>().map_err(|_| line_err(line, format!("bad seed {value:?}")))?;
                    set(&mut seed, v, &key, line)?
                }
                "steps" => {
                    let v = value.parse::<u64>().map_err(|_| line_err(line, format!("bad step count {value:?}")))?;
                    set(&mut steps, v, &key, line)?
                }
                k if k.starts_with("cvar") => {
                    let (index, node) = parse_cvar(k, value, line)?;
                    cvars.push((line, index, node));
                }
                _ => return Err(line_err(line, format!("unknown key `{key}`"))),
            }
        }

        let network = match (functions, wiring, input) {
            (None, None, None) => None,
            (Some((fl, f)), Some((wl, w)), Some((il, inp))) => {
                let funcs = f
                    .split(',')
                    .map(|s| FunctionRef::parse(s).map_err(|e| e.at_line(fl)))
                    .collect::<Result<Vec<_>>>()?;
                let expr = InputStateExpr::parse(&inp).map_err(|e| e.at_line(il))?;
                let layout = QubitLayout::for_functions(&funcs);
                check_wiring(&w, layout.qubit_count()).map_err(|e| e.at_line(wl))?;
                expr.check_layout(&layout).map_err(|e| e.at_line(il))?;
                Some(NetworkSpec::new(funcs, w, expr, seed)?)
            }
            (f, w, i) => {
                let missing: Vec<&str> = [("functions", f.is_none()), ("wiring", w.is_none()), ("input", i.is_none())]
                    .iter()
                    .filter(|(_, m)| *m)
                    .map(|(k, _)| *k)
                    .collect();
                return Err(QabnError::Parse(format!("network is missing `{}`", missing.join("`, `"))));
            }
        };

        let classical = if cvars.is_empty() {
            None
        } else {
            let n = cvars.len();
            let mut slots: Vec<Option<ClassicalNode>> = vec![None; n];
            for (line, index, node) in cvars {
                if index >= n {
                    return Err(line_err(line, format!("cvar {index} out of range for {n} variables")));
                }
                if slots[index].is_some() {
                    return Err(line_err(line, format!("duplicate cvar {index}")));
                }
                slots[index] = Some(node);
            }
            Some(ClassicalNet::new(slots.into_iter().map(|s| s.expect("every slot filled")).collect())?)
        };

        if network.is_none() && classical.is_none() {
            return Err(QabnError::Parse("file defines no network".into()));
        }
        Ok(SpecFile { network, classical, seed, steps })
    }

    /// Canonical text; `parse(write())` reproduces `self`.
    pub fn write(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.network {
            let funcs: Vec<String> = n.functions.iter().map(ToString::to_string).collect();
            let wiring: Vec<String> = n.wiring.iter().map(ToString::to_string).collect();
            writeln!(out, "functions = {}", funcs.join(", ")).unwrap();
            writeln!(out, "wiring = [{}]", wiring.join(", ")).unwrap();
            writeln!(out, "input = {}", n.input).unwrap();
        }
        if let Some(s) = self.seed {
            writeln!(out, "seed = {s}").unwrap();
        }
        if let Some(s) = self.steps {
            writeln!(out, "steps = {s}").unwrap();
        }
        if let Some(c) = &self.classical {
            for (i, node) in c.nodes().iter().enumerate() {
                let args: Vec<String> = node.inputs.iter().map(ToString::to_string).collect();
                writeln!(out, "cvar {i} = {}({})", node.function, args.join(", ")).unwrap();
            }
        }
        out
    }

    pub fn network(&self) -> Result<&NetworkSpec> {
        self.network.as_ref().ok_or_else(|| QabnError::Parse("file defines no quantum network".into()))
    }

    pub fn classical(&self) -> Result<&ClassicalNet> {
        self.classical.as_ref().ok_or_else(|| QabnError::Parse("file defines no classical network".into()))
    }
}
