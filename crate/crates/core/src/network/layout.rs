use serde::{Deserialize, Serialize};

use crate::boolean::FunctionRef;

/// Global qubit indices of one function: logical inputs in order, then the ancilla.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub inputs: Vec<usize>,
    pub ancilla: usize,
}

impl Block {
    pub fn start(&self) -> usize {
        self.inputs.first().copied().unwrap_or(self.ancilla)
    }

    pub fn width(&self) -> usize {
        self.inputs.len() + 1
    }

    pub fn contains(&self, qubit: usize) -> bool {
        (self.start()..=self.ancilla).contains(&qubit)
    }
}

/// Qubits numbered top to bottom, function 1 first. Qubit 0 is the most
/// significant bit of a basis index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitLayout {
    pub blocks: Vec<Block>,
}

impl QubitLayout {
    pub fn for_functions(functions: &[FunctionRef]) -> QubitLayout {
        let mut next = 0;
        let blocks = functions
            .iter()
            .map(|f| {
                let inputs: Vec<usize> = (next..next + f.arity()).collect();
                let ancilla = next + f.arity();
                next = ancilla + 1;
                Block { inputs, ancilla }
            })
            .collect();
        QubitLayout { blocks }
    }

    pub fn qubit_count(&self) -> usize {
        self.blocks.iter().map(Block::width).sum()
    }

    /// Human-readable qubit names: `x1`, `y1`, `x2a`, `x2b`, `y2`, …
    pub fn qubit_names(&self) -> Vec<String> {
        let mut names = Vec::with_capacity(self.qubit_count());
        for (i, block) in self.blocks.iter().enumerate() {
            let n = i + 1;
            if block.inputs.len() == 1 {
                names.push(format!("x{n}"));
            } else {
                names.extend((0..block.inputs.len()).map(|j| format!("x{n}{}", (b'a' + j as u8) as char)));
            }
            names.push(format!("y{n}"));
        }
        names
    }

    /// Which block a qubit belongs to.
    pub fn block_of(&self, qubit: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(qubit))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout(funcs: &str) -> QubitLayout {
        let fs: Vec<FunctionRef> = funcs.split(',').map(|f| FunctionRef::parse(f).unwrap()).collect();
        QubitLayout::for_functions(&fs)
    }

    #[test]
    fn three_two_input_functions_use_nine_qubits() {
        assert_eq!(layout("AND,OR,OR").qubit_count(), 9);
    }

    #[test]
    fn mixed_arity_indices() {
        let l = layout("XNOR:1,NOR:2");
        assert_eq!(l.qubit_count(), 5);
        assert_eq!(l.blocks[0], Block { inputs: vec![0], ancilla: 1 });
        assert_eq!(l.blocks[1], Block { inputs: vec![2, 3], ancilla: 4 });
        assert_eq!(l.qubit_names(), ["x1", "y1", "x2a", "x2b", "y2"]);
    }

    #[test]
    fn three_function_indices() {
        let l = layout("XNOR:1,NOR:2,NAND:2");
        assert_eq!(l.qubit_count(), 8);
        assert_eq!(l.blocks[0].ancilla, 1);
        assert_eq!(l.blocks[2].inputs[0], 5);
        assert_eq!(l.blocks[2].ancilla, 7);
        assert_eq!(l.block_of(4), Some(1));
        assert_eq!(l.block_of(8), None);
    }

    #[test]
    fn every_index_appears_once() {
        let l = layout("AND,NOT:1,TT:k=3:01101001,OR");
        let mut all: Vec<usize> = l
            .blocks
            .iter()
            .flat_map(|b| {
                assert!(b.inputs.iter().all(|&x| x < b.ancilla));
                b.inputs.iter().copied().chain([b.ancilla])
            })
            .collect();
        all.sort();
        assert_eq!(all, (0..l.qubit_count()).collect::<Vec<_>>());
    }
}
