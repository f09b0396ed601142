//! Coordinate bookkeeping for the prism `Δ¹ × Δⁿ`.
//!
//! Nondegenerate simplices of the prism are exactly the strict chains in the vertex
//! poset `[1] × [n]`; the chain is recovered from the product components and indexed so
//! that filtration and extension algorithms can talk about simplices by their vertex
//! chains.

use std::collections::BTreeMap;

use crate::generators::simplex;
use crate::sskernel::{product, CellId, Product, SimplexRef, SimplicialMap};

use super::{msg, DecompError};

pub(crate) struct Prism {
    pub n: usize,
    pub product: Product,
    /// Sorted vertex chain → nondegenerate product cell.
    pub cell_of_chain: BTreeMap<Vec<(usize, usize)>, CellId>,
    /// Nondegenerate product cell → its sorted vertex chain.
    pub chain_of: BTreeMap<CellId, Vec<(usize, usize)>>,
}

fn vertex_index(c: &CellId) -> Result<usize, DecompError> {
    c.as_str()
        .parse()
        .map_err(|_| msg(format!("`{c}` is not a standard-simplex vertex")))
}

impl Prism {
    pub fn new(n: usize) -> Result<Self, DecompError> {
        let product = product(&simplex(1), &simplex(n))?;
        let mut vertex = BTreeMap::new();
        for c in product.complex.cells(0) {
            let (rl, rr) = &product.components[c];
            let eps = vertex_index(&rl.target)?;
            let j = vertex_index(&rr.target)?;
            vertex.insert((eps, j), c.clone());
        }
        let coord: BTreeMap<CellId, (usize, usize)> =
            vertex.iter().map(|(k, v)| (v.clone(), *k)).collect();
        let tuples = product.complex.vertex_tuples();
        let mut cell_of_chain = BTreeMap::new();
        let mut chain_of = BTreeMap::new();
        for (c, tuple) in &tuples {
            let chain: Vec<(usize, usize)> = tuple.iter().map(|v| coord[v]).collect();
            cell_of_chain.insert(chain.clone(), c.clone());
            chain_of.insert(c.clone(), chain);
        }
        Ok(Prism { n, product, cell_of_chain, chain_of })
    }

    pub fn cell_of(&self, chain: &[(usize, usize)]) -> Result<&CellId, DecompError> {
        self.cell_of_chain
            .get(chain)
            .ok_or_else(|| msg(format!("no prism simplex with chain {chain:?}")))
    }

    /// The `(n+1)`-simplex `τ_k : Δ^{n+1} → Δ¹ × Δⁿ`, `m ↦ (0, m)` for `m ≤ k` and
    /// `m ↦ (1, m−1)` otherwise.
    pub fn tau(&self, k: usize) -> Result<SimplicialMap, DecompError> {
        let source = simplex(self.n + 1);
        let tuples = source.vertex_tuples();
        let mut assign = BTreeMap::new();
        for (c, _) in source.all_cells() {
            let chain: Vec<(usize, usize)> = tuples[c]
                .iter()
                .map(|v| {
                    let m = vertex_index(v)?;
                    Ok(if m <= k { (0, m) } else { (1, m - 1) })
                })
                .collect::<Result<_, DecompError>>()?;
            assign.insert(c.clone(), SimplexRef::cell(self.cell_of(&chain)?.clone()));
        }
        Ok(SimplicialMap::new(source, self.product.complex.clone(), assign)?)
    }
}
