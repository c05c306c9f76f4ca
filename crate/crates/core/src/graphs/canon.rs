//! Brute-force canonical labeling for small graphs.
//!
//! Vertices are first split into cells by an isomorphism-invariant key (degree, then
//! the sorted degrees of the neighbours); only labelings that list the cells in key
//! order are tried, and the lexicographically largest adjacency code wins.

use std::collections::BTreeMap;

use super::Graph;
use crate::error::{Error, Result};

pub const CANONICAL_VERTEX_CAP: usize = 8;

type Code = u32;

fn check_cap(graph: &Graph) -> Result<()> {
    if graph.vertex_count() > CANONICAL_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count for canonical form",
            cap: CANONICAL_VERTEX_CAP as u64,
            got: graph.vertex_count() as u64,
        });
    }
    Ok(())
}

fn cells(graph: &Graph) -> Vec<Vec<usize>> {
    let deg = graph.degrees();
    let adj = graph.neighbors();
    let mut by_key: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for v in 0..graph.vertex_count() {
        let mut nd: Vec<usize> = adj[v].iter().map(|&w| deg[w]).collect();
        nd.sort_unstable();
        by_key.entry((deg[v], nd)).or_default().push(v);
    }
    by_key.into_values().collect()
}

fn pair_bit(i: usize, j: usize, n: usize) -> usize {
    // position of (i, j), i < j, in row-major upper-triangle order
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn code_for(adj: &[u8], order: &[usize]) -> Code {
    let n = order.len();
    let mut code: Code = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1 << (Code::BITS as usize - 1 - pair_bit(i, j, n));
            }
        }
    }
    code
}

fn search(
    cells: &[Vec<usize>],
    cell: usize,
    used: &mut Vec<bool>,
    order: &mut Vec<usize>,
    adj: &[u8],
    best: &mut Option<(Code, Vec<usize>)>,
) {
    if cell == cells.len() {
        let code = code_for(adj, order);
        if best.as_ref().is_none_or(|(c, _)| code > *c) {
            *best = Some((code, order.clone()));
        }
        return;
    }
    let members = &cells[cell];
    let placed = members.iter().filter(|&&v| used[v]).count();
    if placed == members.len() {
        search(cells, cell + 1, used, order, adj, best);
        return;
    }
    for &v in members {
        if used[v] {
            continue;
        }
        used[v] = true;
        order.push(v);
        search(cells, cell, used, order, adj, best);
        order.pop();
        used[v] = false;
    }
}

fn canonical_order(graph: &Graph) -> (Code, Vec<usize>) {
    let n = graph.vertex_count();
    let mut adj = vec![0u8; n];
    for &(u, v) in graph.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let cells = cells(graph);
    let mut best = None;
    search(&cells, 0, &mut vec![false; n], &mut Vec::with_capacity(n), &adj, &mut best);
    best.unwrap_or((0, Vec::new()))
}

/// Byte string equal for two graphs iff they are isomorphic. At most 8 vertices.
pub fn canonical_form(graph: &Graph) -> Result<Vec<u8>> {
    check_cap(graph)?;
    let (code, _) = canonical_order(graph);
    let mut out = vec![graph.vertex_count() as u8];
    out.extend_from_slice(&code.to_be_bytes());
    Ok(out)
}

/// The relabeled copy of `graph` whose adjacency code is canonical.
pub fn canonical_graph(graph: &Graph) -> Result<Graph> {
    check_cap(graph)?;
    let (_, order) = canonical_order(graph);
    let mut perm = vec![0; graph.vertex_count()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    graph.permuted(&perm)
}

/// One canonical representative per isomorphism class of graphs on exactly
/// `vertex_count` vertices, sorted by canonical form.
///
/// Built by extending every class on one fewer vertex with a new vertex in all possible
/// ways, which reaches every class since deleting a vertex lands in a smaller class.
pub fn enumerate_classes(vertex_count: usize) -> Result<Vec<Graph>> {
    if vertex_count > CANONICAL_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count for class enumeration",
            cap: CANONICAL_VERTEX_CAP as u64,
            got: vertex_count as u64,
        });
    }
    let mut classes = vec![Graph::empty(vertex_count.min(1))];
    if vertex_count == 0 {
        return Ok(vec![Graph::empty(0)]);
    }
    for n in 2..=vertex_count {
        let mut next: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
        for g in &classes {
            let new = n - 1;
            for mask in 0u32..(1 << new) {
                let edges = g
                    .edges()
                    .iter()
                    .copied()
                    .chain((0..new).filter(|i| mask >> i & 1 == 1).map(|i| (i, new)));
                let h = Graph::new(n, edges)?;
                let key = canonical_form(&h)?;
                if let std::collections::btree_map::Entry::Vacant(slot) = next.entry(key) {
                    slot.insert(canonical_graph(&h)?);
                }
            }
        }
        classes = next.into_values().collect();
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, theta};

    #[test]
    fn class_counts_match_known_sequence() {
        // number of graphs on n unlabeled vertices
        let expected = [1, 1, 2, 4, 11, 34, 156];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_classes(n).unwrap().len(), count, "n = {n}");
        }
    }

    #[test]
    fn same_graph_different_labels() {
        assert_eq!(
            canonical_form(&cycle(4).unwrap()).unwrap(),
            canonical_form(&theta(&[1, 1]).unwrap()).unwrap()
        );
        assert_eq!(
            canonical_form(&cycle(5).unwrap()).unwrap(),
            canonical_form(&theta(&[1, 2]).unwrap()).unwrap()
        );
        assert_ne!(
            canonical_form(&cycle(5).unwrap()).unwrap(),
            canonical_form(&crate::graphs::path(4)).unwrap()
        );
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        for g in enumerate_classes(5).unwrap() {
            assert_eq!(canonical_graph(&g).unwrap(), g);
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(canonical_form(&Graph::empty(9)).is_err());
    }
}
