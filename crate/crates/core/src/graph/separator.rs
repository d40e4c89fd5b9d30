//! Vertex separators of trees.

use super::TreeGraph;
use std::collections::HashMap;

/// Vertices whose removal leaves components of at most `⌊n / r⌋` vertices.
///
/// Vertices are visited bottom-up; a vertex is cut once the not-yet-cut part
/// of its subtree exceeds the bound, so every cut accounts for more than
/// `⌊n / r⌋` vertices and fewer than `r` cuts are made.
pub fn tree_separator(t: &TreeGraph, r: usize) -> Vec<usize> {
    let parent: Vec<Option<usize>> = (0..t.num_vertices()).map(|v| t.parent(v)).collect();
    separator_in(t.bfs_order(), &parent, r)
}

/// Same cut restricted to a connected piece listed top-down in `order`.
pub(crate) fn separator_in(order: &[usize], parent: &[Option<usize>], r: usize) -> Vec<usize> {
    let n = order.len();
    let bound = n / r.max(1);
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut pending = vec![1usize; n];
    let mut cut = Vec::new();
    for i in (0..n).rev() {
        let v = order[i];
        if pending[i] > bound {
            cut.push(v);
            pending[i] = 0;
        }
        if let Some(&pi) = parent[v].and_then(|p| pos.get(&p)) {
            pending[pi] += pending[i];
        }
    }
    cut.reverse();
    cut
}

/// Connected components of the tree minus `removed`, each listed top-down.
pub fn components_without(t: &TreeGraph, removed: &[usize]) -> Vec<Vec<usize>> {
    let n = t.num_vertices();
    let mut gone = vec![false; n];
    for &v in removed {
        gone[v] = true;
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &v in t.bfs_order() {
        if gone[v] {
            continue;
        }
        match t.parent(v) {
            Some(p) if !gone[p] => {
                let c = comp_of[p];
                comp_of[v] = c;
                comps[c].push(v);
            }
            _ => {
                comp_of[v] = comps.len();
                comps.push(vec![v]);
            }
        }
    }
    comps
}

/// A vertex whose removal leaves components of at most `n / 2` vertices.
pub fn centroid(t: &TreeGraph) -> usize {
    let n = t.num_vertices();
    let mut size = vec![1usize; n];
    for &v in t.bfs_order().iter().rev() {
        if let Some(p) = t.parent(v) {
            size[p] += size[v];
        }
    }
    let mut v = t.root();
    loop {
        match t.children(v).iter().find(|&&c| 2 * size[c] > n) {
            Some(&c) => v = c,
            None => return v,
        }
    }
}
