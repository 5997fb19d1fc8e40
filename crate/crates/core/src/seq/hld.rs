//! Heavy-light decomposition of a rooted tree given as child lists.

/// Decomposition of a tree rooted at node 0. The heavy child of an internal
/// node is the child with the most leaf nodes below it; ties go to the
/// earliest child in the list, and callers keep child lists sorted by first
/// edge letter, so ties resolve to the smallest letter.
#[derive(Debug)]
pub struct Hld {
    pub heavy_child: Vec<Option<u32>>,
    /// Leaf nodes in the subtree (a childless node counts itself).
    pub leaf_count: Vec<u32>,
    /// Number of light edges on the path from the root.
    pub light_depth: Vec<u32>,
    /// Topmost node of the heavy path through the node.
    pub path_top: Vec<u32>,
    /// Leaf reached by following heavy children downward.
    pub path_leaf: Vec<u32>,
}

pub fn heavy_light(children: &[Vec<u32>]) -> Hld {
    let n = children.len();
    assert!(n >= 1, "tree must have a root");
    // preorder via explicit stack; reversed it is a valid postorder
    let mut pre = Vec::with_capacity(n);
    let mut stack = vec![0u32];
    while let Some(v) = stack.pop() {
        pre.push(v);
        stack.extend(children[v as usize].iter().copied());
    }
    assert_eq!(pre.len(), n, "child lists must form a tree rooted at 0");

    let mut leaf_count = vec![0u32; n];
    let mut heavy_child = vec![None; n];
    let mut path_leaf = vec![0u32; n];
    for &v in pre.iter().rev() {
        let v = v as usize;
        if children[v].is_empty() {
            leaf_count[v] = 1;
            path_leaf[v] = v as u32;
            continue;
        }
        let mut best: Option<u32> = None;
        for &c in &children[v] {
            leaf_count[v] += leaf_count[c as usize];
            if best.is_none_or(|b| leaf_count[c as usize] > leaf_count[b as usize]) {
                best = Some(c);
            }
        }
        heavy_child[v] = best;
        path_leaf[v] = path_leaf[best.expect("internal node has children") as usize];
    }

    let mut light_depth = vec![0u32; n];
    let mut path_top = vec![0u32; n];
    for &v in &pre {
        let v = v as usize;
        for &c in &children[v] {
            if Some(c) == heavy_child[v] {
                light_depth[c as usize] = light_depth[v];
                path_top[c as usize] = path_top[v];
            } else {
                light_depth[c as usize] = light_depth[v] + 1;
                path_top[c as usize] = c;
            }
        }
    }

    Hld {
        heavy_child,
        leaf_count,
        light_depth,
        path_top,
        path_leaf,
    }
}

/// `⌊log₂ leaves⌋ + 1`, the guaranteed cap on light edges along any
/// root-to-leaf path.
pub fn light_edge_bound(leaves: u32) -> u32 {
    assert!(leaves >= 1);
    leaves.ilog2() + 1
}
