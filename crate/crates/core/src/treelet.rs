//! Rooted unlabeled tree shapes ("treelets") up to a given order.
//!
//! A shape is identified by its canonical code: `(` followed by the sorted
//! codes of the root's child subtrees, followed by `)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use hashbrown::HashMap;

use crate::error::{arg, Result};

/// Largest supported order; codes of order 16 fit in 32 bits.
pub const MAX_ORDER: usize = 16;

/// How a treelet of order >= 2 splits into the subtree `t1` keeping the root
/// and the subtree `t2` hanging from one root child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub t1: usize,
    pub t2: usize,
    /// Number of root children whose subtree has the shape of `t2`.
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Treelet {
    pub order: usize,
    pub code: String,
    /// Catalog ids of the root-child subtrees, in code order.
    pub children: Vec<usize>,
    pub decomposition: Option<Decomposition>,
}

/// All rooted treelets of order `1..=k`, grouped by order and sorted by code
/// within each order.
#[derive(Debug, Clone)]
pub struct TreeletCatalog {
    k: usize,
    treelets: Vec<Treelet>,
    by_order: Vec<Range<usize>>,
    index: HashMap<String, usize>,
}

/// Joins child codes under a new root. `children` must already be sorted.
fn wrap(children: &[&str]) -> String {
    let mut s = String::with_capacity(2 + children.iter().map(|c| c.len()).sum::<usize>());
    s.push('(');
    for c in children {
        s.push_str(c);
    }
    s.push(')');
    s
}

/// Splits a code into the codes of the root's child subtrees.
pub fn child_codes(code: &str) -> Vec<&str> {
    let inner = &code[1..code.len() - 1];
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, b) in inner.bytes().enumerate() {
        if b == b'(' {
            depth += 1;
        } else {
            depth -= 1;
            if depth == 0 {
                out.push(&inner[start..=i]);
                start = i + 1;
            }
        }
    }
    out
}

/// Canonical code of the tree with the given undirected edges, rooted at
/// `root`. Vertices are `0..n`.
pub fn code_of_tree(n: usize, edges: &[(usize, usize)], root: usize) -> String {
    let mut adj = alloc::vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn rec(v: usize, parent: usize, adj: &[Vec<usize>]) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&u| u != parent).map(|&u| rec(u, v, adj)).collect();
        kids.sort();
        let refs: Vec<&str> = kids.iter().map(String::as_str).collect();
        wrap(&refs)
    }
    rec(root, usize::MAX, &adj)
}

impl TreeletCatalog {
    /// Enumerates every rooted treelet on at most `k` vertices.
    ///
    /// Each shape of order `h >= 2` is produced exactly once, from its
    /// canonical decomposition: a root shape `t1` whose children all have
    /// codes no smaller than `t2`, plus `t2` attached as a new child.
    pub fn new(k: usize) -> Result<Self> {
        if !(1..=MAX_ORDER).contains(&k) {
            return arg(alloc::format!("treelet order must be in 1..={MAX_ORDER}"));
        }
        let mut codes_by_order: Vec<Vec<String>> = alloc::vec![Vec::new(); k + 1];
        codes_by_order[1].push(String::from("()"));
        for h in 2..=k {
            let mut fresh = Vec::new();
            for b in 1..h {
                let a = h - b;
                for c2 in &codes_by_order[b] {
                    for c1 in &codes_by_order[a] {
                        let kids = child_codes(c1);
                        if kids.first().is_some_and(|first| *first < c2.as_str()) {
                            continue;
                        }
                        let mut all = kids;
                        all.push(c2.as_str());
                        all.sort_unstable();
                        fresh.push(wrap(&all));
                    }
                }
            }
            fresh.sort_unstable();
            debug_assert!(fresh.windows(2).all(|w| w[0] != w[1]));
            codes_by_order[h] = fresh;
        }

        let mut treelets = Vec::new();
        let mut by_order = alloc::vec![0..0];
        let mut index = HashMap::new();
        for codes in codes_by_order.iter().skip(1) {
            let start = treelets.len();
            for code in codes {
                index.insert(code.clone(), treelets.len());
                treelets.push(Treelet {
                    order: code.len() / 2,
                    code: code.clone(),
                    children: Vec::new(),
                    decomposition: None,
                });
            }
            by_order.push(start..treelets.len());
        }
        for t in &mut treelets {
            let kids = child_codes(&t.code);
            t.children = kids.iter().map(|c| index[*c]).collect();
            if let Some(&smallest) = kids.first() {
                let d = kids.iter().filter(|c| **c == smallest).count() as u32;
                let rest: Vec<&str> = kids[1..].to_vec();
                let t1 = index[&wrap(&rest)];
                t.decomposition = Some(Decomposition { t1, t2: index[smallest], d });
            }
        }
        Ok(TreeletCatalog { k, treelets, by_order, index })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.treelets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.treelets.is_empty()
    }

    pub fn get(&self, id: usize) -> &Treelet {
        &self.treelets[id]
    }

    pub fn treelets(&self) -> &[Treelet] {
        &self.treelets
    }

    /// Catalog ids of the treelets of order `h`.
    pub fn of_order(&self, h: usize) -> Range<usize> {
        self.by_order.get(h).cloned().unwrap_or(0..0)
    }

    pub fn find(&self, code: &str) -> Option<usize> {
        self.index.get(code).copied()
    }

    /// Reattaches `t2` under the root of `t1` and returns the resulting id.
    pub fn merge(&self, t1: usize, t2: usize) -> Option<usize> {
        let mut kids = child_codes(&self.treelets[t1].code);
        kids.push(&self.treelets[t2].code);
        kids.sort_unstable();
        self.find(&wrap(&kids))
    }

    /// One canonical code per line, in catalog order.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for t in &self.treelets {
            s.push_str(&t.code);
            s.push('\n');
        }
        s
    }
}

/// Code of the star with `h - 1` leaves rooted at its center.
pub fn star_code(h: usize) -> String {
    let leaves: Vec<&str> = (1..h).map(|_| "()").collect();
    wrap(&leaves)
}

/// Code of the path on `h` vertices rooted at an end.
pub fn path_code(h: usize) -> String {
    let mut s = String::new();
    for _ in 0..h {
        s.push('(');
    }
    for _ in 0..h {
        s.push(')');
    }
    s
}

/// Canonical decomposition of treelet `id`, or `None` for the single vertex.
pub fn canonical_decomposition(catalog: &TreeletCatalog, id: usize) -> Option<(usize, usize, u32)> {
    catalog.get(id).decomposition.map(|d| (d.t1, d.t2, d.d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_catalogs() {
        let c = TreeletCatalog::new(2).unwrap();
        assert_eq!((c.of_order(1).len(), c.of_order(2).len()), (1, 1));
        let c = TreeletCatalog::new(5).unwrap();
        let counts: Vec<usize> = (1..=5).map(|h| c.of_order(h).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9]);
        assert!(TreeletCatalog::new(0).is_err());
        assert!(TreeletCatalog::new(17).is_err());
    }

    #[test]
    fn decompositions() {
        let c = TreeletCatalog::new(3).unwrap();
        let edge = c.find("(())").unwrap();
        let dot = c.find("()").unwrap();
        assert_eq!(canonical_decomposition(&c, edge), Some((dot, dot, 1)));
        assert_eq!(canonical_decomposition(&c, dot), None);
        let star = c.find(&star_code(3)).unwrap();
        assert_eq!(canonical_decomposition(&c, star), Some((edge, dot, 2)));
        let path = c.find(&path_code(3)).unwrap();
        assert_eq!(canonical_decomposition(&c, path), Some((dot, edge, 1)));
    }

    #[test]
    fn merge_recovers_every_treelet() {
        let c = TreeletCatalog::new(7).unwrap();
        for (id, t) in c.treelets().iter().enumerate() {
            if let Some(d) = t.decomposition {
                assert_eq!(c.merge(d.t1, d.t2), Some(id));
                assert_eq!(c.get(d.t1).order + c.get(d.t2).order, t.order);
                assert!(d.d >= 1);
            }
        }
    }

    #[test]
    fn code_of_tree_ignores_child_order() {
        let a = code_of_tree(4, &[(0, 1), (0, 2), (2, 3)], 0);
        let b = code_of_tree(4, &[(0, 3), (3, 1), (0, 2)], 0);
        assert_eq!(a, b);
        assert_eq!(a, "((())())");
    }
}
