//! Rooted trees, their admissible cuts, and the Hopf algebra they generate.
//!
//! Trees are written as balanced brackets: `[]` is a single vertex and
//! `[[][]]` a root with two leaf children. The canonical encoding sorts the
//! children of every vertex by their own encodings, so isomorphic trees have
//! identical encodings.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{HopfError, Result};
use crate::hopf::{HopfSchema, ReducedTerm, SchemaData, SchemaKind};
use crate::ring::int;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    encoding: String,
    vertices: u32,
}

impl RootedTree {
    pub fn single() -> Self {
        RootedTree {
            encoding: "[]".into(),
            vertices: 1,
        }
    }

    /// A root whose children are the given trees.
    pub fn graft(children: impl IntoIterator<Item = RootedTree>) -> Self {
        let mut kids: Vec<RootedTree> = children.into_iter().collect();
        kids.sort_by(|a, b| a.encoding.cmp(&b.encoding));
        let mut encoding = String::from("[");
        let mut vertices = 1;
        for k in &kids {
            encoding.push_str(&k.encoding);
            vertices += k.vertices;
        }
        encoding.push(']');
        RootedTree { encoding, vertices }
    }

    /// The path with `n` vertices.
    pub fn path(n: u32) -> Self {
        assert!(n >= 1);
        (1..n).fold(Self::single(), |t, _| Self::graft([t]))
    }

    /// Parses a bracket string, canonicalizing it.
    pub fn parse(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        let (tree, used) = parse_at(bytes, 0).ok_or_else(|| bad_tree(s))?;
        if used != bytes.len() {
            return Err(bad_tree(s));
        }
        Ok(tree)
    }

    pub fn encoding(&self) -> &str {
        &self.encoding
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertices
    }

    /// The subtrees hanging off the root, in canonical order.
    pub fn children(&self) -> Vec<RootedTree> {
        let b = self.encoding.as_bytes();
        let mut out = Vec::new();
        let mut i = 1;
        while b[i] == b'[' {
            let (t, next) = parse_at(b, i).expect("canonical encoding");
            out.push(t);
            i = next;
        }
        out
    }

    /// Parent of each vertex in preorder (`None` for the root).
    fn parents(&self) -> Vec<Option<usize>> {
        let mut parents = Vec::with_capacity(self.vertices as usize);
        let mut stack: Vec<usize> = Vec::new();
        for c in self.encoding.bytes() {
            if c == b'[' {
                parents.push(stack.last().copied());
                stack.push(parents.len() - 1);
            } else {
                stack.pop();
            }
        }
        parents
    }

    /// All nonempty admissible cuts, in a deterministic order.
    pub fn admissible_cuts(&self) -> Vec<AdmissibleCut> {
        let parents = self.parents();
        let children = children_lists(&parents);
        let mut cuts = Vec::new();
        let mut current = Vec::new();
        collect_antichains(&children, &children[0], 0, &mut current, &mut cuts);
        cuts.into_iter()
            .filter(|c| !c.is_empty())
            .map(|cut| {
                let removed: BTreeSet<usize> = cut.iter().copied().collect();
                let trunk = build(&children, 0, &removed);
                let mut pruned: Vec<RootedTree> = cut.iter().map(|&v| build(&children, v, &BTreeSet::new())).collect();
                pruned.sort();
                AdmissibleCut {
                    cut_vertices: cut,
                    trunk,
                    pruned,
                }
            })
            .collect()
    }
}

fn bad_tree(s: &str) -> HopfError {
    HopfError::Parse(format!("`{s}` is not a balanced bracket tree"))
}

fn parse_at(b: &[u8], start: usize) -> Option<(RootedTree, usize)> {
    if b.get(start) != Some(&b'[') {
        return None;
    }
    let mut i = start + 1;
    let mut kids = Vec::new();
    loop {
        match b.get(i)? {
            b'[' => {
                let (t, next) = parse_at(b, i)?;
                kids.push(t);
                i = next;
            }
            b']' => return Some((RootedTree::graft(kids), i + 1)),
            _ => return None,
        }
    }
}

fn children_lists(parents: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut ch = vec![Vec::new(); parents.len()];
    for (v, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            ch[*p].push(v);
        }
    }
    ch
}

/// Enumerates sets of non-root vertices no two of which lie on one
/// root-to-leaf path. Cutting the edge above each chosen vertex gives the cut.
fn collect_antichains(
    children: &[Vec<usize>],
    frontier: &[usize],
    idx: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if idx == frontier.len() {
        out.push(current.clone());
        return;
    }
    let v = frontier[idx];
    // cut above v: nothing below v may be cut
    current.push(v);
    collect_antichains(children, frontier, idx + 1, current, out);
    current.pop();
    // keep v: its children join the frontier
    let mut extended: Vec<usize> = frontier[idx + 1..].to_vec();
    extended.extend(children[v].iter().copied());
    let mut inner = Vec::new();
    collect_antichains(children, &extended, 0, current, &mut inner);
    out.extend(inner);
}

fn build(children: &[Vec<usize>], v: usize, removed: &BTreeSet<usize>) -> RootedTree {
    RootedTree::graft(
        children[v]
            .iter()
            .filter(|c| !removed.contains(c))
            .map(|&c| build(children, c, removed)),
    )
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding)
    }
}

/// One admissible cut: the vertices whose parent edge is cut, the component
/// containing the root, and the remaining (pruned) components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleCut {
    /// Preorder indices of the lower endpoints of the cut edges.
    pub cut_vertices: Vec<usize>,
    pub trunk: RootedTree,
    pub pruned: Vec<RootedTree>,
}

/// All rooted trees with `n` vertices up to isomorphism, sorted by encoding.
pub fn enumerate_trees(n: u32) -> Result<Vec<RootedTree>> {
    if n == 0 {
        return Err(HopfError::Domain("trees need at least one vertex".into()));
    }
    let mut level: BTreeSet<RootedTree> = [RootedTree::single()].into();
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for t in &level {
            let parents = t.parents();
            for v in 0..parents.len() {
                let mut p = parents.clone();
                p.push(Some(v));
                next.insert(build(&children_lists(&p), 0, &BTreeSet::new()));
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// The rooted-tree Hopf algebra on all trees with at most `max_vertices`
/// vertices, graded by vertex count. Reduced coproduct: the sum over
/// admissible cuts of (product of pruned trees) ⊗ trunk.
pub fn rooted_tree_schema(max_vertices: u32) -> Result<HopfSchema> {
    if max_vertices == 0 {
        return Err(HopfError::Domain("trees:N needs N >= 1".into()));
    }
    let mut data = SchemaData::default();
    for n in 1..=max_vertices {
        for t in enumerate_trees(n)? {
            data.generators.push((t.encoding().to_string(), n));
            let cuts = t.admissible_cuts();
            if cuts.is_empty() {
                continue;
            }
            let terms = cuts
                .into_iter()
                .map(|c| {
                    let mut left: Vec<(String, u32)> = Vec::new();
                    for p in c.pruned {
                        match left.last_mut() {
                            Some((name, e)) if name == p.encoding() => *e += 1,
                            _ => left.push((p.encoding().to_string(), 1)),
                        }
                    }
                    ReducedTerm {
                        left,
                        right: vec![(c.trunk.encoding().to_string(), 1)],
                        coeff: int(1),
                    }
                })
                .collect();
            data.reduced.push((t.encoding().to_string(), terms));
        }
    }
    HopfSchema::from_data(SchemaKind::RootedTrees { max_vertices }, &data, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    #[test]
    fn canonical_parse() {
        assert_eq!(RootedTree::parse("[[[]][]]").unwrap().encoding(), "[[[]][]]");
        assert_eq!(RootedTree::parse("[[][[]]]").unwrap().encoding(), "[[[]][]]");
        assert_eq!(RootedTree::parse(" [] ").unwrap().vertex_count(), 1);
        assert!(RootedTree::parse("[[]").is_err());
        assert!(RootedTree::parse("[]]").is_err());
        assert!(RootedTree::parse("[x]").is_err());
    }

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20]);
        assert!(enumerate_trees(0).is_err());
    }

    #[test]
    fn enumerated_trees_are_canonical() {
        for t in enumerate_trees(6).unwrap() {
            assert_eq!(RootedTree::parse(t.encoding()).unwrap(), t);
        }
    }

    #[test]
    fn path_cuts() {
        for n in 1..=6 {
            assert_eq!(RootedTree::path(n).admissible_cuts().len() as u32, n - 1);
        }
    }

    #[test]
    fn cherry_cuts() {
        let cherry = RootedTree::parse("[[][]]").unwrap();
        let cuts = cherry.admissible_cuts();
        assert_eq!(cuts.len(), 3);
        for c in &cuts {
            let pruned: u32 = c.pruned.iter().map(|p| p.vertex_count()).sum();
            assert_eq!(c.trunk.vertex_count() + pruned, 3);
        }
    }

    #[test]
    fn schema_coproducts() {
        let s = rooted_tree_schema(4).unwrap();
        assert_eq!(s.generators_up_to(4).unwrap().len(), 8);
        let cherry = s.resolve("[[][]]").unwrap();
        let red = s.generator_reduced_coproduct(&cherry).unwrap();
        let dot = Monomial::generator(s.resolve("[]").unwrap());
        let l2 = Monomial::generator(s.resolve("[[]]").unwrap());
        assert_eq!(red.coeff(&[dot.clone(), l2]), int(2));
        assert_eq!(red.coeff(&[dot.mul(&dot), dot.clone()]), int(1));
        assert_eq!(red.len(), 2);
    }

    #[test]
    fn cutoff_is_an_error() {
        let s = rooted_tree_schema(3).unwrap();
        assert!(matches!(s.resolve("[[[[]]]]"), Err(HopfError::CutoffExceeded { .. })));
        assert!(matches!(
            s.generators_of_degree(4),
            Err(HopfError::CutoffExceeded { .. })
        ));
    }

    #[test]
    fn antipode_of_two_vertex_tree() {
        let s = rooted_tree_schema(3).unwrap();
        let l2 = Monomial::generator(s.resolve("[[]]").unwrap());
        assert_eq!(s.antipode_monomial(&l2).unwrap().to_string(), "-[[]] + []^2");
    }
}
