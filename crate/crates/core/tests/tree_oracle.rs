//! Rooted trees and their coproduct against brute force: trees from all
//! parent arrays, cuts from all edge subsets.

use std::collections::BTreeSet;

use hopf_core::algebra::Tensor;
use hopf_core::instances::{enumerate_trees, rooted_tree_schema, RootedTree};
use hopf_core::parse::parse_monomial;
use hopf_core::ring::{int, Rational};

/// Canonical string of the subtree at `v`: children sorted as strings.
fn canon(children: &[Vec<usize>], v: usize, removed: &BTreeSet<usize>) -> String {
    let mut kids: Vec<String> = children[v]
        .iter()
        .filter(|c| !removed.contains(c))
        .map(|&c| canon(children, c, removed))
        .collect();
    kids.sort();
    format!("[{}]", kids.concat())
}

fn children_of(parents: &[usize]) -> Vec<Vec<usize>> {
    let mut ch = vec![Vec::new(); parents.len() + 1];
    for (i, &p) in parents.iter().enumerate() {
        ch[p].push(i + 1);
    }
    ch
}

/// Every tree on `n` vertices arises from some array with `parent(i) < i`.
fn brute_force_trees(n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut parents = vec![0usize; n - 1];
    loop {
        out.insert(canon(&children_of(&parents), 0, &BTreeSet::new()));
        let mut i = 0;
        loop {
            if i == n - 1 {
                return out;
            }
            parents[i] += 1;
            if parents[i] <= i {
                break;
            }
            parents[i] = 0;
            i += 1;
        }
    }
}

fn canon_library(t: &RootedTree) -> String {
    let mut kids: Vec<String> = t.children().iter().map(canon_library).collect();
    kids.sort();
    format!("[{}]", kids.concat())
}

/// Parent array (vertex 0 is the root, vertex i > 0 has parent `p[i-1]`)
/// read from a bracket string.
fn parse_parents(s: &str) -> Vec<usize> {
    let mut parents = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for c in s.chars() {
        match c {
            '[' => {
                if let Some(&p) = stack.last() {
                    parents.push(p);
                }
                stack.push(next);
                next += 1;
            }
            ']' => {
                stack.pop();
            }
            _ => panic!("bad tree {s}"),
        }
    }
    parents
}

#[test]
fn tree_counts_match_brute_force() {
    // rooted unlabeled trees: 1, 1, 2, 4, 9, 20, 48, 115
    let known = [1, 1, 2, 4, 9, 20, 48, 115];
    for n in 1..=8 {
        let lib = enumerate_trees(n as u32).unwrap();
        assert_eq!(lib.len(), known[n - 1], "n = {n}");
        let lib_set: BTreeSet<String> = lib.iter().map(canon_library).collect();
        assert_eq!(lib_set.len(), lib.len(), "duplicates at n = {n}");
        assert_eq!(lib_set, brute_force_trees(n), "n = {n}");
        assert!(lib.iter().all(|t| t.vertex_count() == n as u32));
    }
}

#[test]
fn reduced_coproduct_matches_edge_subsets() {
    let schema = rooted_tree_schema(6).unwrap();
    for n in 1..=6 {
        for tree in enumerate_trees(n).unwrap() {
            let parents = parse_parents(tree.encoding());
            let children = children_of(&parents);
            let ancestors = |mut v: usize| {
                let mut out = Vec::new();
                while v != 0 {
                    v = parents[v - 1];
                    out.push(v);
                }
                out
            };
            let edges = parents.len();
            let mut want = Tensor::<Rational>::zero(2);
            for mask in 1u32..(1 << edges) {
                let cut: BTreeSet<usize> = (0..edges).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                if cut.iter().any(|&v| ancestors(v).iter().any(|a| cut.contains(a))) {
                    continue;
                }
                let trunk = canon(&children, 0, &cut);
                let pruned: Vec<String> = cut.iter().map(|&v| canon(&children, v, &BTreeSet::new())).collect();
                let left = parse_monomial(&schema, &pruned.join(" ")).unwrap();
                let right = parse_monomial(&schema, &trunk).unwrap();
                want.add_term(vec![left, right], int(1));
            }
            let m = parse_monomial(&schema, tree.encoding()).unwrap();
            let got = schema.reduced_coproduct_monomial(&m).unwrap();
            assert_eq!(got, want, "tree {tree}");
            let cuts = tree.admissible_cuts().len() as i64;
            let total: Rational = got.terms().map(|(_, c)| c.clone()).sum();
            assert_eq!(total, int(cuts), "cut count of {tree}");
        }
    }
}

#[test]
fn tree_names_are_canonicalized() {
    let schema = rooted_tree_schema(5).unwrap();
    for tree in enumerate_trees(5).unwrap() {
        // reversing the children at every level names the same tree
        let reversed: String = tree
            .encoding()
            .chars()
            .rev()
            .map(|c| if c == '[' { ']' } else { '[' })
            .collect();
        assert_eq!(
            schema.resolve(&reversed).unwrap(),
            schema.resolve(tree.encoding()).unwrap()
        );
    }
}
