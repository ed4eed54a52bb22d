//! Independent oracles shared by the integration tests. Nothing here relies
//! on the library's own tree canonicalization or combinatorics.

#![allow(dead_code)]

use equivar::fields::PolyVectorField;
use equivar::poly::Poly;
use equivar::trees::{RawTree, Tree};

/// All parent arrays on `n` vertices with `parent[i] < i` (vertex 0 is the
/// root). Every rooted tree on `n` vertices arises from at least one.
pub fn parent_arrays(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![usize::MAX]];
    for i in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..i).map(move |j| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn children_of(parent: &[usize], v: usize) -> Vec<usize> {
    (1..parent.len()).filter(|&i| parent[i] == v).collect()
}

/// AHU encoding: a vertex is `(` + sorted child encodings + `)`, with an
/// optional color tag.
pub fn ahu(parent: &[usize], colors: &[u32], v: usize) -> String {
    let mut kids: Vec<String> = children_of(parent, v).into_iter().map(|c| ahu(parent, colors, c)).collect();
    kids.sort();
    format!("({}{})", colors[v], kids.concat())
}

/// Number of distinct rooted trees with `n` vertices and `k` colors, by
/// brute force over parent arrays and colorings.
pub fn brute_force_count(n: usize, k: u32) -> usize {
    let mut seen = std::collections::HashSet::new();
    for p in parent_arrays(n) {
        for coloring in colorings(n, k) {
            seen.insert(ahu(&p, &coloring, 0));
        }
    }
    seen.len()
}

pub fn colorings(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|c: Vec<u32>| {
                (1..=k).map(move |x| {
                    let mut d = c.clone();
                    d.push(x);
                    d
                })
            })
            .collect();
    }
    out
}

/// Parent array of a tree, vertices in preorder.
pub fn parents_of(t: &Tree) -> (Vec<usize>, Vec<u32>) {
    fn walk(t: &Tree, parent: usize, ps: &mut Vec<usize>, cs: &mut Vec<u32>) {
        let me = ps.len();
        ps.push(parent);
        cs.push(t.color());
        for c in t.children() {
            walk(c, me, ps, cs);
        }
    }
    let mut ps = Vec::new();
    let mut cs = Vec::new();
    walk(t, usize::MAX, &mut ps, &mut cs);
    (ps, cs)
}

/// Root-fixing automorphisms, counted over all vertex permutations.
pub fn automorphism_count(parent: &[usize], colors: &[u32]) -> u64 {
    let n = parent.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    permutations(&mut perm, 1, &mut |p| {
        let ok = (1..n).all(|i| parent[p[i]] == p[parent[i]] && colors[p[i]] == colors[i]);
        if ok {
            count += 1;
        }
    });
    count
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k >= v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Tree factorial: product of subtree sizes.
pub fn gamma_oracle(parent: &[usize]) -> u64 {
    let n = parent.len();
    let mut size = vec![1u64; n];
    for i in (1..n).rev() {
        size[parent[i]] += size[i];
    }
    size.iter().product()
}

pub fn raw_from_parents(parent: &[usize], colors: &[u32], v: usize) -> RawTree {
    RawTree { color: colors[v], children: children_of(parent, v).into_iter().map(|c| raw_from_parents(parent, colors, c)).collect() }
}

/// `g′f − f′g`, written out with partial derivatives.
pub fn bracket_oracle(f: &PolyVectorField, g: &PolyVectorField) -> Vec<Poly> {
    let d = f.dim();
    (0..d)
        .map(|i| {
            let mut acc = Poly::zero();
            for k in 0..d {
                acc = acc.add(&g.components()[i].derivative(k).mul(&f.components()[k]));
                acc = acc.sub(&f.components()[i].derivative(k).mul(&g.components()[k]));
            }
            acc
        })
        .collect()
}
