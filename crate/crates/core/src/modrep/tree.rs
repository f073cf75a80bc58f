//! Brauer trees of cyclic-defect blocks, reconstructed from the Cartan matrix:
//! projective indecomposables are edges, and two edges share a vertex exactly
//! when the corresponding Cartan entry is nonzero.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use serde::Serialize;

use super::pims::CartanMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("the block does not have a cyclic defect group")]
    NotCyclicDefect,
    #[error("tree reconstruction failed ({reason}); Cartan matrix {cartan:?}")]
    TreeReconstructionAmbiguous { reason: String, cartan: Vec<Vec<i64>> },
    #[error("vertex labelling failed: {0}")]
    Labels(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerTree {
    pub vertices: usize,
    /// `(v, w, pim)`: the edge of PIM `pim` joins `v` and `w`.
    pub edges: Vec<(usize, usize, usize)>,
    pub exceptional_vertex: Option<usize>,
    pub multiplicity: u32,
    /// Number of ordinary characters at each vertex (`m` at the exceptional one).
    pub vertex_multiplicity: Vec<u32>,
    pub labels: Option<Vec<Vec<String>>>,
}

fn ambiguous(c: &CartanMatrix, reason: impl Into<String>) -> TreeError {
    TreeError::TreeReconstructionAmbiguous { reason: reason.into(), cartan: c.0.clone() }
}

impl BrauerTree {
    /// Inverts the line graph of the tree. Maximal cliques of the graph with an
    /// edge `i — j` whenever `C_ij ≠ 0` are the internal vertices; leaves are added
    /// until every PIM has two endpoints. Multiplicities come from `C_ij = m_v` for
    /// edges meeting at `v` and `C_ii = m_v + m_w`.
    pub fn from_cartan(c: &CartanMatrix) -> Result<BrauerTree, TreeError> {
        let n = c.size();
        if n == 0 {
            return Err(ambiguous(c, "empty Cartan matrix"));
        }
        if !c.is_symmetric() {
            return Err(ambiguous(c, "Cartan matrix is not symmetric"));
        }
        if n == 1 && c.0[0][0] == 1 {
            return Ok(BrauerTree {
                vertices: 2,
                edges: vec![(0, 1, 0)],
                exceptional_vertex: None,
                multiplicity: 1,
                vertex_multiplicity: vec![1, 0],
                labels: None,
            });
        }
        let adj = |i: usize, j: usize| i != j && c.0[i][j] != 0;
        let mut cliques: Vec<BTreeSet<usize>> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !adj(i, j) {
                    continue;
                }
                let mut k: BTreeSet<usize> = (0..n).filter(|&t| adj(i, t) && adj(j, t)).collect();
                k.insert(i);
                k.insert(j);
                for &a in &k {
                    for &b in &k {
                        if a != b && !adj(a, b) {
                            return Err(ambiguous(c, "adjacency is not a line graph of a tree"));
                        }
                    }
                }
                if !cliques.contains(&k) {
                    cliques.push(k);
                }
            }
        }
        for (x, a) in cliques.iter().enumerate() {
            for b in &cliques[x + 1..] {
                if a.intersection(b).count() > 1 {
                    return Err(ambiguous(c, "two vertices share more than one edge"));
                }
            }
        }
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut mult: Vec<i64> = Vec::new();
        for (v, k) in cliques.iter().enumerate() {
            let mut vals = BTreeSet::new();
            for &a in k {
                for &b in k {
                    if a != b {
                        vals.insert(c.0[a][b]);
                    }
                }
                ends[a].push(v);
            }
            if vals.len() != 1 {
                return Err(ambiguous(c, "edges around a vertex disagree on its multiplicity"));
            }
            mult.push(*vals.iter().next().expect("nonempty"));
        }
        let mut vertices = cliques.len();
        for i in 0..n {
            match ends[i].len() {
                0 => {
                    if n > 1 {
                        return Err(ambiguous(c, "Cartan matrix is decomposable"));
                    }
                    // a single edge: the larger share goes to the exceptional end
                    let total = c.0[i][i];
                    if total < 2 {
                        return Err(ambiguous(c, "diagonal entry too small"));
                    }
                    mult.push(total - 1);
                    mult.push(1);
                    ends[i] = vec![vertices, vertices + 1];
                    vertices += 2;
                }
                1 => {
                    let m = c.0[i][i] - mult[ends[i][0]];
                    if m < 1 {
                        return Err(ambiguous(c, "leaf multiplicity below one"));
                    }
                    mult.push(m);
                    ends[i].push(vertices);
                    vertices += 1;
                }
                2 => {
                    if c.0[i][i] != mult[ends[i][0]] + mult[ends[i][1]] {
                        return Err(ambiguous(c, "diagonal entry does not match its two vertices"));
                    }
                }
                _ => return Err(ambiguous(c, "an edge lies in three vertex cliques")),
            }
        }
        if vertices != n + 1 {
            return Err(ambiguous(c, "graph is not a tree"));
        }
        let exceptional: Vec<usize> = (0..vertices).filter(|&v| mult[v] > 1).collect();
        if exceptional.len() > 1 {
            return Err(ambiguous(c, "more than one vertex has multiplicity above one"));
        }
        let tree = BrauerTree {
            vertices,
            edges: ends.iter().enumerate().map(|(i, e)| (e[0], e[1], i)).collect(),
            exceptional_vertex: exceptional.first().copied(),
            multiplicity: exceptional.first().map_or(1, |&v| mult[v] as u32),
            vertex_multiplicity: mult.iter().map(|&m| m as u32).collect(),
            labels: None,
        };
        if !tree.is_connected() {
            return Err(ambiguous(c, "graph is not connected"));
        }
        if tree.to_cartan() != *c {
            return Err(ambiguous(c, "round trip does not reproduce the Cartan matrix"));
        }
        Ok(tree)
    }

    /// `C_ii = m_v + m_w` over the ends of edge `i`; `C_ij = m_v` for a shared vertex.
    pub fn to_cartan(&self) -> CartanMatrix {
        let n = self.edges.len();
        let mut c = vec![vec![0i64; n]; n];
        for &(v, w, i) in &self.edges {
            c[i][i] = (self.vertex_multiplicity[v] + self.vertex_multiplicity[w]) as i64;
            for &(x, y, j) in &self.edges {
                if i == j {
                    continue;
                }
                for s in [v, w] {
                    if s == x || s == y {
                        c[i][j] = self.vertex_multiplicity[s] as i64;
                    }
                }
            }
        }
        CartanMatrix(c)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b, _)| a == v || b == v).count()
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b, _)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_path(&self) -> bool {
        (0..self.vertices).all(|v| self.degree(v) <= 2)
    }

    /// A star: one vertex meets every edge.
    pub fn star_center(&self) -> Option<usize> {
        (0..self.vertices).find(|&v| self.degree(v) == self.edges.len())
    }

    /// Canonical string of the tree rooted at `v`, with the exceptional vertex marked.
    fn rooted_form(&self, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> =
            self.neighbours(v).into_iter().filter(|&w| Some(w) != parent).map(|w| self.rooted_form(w, Some(v))).collect();
        kids.sort();
        let mark = if self.exceptional_vertex == Some(v) { format!("*{}", self.multiplicity) } else { String::new() };
        format!("({mark}{})", kids.concat())
    }

    /// A string equal for two trees iff they are isomorphic as trees with a marked
    /// exceptional vertex of the same multiplicity.
    pub fn canonical_form(&self) -> String {
        (0..self.vertices).map(|v| self.rooted_form(v, None)).min().unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &BrauerTree) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Labels vertices by ordinary characters. `constituents[i]` lists the table rows
    /// in the lattice of PIM `i`; `orbit[row]` is the number of characters a row stands
    /// for. An internal vertex carries the rows common to all its edges; a leaf carries
    /// what its edge leaves over; the row counts must match the vertex multiplicities.
    pub fn label(&mut self, constituents: &[Vec<String>], orbit: impl Fn(&str) -> u32) -> Result<(), TreeError> {
        if constituents.len() != self.edges.len() {
            return Err(TreeError::Labels(format!("{} constituent lists for {} edges", constituents.len(), self.edges.len())));
        }
        let sets: Vec<BTreeSet<String>> = constituents.iter().map(|c| c.iter().cloned().collect()).collect();
        let mut labels: Vec<Option<BTreeSet<String>>> = vec![None; self.vertices];
        for v in 0..self.vertices {
            let incident: Vec<usize> = self.edges.iter().filter(|&&(a, b, _)| a == v || b == v).map(|e| e.2).collect();
            if incident.len() >= 2 {
                let mut common = sets[incident[0]].clone();
                for &i in &incident[1..] {
                    common = common.intersection(&sets[i]).cloned().collect();
                }
                labels[v] = Some(common);
            }
        }
        for &(v, w, i) in &self.edges.clone() {
            match (labels[v].clone(), labels[w].clone()) {
                (Some(a), None) => labels[w] = Some(sets[i].difference(&a).cloned().collect()),
                (None, Some(b)) => labels[v] = Some(sets[i].difference(&b).cloned().collect()),
                (None, None) => {
                    let (mv, mw) = (self.vertex_multiplicity[v], self.vertex_multiplicity[w]);
                    let rows: Vec<String> = sets[i].iter().cloned().collect();
                    let pick = |m: u32| rows.iter().filter(|r| orbit(r) == m).cloned().collect::<BTreeSet<String>>();
                    let a = pick(mv);
                    let b: BTreeSet<String> = sets[i].difference(&a).cloned().collect();
                    if mv == mw && rows.len() == 2 {
                        labels[v] = Some(core::iter::once(rows[0].clone()).collect());
                        labels[w] = Some(core::iter::once(rows[1].clone()).collect());
                    } else {
                        labels[v] = Some(a);
                        labels[w] = Some(b);
                    }
                }
                _ => {}
            }
        }
        let mut out = Vec::with_capacity(self.vertices);
        for (v, l) in labels.into_iter().enumerate() {
            let l = l.unwrap_or_default();
            let count: u32 = l.iter().map(|r| orbit(r)).sum();
            if count != self.vertex_multiplicity[v] {
                return Err(TreeError::Labels(format!(
                    "vertex {v} carries {count} characters but has multiplicity {}",
                    self.vertex_multiplicity[v]
                )));
            }
            out.push(l.into_iter().collect());
        }
        self.labels = Some(out);
        Ok(())
    }

    fn vertex_name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) if !l[v].is_empty() => l[v].join("+"),
            _ => format!("v{v}"),
        }
    }

    /// Graphviz rendering; the exceptional vertex is drawn filled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph brauer_tree {\n");
        for v in 0..self.vertices {
            let style = if self.exceptional_vertex == Some(v) {
                format!(", style=filled, xlabel=\"m={}\"", self.multiplicity)
            } else {
                String::new()
            };
            let _ = writeln!(s, "  v{v} [label=\"{}\"{style}];", self.vertex_name(v));
        }
        for &(a, b, i) in &self.edges {
            let _ = writeln!(s, "  v{a} -- v{b} [label=\"P{i}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Brauer tree of a block with defect group `d`, which must be cyclic.
pub fn brauer_tree(g: &crate::groups::PermGroup, d: &crate::groups::Subgroup, c: &CartanMatrix) -> Result<BrauerTree, TreeError> {
    let cyclic = d.elements().iter().any(|&x| g.element_order(x) as usize == d.order());
    if !cyclic {
        return Err(TreeError::NotCyclicDefect);
    }
    BrauerTree::from_cartan(c)
}
