//! Labeled binary trees whose boundary is exactly the leaf set.
//!
//! Vertices `0..n` are the leaves (boundary points `1..=n` when printed);
//! interior vertices follow. Edges are stored in a canonical order that
//! depends only on the labeled tree:
//!
//! - edge `i` (`0 <= i < n`) is the boundary edge incident to leaf `i`;
//! - interior edges follow, sorted by the side of their cut that does not
//!   contain leaf `n`, first by size and then lexicographically.
//!
//! With this order the cut matrices of the caterpillar and snowflake trees
//! reproduce the classical printed layouts row for row.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Largest supported boundary size (cuts are stored as `u64` bitmasks).
pub const MAX_LEAVES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("binary tree needs at least {min} boundary points, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("binary tree supports at most {MAX_LEAVES} boundary points, got {0}")]
    TooLarge(usize),
    #[error("not a binary tree: {0}")]
    Malformed(String),
    #[error("newick parse error at byte {pos}: {message}")]
    Newick { pos: usize, message: String },
    #[error("unknown edge index {edge} (tree has {count} edges)")]
    UnknownEdge { edge: usize, count: usize },
    #[error("invalid leaf pair ({i},{j})")]
    InvalidLeafPair { i: usize, j: usize },
    #[error("leaves {i} and {j} are not moustaches")]
    NotMoustaches { i: usize, j: usize },
    #[error("unknown shape {name:?} for n = {n}")]
    UnknownShape { name: String, n: usize },
}

/// The partition of the boundary induced by removing one tree edge.
///
/// Labels are 0-based; `side1` always contains leaf 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
    pub edge: usize,
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |side: &[usize]| {
            side.iter()
                .map(|l| (l + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{}}} | {{{}}}", show(&self.side1), show(&self.side2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryTree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    /// Per edge: leaves on the side not containing leaf `n - 1`.
    cuts: Vec<u64>,
}

fn mask_labels(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

fn cmp_cut_side(a: u64, b: u64) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| mask_labels(a).cmp(&mask_labels(b)))
}

impl BinaryTree {
    /// Validates a raw edge list. Vertices `0..n` are the leaves; every other
    /// vertex id that appears is interior. Ids need not be contiguous.
    pub fn from_edges(n: usize, raw: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n < 2 {
            return Err(TreeError::TooSmall { n, min: 2 });
        }
        if n > MAX_LEAVES {
            return Err(TreeError::TooLarge(n));
        }
        if raw.len() != 2 * n - 3 {
            return Err(TreeError::Malformed(format!(
                "expected {} edges, found {}",
                2 * n - 3,
                raw.len()
            )));
        }

        // compact vertex ids: leaves keep 0..n, interior ids follow in order
        let mut ids: BTreeMap<usize, usize> = (0..n).map(|l| (l, l)).collect();
        for &(a, b) in raw {
            for v in [a, b] {
                if v >= n && !ids.contains_key(&v) {
                    let next = ids.len();
                    ids.insert(v, next);
                }
            }
        }
        let vertex_count = ids.len();
        if vertex_count != 2 * n - 2 {
            return Err(TreeError::Malformed(format!(
                "expected {} vertices, found {vertex_count}",
                2 * n - 2
            )));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (e, &(a, b)) in raw.iter().enumerate() {
            let (a, b) = (ids[&a], ids[&b]);
            if a == b {
                return Err(TreeError::Malformed("self-loop".into()));
            }
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }
        for (v, nbrs) in adjacency.iter().enumerate() {
            let expected = if v < n { 1 } else { 3 };
            if nbrs.len() != expected {
                let kind = if v < n { "leaf" } else { "interior vertex" };
                return Err(TreeError::Malformed(format!(
                    "{kind} {} has degree {}",
                    v + 1,
                    nbrs.len()
                )));
            }
        }
        // connectivity (with |E| = |V| - 1 this also rules out cycles)
        let mut seen = vec![false; vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(u, _) in &adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TreeError::Malformed("graph is disconnected".into()));
        }

        let compact: Vec<(usize, usize)> = raw.iter().map(|&(a, b)| (ids[&a], ids[&b])).collect();
        Ok(Self::canonicalize(n, &compact, &adjacency))
    }

    fn canonicalize(n: usize, edges: &[(usize, usize)], adjacency: &[Vec<(usize, usize)>]) -> Self {
        let far_leaf = n - 1;
        let leaves_behind = |from: usize, to: usize| -> u64 {
            // leaves reachable from `to` without crossing back to `from`
            let mut mask = 0u64;
            let mut stack = vec![(to, from)];
            while let Some((v, parent)) = stack.pop() {
                if v < n {
                    mask |= 1 << v;
                }
                for &(u, _) in &adjacency[v] {
                    if u != parent {
                        stack.push((u, v));
                    }
                }
            }
            mask
        };
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let raw_cuts: Vec<u64> = edges
            .iter()
            .map(|&(a, b)| {
                let side = leaves_behind(a, b);
                if side >> far_leaf & 1 == 1 {
                    full & !side
                } else {
                    side
                }
            })
            .collect();

        let mut order: Vec<usize> = Vec::with_capacity(edges.len());
        if n == 2 {
            order.push(0);
        } else {
            for leaf in 0..n {
                order.push(adjacency[leaf][0].1);
            }
            let mut interior: Vec<usize> = (0..edges.len())
                .filter(|&e| edges[e].0 >= n && edges[e].1 >= n)
                .collect();
            interior.sort_by(|&a, &b| cmp_cut_side(raw_cuts[a], raw_cuts[b]));
            order.extend(interior);
        }

        // renumber interior vertices by first appearance in the canonical order
        let mut relabel = vec![usize::MAX; adjacency.len()];
        for (l, slot) in relabel.iter_mut().enumerate().take(n) {
            *slot = l;
        }
        let mut next = n;
        for &e in &order {
            let (a, b) = edges[e];
            for v in [a, b] {
                if relabel[v] == usize::MAX {
                    relabel[v] = next;
                    next += 1;
                }
            }
        }
        let mut canon_edges = Vec::with_capacity(order.len());
        let mut cuts = Vec::with_capacity(order.len());
        let mut canon_adj = vec![Vec::with_capacity(3); adjacency.len()];
        for (idx, &e) in order.iter().enumerate() {
            let (a, b) = (relabel[edges[e].0], relabel[edges[e].1]);
            let (a, b) = (a.min(b), a.max(b));
            canon_edges.push((a, b));
            cuts.push(raw_cuts[e]);
            canon_adj[a].push((b, idx));
            canon_adj[b].push((a, idx));
        }
        for nbrs in &mut canon_adj {
            nbrs.sort_unstable();
        }
        Self {
            n,
            edges: canon_edges,
            adjacency: canon_adj,
            cuts,
        }
    }

    /// Number of boundary points.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Edges in canonical order as vertex pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs of a vertex.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.n
    }

    /// Leaves on the side of `edge` not containing leaf `n - 1`, as a bitmask.
    pub fn cut_mask(&self, edge: usize) -> u64 {
        self.cuts[edge]
    }

    /// The boundary partition induced by removing `edge`.
    pub fn edge_cut(&self, edge: usize) -> Result<Cut, TreeError> {
        if edge >= self.edges.len() {
            return Err(TreeError::UnknownEdge {
                edge,
                count: self.edges.len(),
            });
        }
        let (a, b) = self.edges[edge];
        let mut side = Vec::new();
        let mut stack = vec![(b, a)];
        while let Some((v, parent)) = stack.pop() {
            if self.is_leaf(v) {
                side.push(v);
            }
            for &(u, _) in &self.adjacency[v] {
                if u != parent {
                    stack.push((u, v));
                }
            }
        }
        side.sort_unstable();
        let other: Vec<usize> = (0..self.n).filter(|l| side.binary_search(l).is_err()).collect();
        let (side1, side2) = if side.contains(&0) { (side, other) } else { (other, side) };
        Ok(Cut { side1, side2, edge })
    }

    /// Edge indices of the unique path between leaves `i` and `j`, sorted.
    pub fn path_edges(&self, i: usize, j: usize) -> Result<Vec<usize>, TreeError> {
        if i == j || i >= self.n || j >= self.n {
            return Err(TreeError::InvalidLeafPair { i: i + 1, j: j + 1 });
        }
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.vertex_count()];
        let mut stack = vec![i];
        let mut seen = vec![false; self.vertex_count()];
        seen[i] = true;
        while let Some(v) = stack.pop() {
            if v == j {
                break;
            }
            for &(u, e) in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    via[u] = Some((v, e));
                    stack.push(u);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = j;
        while let Some((prev, e)) = via[cur] {
            path.push(e);
            cur = prev;
        }
        path.sort_unstable();
        Ok(path)
    }

    /// Unordered leaf pairs sharing an interior neighbor, sorted.
    pub fn moustaches(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in self.n..self.vertex_count() {
            let leaves: Vec<usize> = self.adjacency[v]
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| self.is_leaf(u))
                .collect();
            for (x, &a) in leaves.iter().enumerate() {
                for &b in &leaves[x + 1..] {
                    out.push((a.min(b), a.max(b)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Removes moustaches `(a, b)` and promotes their common neighbor to a
    /// leaf. The new leaf takes label `min(a, b)`; labels above `max(a, b)`
    /// shift down by one.
    pub fn eliminate_moustache(&self, a: usize, b: usize) -> Result<Self, TreeError> {
        let (a, b) = (a.min(b), a.max(b));
        if !self.moustaches().contains(&(a, b)) {
            return Err(TreeError::NotMoustaches { i: a + 1, j: b + 1 });
        }
        let hub = self.adjacency[a][0].0;
        let relabel = |v: usize| -> usize {
            if v == hub {
                a
            } else if v < self.n {
                if v > b {
                    v - 1
                } else {
                    v
                }
            } else {
                // interior ids stay above the new leaf range
                v + self.n
            }
        };
        let raw: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(x, y)| x != a && y != a && x != b && y != b)
            .map(|&(x, y)| (relabel(x), relabel(y)))
            .collect();
        Self::from_edges(self.n - 1, &raw)
    }

    /// Applies a leaf relabeling: leaf `l` becomes leaf `perm[l]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, TreeError> {
        assert_eq!(perm.len(), self.n);
        let raw: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(x, y)| {
                let map = |v: usize| if v < self.n { perm[v] } else { v };
                (map(x), map(y))
            })
            .collect();
        Self::from_edges(self.n, &raw)
    }

    /// Multiset of smaller-side sizes over interior edges; equal for trees of
    /// the same unlabeled shape (and distinguishes all shapes for `n <= 7`).
    pub fn shape_key(&self) -> Vec<usize> {
        let mut key: Vec<usize> = (self.n..self.edges.len())
            .map(|e| {
                let ones = self.cuts[e].count_ones() as usize;
                ones.min(self.n - ones)
            })
            .collect();
        key.sort_unstable();
        key
    }

    fn rooted_code(&self, v: usize, parent: usize) -> String {
        if self.is_leaf(v) {
            return "L".into();
        }
        let mut kids: Vec<String> = self.adjacency[v]
            .iter()
            .filter(|&&(u, _)| u != parent)
            .map(|&(u, _)| self.rooted_code(u, v))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }

    fn pair_leaves(
        &self,
        v: usize,
        parent: usize,
        other: &Self,
        w: usize,
        w_parent: usize,
        map: &mut [usize],
    ) {
        if self.is_leaf(v) {
            map[v] = w;
            return;
        }
        let children = |t: &Self, x: usize, px: usize| {
            let mut kids: Vec<(String, usize)> = t.adjacency[x]
                .iter()
                .filter(|&&(u, _)| u != px)
                .map(|&(u, _)| (t.rooted_code(u, x), u))
                .collect();
            kids.sort();
            kids
        };
        for ((_, c), (_, d)) in children(self, v, parent).into_iter().zip(children(other, w, w_parent)) {
            self.pair_leaves(c, v, other, d, w, map);
        }
    }

    /// A leaf bijection `σ` with `self.relabel(σ) == other`, if the two trees
    /// share an unlabeled shape.
    pub fn isomorphism_to(&self, other: &Self) -> Option<Vec<usize>> {
        if self.n != other.n || self.shape_key() != other.shape_key() {
            return None;
        }
        if self.n == 2 {
            return Some(vec![0, 1]);
        }
        let target_hub = other.adjacency[0][0].0;
        let target_code = other.rooted_code(target_hub, 0);
        for leaf in 0..self.n {
            let hub = self.adjacency[leaf][0].0;
            if self.rooted_code(hub, leaf) == target_code {
                let mut map = vec![usize::MAX; self.n];
                map[leaf] = 0;
                self.pair_leaves(hub, leaf, other, target_hub, 0, &mut map);
                debug_assert!(self.relabel(&map).as_ref() == Ok(other));
                return Some(map);
            }
        }
        None
    }

    fn min_leaf(&self, v: usize, parent: usize) -> usize {
        if self.is_leaf(v) {
            return v;
        }
        self.adjacency[v]
            .iter()
            .filter(|&&(u, _)| u != parent)
            .map(|&(u, _)| self.min_leaf(u, v))
            .min()
            .expect("interior vertex has children")
    }

    fn clade(&self, v: usize, parent: usize, out: &mut String) {
        if self.is_leaf(v) {
            out.push_str(&(v + 1).to_string());
            return;
        }
        let mut kids: Vec<(usize, usize)> = self.adjacency[v]
            .iter()
            .filter(|&&(u, _)| u != parent)
            .map(|&(u, _)| (self.min_leaf(u, v), u))
            .collect();
        kids.sort_unstable();
        out.push('(');
        for (idx, &(_, u)) in kids.iter().enumerate() {
            if idx > 0 {
                out.push(',');
            }
            self.clade(u, v, out);
        }
        out.push(')');
    }

    /// Deterministic Newick string, rooted on the edge separating leaf 1's
    /// neighborhood from the rest, e.g. `((1,2),(3,4));`.
    pub fn to_newick(&self) -> String {
        if self.n == 2 {
            return "(1,2);".into();
        }
        let hub = self.adjacency[0][0].0;
        let (_, root_side) = self.adjacency[hub]
            .iter()
            .filter(|&&(u, _)| u != 0)
            .map(|&(u, _)| (self.min_leaf(u, hub), u))
            .max()
            .expect("hub has two more neighbors");
        let mut out = String::from("(");
        self.clade(hub, root_side, &mut out);
        out.push(',');
        self.clade(root_side, hub, &mut out);
        out.push_str(");");
        out
    }

    /// Parses a Newick string over leaf labels `1..=n`. A root of degree two
    /// is suppressed; a root with three children is kept as an interior vertex.
    /// Branch lengths are ignored.
    pub fn parse_newick(text: &str) -> Result<Self, TreeError> {
        let mut parser = NewickParser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let root = parser.node()?;
        parser.skip_ws();
        if parser.peek() == Some(b';') {
            parser.pos += 1;
        }
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(parser.error("trailing characters"));
        }

        let mut labels = Vec::new();
        root.collect_labels(&mut labels);
        let n = labels.len();
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(idx, &l)| l != idx + 1) {
            return Err(TreeError::Malformed(format!(
                "leaf labels must be exactly 1..{n}"
            )));
        }
        let children = match root {
            NewickNode::Leaf(_) => {
                return Err(TreeError::TooSmall { n: 1, min: 2 });
            }
            NewickNode::Inner(children) => children,
        };
        let mut builder = RawBuilder {
            next: n,
            edges: Vec::new(),
        };
        match children.len() {
            2 => {
                let a = builder.add(&children[0])?;
                let b = builder.add(&children[1])?;
                builder.edges.push((a, b));
            }
            3 => {
                let hub = builder.fresh();
                for child in &children {
                    let c = builder.add(child)?;
                    builder.edges.push((hub, c));
                }
            }
            k => {
                return Err(TreeError::Malformed(format!(
                    "root has {k} children; expected 2 or 3"
                )))
            }
        }
        Self::from_edges(n, &builder.edges)
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_newick())
    }
}

impl std::str::FromStr for BinaryTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_newick(s)
    }
}

enum NewickNode {
    Leaf(usize),
    Inner(Vec<NewickNode>),
}

impl NewickNode {
    fn collect_labels(&self, out: &mut Vec<usize>) {
        match self {
            NewickNode::Leaf(l) => out.push(*l),
            NewickNode::Inner(kids) => kids.iter().for_each(|k| k.collect_labels(out)),
        }
    }
}

struct RawBuilder {
    next: usize,
    edges: Vec<(usize, usize)>,
}

impl RawBuilder {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    fn add(&mut self, node: &NewickNode) -> Result<usize, TreeError> {
        match node {
            NewickNode::Leaf(l) => Ok(l - 1),
            NewickNode::Inner(kids) => {
                if kids.len() != 2 {
                    return Err(TreeError::Malformed(format!(
                        "interior node with {} children; binary trees need 2",
                        kids.len()
                    )));
                }
                let v = self.fresh();
                for kid in kids {
                    let c = self.add(kid)?;
                    self.edges.push((v, c));
                }
                Ok(v)
            }
        }
    }
}

struct NewickParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl NewickParser<'_> {
    fn error(&self, message: &str) -> TreeError {
        TreeError::Newick {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_branch_length(&mut self) {
        self.skip_ws();
        if self.peek() == Some(b':') {
            self.pos += 1;
            while self
                .peek()
                .is_some_and(|b| b.is_ascii_digit() || b"+-.eE".contains(&b))
            {
                self.pos += 1;
            }
        }
    }

    fn node(&mut self) -> Result<NewickNode, TreeError> {
        self.skip_ws();
        let node = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let mut kids = vec![self.node()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            kids.push(self.node()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ')'")),
                    }
                }
                NewickNode::Inner(kids)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
                let label: usize = text.parse().map_err(|_| self.error("bad label"))?;
                if label == 0 {
                    return Err(self.error("leaf labels start at 1"));
                }
                NewickNode::Leaf(label)
            }
            _ => return Err(self.error("expected '(' or a leaf label")),
        };
        self.skip_branch_length();
        Ok(node)
    }
}

/// All `(2n-5)!!` labeled binary trees on boundary `{1..n}`, in a
/// deterministic order: leaf `m+1` is inserted into every edge of every tree
/// on `m` leaves, starting from the star on three leaves.
pub fn enumerate_topologies(n: usize) -> Result<Vec<BinaryTree>, TreeError> {
    if n < 3 {
        return Err(TreeError::TooSmall { n, min: 3 });
    }
    if n > MAX_LEAVES {
        return Err(TreeError::TooLarge(n));
    }
    let star = vec![(0, n), (1, n), (2, n)];
    let mut out = Vec::new();
    grow(n, star, 3, &mut out)?;
    Ok(out)
}

fn grow(
    n: usize,
    edges: Vec<(usize, usize)>,
    leaves: usize,
    out: &mut Vec<BinaryTree>,
) -> Result<(), TreeError> {
    if leaves == n {
        out.push(BinaryTree::from_edges(n, &edges)?);
        return Ok(());
    }
    let fresh = n + leaves - 2;
    for idx in 0..edges.len() {
        let (a, b) = edges[idx];
        let mut next = edges.clone();
        next[idx] = (a, fresh);
        next.push((fresh, b));
        next.push((fresh, leaves));
        grow(n, next, leaves + 1, out)?;
    }
    Ok(())
}

/// `(2n-5)!!`, the number of labeled binary trees on `n >= 3` leaves.
pub fn topology_count(n: usize) -> u64 {
    (3..n).map(|m| (2 * m - 3) as u64).product()
}

/// Caterpillar on `1..=n`: moustaches `{1,2}` and `{n-1,n}`, leaves in order.
pub fn caterpillar(n: usize) -> Result<BinaryTree, TreeError> {
    if n < 2 {
        return Err(TreeError::TooSmall { n, min: 2 });
    }
    if n == 2 {
        return BinaryTree::parse_newick("(1,2);");
    }
    // ((1,2),(3,(4,(...,(n-1,n)))))
    let mut right = format!("({},{})", n - 1, n);
    for leaf in (3..n - 1).rev() {
        right = format!("({leaf},{right})");
    }
    if n == 3 {
        right = "3".into();
    }
    BinaryTree::parse_newick(&format!("((1,2),{right});"))
}

/// Three-moustache trees: `((1,2),((3,4),(5,6)))` for `n = 6` and
/// `((1,2),(3,((4,5),(6,7))))` for `n = 7`.
pub fn snowflake(n: usize) -> Result<BinaryTree, TreeError> {
    match n {
        6 => BinaryTree::parse_newick("((1,2),((3,4),(5,6)));"),
        7 => BinaryTree::parse_newick("((1,2),(3,((4,5),(6,7))));"),
        _ => Err(TreeError::UnknownShape {
            name: "snowflake".into(),
            n,
        }),
    }
}

/// Resolves a named shape (`caterpillar`, `snowflake`, and the aliases
/// `two-moustache` / `three-moustache`).
pub fn shape_tree(name: &str, n: usize) -> Result<BinaryTree, TreeError> {
    match name {
        "caterpillar" | "two-moustache" => caterpillar(n),
        "snowflake" | "three-moustache" => snowflake(n),
        _ => Err(TreeError::UnknownShape {
            name: name.into(),
            n,
        }),
    }
}

/// Groups trees by unlabeled shape, preserving first-seen order.
pub fn group_by_shape(trees: &[BinaryTree]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (idx, tree) in trees.iter().enumerate() {
        let key = tree.shape_key();
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(idx),
            None => groups.push((key, vec![idx])),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cat4() -> BinaryTree {
        BinaryTree::parse_newick("((1,2),(3,4));").unwrap()
    }

    #[test]
    fn canonical_edge_order() {
        let t = cat4();
        assert_eq!(t.edge_count(), 5);
        assert_eq!(t.vertex_count(), 6);
        for leaf in 0..4 {
            let (a, b) = t.edges()[leaf];
            assert!(a == leaf || b == leaf);
        }
        assert_eq!(t.to_newick(), "((1,2),(3,4));");
    }

    #[test]
    fn newick_round_trip_on_all_topologies() {
        for n in 3..=7 {
            for t in enumerate_topologies(n).unwrap() {
                let back = BinaryTree::parse_newick(&t.to_newick()).unwrap();
                assert_eq!(back, t);
            }
        }
    }

    #[test]
    fn newick_accepts_trifurcating_root_and_branch_lengths() {
        let a = BinaryTree::parse_newick("(1,2,(3,4));").unwrap();
        let b = BinaryTree::parse_newick(" ( (1:0.5,2:1) , (3,4):2 ) ; ").unwrap();
        assert_eq!(a, cat4());
        assert_eq!(b, cat4());
        assert_eq!(BinaryTree::parse_newick("(1,2,3);").unwrap().to_newick(), "((1,2),3);");
    }

    #[test]
    fn newick_rejects_bad_trees() {
        assert!(BinaryTree::parse_newick("((1,2,3),4);").is_err());
        assert!(BinaryTree::parse_newick("((1,2),(3,5));").is_err());
        assert!(BinaryTree::parse_newick("((1,2),(3,3));").is_err());
        assert!(BinaryTree::parse_newick("((1,2),(3,4)").is_err());
        assert!(BinaryTree::parse_newick("1;").is_err());
        assert!(BinaryTree::parse_newick("((1,2),(3,4)));").is_err());
    }

    #[test]
    fn topology_counts() {
        assert_eq!(enumerate_topologies(3).unwrap().len(), 1);
        for n in 3..=8 {
            let trees = enumerate_topologies(n).unwrap();
            assert_eq!(trees.len() as u64, topology_count(n), "n = {n}");
            let distinct: HashSet<_> = trees.iter().map(BinaryTree::to_newick).collect();
            assert_eq!(distinct.len(), trees.len());
        }
        assert!(enumerate_topologies(2).is_err());
    }

    /// Brute force: a labeled tree on 4 leaves is fixed by which leaf pairs
    /// with leaf 1; there are exactly three such pairings.
    #[test]
    fn four_leaf_topologies_match_pairings() {
        let trees = enumerate_topologies(4).unwrap();
        let partners: HashSet<usize> = trees
            .iter()
            .map(|t| {
                let m = t.moustaches();
                m.iter().find(|p| p.0 == 0).unwrap().1
            })
            .collect();
        assert_eq!(partners, HashSet::from([1, 2, 3]));
    }

    #[test]
    fn six_leaves_have_two_shapes() {
        let trees = enumerate_topologies(6).unwrap();
        let groups = group_by_shape(&trees);
        assert_eq!(groups.len(), 2);
        let mut moustache_counts: Vec<usize> = groups
            .iter()
            .map(|(_, members)| trees[members[0]].moustaches().len())
            .collect();
        moustache_counts.sort_unstable();
        assert_eq!(moustache_counts, vec![2, 3]);
        assert_eq!(group_by_shape(&enumerate_topologies(7).unwrap()).len(), 2);
    }

    #[test]
    fn moustache_examples() {
        assert_eq!(cat4().moustaches(), vec![(0, 1), (2, 3)]);
        let star = enumerate_topologies(3).unwrap().remove(0);
        assert_eq!(star.moustaches(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(snowflake(6).unwrap().moustaches().len(), 3);
        assert_eq!(caterpillar(6).unwrap().moustaches().len(), 2);
    }

    #[test]
    fn edge_cut_examples() {
        let t = cat4();
        assert_eq!(t.edge_cut(0).unwrap().to_string(), "{1} | {2,3,4}");
        assert_eq!(t.edge_cut(4).unwrap().to_string(), "{1,2} | {3,4}");
        let five = caterpillar(5).unwrap();
        assert_eq!(five.edge_cut(5).unwrap().to_string(), "{1,2} | {3,4,5}");
        assert_eq!(five.edge_cut(6).unwrap().to_string(), "{1,2,3} | {4,5}");
        assert!(matches!(t.edge_cut(5), Err(TreeError::UnknownEdge { .. })));
    }

    #[test]
    fn path_edge_examples() {
        let t = cat4();
        assert_eq!(t.path_edges(0, 1).unwrap(), vec![0, 1]);
        assert_eq!(t.path_edges(0, 2).unwrap(), vec![0, 2, 4]);
        assert!(t.path_edges(1, 1).is_err());
        for tree in enumerate_topologies(6).unwrap() {
            for (a, b) in tree.moustaches() {
                assert_eq!(tree.path_edges(a, b).unwrap().len(), 2);
            }
        }
    }

    #[test]
    fn cut_path_duality() {
        for n in 3..=6 {
            for t in enumerate_topologies(n).unwrap() {
                for i in 0..n {
                    for j in i + 1..n {
                        let path = t.path_edges(i, j).unwrap();
                        for e in 0..t.edge_count() {
                            let cut = t.edge_cut(e).unwrap();
                            let split = cut.side1.contains(&i) != cut.side1.contains(&j);
                            assert_eq!(path.contains(&e), split);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cut_mask_agrees_with_edge_cut() {
        for t in enumerate_topologies(6).unwrap() {
            for e in 0..t.edge_count() {
                let cut = t.edge_cut(e).unwrap();
                let side = if cut.side1.contains(&5) { &cut.side2 } else { &cut.side1 };
                let mask = side.iter().fold(0u64, |m, &l| m | 1 << l);
                assert_eq!(t.cut_mask(e), mask);
            }
        }
    }

    #[test]
    fn moustache_elimination_yields_binary_trees() {
        for n in 3..=7 {
            for t in enumerate_topologies(n).unwrap() {
                for (a, b) in t.moustaches() {
                    let smaller = t.eliminate_moustache(a, b).unwrap();
                    assert_eq!(smaller.n(), n - 1);
                    assert_eq!(smaller.edge_count(), 2 * n - 5);
                }
            }
        }
        assert!(cat4().eliminate_moustache(0, 2).is_err());
        let two = enumerate_topologies(3).unwrap()[0].eliminate_moustache(0, 1).unwrap();
        assert_eq!(two.to_newick(), "(1,2);");
    }

    #[test]
    fn isomorphism_recovers_relabeling() {
        let trees = enumerate_topologies(7).unwrap();
        let cat = caterpillar(7).unwrap();
        let snow = snowflake(7).unwrap();
        for t in &trees {
            let rep = if t.shape_key() == cat.shape_key() { &cat } else { &snow };
            let sigma = rep.isomorphism_to(t).expect("same shape");
            assert_eq!(&rep.relabel(&sigma).unwrap(), t);
        }
        assert!(cat.isomorphism_to(&snow).is_none());
    }

    #[test]
    fn named_shapes() {
        assert_eq!(caterpillar(3).unwrap().to_newick(), "((1,2),3);");
        assert_eq!(caterpillar(5).unwrap().to_newick(), "((1,2),(3,(4,5)));");
        assert_eq!(snowflake(6).unwrap().to_newick(), "((1,2),((3,4),(5,6)));");
        assert!(shape_tree("snowflake", 5).is_err());
        assert!(shape_tree("octopus", 6).is_err());
    }
}
