//! Keyword tree over the constraint set, failure links, and the exclusion
//! automaton whose transitions drive the dynamic program.
//!
//! The pipeline is:
//!
//! 1. [`normalize`] drops duplicate patterns and patterns that contain another
//!    pattern as a proper substring. Neither drop changes the answer: any
//!    string avoiding the shorter pattern also avoids the longer one.
//! 2. [`KeywordTree::new`] builds the trie with nodes numbered in preorder
//!    (children visited in byte order), then fills the failure function.
//! 3. [`ExclusionAutomaton::new`] keeps only the nonleaf nodes as states and
//!    tabulates `λ(k, c)`: the deepest node whose label is a suffix of
//!    `L(k)·c`, or [`MATCH`] when that suffix is a complete pattern.
//!
//! Once every pattern ends at a leaf (no pattern is a prefix or infix of
//! another), a leaf is reached exactly when a pattern has just been
//! completed, so leaves never need to be DP states.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Sentinel transition value: appending the character completes a pattern.
pub const MATCH: u32 = u32::MAX;

/// Why a raw pattern was dropped during normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RemovalReason {
    /// Equal to an earlier pattern in input order.
    Duplicate,
    /// Contains another retained pattern as a proper substring.
    Superstring,
}

impl RemovalReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RemovalReason::Duplicate => "duplicate",
            RemovalReason::Superstring => "superstring",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removed {
    pub pattern: Vec<u8>,
    pub reason: RemovalReason,
}

/// A normalized constraint set: nonempty, pairwise distinct patterns, none
/// of which is a proper substring of another.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintSet {
    patterns: Vec<Vec<u8>>,
    removed: Vec<Removed>,
}

impl ConstraintSet {
    /// Retained patterns, in input order.
    pub fn patterns(&self) -> &[Vec<u8>] {
        &self.patterns
    }

    /// Every dropped pattern with the reason, in input order.
    pub fn removed(&self) -> &[Removed] {
        &self.removed
    }

    /// Number of retained patterns.
    pub fn d(&self) -> usize {
        self.patterns.len()
    }

    /// Total length of the retained patterns.
    pub fn r(&self) -> usize {
        self.patterns.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

/// Normalizes a raw pattern list.
///
/// Duplicates are found by sorting and comparing neighbours; the first
/// occurrence in input order survives. Superstrings are then detected on the
/// keyword tree of the deduplicated set with [`KeywordTree::detect_superstrings`].
pub fn normalize<P: AsRef<[u8]>>(raw: &[P]) -> Result<ConstraintSet> {
    if let Some(index) = raw.iter().position(|p| p.as_ref().is_empty()) {
        return Err(Error::EmptyConstraint { index });
    }

    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&a, &b| raw[a].as_ref().cmp(raw[b].as_ref()).then(a.cmp(&b)));
    let mut reason: Vec<Option<RemovalReason>> = vec![None; raw.len()];
    for w in order.windows(2) {
        if raw[w[0]].as_ref() == raw[w[1]].as_ref() {
            reason[w[1]] = Some(RemovalReason::Duplicate);
        }
    }

    let distinct: Vec<usize> = (0..raw.len()).filter(|&i| reason[i].is_none()).collect();
    let distinct_patterns: Vec<&[u8]> = distinct.iter().map(|&i| raw[i].as_ref()).collect();
    let tree = KeywordTree::new(&distinct_patterns);
    for p in tree.detect_superstrings() {
        reason[distinct[p]] = Some(RemovalReason::Superstring);
    }

    let mut cs = ConstraintSet::default();
    for (i, p) in raw.iter().enumerate() {
        let pattern = p.as_ref().to_vec();
        match reason[i] {
            None => cs.patterns.push(pattern),
            Some(reason) => cs.removed.push(Removed { pattern, reason }),
        }
    }
    Ok(cs)
}

/// A trie node. Children are kept sorted by byte.
#[derive(Debug, Clone)]
pub struct Node {
    pub parent: usize,
    /// Label of the incoming edge; 0 for the root.
    pub byte: u8,
    pub depth: usize,
    pub children: Vec<(u8, usize)>,
    /// Index of the pattern spelled by this node, if any.
    pub pattern: Option<usize>,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Keyword tree with nodes numbered in preorder; node 0 is the root.
#[derive(Debug, Clone)]
pub struct KeywordTree {
    nodes: Vec<Node>,
    pre: Vec<usize>,
    bfs: Vec<usize>,
    has_failure: bool,
}

impl KeywordTree {
    /// Builds the trie and its failure function. Patterns must be nonempty
    /// and distinct; they need not satisfy the substring-freeness condition.
    pub fn new<P: AsRef<[u8]>>(patterns: &[P]) -> Self {
        let mut tree = Self::build_trie(patterns);
        tree.compute_failure();
        tree
    }

    pub fn from_constraints(cs: &ConstraintSet) -> Self {
        Self::new(cs.patterns())
    }

    /// Builds the bare trie. Failure links are all 0 until
    /// [`compute_failure`](Self::compute_failure) runs.
    pub fn build_trie<P: AsRef<[u8]>>(patterns: &[P]) -> Self {
        struct Draft {
            children: BTreeMap<u8, usize>,
            pattern: Option<usize>,
        }
        let mut draft = vec![Draft { children: BTreeMap::new(), pattern: None }];
        for (index, p) in patterns.iter().enumerate() {
            let mut at = 0;
            for &b in p.as_ref() {
                at = match draft[at].children.get(&b) {
                    Some(&next) => next,
                    None => {
                        let next = draft.len();
                        draft.push(Draft { children: BTreeMap::new(), pattern: None });
                        draft[at].children.insert(b, next);
                        next
                    }
                };
            }
            debug_assert!(draft[at].pattern.is_none(), "duplicate pattern");
            draft[at].pattern = Some(index);
        }

        // Renumber in preorder.
        let mut nodes: Vec<Node> = Vec::with_capacity(draft.len());
        let mut stack = vec![(0usize, 0usize, 0u8, 0usize)];
        while let Some((old, parent, byte, depth)) = stack.pop() {
            let id = nodes.len();
            nodes.push(Node {
                parent,
                byte,
                depth,
                children: Vec::with_capacity(draft[old].children.len()),
                pattern: draft[old].pattern,
            });
            if id != 0 {
                nodes[parent].children.push((byte, id));
            }
            for (&b, &child) in draft[old].children.iter().rev() {
                stack.push((child, id, b, depth + 1));
            }
        }

        let len = nodes.len();
        Self { nodes, pre: vec![0; len], bfs: Vec::new(), has_failure: false }
    }

    /// Fills `pre(i)`, the node whose label is the longest proper suffix of
    /// `L(i)` that is also a node label, by breadth-first propagation.
    pub fn compute_failure(&mut self) {
        let mut queue = VecDeque::from([0usize]);
        let mut bfs = Vec::with_capacity(self.nodes.len());
        while let Some(u) = queue.pop_front() {
            bfs.push(u);
            for &(b, v) in &self.nodes[u].children {
                self.pre[v] = if u == 0 {
                    0
                } else {
                    let mut f = self.pre[u];
                    loop {
                        if let Some(g) = self.child(f, b) {
                            break g;
                        }
                        if f == 0 {
                            break 0;
                        }
                        f = self.pre[f];
                    }
                };
                queue.push_back(v);
            }
        }
        self.bfs = bfs;
        self.has_failure = true;
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn child(&self, id: usize, byte: u8) -> Option<usize> {
        let children = &self.nodes[id].children;
        children
            .binary_search_by_key(&byte, |&(b, _)| b)
            .ok()
            .map(|i| children[i].1)
    }

    /// Failure link of `id`; the root maps to itself.
    pub fn pre(&self, id: usize) -> usize {
        self.pre[id]
    }

    pub fn failure(&self) -> &[usize] {
        &self.pre
    }

    pub fn has_failure(&self) -> bool {
        self.has_failure
    }

    /// Nodes in breadth-first order (nondecreasing depth).
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }

    /// The string spelled from the root to `id`.
    pub fn label(&self, id: usize) -> Vec<u8> {
        let mut out = vec![0; self.nodes[id].depth];
        let mut at = id;
        while at != 0 {
            out[self.nodes[at].depth - 1] = self.nodes[at].byte;
            at = self.nodes[at].parent;
        }
        out
    }

    /// Indices of the patterns that contain another pattern as a proper
    /// substring, in increasing order.
    ///
    /// Pattern A occurs properly inside pattern B iff some node on B's
    /// root path has a failure chain (itself included, except for B's own
    /// node) that reaches A's node. Each node is marked once with whether its
    /// chain reaches a pattern-terminal node, then each root path is
    /// scanned. Linear in the tree size.
    pub fn detect_superstrings(&self) -> Vec<usize> {
        assert!(self.has_failure, "failure links not computed");
        let mut reaches = vec![false; self.nodes.len()];
        for &v in self.bfs.iter().skip(1) {
            reaches[v] = self.nodes[v].pattern.is_some() || reaches[self.pre[v]];
        }

        let mut out = Vec::new();
        // (node, some strict ancestor already reaches a terminal)
        let mut stack = vec![(0usize, false)];
        while let Some((v, above)) = stack.pop() {
            let node = &self.nodes[v];
            if let Some(p) = node.pattern {
                if above || reaches[self.pre[v]] {
                    out.push(p);
                }
            }
            let below = above || reaches[v];
            for &(_, c) in &node.children {
                stack.push((c, below));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Result of a single automaton step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    State(usize),
    Match,
}

impl Step {
    fn from_raw(raw: u32) -> Self {
        if raw == MATCH {
            Step::Match
        } else {
            Step::State(raw as usize)
        }
    }
}

/// The keyword tree restricted to its nonleaf nodes, with a dense
/// transition table over the bytes occurring in the patterns.
///
/// States are numbered `0..s` following the preorder of the nonleaf nodes.
/// Any byte outside the pattern alphabet sends every state to the root.
#[derive(Debug, Clone)]
pub struct ExclusionAutomaton {
    tree: KeywordTree,
    state_node: Vec<usize>,
    node_state: Vec<u32>,
    alphabet: Vec<u8>,
    column_of: [u16; 256],
    // Column-major: the column for byte c is lambda[col * s..(col + 1) * s].
    lambda: Vec<u32>,
    root_column: Vec<u32>,
}

const NO_COLUMN: u16 = u16::MAX;

impl ExclusionAutomaton {
    pub fn new(cs: &ConstraintSet) -> Self {
        Self::compute_lambda(KeywordTree::from_constraints(cs))
    }

    /// Tabulates `λ` for a tree built from a normalized constraint set.
    ///
    /// Processing states in breadth-first order guarantees `λ(pre(k), ·)`
    /// is complete before it is copied into row `k`.
    ///
    /// # Panics
    ///
    /// If the tree's patterns are not substring-free, i.e. some failure
    /// chain from a nonleaf node reaches a leaf.
    fn compute_lambda(tree: KeywordTree) -> Self {
        assert!(tree.has_failure());
        let nodes = tree.nodes();
        let mut node_state = vec![MATCH; nodes.len()];
        let mut state_node = Vec::new();
        for (id, node) in nodes.iter().enumerate() {
            if !node.is_leaf() || id == 0 {
                node_state[id] = state_node.len() as u32;
                state_node.push(id);
            } else {
                assert!(node.pattern.is_some(), "leaf without a pattern");
            }
        }
        let s = state_node.len();

        let mut present = [false; 256];
        for node in nodes.iter().skip(1) {
            present[node.byte as usize] = true;
        }
        let alphabet: Vec<u8> = (0..=255u8).filter(|&b| present[b as usize]).collect();
        let mut column_of = [NO_COLUMN; 256];
        for (col, &b) in alphabet.iter().enumerate() {
            column_of[b as usize] = col as u16;
        }

        let mut lambda = vec![0u32; s * alphabet.len()];
        for &id in tree.bfs_order() {
            let k = node_state[id];
            if k == MATCH {
                continue;
            }
            let k = k as usize;
            let fallback = node_state[tree.pre(id)];
            assert!(
                id == 0 || fallback != MATCH,
                "failure link from a nonleaf node reaches a leaf; patterns are not substring-free"
            );
            for (col, &b) in alphabet.iter().enumerate() {
                lambda[col * s + k] = match tree.child(id, b) {
                    Some(g) => node_state[g],
                    None if id == 0 => 0,
                    None => lambda[col * s + fallback as usize],
                };
            }
        }

        Self {
            tree,
            state_node,
            node_state,
            alphabet,
            column_of,
            lambda,
            root_column: vec![0; s],
        }
    }

    /// Number of DP states (nonleaf nodes, root included).
    pub fn s(&self) -> usize {
        self.state_node.len()
    }

    pub fn tree(&self) -> &KeywordTree {
        &self.tree
    }

    /// Bytes occurring in some retained pattern, sorted.
    pub fn pattern_alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn node_of_state(&self, state: usize) -> usize {
        self.state_node[state]
    }

    /// State of a tree node, or `None` for leaves.
    pub fn state_of_node(&self, node: usize) -> Option<usize> {
        match self.node_state[node] {
            MATCH => None,
            k => Some(k as usize),
        }
    }

    pub fn label(&self, state: usize) -> Vec<u8> {
        self.tree.label(self.state_node[state])
    }

    pub fn depth(&self, state: usize) -> usize {
        self.tree.node(self.state_node[state]).depth
    }

    /// `λ(k, c)` for every state `k`, indexed by `k`. Values are states or
    /// [`MATCH`].
    #[inline]
    pub fn column(&self, byte: u8) -> &[u32] {
        match self.column_of[byte as usize] {
            NO_COLUMN => &self.root_column,
            col => {
                let s = self.s();
                let start = col as usize * s;
                &self.lambda[start..start + s]
            }
        }
    }

    /// Table lookup of `λ(state, byte)`.
    #[inline]
    pub fn sigma_step(&self, state: usize, byte: u8) -> Step {
        Step::from_raw(self.column(byte)[state])
    }

    /// Table-free transition: walks failure links from `state` until some
    /// node has an edge labeled `byte`, falling back to the root.
    pub fn sigma_walk(&self, state: usize, byte: u8) -> Step {
        let mut at = self.state_node[state];
        loop {
            if let Some(next) = self.tree.child(at, byte) {
                return Step::from_raw(self.node_state[next]);
            }
            if at == 0 {
                return Step::State(0);
            }
            at = self.tree.pre(at);
        }
    }

    /// Runs the automaton over `s` from the root. Returns [`Step::Match`] as
    /// soon as a pattern occurs, otherwise the state of the deepest node
    /// whose label is a suffix of `s`.
    pub fn sigma_string(&self, s: &[u8]) -> Step {
        let mut state = 0;
        for &b in s {
            match self.sigma_step(state, b) {
                Step::Match => return Step::Match,
                Step::State(k) => state = k,
            }
        }
        Step::State(state)
    }

    /// Serializable snapshot for debugging and golden files.
    pub fn dump(&self) -> AutomatonDump {
        let nodes = (0..self.tree.len())
            .map(|id| {
                let node = self.tree.node(id);
                NodeDump {
                    id,
                    label: lossy(&self.tree.label(id)),
                    depth: node.depth,
                    leaf: node.is_leaf() && id != 0,
                    pre: self.tree.pre(id),
                    state: self.state_of_node(id),
                }
            })
            .collect();
        let states = (0..self.s())
            .map(|k| StateDump {
                state: k,
                node: self.state_node[k],
                label: lossy(&self.label(k)),
                lambda: self
                    .alphabet
                    .iter()
                    .map(|&b| {
                        let target = match self.sigma_step(k, b) {
                            Step::Match => Target::Match,
                            Step::State(t) => Target::State(t),
                        };
                        (lossy(&[b]), target)
                    })
                    .collect(),
            })
            .collect();
        AutomatonDump {
            s: self.s(),
            alphabet: self.alphabet.iter().map(|&b| lossy(&[b])).collect(),
            nodes,
            states,
        }
    }
}

fn lossy(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

/// JSON shape of [`ExclusionAutomaton::dump`].
#[derive(Debug, Clone, Serialize)]
pub struct AutomatonDump {
    pub s: usize,
    pub alphabet: Vec<String>,
    pub nodes: Vec<NodeDump>,
    pub states: Vec<StateDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeDump {
    pub id: usize,
    pub label: String,
    pub depth: usize,
    pub leaf: bool,
    pub pre: usize,
    pub state: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateDump {
    pub state: usize,
    pub node: usize,
    pub label: String,
    pub lambda: BTreeMap<String, Target>,
}

/// A transition target: a state number, serialized as `"MATCH"` for the sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    State(usize),
    Match,
}

impl Serialize for Target {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Target::State(k) => s.serialize_u64(k as u64),
            Target::Match => s.serialize_str("MATCH"),
        }
    }
}
