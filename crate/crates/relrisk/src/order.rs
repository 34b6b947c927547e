//! Finite strict partial orders.
//!
//! A [`GroundSet`] fixes the elements and their declaration order; every set
//! of elements produced by this module is reported in that order, so repeated
//! runs over the same input yield identical output. A [`StrictRelation`] is a
//! raw set of `a < b` pairs; [`Poset::from_relation`] validates it (rejecting
//! cycles with a witness) and stores both the transitive closure and the
//! cover relation (transitive reduction).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Errors raised by order construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element `{0}` related to itself")]
    ReflexivePair(String),
    #[error("cycle: {}", render_cycle(.0))]
    Cycle(Vec<String>),
    #[error("quotient cycle: {}", render_cycle(.0))]
    QuotientCycle(Vec<String>),
    #[error("partition block is empty")]
    EmptyBlock,
    #[error("element `{0}` appears in more than one block")]
    OverlappingBlocks(String),
    #[error("element `{0}` is missing from every block")]
    IncompletePartition(String),
    #[error("ground sets do not match")]
    GroundMismatch,
}

fn render_cycle(witness: &[String]) -> String {
    let mut parts: Vec<&str> = witness.iter().map(String::as_str).collect();
    if let Some(first) = witness.first() {
        parts.push(first);
    }
    parts.join(" < ")
}

/// Outcome of comparing two elements of a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// An ordered collection of distinct element names.
///
/// Declaration order is significant: it is the canonical output order for
/// every derived set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    elements: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(elements: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        for (i, name) in elements.iter().enumerate() {
            if elements[..i].contains(name) {
                return Err(OrderError::DuplicateElement(name.clone()));
            }
        }
        Ok(GroundSet { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    fn resolve(&self, name: &str) -> Result<usize, OrderError> {
        self.index_of(name)
            .ok_or_else(|| OrderError::UnknownElement(name.to_string()))
    }
}

/// A set of strict `a < b` pairs over a ground set.
///
/// Reflexive pairs are rejected at construction; cycles among distinct
/// elements are representable and are only rejected by [`Poset::from_relation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictRelation {
    ground: GroundSet,
    pairs: BTreeSet<(usize, usize)>,
}

impl StrictRelation {
    pub fn new<I, S>(ground: GroundSet, pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut index_pairs = BTreeSet::new();
        for (a, b) in pairs {
            let a = ground.resolve(a.as_ref())?;
            let b = ground.resolve(b.as_ref())?;
            if a == b {
                return Err(OrderError::ReflexivePair(ground.name(a).to_string()));
            }
            index_pairs.insert((a, b));
        }
        Ok(StrictRelation { ground, pairs: index_pairs })
    }

    pub(crate) fn from_index_pairs(ground: GroundSet, pairs: BTreeSet<(usize, usize)>) -> Self {
        debug_assert!(pairs.iter().all(|&(a, b)| a != b && a < ground.len() && b < ground.len()));
        StrictRelation { ground, pairs }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: &str, b: &str) -> bool {
        match (self.ground.index_of(a), self.ground.index_of(b)) {
            (Some(a), Some(b)) => self.pairs.contains(&(a, b)),
            _ => false,
        }
    }

    /// Pairs in declaration order (lexicographic on the ground indices).
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|&(a, b)| (self.ground.name(a), self.ground.name(b)))
    }
}

/// Transitive closure of an arbitrary strict relation (cycles permitted).
pub fn transitive_closure(relation: &StrictRelation) -> StrictRelation {
    let n = relation.ground.len();
    let matrix = warshall(n, &relation.pairs);
    let mut pairs = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && matrix[a * n + b] {
                pairs.insert((a, b));
            }
        }
    }
    StrictRelation { ground: relation.ground.clone(), pairs }
}

fn warshall(n: usize, pairs: &BTreeSet<(usize, usize)>) -> Vec<bool> {
    let mut m = vec![false; n * n];
    for &(a, b) in pairs {
        m[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i * n + k] {
                for j in 0..n {
                    if m[k * n + j] {
                        m[i * n + j] = true;
                    }
                }
            }
        }
    }
    m
}

/// Greatest/least element and the maximal/minimal sets of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremes {
    pub greatest: Option<String>,
    pub least: Option<String>,
    pub maximal: Vec<String>,
    pub minimal: Vec<String>,
}

/// Structural summary of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureProfile {
    pub is_upper_semilattice: bool,
    pub is_lower_semilattice: bool,
    pub is_total_order: bool,
    pub extremes: Extremes,
}

/// A validated finite strict partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    ground: GroundSet,
    closure: BTreeSet<(usize, usize)>,
    covers: BTreeSet<(usize, usize)>,
}

impl Poset {
    /// Validates a relation as a strict partial order.
    ///
    /// Computes the transitive closure and rejects any cycle with an explicit
    /// witness; on success the cover relation is derived as well.
    pub fn from_relation(relation: &StrictRelation) -> Result<Poset, OrderError> {
        let n = relation.ground.len();
        let matrix = warshall(n, &relation.pairs);
        if let Some(start) = (0..n).find(|&i| matrix[i * n + i]) {
            let witness = cycle_witness(relation, start);
            return Err(OrderError::Cycle(witness));
        }
        let mut closure = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                if matrix[a * n + b] {
                    closure.insert((a, b));
                }
            }
        }
        let covers = reduction(n, &matrix);
        Ok(Poset { ground: relation.ground.clone(), closure, covers })
    }

    /// Convenience: build the relation from named pairs and validate it.
    pub fn from_covers<I, S>(ground: GroundSet, pairs: I) -> Result<Poset, OrderError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let relation = StrictRelation::new(ground, pairs)?;
        Poset::from_relation(&relation)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// The full strict order as a relation.
    pub fn closure(&self) -> StrictRelation {
        StrictRelation { ground: self.ground.clone(), pairs: self.closure.clone() }
    }

    /// The cover relation: `a < b` with no element strictly between.
    pub fn hasse(&self) -> StrictRelation {
        StrictRelation { ground: self.ground.clone(), pairs: self.covers.clone() }
    }

    pub fn lt(&self, a: &str, b: &str) -> Result<bool, OrderError> {
        Ok(self.lt_idx(self.ground.resolve(a)?, self.ground.resolve(b)?))
    }

    pub fn leq(&self, a: &str, b: &str) -> Result<bool, OrderError> {
        Ok(self.leq_idx(self.ground.resolve(a)?, self.ground.resolve(b)?))
    }

    pub fn compare(&self, a: &str, b: &str) -> Result<Comparison, OrderError> {
        Ok(self.compare_idx(self.ground.resolve(a)?, self.ground.resolve(b)?))
    }

    pub(crate) fn lt_idx(&self, a: usize, b: usize) -> bool {
        self.closure.contains(&(a, b))
    }

    pub(crate) fn leq_idx(&self, a: usize, b: usize) -> bool {
        a == b || self.lt_idx(a, b)
    }

    pub(crate) fn compare_idx(&self, a: usize, b: usize) -> Comparison {
        if a == b {
            Comparison::Equal
        } else if self.lt_idx(a, b) {
            Comparison::Less
        } else if self.lt_idx(b, a) {
            Comparison::Greater
        } else {
            Comparison::Incomparable
        }
    }

    /// Least upper bound of two elements, if one exists.
    pub fn join(&self, a: &str, b: &str) -> Result<Option<&str>, OrderError> {
        let a = self.ground.resolve(a)?;
        let b = self.ground.resolve(b)?;
        Ok(self.join_idx(a, b).map(|i| self.ground.name(i)))
    }

    /// Greatest lower bound of two elements, if one exists.
    pub fn meet(&self, a: &str, b: &str) -> Result<Option<&str>, OrderError> {
        let a = self.ground.resolve(a)?;
        let b = self.ground.resolve(b)?;
        Ok(self.meet_idx(a, b).map(|i| self.ground.name(i)))
    }

    /// Supremum of a subset. The empty subset has no supremum by convention.
    pub fn sup_set<S: AsRef<str>>(&self, subset: &[S]) -> Result<Option<&str>, OrderError> {
        let indices = self.resolve_all(subset)?;
        Ok(self.sup_idx(&indices).map(|i| self.ground.name(i)))
    }

    /// Infimum of a subset. The empty subset has no infimum by convention.
    pub fn inf_set<S: AsRef<str>>(&self, subset: &[S]) -> Result<Option<&str>, OrderError> {
        let indices = self.resolve_all(subset)?;
        Ok(self.inf_idx(&indices).map(|i| self.ground.name(i)))
    }

    fn resolve_all<S: AsRef<str>>(&self, subset: &[S]) -> Result<Vec<usize>, OrderError> {
        subset.iter().map(|s| self.ground.resolve(s.as_ref())).collect()
    }

    pub(crate) fn join_idx(&self, a: usize, b: usize) -> Option<usize> {
        self.sup_idx(&[a, b])
    }

    pub(crate) fn meet_idx(&self, a: usize, b: usize) -> Option<usize> {
        self.inf_idx(&[a, b])
    }

    pub(crate) fn sup_idx(&self, subset: &[usize]) -> Option<usize> {
        if subset.is_empty() {
            return None;
        }
        let bounds: Vec<usize> = (0..self.ground.len())
            .filter(|&u| subset.iter().all(|&x| self.leq_idx(x, u)))
            .collect();
        bounds
            .iter()
            .copied()
            .find(|&u| bounds.iter().all(|&v| self.leq_idx(u, v)))
    }

    pub(crate) fn inf_idx(&self, subset: &[usize]) -> Option<usize> {
        if subset.is_empty() {
            return None;
        }
        let bounds: Vec<usize> = (0..self.ground.len())
            .filter(|&l| subset.iter().all(|&x| self.leq_idx(l, x)))
            .collect();
        bounds
            .iter()
            .copied()
            .find(|&l| bounds.iter().all(|&v| self.leq_idx(v, l)))
    }

    pub fn extremes(&self) -> Extremes {
        let n = self.ground.len();
        let maximal: Vec<usize> =
            (0..n).filter(|&i| (0..n).all(|j| !self.lt_idx(i, j))).collect();
        let minimal: Vec<usize> =
            (0..n).filter(|&i| (0..n).all(|j| !self.lt_idx(j, i))).collect();
        // In a finite poset a unique maximal element lies above everything.
        let greatest = match maximal.as_slice() {
            [only] => Some(self.ground.name(*only).to_string()),
            _ => None,
        };
        let least = match minimal.as_slice() {
            [only] => Some(self.ground.name(*only).to_string()),
            _ => None,
        };
        Extremes {
            greatest,
            least,
            maximal: maximal.into_iter().map(|i| self.ground.name(i).to_string()).collect(),
            minimal: minimal.into_iter().map(|i| self.ground.name(i).to_string()).collect(),
        }
    }

    pub fn structure_profile(&self) -> StructureProfile {
        let n = self.ground.len();
        let mut is_upper = true;
        let mut is_lower = true;
        let mut is_total = true;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.join_idx(i, j).is_none() {
                    is_upper = false;
                }
                if self.meet_idx(i, j).is_none() {
                    is_lower = false;
                }
                if self.compare_idx(i, j) == Comparison::Incomparable {
                    is_total = false;
                }
            }
        }
        StructureProfile {
            is_upper_semilattice: is_upper,
            is_lower_semilattice: is_lower,
            is_total_order: is_total,
            extremes: self.extremes(),
        }
    }

    /// Sub-poset induced on a subset of elements, in declaration order.
    pub fn restrict<S: AsRef<str>>(&self, elements: &[S]) -> Result<Poset, OrderError> {
        let mut indices = self.resolve_all(elements)?;
        indices.sort_unstable();
        indices.dedup();
        Ok(self.induced(&indices))
    }

    /// `indices` must be strictly ascending.
    pub(crate) fn induced(&self, indices: &[usize]) -> Poset {
        let names: Vec<String> =
            indices.iter().map(|&i| self.ground.name(i).to_string()).collect();
        let ground = GroundSet { elements: names };
        let n = indices.len();
        let mut matrix = vec![false; n * n];
        let mut closure = BTreeSet::new();
        for p in 0..n {
            for q in 0..n {
                if p != q && self.lt_idx(indices[p], indices[q]) {
                    matrix[p * n + q] = true;
                    closure.insert((p, q));
                }
            }
        }
        let covers = reduction(n, &matrix);
        Poset { ground, closure, covers }
    }

    /// Order induced on the blocks of a partition.
    ///
    /// Block `B1` precedes `B2` when some member of `B1` lies below some
    /// member of `B2`. The induced relation may fail to be a partial order;
    /// in that case the witness cycle of blocks is reported.
    pub fn quotient(&self, partition: &Partition) -> Result<Poset, OrderError> {
        if partition.ground != self.ground {
            return Err(OrderError::GroundMismatch);
        }
        let labels: Vec<String> =
            (0..partition.block_count()).map(|b| partition.block_label(b)).collect();
        let ground = GroundSet::new(labels)?;
        let mut pairs = BTreeSet::new();
        for (bi, block_i) in partition.blocks.iter().enumerate() {
            for (bj, block_j) in partition.blocks.iter().enumerate() {
                if bi == bj {
                    continue;
                }
                let related = block_i
                    .iter()
                    .any(|&x| block_j.iter().any(|&y| self.lt_idx(x, y)));
                if related {
                    pairs.insert((bi, bj));
                }
            }
        }
        let relation = StrictRelation::from_index_pairs(ground, pairs);
        Poset::from_relation(&relation).map_err(|e| match e {
            OrderError::Cycle(witness) => OrderError::QuotientCycle(witness),
            other => other,
        })
    }
}

/// Shortest cycle through `start`, found by breadth-first search over the
/// raw pairs. Deterministic because adjacency is scanned in index order.
fn cycle_witness(relation: &StrictRelation, start: usize) -> Vec<String> {
    let n = relation.ground.len();
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut queue = std::collections::VecDeque::new();
    let mut seen = vec![false; n];
    seen[start] = true;
    queue.push_back(start);
    while let Some(node) = queue.pop_front() {
        for &(a, b) in relation.pairs.iter().filter(|&&(a, _)| a == node) {
            if b == start {
                let mut path = vec![a];
                let mut cur = a;
                while cur != start {
                    cur = pred[cur].expect("predecessor recorded during search");
                    path.push(cur);
                }
                path.reverse();
                return path.into_iter().map(|i| relation.ground.name(i).to_string()).collect();
            }
            if !seen[b] {
                seen[b] = true;
                pred[b] = Some(a);
                queue.push_back(b);
            }
        }
    }
    unreachable!("cycle_witness called without a cycle through start");
}

/// Cover pairs of a transitively closed matrix.
fn reduction(n: usize, matrix: &[bool]) -> BTreeSet<(usize, usize)> {
    let mut covers = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if !matrix[a * n + b] {
                continue;
            }
            let skipped = (0..n).any(|z| matrix[a * n + z] && matrix[z * n + b]);
            if !skipped {
                covers.insert((a, b));
            }
        }
    }
    covers
}

/// A partition of a ground set into disjoint, covering, nonempty blocks.
///
/// Block order follows the order given at construction; members inside a
/// block are kept in ground declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    ground: GroundSet,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new<I, B, S>(ground: GroundSet, blocks: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut resolved: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; ground.len()];
        for block in blocks {
            let mut members = Vec::new();
            for name in block {
                let idx = ground.resolve(name.as_ref())?;
                if assigned[idx] {
                    return Err(OrderError::OverlappingBlocks(ground.name(idx).to_string()));
                }
                assigned[idx] = true;
                members.push(idx);
            }
            if members.is_empty() {
                return Err(OrderError::EmptyBlock);
            }
            members.sort_unstable();
            resolved.push(members);
        }
        if let Some(missing) = assigned.iter().position(|&a| !a) {
            return Err(OrderError::IncompletePartition(ground.name(missing).to_string()));
        }
        Ok(Partition { ground, blocks: resolved })
    }

    /// One singleton block per element, in declaration order.
    pub fn identity(ground: &GroundSet) -> Partition {
        Partition {
            ground: ground.clone(),
            blocks: (0..ground.len()).map(|i| vec![i]).collect(),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> Vec<Vec<&str>> {
        self.blocks
            .iter()
            .map(|block| block.iter().map(|&i| self.ground.name(i)).collect())
            .collect()
    }

    pub fn block_of(&self, name: &str) -> Option<usize> {
        let idx = self.ground.index_of(name)?;
        self.blocks.iter().position(|block| block.contains(&idx))
    }

    /// Canonical label: a singleton block keeps its element's name, larger
    /// blocks list members in ground order inside braces.
    pub fn block_label(&self, block: usize) -> String {
        let members = &self.blocks[block];
        if let [only] = members.as_slice() {
            self.ground.name(*only).to_string()
        } else {
            let names: Vec<&str> = members.iter().map(|&i| self.ground.name(i)).collect();
            format!("{{{}}}", names.join(","))
        }
    }

}

/// Collapses an arbitrary relation to the partial order of its strongly
/// connected components.
///
/// Returns the component partition (blocks ordered by their smallest ground
/// index) and the induced order, which is always a valid poset.
pub fn preorder_reduce(relation: &StrictRelation) -> (Partition, Poset) {
    let n = relation.ground.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in relation.pairs.iter() {
        adjacency[a].push(b);
    }

    let mut components = tarjan(n, &adjacency);
    for block in components.iter_mut() {
        block.sort_unstable();
    }
    components.sort_by_key(|block| block[0]);

    let mut component_of = vec![0usize; n];
    for (c, block) in components.iter().enumerate() {
        for &i in block {
            component_of[i] = c;
        }
    }

    let partition = Partition { ground: relation.ground.clone(), blocks: components };
    let labels: Vec<String> =
        (0..partition.block_count()).map(|b| partition.block_label(b)).collect();
    let ground = GroundSet::new(labels).expect("component labels are distinct");
    let mut pairs = BTreeSet::new();
    for &(a, b) in relation.pairs.iter() {
        let (ca, cb) = (component_of[a], component_of[b]);
        if ca != cb {
            pairs.insert((ca, cb));
        }
    }
    let condensed = StrictRelation::from_index_pairs(ground, pairs);
    let poset = Poset::from_relation(&condensed).expect("component graph is acyclic");
    (partition, poset)
}

fn tarjan(n: usize, adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adjacency: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        lowlink: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next_index: usize,
        components: Vec<Vec<usize>>,
    }

    fn visit(state: &mut State, v: usize) {
        state.index[v] = Some(state.next_index);
        state.lowlink[v] = state.next_index;
        state.next_index += 1;
        state.stack.push(v);
        state.on_stack[v] = true;
        for &w in &state.adjacency[v] {
            match state.index[w] {
                None => {
                    visit(state, w);
                    state.lowlink[v] = state.lowlink[v].min(state.lowlink[w]);
                }
                Some(wi) if state.on_stack[w] => {
                    state.lowlink[v] = state.lowlink[v].min(wi);
                }
                _ => {}
            }
        }
        if state.lowlink[v] == state.index[v].unwrap() {
            let mut component = Vec::new();
            loop {
                let w = state.stack.pop().unwrap();
                state.on_stack[w] = false;
                component.push(w);
                if w == v {
                    break;
                }
            }
            state.components.push(component);
        }
    }

    let mut state = State {
        adjacency,
        index: vec![None; n],
        lowlink: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next_index: 0,
        components: Vec::new(),
    };
    for v in 0..n {
        if state.index[v].is_none() {
            visit(&mut state, v);
        }
    }
    state.components
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbol = match self {
            Comparison::Less => "≤",
            Comparison::Greater => "≥",
            Comparison::Equal => "=",
            Comparison::Incomparable => "?",
        };
        f.write_str(symbol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ground(names: &[&str]) -> GroundSet {
        GroundSet::new(names.iter().copied()).unwrap()
    }

    fn poset(names: &[&str], covers: &[(&str, &str)]) -> Poset {
        Poset::from_covers(ground(names), covers.iter().copied()).unwrap()
    }

    fn pair_list(rel: &StrictRelation) -> Vec<(String, String)> {
        rel.pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn closure_adds_two_step_pair() {
        let p = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(p.lt("a", "c").unwrap());
        assert_eq!(p.closure().len(), 3);
    }

    #[test]
    fn two_cycle_is_rejected_with_witness() {
        let rel = StrictRelation::new(ground(&["a", "b"]), [("a", "b"), ("b", "a")]).unwrap();
        let err = Poset::from_relation(&rel).unwrap_err();
        assert_eq!(err, OrderError::Cycle(vec!["a".into(), "b".into()]));
        assert_eq!(err.to_string(), "cycle: a < b < a");
    }

    #[test]
    fn long_cycle_witness_is_closed() {
        let rel = StrictRelation::new(
            ground(&["a", "b", "c", "d"]),
            [("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")],
        )
        .unwrap();
        let err = Poset::from_relation(&rel).unwrap_err();
        assert_eq!(err, OrderError::Cycle(vec!["a".into(), "b".into(), "c".into()]));
    }

    #[test]
    fn reflexive_pair_is_rejected_at_construction() {
        let err = StrictRelation::new(ground(&["a"]), [("a", "a")]).unwrap_err();
        assert_eq!(err, OrderError::ReflexivePair("a".into()));
    }

    #[test]
    fn duplicate_element_is_rejected() {
        let err = GroundSet::new(["a", "b", "a"]).unwrap_err();
        assert_eq!(err, OrderError::DuplicateElement("a".into()));
    }

    #[test]
    fn chain_has_greatest_top() {
        let p = poset(&["11", "21", "31"], &[("11", "21"), ("21", "31")]);
        assert_eq!(p.extremes().greatest.as_deref(), Some("31"));
    }

    #[test]
    fn hasse_of_chain_has_two_covers() {
        let p = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(
            pair_list(&p.hasse()),
            vec![("a".to_string(), "b".to_string()), ("b".to_string(), "c".to_string())]
        );
    }

    /// Independent reduction: drop every closure pair implied by a two-step path.
    fn brute_reduction(p: &Poset) -> BTreeSet<(String, String)> {
        let closure: Vec<(String, String)> = pair_list(&p.closure());
        let has = |a: &str, b: &str| closure.iter().any(|(x, y)| x == a && y == b);
        closure
            .iter()
            .filter(|(a, b)| {
                !p.ground().iter().any(|z| z != a && z != b && has(a, z) && has(z, b))
            })
            .cloned()
            .collect()
    }

    #[test]
    fn hasse_of_diamond_drops_transitive_pair() {
        let p = poset(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("a", "d")],
        );
        let expected: BTreeSet<(String, String)> = brute_reduction(&p);
        let actual: BTreeSet<(String, String)> = pair_list(&p.hasse()).into_iter().collect();
        assert_eq!(actual, expected);
        assert!(!p.hasse().contains("a", "d"));
        assert_eq!(p.hasse().len(), 4);
    }

    #[test]
    fn join_of_v_shape_is_the_top() {
        let p = poset(&["12", "22", "32"], &[("12", "22"), ("32", "22")]);
        assert_eq!(p.join("12", "32").unwrap(), Some("22"));
        assert_eq!(p.join("12", "12").unwrap(), Some("12"));
    }

    #[test]
    fn join_is_none_on_antichain_and_on_two_minimal_upper_bounds() {
        let antichain = poset(&["a", "b"], &[]);
        assert_eq!(antichain.join("a", "b").unwrap(), None);
        // a and b share two incomparable upper bounds.
        let p = poset(&["a", "b", "u", "v"], &[("a", "u"), ("b", "u"), ("a", "v"), ("b", "v")]);
        assert_eq!(p.join("a", "b").unwrap(), None);
    }

    #[test]
    fn join_unknown_element_errors() {
        let p = poset(&["a"], &[]);
        assert_eq!(p.join("a", "z").unwrap_err(), OrderError::UnknownElement("z".into()));
    }

    #[test]
    fn sup_of_everything_in_upper_semilattice_is_greatest() {
        let p = poset(&["a", "b", "t"], &[("a", "t"), ("b", "t")]);
        assert_eq!(p.sup_set(&["a", "b", "t"]).unwrap(), Some("t"));
    }

    #[test]
    fn sup_and_inf_of_empty_subset_are_none() {
        let p = poset(&["a", "b"], &[("a", "b")]);
        let empty: &[&str] = &[];
        assert_eq!(p.sup_set(empty).unwrap(), None);
        assert_eq!(p.inf_set(empty).unwrap(), None);
    }

    #[test]
    fn inf_of_singleton_is_the_element() {
        let p = poset(&["a", "b"], &[]);
        assert_eq!(p.inf_set(&["b"]).unwrap(), Some("b"));
    }

    #[test]
    fn profile_of_v_shape_is_upper_only() {
        let p = poset(&["13", "23", "33"], &[("13", "33"), ("23", "33")]);
        let profile = p.structure_profile();
        assert!(profile.is_upper_semilattice);
        assert!(!profile.is_lower_semilattice);
        assert!(!profile.is_total_order);
        assert_eq!(profile.extremes.greatest.as_deref(), Some("33"));
    }

    #[test]
    fn profile_of_chain_is_total_and_both_semilattices() {
        let p = poset(&["w4", "w3", "w2", "w1"], &[("w4", "w3"), ("w3", "w2"), ("w2", "w1")]);
        let profile = p.structure_profile();
        assert!(profile.is_total_order);
        assert!(profile.is_upper_semilattice);
        assert!(profile.is_lower_semilattice);
    }

    #[test]
    fn profile_of_empty_order_has_no_structure() {
        let p = poset(&["a", "b", "c", "d"], &[]);
        let profile = p.structure_profile();
        assert!(!profile.is_upper_semilattice);
        assert!(!profile.is_lower_semilattice);
        assert!(!profile.is_total_order);
        assert_eq!(profile.extremes.maximal, vec!["a", "b", "c", "d"]);
        assert_eq!(profile.extremes.greatest, None);
    }

    #[test]
    fn extremes_of_lower_semilattice_fixture() {
        let p = poset(&["w1", "w2", "w3", "w4"], &[("w4", "w2"), ("w2", "w1"), ("w2", "w3")]);
        let extremes = p.extremes();
        assert_eq!(extremes.maximal, vec!["w1", "w3"]);
        assert_eq!(extremes.least.as_deref(), Some("w4"));
        assert_eq!(extremes.greatest, None);
    }

    #[test]
    fn restrict_keeps_inherited_order_only() {
        let p = poset(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]);
        let sub = p.restrict(&["a", "c", "d"]).unwrap();
        assert_eq!(sub.ground().elements(), &["a", "c", "d"]);
        assert!(sub.lt("a", "c").unwrap());
        assert!(sub.hasse().contains("a", "c"));
        assert!(!sub.hasse().contains("a", "d"));
    }

    #[test]
    fn quotient_of_two_chains_is_total() {
        let p = poset(&["w1", "w2", "w3", "w4"], &[("w2", "w1"), ("w4", "w3")]);
        let partition =
            Partition::new(p.ground().clone(), [vec!["w1", "w3"], vec!["w2", "w4"]]).unwrap();
        let q = p.quotient(&partition).unwrap();
        assert_eq!(q.ground().elements(), &["{w1,w3}", "{w2,w4}"]);
        assert!(q.structure_profile().is_total_order);
        assert!(q.lt("{w2,w4}", "{w1,w3}").unwrap());
        assert_eq!(q.extremes().greatest.as_deref(), Some("{w1,w3}"));
    }

    #[test]
    fn quotient_with_identity_partition_is_the_same_poset() {
        let p = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let q = p.quotient(&Partition::identity(p.ground())).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn quotient_cycle_is_reported_with_block_witness() {
        let p = poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let partition = Partition::new(p.ground().clone(), [vec!["a", "c"], vec!["b"]]).unwrap();
        let err = p.quotient(&partition).unwrap_err();
        assert_eq!(err, OrderError::QuotientCycle(vec!["{a,c}".into(), "b".into()]));
    }

    #[test]
    fn quotient_ground_mismatch_errors() {
        let p = poset(&["a", "b"], &[("a", "b")]);
        let other = ground(&["x", "y"]);
        let partition = Partition::new(other, [vec!["x", "y"]]).unwrap();
        assert_eq!(p.quotient(&partition).unwrap_err(), OrderError::GroundMismatch);
    }

    #[test]
    fn partition_validation_errors() {
        let g = ground(&["a", "b"]);
        assert_eq!(
            Partition::new(g.clone(), [vec!["a"], vec!["a", "b"]]).unwrap_err(),
            OrderError::OverlappingBlocks("a".into())
        );
        assert_eq!(
            Partition::new(g.clone(), [vec!["a"]]).unwrap_err(),
            OrderError::IncompletePartition("b".into())
        );
        let empty: Vec<Vec<&str>> = vec![vec!["a"], vec![]];
        assert_eq!(Partition::new(g, empty).unwrap_err(), OrderError::EmptyBlock);
    }

    #[test]
    fn preorder_reduce_collapses_a_two_cycle() {
        let rel = StrictRelation::new(
            ground(&["a", "b", "c"]),
            [("a", "b"), ("b", "a"), ("b", "c")],
        )
        .unwrap();
        let (partition, order) = preorder_reduce(&rel);
        assert_eq!(partition.blocks(), vec![vec!["a", "b"], vec!["c"]]);
        assert_eq!(order.ground().elements(), &["{a,b}", "c"]);
        assert!(order.lt("{a,b}", "c").unwrap());
    }

    #[test]
    fn preorder_reduce_is_identity_like_on_posets() {
        let rel = StrictRelation::new(ground(&["a", "b"]), [("a", "b")]).unwrap();
        let (partition, order) = preorder_reduce(&rel);
        assert_eq!(partition.block_count(), 2);
        assert_eq!(order.ground().elements(), &["a", "b"]);
        assert!(order.lt("a", "b").unwrap());
    }

    #[test]
    fn preorder_reduce_collapses_full_cycle_to_point() {
        let rel = StrictRelation::new(
            ground(&["a", "b", "c"]),
            [("a", "b"), ("b", "c"), ("c", "a")],
        )
        .unwrap();
        let (partition, order) = preorder_reduce(&rel);
        assert_eq!(partition.block_count(), 1);
        assert_eq!(order.ground().elements(), &["{a,b,c}"]);
        assert!(order.closure().is_empty());
    }

    #[test]
    fn transitive_closure_handles_cycles() {
        let rel = StrictRelation::new(ground(&["a", "b"]), [("a", "b"), ("b", "a")]).unwrap();
        let closed = transitive_closure(&rel);
        assert_eq!(closed.len(), 2);
        let closed_again = transitive_closure(&closed);
        assert_eq!(closed, closed_again);
    }

    #[test]
    fn empty_and_singleton_grounds_are_degenerate_lattices() {
        let empty = Poset::from_covers(GroundSet::new(Vec::<String>::new()).unwrap(), Vec::<(
            String,
            String,
        )>::new())
        .unwrap();
        let profile = empty.structure_profile();
        assert!(profile.is_upper_semilattice && profile.is_total_order);
        assert_eq!(profile.extremes.greatest, None);

        let single = poset(&["a"], &[]);
        let profile = single.structure_profile();
        assert!(profile.is_total_order);
        assert_eq!(profile.extremes.greatest.as_deref(), Some("a"));
        assert_eq!(profile.extremes.least.as_deref(), Some("a"));
    }
}
