//! Finite posets with integer labels, tagged by the classical family whose
//! Lie poset algebra they generate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on the poset size accepted by [`enumerate_height_one`].
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(PosetError::Malformed(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("malformed poset document: {0}")]
    Malformed(String),
    #[error("empty poset")]
    Empty,
    #[error("duplicate element {0}")]
    DuplicateElement(i32),
    #[error("relation ({0}, {1}) mentions an element outside the poset")]
    UnknownElement(i32, i32),
    #[error("element set does not have the shape required by family {family}: {detail}")]
    Shape { family: Family, detail: String },
    #[error("cycle: the relations force {0} < {0}")]
    Cycle(i32),
    #[error("size {0} outside the supported range 1..={ENUMERATION_LIMIT}")]
    SizeGuard(usize),
}

impl PosetError {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            PosetError::Malformed(_) => "malformed",
            PosetError::Empty => "empty",
            PosetError::DuplicateElement(_) => "duplicate_element",
            PosetError::UnknownElement(..) => "unknown_element",
            PosetError::Shape { .. } => "shape",
            PosetError::Cycle(_) => "cycle",
            PosetError::SizeGuard(_) => "size_guard",
        }
    }
}

/// The on-disk JSON form of a poset. Relations may be any generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub family: Family,
    pub elements: Vec<i32>,
    pub relations: Vec<[i32; 2]>,
}

/// A finite poset: sorted integer labels and a strict, transitively closed
/// order relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    family: Family,
    elements: Vec<i32>,
    relation: BTreeSet<(i32, i32)>,
}

impl Poset {
    /// Builds the poset generated by `relations`, applying transitive closure.
    pub fn new(
        family: Family,
        elements: impl IntoIterator<Item = i32>,
        relations: impl IntoIterator<Item = (i32, i32)>,
    ) -> Result<Self, PosetError> {
        let mut seen = BTreeSet::new();
        for e in elements {
            if !seen.insert(e) {
                return Err(PosetError::DuplicateElement(e));
            }
        }
        if seen.is_empty() {
            return Err(PosetError::Empty);
        }
        let elements: Vec<i32> = seen.into_iter().collect();
        check_shape(family, &elements)?;

        let members: BTreeSet<i32> = elements.iter().copied().collect();
        let mut generators = BTreeSet::new();
        for (a, b) in relations {
            if !members.contains(&a) || !members.contains(&b) {
                return Err(PosetError::UnknownElement(a, b));
            }
            if a == b {
                return Err(PosetError::Cycle(a));
            }
            generators.insert((a, b));
        }
        let relation = transitive_closure(&generators);
        if let Some(&(a, _)) = relation.iter().find(|(a, b)| a == b) {
            return Err(PosetError::Cycle(a));
        }
        Ok(Self {
            family,
            elements,
            relation,
        })
    }

    pub fn from_document(doc: &PosetDocument) -> Result<Self, PosetError> {
        Self::new(
            doc.family,
            doc.elements.iter().copied(),
            doc.relations.iter().map(|&[a, b]| (a, b)),
        )
    }

    pub fn to_document(&self) -> PosetDocument {
        PosetDocument {
            family: self.family,
            elements: self.elements.clone(),
            relations: self.hasse().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// Chain `1 < 2 < ... < n` in family A.
    pub fn chain(n: usize) -> Result<Self, PosetError> {
        let n = n as i32;
        Self::new(Family::A, 1..=n, (1..n).map(|i| (i, i + 1)))
    }

    /// `n` pairwise incomparable elements in family A.
    pub fn antichain(n: usize) -> Result<Self, PosetError> {
        Self::new(Family::A, 1..=n as i32, [])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn elements(&self) -> &[i32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The strict order as a set of pairs `(a, b)` with `a < b`.
    pub fn relation(&self) -> &BTreeSet<(i32, i32)> {
        &self.relation
    }

    pub fn less(&self, a: i32, b: i32) -> bool {
        self.relation.contains(&(a, b))
    }

    /// Number of edges in a longest chain.
    pub fn height(&self) -> usize {
        let mut memo: BTreeMap<i32, usize> = BTreeMap::new();
        // Longest chain starting at x; the relation is acyclic so recursion
        // terminates. Process in reverse topological order to keep it iterative.
        for &x in self.topological_order().iter().rev() {
            let best = self
                .relation
                .range((x, i32::MIN)..=(x, i32::MAX))
                .map(|&(_, y)| memo[&y] + 1)
                .max()
                .unwrap_or(0);
            memo.insert(x, best);
        }
        memo.values().copied().max().unwrap_or(0)
    }

    /// Cover pairs: `a < b` with nothing strictly between.
    pub fn hasse(&self) -> BTreeSet<(i32, i32)> {
        self.relation
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !self
                    .elements
                    .iter()
                    .any(|&z| self.less(a, z) && self.less(z, b))
            })
            .collect()
    }

    pub fn hasse_graph_properties(&self) -> HasseProperties {
        let idx: BTreeMap<i32, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let n = self.elements.len();
        let mut adj = vec![Vec::new(); n];
        let edges = self.hasse();
        for &(a, b) in &edges {
            adj[idx[&a]].push(idx[&b]);
            adj[idx[&b]].push(idx[&a]);
        }
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut components = 0;
        let mut bipartite = true;
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            components += 1;
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are colored");
                for &v in &adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => bipartite = false,
                        Some(_) => {}
                    }
                }
            }
        }
        HasseProperties {
            connected: components == 1,
            acyclic: edges.len() + components == n,
            bipartite,
            components,
        }
    }

    /// Checks the family axioms.
    pub fn validate_family(&self) -> FamilyReport {
        let mut violations = Vec::new();
        if self.family == Family::A {
            return FamilyReport { violations };
        }
        for &(i, j) in &self.relation {
            if i > j {
                violations.push(Violation {
                    condition: 1,
                    witness: (i, j),
                    detail: format!("{i} precedes {j} but {i} > {j}"),
                });
            }
        }
        for &(i, j) in &self.relation {
            if i != -j && !self.less(-j, -i) {
                violations.push(Violation {
                    condition: 2,
                    witness: (i, j),
                    detail: format!("{i} precedes {j} but {} does not precede {}", -j, -i),
                });
            }
        }
        if matches!(self.family, Family::B | Family::D) {
            for &(i, j) in &self.relation {
                if i == -j {
                    violations.push(Violation {
                        condition: 3,
                        witness: (i, j),
                        detail: format!("{i} precedes {j}"),
                    });
                }
            }
        }
        FamilyReport { violations }
    }

    /// The order complex: `k`-simplices are chains `x_0 < ... < x_k`.
    pub fn nerve(&self) -> SimplicialComplex {
        let order = self.topological_order();
        let pos: BTreeMap<i32, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut levels: Vec<Vec<Vec<i32>>> = vec![order.iter().map(|&e| vec![e]).collect()];
        loop {
            let prev = levels.last().expect("levels starts non-empty");
            let mut next: Vec<Vec<i32>> = Vec::new();
            for chain in prev {
                let top = *chain.last().expect("chains are non-empty");
                for &(_, y) in self.relation.range((top, i32::MIN)..=(top, i32::MAX)) {
                    let mut c = chain.clone();
                    c.push(y);
                    next.push(c);
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by_key(|c| c.iter().map(|e| pos[e]).collect::<Vec<_>>());
            levels.push(next);
        }
        SimplicialComplex {
            simplices_by_dim: levels,
        }
    }

    /// Elements listed so that `a < b` implies `a` comes first; ties keep
    /// integer order.
    fn topological_order(&self) -> Vec<i32> {
        let mut indeg: BTreeMap<i32, usize> = self.elements.iter().map(|&e| (e, 0)).collect();
        for &(_, b) in &self.relation {
            *indeg.get_mut(&b).expect("relation is within elements") += 1;
        }
        let mut ready: BTreeSet<i32> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&e, _)| e)
            .collect();
        let mut out = Vec::with_capacity(self.elements.len());
        while let Some(x) = ready.pop_first() {
            out.push(x);
            for &(_, y) in self.relation.range((x, i32::MIN)..=(x, i32::MAX)) {
                let d = indeg.get_mut(&y).expect("relation is within elements");
                *d -= 1;
                if *d == 0 {
                    ready.insert(y);
                }
            }
        }
        out
    }
}

fn check_shape(family: Family, elements: &[i32]) -> Result<(), PosetError> {
    let expected: Vec<i32> = match family {
        Family::A => (1..=elements.len() as i32).collect(),
        Family::B => {
            let n = (elements.len() as i32 - 1) / 2;
            (-n..=n).collect()
        }
        Family::C | Family::D => {
            let n = elements.len() as i32 / 2;
            (-n..=-1).chain(1..=n).collect()
        }
    };
    if expected == elements {
        Ok(())
    } else {
        let detail = match family {
            Family::A => "expected {1, ..., N}",
            Family::B => "expected {-n, ..., -1, 0, 1, ..., n}",
            Family::C | Family::D => "expected {-n, ..., -1, 1, ..., n}",
        };
        Err(PosetError::Shape {
            family,
            detail: detail.to_string(),
        })
    }
}

/// Transitive closure of a relation (reflexive pairs may appear if the
/// input has a cycle).
pub fn transitive_closure(pairs: &BTreeSet<(i32, i32)>) -> BTreeSet<(i32, i32)> {
    let mut succ: BTreeMap<i32, BTreeSet<i32>> = BTreeMap::new();
    for &(a, b) in pairs {
        succ.entry(a).or_default().insert(b);
    }
    let mut out = BTreeSet::new();
    for &start in succ.keys() {
        let mut stack: Vec<i32> = succ[&start].iter().copied().collect();
        let mut seen = BTreeSet::new();
        while let Some(x) = stack.pop() {
            if !seen.insert(x) {
                continue;
            }
            out.insert((start, x));
            if let Some(next) = succ.get(&x) {
                stack.extend(next.iter().copied());
            }
        }
    }
    out
}

pub fn parse_poset(document: &str) -> Result<Poset, PosetError> {
    let doc: PosetDocument =
        serde_json::from_str(document).map_err(|e| PosetError::Malformed(e.to_string()))?;
    Poset::from_document(&doc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HasseProperties {
    pub connected: bool,
    pub acyclic: bool,
    pub bipartite: bool,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Which axiom failed: 1 (order-compatible labels), 2 (symmetry under
    /// negation), 3 (no `-i < i`).
    pub condition: u8,
    pub witness: (i32, i32),
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub violations: Vec<Violation>,
}

impl FamilyReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, condition: u8) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

/// Order complex of a poset, simplices grouped by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub simplices_by_dim: Vec<Vec<Vec<i32>>>,
}

impl SimplicialComplex {
    pub fn count(&self, k: usize) -> usize {
        self.simplices_by_dim.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<i32>] {
        self.simplices_by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    /// Largest `k` with a `k`-simplex.
    pub fn dimension(&self) -> usize {
        self.simplices_by_dim.len().saturating_sub(1)
    }
}

/// All connected posets on `n` elements of height at most one, one per
/// isomorphism class. Minimal elements get the labels `1..=a`, maximal ones
/// `a+1..=n`.
pub fn enumerate_height_one(n: usize) -> Result<Vec<Poset>, PosetError> {
    if n == 0 || n > ENUMERATION_LIMIT {
        return Err(PosetError::SizeGuard(n));
    }
    if n == 1 {
        return Ok(vec![Poset::antichain(1)?]);
    }
    let mut out = Vec::new();
    for a in 1..n {
        let b = n - a;
        let edges = a * b;
        let min_perms = permutations(a);
        let max_perms = permutations(b);
        let mut classes: BTreeSet<u64> = BTreeSet::new();
        for mask in 1u64..(1u64 << edges) {
            if !bipartite_connected(mask, a, b) {
                continue;
            }
            let canon = min_perms
                .iter()
                .flat_map(|p| max_perms.iter().map(move |q| relabel(mask, a, b, p, q)))
                .min()
                .expect("at least the identity relabeling");
            classes.insert(canon);
        }
        for mask in classes {
            let rel = (0..edges)
                .filter(|e| mask >> e & 1 == 1)
                .map(|e| ((e / b + 1) as i32, (a + e % b + 1) as i32));
            out.push(Poset::new(Family::A, 1..=n as i32, rel)?);
        }
    }
    Ok(out)
}

/// Bit `i * b + j` encodes minimal element `i` below maximal element `j`.
fn relabel(mask: u64, a: usize, b: usize, p: &[usize], q: &[usize]) -> u64 {
    let mut out = 0u64;
    for i in 0..a {
        for j in 0..b {
            if mask >> (i * b + j) & 1 == 1 {
                out |= 1 << (p[i] * b + q[j]);
            }
        }
    }
    out
}

fn bipartite_connected(mask: u64, a: usize, b: usize) -> bool {
    let n = a + b;
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        let nbrs: Vec<usize> = if u < a {
            (0..b).filter(|&j| mask >> (u * b + j) & 1 == 1).map(|j| a + j).collect()
        } else {
            (0..a).filter(|&i| mask >> (i * b + (u - a)) & 1 == 1).collect()
        };
        for v in nbrs {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut p, &mut out);
    out
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, p, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

/// Fig. 1 style example: `1 < 2 < 3, 4`.
pub fn example_tree_poset() -> Poset {
    Poset::new(Family::A, 1..=4, [(1, 2), (2, 3), (2, 4)]).expect("valid poset")
}

/// The type-C poset on `{±1, ±2, ±3}` with `-1 < 2, 3`, `-2 < 1, 3`,
/// `-3 < 1, 2`.
pub fn example_type_c_poset() -> Poset {
    Poset::new(
        Family::C,
        [-3, -2, -1, 1, 2, 3],
        [(-1, 2), (-1, 3), (-2, 1), (-2, 3), (-3, 1), (-3, 2)],
    )
    .expect("valid poset")
}
