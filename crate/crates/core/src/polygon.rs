//! Representations of an n-polygon and the dihedral group acting on it.
//!
//! An n-polygon is a Hamiltonian cycle through the vertices `0..n`, which sit at
//! the angles `2πk/n` on the unit circle. It can be written down in three ways:
//!
//! * [`VertexCycle`]: the vertices in visiting order, normalised to start at 0.
//! * [`EdgeWord`]: the counterclockwise step lengths read along the path.
//! * [`ChordSet`]: the unordered set of chords, i.e. the figure itself.
//!
//! Symmetries act on chord sets. A rotation of the figure leaves the edge word
//! unchanged, a reflection complements every step (`e ↦ n − e`), and reading the
//! path backwards reverses and complements the word. Canonical keys quotient out
//! the starting vertex and traversal direction (and, for [`Relation::Similar`],
//! reflections) by taking the least word over the whole orbit.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counterclockwise step lengths of a closed Hamiltonian walk starting at vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeWord {
    n: u32,
    steps: Vec<u32>,
}

impl EdgeWord {
    /// Validates `steps` as a cycle of sides on `n` vertices.
    ///
    /// The walk `0, s_1, s_2, …` (partial sums mod `n`) must visit every vertex
    /// exactly once and return to 0 on the last step.
    pub fn new(n: u32, steps: Vec<u32>) -> Result<Self> {
        check_shape(n, &steps)?;
        let mut visited = vec![false; n as usize];
        visited[0] = true;
        let mut at = 0u32;
        for (i, &step) in steps.iter().enumerate() {
            at = (at + step) % n;
            let taken = i + 1;
            if taken == steps.len() {
                if at != 0 {
                    return Err(Error::NotClosed { end: at });
                }
            } else if at == 0 {
                return Err(Error::PrematureClosure { at: taken, n });
            } else if std::mem::replace(&mut visited[at as usize], true) {
                return Err(Error::RevisitedVertex { vertex: at, at: taken });
            }
        }
        Ok(EdgeWord { n, steps })
    }

    /// The convex regular n-gon `(1, 1, …, 1)`.
    pub fn regular(n: u32) -> Result<Self> {
        EdgeWord::new(n, vec![1; n as usize])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<u32> {
        self.steps
    }

    pub fn vertex_cycle(&self) -> VertexCycle {
        vertex_cycle_from_edge_word(self)
    }

    /// The word of the mirror image under `k ↦ −k`.
    pub fn complement(&self) -> Vec<u32> {
        self.steps.iter().map(|&e| self.n - e).collect()
    }

    /// The word obtained by walking the same path backwards.
    pub fn reversed_complement(&self) -> Vec<u32> {
        self.steps.iter().rev().map(|&e| self.n - e).collect()
    }

    /// True for words of the form `(a, b, a, b, …)` of even length.
    pub fn is_alternating(&self) -> bool {
        self.steps.len() % 2 == 0 && self.steps.iter().zip(self.steps.iter().skip(2)).all(|(x, y)| x == y)
    }

    /// Least word over the orbit of readings, by explicit enumeration.
    pub fn canonical_key(&self, relation: Relation) -> CanonicalKey {
        let mut best: Option<Vec<u32>> = None;
        for base in self.orbit_bases(relation) {
            for shift in 0..base.len() {
                let candidate: Vec<u32> = base[shift..].iter().chain(&base[..shift]).copied().collect();
                if best.as_ref().is_none_or(|b| candidate < *b) {
                    best = Some(candidate);
                }
            }
        }
        CanonicalKey {
            relation,
            word: best.expect("edge words are never empty"),
        }
    }

    /// Same result as [`EdgeWord::canonical_key`], using a linear-time least
    /// rotation per orbit base instead of comparing all `n` rotations.
    pub fn canonical_key_fast(&self, relation: Relation) -> CanonicalKey {
        let word = self
            .orbit_bases(relation)
            .into_iter()
            .map(|base| {
                let start = least_rotation(&base);
                base[start..].iter().chain(&base[..start]).copied().collect::<Vec<u32>>()
            })
            .min()
            .expect("at least one orbit base");
        CanonicalKey { relation, word }
    }

    /// Symmetry profile read off the word alone.
    ///
    /// Each rotation fixing the figure corresponds to exactly one reading
    /// (start, direction) that reproduces the word, and each fixing reflection to
    /// one reading that reproduces its complement.
    pub fn symmetry_profile(&self) -> SymmetryProfile {
        let complement = self.complement();
        let mut rotation_order = 0;
        let mut axes = 0;
        for base in [self.steps.clone(), self.reversed_complement()] {
            for shift in 0..base.len() {
                let reading = base[shift..].iter().chain(&base[..shift]);
                if reading.clone().eq(self.steps.iter()) {
                    rotation_order += 1;
                }
                if reading.eq(complement.iter()) {
                    axes += 1;
                }
            }
        }
        SymmetryProfile { axes, rotation_order }
    }

    fn orbit_bases(&self, relation: Relation) -> Vec<Vec<u32>> {
        let mut bases = vec![self.steps.clone(), self.reversed_complement()];
        if relation == Relation::Similar {
            bases.push(self.complement());
            bases.push(self.steps.iter().rev().copied().collect());
        }
        bases
    }
}

impl fmt::Display for EdgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.steps)
    }
}

fn check_shape(n: u32, steps: &[u32]) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if steps.len() != n as usize {
        return Err(Error::WrongLength {
            expected: n as usize,
            got: steps.len(),
        });
    }
    if let Some((index, &step)) = steps.iter().enumerate().find(|(_, &e)| e == 0 || e >= n) {
        return Err(Error::BadStepRange { index, step, max: n - 1 });
    }
    Ok(())
}

/// Start index of the lexicographically least rotation of `s`.
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i <= j {
                    i = j + 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if j <= i {
                    j = i + 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// Visiting order of a Hamiltonian cycle, normalised so that `order[0] == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexCycle {
    order: Vec<u32>,
}

impl VertexCycle {
    pub fn new(order: Vec<u32>) -> Result<Self> {
        let n = u32::try_from(order.len()).unwrap_or(u32::MAX);
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if order[0] != 0 {
            return Err(Error::NotNormalized(order[0]));
        }
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= n || std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::NotPermutation { n });
            }
        }
        Ok(VertexCycle { order })
    }

    /// Accepts any cyclic starting point and rotates it to begin at vertex 0.
    pub fn from_any_start(mut order: Vec<u32>) -> Result<Self> {
        let n = order.len() as u32;
        let start = order.iter().position(|&v| v == 0).ok_or(Error::NotPermutation { n })?;
        order.rotate_left(start);
        VertexCycle::new(order)
    }

    pub fn n(&self) -> u32 {
        self.order.len() as u32
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn edge_word(&self) -> EdgeWord {
        edge_word_from_vertex_cycle(self)
    }

    pub fn chord_set(&self) -> ChordSet {
        chord_set(self)
    }
}

impl fmt::Display for VertexCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.order)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

pub fn vertex_cycle_from_edge_word(w: &EdgeWord) -> VertexCycle {
    let n = w.n;
    let mut order = Vec::with_capacity(n as usize);
    let mut at = 0;
    for &step in &w.steps {
        order.push(at);
        at = (at + step) % n;
    }
    VertexCycle { order }
}

pub fn edge_word_from_vertex_cycle(c: &VertexCycle) -> EdgeWord {
    let n = c.n();
    let order = &c.order;
    let steps = (0..order.len())
        .map(|i| {
            let next = order[(i + 1) % order.len()];
            (next + n - order[i]) % n
        })
        .collect();
    EdgeWord { n, steps }
}

/// The polygon as a figure: `n` unordered chords, stored as sorted `(p, q)`
/// pairs with `p < q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordSet {
    n: u32,
    chords: Vec<(u32, u32)>,
}

impl ChordSet {
    /// Builds a chord set from arbitrary pairs, checking that they form a single
    /// Hamiltonian cycle on `0..n`.
    pub fn new(n: u32, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let mut chords = Vec::new();
        for (p, q) in pairs {
            let (p, q) = (p % n, q % n);
            if p == q {
                return Err(Error::InvalidChordSet(format!("loop at vertex {p}")));
            }
            chords.push((p.min(q), p.max(q)));
        }
        chords.sort_unstable();
        chords.dedup();
        if chords.len() != n as usize {
            return Err(Error::InvalidChordSet(format!(
                "expected {n} distinct chords, got {}",
                chords.len()
            )));
        }
        let set = ChordSet { n, chords };
        let mut degree = vec![0u32; n as usize];
        for &(p, q) in &set.chords {
            degree[p as usize] += 1;
            degree[q as usize] += 1;
        }
        if let Some(v) = degree.iter().position(|&d| d != 2) {
            return Err(Error::InvalidChordSet(format!("vertex {v} has degree {}", degree[v])));
        }
        let walk = set.walk();
        if walk.len() != n as usize {
            return Err(Error::InvalidChordSet(format!(
                "chords split into several cycles (the one through 0 has {} vertices)",
                walk.len()
            )));
        }
        Ok(set)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn chords(&self) -> &[(u32, u32)] {
        &self.chords
    }

    pub fn contains(&self, p: u32, q: u32) -> bool {
        self.chords.binary_search(&(p.min(q), p.max(q))).is_ok()
    }

    /// Walks the cycle from vertex 0 towards its smaller neighbour.
    pub fn vertex_cycle(&self) -> VertexCycle {
        VertexCycle { order: self.walk() }
    }

    fn adjacency(&self) -> Vec<[u32; 2]> {
        let mut adj = vec![[u32::MAX; 2]; self.n as usize];
        for &(p, q) in &self.chords {
            for (from, to) in [(p, q), (q, p)] {
                let slot = &mut adj[from as usize];
                if slot[0] == u32::MAX {
                    slot[0] = to;
                } else {
                    slot[1] = to;
                }
            }
        }
        adj
    }

    // Follows the chords from 0 until the walk closes; on a 2-regular set this
    // returns the component containing 0.
    fn walk(&self) -> Vec<u32> {
        let adj = self.adjacency();
        let mut order = vec![0];
        let mut prev = 0;
        let mut at = adj[0][0].min(adj[0][1]);
        while at != 0 && order.len() <= self.n as usize {
            order.push(at);
            let [x, y] = adj[at as usize];
            let next = if x == prev { y } else { x };
            prev = at;
            at = next;
        }
        order
    }
}

pub fn chord_set(c: &VertexCycle) -> ChordSet {
    let order = &c.order;
    let mut chords: Vec<(u32, u32)> = (0..order.len())
        .map(|i| {
            let (p, q) = (order[i], order[(i + 1) % order.len()]);
            (p.min(q), p.max(q))
        })
        .collect();
    chords.sort_unstable();
    ChordSet { n: c.n(), chords }
}

/// An element of the dihedral group of order `2n` acting on the vertex labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `k ↦ k + c (mod n)`
    Rotation(u32),
    /// `k ↦ j − k (mod n)`
    Reflection(u32),
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry::Rotation(0);

    pub fn apply(self, n: u32, k: u32) -> u32 {
        match self {
            Symmetry::Rotation(c) => (k + c) % n,
            Symmetry::Reflection(j) => (j % n + n - k % n) % n,
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(self, other: Symmetry, n: u32) -> Symmetry {
        use Symmetry::*;
        match (self, other) {
            (Rotation(c), Rotation(d)) => Rotation((c + d) % n),
            (Rotation(c), Reflection(j)) => Reflection((j + c) % n),
            (Reflection(j), Rotation(c)) => Reflection((j % n + n - c % n) % n),
            (Reflection(j), Reflection(i)) => Rotation((j % n + n - i % n) % n),
        }
    }

    /// All `2n` elements: the rotations first, then the reflections.
    pub fn all(n: u32) -> impl Iterator<Item = Symmetry> {
        (0..n).map(Symmetry::Rotation).chain((0..n).map(Symmetry::Reflection))
    }
}

pub fn act(g: Symmetry, x: &ChordSet) -> ChordSet {
    let n = x.n;
    let mut chords: Vec<(u32, u32)> = x
        .chords
        .iter()
        .map(|&(p, q)| {
            let (p, q) = (g.apply(n, p), g.apply(n, q));
            (p.min(q), p.max(q))
        })
        .collect();
    chords.sort_unstable();
    ChordSet { n, chords }
}

/// Number of reflection axes and rotations that fix a figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetryProfile {
    pub axes: u32,
    pub rotation_order: u32,
}

impl SymmetryProfile {
    /// A figure's stabiliser is cyclic or dihedral, so whenever some reflection
    /// fixes it the reflection count equals the rotation count.
    pub fn is_consistent(&self, n: u32) -> bool {
        self.rotation_order > 0
            && n % self.rotation_order == 0
            && (self.axes == 0 || self.axes == self.rotation_order)
    }
}

pub fn symmetry_profile(x: &ChordSet) -> SymmetryProfile {
    let n = x.n;
    let adj = x.adjacency();
    // g is a bijection, so mapping every chord into the set means g fixes it.
    let fixes = |g: Symmetry| {
        x.chords.iter().all(|&(p, q)| {
            let (gp, gq) = (g.apply(n, p), g.apply(n, q));
            adj[gp as usize].contains(&gq)
        })
    };
    SymmetryProfile {
        axes: (0..n).filter(|&j| fixes(Symmetry::Reflection(j))).count() as u32,
        rotation_order: (0..n).filter(|&c| fixes(Symmetry::Rotation(c))).count() as u32,
    }
}

/// Which symmetries identify two polygons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Related by a rotation of the plane.
    Equivalent,
    /// Related by a rotation or a reflection.
    Similar,
}

impl Relation {
    pub const ALL: [Relation; 2] = [Relation::Equivalent, Relation::Similar];
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equivalent => "equivalent",
            Relation::Similar => "similar",
        })
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "equivalent" | "e" => Ok(Relation::Equivalent),
            "similar" | "s" => Ok(Relation::Similar),
            other => Err(format!("unknown relation `{other}` (expected equivalent or similar)")),
        }
    }
}

/// Least edge word over an orbit; equal keys mean the same class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    pub relation: Relation,
    pub word: Vec<u32>,
}

impl CanonicalKey {
    /// Every reading of an alternating figure is alternating, so checking the key
    /// is enough to decide whether a class has an alternating representative.
    pub fn is_alternating(&self) -> bool {
        self.word.len() % 2 == 0 && self.word.iter().zip(self.word.iter().skip(2)).all(|(x, y)| x == y)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.word)
    }
}

pub fn canonical_key(x: &ChordSet, relation: Relation) -> CanonicalKey {
    x.vertex_cycle().edge_word().canonical_key(relation)
}
