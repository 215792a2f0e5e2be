//! Branched-surface diagrams for three-curve crease sets.
//!
//! Each component of the split branched surface that has a boundary circle on
//! the branching locus carries the trace graph of the locus. The circle is cut
//! at the basepoint `×`, so its vertex instances sit on a line in word order
//! and the rest of the trace graph is drawn above that line. The face above
//! everything is the one that reaches the ∂𝓑 side of an annulus.

mod classify;
mod faces;
pub mod generate;
mod moves;
mod work;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::composer::Model;
use crate::signs::Sign;

pub use classify::{
    canonical_model, classify, is_minimal, mushroom_five, ClassifyError, ClassifyReport, TraceStep,
};
pub use moves::{
    apply_double_cusp, apply_move, apply_partial_close, enumerate_double_cusp_moves,
    enumerate_partial_close_moves, DoubleCuspMove, Move, MoveError, PartialCloseMove,
};

pub const DIAGRAM_SCHEMA: &str = "crease-diagram/1";

/// Folding signs over `(γi, γm, γo)` that can occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FoldingAssignment {
    #[serde(rename = "f1")]
    F1,
    #[serde(rename = "f2")]
    F2,
    #[serde(rename = "f3")]
    F3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum FoldingError {
    #[error("folding assignment f4 = [+,-,-] cannot occur")]
    F4Excluded,
    #[error("no negative curve: the branching locus would be empty")]
    AllPositive,
    #[error("no positive curve: the branched surface would have no boundary")]
    AllNegative,
}

impl FoldingAssignment {
    pub const ALL: [FoldingAssignment; 3] = [
        FoldingAssignment::F1,
        FoldingAssignment::F2,
        FoldingAssignment::F3,
    ];

    pub fn signs(self) -> [Sign; 3] {
        use Sign::*;
        match self {
            FoldingAssignment::F1 => [Plus, Plus, Minus],
            FoldingAssignment::F2 => [Plus, Minus, Plus],
            FoldingAssignment::F3 => [Minus, Plus, Minus],
        }
    }

    /// Reads signs over `(γi, γm, γo)`, allowing γi and γo to be swapped.
    pub fn from_signs(s: [Sign; 3]) -> Result<Self, FoldingError> {
        use Sign::*;
        if s.iter().all(|&x| x == Plus) {
            return Err(FoldingError::AllPositive);
        }
        if s.iter().all(|&x| x == Minus) {
            return Err(FoldingError::AllNegative);
        }
        for t in [s, [s[2], s[1], s[0]]] {
            if let Some(f) = Self::ALL.into_iter().find(|f| f.signs() == t) {
                return Ok(f);
            }
        }
        Err(FoldingError::F4Excluded)
    }

    pub fn model(self) -> Model {
        match self {
            FoldingAssignment::F1 => Model::Saucer,
            FoldingAssignment::F2 => Model::Mushroom,
            FoldingAssignment::F3 => Model::Toric,
        }
    }

    pub fn of_model(m: Model) -> Self {
        match m {
            Model::Saucer => FoldingAssignment::F1,
            Model::Mushroom => FoldingAssignment::F2,
            Model::Toric => FoldingAssignment::F3,
        }
    }

    /// Boundary circles of each component, sorted.
    pub fn geography(self, name: ComponentName) -> Vec<Circle> {
        use Circle::*;
        use ComponentName::*;
        match (self, name) {
            (FoldingAssignment::F1, DeltaPlus) => vec![Locus],
            (FoldingAssignment::F1, APlus) => vec![Boundary, Boundary],
            (FoldingAssignment::F2, DeltaPlus) => vec![Boundary],
            (FoldingAssignment::F3, DeltaMinus) | (FoldingAssignment::F3, DeltaPlus) => vec![Locus],
            (_, DeltaMinus) => vec![Boundary],
            (_, AMinus) | (_, APlus) => vec![Boundary, Locus],
        }
    }

    /// Components with a boundary circle on the locus.
    pub fn x_components(self) -> Vec<ComponentName> {
        ComponentName::ALL
            .into_iter()
            .filter(|&c| self.geography(c).contains(&Circle::Locus))
            .collect()
    }
}

impl fmt::Display for FoldingAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            FoldingAssignment::F1 => 1,
            FoldingAssignment::F2 => 2,
            FoldingAssignment::F3 => 3,
        };
        write!(f, "f{n}")
    }
}

/// Where a boundary circle of a component lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Circle {
    /// On ∂𝓑.
    #[serde(rename = "B")]
    Boundary,
    /// On the branching locus 𝓛.
    #[serde(rename = "L")]
    Locus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentName {
    #[serde(rename = "D+", alias = "Δ+")]
    DeltaPlus,
    #[serde(rename = "A+")]
    APlus,
    #[serde(rename = "A-", alias = "A−")]
    AMinus,
    #[serde(rename = "D-", alias = "Δ-", alias = "Δ−")]
    DeltaMinus,
}

impl ComponentName {
    pub const ALL: [ComponentName; 4] = [
        ComponentName::DeltaPlus,
        ComponentName::APlus,
        ComponentName::AMinus,
        ComponentName::DeltaMinus,
    ];

    pub fn kind(self) -> Kind {
        match self {
            ComponentName::DeltaPlus | ComponentName::DeltaMinus => Kind::Disk,
            _ => Kind::Annulus,
        }
    }
}

impl fmt::Display for ComponentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentName::DeltaPlus => "Δ+",
            ComponentName::APlus => "A+",
            ComponentName::AMinus => "A−",
            ComponentName::DeltaMinus => "Δ−",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Disk,
    Annulus,
}

/// A vertex of a trace graph: boundary instance `i` (word position) or
/// interior vertex `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    B(usize),
    V(usize),
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::B(i) => write!(f, "b{i}"),
            End::V(k) => write!(f, "v{k}"),
        }
    }
}

impl FromStr for End {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected b<n> or v<n>, got {s:?}");
        let (tag, num) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let n: usize = num.parse().map_err(|_| bad())?;
        match tag {
            "b" => Ok(End::B(n)),
            "v" => Ok(End::V(n)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for End {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for End {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Trace graph above the cut boundary line.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Interior {
    /// Double-point id of each interior vertex.
    #[serde(default)]
    pub vertices: Vec<u32>,
    #[serde(default)]
    pub edges: Vec<[End; 2]>,
    /// Counterclockwise edge order at every vertex of degree ≥ 2. A loop is
    /// listed twice; its first listing is the dart leaving through `ends[0]`.
    /// At a boundary instance the order starts from the side of the next
    /// instance.
    #[serde(default)]
    pub rotation: BTreeMap<End, Vec<usize>>,
}

impl Interior {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn degree(&self, v: End) -> usize {
        self.edges
            .iter()
            .map(|e| (e[0] == v) as usize + (e[1] == v) as usize)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChordComponent {
    pub name: ComponentName,
    pub kind: Kind,
    pub membership: Vec<Circle>,
    /// Index of the locus word traced by the 𝓛 circle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<usize>,
    /// Double-point ids along the 𝓛 circle from the basepoint.
    #[serde(default)]
    pub boundary: Vec<u32>,
    #[serde(default, skip_serializing_if = "Interior::is_empty")]
    pub interior: Interior,
}

impl ChordComponent {
    pub fn on_locus(&self) -> bool {
        self.membership.contains(&Circle::Locus)
    }

    pub fn sees_boundary(&self) -> bool {
        self.membership.contains(&Circle::Boundary)
    }

    pub fn instances(&self) -> usize {
        self.boundary.len() + self.interior.vertices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchedDiagram {
    pub folding: FoldingAssignment,
    /// Gaussian word of each locus component, read from its basepoint.
    pub words: Vec<Vec<u32>>,
    pub components: Vec<ChordComponent>,
    /// Next fresh double-point id.
    pub next_id: u32,
}

/// `(N1, N2)`, compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Complexity {
    pub n1: usize,
    pub n2: usize,
}

impl Complexity {
    /// The termination measure `(N1, N1 + N2)`.
    pub fn measure(self) -> (usize, usize) {
        (self.n1, self.n1 + self.n2)
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n1, self.n2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum DiagramViolation {
    #[error("folding assignment f4 = [+,-,-] cannot occur")]
    F4Excluded,
    #[error("component {0} missing")]
    MissingComponent(ComponentName),
    #[error("component {0} listed twice")]
    DuplicateComponent(ComponentName),
    #[error("{0} must be a {1:?}")]
    WrongKind(ComponentName, Kind),
    #[error("{component}: boundary circles {found:?}, expected {expected:?}")]
    Geography {
        component: ComponentName,
        expected: Vec<Circle>,
        found: Vec<Circle>,
    },
    #[error("{0}: locus boundary does not match its word")]
    WordMismatch(ComponentName),
    #[error("word {0} is not traced by any component")]
    UntracedWord(usize),
    #[error("double point {id} occurs {count} times in the words")]
    OccurrenceCount { id: u32, count: usize },
    #[error("double point {id} has {count} instances in G")]
    TooManyInstances { id: u32, count: usize },
    #[error("{component}: unknown double point {id}")]
    UnknownId { component: ComponentName, id: u32 },
    #[error("{component}: edge {edge} has an end out of range")]
    BadEnd {
        component: ComponentName,
        edge: usize,
    },
    #[error("{component}: rotation at {vertex} does not list its edges")]
    Rotation {
        component: ComponentName,
        vertex: End,
    },
    #[error("{component}: isolated interior vertex v{vertex}")]
    Isolated {
        component: ComponentName,
        vertex: usize,
    },
    #[error("{component}: interior not attached to the locus circle")]
    Floating { component: ComponentName },
    #[error("{component}: trace graph is not planar")]
    NonPlanar { component: ComponentName },
    #[error("{0}: trace graph without a locus circle")]
    InteriorOffLocus(ComponentName),
    #[error("next_id {0} is not fresh")]
    StaleCounter(u32),
}

impl BranchedDiagram {
    pub fn component(&self, name: ComponentName) -> Option<&ChordComponent> {
        self.components.iter().find(|c| c.name == name)
    }

    pub(crate) fn component_index(&self, name: ComponentName) -> Option<usize> {
        self.components.iter().position(|c| c.name == name)
    }

    /// The set D(𝓛).
    pub fn double_points(&self) -> BTreeSet<u32> {
        self.words.iter().flatten().copied().collect()
    }

    /// Words in `×,1,2,…,×` notation.
    pub fn word_strings(&self) -> Vec<String> {
        self.words.iter().map(|w| format_word(w)).collect()
    }

    pub fn to_json(&self) -> String {
        let doc = DiagramDoc {
            schema: DIAGRAM_SCHEMA.into(),
            folding: self.folding.to_string(),
            words: self.words.clone(),
            components: self.components.clone(),
            next_id: Some(self.next_id),
        };
        serde_json::to_string_pretty(&doc).expect("diagram serializes")
    }
}

pub fn format_word(w: &[u32]) -> String {
    let mut parts = vec!["×".to_string()];
    parts.extend(w.iter().map(|x| x.to_string()));
    parts.push("×".into());
    parts.join(",")
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid diagram: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<DiagramViolation>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    schema: String,
    folding: String,
    words: Vec<Vec<u32>>,
    components: Vec<ChordComponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    next_id: Option<u32>,
}

/// Parses and validates a diagram document.
pub fn parse_diagram(text: &str) -> Result<BranchedDiagram, DiagramError> {
    let doc: DiagramDoc = serde_json::from_str(text).map_err(|e| DiagramError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.schema != DIAGRAM_SCHEMA {
        return Err(DiagramError::Field {
            path: "$.schema".into(),
            message: format!("expected {DIAGRAM_SCHEMA:?}, got {:?}", doc.schema),
        });
    }
    let folding = match doc.folding.as_str() {
        "f1" => FoldingAssignment::F1,
        "f2" => FoldingAssignment::F2,
        "f3" => FoldingAssignment::F3,
        "f4" => return Err(DiagramError::Invalid(vec![DiagramViolation::F4Excluded])),
        other => {
            return Err(DiagramError::Field {
                path: "$.folding".into(),
                message: format!("unknown assignment {other:?}"),
            })
        }
    };
    let next_id = doc
        .next_id
        .unwrap_or_else(|| doc.words.iter().flatten().max().map_or(1, |m| m + 1));
    let d = BranchedDiagram {
        folding,
        words: doc.words,
        components: doc.components,
        next_id,
    };
    validate_diagram(&d).map_err(DiagramError::Invalid)?;
    Ok(d)
}

/// Checks words against component maps, instance bounds, geography and
/// planarity of every trace graph.
pub fn validate_diagram(d: &BranchedDiagram) -> Result<(), Vec<DiagramViolation>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for c in &d.components {
        if !seen.insert(c.name) {
            out.push(DiagramViolation::DuplicateComponent(c.name));
        }
    }
    for name in ComponentName::ALL {
        if !seen.contains(&name) {
            out.push(DiagramViolation::MissingComponent(name));
        }
    }

    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in d.words.iter().flatten() {
        *counts.entry(x).or_default() += 1;
    }
    for (&id, &count) in &counts {
        if count != 2 {
            out.push(DiagramViolation::OccurrenceCount { id, count });
        }
    }
    if counts.keys().next_back().is_some_and(|&m| m >= d.next_id) {
        out.push(DiagramViolation::StaleCounter(d.next_id));
    }

    let mut traced = vec![false; d.words.len()];
    let mut instances: BTreeMap<u32, usize> = BTreeMap::new();
    for c in &d.components {
        if c.kind != c.name.kind() {
            out.push(DiagramViolation::WrongKind(c.name, c.name.kind()));
        }
        let mut found = c.membership.clone();
        found.sort();
        let expected = d.folding.geography(c.name);
        if found != expected {
            out.push(DiagramViolation::Geography {
                component: c.name,
                expected,
                found,
            });
        }
        if !c.on_locus() {
            if !c.interior.is_empty() {
                out.push(DiagramViolation::InteriorOffLocus(c.name));
            }
            if c.word.is_some() || !c.boundary.is_empty() {
                out.push(DiagramViolation::WordMismatch(c.name));
            }
            continue;
        }
        match c.word.and_then(|w| d.words.get(w).map(|x| (w, x))) {
            Some((w, word)) if *word == c.boundary => traced[w] = true,
            _ => out.push(DiagramViolation::WordMismatch(c.name)),
        }
        for &x in c.boundary.iter().chain(&c.interior.vertices) {
            *instances.entry(x).or_default() += 1;
        }
        for &x in &c.interior.vertices {
            if !counts.contains_key(&x) {
                out.push(DiagramViolation::UnknownId {
                    component: c.name,
                    id: x,
                });
            }
        }
        out.extend(faces::check_map(c));
    }
    for (w, t) in traced.iter().enumerate() {
        if !t {
            out.push(DiagramViolation::UntracedWord(w));
        }
    }
    for (&id, &count) in &instances {
        if count > 6 {
            out.push(DiagramViolation::TooManyInstances { id, count });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Boundary positions of `name` that are ∂-close: no interior edge there and
/// on the face that reaches the ∂𝓑 side.
pub fn partial_close_vertices(d: &BranchedDiagram, name: ComponentName) -> Vec<usize> {
    d.component(name)
        .map(faces::close_positions)
        .unwrap_or_default()
}

/// Counts vertex instances of G that are not / are ∂-close.
pub fn compute_complexity(d: &BranchedDiagram) -> Complexity {
    let mut k = Complexity { n1: 0, n2: 0 };
    for c in d.components.iter().filter(|c| c.on_locus()) {
        let close = faces::close_positions(c).len();
        k.n2 += close;
        k.n1 += c.instances() - close;
    }
    k
}
