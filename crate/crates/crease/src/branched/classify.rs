//! Built-in diagrams and the classification driver.

use serde::Serialize;
use thiserror::Error;

use super::moves::{
    apply_move, enumerate_double_cusp_moves, enumerate_partial_close_moves, Move, MoveError,
};
use super::work::Work;
use super::{
    compute_complexity, validate_diagram, BranchedDiagram, ChordComponent, Circle, Complexity,
    ComponentName, DiagramViolation, FoldingAssignment,
};
use crate::composer::Model;

fn component(f: FoldingAssignment, name: ComponentName, word: Option<usize>) -> ChordComponent {
    let membership = f.geography(name);
    let word = if membership.contains(&Circle::Locus) {
        word
    } else {
        None
    };
    ChordComponent {
        name,
        kind: name.kind(),
        membership,
        word,
        boundary: Vec::new(),
        interior: Default::default(),
    }
}

fn assemble(
    f: FoldingAssignment,
    words: Vec<Vec<u32>>,
    comps: Vec<(ComponentName, Option<usize>, Work)>,
) -> BranchedDiagram {
    let components = ComponentName::ALL
        .into_iter()
        .map(|name| {
            let mut c = component(f, name, None);
            if let Some((_, w, work)) = comps.iter().find(|x| x.0 == name) {
                c.word = *w;
                work.store(&mut c);
            }
            c
        })
        .collect();
    let next_id = words.iter().flatten().max().map_or(1, |m| m + 1);
    BranchedDiagram {
        folding: f,
        words,
        components,
        next_id,
    }
}

fn boundary_work(word: &[u32]) -> Work {
    let mut w = Work::new();
    for &x in word {
        w.push_boundary(x);
    }
    w
}

/// The three model diagrams.
pub fn canonical_model(label: Model) -> BranchedDiagram {
    let f = FoldingAssignment::of_model(label);
    match label {
        Model::Saucer | Model::Mushroom => {
            let comps = f
                .x_components()
                .into_iter()
                .map(|c| (c, Some(0), Work::new()))
                .collect();
            assemble(f, vec![vec![]], comps)
        }
        Model::Toric => {
            let annulus = || {
                let mut w = boundary_work(&[1]);
                let v = w.push_vertex(1);
                let lp = w.add_edge(v, v);
                let down = w.add_edge(w.bound[0], v);
                w.rot.insert(v, vec![lp, lp, down]);
                w
            };
            let comps = vec![
                (ComponentName::DeltaPlus, Some(0), boundary_work(&[1])),
                (ComponentName::APlus, Some(0), annulus()),
                (ComponentName::AMinus, Some(1), annulus()),
                (ComponentName::DeltaMinus, Some(1), boundary_work(&[1])),
            ];
            assemble(f, vec![vec![1], vec![1]], comps)
        }
    }
}

/// The mushroom with five double points on its single locus circle.
pub fn mushroom_five() -> BranchedDiagram {
    let word = vec![1, 2, 3, 3, 4, 2, 5, 5, 4, 1];
    let tripod = |id: u32, legs: [usize; 3], chord: (usize, usize)| {
        let mut w = boundary_work(&word);
        let c = w.push_vertex(id);
        for i in legs {
            w.add_edge(c, w.bound[i]);
        }
        w.add_edge(w.bound[chord.0], w.bound[chord.1]);
        w
    };
    let comps = vec![
        (ComponentName::APlus, Some(0), tripod(4, [0, 1, 2], (4, 6))),
        (ComponentName::AMinus, Some(0), tripod(2, [7, 8, 9], (3, 5))),
    ];
    assemble(FoldingAssignment::F2, vec![word.clone()], comps)
}

/// No further reduction is possible or needed.
pub fn is_minimal(d: &BranchedDiagram) -> bool {
    let n = d.double_points().len();
    match d.folding {
        FoldingAssignment::F1 | FoldingAssignment::F2 => n == 0,
        FoldingAssignment::F3 => n == 1,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub step: Move,
    pub before: Complexity,
    pub after: Complexity,
    pub words: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyReport {
    pub label: Model,
    pub folding: FoldingAssignment,
    pub initial: Complexity,
    pub terminal: Complexity,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("invalid diagram: {0:?}")]
    Invalid(Vec<DiagramViolation>),
    #[error("stuck at complexity {complexity} with no enumerable move:\n{diagram}")]
    Stuck {
        complexity: Complexity,
        diagram: String,
    },
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Reduces `d` by pinching moves, partial-close first, until minimal.
pub fn classify(d: &BranchedDiagram) -> Result<ClassifyReport, ClassifyError> {
    validate_diagram(d).map_err(ClassifyError::Invalid)?;
    let initial = compute_complexity(d);
    let mut cur = d.clone();
    let mut trace = Vec::new();
    while !is_minimal(&cur) {
        let before = compute_complexity(&cur);
        let mut moves = enumerate_partial_close_moves(&cur);
        if moves.is_empty() {
            moves = enumerate_double_cusp_moves(&cur)?;
        }
        let Some(mv) = moves.into_iter().next() else {
            return Err(ClassifyError::Stuck {
                complexity: before,
                diagram: cur.to_json(),
            });
        };
        let next = apply_move(&cur, &mv)?;
        let after = compute_complexity(&next);
        if after.measure() >= before.measure() {
            return Err(MoveError::MeasureNotDecreasing { before, after }.into());
        }
        trace.push(TraceStep {
            step: mv,
            before,
            after,
            words: next.word_strings(),
        });
        cur = next;
    }
    Ok(ClassifyReport {
        label: d.folding.model(),
        folding: d.folding,
        initial,
        terminal: compute_complexity(&cur),
        trace,
    })
}
