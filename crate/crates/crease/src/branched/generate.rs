//! Random valid diagrams grown by inverse partial-close pinches.
//!
//! Each step inserts a block of fresh instances at a gap that is ∂-close on
//! one side and hangs a planar tree over the block on the other side. Lone
//! second occurrences go to gaps that no piece covers on any side.

use std::collections::BTreeMap;

use super::classify::canonical_model;
use super::work::Work;
use super::{BranchedDiagram, ComponentName, FoldingAssignment};

/// `pick(n)` must return a value in `0..n`.
pub fn grow_diagram(
    folding: FoldingAssignment,
    max_points: usize,
    pick: &mut dyn FnMut(usize) -> usize,
) -> BranchedDiagram {
    assert!(
        folding != FoldingAssignment::F3,
        "toric diagrams are not grown"
    );
    let base = canonical_model(folding.model());
    let names = folding.x_components();
    let mut works: Vec<Work> = names.iter().map(|_| Work::new()).collect();
    let idx = |n: ComponentName| names.iter().position(|&x| x == n).unwrap();
    let sides: Vec<(usize, usize)> = match folding {
        FoldingAssignment::F1 => vec![(idx(ComponentName::DeltaPlus), idx(ComponentName::AMinus))],
        _ => vec![(0, 1), (1, 0)],
    };
    let mut word: Vec<u32> = Vec::new();
    let mut next = 1u32;
    let mut hubs: BTreeMap<u32, usize> = BTreeMap::new();

    let insert = |works: &mut Vec<Work>, word: &mut Vec<u32>, at: usize, id: u32| {
        word.insert(at, id);
        for w in works.iter_mut() {
            let k = w.fresh(id);
            w.bound.insert(at, k);
        }
    };

    let mut points = 0;
    while points < max_points {
        let k = 1 + pick((max_points - points).min(3));
        let (p, q) = sides[pick(sides.len())];
        let gaps: Vec<usize> = (0..=word.len())
            .filter(|&g| !works[q].gap_covered(g))
            .collect();
        let g = gaps[pick(gaps.len())];

        let ids: Vec<u32> = (next..next + k as u32).collect();
        next += k as u32;
        let mut block: Vec<u32> = Vec::new();
        let mut lone = Vec::new();
        for &id in &ids {
            block.push(id);
            if pick(2) == 1 {
                block.push(id);
            } else {
                lone.push(id);
            }
        }
        for i in (1..block.len()).rev() {
            block.swap(i, pick(i + 1));
        }
        for (j, &id) in block.iter().enumerate() {
            insert(&mut works, &mut word, g + j, id);
        }

        let w = &mut works[p];
        let legs: Vec<usize> = (g..g + block.len()).map(|i| w.bound[i]).collect();
        let mut hub_id = |pick: &mut dyn FnMut(usize) -> usize| {
            let free: Vec<u32> = ids
                .iter()
                .copied()
                .filter(|id| hubs.get(id).copied().unwrap_or(0) < 2)
                .collect();
            (!free.is_empty()).then(|| {
                let id = free[pick(free.len())];
                *hubs.entry(id).or_default() += 1;
                id
            })
        };
        if legs.len() == 2 && pick(2) == 0 {
            w.add_edge(legs[0], legs[1]);
        } else {
            let root = w.push_vertex(hub_id(pick).expect("fresh ids have room"));
            let mut i = 0;
            while i < legs.len() {
                let len = 1 + pick(legs.len() - i);
                let group = &legs[i..i + len];
                let sub = if len > 1 && pick(2) == 0 {
                    hub_id(pick)
                } else {
                    None
                };
                match sub {
                    Some(id) => {
                        let s = w.push_vertex(id);
                        w.add_edge(root, s);
                        for &b in group {
                            w.add_edge(s, b);
                        }
                    }
                    None => {
                        for &b in group {
                            w.add_edge(root, b);
                        }
                    }
                }
                i += len;
            }
        }

        for id in lone {
            let gaps: Vec<usize> = (0..=word.len())
                .filter(|&g| works.iter().all(|w| !w.gap_covered(g)))
                .collect();
            let g = gaps[pick(gaps.len())];
            insert(&mut works, &mut word, g, id);
        }
        points += k;
    }

    let mut d = base;
    for (name, w) in names.iter().zip(&works) {
        let i = d.component_index(*name).unwrap();
        w.store(&mut d.components[i]);
    }
    d.words = vec![word];
    d.next_id = next;
    d
}
