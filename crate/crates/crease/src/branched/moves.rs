//! The two pinching moves.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::faces::close_positions;
use super::work::{Piece, Work};
use super::{
    compute_complexity, validate_diagram, BranchedDiagram, Complexity, ComponentName,
    DiagramViolation,
};

/// Pinch along an arc ℓ of the locus circle of `seen_from` where ℓ is
/// ∂-close, using the piece J of `component`'s trace graph that attaches to
/// every instance on ℓ and nowhere else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialCloseMove {
    pub component: ComponentName,
    pub seen_from: ComponentName,
    pub word: usize,
    /// First and last boundary position of ℓ.
    pub arc: (usize, usize),
    /// Double points on ℓ in order.
    pub ids: Vec<u32>,
    /// Interior vertices and edges of J.
    pub j_vertices: Vec<usize>,
    pub j_edges: Vec<usize>,
    /// Instances on either side of ℓ that the replacement arc joins.
    pub bridge: (Option<u32>, Option<u32>),
}

/// Slide the double point `slid` along ℓ past its neighbour `past`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCuspMove {
    pub word: usize,
    pub arc: (usize, usize),
    /// Component holding the tree E⁺ that ends at `past`.
    pub plus: ComponentName,
    /// Component holding the tree E⁻ that ends at `slid`.
    pub minus: ComponentName,
    pub slid: u32,
    pub past: u32,
    /// −1 when `slid` moves toward the basepoint start.
    pub direction: i8,
    pub e_plus: Vec<u32>,
    pub e_minus: Vec<u32>,
    /// Fresh ids: the crossing with the far strand at `past`, then the one
    /// with ℓ beyond `past`.
    pub new_ids: [u32; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    PartialClose(PartialCloseMove),
    DoubleCusp(DoubleCuspMove),
}

impl Move {
    pub fn describe(&self) -> String {
        match self {
            Move::PartialClose(m) => format!(
                "partial-close pinch of J in {} over ℓ = {:?} (seen from {})",
                m.component, m.ids, m.seen_from
            ),
            Move::DoubleCusp(m) => format!(
                "double-cusp pinch: slide {} past {} ({} in {}, {} in {}), new {:?}",
                m.slid,
                m.past,
                fmt_ids(&m.e_plus),
                m.plus,
                fmt_ids(&m.e_minus),
                m.minus,
                m.new_ids
            ),
        }
    }
}

fn fmt_ids(x: &[u32]) -> String {
    x.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),
    #[error("move produced an invalid diagram: {0:?}")]
    Broken(Vec<DiagramViolation>),
    #[error("measure did not decrease: {before} -> {after}")]
    MeasureNotDecreasing {
        before: Complexity,
        after: Complexity,
    },
}

fn locus_pairs(d: &BranchedDiagram) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, p) in d.components.iter().enumerate() {
        for (j, q) in d.components.iter().enumerate() {
            if i != j && p.on_locus() && q.on_locus() && p.word.is_some() && p.word == q.word {
                out.push((i, j));
            }
        }
    }
    out
}

/// Partial-close moves, best first: longest arc, then smallest ids.
pub fn enumerate_partial_close_moves(d: &BranchedDiagram) -> Vec<Move> {
    let mut out = Vec::new();
    for (i, j) in locus_pairs(d) {
        let (p, q) = (&d.components[i], &d.components[j]);
        let close: BTreeSet<usize> = close_positions(q).into_iter().collect();
        let w = Work::from_component(p);
        let n = p.boundary.len();
        for piece in w.pieces() {
            let (s, e) = piece.span();
            if piece.attach.len() != e - s + 1 || !(s..=e).all(|x| close.contains(&x)) {
                continue;
            }
            out.push(PartialCloseMove {
                component: p.name,
                seen_from: q.name,
                word: p.word.unwrap(),
                arc: (s, e),
                ids: p.boundary[s..=e].to_vec(),
                j_vertices: piece.verts.iter().map(|k| k - n).collect(),
                j_edges: piece.edges.clone(),
                bridge: (
                    s.checked_sub(1).map(|x| p.boundary[x]),
                    p.boundary.get(e + 1).copied(),
                ),
            });
        }
    }
    out.sort_by_key(|m| {
        let mut ids = m.ids.clone();
        ids.sort();
        (Reverse(m.ids.len()), ids, m.component, m.arc)
    });
    out.into_iter().map(Move::PartialClose).collect()
}

fn check_step(d: &BranchedDiagram, nd: &BranchedDiagram, strict_n1: bool) -> Result<(), MoveError> {
    validate_diagram(nd).map_err(MoveError::Broken)?;
    let (before, after) = (compute_complexity(d), compute_complexity(nd));
    let ok = if strict_n1 {
        after.n1 < before.n1
    } else {
        after.measure() < before.measure()
    };
    if ok {
        Ok(())
    } else {
        Err(MoveError::MeasureNotDecreasing { before, after })
    }
}

pub fn apply_partial_close(d: &BranchedDiagram, mv: &Move) -> Result<BranchedDiagram, MoveError> {
    let Move::PartialClose(m) = mv else {
        return Err(MoveError::PreconditionViolated(
            "not a partial-close move".into(),
        ));
    };
    if !enumerate_partial_close_moves(d).contains(mv) {
        return Err(MoveError::PreconditionViolated(
            "move is not available on this diagram".into(),
        ));
    }
    let ids: BTreeSet<u32> = m.ids.iter().copied().collect();
    let mut nd = d.clone();
    for c in nd.components.iter_mut().filter(|c| c.on_locus()) {
        let n = c.boundary.len();
        let mut w = Work::from_component(c);
        if c.name == m.component {
            for &e in &m.j_edges {
                w.remove_edge(e);
            }
            for &v in &m.j_vertices {
                w.remove_node(n + v);
            }
        }
        w.delete_ids(&ids);
        w.store(c);
    }
    for word in nd.words.iter_mut() {
        word.retain(|x| !ids.contains(x));
    }
    if nd.double_points().len() >= d.double_points().len() {
        return Err(MoveError::PreconditionViolated(
            "no double point removed".into(),
        ));
    }
    check_step(d, &nd, false)?;
    Ok(nd)
}

#[derive(Clone, Copy, PartialEq)]
enum Tok {
    Old(usize),
    Pl,
    Pr,
    Bq,
    Ar,
}

impl Tok {
    fn tag(self) -> u8 {
        match self {
            Tok::Old(_) => 0,
            Tok::Pl => 1,
            Tok::Pr => 2,
            Tok::Bq => 3,
            Tok::Ar => 4,
        }
    }
}

/// Splits the legs of `c` other than `skip` by whether they reach the
/// boundary left or right of position `at`.
fn split_legs(w: &Work, c: usize, skip: usize, at: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for &e in w.incident(c) {
        if e == skip {
            continue;
        }
        let r = w.reach(c, e);
        if r.is_empty() {
            return None;
        }
        if r.iter().all(|&x| x < at) {
            left.push(e);
        } else if r.iter().all(|&x| x > at) {
            right.push(e);
        } else {
            return None;
        }
    }
    Some((left, right))
}

/// The interior vertex with id `id` joined to boundary position `at` by an
/// edge that is the only edge there.
fn hub(w: &Work, id: u32, at: usize) -> Option<(usize, usize)> {
    let k = w.bound[at];
    let inc = w.incident(k);
    if inc.len() != 1 {
        return None;
    }
    let c = w.other_end(inc[0], k);
    (!w.is_boundary(c) && w.id[c] == id).then_some((c, inc[0]))
}

fn double_cusp(
    d: &BranchedDiagram,
    pi: usize,
    qi: usize,
    jp: &Piece,
    jq: &Piece,
    dir: i8,
) -> Option<(DoubleCuspMove, BranchedDiagram)> {
    let (pc, qc) = (&d.components[pi], &d.components[qi]);
    let wi = pc.word?;
    let word = &d.words[wi];
    let ((a1, b1), (a2, b2)) = (jp.span(), jq.span());
    let (q, qq) = if dir < 0 { (b2, a1) } else { (a2, b1) };
    let (x, y) = (word[q], word[qq]);
    let p = (0..word.len()).find(|&i| i != q && word[i] == x)?;
    let r = (0..word.len()).find(|&i| i != qq && word[i] == y)?;
    let (na, nb) = (d.next_id, d.next_id + 1);

    let wp = Work::from_component(pc);
    let wq = Work::from_component(qc);
    let (c, cp) = hub(&wp, y, p)?;
    let (dv, dr) = hub(&wq, x, r)?;
    if wp.degree(q) != 0
        || wp.degree(r) != 0
        || wq.degree(p) != 0
        || wq.degree(qq) != 0
        || wq.degree(q) != 1
    {
        return None;
    }
    let (pl_legs, pr_legs) = split_legs(&wp, c, cp, p)?;
    let (rl_legs, rr_legs) = split_legs(&wq, dv, dr, r)?;

    let mut toks = Vec::new();
    for i in 0..word.len() {
        match i {
            _ if i == q => {}
            _ if i == p => toks.extend([Tok::Pl, Tok::Pr]),
            _ if i == qq && dir < 0 => toks.extend([Tok::Bq, Tok::Old(i)]),
            _ if i == qq => toks.extend([Tok::Old(i), Tok::Bq]),
            _ if i == r && dir < 0 => toks.extend([Tok::Old(i), Tok::Ar]),
            _ if i == r => toks.extend([Tok::Ar, Tok::Old(i)]),
            _ => toks.push(Tok::Old(i)),
        }
    }
    let tok_id = |t: Tok| match t {
        Tok::Old(i) => word[i],
        Tok::Pl => {
            if dir < 0 {
                na
            } else {
                nb
            }
        }
        Tok::Pr => {
            if dir < 0 {
                nb
            } else {
                na
            }
        }
        Tok::Bq => nb,
        Tok::Ar => na,
    };

    let mut nd = d.clone();
    nd.words[wi] = toks.iter().map(|&t| tok_id(t)).collect();
    nd.next_id += 2;
    for (ci, comp) in nd.components.iter_mut().enumerate() {
        if !comp.on_locus() {
            continue;
        }
        let mut w = Work::from_component(comp);
        if comp.word == Some(wi) {
            if ci != pi && ci != qi && (w.degree(p) != 0 || w.degree(q) != 0) {
                return None;
            }
            let mut key = std::collections::BTreeMap::new();
            let bound: Vec<usize> = toks
                .iter()
                .map(|&t| match t {
                    Tok::Old(i) => i,
                    _ => {
                        let k = w.fresh(tok_id(t));
                        key.insert(t.tag(), k);
                        k
                    }
                })
                .collect();
            let k = |t: Tok| key[&t.tag()];
            w.bound = bound;
            if ci == pi {
                for e in pl_legs.clone() {
                    w.move_end(e, c, k(Tok::Pl));
                }
                for e in pr_legs.clone() {
                    w.move_end(e, c, k(Tok::Pr));
                }
                w.remove_node(c);
            }
            if ci == qi {
                let (lk, rk) = if dir < 0 {
                    (r, k(Tok::Ar))
                } else {
                    (k(Tok::Ar), r)
                };
                for e in rl_legs.clone() {
                    w.move_end(e, dv, lk);
                }
                for e in rr_legs.clone() {
                    w.move_end(e, dv, rk);
                }
                w.remove_node(dv);
                let e = w.incident(q)[0];
                w.move_end(e, q, k(Tok::Bq));
            }
            w.remove_node(p);
            w.remove_node(q);
            for key in w.bound.clone() {
                if w.degree(key) >= 2 {
                    w.sort_boundary_rotation(key);
                }
            }
        }
        w.delete_ids(&BTreeSet::from([x]));
        w.store(comp);
    }
    let ids = |pc: &super::ChordComponent, piece: &Piece| {
        piece.attach.iter().map(|&i| pc.boundary[i]).collect()
    };
    let mv = DoubleCuspMove {
        word: wi,
        arc: (a1.min(a2), b1.max(b2)),
        plus: pc.name,
        minus: qc.name,
        slid: x,
        past: y,
        direction: dir,
        e_plus: ids(pc, jp),
        e_minus: ids(qc, jq),
        new_ids: [na, nb],
    };
    check_step(d, &nd, true).ok()?;
    Some((mv, nd))
}

fn double_cusp_candidates(
    d: &BranchedDiagram,
) -> Result<Vec<(DoubleCuspMove, BranchedDiagram)>, MoveError> {
    let mut out = Vec::new();
    let mut unsupported = None;
    for (pi, qi) in locus_pairs(d) {
        let pp = Work::from_component(&d.components[pi]).pieces();
        let qp = Work::from_component(&d.components[qi]).pieces();
        for jp in &pp {
            for jq in &qp {
                let ((a1, b1), (a2, b2)) = (jp.span(), jq.span());
                let dir = if a2 < a1 && a1 < b2 && b2 < b1 && b2 == a1 + 1 {
                    -1
                } else if a1 < a2 && a2 < b1 && b1 < b2 && b1 == a2 + 1 {
                    1
                } else {
                    continue;
                };
                if !jp.is_tree() || !jq.is_tree() {
                    unsupported.get_or_insert_with(|| {
                        format!(
                            "interleaving pieces in {} and {} are not trees",
                            d.components[pi].name, d.components[qi].name
                        )
                    });
                    continue;
                }
                if let Some(c) = double_cusp(d, pi, qi, jp, jq, dir) {
                    out.push(c);
                }
            }
        }
    }
    if out.is_empty() {
        if let Some(msg) = unsupported {
            return Err(MoveError::UnsupportedTopology(msg));
        }
    }
    out.sort_by_key(|(m, _)| {
        let w = &d.words[m.word];
        let lo = w[m.arc.0..=m.arc.1].iter().min().copied();
        (Reverse(m.arc.1 - m.arc.0), lo, m.slid, m.plus)
    });
    Ok(out)
}

/// Double-cusp moves, best first. Only tree-shaped E± are handled.
pub fn enumerate_double_cusp_moves(d: &BranchedDiagram) -> Result<Vec<Move>, MoveError> {
    Ok(double_cusp_candidates(d)?
        .into_iter()
        .map(|(m, _)| Move::DoubleCusp(m))
        .collect())
}

pub fn apply_double_cusp(d: &BranchedDiagram, mv: &Move) -> Result<BranchedDiagram, MoveError> {
    let Move::DoubleCusp(m) = mv else {
        return Err(MoveError::PreconditionViolated(
            "not a double-cusp move".into(),
        ));
    };
    double_cusp_candidates(d)?
        .into_iter()
        .find(|(c, _)| c == m)
        .map(|(_, nd)| nd)
        .ok_or_else(|| {
            MoveError::PreconditionViolated("move is not available on this diagram".into())
        })
}

pub fn apply_move(d: &BranchedDiagram, mv: &Move) -> Result<BranchedDiagram, MoveError> {
    match mv {
        Move::PartialClose(_) => apply_partial_close(d, mv),
        Move::DoubleCusp(_) => apply_double_cusp(d, mv),
    }
}
