//! Killer intervals, Farey blocks, good jigsaws, killer-interval coverage
//! certificates for the fundamental interval, and rational cusp descent.

use crate::arithmeticity::arithmetic_test;
use crate::exact::{ExtRational, Fin, Inf, Int, ProjMatrix, Rat};
use crate::jigsaw::{
    side_label, std_side_ends, tile_vertex_width, Jigsaw, JigsawBlueprint,
};
use crate::weierstrass::WeierstrassParams;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{HashSet, VecDeque};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PmError {
    #[error("matrix fixes infinity; no killer interval")]
    FixesInfinity,
    #[error("coverage search exhausted its budget")]
    BudgetExhausted,
    #[error("certificate does not cover the window at {0}")]
    Uncovered(Rat),
}

/// An interval (cusp - radius, cusp + radius) on which the witness strictly
/// reduces denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillerInterval {
    pub cusp: Rat,
    pub radius: Rat,
    pub contraction: Int,
    pub witness: ProjMatrix,
}

impl KillerInterval {
    pub fn left(&self) -> Rat {
        &self.cusp - &self.radius
    }

    pub fn right(&self) -> Rat {
        &self.cusp + &self.radius
    }
}

/// The killer interval of a primitive integer matrix g = [[a,b],[c,d]] with
/// c != 0: cusp a/c, radius 1/|c|, contraction gcd(a, c).
pub fn killer_interval(g: &ProjMatrix) -> Result<KillerInterval, PmError> {
    let (a, _, c, _) = g.entries();
    if c.is_zero() {
        return Err(PmError::FixesInfinity);
    }
    Ok(KillerInterval {
        cusp: Rat::new(a.clone(), c.clone()),
        radius: Rat::new(Int::one(), c.abs()),
        contraction: a.gcd(c),
        witness: g.clone(),
    })
}

/// Vertices of the r-Farey block: all p/q in [0,1] in lowest terms with
/// q <= r, ascending.
pub fn farey_block(r: u64) -> Vec<Rat> {
    assert!(r >= 2, "Farey blocks are defined for r >= 2");
    let mut out = vec![Rat::zero()];
    fn rec(lo: (u64, u64), hi: (u64, u64), r: u64, out: &mut Vec<Rat>) {
        let med = (lo.0 + hi.0, lo.1 + hi.1);
        if med.1 > r {
            return;
        }
        rec(lo, med, r, out);
        out.push(Rat::new(Int::from(med.0), Int::from(med.1)));
        rec(med, hi, r, out);
    }
    rec((0, 1), (1, 1), r, &mut out);
    out.push(Rat::one());
    out
}

/// Internal bookkeeping while emitting block tiles: blueprint index plus the
/// tile's vertices in the block's own [0,1] coordinates, ordered (a, b, c).
struct NatTile {
    idx: usize,
    nat: [Rat; 3],
}

impl NatTile {
    /// The standard side index whose endpoint set is {x, y}, with its
    /// endpoints in this tile's standard order.
    fn side_for(&self, x: &Rat, y: &Rat) -> (u8, Rat, Rat) {
        let pairs = [(1u8, 0usize, 1usize), (2, 1, 2), (3, 2, 0)];
        for (s, i, j) in pairs {
            if (&self.nat[i] == x && &self.nat[j] == y)
                || (&self.nat[i] == y && &self.nat[j] == x)
            {
                return (s, self.nat[i].clone(), self.nat[j].clone());
            }
        }
        panic!("side {x}..{y} not on this tile");
    }
}

fn frac(p: u64, q: u64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Emits the tiles of an r-Farey block into the blueprint.  The block hangs
/// by the boundary side [0, 1/r] of its outermost tile; `attach` is the free
/// type-1 side it glues to (None makes it the blueprint root).  The type-n
/// ear is glued to the distinguished side [0,1].  Free type-1 sides are
/// pushed onto `free` in emission order.
fn emit_unit(
    bp: &mut JigsawBlueprint,
    attach: Option<(usize, u8)>,
    n: u64,
    free: &mut VecDeque<(usize, u8)>,
) {
    let r = n.max(2);
    let one = WeierstrassParams::integral(1);

    // interval subtree: parent side has endpoint fractions {lo, hi}
    fn rec(
        bp: &mut JigsawBlueprint,
        parent: &NatTile,
        lo: (u64, u64),
        hi: (u64, u64),
        r: u64,
        free: &mut VecDeque<(usize, u8)>,
    ) {
        let med = (lo.0 + hi.0, lo.1 + hi.1);
        let (side, e1, e2) = parent.side_for(&frac(lo.0, lo.1), &frac(hi.0, hi.1));
        if med.1 > r {
            free.push_back((parent.idx, side));
            return;
        }
        let idx = bp.glue(parent.idx, side, WeierstrassParams::integral(1), 1);
        let m = frac(med.0, med.1);
        let child = NatTile {
            idx,
            nat: [e1, e2, m],
        };
        // the child's other two sides subdivide {lo, med} and {med, hi}
        rec(bp, &child, lo, med, r, free);
        rec(bp, &child, med, hi, r, free);
    }

    // chain of tiles (0, 1/(j+1), 1/j) from the boundary inward to (0,1/2,1)
    let mut chain: Option<NatTile> = None;
    for j in (1..r).rev() {
        let tile = if let Some(prev) = &chain {
            let (side, e1, e2) = prev.side_for(&Rat::zero(), &frac(1, j + 1));
            let idx = bp.glue(prev.idx, side, one.clone(), 1);
            NatTile {
                idx,
                nat: [e1, e2, frac(1, j)],
            }
        } else {
            // outermost tile (0, 1/r, 1/(r-1)); its side (a,b) = [0, 1/r]
            // is the attachment side
            let idx = match attach {
                None => 0,
                Some((p, s)) => bp.glue(p, s, one.clone(), 1),
            };
            if attach.is_none() {
                free.push_back((0, 1));
            }
            NatTile {
                idx,
                nat: [Rat::zero(), frac(1, r), frac(1, r - 1)],
            }
        };
        rec(bp, &tile, (1, j + 1), (1, j), r, free);
        if j == 1 {
            // distinguished side [0,1] carries the ear
            let (side, _, _) = tile.side_for(&Rat::zero(), &Rat::one());
            bp.glue(tile.idx, side, WeierstrassParams::integral(n), 1);
        }
        chain = Some(tile);
    }
}

/// A good jigsaw blueprint: one Delta^(n) ear per type in `set` (each
/// carrying its n-Farey block on its type-1 side), plus `extra` additional
/// Delta^(1) tiles on the first free sides.
pub fn good_jigsaw(set: &[u64], extra: usize) -> JigsawBlueprint {
    assert!(!set.is_empty(), "need at least one ear type");
    assert!(
        set.windows(2).all(|w| w[0] < w[1]) && set[0] >= 2,
        "ear types must be ascending and at least 2"
    );
    let mut free: VecDeque<(usize, u8)> = VecDeque::new();
    let mut bp = JigsawBlueprint::root_integral(1);
    emit_unit(&mut bp, None, set[0], &mut free);
    for &n in &set[1..] {
        let at = free.pop_front().expect("a free type-1 side exists");
        emit_unit(&mut bp, Some(at), n, &mut free);
    }
    for _ in 0..extra {
        let (p, s) = free.pop_front().expect("a free type-1 side exists");
        let idx = bp.glue(p, s, WeierstrassParams::integral(1), 1);
        free.push_back((idx, 2));
        free.push_back((idx, 3));
    }
    bp
}

/// A certificate that the window (start, start + L] is covered by killer
/// intervals (cusp endpoints count as covered).
#[derive(Clone, Debug)]
pub struct CoverCertificate {
    pub intervals: Vec<KillerInterval>,
    pub window: (Rat, Rat),
}

impl CoverCertificate {
    /// One line per interval: cusp, radius, witness entries.
    pub fn to_text(&self) -> String {
        let mut s = format!("window {} {}\n", self.window.0, self.window.1);
        for iv in &self.intervals {
            let (a, b, c, d) = iv.witness.entries();
            s.push_str(&format!(
                "cusp {} radius {} witness {} {} {} {}\n",
                iv.cusp, iv.radius, a, b, c, d
            ));
        }
        s
    }

    /// Exact sweep: every point of (start, start+L] lies in an open interval
    /// or coincides with a listed cusp.
    pub fn verify(&self) -> Result<(), PmError> {
        let (start, end) = &self.window;
        let is_cusp = |x: &Rat| self.intervals.iter().any(|iv| iv.cusp == *x);
        let interior = |x: &Rat| {
            self.intervals
                .iter()
                .any(|iv| iv.left() < *x && iv.right() > *x)
        };
        let mut reach = start.clone();
        loop {
            // furthest right end among intervals covering the points just
            // right of `reach`
            let best = self
                .intervals
                .iter()
                .map(|iv| (iv.left(), iv.right()))
                .filter(|(l, r)| *l <= reach && *r > reach)
                .map(|(_, r)| r)
                .max();
            match best {
                Some(b) => reach = b,
                None => return Err(PmError::Uncovered(reach)),
            }
            if reach >= *end {
                // the window's right endpoint itself must be covered
                if reach > *end || is_cusp(end) || interior(end) {
                    return Ok(());
                }
                return Err(PmError::Uncovered(end.clone()));
            }
            // the pinch point `reach` must be a cusp or interior elsewhere
            if !is_cusp(&reach) && !interior(&reach) {
                return Err(PmError::Uncovered(reach));
            }
        }
    }
}

/// A vertical edge of the tile-level triangulation: integer foot and the
/// side type of the edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriEdge {
    pub foot: Int,
    pub edge_type: u64,
}

/// A type-n gap (r, r+n) spanned by a tip-up lift of tile `tile`, whose wide
/// corner (0=a, 1=b, 2=c) sits at infinity.
#[derive(Clone, Debug)]
pub struct TipGap {
    pub tile: usize,
    pub corner: usize,
    pub r: Int,
    pub n: u64,
}

/// Tiles incident to polygon vertex `i`, ordered as a fan from boundary side
/// s_{i-1} to boundary side s_i, with each tile's local corner (0=a,1=b,2=c)
/// and the type of the side crossed to reach the next tile.
fn vertex_fan(j: &Jigsaw, i: usize) -> Vec<(usize, usize, Option<u64>)> {
    let nsides = j.sides.len();
    let v = &j.vertices[i];
    // the two standard sides meeting at a given corner
    let sides_at = |corner: usize| -> [u8; 2] {
        match corner {
            0 => [3, 1],
            1 => [1, 2],
            2 => [2, 3],
            _ => unreachable!(),
        }
    };
    let side_set = |t: usize, s: u8| -> (ExtRational, ExtRational) {
        let (e0, e1) = std_side_ends(s);
        (
            j.tiles[t].placement.apply(&e0),
            j.tiles[t].placement.apply(&e1),
        )
    };
    let same = |a: &(ExtRational, ExtRational), b: &(ExtRational, ExtRational)| {
        (a.0 == b.0 && a.1 == b.1) || (a.0 == b.1 && a.1 == b.0)
    };
    let incident: Vec<(usize, usize)> = j
        .tiles
        .iter()
        .enumerate()
        .filter_map(|(t, tile)| {
            tile.verts.iter().position(|w| w == v).map(|corner| (t, corner))
        })
        .collect();
    let start_side = {
        let prev = (i + nsides - 1) % nsides;
        (j.sides[prev].ends.0.clone(), j.sides[prev].ends.1.clone())
    };
    let end_side = (j.sides[i].ends.0.clone(), j.sides[i].ends.1.clone());
    // walk the fan
    let mut out: Vec<(usize, usize, Option<u64>)> = Vec::new();
    let (mut cur, mut corner) = incident
        .iter()
        .find(|&&(t, c)| {
            sides_at(c)
                .iter()
                .any(|&s| same(&side_set(t, s), &start_side))
        })
        .copied()
        .expect("fan starts at the boundary side");
    let mut entered_via: (ExtRational, ExtRational) = start_side;
    loop {
        let [s1, s2] = sides_at(corner);
        let exit = if same(&side_set(cur, s1), &entered_via) {
            s2
        } else {
            s1
        };
        let exit_set = side_set(cur, exit);
        let exit_type =
            crate::jigsaw::label_type(&side_label(&j.tiles[cur].params, exit));
        if same(&exit_set, &end_side) {
            out.push((cur, corner, None));
            break;
        }
        out.push((cur, corner, Some(exit_type)));
        let (next, nc) = incident
            .iter()
            .find(|&&(t, c)| {
                t != cur
                    && sides_at(c)
                        .iter()
                        .any(|&s| same(&side_set(t, s), &exit_set))
            })
            .copied()
            .expect("interior side is shared by two tiles");
        entered_via = exit_set;
        cur = next;
        corner = nc;
    }
    out
}

/// The vertical edges of the tile-level triangulation over one fundamental
/// period, from foot v_1 down to v_1 - L, together with the type-n gaps.
pub fn triangulation_verticals(j: &Jigsaw) -> (Vec<TriEdge>, Vec<TipGap>) {
    let nsides = j.sides.len();
    let mut edges: Vec<TriEdge> = Vec::new();
    let mut gaps: Vec<TipGap> = Vec::new();
    let v1 = j.vertices[1].as_rat().expect("v_1 is finite");
    assert!(v1.is_integer());
    let mut foot = v1.to_integer();
    edges.push(TriEdge {
        foot: foot.clone(),
        edge_type: j.sides[0].side_type,
    });
    for k in 1..=nsides {
        let i = k % nsides;
        let fan = vertex_fan(j, i);
        for (t, corner, exit) in &fan {
            let w = tile_vertex_width(&j.tiles[*t].params, *corner);
            foot -= Int::from(w);
            if w > 1 {
                gaps.push(TipGap {
                    tile: *t,
                    corner: *corner,
                    r: foot.clone(),
                    n: w,
                });
            }
            let ty = match exit {
                Some(u) => *u,
                // last tile in the fan exits through boundary side s_i
                None => j.sides[i].side_type,
            };
            edges.push(TriEdge {
                foot: foot.clone(),
                edge_type: ty,
            });
        }
    }
    (edges, gaps)
}

/// Group element sending infinity to polygon vertex v_j (the composition of
/// boundary involutions along the vertex chain).
fn to_vertex(j: &Jigsaw, idx: usize) -> ProjMatrix {
    let mut g = ProjMatrix::identity();
    for s in 0..idx {
        g = j.sides[s].inv.mul(&g);
    }
    g
}

/// Constructive cover: a pruned search over lifts of the fundamental polygon
/// near the window.  Every lift is a word in the boundary involutions, and
/// each of its ideal vertices is a cusp with an explicit witness, so every
/// interval in the certificate carries an honest group element.
pub fn constructive_cover(j: &Jigsaw) -> Result<CoverCertificate, PmError> {
    let l = j.l.clone();
    let v1 = j.vertices[1].as_rat().unwrap().to_integer();
    let start = Rat::from(&v1 - &l);
    let end = Rat::from(v1.clone());
    let n_max = j.signature.last().map(|(n, _)| *n).unwrap_or(1);
    // the finest killer intervals needed come from the scaled Farey block
    // inside a type-n gap, whose tiles span at least n / n^2
    for denom in [2 * n_max, 4 * n_max * n_max] {
        let thr = Rat::new(Int::one(), Int::from(denom));
        let cert = copy_search(j, &start, &end, &thr);
        match cert.verify() {
            Ok(()) => return Ok(cert),
            Err(e) => {
                if std::env::var_os("JG_DEBUG_COVER").is_some() {
                    eprintln!(
                        "constructive cover (threshold 1/{denom}) failed: {e}\n{}",
                        cert.to_text()
                    );
                }
            }
        }
    }
    Err(PmError::BudgetExhausted)
}

/// Explores polygon lifts h(P) whose span meets [start-1, end+1], recursing
/// through boundary sides while the lift is wider than `thr`, and harvests a
/// killer interval from every finite vertex.
fn copy_search(j: &Jigsaw, start: &Rat, end: &Rat, thr: &Rat) -> CoverCertificate {
    const NODE_CAP: usize = 100_000;
    let vertex_maps: Vec<ProjMatrix> =
        (0..j.vertices.len()).map(|i| to_vertex(j, i)).collect();
    let gens = j.generators();
    let translation = period_translation(j);
    let lo = start - Rat::one();
    let hi = end + Rat::one();

    let mut intervals: Vec<KillerInterval> = Vec::new();
    let mut seen: HashSet<ProjMatrix> = HashSet::new();
    let mut queue: VecDeque<ProjMatrix> =
        [translation.inv(), ProjMatrix::identity()].into();
    while let Some(h) = queue.pop_front() {
        if !seen.insert(h.clone()) || seen.len() > NODE_CAP {
            continue;
        }
        // vertices of this lift, with their witnesses
        let mut finite: Vec<Rat> = Vec::new();
        let mut has_inf = false;
        for vm in &vertex_maps {
            let g = h.mul(vm);
            match killer_interval(&g) {
                Ok(iv) => {
                    if iv.cusp >= lo && iv.cusp <= hi {
                        intervals.push(iv.clone());
                    }
                    finite.push(iv.cusp);
                }
                Err(_) => has_inf = true,
            }
        }
        if !finite.iter().any(|v| *v >= lo && *v <= hi) {
            continue;
        }
        let wide_enough = has_inf || {
            let min = finite.iter().min().unwrap();
            let max = finite.iter().max().unwrap();
            &(max - min) >= thr
        };
        if wide_enough {
            for g in &gens {
                queue.push_back(h.mul(g));
            }
        }
    }
    dedup_intervals(&mut intervals);
    CoverCertificate {
        intervals,
        window: (start.clone(), end.clone()),
    }
}

/// The period translation x -> x + L as a word in the boundary involutions.
fn period_translation(j: &Jigsaw) -> ProjMatrix {
    let mut p = ProjMatrix::identity();
    for s in &j.sides {
        p = s.inv.mul(&p);
    }
    match p.translation_length() {
        Some(t) if t.is_positive() => p,
        _ => p.inv(),
    }
}

fn dedup_intervals(intervals: &mut Vec<KillerInterval>) {
    intervals.sort_by(|a, b| a.cusp.cmp(&b.cusp).then(b.radius.cmp(&a.radius)));
    intervals.dedup_by(|a, b| a.cusp == b.cusp && a.radius <= b.radius);
    // drop intervals contained in another: their cusp is interior to the
    // container, so neither their span nor their pinch point is needed
    intervals.sort_by(|a, b| a.left().cmp(&b.left()).then(b.right().cmp(&a.right())));
    let mut kept: Vec<KillerInterval> = Vec::with_capacity(intervals.len());
    let mut max_right: Option<Rat> = None;
    for iv in intervals.drain(..) {
        let r = iv.right();
        if max_right.as_ref().map_or(true, |m| r > *m) {
            max_right = Some(r);
            kept.push(iv);
        }
    }
    *intervals = kept;
}

/// Fallback: breadth-first search over group words up to `budget` letters,
/// harvesting killer intervals near the window.
fn bfs_cover(j: &Jigsaw, budget: usize) -> Result<CoverCertificate, PmError> {
    let l = j.l.clone();
    let v1 = j.vertices[1].as_rat().unwrap().to_integer();
    let start = Rat::from(&v1 - &l);
    let end = Rat::from(v1.clone());
    let lo = &start - Rat::one();
    let hi = &end + Rat::one();
    let gens = j.generators();
    let mut seen: HashSet<ProjMatrix> = HashSet::new();
    let mut frontier = vec![ProjMatrix::identity()];
    seen.insert(ProjMatrix::identity());
    let mut intervals: Vec<KillerInterval> = Vec::new();
    const STATE_CAP: usize = 200_000;
    for _ in 0..budget {
        let mut next = Vec::new();
        for g in &frontier {
            if seen.len() > STATE_CAP {
                return Err(PmError::BudgetExhausted);
            }
            for i in &gens {
                let h = g.mul(i);
                if seen.insert(h.clone()) {
                    if let Ok(iv) = killer_interval(&h) {
                        if iv.cusp >= lo && iv.cusp <= hi {
                            intervals.push(iv);
                        }
                    }
                    next.push(h);
                }
            }
        }
        frontier = next;
        let mut ivs = intervals.clone();
        dedup_intervals(&mut ivs);
        let cert = CoverCertificate {
            intervals: ivs,
            window: (start.clone(), end.clone()),
        };
        if cert.verify().is_ok() {
            return Ok(cert);
        }
    }
    Err(PmError::BudgetExhausted)
}

impl CoverCertificate {
    /// The same cover wrapped modulo the period translation to the window
    /// (start, start + L].  Each interval is shifted by T^{kL} (a group
    /// element) for every k that makes it meet the new window, so coverage
    /// is preserved point by point.
    pub fn rebased(&self, start: &Rat) -> CoverCertificate {
        let l = &self.window.1 - &self.window.0;
        let end = start + &l;
        let mut intervals = Vec::new();
        for iv in &self.intervals {
            // k range for which (left + kL, right + kL) meets (start, end]
            let k_lo = ((start - iv.right()) / &l).floor().to_integer();
            let k_hi = ((&end - iv.left()) / &l).ceil().to_integer();
            let mut k = k_lo;
            while k <= k_hi {
                let off = &l * Rat::from(k.clone());
                let shifted_left = iv.left() + &off;
                let shifted_right = iv.right() + &off;
                if &shifted_right > start && shifted_left < end {
                    let t = ProjMatrix::from_rat(
                        &Rat::one(),
                        &off,
                        &Rat::zero(),
                        &Rat::one(),
                    )
                    .unwrap();
                    let witness = t.mul(&iv.witness);
                    intervals.push(
                        killer_interval(&witness)
                            .expect("translated witness still moves infinity"),
                    );
                }
                k += 1;
            }
        }
        let mut cert = CoverCertificate {
            intervals,
            window: (start.clone(), end),
        };
        cert.intervals
            .sort_by(|a, b| a.cusp.cmp(&b.cusp).then(b.radius.cmp(&a.radius)));
        cert.intervals.dedup_by(|a, b| a.cusp == b.cusp && a.radius == b.radius);
        cert
    }
}

/// Certify that (0, L] is covered by killer intervals.  The constructive
/// strategy is tried first, then a budgeted word search; the resulting cover
/// is wrapped to the canonical window.
pub fn cover_fundamental_interval(
    j: &Jigsaw,
    budget: usize,
) -> Result<CoverCertificate, PmError> {
    let cert = match constructive_cover(j) {
        Ok(cert) => cert,
        Err(_) => bfs_cover(j, budget)?,
    };
    let rebased = cert.rebased(&Rat::zero());
    rebased.verify()?;
    Ok(rebased)
}

/// One step of a descent trace: the value before the step and the witness
/// applied (inverse of the killer witness, or a power of the period
/// translation).
#[derive(Clone, Debug)]
pub struct DescentStep {
    pub value: ExtRational,
    pub witness: ProjMatrix,
}

/// Repeatedly translates into the fundamental window and applies killer
/// witnesses; denominators strictly decrease until infinity is reached.
pub fn cusp_descent(j: &Jigsaw, x: &Rat, cover: &CoverCertificate) -> Vec<DescentStep> {
    let mut trace: Vec<DescentStep> = Vec::new();
    let translation = period_translation(j);
    assert_eq!(
        translation.translation_length(),
        Some(Rat::from(j.l.clone()))
    );
    let l = Rat::from(j.l.clone());
    let (start, end) = (&cover.window.0, &cover.window.1);
    let mut cur = Fin(x.clone());
    let mut guard = 0usize;
    while cur != Inf {
        guard += 1;
        assert!(guard < 100_000, "descent failed to terminate");
        let v = match &cur {
            Fin(v) => v.clone(),
            Inf => break,
        };
        // translate into (start, end]
        let offset = (&v - end) / &l;
        let mut k = offset.ceil().to_integer();
        let mut shifted = &v - &l * Rat::from(k.clone());
        while shifted > *end {
            shifted = &shifted - &l;
            k += Int::one();
        }
        while shifted <= *start {
            shifted = &shifted + &l;
            k -= Int::one();
        }
        if !k.is_zero() {
            let e = i64::try_from(&-&k).expect("translation power fits in i64");
            let w = translation.pow(e);
            trace.push(DescentStep {
                value: cur.clone(),
                witness: w.clone(),
            });
            cur = w.apply(&cur);
            continue;
        }
        // find a covering interval
        let iv = cover
            .intervals
            .iter()
            .find(|iv| iv.cusp == shifted)
            .or_else(|| {
                cover
                    .intervals
                    .iter()
                    .find(|iv| iv.left() < shifted && iv.right() > shifted)
            })
            .expect("certified cover leaves no gap");
        let w = iv.witness.inv();
        trace.push(DescentStep {
            value: cur.clone(),
            witness: w.clone(),
        });
        cur = w.apply(&cur);
    }
    trace
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PmVerdict {
    Pseudomodular,
    Arithmetic,
    Unknown,
}

/// Pseudomodular iff the cusp set certifiably contains all rationals and the
/// group is not arithmetic; `Unknown` when the cover search fails.
pub fn is_pseudomodular(j: &Jigsaw, budget: usize) -> (PmVerdict, Option<CoverCertificate>) {
    if arithmetic_test(&j.generators()).arithmetic {
        return (PmVerdict::Arithmetic, None);
    }
    match cover_fundamental_interval(j, budget) {
        Ok(cert) => (PmVerdict::Pseudomodular, Some(cert)),
        Err(_) => (PmVerdict::Unknown, None),
    }
}
