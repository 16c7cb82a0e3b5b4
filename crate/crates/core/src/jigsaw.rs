//! Jigsaw tiles, blueprints and assembled jigsaws: ideal polygons glued from
//! marked triangles along equal-label sides, with the boundary involutions,
//! J-widths and vertical-edge bookkeeping of the induced tessellation.

use crate::exact::{ExtRational, Fin, Inf, Int, ProjMatrix, Rat};
use crate::weierstrass::WeierstrassParams;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum JigsawError {
    #[error("glue labels do not match: parent {0}, child {1}")]
    LabelMismatch(Rat, Rat),
    #[error("side already glued")]
    SideOccupied,
    #[error("tile {0} glued to a later tile {1}: blueprint must be parent-first")]
    NotParentFirst(usize, usize),
    #[error("no valid placement map for glue edge")]
    NoPlacement,
    #[error("assembled tiles do not form an ideal polygon")]
    NotPolygon,
    #[error("blueprint parse error: {0}")]
    Parse(String),
    #[error("unknown tile id {0}")]
    UnknownTile(String),
    #[error("no free side of the parent carries label {0}")]
    NoFreeSide(Rat),
    #[error("generator product is not a translation by L")]
    BadTranslation,
}

/// An integral jigsaw tile Delta^(n) = Delta(1, 1/n, n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileType {
    pub n: u64,
}

impl TileType {
    pub fn params(&self) -> WeierstrassParams {
        WeierstrassParams::integral(self.n)
    }
}

/// Side type of a label: n for both labels n and 1/n.
pub fn label_type(label: &Rat) -> u64 {
    let (n, d) = (label.numer(), label.denom());
    let t = if n >= d { n } else { d };
    u64::try_from(t).expect("side types fit in u64")
}

pub(crate) fn side_label(params: &WeierstrassParams, side: u8) -> Rat {
    let (k1, k2, k3) = params.k();
    match side {
        1 => k1.clone(),
        2 => k2.clone(),
        3 => k3.clone(),
        _ => panic!("side index must be 1, 2 or 3"),
    }
}

/// Ordered endpoints of a tile side in standard position (a,b,c) = (inf,-1,0).
pub(crate) fn std_side_ends(side: u8) -> (ExtRational, ExtRational) {
    let m1 = ExtRational::from_i64(-1);
    let z = ExtRational::from_i64(0);
    match side {
        1 => (Inf, m1),
        2 => (m1, z),
        3 => (z, Inf),
        _ => panic!("side index must be 1, 2 or 3"),
    }
}

/// One tile of a blueprint; tile 0 is the root, placed on (inf, -1, 0).
#[derive(Clone, Debug)]
pub struct BlueprintTile {
    pub id: String,
    pub params: WeierstrassParams,
    /// (parent tile index, parent side, this tile's side); None for the root.
    pub glue: Option<(usize, u8, u8)>,
}

/// A rooted tree of tiles with explicit glue sides.
#[derive(Clone, Debug)]
pub struct JigsawBlueprint {
    pub tiles: Vec<BlueprintTile>,
}

impl JigsawBlueprint {
    pub fn root(params: WeierstrassParams) -> Self {
        JigsawBlueprint {
            tiles: vec![BlueprintTile {
                id: "t0".into(),
                params,
                glue: None,
            }],
        }
    }

    pub fn root_integral(n: u64) -> Self {
        Self::root(WeierstrassParams::integral(n))
    }

    /// Glues a new tile; returns its index.
    pub fn glue(
        &mut self,
        parent: usize,
        parent_side: u8,
        params: WeierstrassParams,
        child_side: u8,
    ) -> usize {
        let id = format!("t{}", self.tiles.len());
        self.tiles.push(BlueprintTile {
            id,
            params,
            glue: Some((parent, parent_side, child_side)),
        });
        self.tiles.len() - 1
    }

    pub fn glue_integral(&mut self, parent: usize, parent_side: u8, n: u64, child_side: u8) -> usize {
        self.glue(parent, parent_side, WeierstrassParams::integral(n), child_side)
    }

    /// Text format, one tile per line:
    ///   tile <id> type <n>
    ///   tile <id> type <n>; glue <parent-id> <label>
    /// The first tile is the root.  <label> is 1, n or 1/n; the glued parent
    /// side is the free side with that label of largest side index, and the
    /// child side is its own side with that label of smallest index.
    pub fn parse(text: &str) -> Result<Self, JigsawError> {
        let mut tiles: Vec<BlueprintTile> = Vec::new();
        let mut used: Vec<[bool; 3]> = Vec::new();
        let mut ids: BTreeMap<String, usize> = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (tile_part, glue_part) = match line.split_once(';') {
                Some((t, g)) => (t.trim(), Some(g.trim())),
                None => (line, None),
            };
            let tw: Vec<&str> = tile_part.split_whitespace().collect();
            if tw.len() != 4 || tw[0] != "tile" || tw[2] != "type" {
                return Err(JigsawError::Parse(format!("bad tile clause: {tile_part}")));
            }
            let id = tw[1].to_string();
            let n: u64 = tw[3]
                .parse()
                .map_err(|_| JigsawError::Parse(format!("bad tile type: {}", tw[3])))?;
            if n == 0 {
                return Err(JigsawError::Parse("tile type must be positive".into()));
            }
            let params = WeierstrassParams::integral(n);
            let glue = match glue_part {
                None => {
                    if !tiles.is_empty() {
                        return Err(JigsawError::Parse(format!(
                            "non-root tile {id} has no glue clause"
                        )));
                    }
                    None
                }
                Some(g) => {
                    let gw: Vec<&str> = g.split_whitespace().collect();
                    if gw.len() != 3 || gw[0] != "glue" {
                        return Err(JigsawError::Parse(format!("bad glue clause: {g}")));
                    }
                    let parent = *ids
                        .get(gw[1])
                        .ok_or_else(|| JigsawError::UnknownTile(gw[1].to_string()))?;
                    let label = parse_label(gw[2])?;
                    let pparams = tiles[parent].params.clone();
                    let pside = (1..=3u8)
                        .rev()
                        .find(|&s| {
                            !used[parent][s as usize - 1] && side_label(&pparams, s) == label
                        })
                        .ok_or_else(|| JigsawError::NoFreeSide(label.clone()))?;
                    let cside = (1..=3u8)
                        .find(|&s| side_label(&params, s) == label)
                        .ok_or_else(|| JigsawError::NoFreeSide(label.clone()))?;
                    used[parent][pside as usize - 1] = true;
                    Some((parent, pside, cside))
                }
            };
            let mut u = [false; 3];
            if let Some((_, _, cs)) = glue {
                u[cs as usize - 1] = true;
            }
            if ids.insert(id.clone(), tiles.len()).is_some() {
                return Err(JigsawError::Parse(format!("duplicate tile id {id}")));
            }
            used.push(u);
            tiles.push(BlueprintTile { id, params, glue });
        }
        if tiles.is_empty() {
            return Err(JigsawError::Parse("empty blueprint".into()));
        }
        Ok(JigsawBlueprint { tiles })
    }
}

fn parse_label(s: &str) -> Result<Rat, JigsawError> {
    let parse_int = |t: &str| -> Result<Int, JigsawError> {
        t.parse::<BigInt>()
            .map_err(|_| JigsawError::Parse(format!("bad label: {s}")))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(Rat::new(parse_int(n)?, parse_int(d)?)),
        None => Ok(Rat::from(parse_int(s)?)),
    }
}

/// Exact nullspace of an n x 4 rational matrix (basis of solutions).
fn nullspace4(mut rows: Vec<[Rat; 4]>) -> Vec<[Rat; 4]> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..4 {
        if let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            rows.swap(r, p);
            let inv = rows[r][col].clone().recip();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for c in 0..4 {
                        let sub = &rows[r][c] * &f;
                        rows[i][c] = &rows[i][c] - &sub;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    let free: Vec<usize> = (0..4).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rows[i][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Row expressing m(P) = Q for the unknown entries (a,b,c,d) of m.
fn endpoint_row(p: &ExtRational, q: &ExtRational) -> [Rat; 4] {
    let (p1, p2) = p.proj();
    let (q1, q2) = q.proj();
    [
        Rat::from(&p1 * &q2),
        Rat::from(&p2 * &q2),
        Rat::from(-(&p1 * &q1)),
        Rat::from(-(&p2 * &q1)),
    ]
}

/// The alignment map in standard coordinates: sends the child's glue side onto
/// the parent's side (ordered endpoints to ordered endpoints) and conjugates
/// the child's side involution to the parent's.  Orientation-preserving.
fn align_map(
    child_inv: &ProjMatrix,
    child_ends: (&ExtRational, &ExtRational),
    parent_inv: &ProjMatrix,
    parent_ends: (&ExtRational, &ExtRational),
) -> Result<ProjMatrix, JigsawError> {
    let (x1, x2, x3, x4) = {
        let (a, b, c, d) = child_inv.entries();
        (a.clone(), b.clone(), c.clone(), d.clone())
    };
    let (y1, y2, y3, y4) = {
        let (a, b, c, d) = parent_inv.entries();
        (a.clone(), b.clone(), c.clone(), d.clone())
    };
    for sigma in [1i64, -1] {
        let s = Int::from(sigma);
        let z = || Rat::zero();
        let r = |v: Int| Rat::from(v);
        let mut rows = vec![
            endpoint_row(child_ends.0, parent_ends.0),
            endpoint_row(child_ends.1, parent_ends.1),
            // m * X = sigma * Y * m, entrywise
            [r(&x1 - &s * &y1), r(x3.clone()), r(-(&s * &y2)), z()],
            [r(x2.clone()), r(&x4 - &s * &y1), z(), r(-(&s * &y2))],
            [r(-(&s * &y3)), z(), r(&x1 - &s * &y4), r(x3.clone())],
            [z(), r(-(&s * &y3)), r(x2.clone()), r(&x4 - &s * &y4)],
        ];
        for v in nullspace4(std::mem::take(&mut rows)) {
            if let Ok(m) = ProjMatrix::from_rat(&v[0], &v[1], &v[2], &v[3]) {
                if m.det().is_positive()
                    && m.apply(child_ends.0) == *parent_ends.0
                    && m.apply(child_ends.1) == *parent_ends.1
                    && m.mul(child_inv).mul(&m.inv()) == *parent_inv
                {
                    return Ok(m);
                }
            }
        }
    }
    Err(JigsawError::NoPlacement)
}

#[derive(Clone, Debug)]
pub struct PlacedTile {
    pub params: WeierstrassParams,
    pub placement: ProjMatrix,
    /// Images of (inf, -1, 0).
    pub verts: [ExtRational; 3],
}

/// A boundary side of the assembled polygon, in cyclic order.
#[derive(Clone, Debug)]
pub struct SideData {
    /// Counterclockwise endpoints: s_0 = (-inf, v1), ..., s_{N+1} = (v_{N+1}, inf).
    pub ends: (ExtRational, ExtRational),
    pub label: Rat,
    pub side_type: u64,
    pub inv: ProjMatrix,
}

#[derive(Clone, Debug)]
pub struct Jigsaw {
    pub tiles: Vec<PlacedTile>,
    /// v_0 = the infinite cusp, then v_1 < ... < v_{N+1} finite ascending.
    pub vertices: Vec<ExtRational>,
    pub sides: Vec<SideData>,
    /// (tile type, multiplicity), ascending by type.
    pub signature: Vec<(u64, usize)>,
    /// Length of the fundamental interval.
    pub l: Int,
    /// JW(v_0), ..., JW(v_{N+1}), aligned with `vertices`.
    pub j_widths: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalEdge {
    pub m: Int,
    pub edge_type: u64,
}

/// Per-tile J-width contribution of a standard vertex (0 = a, 1 = b, 2 = c).
pub(crate) fn tile_vertex_width(params: &WeierstrassParams, v: usize) -> u64 {
    let t = [
        label_type(&side_label(params, 1)),
        label_type(&side_label(params, 2)),
        label_type(&side_label(params, 3)),
    ];
    // vertex a meets sides 3,1; b meets 1,2; c meets 2,3
    let (s, t2) = match v {
        0 => (t[2], t[0]),
        1 => (t[0], t[1]),
        2 => (t[1], t[2]),
        _ => unreachable!(),
    };
    if s == t2 {
        s
    } else {
        1
    }
}

pub(crate) fn tile_type_of(params: &WeierstrassParams) -> u64 {
    (1..=3u8)
        .map(|s| label_type(&side_label(params, s)))
        .max()
        .unwrap()
}

pub fn assemble(bp: &JigsawBlueprint) -> Result<Jigsaw, JigsawError> {
    let n_tiles = bp.tiles.len();
    let mut placed: Vec<PlacedTile> = Vec::with_capacity(n_tiles);
    let mut used: Vec<[bool; 3]> = vec![[false; 3]; n_tiles];

    for (i, tile) in bp.tiles.iter().enumerate() {
        let g = match &tile.glue {
            None => {
                if i != 0 {
                    return Err(JigsawError::Parse(format!(
                        "tile {} is not the root but has no glue",
                        tile.id
                    )));
                }
                ProjMatrix::identity()
            }
            Some((parent, pside, cside)) => {
                if *parent >= i {
                    return Err(JigsawError::NotParentFirst(*parent, i));
                }
                let pparams = &bp.tiles[*parent].params;
                let plabel = side_label(pparams, *pside);
                let clabel = side_label(&tile.params, *cside);
                if plabel != clabel {
                    return Err(JigsawError::LabelMismatch(plabel, clabel));
                }
                if used[*parent][*pside as usize - 1] || used[i][*cside as usize - 1] {
                    return Err(JigsawError::SideOccupied);
                }
                used[*parent][*pside as usize - 1] = true;
                used[i][*cside as usize - 1] = true;
                let p_inv = pparams.involution(*pside);
                let c_inv = tile.params.involution(*cside);
                let (c0, c1) = std_side_ends(*cside);
                let (p0, p1) = std_side_ends(*pside);
                let m = align_map(&c_inv, (&c0, &c1), &p_inv, (&p0, &p1))?;
                placed[*parent].placement.mul(&p_inv).mul(&m)
            }
        };
        let verts = [
            g.apply(&Inf),
            g.apply(&ExtRational::from_i64(-1)),
            g.apply(&ExtRational::from_i64(0)),
        ];
        placed.push(PlacedTile {
            params: tile.params.clone(),
            placement: g,
            verts,
        });
    }

    // polygon vertices: all distinct tile corners; must be inf + (N+1) finite
    let mut finite: Vec<Rat> = Vec::new();
    let mut has_inf = false;
    for t in &placed {
        for v in &t.verts {
            match v {
                Inf => has_inf = true,
                Fin(r) => {
                    if !finite.contains(r) {
                        finite.push(r.clone());
                    }
                }
            }
        }
    }
    finite.sort();
    if !has_inf || finite.len() != n_tiles + 1 {
        return Err(JigsawError::NotPolygon);
    }
    let mut vertices = vec![Inf];
    vertices.extend(finite.iter().cloned().map(Fin));

    // boundary sides: the unglued tile sides, matched to the cyclic slots
    let mut sides: Vec<Option<SideData>> = vec![None; n_tiles + 2];
    for (i, t) in &mut placed.iter().enumerate() {
        for s in 1..=3u8 {
            if used[i][s as usize - 1] {
                continue;
            }
            let (e0, e1) = std_side_ends(s);
            let ends = (t.placement.apply(&e0), t.placement.apply(&e1));
            let label = side_label(&t.params, s);
            let inv = t
                .placement
                .mul(&t.params.involution(s))
                .mul(&t.placement.inv());
            // slot: (inf, v1) -> 0, (v_j, v_{j+1}) -> j, (v_{N+1}, inf) -> N+1
            let slot = match (&ends.0, &ends.1) {
                (Inf, Fin(x)) | (Fin(x), Inf) => {
                    if *x == finite[0] {
                        0
                    } else if *x == finite[n_tiles] {
                        n_tiles + 1
                    } else {
                        return Err(JigsawError::NotPolygon);
                    }
                }
                (Inf, Inf) => return Err(JigsawError::NotPolygon),
                (Fin(x), Fin(y)) => {
                    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
                    let j = finite
                        .iter()
                        .position(|v| v == lo)
                        .ok_or(JigsawError::NotPolygon)?;
                    if j + 1 >= finite.len() || &finite[j + 1] != hi {
                        return Err(JigsawError::NotPolygon);
                    }
                    j + 1
                }
            };
            if sides[slot].is_some() {
                return Err(JigsawError::NotPolygon);
            }
            sides[slot] = Some(SideData {
                ends,
                side_type: label_type(&label),
                label,
                inv,
            });
        }
    }
    let sides: Vec<SideData> = sides
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(JigsawError::NotPolygon)?;

    // signature and L
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for t in &placed {
        *counts.entry(tile_type_of(&t.params)).or_insert(0) += 1;
    }
    let signature: Vec<(u64, usize)> = counts.into_iter().collect();
    let l: Int = signature
        .iter()
        .map(|(n, m)| Int::from(*m as u64) * Int::from(n + 2))
        .sum();

    // J-widths per polygon vertex
    let mut j_widths = vec![Int::zero(); n_tiles + 2];
    for t in &placed {
        for (vi, v) in t.verts.iter().enumerate() {
            let idx = vertices
                .iter()
                .position(|u| u == v)
                .expect("tile corner is a polygon vertex");
            j_widths[idx] += Int::from(tile_vertex_width(&t.params, vi));
        }
    }
    if j_widths.iter().sum::<Int>() != l {
        return Err(JigsawError::NotPolygon);
    }

    // generator product must be the parabolic x -> x + L
    let mut prod = ProjMatrix::identity();
    for s in &sides {
        prod = s.inv.mul(&prod); // iota_{N+1} ... iota_0
    }
    if prod.translation_length() != Some(Rat::from(l.clone())) {
        return Err(JigsawError::BadTranslation);
    }

    Ok(Jigsaw {
        tiles: placed,
        vertices,
        sides,
        signature,
        l,
        j_widths,
    })
}

impl Jigsaw {
    pub fn size(&self) -> usize {
        self.tiles.len()
    }

    /// iota_0, ..., iota_{N+1} in cyclic side order.
    pub fn generators(&self) -> Vec<ProjMatrix> {
        self.sides.iter().map(|s| s.inv.clone()).collect()
    }

    pub fn j_widths(&self) -> &[Int] {
        &self.j_widths
    }

    /// Vertical edges e_k = [inf, m_k] of the polygon tessellation for k in
    /// the given window; e_0 = [inf, v_1], successive k leftwards.
    pub fn vertical_edges(&self, window: std::ops::Range<i64>) -> Vec<VerticalEdge> {
        let period = self.sides.len() as i64; // N + 2
        let v1 = self.vertices[1]
            .as_rat()
            .expect("v_1 is finite")
            .clone();
        assert!(v1.is_integer(), "v_1 of a normalized jigsaw is an integer");
        let m0 = v1.to_integer();
        let idx = |k: i64| -> usize { (k.rem_euclid(period)) as usize };
        let mut out = Vec::new();
        for k in window {
            // m_k = m_0 - sum_{j=1..k} JW(v_j)  (negative k: add back)
            let mut m = m0.clone();
            if k >= 0 {
                for j in 1..=k {
                    m -= &self.j_widths[idx(j)];
                }
            } else {
                for j in (k + 1)..=0 {
                    m += &self.j_widths[idx(j)];
                }
            }
            out.push(VerticalEdge {
                m,
                edge_type: self.sides[idx(k)].side_type,
            });
        }
        out
    }
}

/// The pi-rotation about the marked point m + i*sqrt(n) on a vertical edge.
pub fn rotation_about_vertical(m: &Int, n: u64) -> ProjMatrix {
    ProjMatrix::new(
        m.clone(),
        -(m * m + Int::from(n)),
        Int::one(),
        -m.clone(),
    )
    .expect("rotation matrix is nonsingular")
}

/// Single tile Delta^(n) as a one-tile jigsaw blueprint.
pub fn single_tile(n: u64) -> JigsawBlueprint {
    JigsawBlueprint::root_integral(n)
}

/// The diamond S(1,n): Delta^(1) on (inf,-1,0) with a Delta^(n) glued across
/// its side [0, inf], giving vertex set {inf, -1, 0, 1}.
pub fn diamond_s1n(n: u64) -> JigsawBlueprint {
    let mut bp = JigsawBlueprint::root_integral(1);
    bp.glue_integral(0, 3, n, 1);
    bp
}

/// The star S(1,n): a central Delta^(1) with Delta^(n) glued on all sides.
pub fn star_s1n(n: u64) -> JigsawBlueprint {
    let mut bp = JigsawBlueprint::root_integral(1);
    for side in [3u8, 1, 2] {
        bp.glue_integral(0, side, n, 1);
    }
    bp
}
