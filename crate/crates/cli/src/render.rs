//! Upper-half-plane SVG output: ideal triangles drawn as semicircular arcs
//! and vertical rays, one `<path>` per triangle, cusps labeled on the real
//! axis.  Coordinates are emitted as vectors; the viewBox does the clipping.

use jigsaw_groups::exact::{ExtRational, ProjMatrix, Rat};
use jigsaw_groups::jigsaw::Jigsaw;
use jigsaw_groups::weierstrass::{triangles_to_level, WeierstrassParams};
use num_traits::ToPrimitive;
use std::collections::{HashSet, VecDeque};
use std::fmt::Write;

pub struct Svg {
    pub text: String,
    pub triangles: usize,
}

const WIDTH: f64 = 900.0;
const MARGIN: f64 = 18.0;

struct Canvas {
    lo: f64,
    scale: f64,
    base: f64, // y of the real axis in SVG coordinates
}

impl Canvas {
    fn new(lo: f64, hi: f64) -> Canvas {
        let scale = WIDTH / (hi - lo);
        let height = (WIDTH / 3.0).max(120.0);
        Canvas {
            lo,
            scale,
            base: height,
        }
    }

    fn x(&self, v: f64) -> f64 {
        (v - self.lo) * self.scale
    }
}

fn rat_f64(r: &Rat) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap_or(0.0) / r.denom().to_f64().unwrap_or(1.0))
}

/// Path data for one ideal triangle.  At most one vertex is infinite; finite
/// vertices are taken in increasing order so arcs always bulge upward.
fn triangle_path(c: &Canvas, verts: &[ExtRational]) -> String {
    let mut finite: Vec<f64> = verts
        .iter()
        .filter_map(|v| v.as_rat().map(rat_f64))
        .collect();
    finite.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let has_inf = finite.len() < verts.len();
    let mut d = String::new();
    let arc = |d: &mut String, from: f64, to: f64| {
        let r = (to - from).abs() / 2.0 * c.scale;
        let sweep = if to > from { 1 } else { 0 };
        let _ = write!(d, " A {r:.3} {r:.3} 0 0 {sweep} {:.3} {:.3}", c.x(to), c.base);
    };
    if has_inf {
        // two verticals joined by an arc and the top edge
        let (u, v) = (finite[0], finite[1]);
        let _ = write!(d, "M {:.3} 0 L {:.3} {:.3}", c.x(u), c.x(u), c.base);
        arc(&mut d, u, v);
        let _ = write!(d, " L {:.3} 0 Z", c.x(v));
    } else {
        let (a, b, z) = (finite[0], finite[1], finite[2]);
        let _ = write!(d, "M {:.3} {:.3}", c.x(a), c.base);
        arc(&mut d, a, z);
        arc(&mut d, z, b);
        arc(&mut d, b, a);
        d.push_str(" Z");
    }
    d
}

fn shade(level: usize) -> &'static str {
    const SHADES: [&str; 5] = ["#dbe9f6", "#c3d9ee", "#a9c8e4", "#8fb7da", "#f2d9c0"];
    SHADES[level % SHADES.len()]
}

struct Builder {
    body: String,
    canvas: Canvas,
    triangles: usize,
    labels: Vec<(f64, String)>,
    lo: Rat,
    hi: Rat,
}

impl Builder {
    fn new(window: (&Rat, &Rat)) -> Builder {
        Builder {
            body: String::new(),
            canvas: Canvas::new(rat_f64(window.0), rat_f64(window.1)),
            triangles: 0,
            labels: Vec::new(),
            lo: window.0.clone(),
            hi: window.1.clone(),
        }
    }

    /// Exact visibility test: skip a triangle whose finite vertices all sit
    /// on one side of the window unless an infinite vertex widens it.
    fn visible(&self, verts: &[ExtRational]) -> bool {
        let finite: Vec<&Rat> = verts.iter().filter_map(|v| v.as_rat()).collect();
        if finite.len() < verts.len() {
            return finite.iter().any(|r| **r <= self.hi) || finite.is_empty();
        }
        finite.iter().any(|r| **r >= self.lo) && finite.iter().any(|r| **r <= self.hi)
    }

    fn push(&mut self, verts: &[ExtRational], shade_idx: usize) {
        if !self.visible(verts) {
            return;
        }
        let d = triangle_path(&self.canvas, verts);
        let fill = shade(shade_idx);
        let _ = writeln!(
            self.body,
            "  <path d=\"{d}\" fill=\"{fill}\" fill-opacity=\"0.55\" stroke=\"#35506b\" stroke-width=\"0.7\"/>"
        );
        self.triangles += 1;
        for v in verts {
            if let Some(r) = v.as_rat() {
                if *r >= self.lo && *r <= self.hi {
                    self.labels.push((rat_f64(r), r.to_string()));
                }
            }
        }
    }

    fn finish(mut self) -> Svg {
        self.labels
            .sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        self.labels.dedup_by(|a, b| a.1 == b.1);
        let mut labels = String::new();
        let mut last_x = f64::NEG_INFINITY;
        for (x, text) in &self.labels {
            let px = self.canvas.x(*x);
            // do not overprint labels of nearby cusps
            if px - last_x < 24.0 {
                continue;
            }
            last_x = px;
            let _ = writeln!(
                labels,
                "  <text x=\"{px:.3}\" y=\"{:.3}\" font-size=\"10\" text-anchor=\"middle\" fill=\"#222\">{text}</text>",
                self.canvas.base + 12.0
            );
        }
        let h = self.canvas.base + MARGIN;
        let axis = format!(
            "  <line x1=\"0\" y1=\"{0:.3}\" x2=\"{WIDTH}\" y2=\"{0:.3}\" stroke=\"#000\" stroke-width=\"1\"/>\n",
            self.canvas.base
        );
        let text = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{h}\" viewBox=\"0 0 {WIDTH} {h}\">\n{axis}{}{labels}</svg>\n",
            self.body
        );
        Svg {
            text,
            triangles: self.triangles,
        }
    }
}

pub fn render_weierstrass(w: &WeierstrassParams, depth: u32, window: (&Rat, &Rat)) -> Svg {
    let mut b = Builder::new(window);
    for t in triangles_to_level(w, depth) {
        let verts: Vec<ExtRational> = t.vertices().into_iter().cloned().collect();
        b.push(&verts, t.level as usize);
    }
    b.finish()
}

/// Render group translates of the fundamental polygon up to word length
/// `depth` over the boundary involutions, tile by tile, shaded by tile type.
pub fn render_jigsaw(j: &Jigsaw, depth: u32, window: (&Rat, &Rat)) -> Svg {
    let mut b = Builder::new(window);
    let gens = j.generators();
    let mut queue: VecDeque<(ProjMatrix, u32, usize)> = VecDeque::new();
    let mut seen: HashSet<ProjMatrix> = HashSet::new();
    queue.push_back((ProjMatrix::identity(), 0, usize::MAX));
    seen.insert(ProjMatrix::identity());
    while let Some((h, d, from)) = queue.pop_front() {
        for tile in &j.tiles {
            let verts: Vec<ExtRational> = tile.verts.iter().map(|v| h.apply(v)).collect();
            let (k1, k2, k3) = tile.params.k();
            let ty = [k1, k2, k3]
                .iter()
                .map(|k| jigsaw_groups::jigsaw::label_type(k))
                .max()
                .unwrap() as usize;
            b.push(&verts, ty);
        }
        if d < depth {
            for (i, g) in gens.iter().enumerate() {
                if i == from {
                    continue;
                }
                let next = h.mul(g);
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1, i));
                }
            }
        }
    }
    b.finish()
}
