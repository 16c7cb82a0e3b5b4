//! Weierstrass groups Gamma(k1,k2,k3): parameter conversions, the three
//! generator involutions, the triangulation recursion and Farey-level
//! enumeration.

use crate::exact::{ExtRational, Fin, Inf, Int, ProjMatrix, Rat};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("parameters must be positive")]
    NotPositive,
    #[error("k1*k2*k3 must equal 1")]
    ProductNotOne,
    #[error("need tau > 1 + u^2")]
    TorusDomain,
    #[error("degenerate triangle")]
    DegenerateTriangle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassParams {
    k1: Rat,
    k2: Rat,
    k3: Rat,
}

impl WeierstrassParams {
    pub fn new(k1: Rat, k2: Rat, k3: Rat) -> Result<Self, ParamError> {
        if !k1.is_positive() || !k2.is_positive() || !k3.is_positive() {
            return Err(ParamError::NotPositive);
        }
        if &k1 * &k2 * &k3 != Rat::one() {
            return Err(ParamError::ProductNotOne);
        }
        Ok(WeierstrassParams { k1, k2, k3 })
    }

    /// Gamma(1, 1/n, n), the integral family.
    pub fn integral(n: u64) -> Self {
        let n = Rat::from(Int::from(n));
        WeierstrassParams {
            k1: Rat::one(),
            k2: n.recip(),
            k3: n,
        }
    }

    pub fn k(&self) -> (&Rat, &Rat, &Rat) {
        (&self.k1, &self.k2, &self.k3)
    }

    /// The generator pi-rotations iota_1, iota_2, iota_3 as primitive integer
    /// representatives (the 1/sqrt(k) scalars are never materialized).
    pub fn involutions(&self) -> (ProjMatrix, ProjMatrix, ProjMatrix) {
        let one = Rat::one();
        let i1 = ProjMatrix::from_rat(&self.k1, &(&one + &self.k1), &-self.k1.clone(), &-self.k1.clone())
            .unwrap();
        let i2 = ProjMatrix::from_rat(&one, &one, &-(&self.k2 + &one), &-one.clone()).unwrap();
        let i3 = ProjMatrix::from_rat(&Rat::zero(), &self.k3, &-one.clone(), &Rat::zero()).unwrap();
        (i1, i2, i3)
    }

    pub fn involution(&self, side: u8) -> ProjMatrix {
        let (i1, i2, i3) = self.involutions();
        match side {
            1 => i1,
            2 => i2,
            3 => i3,
            _ => panic!("side index must be 1, 2 or 3"),
        }
    }

    /// iota3 iota2 iota1, the parabolic x -> x + L with L = 1 + k3 + 1/k1.
    pub fn translation(&self) -> ProjMatrix {
        let (i1, i2, i3) = self.involutions();
        i3.mul(&i2).mul(&i1)
    }

    pub fn translation_len(&self) -> Rat {
        Rat::one() + &self.k3 + self.k1.recip()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedTorusParams {
    u2: Rat,
    two_tau: Rat,
}

impl PuncturedTorusParams {
    pub fn new(u2: Rat, two_tau: Rat) -> Result<Self, ParamError> {
        if !u2.is_positive() {
            return Err(ParamError::NotPositive);
        }
        let tau = &two_tau / Rat::from(Int::from(2));
        if tau <= Rat::one() + &u2 {
            return Err(ParamError::TorusDomain);
        }
        Ok(PuncturedTorusParams { u2, two_tau })
    }

    pub fn parts(&self) -> (&Rat, &Rat) {
        (&self.u2, &self.two_tau)
    }
}

pub fn from_punctured_torus(p: &PuncturedTorusParams) -> WeierstrassParams {
    let tau = &p.two_tau / Rat::from(Int::from(2));
    let t = tau - Rat::one() - &p.u2; // tau - 1 - u^2 > 0
    WeierstrassParams::new(t.recip(), &t / &p.u2, p.u2.clone()).unwrap()
}

pub fn to_punctured_torus(w: &WeierstrassParams) -> PuncturedTorusParams {
    let u2 = w.k3.clone();
    let tau = w.k1.recip() + Rat::one() + &w.k3;
    PuncturedTorusParams::new(u2, tau * Rat::from(Int::from(2))).unwrap()
}

/// An ideal triangle of the tessellation, recorded as the marked image of
/// (inf, -1, 0), together with its combinatorial level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triangle {
    pub a: ExtRational,
    pub b: ExtRational,
    pub c: ExtRational,
    pub level: u32,
}

impl Triangle {
    pub fn new(
        a: ExtRational,
        b: ExtRational,
        c: ExtRational,
        level: u32,
    ) -> Result<Self, ParamError> {
        if a == b || b == c || c == a {
            return Err(ParamError::DegenerateTriangle);
        }
        if let (Fin(x), Fin(y), Fin(z)) = (&a, &b, &c) {
            // orientation convention for all-finite triangles
            if !((x - y) * (y - z) * (z - x)).is_positive() {
                return Err(ParamError::DegenerateTriangle);
            }
        }
        Ok(Triangle { a, b, c, level })
    }

    pub fn root() -> Self {
        Triangle {
            a: Inf,
            b: ExtRational::from_i64(-1),
            c: ExtRational::from_i64(0),
            level: 0,
        }
    }

    pub fn vertices(&self) -> [&ExtRational; 3] {
        [&self.a, &self.b, &self.c]
    }

    fn side_endpoints(&self, side: u8) -> (&ExtRational, &ExtRational) {
        match side {
            1 => (&self.a, &self.b),
            2 => (&self.b, &self.c),
            3 => (&self.c, &self.a),
            _ => panic!("side index must be 1, 2 or 3"),
        }
    }

    fn opposite_vertex(&self, side: u8) -> &ExtRational {
        match side {
            1 => &self.c,
            2 => &self.a,
            3 => &self.b,
            _ => panic!("side index must be 1, 2 or 3"),
        }
    }
}

/// Does the geodesic with ideal endpoints {x, y} separate p from q?
/// (p and q are assumed distinct from x and y.)
fn separates(x: &ExtRational, y: &ExtRational, p: &ExtRational, q: &ExtRational) -> bool {
    let inside = |v: &ExtRational| -> bool {
        match (x, y) {
            (Fin(xf), Fin(yf)) => {
                let (lo, hi) = if xf < yf { (xf, yf) } else { (yf, xf) };
                match v {
                    Fin(vf) => lo < vf && vf < hi,
                    Inf => false,
                }
            }
            (Fin(xf), Inf) | (Inf, Fin(xf)) => match v {
                Fin(vf) => vf < xf,
                Inf => false, // v = inf cannot occur as a test point here
            },
            (Inf, Inf) => unreachable!("degenerate geodesic"),
        }
    };
    inside(p) != inside(q)
}

/// The side of a non-root triangle whose neighbor is one level down: the side
/// whose geodesic separates the rest of the triangle from the root triangle
/// (inf, -1, 0).  None for the root itself.
pub fn down_side(t: &Triangle) -> Option<u8> {
    let root = [Inf, ExtRational::from_i64(-1), ExtRational::from_i64(0)];
    for side in 1..=3u8 {
        let (x, y) = t.side_endpoints(side);
        let z = t.opposite_vertex(side);
        let probes: Vec<&ExtRational> =
            root.iter().filter(|r| *r != x && *r != y).collect();
        if !probes.is_empty() && probes.iter().all(|r| separates(x, y, z, r)) {
            return Some(side);
        }
    }
    None
}

/// The new-vertex formula of the recursion:
/// (k*B*(C-A) + A*(C-B)) / (k*(C-A) + (C-B)), evaluated projectively so that
/// vertices at infinity need no special casing.
fn recursion_vertex(k: &Rat, a: &ExtRational, b: &ExtRational, c: &ExtRational) -> ExtRational {
    let (a1, a2) = a.proj();
    let (b1, b2) = b.proj();
    let (c1, c2) = c.proj();
    let (kn, kd) = (k.numer(), k.denom());
    let u = &c1 * &a2 - &a1 * &c2; // c - a, cleared
    let v = &c1 * &b2 - &b1 * &c2; // c - b, cleared
    let num = kn * &b1 * &u + kd * &a1 * &v;
    let den = kn * &b2 * &u + kd * &a2 * &v;
    if den.is_zero() {
        Inf
    } else {
        Fin(Rat::new(num, den))
    }
}

/// The neighbor of `t` across the side marked k_i.
pub fn adjacent(w: &WeierstrassParams, t: &Triangle, side: u8) -> Triangle {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let (va, vb, vc) = match side {
        1 => {
            let x = recursion_vertex(&w.k1, a, b, c);
            (b.clone(), a.clone(), x)
        }
        2 => {
            let x = recursion_vertex(&w.k2, b, c, a);
            (x, c.clone(), b.clone())
        }
        3 => {
            let x = recursion_vertex(&w.k3, c, a, b);
            (c.clone(), x, a.clone())
        }
        _ => panic!("side index must be 1, 2 or 3"),
    };
    let level = if t.level > 0 && down_side(t) == Some(side) {
        t.level - 1
    } else {
        t.level + 1
    };
    Triangle {
        a: va,
        b: vb,
        c: vc,
        level,
    }
}

/// All triangles of level <= max_level, by breadth-first expansion from the
/// root (each triangle visited once: children are the two non-parent sides).
pub fn triangles_to_level(w: &WeierstrassParams, max_level: u32) -> Vec<Triangle> {
    let mut out = vec![Triangle::root()];
    // (index into out, side we arrived through)
    let mut frontier: Vec<(usize, Option<u8>)> = vec![(0, None)];
    while let Some((idx, from)) = frontier.pop() {
        let t = out[idx].clone();
        if t.level >= max_level {
            continue;
        }
        for side in 1..=3u8 {
            if Some(side) == from {
                continue;
            }
            let child = adjacent(w, &t, side);
            debug_assert_eq!(child.level, t.level + 1);
            out.push(child);
            frontier.push((out.len() - 1, Some(side)));
        }
    }
    out
}

/// The vertex list F_n: all vertices of triangles up to level n-1, one entry
/// per cusp in circular order, with the infinite cusp printed at both ends.
pub fn farey_level(w: &WeierstrassParams, n: u32) -> Vec<ExtRational> {
    assert!(n >= 1, "level must be >= 1");
    let mut verts: BTreeSet<ExtRational> = BTreeSet::new();
    for t in triangles_to_level(w, n - 1) {
        for v in t.vertices() {
            verts.insert(v.clone());
        }
    }
    let mut out = vec![Inf]; // the -infinity end of the circular order
    out.extend(verts.into_iter()); // finite ascending, then Inf itself
    out
}

/// Product of involution representatives along `letters` (applied left to
/// right as written: [3,2,1] means iota3 * iota2 * iota1).
pub fn word_apply(w: &WeierstrassParams, letters: &[u8]) -> ProjMatrix {
    let (i1, i2, i3) = w.involutions();
    let mut m = ProjMatrix::identity();
    for &l in letters {
        let g = match l {
            1 => &i1,
            2 => &i2,
            3 => &i3,
            _ => panic!("letter must be 1, 2 or 3"),
        };
        m = m.mul(g);
    }
    m
}

/// Free-Coxeter reduction: cancel adjacent equal letters until stable.
pub fn reduce_word(letters: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i};

    fn ext(n: i64, d: i64) -> ExtRational {
        Fin(rat(n, d))
    }

    #[test]
    fn torus_conversions() {
        let p = PuncturedTorusParams::new(rat(2, 5), rat_i(4)).unwrap();
        let w = from_punctured_torus(&p);
        assert_eq!(w.k(), (&rat(5, 3), &rat(3, 2), &rat(2, 5)));
        assert_eq!(to_punctured_torus(&w), p);

        let p = PuncturedTorusParams::new(rat_i(1), rat_i(6)).unwrap();
        let w = from_punctured_torus(&p);
        assert_eq!(w.k(), (&rat_i(1), &rat_i(1), &rat_i(1)));

        assert!(PuncturedTorusParams::new(rat_i(1), rat_i(4)).is_err());
    }

    #[test]
    fn involution_shapes() {
        let w = WeierstrassParams::integral(1);
        let (_, _, i3) = w.involutions();
        assert_eq!(i3, ProjMatrix::from_i64(0, 1, -1, 0).unwrap());

        let w = WeierstrassParams::integral(5);
        let (i1, i2, i3) = w.involutions();
        assert_eq!(i3, ProjMatrix::from_i64(0, 5, -1, 0).unwrap());
        for i in [&i1, &i2, &i3] {
            assert!(i.is_involution());
            assert_eq!(i.mul(i), ProjMatrix::identity());
        }
        assert_eq!(w.translation().translation_length(), Some(rat_i(7)));
        assert_eq!(w.translation_len(), rat_i(7));
    }

    #[test]
    fn translation_for_any_params() {
        let w =
            WeierstrassParams::new(rat(5, 3), rat(3, 2), rat(2, 5)).unwrap();
        assert_eq!(
            w.translation().translation_length(),
            Some(w.translation_len())
        );
    }

    #[test]
    fn adjacency_paper_examples() {
        // Gamma(1,1/5,5), level-3 triangle, side 2
        let w = WeierstrassParams::integral(5);
        let t = Triangle::new(ext(-6, 7), ext(-1, 1), ext(-7, 8), 3).unwrap();
        let t2 = adjacent(&w, &t, 2);
        assert_eq!(
            (t2.a, t2.b, t2.c, t2.level),
            (ext(-12, 13), ext(-7, 8), ext(-1, 1), 4)
        );

        // Gamma(5/3,3/2,2/5), side 3
        let w = WeierstrassParams::new(rat(5, 3), rat(3, 2), rat(2, 5)).unwrap();
        let t = Triangle::new(ext(-7, 10), ext(-1, 1), ext(-10, 13), 3).unwrap();
        let t3 = adjacent(&w, &t, 3);
        assert_eq!((t3.a, t3.b, t3.c), (ext(-10, 13), ext(-64, 85), ext(-7, 10)));
    }

    #[test]
    fn adjacency_is_involutive() {
        let w = WeierstrassParams::new(rat(5, 3), rat(3, 2), rat(2, 5)).unwrap();
        let mut t = Triangle::root();
        for side in [1u8, 3, 2, 1, 3, 3] {
            let s = adjacent(&w, &t, side);
            let back = adjacent(&w, &s, side);
            assert_eq!((back.a, back.b, back.c), (t.a.clone(), t.b.clone(), t.c.clone()));
            t = s;
        }
    }

    #[test]
    fn farey_level_two() {
        let f = |k1, k2, k3, n| {
            let w = WeierstrassParams::new(k1, k2, k3).unwrap();
            farey_level(&w, n)
        };
        assert_eq!(
            f(rat_i(1), rat(1, 5), rat_i(5), 2),
            vec![Inf, ext(-2, 1), ext(-1, 1), ext(-5, 6), ext(0, 1), ext(5, 1), Inf]
        );
        assert_eq!(
            f(rat_i(1), rat_i(1), rat_i(1), 2),
            vec![Inf, ext(-2, 1), ext(-1, 1), ext(-1, 2), ext(0, 1), ext(1, 1), Inf]
        );
        assert_eq!(
            f(rat(5, 3), rat(3, 2), rat(2, 5), 2),
            vec![Inf, ext(-8, 5), ext(-1, 1), ext(-2, 5), ext(0, 1), ext(2, 5), Inf]
        );
        assert_eq!(f(rat_i(1), rat_i(1), rat_i(1), 1), vec![Inf, ext(-1, 1), ext(0, 1), Inf]);
    }

    #[test]
    fn minus_one_third_first_appears_in_f7() {
        let w = WeierstrassParams::new(rat(5, 3), rat(3, 2), rat(2, 5)).unwrap();
        let target = ext(-1, 3);
        assert!(!farey_level(&w, 6).contains(&target));
        assert!(farey_level(&w, 7).contains(&target));
        // the triangle that introduces it (level 6 = word length 6)
        let tris = triangles_to_level(&w, 6);
        let first: u32 = tris
            .iter()
            .filter(|t| t.vertices().contains(&&target))
            .map(|t| t.level)
            .min()
            .unwrap();
        assert_eq!(first, 6);
        let want: BTreeSet<ExtRational> =
            [ext(-13, 40), ext(-1, 3), ext(-2, 5)].into_iter().collect();
        assert!(tris.iter().any(|t| {
            t.level == 6
                && t.vertices().into_iter().cloned().collect::<BTreeSet<_>>() == want
        }));
    }

    #[test]
    fn word_apply_examples() {
        let w = WeierstrassParams::integral(3);
        assert_eq!(word_apply(&w, &[]), ProjMatrix::identity());
        assert_eq!(
            word_apply(&w, &[3, 2, 1]).translation_length(),
            Some(rat_i(5))
        );
        assert_eq!(word_apply(&w, &[1, 1]), ProjMatrix::identity());
        assert_eq!(reduce_word(&[1, 2, 2, 1, 3]), vec![3]);
    }

    #[test]
    fn farey_mediants_for_modular_case() {
        let w = WeierstrassParams::integral(1);
        let t = Triangle::root();
        let t3 = adjacent(&w, &t, 3);
        // new vertex between 0 and inf is the mediant (0+1)/(1+0)
        assert_eq!(t3.b, ext(1, 1));
        let deeper = adjacent(&w, &t3, 2);
        for v in deeper.vertices() {
            if let Fin(r) = v {
                assert!(r.denom() <= &Int::from(2));
            }
        }
    }
}
