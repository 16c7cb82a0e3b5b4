//! Admissibility congruences and the trace-based arithmeticity test for
//! jigsaw groups, the diamond S(m,n) family, the l-invariant with its
//! R-action, and the grid scan that classifies arithmetic diamonds.

use crate::exact::{Int, ProjMatrix, Rat};
use crate::jigsaw::{assemble, Jigsaw, JigsawBlueprint};
use crate::weierstrass::WeierstrassParams;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Outcome of an admissibility or arithmeticity check, with the first
/// failing word when a check is negative.
#[derive(Clone, Debug)]
pub struct ArithVerdict {
    pub admissible: bool,
    pub arithmetic: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub word: String,
    pub element: ProjMatrix,
    /// tr^2/det of the failing element.
    pub trace_sq_norm: Rat,
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
fn int_sqrt_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Normalized trace tr/sqrt(det) of a primitive matrix, when integral.
pub fn normalized_trace(m: &ProjMatrix) -> Option<Int> {
    let d0 = int_sqrt_exact(&m.det())?;
    let t = m.trace();
    if d0.is_zero() {
        return None;
    }
    if (&t % &d0).is_zero() {
        Some(&t / &d0)
    } else {
        None
    }
}

/// One row of the word-enumeration table.  `case1` is the squared subset
/// word (g_{v1} ... g_{vk})^2; `case2` is the product of squared generators
/// g_{v1}^2 ... g_{vk}^2; the two columns agree for singletons.
#[derive(Clone, Debug)]
pub struct TableRow {
    /// 1-based indices of the generators appearing in the word.
    pub indices: Vec<usize>,
    pub case1: ProjMatrix,
    pub trace1: Option<Int>,
    pub case2: ProjMatrix,
    pub trace2: Option<Int>,
}

/// All 2^(N+1)-1 subset-word rows for gamma_k = iota_0 * iota_k, in the
/// binary-counting order gamma_1; gamma_2; gamma_1 gamma_2; gamma_3; ...
pub fn word_table(generators: &[ProjMatrix]) -> Vec<TableRow> {
    assert!(generators.len() >= 2, "need iota_0 and at least one more");
    let gammas: Vec<ProjMatrix> = generators[1..]
        .iter()
        .map(|g| generators[0].mul(g))
        .collect();
    let n = gammas.len();
    let mut rows = Vec::with_capacity((1usize << n) - 1);
    for mask in 1u64..(1 << n) {
        let indices: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let mut w = ProjMatrix::identity();
        let mut wsq = ProjMatrix::identity();
        for &k in &indices {
            w = w.mul(&gammas[k]);
            wsq = wsq.mul(&gammas[k].mul(&gammas[k]));
        }
        let sq = w.mul(&w);
        rows.push(TableRow {
            indices: indices.iter().map(|k| k + 1).collect(),
            trace1: normalized_trace(&sq),
            case1: sq,
            trace2: normalized_trace(&wsq),
            case2: wsq,
        });
    }
    rows
}

fn word_name(indices: &[usize], squared: bool) -> String {
    let sup = if squared { "^2" } else { "" };
    let body: String = indices
        .iter()
        .map(|i| format!("g{i}{sup}"))
        .collect::<Vec<_>>()
        .join(" ");
    if squared {
        body
    } else {
        format!("({body})^2")
    }
}

/// The finite trace test: tr of every squared-generator subset word is a
/// rational integer after normalization, and tr^2/det of every subset word
/// is integral.  `generators` are the involutions iota_0..iota_{N+1} (or the
/// three Weierstrass involutions).
pub fn arithmetic_test(generators: &[ProjMatrix]) -> ArithVerdict {
    let gammas: Vec<ProjMatrix> = generators[1..]
        .iter()
        .map(|g| generators[0].mul(g))
        .collect();
    let n = gammas.len();
    for mask in 1u64..(1 << n) {
        let indices: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let mut w = ProjMatrix::identity();
        let mut wsq = ProjMatrix::identity();
        for &k in &indices {
            w = w.mul(&gammas[k]);
            wsq = wsq.mul(&gammas[k].mul(&gammas[k]));
        }
        let names: Vec<usize> = indices.iter().map(|k| k + 1).collect();
        if normalized_trace(&wsq).is_none() {
            let t = wsq.trace_sq_norm();
            return ArithVerdict {
                admissible: false,
                arithmetic: false,
                witness: Some(Witness {
                    word: word_name(&names, true),
                    trace_sq_norm: t,
                    element: wsq,
                }),
            };
        }
        let t = w.trace_sq_norm();
        if !t.is_integer() {
            return ArithVerdict {
                admissible: false,
                arithmetic: false,
                witness: Some(Witness {
                    word: word_name(&names, false),
                    element: w.mul(&w),
                    trace_sq_norm: t,
                }),
            };
        }
    }
    ArithVerdict {
        admissible: true,
        arithmetic: true,
        witness: None,
    }
}

/// Admissibility: integrality of ((m_k - m_l)^2 + u + v)^2 / (u v) for all
/// pairs of vertical edges, with k in one fundamental period and l swept far
/// enough to hit every residue class of m_k - m_l modulo every possible
/// u*v <= M^2.
pub fn is_admissible(j: &Jigsaw) -> ArithVerdict {
    let period = j.sides.len() as i64;
    let max_type = j.sides.iter().map(|s| s.side_type).max().unwrap_or(1);
    let span = period * (max_type * max_type) as i64 + period;
    let edges = j.vertical_edges(0..span);
    for k in 0..period as usize {
        for (l, el) in edges.iter().enumerate() {
            if l == k {
                continue;
            }
            let ek = &edges[k];
            let u = Int::from(ek.edge_type);
            let v = Int::from(el.edge_type);
            let d = &ek.m - &el.m;
            let num = (&d * &d + &u + &v).pow(2);
            let den = &u * &v;
            if !(&num % &den).is_zero() {
                return ArithVerdict {
                    admissible: false,
                    arithmetic: false,
                    witness: Some(Witness {
                        word: format!("edges e_{k}, e_{l}"),
                        element: crate::jigsaw::rotation_about_vertical(&ek.m, ek.edge_type)
                            .mul(&crate::jigsaw::rotation_about_vertical(&el.m, el.edge_type)),
                        trace_sq_norm: Rat::new(num, den),
                    }),
                };
            }
        }
    }
    ArithVerdict {
        admissible: true,
        arithmetic: false,
        witness: None,
    }
}

/// Runs both checks on an assembled jigsaw.
pub fn full_verdict(j: &Jigsaw) -> ArithVerdict {
    let adm = is_admissible(j);
    if !adm.admissible {
        return adm;
    }
    arithmetic_test(&j.generators())
}

/// The diamond S(m,n): Delta(1/m, m, 1) on (inf,-1,0) with Delta(1,1/n,n)
/// glued across [0,inf], vertex set {inf,-1,0,1}.
pub fn diamond_mn(m: u64, n: u64) -> Jigsaw {
    let root = WeierstrassParams::new(
        Rat::new(Int::one(), Int::from(m)),
        Rat::from(Int::from(m)),
        Rat::one(),
    )
    .expect("diamond root tile parameters are valid");
    let mut bp = JigsawBlueprint::root(root);
    bp.glue_integral(0, 3, n, 1);
    assemble(&bp).expect("diamond always assembles")
}

/// The star S(1,n): central Delta^(1) with three Delta^(n) ears.
pub fn star_1n(n: u64) -> Jigsaw {
    assemble(&crate::jigsaw::star_s1n(n)).expect("star always assembles")
}

/// l = (m + n + 4)^2 / (m n), exactly.
pub fn l_invariant(m: u64, n: u64) -> Rat {
    let s = Int::from(m + n + 4);
    Rat::new(&s * &s, Int::from(m) * Int::from(n))
}

fn l_int(m: u64, n: u64) -> Option<Int> {
    let l = l_invariant(m, n);
    l.is_integer().then(|| l.to_integer())
}

/// R: (m,n) -> (n, (l-2)n - 8 - m).  Requires integral l.
pub fn r_action(m: u64, n: u64) -> Option<(u64, u64)> {
    let l = l_int(m, n)?;
    let next = (&l - Int::from(2u64)) * Int::from(n) - Int::from(8u64) - Int::from(m);
    let next = u64::try_from(next).ok()?;
    (next > 0).then_some((n, next))
}

/// R^{-1}: (m,n) -> ((l-2)m - 8 - n, m).
pub fn r_action_inv(m: u64, n: u64) -> Option<(u64, u64)> {
    let l = l_int(m, n)?;
    let prev = (&l - Int::from(2u64)) * Int::from(m) - Int::from(8u64) - Int::from(n);
    let prev = u64::try_from(prev).ok()?;
    (prev > 0).then_some((prev, m))
}

/// All pairs 1 <= m <= n <= bound whose diamond S(m,n) passes the
/// arithmeticity test, grouped by l.  Only pairs with integral l can pass,
/// so the scan enumerates divisors of (m+4)^2 rather than the full grid.
pub fn scan_diamonds(bound: u64) -> BTreeMap<u64, Vec<(u64, u64)>> {
    let hits: Vec<(u64, u64, u64)> = (1..=bound)
        .into_par_iter()
        .flat_map_iter(|m| {
            // integral l forces n | (m+4)^2
            let sq = (m + 4) * (m + 4);
            let mut cand: Vec<u64> = Vec::new();
            let mut d = 1u64;
            while d * d <= sq {
                if sq % d == 0 {
                    cand.push(d);
                    cand.push(sq / d);
                }
                d += 1;
            }
            cand.sort_unstable();
            cand.dedup();
            cand.into_iter()
                .filter(move |&n| n >= m && n <= bound)
                .filter_map(move |n| {
                    let l = l_int(m, n)?;
                    let l = u64::try_from(l).ok()?;
                    arithmetic_test(&diamond_mn(m, n).generators())
                        .arithmetic
                        .then_some((l, m, n))
                })
        })
        .collect();
    let mut out: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for (l, m, n) in hits {
        out.entry(l).or_default().push((m, n));
    }
    for v in out.values_mut() {
        v.sort_unstable();
        v.dedup();
    }
    out
}

/// Reference implementation of the scan without the divisor shortcut,
/// for cross-checking on small bounds.
pub fn scan_diamonds_brute(bound: u64) -> BTreeMap<u64, Vec<(u64, u64)>> {
    let mut out: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for m in 1..=bound {
        for n in m..=bound {
            if arithmetic_test(&diamond_mn(m, n).generators()).arithmetic {
                let l = l_invariant(m, n);
                assert!(l.is_integer(), "arithmetic diamond with non-integral l");
                out.entry(u64::try_from(l.to_integer()).unwrap())
                    .or_default()
                    .push((m, n));
            }
        }
    }
    out
}
