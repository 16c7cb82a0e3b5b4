//! Exact number types: arbitrary-precision rationals, the extended rationals
//! (cusps), real quadratic irrationals in canonical form, and primitive integer
//! 2x2 matrices acting by Mobius transformations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("singular matrix (determinant zero)")]
    Singular,
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("matrix fixes infinity (lower-left entry is zero)")]
    FixesInfinity,
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_i(n: i64) -> Rat {
    Rat::from(Int::from(n))
}

/// A cusp coordinate: a rational number or the single point at infinity on the
/// boundary circle.  `Inf` compares greater than every finite value, which is
/// the convention all interval tests rely on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Fin(Rat),
    Inf,
}

pub use ExtRational::{Fin, Inf};

impl ExtRational {
    pub fn from_i64(n: i64) -> Self {
        Fin(rat_i(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Fin(r) => Some(r),
            Inf => None,
        }
    }

    /// Numerator/denominator as a projective pair (q = 0 at infinity).
    pub fn proj(&self) -> (Int, Int) {
        match self {
            Fin(r) => (r.numer().clone(), r.denom().clone()),
            Inf => (Int::one(), Int::zero()),
        }
    }
}

impl From<Rat> for ExtRational {
    fn from(r: Rat) -> Self {
        Fin(r)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Inf, Inf) => Ordering::Equal,
            (Inf, Fin(_)) => Ordering::Greater,
            (Fin(_), Inf) => Ordering::Less,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(r) => write!(f, "{}", r),
            Inf => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Primitive integer 2x2 matrix of nonzero determinant, identified up to a
/// global sign: an element of PGL(2, Q).  The stored representative has
/// gcd(a,b,c,d) = 1 and its first nonzero entry (in order a,b,c,d) positive,
/// so equality and hashing are plain componentwise operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    a: Int,
    b: Int,
    c: Int,
    d: Int,
}

impl ProjMatrix {
    pub fn new(a: Int, b: Int, c: Int, d: Int) -> Result<Self, ExactError> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(ExactError::Singular);
        }
        let mut g = a.gcd(&b).gcd(&c).gcd(&d);
        debug_assert!(!g.is_zero());
        let lead_neg = [&a, &b, &c, &d]
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_negative())
            .unwrap();
        if lead_neg {
            g = -g;
        }
        Ok(ProjMatrix {
            a: a / &g,
            b: b / &g,
            c: c / &g,
            d: d / &g,
        })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ExactError> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    /// Clears denominators of a rational matrix and primitivizes.
    pub fn from_rat(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Result<Self, ExactError> {
        let l = a.denom().lcm(b.denom()).lcm(c.denom()).lcm(d.denom());
        let scale = |r: &Rat| r.numer() * (&l / r.denom());
        Self::new(scale(a), scale(b), scale(c), scale(d))
    }

    pub fn identity() -> Self {
        ProjMatrix {
            a: Int::one(),
            b: Int::zero(),
            c: Int::zero(),
            d: Int::one(),
        }
    }

    pub fn entries(&self) -> (&Int, &Int, &Int, &Int) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn det(&self) -> Int {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Trace of the representative; only meaningful up to sign.
    pub fn trace(&self) -> Int {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &ProjMatrix) -> ProjMatrix {
        ProjMatrix::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
        .expect("product of nonsingular matrices is nonsingular")
    }

    pub fn inv(&self) -> ProjMatrix {
        ProjMatrix::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
            .expect("inverse of nonsingular matrix")
    }

    pub fn pow(&self, e: i64) -> ProjMatrix {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = ProjMatrix::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// (tr M)^2 / det M: the squared trace of the unit-determinant
    /// normalization.  Well defined on sign classes and scale classes.
    pub fn trace_sq_norm(&self) -> Rat {
        let t = self.trace();
        Rat::new(&t * &t, self.det())
    }

    /// Some(L) iff the class is the parabolic x -> x + L.
    pub fn translation_length(&self) -> Option<Rat> {
        if self.c.is_zero() && self.a == self.d {
            // canonical sign makes a > 0 here
            Some(Rat::new(self.b.clone(), self.a.clone()))
        } else {
            None
        }
    }

    pub fn is_involution(&self) -> bool {
        // order two in PGL <=> trace of the representative is zero
        self.trace().is_zero()
    }

    /// The Mobius action on cusps, with M(inf) = a/c and M(-d/c) = inf.
    pub fn apply(&self, x: &ExtRational) -> ExtRational {
        let (p, q) = x.proj();
        let num = &self.a * &p + &self.b * &q;
        let den = &self.c * &p + &self.d * &q;
        if den.is_zero() {
            Inf
        } else {
            Fin(Rat::new(num, den))
        }
    }

    /// The Mobius action on a real quadratic (or rational) value.
    pub fn apply_quad(&self, x: &QuadNum) -> AlphaVal {
        let num = QuadNum::raw(
            Rat::from(self.a.clone()) * &x.a + Rat::from(self.b.clone()),
            Rat::from(self.a.clone()) * &x.b,
            x.d,
        );
        let den = QuadNum::raw(
            Rat::from(self.c.clone()) * &x.a + Rat::from(self.d.clone()),
            Rat::from(self.c.clone()) * &x.b,
            x.d,
        );
        if den.is_zero() {
            AlphaVal::Inf
        } else {
            AlphaVal::Fin(num / den)
        }
    }

    pub fn apply_alpha(&self, x: &AlphaVal) -> AlphaVal {
        match x {
            AlphaVal::Inf => match self.apply(&Inf) {
                Inf => AlphaVal::Inf,
                Fin(r) => AlphaVal::Fin(QuadNum::from_rat(r)),
            },
            AlphaVal::Fin(q) => self.apply_quad(q),
        }
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}; {}, {}]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Spec-level helpers with free-function names.
pub fn primitive(a: i64, b: i64, c: i64, d: i64) -> Result<ProjMatrix, ExactError> {
    ProjMatrix::from_i64(a, b, c, d)
}

pub fn mobius_apply(m: &ProjMatrix, x: &ExtRational) -> ExtRational {
    m.apply(x)
}

pub fn trace_sq_norm(m: &ProjMatrix) -> Rat {
    m.trace_sq_norm()
}

pub fn translation_length(m: &ProjMatrix) -> Option<Rat> {
    m.translation_length()
}

/// a + b*sqrt(d) with d a square-free positive integer; rational values
/// canonicalize to b = 0, d = 1.  Comparison is exact sign analysis — no
/// floating point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rat,
    b: Rat,
    d: u64,
}

/// A point of the boundary circle as seen by the sequence algorithms: a real
/// quadratic (possibly rational) number or infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AlphaVal {
    Fin(QuadNum),
    Inf,
}

impl AlphaVal {
    pub fn from_ext(x: &ExtRational) -> Self {
        match x {
            Inf => AlphaVal::Inf,
            Fin(r) => AlphaVal::Fin(QuadNum::from_rat(r.clone())),
        }
    }

    pub fn as_ext(&self) -> Option<ExtRational> {
        match self {
            AlphaVal::Inf => Some(Inf),
            AlphaVal::Fin(q) => q.as_rat().map(Fin),
        }
    }
}

impl fmt::Display for AlphaVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaVal::Inf => write!(f, "inf"),
            AlphaVal::Fin(q) => write!(f, "{}", q),
        }
    }
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = s^2 * d with d square-free; returns (s, d)
    let mut s = 1u64;
    let mut d = 1u64;
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= n; // leftover prime
    (s, d)
}

impl QuadNum {
    fn raw(a: Rat, b: Rat, d: u64) -> Self {
        if b.is_zero() || d == 1 {
            QuadNum {
                a: a + b, // if d == 1 the radical part is rational
                b: Rat::zero(),
                d: 1,
            }
        } else {
            QuadNum { a, b, d }
        }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadNum::raw(a, Rat::zero(), 1)
    }

    pub fn from_i64(n: i64) -> Self {
        QuadNum::from_rat(rat_i(n))
    }

    /// Canonical a + b*sqrt(n): extracts the square part of n.
    pub fn new(a: Rat, b: Rat, n: i64) -> Result<Self, ExactError> {
        if n < 0 {
            return Err(ExactError::NegativeRadicand);
        }
        if n == 0 {
            return Ok(QuadNum::from_rat(a));
        }
        let (s, d) = squarefree_split(n as u64);
        Ok(QuadNum::raw(a, b * Rat::from(Int::from(s)), d))
    }

    pub fn sqrt_of(n: i64) -> Result<Self, ExactError> {
        QuadNum::new(Rat::zero(), Rat::one(), n)
    }

    pub fn parts(&self) -> (&Rat, &Rat, u64) {
        (&self.a, &self.b, self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.d == 1 {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.d == 1 && self.a.is_zero()
    }

    /// Exact sign of a + b*sqrt(d).
    pub fn sign(&self) -> Ordering {
        if self.d == 1 {
            return self.a.cmp(&Rat::zero());
        }
        let (sa, sb) = (self.a.cmp(&Rat::zero()), self.b.cmp(&Rat::zero()));
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            _ => {
                // opposite signs: compare a^2 against b^2 d (cannot tie:
                // sqrt(d) is irrational for square-free d > 1)
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * Rat::from(Int::from(self.d));
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("sqrt(d) irrational"),
                }
            }
        }
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        (self.clone() - QuadNum::from_rat(r.clone())).sign()
    }

    fn merge_field(&self, o: &QuadNum) -> u64 {
        match (self.d, o.d) {
            (1, d) | (d, 1) => d,
            (d1, d2) if d1 == d2 => d1,
            (d1, d2) => panic!("mixed quadratic fields: sqrt({}) vs sqrt({})", d1, d2),
        }
    }

    pub fn conj(&self) -> QuadNum {
        QuadNum::raw(self.a.clone(), -self.b.clone(), self.d)
    }

    /// a^2 - b^2 d (the field norm).
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from(Int::from(self.d))
    }

    /// Floor of the exact value.
    pub fn floor(&self) -> Int {
        if self.d == 1 {
            return self.a.floor().to_integer();
        }
        // integer bracket: |b*sqrt(d)| <= (|b|+1) * d, then bisect exactly
        let spread = (self.b.abs().ceil().to_integer() + 1) * Int::from(self.d) + 1;
        let mut lo = self.a.floor().to_integer() - &spread;
        let mut hi = self.a.ceil().to_integer() + &spread;
        while &lo + 1u32 < hi {
            let mid: Int = (&lo + &hi) / 2;
            if self.cmp_rat(&Rat::from(mid.clone())) == Ordering::Less {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        if self.cmp_rat(&Rat::from(hi.clone())) != Ordering::Less {
            hi
        } else {
            lo
        }
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, o: QuadNum) -> QuadNum {
        let d = self.merge_field(&o);
        QuadNum::raw(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    fn sub(self, o: QuadNum) -> QuadNum {
        self + (-o)
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::raw(-self.a, -self.b, self.d)
    }
}

impl Mul for QuadNum {
    type Output = QuadNum;
    fn mul(self, o: QuadNum) -> QuadNum {
        let d = self.merge_field(&o);
        let rd = Rat::from(Int::from(d));
        QuadNum::raw(
            &self.a * &o.a + &self.b * &o.b * rd,
            &self.a * &o.b + &self.b * &o.a,
            d,
        )
    }
}

impl Div for QuadNum {
    type Output = QuadNum;
    fn div(self, o: QuadNum) -> QuadNum {
        assert!(!o.is_zero(), "division by zero QuadNum");
        let d = self.merge_field(&o);
        let n = o.norm();
        let conj = o.conj();
        let prod = self * conj;
        QuadNum::raw(prod.a / n.clone(), prod.b / n, d)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self.clone() - other.clone()).sign())
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap()
    }
}

/// Canonical quadratic value a + b*sqrt(n) (square part of n extracted).
pub fn quad_canonical(a: Rat, b: Rat, n: i64) -> Result<QuadNum, ExactError> {
    QuadNum::new(a, b, n)
}
