//! The base cyclic quiver `K(g,h)` and the combinatorics of walks.
//!
//! `K(g,h)` is a single oriented cycle on `n+1 = g+h` vertices with `g`
//! clockwise arrows `beta_x : x -> x+1` (`0 <= x <= g-1`) and `h`
//! anticlockwise arrows `alpha_x : (x+1 mod n+1) -> x` (`g <= x <= n`).
//! Vertex `0` is the unique source, vertex `g` the unique sink.

use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unsupported size: need g >= 1, h >= 1 and n = g+h-1 >= 2 (got g={g}, h={h})")]
    UnsupportedSize { g: usize, h: usize },
    #[error("invalid walk: p <= q required (got p={p}, q={q})")]
    BadWalk { p: i64, q: i64 },
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

/// Arrow of `K(g,h)`, identified by its kind and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KArrow {
    Beta(usize),
    Alpha(usize),
}

impl fmt::Display for KArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KArrow::Beta(x) => write!(f, "beta_{x}"),
            KArrow::Alpha(x) => write!(f, "alpha_{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: KArrow,
    pub src: usize,
    pub tgt: usize,
}

/// The cyclic quiver `K(g,h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicQuiver {
    g: usize,
    h: usize,
}

impl CyclicQuiver {
    pub fn new(g: usize, h: usize) -> Result<CyclicQuiver, QuiverError> {
        if g < 1 || h < 1 || g + h < 3 {
            return Err(QuiverError::UnsupportedSize { g, h });
        }
        Ok(CyclicQuiver { g, h })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn n(&self) -> usize {
        self.g + self.h - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n() + 1
    }

    /// Arrows in the fixed order `beta_0 .. beta_{g-1}, alpha_g .. alpha_n`.
    pub fn arrows(&self) -> Vec<Arrow> {
        let n = self.n();
        let mut out = Vec::with_capacity(n + 1);
        for x in 0..self.g {
            out.push(Arrow { name: KArrow::Beta(x), src: x, tgt: x + 1 });
        }
        for x in self.g..=n {
            out.push(Arrow { name: KArrow::Alpha(x), src: (x + 1) % (n + 1), tgt: x });
        }
        out
    }

    pub fn arrow_index(&self, name: KArrow) -> usize {
        match name {
            KArrow::Beta(x) => x,
            KArrow::Alpha(x) => self.g + (x - self.g),
        }
    }

    pub fn arrow(&self, name: KArrow) -> Arrow {
        self.arrows()[self.arrow_index(name)]
    }

    /// Which arrow carries the special band matrix: `beta_{g-1}`.
    pub fn band_arrow(&self) -> KArrow {
        KArrow::Beta(self.g - 1)
    }

    /// Residue of an integer basis label: the vertex it sits at.
    pub fn vertex_of_label(&self, label: i64) -> usize {
        label.rem_euclid(self.vertex_count() as i64) as usize
    }

    /// The vertex permutation used by the duality functor: `G(x) = g - x`
    /// for `x = 0..g` and `G(x) = n + g + 1 - x` for `x = g+1..n`; in
    /// particular `G(z) ≡ g - z (mod n+1)` for every `z`.
    pub fn g_perm(&self, x: usize) -> usize {
        debug_assert!(x <= self.n());
        if x <= self.g {
            self.g - x
        } else {
            self.n() + self.g + 1 - x
        }
    }

    /// `G` extended to all integers through the residue.
    pub fn g_perm_z(&self, z: i64) -> usize {
        self.g_perm(self.vertex_of_label(z))
    }

    /// The arrow whose transpose carries arrow `a` under the duality
    /// functor: `beta_x <-> beta_{g-1-x}`, `alpha_x <-> alpha_{g + ((n-x) mod h)}`.
    pub fn bar_arrow(&self, a: KArrow) -> KArrow {
        match a {
            KArrow::Beta(x) => KArrow::Beta(self.g - 1 - x),
            KArrow::Alpha(x) => KArrow::Alpha(self.g + (self.n() - x) % self.h),
        }
    }
}

/// Floored division with nonnegative remainder: `a = div*q + mod`,
/// `0 <= mod < q`. Valid for negative `a`.
pub fn int_moddiv(a: i64, q: i64) -> Result<(i64, i64), QuiverError> {
    if q <= 0 {
        return Err(QuiverError::BadArgument(format!("modulus must be positive, got {q}")));
    }
    let m = a.rem_euclid(q);
    Ok(((a - m) / q, m))
}

/// A clockwise walk `(p, q)` with `p <= q`, indexing a string representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    pub p: i64,
    pub q: i64,
}

impl Walk {
    pub fn new(p: i64, q: i64) -> Result<Walk, QuiverError> {
        if p > q {
            return Err(QuiverError::BadWalk { p, q });
        }
        Ok(Walk { p, q })
    }

    /// Number of basis labels; a walk is never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        (self.q - self.p + 1) as usize
    }

    /// The representative with `0 <= p <= n` indexing the same
    /// representation: shift both endpoints by the same multiple of `n+1`.
    pub fn normalize(&self, k: &CyclicQuiver) -> Walk {
        let period = k.vertex_count() as i64;
        let p = self.p.rem_euclid(period);
        Walk { p, q: self.q + (p - self.p) }
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// The four kinds of indecomposables: post-projective, pre-injective, and
/// the three regular families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentId {
    P,
    I,
    R0,
    Rinf,
    Rlambda(crate::field::Elem),
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentId::P => write!(f, "P"),
            ComponentId::I => write!(f, "I"),
            ComponentId::R0 => write!(f, "R0"),
            ComponentId::Rinf => write!(f, "Rinf"),
            ComponentId::Rlambda(_) => write!(f, "Rlambda"),
        }
    }
}

/// Classify a walk by the residues of its endpoints mod `n+1`:
/// post-projective when `p ≡ 1..g` and `q ≡ g..n`, pre-injective when
/// `p ≡ 0, g+1..n` and `q ≡ 0..g-1`, and the two regular rectangles
/// otherwise. The four cases partition all pairs.
pub fn classify_walk(w: &Walk, k: &CyclicQuiver) -> ComponentId {
    let period = k.vertex_count() as i64;
    let g = k.g() as i64;
    let pr = w.p.rem_euclid(period);
    let qr = w.q.rem_euclid(period);
    let p_proj = (1..=g).contains(&pr);
    let q_proj = pr == 0 || pr > g; // complementary: p ≡ 0, g+1..n
    debug_assert!(p_proj != q_proj);
    let q_high = qr >= g; // q ≡ g..n
    match (p_proj, q_high) {
        (true, true) => ComponentId::P,
        (false, false) => ComponentId::I,
        (true, false) => ComponentId::R0,
        (false, true) => ComponentId::Rinf,
    }
}
