//! The finite component quivers and their assembly.
//!
//! The post-projective component is a truncated grid quiver on vertices
//! `(r,s)_P` (level `r`, station `s`), the pre-injective component is its
//! opposite, and the regular representations live in tubes: one of rank
//! `g`, one of rank `h`, and a homogeneous line per nonzero parameter.
//! The assembled quiver glues all of them with connecting arrows
//! `iota` (grid into tubes) and `kappa` (tubes into the mirror grid).

use crate::field::{Elem, Field};
use crate::quiver::{ComponentId, CyclicQuiver, QuiverError};
use std::collections::BTreeMap;
use std::fmt;

/// Vertex of a component or assembled quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    P { r: usize, s: usize },
    I { r: usize, s: usize },
    T0 { r: usize, s: usize },
    Tinf { r: usize, s: usize },
    L { lambda: Elem, r: usize },
}

impl VertexLabel {
    pub fn render(&self, field: &Field) -> String {
        match self {
            VertexLabel::P { r, s } => format!("P:r={r},s={s}"),
            VertexLabel::I { r, s } => format!("I:r={r},s={s}"),
            VertexLabel::T0 { r, s } => format!("T0:r={r},s={s}"),
            VertexLabel::Tinf { r, s } => format!("Tinf:r={r},s={s}"),
            VertexLabel::L { lambda, r } => format!("L:λ={},r={r}", field.render(lambda)),
        }
    }
}

/// Grid arrows are named by the cyclic-quiver arrow they come from; the
/// primed kinds are the level-raising ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridKind {
    /// Level-preserving `(r, x+1) -> (r, x)`.
    Beta(usize),
    /// Level-raising `(r, x) -> (r+1, x+1)`.
    BetaPrime(usize),
    /// Level-preserving `(r, x) -> (r, x+1)`.
    Alpha(usize),
    /// Level-raising `(r, x+1) -> (r+1, x)`.
    AlphaPrime(usize),
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridKind::Beta(x) => write!(f, "beta_{x}"),
            GridKind::BetaPrime(x) => write!(f, "beta'_{x}"),
            GridKind::Alpha(x) => write!(f, "alpha_{x}"),
            GridKind::AlphaPrime(x) => write!(f, "alpha'_{x}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowLabel {
    P { r: usize, kind: GridKind },
    I { r: usize, kind: GridKind },
    Pi0 { r: usize, s: usize },
    Rho0 { r: usize, s: usize },
    PiInf { r: usize, s: usize },
    RhoInf { r: usize, s: usize },
    PiL { lambda: Elem, r: usize },
    RhoL { lambda: Elem, r: usize },
    Iota0 { x: usize },
    Kappa0 { x: usize },
    IotaInf { y: usize },
    KappaInf { y: usize },
    IotaL { lambda: Elem },
    KappaL { lambda: Elem },
}

impl ArrowLabel {
    pub fn render(&self, field: &Field) -> String {
        match self {
            ArrowLabel::P { r, kind } => format!("P({r},{kind})"),
            ArrowLabel::I { r, kind } => format!("I({r},{kind})"),
            ArrowLabel::Pi0 { r, s } => format!("pi_0({r},{s})"),
            ArrowLabel::Rho0 { r, s } => format!("rho_0({r},{s})"),
            ArrowLabel::PiInf { r, s } => format!("pi_inf({r},{s})"),
            ArrowLabel::RhoInf { r, s } => format!("rho_inf({r},{s})"),
            ArrowLabel::PiL { lambda, r } => format!("pi_lambda({};{r})", field.render(lambda)),
            ArrowLabel::RhoL { lambda, r } => format!("rho_lambda({};{r})", field.render(lambda)),
            ArrowLabel::Iota0 { x } => format!("iota_0({x})"),
            ArrowLabel::Kappa0 { x } => format!("kappa_0({x})"),
            ArrowLabel::IotaInf { y } => format!("iota_inf({y})"),
            ArrowLabel::KappaInf { y } => format!("kappa_inf({y})"),
            ArrowLabel::IotaL { lambda } => format!("iota_lambda({})", field.render(lambda)),
            ArrowLabel::KappaL { lambda } => format!("kappa_lambda({})", field.render(lambda)),
        }
    }

    pub fn is_connecting(&self) -> bool {
        matches!(
            self,
            ArrowLabel::Iota0 { .. }
                | ArrowLabel::Kappa0 { .. }
                | ArrowLabel::IotaInf { .. }
                | ArrowLabel::KappaInf { .. }
                | ArrowLabel::IotaL { .. }
                | ArrowLabel::KappaL { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QArrow {
    pub label: ArrowLabel,
    pub src: usize,
    pub tgt: usize,
}

/// Flat storage shared by component and assembled quivers.
#[derive(Clone, Debug, Default)]
pub struct QuiverData {
    pub vertices: Vec<VertexLabel>,
    pub arrows: Vec<QArrow>,
    pub mouth: Vec<usize>,
    index: BTreeMap<VertexLabel, usize>,
}

impl QuiverData {
    fn push_vertex(&mut self, v: VertexLabel) -> usize {
        let id = self.vertices.len();
        let prev = self.index.insert(v.clone(), id);
        assert!(prev.is_none(), "duplicate vertex {v:?}");
        self.vertices.push(v);
        id
    }

    pub fn vertex_id(&self, v: &VertexLabel) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn arrow_id(&self, label: &ArrowLabel) -> Option<usize> {
        self.arrows.iter().position(|a| &a.label == label)
    }

    /// The unique arrow between an ordered vertex pair, if any.
    pub fn arrow_between(&self, src: usize, tgt: usize) -> Option<usize> {
        let mut found = None;
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src == src && a.tgt == tgt {
                assert!(found.is_none(), "parallel arrows between {src} and {tgt}");
                found = Some(i);
            }
        }
        found
    }
}

/// A single component quiver at a truncation.
#[derive(Clone, Debug)]
pub struct ComponentQuiver {
    pub component: ComponentId,
    pub truncation: usize,
    pub data: QuiverData,
}

fn tube0_s_norm(g: usize, v: i64) -> usize {
    let m = v.rem_euclid(g as i64) as usize;
    if m == 0 {
        g
    } else {
        m
    }
}

/// Grid arrows out of `(r,s)`: the station moves by one, and the level
/// rises exactly when the move runs against a clockwise arrow.
fn grid_arrows_from(k: &CyclicQuiver, r: usize, s: usize) -> Vec<(GridKind, usize, usize)> {
    let (g, n) = (k.g(), k.n());
    let mut out = Vec::new();
    // +1 direction
    if s >= g {
        out.push((GridKind::Alpha(s), r, (s + 1) % (n + 1)));
    } else {
        out.push((GridKind::BetaPrime(s), r + 1, s + 1));
    }
    // -1 direction
    if (1..=g).contains(&s) {
        out.push((GridKind::Beta(s - 1), r, s - 1));
    } else {
        let prev = if s == 0 { n } else { s - 1 };
        out.push((GridKind::AlphaPrime(prev), r + 1, prev));
    }
    out
}

fn build_grid(k: &CyclicQuiver, m: usize, injective_side: bool) -> QuiverData {
    let (g, h, n) = (k.g(), k.h(), k.n());
    let rmax = g * h * m;
    let label = |r: usize, s: usize| {
        if injective_side {
            VertexLabel::I { r, s }
        } else {
            VertexLabel::P { r, s }
        }
    };
    let mut data = QuiverData::default();
    for r in 0..=rmax {
        for s in 0..=n {
            data.push_vertex(label(r, s));
        }
    }
    for r in 0..=rmax {
        for s in 0..=n {
            for (kind, r2, s2) in grid_arrows_from(k, r, s) {
                if r2 > rmax {
                    continue;
                }
                let a = data.vertex_id(&label(r, s)).unwrap();
                let b = data.vertex_id(&label(r2, s2)).unwrap();
                if injective_side {
                    data.arrows.push(QArrow { label: ArrowLabel::I { r, kind }, src: b, tgt: a });
                } else {
                    data.arrows.push(QArrow { label: ArrowLabel::P { r, kind }, src: a, tgt: b });
                }
            }
        }
    }
    data
}

fn build_tube0(k: &CyclicQuiver, trunc: usize) -> QuiverData {
    let g = k.g();
    let rmax = |s: usize| g * trunc + s;
    let mut data = QuiverData::default();
    for r in 0..=(g * trunc + g) {
        for s in 1..=g {
            if r <= rmax(s) {
                data.push_vertex(VertexLabel::T0 { r, s });
            }
        }
    }
    for r in 0..=(g * trunc + g) {
        for s in 1..=g {
            if r > rmax(s) {
                continue;
            }
            let here = data.vertex_id(&VertexLabel::T0 { r, s }).unwrap();
            if r < rmax(s) {
                let up = data.vertex_id(&VertexLabel::T0 { r: r + 1, s }).unwrap();
                data.arrows.push(QArrow { label: ArrowLabel::Rho0 { r, s }, src: here, tgt: up });
            }
            // pi into this vertex from (r+1, s+1)
            let snext = tube0_s_norm(g, s as i64 + 1);
            if r < rmax(snext) {
                let above = data.vertex_id(&VertexLabel::T0 { r: r + 1, s: snext }).unwrap();
                data.arrows.push(QArrow { label: ArrowLabel::Pi0 { r, s }, src: above, tgt: here });
            }
        }
    }
    data.mouth = (1..=g)
        .map(|s| data.vertex_id(&VertexLabel::T0 { r: 0, s }).unwrap())
        .collect();
    data
}

fn build_tube_inf(k: &CyclicQuiver, trunc: usize) -> QuiverData {
    let h = k.h();
    let rmax = |s: usize| h * (trunc + 1) - s;
    let mut data = QuiverData::default();
    for r in 0..=(h * (trunc + 1)) {
        for s in 0..h {
            if r <= rmax(s) {
                data.push_vertex(VertexLabel::Tinf { r, s });
            }
        }
    }
    for r in 0..=(h * (trunc + 1)) {
        for s in 0..h {
            if r > rmax(s) {
                continue;
            }
            let here = data.vertex_id(&VertexLabel::Tinf { r, s }).unwrap();
            if r < rmax(s) {
                let up = data.vertex_id(&VertexLabel::Tinf { r: r + 1, s }).unwrap();
                data.arrows.push(QArrow { label: ArrowLabel::RhoInf { r, s }, src: here, tgt: up });
            }
            let sprev = if s == 0 { h - 1 } else { s - 1 };
            if r < rmax(sprev) {
                let above = data.vertex_id(&VertexLabel::Tinf { r: r + 1, s: sprev }).unwrap();
                data.arrows
                    .push(QArrow { label: ArrowLabel::PiInf { r, s }, src: above, tgt: here });
            }
        }
    }
    data.mouth = (0..h)
        .map(|s| data.vertex_id(&VertexLabel::Tinf { r: 0, s }).unwrap())
        .collect();
    data
}

fn build_tube_lambda(lambda: &Elem, trunc: usize) -> QuiverData {
    let mut data = QuiverData::default();
    let top = trunc + 2;
    for r in 1..=top {
        data.push_vertex(VertexLabel::L { lambda: lambda.clone(), r });
    }
    for r in 1..top {
        let lo = data.vertex_id(&VertexLabel::L { lambda: lambda.clone(), r }).unwrap();
        let hi = data.vertex_id(&VertexLabel::L { lambda: lambda.clone(), r: r + 1 }).unwrap();
        data.arrows.push(QArrow {
            label: ArrowLabel::RhoL { lambda: lambda.clone(), r },
            src: lo,
            tgt: hi,
        });
        data.arrows.push(QArrow {
            label: ArrowLabel::PiL { lambda: lambda.clone(), r },
            src: hi,
            tgt: lo,
        });
    }
    data.mouth = vec![data.vertex_id(&VertexLabel::L { lambda: lambda.clone(), r: 1 }).unwrap()];
    data
}

/// Build a single component quiver. For the grid components the truncation
/// parameter is `m` (levels up to `ghm`); for tubes it is the tube index.
pub fn build_component(
    component: &ComponentId,
    truncation: usize,
    k: &CyclicQuiver,
) -> Result<ComponentQuiver, QuiverError> {
    let data = match component {
        ComponentId::P => build_grid(k, truncation, false),
        ComponentId::I => build_grid(k, truncation, true),
        ComponentId::R0 => build_tube0(k, truncation),
        ComponentId::Rinf => build_tube_inf(k, truncation),
        ComponentId::Rlambda(lambda) => {
            if matches!(lambda, Elem::Fp(0)) {
                return Err(QuiverError::BadArgument("band parameter must be nonzero".into()));
            }
            build_tube_lambda(lambda, truncation)
        }
    };
    Ok(ComponentQuiver { component: component.clone(), truncation, data })
}

/// The glued quiver: grid, tubes at truncation `2m(n+1)`, mirror grid, and
/// the connecting arrows.
#[derive(Clone, Debug)]
pub struct AssembledQuiver {
    pub k: CyclicQuiver,
    pub field: Field,
    pub m: usize,
    pub lambdas: Vec<Elem>,
    pub data: QuiverData,
}

impl AssembledQuiver {
    /// Tube truncation index used by the assembly.
    pub fn tube_trunc(&self) -> usize {
        2 * self.m * self.k.vertex_count()
    }

    pub fn vertex_id(&self, v: &VertexLabel) -> usize {
        self.data
            .vertex_id(v)
            .unwrap_or_else(|| panic!("vertex {v:?} not in assembled quiver"))
    }

    pub fn arrow_id(&self, label: &ArrowLabel) -> usize {
        self.data
            .arrow_id(label)
            .unwrap_or_else(|| panic!("arrow {label:?} not in assembled quiver"))
    }

    /// The reflection on vertex labels: swaps the two grids, permutes tube
    /// stations within a level, fixes the homogeneous lines pointwise.
    pub fn reflect_label(&self, v: &VertexLabel) -> VertexLabel {
        let (g, h) = (self.k.g(), self.k.h() as i64);
        match v {
            VertexLabel::P { r, s } => VertexLabel::I { r: *r, s: *s },
            VertexLabel::I { r, s } => VertexLabel::P { r: *r, s: *s },
            VertexLabel::T0 { r, s } => VertexLabel::T0 {
                r: *r,
                s: tube0_s_norm(g, *r as i64 - *s as i64),
            },
            VertexLabel::Tinf { r, s } => VertexLabel::Tinf {
                r: *r,
                s: (-(*r as i64) - (*s as i64)).rem_euclid(h) as usize,
            },
            VertexLabel::L { lambda, r } => VertexLabel::L { lambda: lambda.clone(), r: *r },
        }
    }

    /// Reflection on vertex ids.
    pub fn reflect_s(&self, v: usize) -> usize {
        self.vertex_id(&self.reflect_label(&self.data.vertices[v]))
    }

    /// The mirror arrow: for `a: X -> Y`, the unique arrow `S(Y) -> S(X)`.
    pub fn reflect_arrow(&self, arrow: usize) -> usize {
        let a = &self.data.arrows[arrow];
        let src = self.reflect_s(a.tgt);
        let tgt = self.reflect_s(a.src);
        self.data
            .arrow_between(src, tgt)
            .unwrap_or_else(|| panic!("no mirror arrow for {:?}", a.label))
    }
}

/// Assemble the glued quiver.
pub fn assemble_qm(
    m: usize,
    lambdas: &[Elem],
    k: &CyclicQuiver,
    field: Field,
) -> Result<AssembledQuiver, QuiverError> {
    if lambdas.is_empty() {
        return Err(QuiverError::BadArgument("need at least one band parameter".into()));
    }
    let mut sorted = lambdas.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != lambdas.len() {
        return Err(QuiverError::BadArgument("band parameters must be pairwise distinct".into()));
    }
    if sorted.iter().any(|l| field.is_zero(l)) {
        return Err(QuiverError::BadArgument("band parameters must be nonzero".into()));
    }
    let (g, h, n) = (k.g(), k.h(), k.n());
    let tube_trunc = 2 * m * (n + 1);
    let ghm = g * h * m;

    let mut data = QuiverData::default();
    let absorb = |data: &mut QuiverData, part: QuiverData| {
        let mut map = Vec::with_capacity(part.vertices.len());
        for v in part.vertices {
            map.push(data.push_vertex(v));
        }
        for a in part.arrows {
            data.arrows.push(QArrow { label: a.label, src: map[a.src], tgt: map[a.tgt] });
        }
        for mv in part.mouth {
            data.mouth.push(map[mv]);
        }
    };
    absorb(&mut data, build_grid(k, m, false));
    absorb(&mut data, build_tube0(k, tube_trunc));
    absorb(&mut data, build_tube_inf(k, tube_trunc));
    for lambda in &sorted {
        absorb(&mut data, build_tube_lambda(lambda, tube_trunc));
    }
    absorb(&mut data, build_grid(k, m, true));

    let vid = |data: &QuiverData, v: VertexLabel| data.vertex_id(&v).unwrap();

    // iota_0(x): grid top row into the top of the station-g column of the
    // rank-g tube; kappa_0(x) is the mirror image.
    for x in 0..=g {
        let src = vid(&data, VertexLabel::P { r: ghm, s: x });
        let tgt = vid(&data, VertexLabel::T0 { r: g * tube_trunc + g - x, s: g });
        data.arrows.push(QArrow { label: ArrowLabel::Iota0 { x }, src, tgt });
    }
    // iota_inf(y) for y along the anticlockwise top path g, g+1, .., n, 0
    let inf_ys: Vec<usize> = (0..=h).map(|j| if j == h { 0 } else { g + j }).collect();
    for (j, &y) in inf_ys.iter().enumerate() {
        let src = vid(&data, VertexLabel::P { r: ghm, s: y });
        let tgt = vid(&data, VertexLabel::Tinf { r: h * tube_trunc + j, s: 0 });
        data.arrows.push(QArrow { label: ArrowLabel::IotaInf { y }, src, tgt });
    }
    for lambda in &sorted {
        let src = vid(&data, VertexLabel::P { r: ghm, s: 0 });
        let tgt = vid(&data, VertexLabel::L { lambda: lambda.clone(), r: tube_trunc + 2 });
        data.arrows.push(QArrow { label: ArrowLabel::IotaL { lambda: lambda.clone() }, src, tgt });
    }
    for x in 0..=g {
        let src = vid(
            &data,
            VertexLabel::T0 {
                r: g * tube_trunc + g - x,
                s: tube0_s_norm(g, g as i64 - x as i64),
            },
        );
        let tgt = vid(&data, VertexLabel::I { r: ghm, s: x });
        data.arrows.push(QArrow { label: ArrowLabel::Kappa0 { x }, src, tgt });
    }
    for (j, &y) in inf_ys.iter().enumerate() {
        let src = vid(&data, VertexLabel::Tinf { r: h * tube_trunc + j, s: (h - j % h) % h });
        let tgt = vid(&data, VertexLabel::I { r: ghm, s: y });
        data.arrows.push(QArrow { label: ArrowLabel::KappaInf { y }, src, tgt });
    }
    for lambda in &sorted {
        let src = vid(&data, VertexLabel::L { lambda: lambda.clone(), r: tube_trunc + 2 });
        let tgt = vid(&data, VertexLabel::I { r: ghm, s: 0 });
        data.arrows.push(QArrow { label: ArrowLabel::KappaL { lambda: lambda.clone() }, src, tgt });
    }

    let aq = AssembledQuiver { k: *k, field, m, lambdas: sorted, data };
    debug_assert!((0..aq.data.vertices.len()).all(|v| aq.reflect_s(aq.reflect_s(v)) == v));
    Ok(aq)
}

/// Two parallel length-2 paths with a common start, a common end, and
/// distinct middle vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diamond {
    pub x: usize,
    pub y1: usize,
    pub y2: usize,
    pub z: usize,
    /// `x -> y1 -> z`
    pub gamma: usize,
    pub gamma_p: usize,
    /// `x -> y2 -> z`
    pub delta: usize,
    pub delta_p: usize,
}

/// All diamonds of the assembled quiver. The second list holds the pairs
/// starting at the grid's top sink `(ghm, 0)_P`, which are excluded from
/// the commutativity relation and governed by the loop relations instead.
pub fn enumerate_diamonds(aq: &AssembledQuiver) -> (Vec<Diamond>, Vec<Diamond>) {
    let excluded_x = aq.vertex_id(&VertexLabel::P { r: aq.k.g() * aq.k.h() * aq.m, s: 0 });
    enumerate_diamonds_in(&aq.data, Some(excluded_x))
}

/// Station displacement of a grid arrow within its own component.
fn grid_step(label: &ArrowLabel) -> Option<i8> {
    match label {
        ArrowLabel::P { kind, .. } => Some(match kind {
            GridKind::Alpha(_) | GridKind::BetaPrime(_) => 1,
            GridKind::Beta(_) | GridKind::AlphaPrime(_) => -1,
        }),
        ArrowLabel::I { kind, .. } => Some(match kind {
            GridKind::Alpha(_) | GridKind::BetaPrime(_) => -1,
            GridKind::Beta(_) | GridKind::AlphaPrime(_) => 1,
        }),
        _ => None,
    }
}

/// Net displacement of a pure-grid double step, when both arrows move the
/// station the same way.
fn double_step(data: &QuiverData, a1: usize, a2: usize) -> Option<i8> {
    let d1 = grid_step(&data.arrows[a1].label)?;
    let d2 = grid_step(&data.arrows[a2].label)?;
    (d1 == d2).then_some(d1)
}

/// Diamond enumeration over flat quiver data; pairs starting at
/// `excluded_start` are split into the second list.
///
/// Parallel pairs must lift to common endpoints in the covering grid:
/// on a cycle of circumference dividing 4 a clockwise double and an
/// anticlockwise double from the same vertex can close up in the quotient
/// while their lifts end a full period apart. Those are artifacts of the
/// truncation picture, not meshes, and the functor genuinely tells them
/// apart, so they are dropped here.
pub fn enumerate_diamonds_in(
    data: &QuiverData,
    excluded_start: Option<usize>,
) -> (Vec<Diamond>, Vec<Diamond>) {
    let nv = data.vertices.len();
    let mut out_arrows: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, a) in data.arrows.iter().enumerate() {
        out_arrows[a.src].push(i);
    }
    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for x in 0..nv {
        let mut by_end: BTreeMap<usize, Vec<(usize, usize, usize)>> = BTreeMap::new();
        for &a1 in &out_arrows[x] {
            let mid = data.arrows[a1].tgt;
            for &a2 in &out_arrows[mid] {
                let z = data.arrows[a2].tgt;
                by_end.entry(z).or_default().push((a1, a2, mid));
            }
        }
        for (z, paths) in by_end {
            for i in 0..paths.len() {
                for j in (i + 1)..paths.len() {
                    let (g1, g2, y1) = paths[i];
                    let (d1, d2, y2) = paths[j];
                    if y1 == y2 {
                        continue;
                    }
                    if let (Some(s1), Some(s2)) =
                        (double_step(data, g1, g2), double_step(data, d1, d2))
                    {
                        if s1 != s2 {
                            continue; // lifts end a period apart
                        }
                    }
                    let dia =
                        Diamond { x, y1, y2, z, gamma: g1, gamma_p: g2, delta: d1, delta_p: d2 };
                    if Some(x) == excluded_start {
                        excluded.push(dia);
                    } else {
                        kept.push(dia);
                    }
                }
            }
        }
    }
    (kept, excluded)
}

/// Composable pairs `mouth --rho--> Y --pi--> mouth`: the zero relations at
/// the bottom of each tube.
pub fn mouth_triangles(data: &QuiverData) -> Vec<(usize, usize)> {
    let is_mouth: std::collections::BTreeSet<usize> = data.mouth.iter().copied().collect();
    let mut out = Vec::new();
    for (ri, rho) in data.arrows.iter().enumerate() {
        let rho_like = matches!(
            rho.label,
            ArrowLabel::Rho0 { .. } | ArrowLabel::RhoInf { .. } | ArrowLabel::RhoL { .. }
        );
        if !rho_like || !is_mouth.contains(&rho.src) {
            continue;
        }
        for (pi_idx, pi) in data.arrows.iter().enumerate() {
            let pi_like = matches!(
                pi.label,
                ArrowLabel::Pi0 { .. } | ArrowLabel::PiInf { .. } | ArrowLabel::PiL { .. }
            );
            if pi_like && pi.src == rho.tgt && is_mouth.contains(&pi.tgt) {
                out.push((ri, pi_idx));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k32() -> CyclicQuiver {
        CyclicQuiver::new(3, 2).unwrap()
    }

    fn f101() -> Field {
        Field::prime(101).unwrap()
    }

    #[test]
    fn grid_vertex_count() {
        let cq = build_component(&ComponentId::P, 1, &k32()).unwrap();
        assert_eq!(cq.data.vertices.len(), 35); // (ghm+1)(n+1) = 7*5
    }

    #[test]
    fn lambda_line_trunc0() {
        let f = f101();
        let cq = build_component(&ComponentId::Rlambda(f.from_i64(2)), 0, &k32()).unwrap();
        assert_eq!(cq.data.vertices.len(), 2);
        assert_eq!(cq.data.arrows.len(), 2);
        assert!(cq.data.arrow_id(&ArrowLabel::PiL { lambda: f.from_i64(2), r: 1 }).is_some());
        assert!(cq.data.arrow_id(&ArrowLabel::RhoL { lambda: f.from_i64(2), r: 1 }).is_some());
    }

    #[test]
    fn rejects_zero_band_parameter() {
        let res = build_component(&ComponentId::Rlambda(Elem::Fp(0)), 1, &k32());
        assert!(res.is_err());
    }

    #[test]
    fn tube_inf_trunc2() {
        let cq = build_component(&ComponentId::Rinf, 2, &k32()).unwrap();
        // s in {0,1}, r <= 2*3 - s
        for v in &cq.data.vertices {
            let VertexLabel::Tinf { r, s } = v else { panic!() };
            assert!(*s <= 1 && *r <= 6 - s);
        }
        assert_eq!(cq.data.vertices.len(), 7 + 6);
    }

    #[test]
    fn tube_degrees() {
        // strictly below the boundary staircase and off the mouth:
        // in-degree 2 and out-degree 2 with exactly one outgoing pi
        let k = k32();
        let trunc = 4usize;
        for comp in [ComponentId::R0, ComponentId::Rinf] {
            let cq = build_component(&comp, trunc, &k).unwrap();
            let n = cq.data.vertices.len();
            let interior_rmax = match comp {
                ComponentId::R0 => k.g() * trunc - 1,
                _ => k.h() * trunc,
            };
            let mut indeg = vec![0usize; n];
            let mut outdeg = vec![0usize; n];
            for a in &cq.data.arrows {
                outdeg[a.src] += 1;
                indeg[a.tgt] += 1;
            }
            for v in 0..n {
                let r = match cq.data.vertices[v] {
                    VertexLabel::T0 { r, .. } | VertexLabel::Tinf { r, .. } => r,
                    _ => panic!(),
                };
                if r == 0 || r > interior_rmax {
                    continue;
                }
                assert_eq!(outdeg[v], 2, "out-degree at {:?}", cq.data.vertices[v]);
                assert_eq!(indeg[v], 2, "in-degree at {:?}", cq.data.vertices[v]);
                let pi_out = cq
                    .data
                    .arrows
                    .iter()
                    .filter(|a| {
                        a.src == v
                            && matches!(
                                a.label,
                                ArrowLabel::Pi0 { .. } | ArrowLabel::PiInf { .. }
                            )
                    })
                    .count();
                assert_eq!(pi_out, 1);
            }
        }
    }

    #[test]
    fn assembled_connecting_arrows() {
        let f = f101();
        let k = k32();
        // m=0: g+1 = 4 iota_0 arrows
        let aq = assemble_qm(0, &[f.from_i64(1)], &k, f).unwrap();
        let iota0 = aq
            .data
            .arrows
            .iter()
            .filter(|a| matches!(a.label, ArrowLabel::Iota0 { .. }))
            .count();
        assert_eq!(iota0, 4);

        // m=1: h+1 = 3 iota_inf arrows at y in {3, 4, 0}
        let aq = assemble_qm(1, &[f.from_i64(1)], &k, f).unwrap();
        let ys: Vec<usize> = aq
            .data
            .arrows
            .iter()
            .filter_map(|a| match a.label {
                ArrowLabel::IotaInf { y } => Some(y),
                _ => None,
            })
            .collect();
        assert_eq!(ys, vec![3, 4, 0]);

        // iota_lambda: (6,0)_P -> (lambda, 12)
        let il = aq.arrow_id(&ArrowLabel::IotaL { lambda: f.from_i64(1) });
        let a = &aq.data.arrows[il];
        assert_eq!(aq.data.vertices[a.src], VertexLabel::P { r: 6, s: 0 });
        assert_eq!(aq.data.vertices[a.tgt], VertexLabel::L { lambda: f.from_i64(1), r: 12 });
    }

    #[test]
    fn assembled_rejects_bad_lambdas() {
        let f = f101();
        let k = k32();
        assert!(assemble_qm(1, &[], &k, f).is_err());
        assert!(assemble_qm(1, &[f.from_i64(1), f.from_i64(1)], &k, f).is_err());
        assert!(assemble_qm(1, &[f.zero()], &k, f).is_err());
    }

    #[test]
    fn reflection_examples_and_involution() {
        let f = f101();
        let k = k32();
        let aq = assemble_qm(1, &[f.from_i64(1), f.from_i64(2)], &k, f).unwrap();
        assert_eq!(
            aq.reflect_label(&VertexLabel::P { r: 6, s: 0 }),
            VertexLabel::I { r: 6, s: 0 }
        );
        // (2,3)_0 -> (2,2)_0 since r - s = -1 ≡ 2 mod 3
        assert_eq!(
            aq.reflect_label(&VertexLabel::T0 { r: 2, s: 3 }),
            VertexLabel::T0 { r: 2, s: 2 }
        );
        assert_eq!(
            aq.reflect_label(&VertexLabel::L { lambda: f.from_i64(2), r: 5 }),
            VertexLabel::L { lambda: f.from_i64(2), r: 5 }
        );
        for v in 0..aq.data.vertices.len() {
            assert_eq!(aq.reflect_s(aq.reflect_s(v)), v);
        }
        // S sends every iota to the matching kappa
        for (i, a) in aq.data.arrows.iter().enumerate() {
            match &a.label {
                ArrowLabel::Iota0 { x } => {
                    let s = aq.reflect_arrow(i);
                    assert_eq!(aq.data.arrows[s].label, ArrowLabel::Kappa0 { x: *x });
                }
                ArrowLabel::IotaInf { y } => {
                    let s = aq.reflect_arrow(i);
                    assert_eq!(aq.data.arrows[s].label, ArrowLabel::KappaInf { y: *y });
                }
                ArrowLabel::IotaL { lambda } => {
                    let s = aq.reflect_arrow(i);
                    assert_eq!(
                        aq.data.arrows[s].label,
                        ArrowLabel::KappaL { lambda: lambda.clone() }
                    );
                }
                _ => {}
            }
        }
    }

    #[test]
    fn mirror_grid_is_opposite() {
        let p = build_component(&ComponentId::P, 1, &k32()).unwrap();
        let i = build_component(&ComponentId::I, 1, &k32()).unwrap();
        assert_eq!(p.data.arrows.len(), i.data.arrows.len());
        for a in &p.data.arrows {
            let ArrowLabel::P { r, kind } = a.label else { panic!() };
            let mirrored = i.data.arrow_id(&ArrowLabel::I { r, kind }).unwrap();
            let b = &i.data.arrows[mirrored];
            let (VertexLabel::P { r: sr, s: ss }, VertexLabel::P { r: tr, s: ts }) =
                (&p.data.vertices[a.src], &p.data.vertices[a.tgt])
            else {
                panic!()
            };
            let (VertexLabel::I { r: br, s: bs }, VertexLabel::I { r: ar, s: as_ }) =
                (&i.data.vertices[b.src], &i.data.vertices[b.tgt])
            else {
                panic!()
            };
            assert_eq!((br, bs), (tr, ts));
            assert_eq!((ar, as_), (sr, ss));
        }
    }

    #[test]
    fn diamond_counts() {
        let f = f101();
        let k = k32();
        // single column: no diamonds with distinct middles
        let lam = build_component(&ComponentId::Rlambda(f.from_i64(1)), 0, &k).unwrap();
        let (kept, _) = enumerate_diamonds_in(&lam.data, None);
        assert!(kept.is_empty());

        // interior grid vertex starts exactly one diamond within the grid
        let p = build_component(&ComponentId::P, 1, &k).unwrap();
        let (kept, _) = enumerate_diamonds_in(&p.data, None);
        let x = p.data.vertex_id(&VertexLabel::P { r: 2, s: 2 }).unwrap();
        let from_x: Vec<_> = kept.iter().filter(|d| d.x == x).collect();
        assert_eq!(from_x.len(), 1);

        // pairs from the excluded grid sink exist and are separated out
        let aq = assemble_qm(1, &[f.from_i64(1), f.from_i64(2)], &k, f).unwrap();
        let (kept, excluded) = enumerate_diamonds(&aq);
        assert!(!excluded.is_empty());
        let sink = aq.vertex_id(&VertexLabel::P { r: 6, s: 0 });
        assert!(excluded.iter().all(|d| d.x == sink));
        assert!(kept.iter().all(|d| d.x != sink));
        // the dashed cross-component meshes are present
        let crosses = kept
            .iter()
            .filter(|d| {
                let a = &aq.data.arrows[d.gamma];
                let b = &aq.data.arrows[d.gamma_p];
                let c = &aq.data.arrows[d.delta];
                let e = &aq.data.arrows[d.delta_p];
                [a, b, c, e].iter().any(|t| t.label.is_connecting())
            })
            .count();
        assert!(crosses > 0, "expected cross-component diamonds");
    }

    #[test]
    fn quotient_artifact_pairs_are_not_diamonds() {
        // on the 4-cycle, a clockwise and an anticlockwise double from the
        // same vertex close up in the quotient but lift a period apart
        let k = CyclicQuiver::new(2, 2).unwrap();
        let p = build_component(&ComponentId::P, 1, &k).unwrap();
        let (kept, _) = enumerate_diamonds_in(&p.data, None);
        for d in &kept {
            let dirs = |a: usize, b: usize| {
                let s1 = match p.data.arrows[a].label {
                    ArrowLabel::P { kind, .. } => kind,
                    _ => panic!(),
                };
                let s2 = match p.data.arrows[b].label {
                    ArrowLabel::P { kind, .. } => kind,
                    _ => panic!(),
                };
                (s1, s2)
            };
            let plus = |kind: GridKind| {
                matches!(kind, GridKind::Alpha(_) | GridKind::BetaPrime(_))
            };
            let (a, b) = dirs(d.gamma, d.gamma_p);
            let (c, e) = dirs(d.delta, d.delta_p);
            let double1 = plus(a) == plus(b);
            let double2 = plus(c) == plus(e);
            assert!(
                !(double1 && double2),
                "artifact pair survived at {:?}",
                p.data.vertices[d.x]
            );
        }
    }

    #[test]
    fn mouth_triangle_enumeration() {
        let f = f101();
        let aq = assemble_qm(1, &[f.from_i64(1)], &k32(), f).unwrap();
        let tris = mouth_triangles(&aq.data);
        // rank-g tube: g triangles; rank-h tube: h; each lambda line: 1
        assert_eq!(tris.len(), 3 + 2 + 1);
    }
}
