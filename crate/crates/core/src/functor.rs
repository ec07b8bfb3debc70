//! The functor from the assembled quiver to explicit representations.
//!
//! Every vertex of a component quiver names a concrete representation
//! (a walk for the grids and tubes, a band for the homogeneous lines),
//! and every arrow names a concrete intertwining map. The grid object map
//! is computed by the defining backward-walk rule; the printed closed
//! forms are kept as independent cross-check oracles in the tests. The
//! mirror grid and all `kappa` morphisms are obtained by conjugating with
//! the duality isomorphisms, never hand-coded.

use crate::components::{
    ArrowLabel, AssembledQuiver, ComponentQuiver, GridKind, QArrow, VertexLabel,
};
use crate::field::{Elem, Field};
use crate::matrix::Mat;
use crate::quiver::{int_moddiv, ComponentId, CyclicQuiver, Walk};
use crate::rep::{
    band_rep, bar_morphism, bar_rep, label_matching, phi_target_walk, phi_walk, walk_rep,
    BandSpec, Morphism, RepError, Representation,
};
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum FunctorError {
    #[error("intertwining failure at arrow {0}")]
    Intertwining(String),
    #[error("object mismatch at {0}")]
    ObjectMismatch(String),
    #[error("search bound exceeded while locating {0}")]
    LocateBound(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Grid object map: walk the two maximal backward paths from the canonical
/// lift `(r, s)` down to level zero; their endpoints are the walk bounds.
pub fn fp_vertex(r: usize, s: usize, k: &CyclicQuiver) -> Walk {
    let (g, n) = (k.g() as i64, k.n() as i64);
    let period = n + 1;
    let in_alpha = |x: i64| x.rem_euclid(period) >= g;

    // start of the maximal path of station-raising arrows ending here
    let (mut lev, mut pos) = (r as i64, s as i64);
    loop {
        let prev = pos - 1;
        if in_alpha(prev) {
            pos = prev; // level-preserving predecessor
        } else if lev > 0 {
            lev -= 1;
            pos = prev; // level-raising predecessor
        } else {
            break;
        }
    }
    let p = pos;

    // start of the maximal path of station-lowering arrows ending here
    let (mut lev, mut pos) = (r as i64, s as i64);
    loop {
        if !in_alpha(pos) {
            pos += 1;
        } else if lev > 0 {
            lev -= 1;
            pos += 1;
        } else {
            break;
        }
    }
    let q = pos;

    Walk { p, q }.normalize(k)
}

/// Mirror grid object map: the duality image of the mirrored grid vertex.
pub fn fi_vertex(r: usize, s: usize, k: &CyclicQuiver) -> Walk {
    phi_target_walk(&fp_vertex(r, s, k), k)
}

/// Rank-g tube object map.
pub fn f0_vertex(r: usize, s: usize, k: &CyclicQuiver) -> Walk {
    let g = k.g() as i64;
    let n1 = k.vertex_count() as i64;
    let (r, s) = (r as i64, s as i64);
    let pm = (s - r).rem_euclid(g);
    let p = if pm == 0 { g } else { pm };
    let qp = s.rem_euclid(g);
    let lo = s - r;
    // multiples of g in [lo, s]
    let t = s.div_euclid(g) - (lo - 1).div_euclid(g);
    Walk { p, q: qp + t * n1 }
}

/// Rank-h tube object map.
pub fn finf_vertex(r: usize, s: usize, k: &CyclicQuiver) -> Walk {
    let (g, h) = (k.g() as i64, k.h() as i64);
    let n1 = k.vertex_count() as i64;
    let p = if s == 0 { 0 } else { g + s as i64 };
    let (div, md) = int_moddiv(r as i64 + s as i64, h).expect("h > 0");
    Walk { p, q: g + md + n1 * div }
}

/// The walk attached to a vertex label; homogeneous-line vertices carry
/// bands instead.
pub fn vertex_walk(v: &VertexLabel, k: &CyclicQuiver) -> Option<Walk> {
    match v {
        VertexLabel::P { r, s } => Some(fp_vertex(*r, *s, k)),
        VertexLabel::I { r, s } => Some(fi_vertex(*r, *s, k)),
        VertexLabel::T0 { r, s } => Some(f0_vertex(*r, *s, k)),
        VertexLabel::Tinf { r, s } => Some(finf_vertex(*r, *s, k)),
        VertexLabel::L { .. } => None,
    }
}

/// The object attached to a vertex label.
pub fn vertex_object(v: &VertexLabel, k: &CyclicQuiver, field: Field) -> Representation {
    match v {
        VertexLabel::L { lambda, r } => {
            band_rep(&BandSpec { lambda: lambda.clone(), d: *r }, k, field)
        }
        _ => walk_rep(&vertex_walk(v, k).expect("walk vertex"), k, field),
    }
}

pub fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    i64::try_from(acc).expect("binomial fits in i64 at desk scale")
}

/// Upper-triangular binomial pattern `rows x d`:
/// entry `(i,j)` is `C(j,i) * lambda^(j-i)` for `i <= j` (0-based), else 0.
pub fn d_matrix(d: usize, rows: usize, lambda: &Elem, field: Field) -> Mat {
    assert!(rows >= d, "need at least d rows");
    let mut m = Mat::zero(field, rows, d);
    for i in 0..d {
        for j in i..d {
            let c = field.from_i64(binomial(j as u64, i as u64));
            let v = field.mul(&c, &field.pow(lambda, (j - i) as u64));
            m.set(i, j, v);
        }
    }
    m
}

/// Anti-diagonal ones.
pub fn theta(field: Field, r: usize) -> Mat {
    let mut m = Mat::zero(field, r, r);
    for i in 0..r {
        m.set(i, r - 1 - i, field.one());
    }
    m
}

/// `(1_r 0)`: drop the last coordinate.
fn proj_matrix(field: Field, r: usize) -> Mat {
    let mut m = Mat::zero(field, r, r + 1);
    for i in 0..r {
        m.set(i, i, field.one());
    }
    m
}

/// `(0 / 1_r)`: include as the last coordinates.
fn incl_matrix(field: Field, r: usize) -> Mat {
    let mut m = Mat::zero(field, r + 1, r);
    for i in 0..r {
        m.set(i + 1, i, field.one());
    }
    m
}

/// A realized functor image: one representation per vertex, one verified
/// morphism per arrow, plus the duality isomorphisms used to build the
/// mirror half.
pub struct FunctorImage {
    pub aq: Arc<AssembledQuiver>,
    pub objects: Vec<Arc<Representation>>,
    pub morphisms: Vec<Morphism>,
    /// `phi[x] : bar(objects[x]) -> objects[S x]`, invertible.
    pub phis: Vec<Morphism>,
    pub bars: Vec<Arc<Representation>>,
}

impl FunctorImage {
    pub fn object(&self, v: usize) -> &Arc<Representation> {
        &self.objects[v]
    }

    pub fn morphism(&self, a: usize) -> &Morphism {
        &self.morphisms[a]
    }
}

fn lambda_of(label: &VertexLabel) -> Option<&Elem> {
    match label {
        VertexLabel::L { lambda, .. } => Some(lambda),
        _ => None,
    }
}

/// Morphism for an arrow that is defined directly (everything except the
/// mirror-grid arrows and the `kappa`s, which are conjugated).
fn direct_morphism(
    a: &QArrow,
    k: &CyclicQuiver,
    field: Field,
    m_param: Option<usize>,
    objects: &[Arc<Representation>],
    walks: &[Option<Walk>],
) -> Option<Morphism> {
    let n1 = k.vertex_count() as i64;
    let g = k.g() as i64;
    let src = &objects[a.src];
    let tgt = &objects[a.tgt];
    let src_walk = walks[a.src];
    let shift_on_wrap = |w: &Walk| if w.p == 1 { n1 } else { 0 };
    match &a.label {
        ArrowLabel::P { kind, .. } => {
            let ws = src_walk.expect("grid vertex carries a walk");
            let wt = walks[a.tgt].expect("grid vertex carries a walk");
            let delta = match kind {
                GridKind::Alpha(_) | GridKind::BetaPrime(_) => 0,
                GridKind::Beta(_) | GridKind::AlphaPrime(_) => shift_on_wrap(&ws),
            };
            // the object map must agree with the stepwise description of
            // the grid functor on arrows
            let expected = match kind {
                GridKind::Alpha(_) | GridKind::BetaPrime(_) => {
                    if ws.q.rem_euclid(n1) == n1 - 1 {
                        Walk { p: ws.p, q: ws.q + 1 + g }
                    } else {
                        Walk { p: ws.p, q: ws.q + 1 }
                    }
                }
                GridKind::Beta(_) | GridKind::AlphaPrime(_) => {
                    if ws.p == 1 {
                        Walk { p: g, q: ws.q + n1 }
                    } else {
                        Walk { p: ws.p - 1, q: ws.q }
                    }
                }
            };
            assert_eq!(expected, wt, "grid step table disagrees with object map at {:?}", a.label);
            Some(label_matching(src, tgt, delta))
        }
        ArrowLabel::Pi0 { .. } => Some(label_matching(src, tgt, 0)),
        ArrowLabel::Rho0 { .. } => {
            let ws = src_walk.expect("tube vertex carries a walk");
            Some(label_matching(src, tgt, shift_on_wrap(&ws)))
        }
        ArrowLabel::RhoInf { .. } => Some(label_matching(src, tgt, 0)),
        ArrowLabel::PiInf { s, .. } => {
            let delta = if *s == 0 { -n1 } else { 0 };
            Some(label_matching(src, tgt, delta))
        }
        ArrowLabel::PiL { r, .. } => {
            let comps = (0..k.vertex_count()).map(|_| proj_matrix(field, *r)).collect();
            Some(Morphism { source: src.clone(), target: tgt.clone(), comps })
        }
        ArrowLabel::RhoL { r, .. } => {
            let comps = (0..k.vertex_count()).map(|_| incl_matrix(field, *r)).collect();
            Some(Morphism { source: src.clone(), target: tgt.clone(), comps })
        }
        ArrowLabel::Iota0 { .. } => Some(label_matching(src, tgt, 0)),
        ArrowLabel::IotaInf { .. } => {
            let m = m_param.expect("connecting arrows need the assembly parameter") as i64;
            Some(label_matching(src, tgt, m * n1 * n1))
        }
        ArrowLabel::IotaL { lambda } => {
            let rows = tgt.dims[0];
            let comps = (0..k.vertex_count())
                .map(|x| d_matrix(src.dims[x], rows, lambda, field))
                .collect();
            Some(Morphism { source: src.clone(), target: tgt.clone(), comps })
        }
        ArrowLabel::I { .. }
        | ArrowLabel::Kappa0 { .. }
        | ArrowLabel::KappaInf { .. }
        | ArrowLabel::KappaL { .. } => None,
    }
}

/// The duality isomorphism at one object: anti-diagonal label matching for
/// walks, the theta-based matrices for bands.
fn build_phi(
    label: &VertexLabel,
    walk: &Option<Walk>,
    obj: &Arc<Representation>,
    bar: &Arc<Representation>,
    mirror_obj: &Arc<Representation>,
    k: &CyclicQuiver,
    field: Field,
) -> Result<Morphism, FunctorError> {
    let phi = if let Some(w) = walk {
        let tw = phi_target_walk(w, k);
        let expected = walk_rep(&tw, k, field);
        if expected != **mirror_obj {
            return Err(FunctorError::ObjectMismatch(format!(
                "duality target of {label:?} is {tw}, mirror object disagrees"
            )));
        }
        phi_walk(w, bar, mirror_obj, k)
    } else {
        let lambda = lambda_of(label).expect("band vertex");
        let r = obj.dims[0];
        let g = k.g();
        let th = theta(field, r);
        let comps: Vec<Mat> = (0..k.vertex_count())
            .map(|x| {
                let inv_mat = if x >= 1 && x < g {
                    th.scale(lambda).add(&th.mul(&crate::rep::j_mat(field, r)))
                } else {
                    th.clone()
                };
                inv_mat.inverse().expect("duality matrix is invertible")
            })
            .collect();
        Morphism { source: bar.clone(), target: mirror_obj.clone(), comps }
    };
    if !phi.is_invertible() {
        return Err(FunctorError::ObjectMismatch(format!("duality map at {label:?} not invertible")));
    }
    Ok(phi)
}

/// Build the full functor image over an assembled quiver, verifying the
/// intertwining property of every produced morphism.
pub fn phi_m(aq: &Arc<AssembledQuiver>) -> Result<FunctorImage, FunctorError> {
    let k = aq.k;
    let field = aq.field;
    let data = &aq.data;
    let nv = data.vertices.len();

    let walks: Vec<Option<Walk>> = data.vertices.iter().map(|v| vertex_walk(v, &k)).collect();
    let objects: Vec<Arc<Representation>> = data
        .vertices
        .iter()
        .map(|v| Arc::new(vertex_object(v, &k, field)))
        .collect();
    let bars: Vec<Arc<Representation>> =
        objects.iter().map(|o| Arc::new(bar_rep(o))).collect();

    let mut phis = Vec::with_capacity(nv);
    for v in 0..nv {
        let mirror = aq.reflect_s(v);
        phis.push(build_phi(
            &data.vertices[v],
            &walks[v],
            &objects[v],
            &bars[v],
            &objects[mirror],
            &k,
            field,
        )?);
    }

    // first pass: everything with a direct description
    let mut morphisms: Vec<Option<Morphism>> = data
        .arrows
        .iter()
        .map(|a| direct_morphism(a, &k, field, Some(aq.m), &objects, &walks))
        .collect();

    // second pass: mirror-grid arrows and kappas by conjugation
    for idx in 0..data.arrows.len() {
        if morphisms[idx].is_some() {
            continue;
        }
        let a = &data.arrows[idx];
        let mirror_idx = aq.reflect_arrow(idx);
        let base = morphisms[mirror_idx]
            .as_ref()
            .unwrap_or_else(|| panic!("mirror of {:?} must be built first", a.label));
        let su = aq.reflect_s(a.src);
        let sv = aq.reflect_s(a.tgt);
        let barred = bar_morphism(base, &bars[su], &bars[sv]);
        let m = phis[sv].compose(&barred).compose(
            &phis[su]
                .inverse()
                .map_err(|_| FunctorError::ObjectMismatch(format!("{:?}", a.label)))?,
        );
        morphisms[idx] = Some(m);
    }

    let morphisms: Vec<Morphism> = morphisms.into_iter().map(Option::unwrap).collect();

    // master self-check: every arrow is an exact intertwiner with the
    // right endpoints
    for (i, a) in data.arrows.iter().enumerate() {
        let m = &morphisms[i];
        if m.source != objects[a.src] || m.target != objects[a.tgt] {
            return Err(FunctorError::ObjectMismatch(a.label.render(&field)));
        }
        if !m.is_morphism() {
            return Err(FunctorError::Intertwining(a.label.render(&field)));
        }
    }

    Ok(FunctorImage { aq: aq.clone(), objects, morphisms, phis, bars })
}

/// Functor image of a single component quiver (grid or tube). The mirror
/// grid only exists inside an assembly, where it is built by conjugation.
pub struct ComponentImage {
    pub objects: Vec<Arc<Representation>>,
    pub morphisms: Vec<Morphism>,
}

pub fn component_image(
    cq: &ComponentQuiver,
    k: &CyclicQuiver,
    field: Field,
) -> Result<ComponentImage, FunctorError> {
    let walks: Vec<Option<Walk>> = cq.data.vertices.iter().map(|v| vertex_walk(v, k)).collect();
    let objects: Vec<Arc<Representation>> = cq
        .data
        .vertices
        .iter()
        .map(|v| Arc::new(vertex_object(v, k, field)))
        .collect();
    let mut morphisms = Vec::with_capacity(cq.data.arrows.len());
    for a in &cq.data.arrows {
        let m = direct_morphism(a, k, field, None, &objects, &walks)
            .ok_or_else(|| FunctorError::ObjectMismatch(format!(
                "component image cannot realize {:?} directly",
                a.label
            )))?;
        if !m.is_morphism() {
            return Err(FunctorError::Intertwining(a.label.render(&field)));
        }
        morphisms.push(m);
    }
    Ok(ComponentImage { objects, morphisms })
}

/// Catalog object label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CatalogObject {
    Walk(Walk),
    Band(BandSpec),
}

impl CatalogObject {
    pub fn render(&self, field: &Field) -> String {
        match self {
            CatalogObject::Walk(w) => format!("{w}"),
            CatalogObject::Band(b) => format!("band(λ={},d={})", field.render(&b.lambda), b.d),
        }
    }
}

fn div_ceil(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Find the component, quiver coordinates, and least assembly parameter `m`
/// whose truncation contains the catalog object.
pub fn locate(
    x: &CatalogObject,
    k: &CyclicQuiver,
    field: Field,
) -> Result<(ComponentId, VertexLabel, usize), FunctorError> {
    let (g, h, n) = (k.g(), k.h(), k.n());
    match x {
        CatalogObject::Band(b) => {
            if field.is_zero(&b.lambda) {
                return Err(FunctorError::LocateBound("band with zero parameter".into()));
            }
            // vertex (lambda, d); need tube truncation 2m(n+1) >= d-2
            let m = if b.d <= 2 { 0 } else { div_ceil(b.d - 2, 2 * (n + 1)) };
            Ok((
                ComponentId::Rlambda(b.lambda.clone()),
                VertexLabel::L { lambda: b.lambda.clone(), r: b.d },
                m,
            ))
        }
        CatalogObject::Walk(w) => {
            let w = w.normalize(k);
            let dim = w.len();
            let comp = crate::quiver::classify_walk(&w, k);
            match comp {
                ComponentId::P | ComponentId::I => {
                    let target = if comp == ComponentId::P { w } else { phi_target_walk(&w, k) };
                    for r in 0..=dim {
                        for s in 0..=n {
                            if fp_vertex(r, s, k) == target {
                                let m = div_ceil(r, g * h);
                                let label = if comp == ComponentId::P {
                                    VertexLabel::P { r, s }
                                } else {
                                    VertexLabel::I { r, s }
                                };
                                return Ok((comp, label, m));
                            }
                        }
                    }
                    Err(FunctorError::LocateBound(format!("{w}")))
                }
                ComponentId::R0 => {
                    for r in 0..=dim {
                        for s in 1..=g {
                            if f0_vertex(r, s, k) == w {
                                // need g*2m(n+1) + s >= r
                                let m = if r <= s { 0 } else { div_ceil(r - s, 2 * g * (n + 1)) };
                                return Ok((comp, VertexLabel::T0 { r, s }, m));
                            }
                        }
                    }
                    Err(FunctorError::LocateBound(format!("{w}")))
                }
                ComponentId::Rinf => {
                    for r in 0..=dim {
                        for s in 0..h {
                            if finf_vertex(r, s, k) == w {
                                // need h*(2m(n+1)+1) - s >= r
                                let m = if r + s <= h {
                                    0
                                } else {
                                    div_ceil(r + s - h, 2 * h * (n + 1))
                                };
                                return Ok((comp, VertexLabel::Tinf { r, s }, m));
                            }
                        }
                    }
                    Err(FunctorError::LocateBound(format!("{w}")))
                }
                ComponentId::Rlambda(_) => unreachable!("walks never classify as band components"),
            }
        }
    }
}

/// Text form of the vertex permutation used by the duality functor, for
/// verification reports.
pub fn g_table_string(k: &CyclicQuiver) -> String {
    let entries: Vec<String> = (0..=k.n()).map(|x| format!("G{}={}", x, k.g_perm(x))).collect();
    entries.join(", ")
}
