//! Krull–Schmidt decomposition by peeling catalog summands.
//!
//! Every indecomposable is a walk or a band, and the endomorphism ring of
//! each catalog object is local with scalar residue field. A candidate `X`
//! is a summand of `V` exactly when some product `g∘f` of hom-basis
//! elements `f: X -> V`, `g: V -> X` has nonzero residue scalar; the
//! resulting idempotent splits off one copy and we recurse on the
//! complement.

use crate::field::{Elem, Field};
use crate::functor::CatalogObject;
use crate::matrix::Mat;
use crate::quiver::Walk;
use crate::rep::{
    band_rep, direct_sum, hom_basis, is_iso, walk_dims, walk_rep, BandSpec, Morphism, RepError,
    Representation,
};
use std::sync::Arc;

/// The scalar `c` with `phi - c·id` nilpotent, when the endomorphism lives
/// in a local ring with scalar residue field. Uses the trace when the
/// characteristic allows division by the total dimension, otherwise sweeps
/// the (small) prime field.
pub fn residue_scalar(phi: &Morphism) -> Option<Elem> {
    let field = phi.source.field;
    let total: usize = phi.source.total_dim();
    if total == 0 {
        return Some(field.zero());
    }
    let nilpotent_with = |c: &Elem| {
        phi.comps.iter().all(|m| {
            let shifted = m.sub(&Mat::identity(field, m.rows()).scale(c));
            shifted.is_nilpotent()
        })
    };
    let divides = match field {
        Field::Prime(p) => (total as u64).is_multiple_of(p),
        Field::Rational => false,
    };
    if !divides {
        let mut tr = field.zero();
        for m in &phi.comps {
            tr = field.add(&tr, &m.trace());
        }
        let c = field.div(&tr, &field.from_i64(total as i64)).expect("dimension is a unit");
        return nilpotent_with(&c).then_some(c);
    }
    // characteristic divides the dimension: the trace carries no
    // information, so test every scalar of the small field
    field.all_elems().into_iter().find(nilpotent_with)
}

fn build_candidate(c: &CatalogObject, v: &Representation) -> Representation {
    match c {
        CatalogObject::Walk(w) => walk_rep(w, &v.quiver, v.field),
        CatalogObject::Band(b) => band_rep(b, &v.quiver, v.field),
    }
}

/// Candidate catalog objects that could embed into `v`, deterministic
/// order: walks by (length, start), then bands by (size, parameter).
/// A band summand with parameter `lambda` forces a nonzero hom from the
/// size-1 band with the same parameter, so the parameter list is first
/// narrowed by that cheap test.
fn candidates(v: &Arc<Representation>, lambda_candidates: &[Elem]) -> Vec<CatalogObject> {
    let k = &v.quiver;
    let total = v.total_dim();
    let mut out = Vec::new();
    for len in 1..=total {
        for p in 0..k.vertex_count() {
            let w = Walk { p: p as i64, q: p as i64 + len as i64 - 1 };
            let dims = walk_dims(&w, k);
            if dims.iter().zip(&v.dims).all(|(a, b)| a <= b) {
                out.push(CatalogObject::Walk(w));
            }
        }
    }
    let dmax = v.dims.iter().copied().min().unwrap_or(0);
    if dmax >= 1 {
        let live: Vec<&Elem> = lambda_candidates
            .iter()
            .filter(|lambda| {
                let probe =
                    Arc::new(band_rep(&BandSpec { lambda: (*lambda).clone(), d: 1 }, k, v.field));
                !hom_basis(&probe, v).map(|b| b.is_empty()).unwrap_or(true)
            })
            .collect();
        for d in 1..=dmax {
            for lambda in &live {
                out.push(CatalogObject::Band(BandSpec { lambda: (*lambda).clone(), d }));
            }
        }
    }
    out
}

/// If `x` splits off `v`, return the complement.
fn try_peel(v: &Arc<Representation>, x: &Arc<Representation>) -> Option<Representation> {
    let fs = hom_basis(x, v).ok()?;
    if fs.is_empty() {
        return None;
    }
    let gs = hom_basis(v, x).ok()?;
    for f in &fs {
        for g in &gs {
            let phi = g.compose(f);
            let Some(c) = residue_scalar(&phi) else { continue };
            if v.field.is_zero(&c) {
                continue;
            }
            // phi is a unit in the local endomorphism ring; g' = phi^{-1} g
            // retracts f, so V = im(f) ⊕ ker(g')
            let phi_inv = phi.inverse().ok()?;
            let gp = phi_inv.compose(g);
            return Some(complement_of_retraction(v, x, &gp));
        }
    }
    None
}

/// The kernel of a retraction `gp: V -> X` (with a section), as a
/// representation on the kernel bases.
fn complement_of_retraction(
    v: &Arc<Representation>,
    x: &Arc<Representation>,
    gp: &Morphism,
) -> Representation {
    let k = v.quiver;
    let field = v.field;
    let kernels: Vec<Mat> = gp
        .comps
        .iter()
        .map(|m| {
            let basis = m.nullspace_basis();
            let mut mat = Mat::zero(field, m.cols(), basis.len());
            for (j, col) in basis.iter().enumerate() {
                for i in 0..m.cols() {
                    mat.set(i, j, col.get(i, 0).clone());
                }
            }
            mat
        })
        .collect();
    let dims: Vec<usize> = kernels.iter().map(Mat::cols).collect();
    debug_assert!(dims
        .iter()
        .zip(&v.dims)
        .zip(&x.dims)
        .all(|((c, vd), xd)| *c == vd - xd));
    let maps = k
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let image = v.maps[ai].mul(&kernels[a.src]);
            kernels[a.tgt]
                .solve_full_col_rank(&image)
                .expect("arrow maps preserve the kernel of a retraction")
        })
        .collect();
    Representation { quiver: k, field, dims, maps, labels: None }
}

/// Decompose into catalog objects with multiplicities. Over a prime field
/// all nonzero band parameters are tried; over the rationals the candidate
/// list must cover the parameters present (default: -10..10 without 0).
pub fn decompose(
    v: &Arc<Representation>,
    lambda_candidates: Option<&[Elem]>,
) -> Result<Vec<(CatalogObject, usize)>, RepError> {
    let field = v.field;
    let lambdas: Vec<Elem> = match (field, lambda_candidates) {
        (_, Some(cs)) => cs.to_vec(),
        (Field::Prime(_), None) => field.nonzero_elems(),
        (Field::Rational, None) => (-10i64..=10)
            .filter(|x| *x != 0)
            .map(|x| field.from_i64(x))
            .collect(),
    };
    let mut found: Vec<(CatalogObject, usize)> = Vec::new();
    let mut current = v.as_ref().clone();
    'outer: while current.total_dim() > 0 {
        let cur = Arc::new(current.clone());
        let cands = candidates(&cur, &lambdas);
        for cand in cands {
            let x = Arc::new(build_candidate(&cand, &current));
            if let Some(complement) = try_peel(&cur, &x) {
                match found.iter_mut().find(|(c, _)| *c == cand) {
                    Some((_, n)) => *n += 1,
                    None => found.push((cand, 1)),
                }
                current = complement;
                continue 'outer;
            }
        }
        return Err(RepError::NoCatalogSummand);
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    // reconstruct and compare: the decomposition must be an isomorphism
    if !found.is_empty() {
        let parts: Vec<Arc<Representation>> = found
            .iter()
            .flat_map(|(c, n)| {
                (0..*n).map(move |_| Arc::new(build_candidate(c, v))).collect::<Vec<_>>()
            })
            .collect();
        let rebuilt = Arc::new(direct_sum(&parts));
        if is_iso(v, &rebuilt).is_none() {
            return Err(RepError::Internal(
                "decomposition does not reassemble to the input".into(),
            ));
        }
    }
    Ok(found)
}

/// True when the representation is a single catalog object.
pub fn is_indecomposable(
    v: &Arc<Representation>,
    lambda_candidates: Option<&[Elem]>,
) -> Result<bool, RepError> {
    let parts = decompose(v, lambda_candidates)?;
    Ok(parts.len() == 1 && parts[0].1 == 1)
}
