//! Stable Hom, minimal approximations, images of simples under the
//! stable equivalence at a vertex, and Okuyama's condition.

use serde::Serialize;

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::module::*;
use crate::quiver::PathComb;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug)]
pub struct StableHomSpace {
    /// Representatives of a basis of the quotient.
    pub basis: Vec<ModuleMap>,
    pub dim: usize,
    /// Dimension of the maps factoring through a projective.
    pub projective_dim: usize,
    pub hom_dim: usize,
}

/// Span of the maps `X -> Y` factoring through the injective envelope of `X`.
pub fn projective_maps(alg: &FdAlgebra, x: &Representation, y: &Representation) -> Result<Echelon> {
    let mut span = Echelon::new();
    if x.is_zero() || y.is_zero() {
        return Ok(span);
    }
    let (i, iota, _) = injective_envelope(alg, x)?;
    for g in hom(alg, &i, y) {
        span.insert(g.after(&iota).flatten());
    }
    Ok(span)
}

pub fn stable_hom(alg: &FdAlgebra, x: &Representation, y: &Representation) -> Result<StableHomSpace> {
    let all = hom(alg, x, y);
    let mut span = projective_maps(alg, x, y)?;
    let projective_dim = span.rank();
    let basis: Vec<ModuleMap> = all.iter().filter(|f| span.insert(f.flatten()).is_some()).cloned().collect();
    Ok(StableHomSpace { dim: basis.len(), basis, projective_dim, hom_dim: all.len() })
}

/// The scalar `λ` with `f - λ` nilpotent, for `f` in a local endomorphism ring.
fn eigen_scalar(field: &Field, f: &ModuleMap) -> Scalar {
    let full = f.blocks.iter().fold(Matrix::zeros(0, 0), |acc, b| acc.direct_sum(b));
    let d = full.rows();
    if d == 0 {
        return Scalar::zero();
    }
    let p = field.characteristic() as usize;
    if p == 0 || d % p != 0 {
        return &full.trace() / &field.int(d as i64);
    }
    // (t - λ)^d = (t^q - λ)^{d'} with q = p^v, since λ^q = λ in F_p
    let mut q = 1;
    while d % (q * p) == 0 {
        q *= p;
    }
    let dd = d / q;
    let coeffs = full.char_poly();
    -(&coeffs[q * (dd - 1)] / &field.int(dd as i64))
}

/// Basis of the radical of `End(M)`, assumed local.
pub fn radical_of_end(alg: &FdAlgebra, m: &Representation) -> Vec<ModuleMap> {
    let basis = hom(alg, m, m);
    let lambdas: Vec<Scalar> = basis.iter().map(|f| eigen_scalar(&alg.field(), f)).collect();
    match lambdas.iter().position(|l| !l.is_zero()) {
        None => basis,
        Some(k) => basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(i, f)| f.add(&basis[k].scale(&-(&lambdas[i] / &lambdas[k]))))
            .collect(),
    }
}

fn rad_hom(alg: &FdAlgebra, ms: &[Representation], s: usize, t: usize) -> Vec<ModuleMap> {
    if s == t {
        radical_of_end(alg, &ms[t])
    } else {
        hom(alg, &ms[s], &ms[t])
    }
}

#[derive(Clone, Debug)]
pub struct Approximation {
    /// The approximating object `⊕ M_t^{n_t}`.
    pub object: Representation,
    /// For left approximations `X -> object`, for right ones `object -> X`.
    pub map: ModuleMap,
    /// Index into the list `M` of each summand of `object`, in order.
    pub summands: Vec<usize>,
    /// Component maps, one per summand.
    pub components: Vec<ModuleMap>,
}

/// Picks representatives of `space / sub`.
fn complement(space: &[ModuleMap], sub: &mut Echelon) -> Vec<ModuleMap> {
    space.iter().filter(|f| sub.insert(f.flatten()).is_some()).cloned().collect()
}

/// Minimal left `add(M)`-approximation of `X`; the `M` must be pairwise
/// non-isomorphic indecomposables. With `stable`, maps factoring through
/// projectives are ignored.
pub fn left_approximation(alg: &FdAlgebra, x: &Representation, ms: &[Representation], stable: bool) -> Result<Approximation> {
    let homs: Vec<Vec<ModuleMap>> = ms.iter().map(|m| hom(alg, x, m)).collect();
    let mut summands = Vec::new();
    let mut components = Vec::new();
    for t in 0..ms.len() {
        if ms[t].is_zero() || homs[t].is_empty() {
            continue;
        }
        let mut sub = if stable { projective_maps(alg, x, &ms[t])? } else { Echelon::new() };
        for s in 0..ms.len() {
            if ms[s].is_zero() || homs[s].is_empty() {
                continue;
            }
            for g in rad_hom(alg, ms, s, t) {
                for h in &homs[s] {
                    sub.insert(g.after(h).flatten());
                }
            }
        }
        for f in complement(&homs[t], &mut sub) {
            summands.push(t);
            components.push(f);
        }
    }
    let objs: Vec<Representation> = summands.iter().map(|&t| ms[t].clone()).collect();
    let (object, _, _) = direct_sum(alg, &objs);
    let map = column_map(&components, x);
    Ok(Approximation { object, map, summands, components })
}

/// Minimal right `add(M)`-approximation `M_0 -> X`.
pub fn right_approximation(alg: &FdAlgebra, ms: &[Representation], x: &Representation, stable: bool) -> Result<Approximation> {
    let homs: Vec<Vec<ModuleMap>> = ms.iter().map(|m| hom(alg, m, x)).collect();
    let mut summands = Vec::new();
    let mut components = Vec::new();
    for t in 0..ms.len() {
        if ms[t].is_zero() || homs[t].is_empty() {
            continue;
        }
        let mut sub = if stable { projective_maps(alg, &ms[t], x)? } else { Echelon::new() };
        for s in 0..ms.len() {
            if ms[s].is_zero() || homs[s].is_empty() {
                continue;
            }
            for g in rad_hom(alg, ms, t, s) {
                for h in &homs[s] {
                    sub.insert(h.after(&g).flatten());
                }
            }
        }
        for f in complement(&homs[t], &mut sub) {
            summands.push(t);
            components.push(f);
        }
    }
    let objs: Vec<Representation> = summands.iter().map(|&t| ms[t].clone()).collect();
    let (object, _, _) = direct_sum(alg, &objs);
    let map = row_map(&components, x);
    Ok(Approximation { object, map, summands, components })
}

/// Does every (stable) map `X -> M_t` factor through `f: X -> object`?
pub fn left_factorizes(
    alg: &FdAlgebra,
    x: &Representation,
    ms: &[Representation],
    object: &Representation,
    f: &ModuleMap,
    stable: bool,
) -> Result<bool> {
    for m in ms {
        if m.is_zero() {
            continue;
        }
        let mut span = if stable { projective_maps(alg, x, m)? } else { Echelon::new() };
        for g in hom(alg, object, m) {
            span.insert(g.after(f).flatten());
        }
        if hom(alg, x, m).iter().any(|h| !span.contains(&h.flatten())) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Removing any single summand of a left approximation must break it.
pub fn left_is_minimal(alg: &FdAlgebra, x: &Representation, ms: &[Representation], a: &Approximation, stable: bool) -> Result<bool> {
    for drop in 0..a.summands.len() {
        let objs: Vec<Representation> =
            a.summands.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &t)| ms[t].clone()).collect();
        let comps: Vec<ModuleMap> =
            a.components.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, c)| c.clone()).collect();
        let (obj, _, _) = direct_sum(alg, &objs);
        if left_factorizes(alg, x, ms, &obj, &column_map(&comps, x), stable)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn local_coords(alg: &FdAlgebra, v: usize, w: usize, x: &PathComb) -> Vec<Scalar> {
    let basis = projective_basis(alg, v, w);
    let mut out = vec![Scalar::zero(); basis.len()];
    for (i, c) in alg.coords(x) {
        let p = &alg.basis()[i];
        let k = basis.iter().position(|b| b == p).expect("coordinate lies in the slice");
        out[k] = c;
    }
    out
}

/// `F(S'_j)` for the stable equivalence induced by mutation at `v`:
/// `S_v` for `j = v`, otherwise `e_j J (1 - e_v) A ⊆ P_j`.
pub fn simple_image(alg: &FdAlgebra, v: usize, j: usize) -> Result<Representation> {
    let q = alg.quiver();
    if v >= q.num_vertices() || j >= q.num_vertices() {
        return Err(Error::UnknownVertex(format!("{}", v.max(j))));
    }
    if !q.loops(v).is_empty() {
        return Err(Error::LoopAtVertex(q.vertex_name(v).to_string()));
    }
    if j == v {
        return Ok(simple(alg, v));
    }
    let pj = projective(alg, j);
    let mut gens = Vec::new();
    for beta in q.arrows_to(j) {
        let l = q.source(beta);
        if l != v {
            let x = PathComb::from_path(crate::quiver::Path::arrow(q, beta));
            gens.push((l, local_coords(alg, j, l, &x)));
        }
    }
    for alpha in q.arrows_from(v).into_iter().filter(|&a| q.target(a) == j) {
        for gamma in q.arrows_to(v) {
            let l = q.source(gamma);
            let p = crate::quiver::Path::arrow(q, alpha).compose(&crate::quiver::Path::arrow(q, gamma)).unwrap();
            gens.push((l, local_coords(alg, j, l, &alg.reduce(&PathComb::from_path(p)))));
        }
    }
    let sub = generate(alg, &pj, &gens);
    Ok(submodule_rep(alg, &pj, &sub).0)
}

/// The largest submodule of `rad P_j` whose top avoids `S_v`, found by
/// iterating `U ↦ rad U + ⟨U_w : w ≠ v⟩`.
pub fn largest_submodule_avoiding_top(alg: &FdAlgebra, v: usize, j: usize) -> Representation {
    let pj = projective(alg, j);
    let mut cur = radical(alg, &pj);
    loop {
        let (u, inc) = submodule_rep(alg, &pj, &cur);
        let rad = radical(alg, &u);
        let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for w in 0..u.dims.len() {
            let b = rad.spaces[w].basis();
            for r in b {
                gens.push((w, inc.blocks[w].apply(&crate::linalg::densify(&r, u.dims[w]))));
            }
            if w != v {
                for c in 0..inc.blocks[w].cols() {
                    gens.push((w, inc.blocks[w].column(c)));
                }
            }
        }
        let next = generate(alg, &pj, &gens);
        if next.dims() == cur.dims() {
            return submodule_rep(alg, &pj, &next).0;
        }
        cur = next;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OkuyamaCheck {
    pub vertex: String,
    pub condition: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OkuyamaReport {
    pub checks: Vec<OkuyamaCheck>,
    pub passed: bool,
}

/// Okuyama's criterion for `candidates[j]` to be the images of the simples
/// under the stable equivalence of the tilt at `U`.
pub fn okuyama_verify(alg: &FdAlgebra, u: &[usize], candidates: &[Representation]) -> Result<OkuyamaReport> {
    let q = alg.quiver();
    let mut checks = Vec::new();
    let mut push = |j: usize, condition: &str, passed: bool| {
        checks.push(OkuyamaCheck { vertex: q.vertex_name(j).to_string(), condition: condition.into(), passed });
    };
    for (j, x) in candidates.iter().enumerate() {
        if u.contains(&j) {
            push(j, "simple", iso_test(alg, x, &simple(alg, j), 0) == IsoResult::Iso);
            continue;
        }
        let top = top_dims(alg, x);
        push(j, "top off U", !x.is_zero() && u.iter().all(|&i| top[i] == 0));
        let co = cosyzygy(alg, x)?;
        let rad = radical(alg, &co).dims();
        push(j, "rad of cosyzygy in U", (0..rad.len()).all(|w| u.contains(&w) || rad[w] == 0));
        push(j, "embeds in P_j", embeds(alg, x, &projective(alg, j)));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(OkuyamaReport { checks, passed })
}

/// Is there a monomorphism `X -> Y`? Decided through socles: a map is
/// mono iff it is injective on `soc X`.
pub fn embeds(alg: &FdAlgebra, x: &Representation, y: &Representation) -> bool {
    use rand::{Rng, SeedableRng};
    let h = hom(alg, x, y);
    let target = x.total_dim();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    (0..16).any(|_| {
        let mut f = ModuleMap::zero(x, y);
        for g in &h {
            f = f.add(&g.scale(&Scalar::from(rng.gen_range(-5i64..=5))));
        }
        f.rank() == target
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e2() -> FdAlgebra {
        FdAlgebra::new(&fixtures::e2()).unwrap()
    }

    #[test]
    fn stable_hom_basics() {
        let alg = e2();
        let x = syzygy(&alg, &simple(&alg, 1));
        assert_eq!(stable_hom(&alg, &projective(&alg, 0), &x).unwrap().dim, 0);
        assert_eq!(stable_hom(&alg, &simple(&alg, 0), &simple(&alg, 2)).unwrap().dim, 0);
        assert_eq!(stable_hom(&alg, &x, &simple(&alg, 0)).unwrap().dim, 1);
    }

    #[test]
    fn arrow_map_is_left_approximation() {
        let alg = e2();
        let ms: Vec<Representation> = (1..3).map(|v| projective(&alg, v)).collect();
        let p1 = projective(&alg, 0);
        let a = left_approximation(&alg, &p1, &ms, false).unwrap();
        assert_eq!(a.summands, vec![0, 1]);
        assert!(left_factorizes(&alg, &p1, &ms, &a.object, &a.map, false).unwrap());
        assert!(left_is_minimal(&alg, &p1, &ms, &a, false).unwrap());
        let r = right_approximation(&alg, &ms, &p1, false).unwrap();
        assert_eq!(r.summands, vec![0, 1]);
    }

    #[test]
    fn simple_images_of_e2() {
        let alg = e2();
        assert_eq!(simple_image(&alg, 0, 0).unwrap(), simple(&alg, 0));
        let x2 = simple_image(&alg, 0, 1).unwrap();
        assert_eq!(x2.dims, vec![1, 1, 2]);
        assert_eq!(format_layers(&alg, &radical_layers(&alg, &x2)), "(S3⊕S3)/S1/S2");
        let x3 = simple_image(&alg, 0, 2).unwrap();
        assert_eq!(x3.dims, vec![1, 2, 1]);
        assert_eq!(format_layers(&alg, &radical_layers(&alg, &x3)), "(S2⊕S2)/S1/S3");
        for j in 1..3 {
            let alt = largest_submodule_avoiding_top(&alg, 0, j);
            assert_eq!(iso_test(&alg, &alt, &simple_image(&alg, 0, j).unwrap(), 3), IsoResult::Iso);
        }
    }

    #[test]
    fn okuyama_holds_for_simple_images() {
        let alg = e2();
        let cands: Vec<Representation> = (0..3).map(|j| simple_image(&alg, 0, j).unwrap()).collect();
        let r = okuyama_verify(&alg, &[0], &cands).unwrap();
        assert!(r.passed, "{r:?}");
        let mut bad = cands.clone();
        bad[1] = submodule_rep(&alg, &projective(&alg, 1), &radical(&alg, &projective(&alg, 1))).0;
        assert!(!okuyama_verify(&alg, &[0], &bad).unwrap().passed);
    }

    #[test]
    fn loop_vertex_rejected() {
        let alg = FdAlgebra::new(&fixtures::loop_at_1()).unwrap();
        assert!(matches!(simple_image(&alg, 0, 1), Err(Error::LoopAtVertex(_))));
    }

    #[test]
    fn radical_of_local_end() {
        let alg = e2();
        let p = projective(&alg, 0);
        assert_eq!(radical_of_end(&alg, &p).len(), hom(&alg, &p, &p).len() - 1);
        let fp = FdAlgebra::new(&crate::grammar::parse_presentation(&fixtures::E2_TEXT.replace("field Q", "field F 2")).unwrap()).unwrap();
        let p = projective(&fp, 0);
        assert_eq!(radical_of_end(&fp, &p).len(), 1);
    }
}
