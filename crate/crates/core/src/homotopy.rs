//! Two-term complexes of projectives, morphisms in the homotopy category,
//! the tilting complexes of a vertex set, their endomorphism algebras and
//! presentations of those algebras read off from prescribed generators.
//!
//! A map `P_a -> P_b` is left multiplication by an element of `e_b A e_a`
//! (paths `a -> b`); composition of such maps is multiplication in `A`.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, nullspace, Echelon, SparseVec};
use crate::module::{projective, projective_basis};
use crate::quiver::{Path, PathComb, Presentation, Quiver};
use crate::scalar::{Field, Scalar};
use crate::stable::{left_approximation, right_approximation};

/// Rows index the target summands, columns the source summands.
pub type AMatrix = Vec<Vec<PathComb>>;

fn zero_matrix(rows: usize, cols: usize) -> AMatrix {
    vec![vec![PathComb::zero(); cols]; rows]
}

fn amul(alg: &FdAlgebra, x: &AMatrix, y: &AMatrix, rows: usize, cols: usize) -> AMatrix {
    let mut out = zero_matrix(rows, cols);
    for (r, row) in out.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            for (i, xi) in x[r].iter().enumerate() {
                if !xi.is_zero() && !y[i][c].is_zero() {
                    *entry = entry.add(&alg.mul(xi, &y[i][c]));
                }
            }
        }
    }
    out
}

/// `[X^low -d-> X^{low+1}]` with `X^p` a sum of indecomposable projectives.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoTermComplex {
    pub low: i32,
    pub deg0: Vec<usize>,
    pub deg1: Vec<usize>,
    /// Entry `(b, a)` lies in `e_{deg1[b]} A e_{deg0[a]}`.
    pub differential: AMatrix,
}

impl TwoTermComplex {
    /// `P_v` concentrated in degree `d`.
    pub fn stalk(v: usize, d: i32) -> TwoTermComplex {
        TwoTermComplex { low: d - 1, deg0: vec![], deg1: vec![v], differential: vec![vec![]] }
    }

    /// `X[k]`, with `X[k]^p = X^{k+p}` and differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> TwoTermComplex {
        let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        TwoTermComplex {
            low: self.low - k,
            deg0: self.deg0.clone(),
            deg1: self.deg1.clone(),
            differential: self.differential.iter().map(|r| r.iter().map(|x| x.scale(&sign)).collect()).collect(),
        }
    }

    pub fn term(&self, p: i32) -> &[usize] {
        if p == self.low {
            &self.deg0
        } else if p == self.low + 1 {
            &self.deg1
        } else {
            &[]
        }
    }

    /// Entry `(r, c)` of `d^p : X^p -> X^{p+1}`.
    fn d(&self, p: i32, r: usize, c: usize) -> Option<&PathComb> {
        (p == self.low).then(|| &self.differential[r][c]).filter(|x| !x.is_zero())
    }

    /// No differential entry has a nonzero trivial-path coefficient.
    pub fn is_radical(&self) -> bool {
        self.differential.iter().flatten().all(|x| x.terms().all(|(p, _)| !p.is_trivial()))
    }
}

/// Components `f^p : C^p -> D^p`, keyed by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub maps: BTreeMap<i32, AMatrix>,
}

impl ChainMap {
    /// `self ∘ f`.
    pub fn after(&self, alg: &FdAlgebra, f: &ChainMap, c: &TwoTermComplex, e: &TwoTermComplex) -> ChainMap {
        let mut maps = BTreeMap::new();
        for (p, g) in &self.maps {
            if let Some(fp) = f.maps.get(p) {
                maps.insert(*p, amul(alg, g, fp, e.term(*p).len(), c.term(*p).len()));
            }
        }
        ChainMap { maps }
    }
}

/// One matrix entry of an unknown chain map component.
struct Slot {
    deg: i32,
    row: usize,
    col: usize,
    basis: Vec<usize>,
    offset: usize,
}

struct Layout {
    slots: Vec<Slot>,
    index: BTreeMap<(i32, usize, usize), usize>,
    total: usize,
}

impl Layout {
    fn new(alg: &FdAlgebra, c: &TwoTermComplex, d: &TwoTermComplex) -> Layout {
        let mut slots = Vec::new();
        let mut index = BTreeMap::new();
        let mut total = 0;
        for p in c.low.min(d.low)..=(c.low.max(d.low) + 1) {
            for (row, &y) in d.term(p).iter().enumerate() {
                for (col, &x) in c.term(p).iter().enumerate() {
                    let basis = alg.slice_indices(x, y);
                    index.insert((p, row, col), slots.len());
                    let n = basis.len();
                    slots.push(Slot { deg: p, row, col, basis, offset: total });
                    total += n;
                }
            }
        }
        Layout { slots, index, total }
    }

    fn degrees(&self) -> BTreeSet<i32> {
        self.slots.iter().map(|s| s.deg).collect()
    }

    /// Adds `x` (an element of `A`) into entry `(deg, row, col)`.
    fn add(&self, alg: &FdAlgebra, v: &mut SparseVec, deg: i32, row: usize, col: usize, x: &PathComb, coef: &Scalar) {
        let Some(&k) = self.index.get(&(deg, row, col)) else { return };
        let slot = &self.slots[k];
        for (i, c) in alg.coords(x) {
            let pos = slot.basis.iter().position(|&b| b == i).expect("entry lies in its slice");
            add_entry(v, slot.offset + pos, &(&c * coef));
        }
    }

    fn to_map(&self, alg: &FdAlgebra, c: &TwoTermComplex, d: &TwoTermComplex, v: &SparseVec) -> ChainMap {
        let mut maps: BTreeMap<i32, AMatrix> = BTreeMap::new();
        for p in self.degrees() {
            maps.insert(p, zero_matrix(d.term(p).len(), c.term(p).len()));
        }
        for s in &self.slots {
            let terms: SparseVec = s
                .basis
                .iter()
                .enumerate()
                .filter_map(|(k, &b)| v.get(&(s.offset + k)).map(|c| (b, c.clone())))
                .collect();
            if !terms.is_empty() {
                maps.get_mut(&s.deg).unwrap()[s.row][s.col] = alg.element(&terms);
            }
        }
        ChainMap { maps }
    }

    fn to_vec(&self, alg: &FdAlgebra, f: &ChainMap) -> SparseVec {
        let mut v = SparseVec::new();
        for s in &self.slots {
            if let Some(m) = f.maps.get(&s.deg) {
                self.add(alg, &mut v, s.deg, s.row, s.col, &m[s.row][s.col], &Scalar::one());
            }
        }
        v
    }
}

/// `Hom_{K(A)}(C, D)` with canonical representatives.
pub struct HomK {
    pub source: TwoTermComplex,
    pub target: TwoTermComplex,
    pub reps: Vec<ChainMap>,
    pub cycles: usize,
    pub boundaries: usize,
    layout: Layout,
    /// Null-homotopic maps (untracked) followed by the representatives.
    solver: Echelon,
    homotopy: Echelon,
}

impl HomK {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `f` in the representative basis.
    pub fn coords(&self, alg: &FdAlgebra, f: &ChainMap) -> Option<SparseVec> {
        self.solver.solve(&self.layout.to_vec(alg, f))
    }

    pub fn is_null_homotopic(&self, alg: &FdAlgebra, f: &ChainMap) -> bool {
        self.homotopy.contains(&self.layout.to_vec(alg, f))
    }

    pub fn is_chain_map(&self, alg: &FdAlgebra, f: &ChainMap) -> bool {
        chain_defect(alg, &self.source, &self.target, f).iter().all(PathComb::is_zero)
    }
}

/// Entries of `d_D f - f d_C` in every degree.
fn chain_defect(alg: &FdAlgebra, c: &TwoTermComplex, d: &TwoTermComplex, f: &ChainMap) -> Vec<PathComb> {
    let mut out = Vec::new();
    let get = |p: i32, r: usize, k: usize| f.maps.get(&p).map(|m| m[r][k].clone()).unwrap_or_else(PathComb::zero);
    for p in c.low.min(d.low) - 1..=c.low.max(d.low) + 1 {
        for r in 0..d.term(p + 1).len() {
            for k in 0..c.term(p).len() {
                let mut x = PathComb::zero();
                for i in 0..d.term(p).len() {
                    if let Some(dd) = d.d(p, r, i) {
                        x = x.add(&alg.mul(dd, &get(p, i, k)));
                    }
                }
                for i in 0..c.term(p + 1).len() {
                    if let Some(dc) = c.d(p, i, k) {
                        x = x.sub(&alg.mul(&get(p + 1, r, i), dc));
                    }
                }
                out.push(x);
            }
        }
    }
    out
}

pub fn hom_homotopy(alg: &FdAlgebra, c: &TwoTermComplex, d: &TwoTermComplex) -> HomK {
    let layout = Layout::new(alg, c, d);
    // chain condition, one column per unknown
    let mut eq_index: BTreeMap<(i32, usize, usize, usize), usize> = BTreeMap::new();
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut push = |key: (i32, usize, usize), x: &PathComb, coef: &Scalar, unknown: usize, rows: &mut Vec<SparseVec>| {
        for (i, v) in alg.coords(x) {
            let n = eq_index.len();
            let e = *eq_index.entry((key.0, key.1, key.2, i)).or_insert(n);
            if e == rows.len() {
                rows.push(SparseVec::new());
            }
            add_entry(&mut rows[e], unknown, &(&v * coef));
        }
    };
    let one = Scalar::one();
    let minus = -Scalar::one();
    for s in &layout.slots {
        for (k, &b) in s.basis.iter().enumerate() {
            let u = s.offset + k;
            let e = PathComb::from_path(alg.basis()[b].clone());
            // d_D^p f^p: entry (r, col) of the degree-p equation
            for r in 0..d.term(s.deg + 1).len() {
                if let Some(dd) = d.d(s.deg, r, s.row) {
                    push((s.deg, r, s.col), &alg.mul(dd, &e), &one, u, &mut rows);
                }
            }
            // f^p d_C^{p-1}: entry (row, c') of the degree-(p-1) equation
            for c2 in 0..c.term(s.deg - 1).len() {
                if let Some(dc) = c.d(s.deg - 1, s.col, c2) {
                    push((s.deg - 1, s.row, c2), &alg.mul(&e, dc), &minus, u, &mut rows);
                }
            }
        }
    }
    let cycles = nullspace(&rows, layout.total);
    let mut homotopy = Echelon::new();
    for p in c.low..=c.low + 1 {
        for (r, &y) in d.term(p - 1).iter().enumerate() {
            for (col, &x) in c.term(p).iter().enumerate() {
                for b in alg.slice_indices(x, y) {
                    let h = PathComb::from_path(alg.basis()[b].clone());
                    let mut v = SparseVec::new();
                    for r2 in 0..d.term(p).len() {
                        if let Some(dd) = d.d(p - 1, r2, r) {
                            layout.add(alg, &mut v, p, r2, col, &alg.mul(dd, &h), &one);
                        }
                    }
                    for c2 in 0..c.term(p - 1).len() {
                        if let Some(dc) = c.d(p - 1, col, c2) {
                            layout.add(alg, &mut v, p - 1, r, c2, &alg.mul(&h, dc), &one);
                        }
                    }
                    homotopy.insert(v);
                }
            }
        }
    }
    let boundaries = homotopy.rank();
    let mut solver = homotopy.clone();
    let mut reps = Vec::new();
    for z in &cycles {
        let z = homotopy.reduced(z);
        if solver.insert_tracked(z.clone(), reps.len()).is_some() {
            reps.push(layout.to_map(alg, c, d, &z));
        }
    }
    HomK { source: c.clone(), target: d.clone(), reps, cycles: cycles.len(), boundaries, layout, solver, homotopy }
}

/// `(T_v)_v` for `T_U = [P_U -> L_U] ⊕ Q_U[-1]`, indexed by vertex.
pub fn build_tilt_left(alg: &FdAlgebra, u: &[usize]) -> Result<Vec<TwoTermComplex>> {
    build_tilt(alg, u, true)
}

/// `(T_v)_v` for `_U T = [R_U -> P_U] ⊕ Q_U[1]`, indexed by vertex.
pub fn build_tilt_right(alg: &FdAlgebra, u: &[usize]) -> Result<Vec<TwoTermComplex>> {
    build_tilt(alg, u, false)
}

fn build_tilt(alg: &FdAlgebra, u: &[usize], left: bool) -> Result<Vec<TwoTermComplex>> {
    let n = alg.num_vertices();
    if u.is_empty() || u.len() >= n || u.iter().any(|&v| v >= n) {
        return Err(Error::Invalid("the vertex set must be a nonempty proper subset".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|v| !u.contains(v)).collect();
    let qs: Vec<_> = rest.iter().map(|&v| projective(alg, v)).collect();
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        if !u.contains(&v) {
            out.push(TwoTermComplex::stalk(v, if left { 1 } else { -1 }));
            continue;
        }
        let pv = projective(alg, v);
        let approx = if left {
            left_approximation(alg, &pv, &qs, false)?
        } else {
            right_approximation(alg, &qs, &pv, false)?
        };
        if approx.summands.is_empty() {
            return Err(Error::ApproximationZero(alg.quiver().vertex_name(v).to_string()));
        }
        let ends: Vec<usize> = approx.summands.iter().map(|&k| rest[k]).collect();
        // each component is determined by the image of the idempotent
        let entries: Vec<PathComb> = approx
            .components
            .iter()
            .zip(&ends)
            .map(|(f, &w)| {
                let (from, to) = if left { (v, w) } else { (w, v) };
                let pos = projective_basis(alg, from, from).iter().position(Path::is_trivial).unwrap();
                let mut e = vec![Scalar::zero(); f.blocks[from].cols()];
                e[pos] = Scalar::one();
                let img = f.blocks[from].apply(&e);
                PathComb::from_terms(projective_basis(alg, to, from).into_iter().zip(img))
            })
            .collect();
        out.push(if left {
            TwoTermComplex { low: 0, deg0: vec![v], deg1: ends, differential: entries.into_iter().map(|x| vec![x]).collect() }
        } else {
            TwoTermComplex { low: -1, deg0: ends, deg1: vec![v], differential: vec![entries] }
        });
    }
    Ok(out)
}

/// `End_{K(A)}(⊕ T_i)` with a basis of homotopy classes and structure
/// constants. Basis element `(i, j, k)` is the `k`-th class `T_i -> T_j`.
pub struct EndAlgebra {
    pub field: Field,
    pub labels: Vec<String>,
    pub summands: Vec<TwoTermComplex>,
    pub homs: Vec<Vec<HomK>>,
    pub basis: Vec<(usize, usize, usize)>,
    offsets: Vec<Vec<usize>>,
    table: BTreeMap<(usize, usize), SparseVec>,
    unit_parts: Vec<SparseVec>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        self.offsets[i][j] + k
    }

    /// The element given by a chain map `T_i -> T_j`.
    pub fn element(&self, alg: &FdAlgebra, i: usize, j: usize, f: &ChainMap) -> Option<SparseVec> {
        let c = self.homs[i][j].coords(alg, f)?;
        Some(c.into_iter().map(|(k, v)| (self.offsets[i][j] + k, v)).collect())
    }

    pub fn idempotent(&self, i: usize) -> SparseVec {
        self.unit_parts[i].clone()
    }

    /// `x · y`, i.e. `x ∘ y`.
    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if let Some(t) = self.table.get(&(*a, *b)) {
                    axpy(&mut out, &(ca * cb), t);
                }
            }
        }
        out
    }

    /// Summand indices `(i, j)` of a basis element, as a map `T_i -> T_j`.
    pub fn endpoints(&self, b: usize) -> (usize, usize) {
        let (i, j, _) = self.basis[b];
        (i, j)
    }
}

pub fn end_algebra(alg: &FdAlgebra, summands: &[TwoTermComplex], labels: &[String]) -> EndAlgebra {
    let n = summands.len();
    let homs: Vec<Vec<HomK>> =
        (0..n).map(|i| (0..n).map(|j| hom_homotopy(alg, &summands[i], &summands[j])).collect()).collect();
    let mut basis = Vec::new();
    let mut offsets = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            offsets[i][j] = basis.len();
            basis.extend((0..homs[i][j].dim()).map(|k| (i, j, k)));
        }
    }
    let mut table = BTreeMap::new();
    for (a, &(j, l, ka)) in basis.iter().enumerate() {
        for (b, &(i, j2, kb)) in basis.iter().enumerate() {
            if j != j2 {
                continue;
            }
            let g = &homs[j][l].reps[ka];
            let f = &homs[i][j].reps[kb];
            let gf = g.after(alg, f, &summands[i], &summands[l]);
            let c = homs[i][l].coords(alg, &gf).expect("composite is a chain map");
            let v: SparseVec = c.into_iter().map(|(k, x)| (offsets[i][l] + k, x)).collect();
            if !v.is_empty() {
                table.insert((a, b), v);
            }
        }
    }
    let unit_parts = (0..n)
        .map(|i| {
            let id = identity_map(&summands[i]);
            homs[i][i].coords(alg, &id).unwrap().into_iter().map(|(k, x)| (offsets[i][i] + k, x)).collect()
        })
        .collect();
    EndAlgebra {
        field: alg.field(),
        labels: labels.to_vec(),
        summands: summands.to_vec(),
        homs,
        basis,
        offsets,
        table,
        unit_parts,
    }
}

pub fn identity_map(c: &TwoTermComplex) -> ChainMap {
    let id = |vs: &[usize]| -> AMatrix {
        (0..vs.len())
            .map(|r| (0..vs.len()).map(|k| if r == k { PathComb::from_path(Path::trivial(vs[r])) } else { PathComb::zero() }).collect())
            .collect()
    };
    let mut maps = BTreeMap::new();
    maps.insert(c.low, id(&c.deg0));
    maps.insert(c.low + 1, id(&c.deg1));
    ChainMap { maps }
}

/// Labelled generators `Φ: kΔ' -> B`.
pub struct Surjection {
    pub quiver: Quiver,
    pub images: Vec<SparseVec>,
}

impl Surjection {
    pub fn new(end: &EndAlgebra, arrows: &[(String, usize, usize, SparseVec)]) -> Result<Surjection> {
        let mut quiver = Quiver::new();
        for l in &end.labels {
            quiver.add_vertex(l)?;
        }
        let mut images = Vec::new();
        for (label, s, t, img) in arrows {
            quiver.add_arrow(label, *s, *t)?;
            images.push(img.clone());
        }
        Ok(Surjection { quiver, images })
    }

    pub fn path_image(&self, end: &EndAlgebra, p: &Path) -> SparseVec {
        let mut v = end.idempotent(p.source());
        for &a in p.arrows().iter().rev() {
            v = end.mul(&self.images[a], &v);
        }
        v
    }

    pub fn evaluate(&self, end: &EndAlgebra, x: &PathComb) -> SparseVec {
        let mut out = SparseVec::new();
        for (p, c) in x.terms() {
            axpy(&mut out, c, &self.path_image(end, p));
        }
        out
    }
}

/// Rewriting rules for `ker Φ` under the length-lexicographic order, found
/// by walking words of increasing length whose proper subwords are all
/// standard. Errors with a witness if `Φ` is not onto.
pub fn kernel_rules(end: &EndAlgebra, phi: &Surjection) -> Result<(Vec<Path>, Vec<PathComb>)> {
    let q = &phi.quiver;
    let mut standard: Vec<Path> = Vec::new();
    let mut images: Vec<SparseVec> = Vec::new();
    let mut is_standard = BTreeSet::new();
    let mut span = Echelon::new();
    let mut rules = Vec::new();
    let mut layer = Vec::new();
    for v in 0..q.num_vertices() {
        let e = end.idempotent(v);
        let p = Path::trivial(v);
        span.insert_tracked(e.clone(), standard.len());
        standard.push(p.clone());
        images.push(e);
        is_standard.insert(p.clone());
        layer.push(standard.len() - 1);
    }
    while !layer.is_empty() {
        let mut candidates: BTreeMap<Path, SparseVec> = BTreeMap::new();
        for &s in &layer {
            let sp = &standard[s];
            for a in q.arrows_to(sp.source()) {
                let w = sp.compose(&Path::arrow(q, a)).unwrap();
                let tail = w.subpath(q, 1, w.len());
                if !is_standard.contains(&tail) {
                    continue;
                }
                candidates.entry(w).or_insert_with(|| end.mul(&images[s], &phi.images[a]));
            }
        }
        layer.clear();
        for (w, img) in candidates {
            if span.insert_tracked(img.clone(), standard.len()).is_some() {
                is_standard.insert(w.clone());
                standard.push(w);
                images.push(img);
                layer.push(standard.len() - 1);
            } else {
                let combo = span.solve(&img).unwrap();
                let mut r = PathComb::from_path(w);
                for (k, c) in combo {
                    r.add_term(standard[k].clone(), -c);
                }
                rules.push(r);
            }
        }
    }
    if span.rank() < end.dim() {
        let witness = (0..end.dim()).find(|&b| !span.contains(&SparseVec::from([(b, Scalar::one())]))).unwrap();
        let (i, j, k) = end.basis[witness];
        return Err(Error::NotSurjective(format!("class {k} of Hom(T_{}, T_{}) is not reached", end.labels[i], end.labels[j])));
    }
    Ok((standard, rules))
}

/// The presentation `kΔ'/ker Φ`, with an irredundant generating set of
/// `ker Φ`: rules are dropped, longest first, while the quotient keeps
/// dimension `dim B`.
pub fn presentation_from_surjection(end: &EndAlgebra, phi: &Surjection) -> Result<Presentation> {
    let (_, rules) = kernel_rules(end, phi)?;
    let make = |rels: &[PathComb]| {
        let mut p = Presentation::new(phi.quiver.clone(), end.field);
        for r in rels {
            p.add_relation(r.monic()).expect("rules are homogeneous");
        }
        p
    };
    let mut kept = rules;
    let mut k = kept.len();
    while k > 0 {
        k -= 1;
        let mut trial = kept.clone();
        trial.remove(k);
        if let Ok(b) = FdAlgebra::general(&make(&trial)) {
            if b.dim() == end.dim() {
                kept = trial;
            }
        }
    }
    Ok(make(&kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e2() -> FdAlgebra {
        FdAlgebra::new(&fixtures::e2()).unwrap()
    }

    fn labels(alg: &FdAlgebra) -> Vec<String> {
        alg.quiver().vertices.clone()
    }

    #[test]
    fn stalk_homs_are_slices() {
        let alg = e2();
        for v in 0..3 {
            for w in 0..3 {
                let h = hom_homotopy(&alg, &TwoTermComplex::stalk(v, 1), &TwoTermComplex::stalk(w, 1));
                assert_eq!(h.dim(), alg.slice_basis(v, w).len());
            }
        }
    }

    #[test]
    fn left_tilt_of_e2() {
        let alg = e2();
        let t = build_tilt_left(&alg, &[0]).unwrap();
        assert_eq!(t[0].deg0, vec![0]);
        assert_eq!(t[0].deg1, vec![1, 2]);
        let q = alg.quiver();
        let shown: Vec<String> = t[0].differential.iter().map(|r| r[0].display(q)).collect();
        assert_eq!(shown, vec!["a1", "b3"]);
        assert!(t[0].is_radical());
        let r = build_tilt_right(&alg, &[0]).unwrap();
        assert_eq!(r[0].deg0, vec![1, 2]);
        let shown: Vec<String> = r[0].differential[0].iter().map(|x| x.display(q)).collect();
        assert_eq!(shown, vec!["b1", "a3"]);
    }

    #[test]
    fn tilt_is_self_orthogonal() {
        for alg in [e2(), FdAlgebra::new(&fixtures::e1(3)).unwrap()] {
            for t in [build_tilt_left(&alg, &[1]).unwrap(), build_tilt_right(&alg, &[1]).unwrap()] {
                for a in &t {
                    for b in &t {
                        assert_eq!(hom_homotopy(&alg, a, &b.shift(1)).dim(), 0);
                        assert_eq!(hom_homotopy(&alg, a, &b.shift(-1)).dim(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn relation_classes_into_stalks() {
        let alg = e2();
        let t = build_tilt_left(&alg, &[0]).unwrap();
        let dims: Vec<usize> = (1..3).map(|i| hom_homotopy(&alg, &t[0], &t[i]).dim()).collect();
        assert_eq!(dims, vec![2, 2]);
    }

    #[test]
    fn end_algebra_of_tilt() {
        let alg = e2();
        let t = build_tilt_left(&alg, &[0]).unwrap();
        let b = end_algebra(&alg, &t, &labels(&alg));
        assert_eq!(b.dim(), alg.dim());
        for x in 0..b.dim() {
            for y in 0..b.dim() {
                for z in 0..b.dim() {
                    let e = |i: usize| SparseVec::from([(i, Scalar::one())]);
                    let l = b.mul(&b.mul(&e(x), &e(y)), &e(z));
                    let r = b.mul(&e(x), &b.mul(&e(y), &e(z)));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn stalk_end_algebra_recovers_presentation() {
        let alg = e2();
        let stalks: Vec<TwoTermComplex> = (0..3).map(|v| TwoTermComplex::stalk(v, 0)).collect();
        let b = end_algebra(&alg, &stalks, &labels(&alg));
        let q = alg.quiver();
        let arrows: Vec<(String, usize, usize, SparseVec)> = (0..q.num_arrows())
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                let f = ChainMap {
                    maps: BTreeMap::from([(-1, vec![vec![PathComb::zero()]]), (0, vec![vec![PathComb::from_path(Path::arrow(q, a))]])]),
                };
                let img = b.element(&alg, s, t, &f).unwrap();
                (q.label(a).to_string(), s, t, img)
            })
            .collect();
        let phi = Surjection::new(&b, &arrows).unwrap();
        let pres = presentation_from_surjection(&b, &phi).unwrap();
        let back = FdAlgebra::general(&pres).unwrap();
        assert_eq!(back.dim(), alg.dim());
        for r in &alg.presentation().relations {
            assert!(back.table().in_ideal(r));
        }
        for r in &pres.relations {
            assert!(alg.table().in_ideal(r));
        }
        let dropped = Surjection::new(&b, &arrows[..5]).unwrap();
        assert!(matches!(presentation_from_surjection(&b, &dropped), Err(Error::NotSurjective(_))));
    }
}
