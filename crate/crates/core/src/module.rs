//! Finite-dimensional right modules as quiver representations.
//!
//! A right module `X` has a space `X_v` per vertex. An arrow `a: s -> t`
//! acts by `x ↦ x·a`, a linear map `X_t -> X_s`, stored as a matrix of
//! shape `dims[s] × dims[t]` acting on column vectors. A path
//! `p = a_1 a_2 ... a_n` acts by applying `a_1` first.

use std::collections::BTreeMap;

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{densify, nullspace, sparsify, Echelon, Matrix, SparseVec};
use crate::quiver::{Path, PathComb};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub action: Vec<Matrix>,
}

/// A homomorphism given by one matrix per vertex, `blocks[v]` of shape
/// `target.dims[v] × source.dims[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

impl Representation {
    pub fn zero(alg: &FdAlgebra) -> Representation {
        let q = alg.quiver();
        Representation { dims: vec![0; q.num_vertices()], action: q.arrows.iter().map(|_| Matrix::zeros(0, 0)).collect() }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of `x ↦ x·p`, shape `dims[s(p)] × dims[t(p)]`.
    pub fn path_matrix(&self, alg: &FdAlgebra, p: &Path) -> Matrix {
        let q = alg.quiver();
        let mut m = Matrix::identity(self.dims[p.target()]);
        for &a in p.arrows() {
            m = self.action[a].mul(&m);
            debug_assert_eq!(m.rows(), self.dims[q.source(a)]);
        }
        m
    }

    pub fn comb_matrix(&self, alg: &FdAlgebra, x: &PathComb) -> Option<Matrix> {
        let (s, t) = x.endpoints()?;
        let mut m = Matrix::zeros(self.dims[s], self.dims[t]);
        for (p, c) in x.terms() {
            m = m.add(&self.path_matrix(alg, p).scale(c));
        }
        Some(m)
    }

    /// `x·p` for `x ∈ X_{t(p)}`.
    pub fn act(&self, alg: &FdAlgebra, x: &[Scalar], p: &Path) -> Vec<Scalar> {
        self.path_matrix(alg, p).apply(x)
    }

    /// Shapes are consistent and every relation acts by zero.
    pub fn check(&self, alg: &FdAlgebra) -> Result<()> {
        let q = alg.quiver();
        if self.dims.len() != q.num_vertices() || self.action.len() != q.num_arrows() {
            return Err(Error::Invalid("representation does not match the quiver".into()));
        }
        for (a, m) in self.action.iter().enumerate() {
            if (m.rows(), m.cols()) != (self.dims[q.source(a)], self.dims[q.target(a)]) {
                return Err(Error::Invalid(format!("matrix of `{}` has the wrong shape", q.label(a))));
            }
        }
        for r in &alg.presentation().relations {
            if let Some(m) = self.comb_matrix(alg, r) {
                if !m.is_zero() {
                    return Err(Error::Invalid(format!("relation {} does not act by zero", r.display(q))));
                }
            }
        }
        Ok(())
    }
}

impl ModuleMap {
    pub fn zero(x: &Representation, y: &Representation) -> ModuleMap {
        ModuleMap { blocks: x.dims.iter().zip(&y.dims).map(|(&dx, &dy)| Matrix::zeros(dy, dx)).collect() }
    }

    pub fn identity(x: &Representation) -> ModuleMap {
        ModuleMap { blocks: x.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&g.blocks).map(|(f, g)| f.mul(g)).collect() }
    }

    pub fn add(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().zip(&g.blocks).map(|(f, g)| f.add(g)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap { blocks: self.blocks.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    /// Coordinates in the concatenation of all block entries (row-major).
    pub fn flatten(&self) -> SparseVec {
        let mut out = SparseVec::new();
        let mut off = 0;
        for b in &self.blocks {
            for (i, v) in b.entries().iter().enumerate() {
                if !v.is_zero() {
                    out.insert(off + i, v.clone());
                }
            }
            off += b.rows() * b.cols();
        }
        out
    }

    pub fn unflatten(x: &Representation, y: &Representation, v: &SparseVec) -> ModuleMap {
        let mut blocks = Vec::with_capacity(x.dims.len());
        let mut off = 0;
        for (&dx, &dy) in x.dims.iter().zip(&y.dims) {
            let mut m = Matrix::zeros(dy, dx);
            for r in 0..dy {
                for c in 0..dx {
                    if let Some(s) = v.get(&(off + r * dx + c)) {
                        m.set(r, c, s.clone());
                    }
                }
            }
            off += dx * dy;
            blocks.push(m);
        }
        ModuleMap { blocks }
    }

    /// Does the map intertwine the arrow actions?
    pub fn is_homomorphism(&self, alg: &FdAlgebra, x: &Representation, y: &Representation) -> bool {
        let q = alg.quiver();
        (0..q.num_arrows()).all(|a| {
            let (s, t) = (q.source(a), q.target(a));
            y.action[a].mul(&self.blocks[t]) == self.blocks[s].mul(&x.action[a])
        })
    }
}

/// `P_v = e_v A`, with basis the normal words ending at `v`.
pub fn projective(alg: &FdAlgebra, v: usize) -> Representation {
    let q = alg.quiver();
    let n = q.num_vertices();
    let idx = alg.projective_indices(v);
    // local coordinates per source vertex
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut local = BTreeMap::new();
    for &i in &idx {
        let w = alg.basis()[i].source();
        local.insert(i, by_vertex[w].len());
        by_vertex[w].push(i);
    }
    let dims: Vec<usize> = by_vertex.iter().map(Vec::len).collect();
    let mut action = Vec::with_capacity(q.num_arrows());
    for a in 0..q.num_arrows() {
        let (s, t) = (q.source(a), q.target(a));
        let mut m = Matrix::zeros(dims[s], dims[t]);
        for (col, &i) in by_vertex[t].iter().enumerate() {
            let pa = alg.basis()[i].compose(&Path::arrow(q, a)).expect("endpoints match");
            for (j, c) in alg.coords(&PathComb::from_path(pa)) {
                m.set(local[&j], col, c);
            }
        }
        action.push(m);
    }
    Representation { dims, action }
}

/// Basis paths of `P_v` at vertex `w`, in the coordinate order of
/// [`projective`].
pub fn projective_basis(alg: &FdAlgebra, v: usize, w: usize) -> Vec<Path> {
    alg.projective_indices(v).into_iter().map(|i| alg.basis()[i].clone()).filter(|p| p.source() == w).collect()
}

pub fn simple(alg: &FdAlgebra, v: usize) -> Representation {
    let q = alg.quiver();
    let mut dims = vec![0; q.num_vertices()];
    dims[v] = 1;
    let action = q.arrows.iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
    Representation { dims, action }
}

/// `⊕ xs` with its canonical injections and projections.
pub fn direct_sum(alg: &FdAlgebra, xs: &[Representation]) -> (Representation, Vec<ModuleMap>, Vec<ModuleMap>) {
    let q = alg.quiver();
    let n = q.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| xs.iter().map(|x| x.dims[v]).sum()).collect();
    let mut action: Vec<Matrix> = q.arrows.iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
    let mut offsets = vec![0usize; n];
    let mut incs = Vec::new();
    let mut projs = Vec::new();
    for x in xs {
        for a in 0..q.num_arrows() {
            let (s, t) = (q.source(a), q.target(a));
            action[a].paste(offsets[s], offsets[t], &x.action[a]);
        }
        let mut inc = Vec::new();
        let mut proj = Vec::new();
        for v in 0..n {
            let mut i = Matrix::zeros(dims[v], x.dims[v]);
            i.paste(offsets[v], 0, &Matrix::identity(x.dims[v]));
            proj.push(i.transpose());
            inc.push(i);
            offsets[v] += x.dims[v];
        }
        incs.push(ModuleMap { blocks: inc });
        projs.push(ModuleMap { blocks: proj });
    }
    (Representation { dims, action }, incs, projs)
}

/// Map `[f_1 ... f_k]: ⊕ X_i -> Y` from components.
pub fn row_map(fs: &[ModuleMap], y: &Representation) -> ModuleMap {
    let n = y.dims.len();
    let blocks = (0..n)
        .map(|v| fs.iter().fold(Matrix::zeros(y.dims[v], 0), |acc, f| acc.hstack(&f.blocks[v])))
        .collect();
    ModuleMap { blocks }
}

/// Map `(f_1; ...; f_k): X -> ⊕ Y_i` from components.
pub fn column_map(fs: &[ModuleMap], x: &Representation) -> ModuleMap {
    let n = x.dims.len();
    let blocks = (0..n)
        .map(|v| fs.iter().fold(Matrix::zeros(0, x.dims[v]), |acc, f| acc.vstack(&f.blocks[v])))
        .collect();
    ModuleMap { blocks }
}

/// Basis of `Hom_A(X, Y)`.
pub fn hom(alg: &FdAlgebra, x: &Representation, y: &Representation) -> Vec<ModuleMap> {
    let q = alg.quiver();
    let n = q.num_vertices();
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + x.dims[v] * y.dims[v];
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * x.dims[v] + c;
    let mut rows: Vec<SparseVec> = Vec::new();
    for a in 0..q.num_arrows() {
        let (s, t) = (q.source(a), q.target(a));
        let (ya, xa) = (&y.action[a], &x.action[a]);
        // (Y.a · f_t - f_s · X.a)[i][j] = 0
        for i in 0..y.dims[s] {
            for j in 0..x.dims[t] {
                let mut row = SparseVec::new();
                for k in 0..y.dims[t] {
                    let c = ya.get(i, k);
                    if !c.is_zero() {
                        crate::linalg::add_entry(&mut row, var(t, k, j), c);
                    }
                }
                for k in 0..x.dims[s] {
                    let c = xa.get(k, j);
                    if !c.is_zero() {
                        crate::linalg::add_entry(&mut row, var(s, i, k), &-c);
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    nullspace(&rows, offsets[n]).into_iter().map(|v| ModuleMap::unflatten(x, y, &v)).collect()
}

/// The map `P_v -> X` sending `e_v` to `x ∈ X_v`.
pub fn map_from_projective(alg: &FdAlgebra, v: usize, x_mod: &Representation, x: &[Scalar]) -> ModuleMap {
    let n = alg.num_vertices();
    let blocks = (0..n)
        .map(|w| {
            let cols: Vec<Vec<Scalar>> = projective_basis(alg, v, w).iter().map(|p| x_mod.act(alg, x, p)).collect();
            Matrix::from_columns(&cols, x_mod.dims[w])
        })
        .collect();
    ModuleMap { blocks }
}

/// A submodule, stored as an echelon basis per vertex.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub spaces: Vec<Echelon>,
}

impl Submodule {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Echelon::rank).collect()
    }
}

/// Smallest submodule containing the given homogeneous elements.
pub fn generate(alg: &FdAlgebra, x: &Representation, gens: &[(usize, Vec<Scalar>)]) -> Submodule {
    let q = alg.quiver();
    let mut spaces: Vec<Echelon> = x.dims.iter().map(|_| Echelon::new()).collect();
    let mut queue: Vec<(usize, SparseVec)> = gens.iter().map(|(v, g)| (*v, sparsify(g))).collect();
    while let Some((v, g)) = queue.pop() {
        if spaces[v].insert(g.clone()).is_none() {
            continue;
        }
        let dense = densify(&g, x.dims[v]);
        for a in q.arrows_to(v) {
            let img = x.action[a].apply(&dense);
            let s = q.source(a);
            let sv = sparsify(&img);
            if !sv.is_empty() {
                queue.push((s, sv));
            }
        }
    }
    Submodule { spaces }
}

/// `U` as a module together with its inclusion into `X`.
pub fn submodule_rep(alg: &FdAlgebra, x: &Representation, sub: &Submodule) -> (Representation, ModuleMap) {
    let q = alg.quiver();
    let bases: Vec<Vec<SparseVec>> = sub.spaces.iter().map(Echelon::basis).collect();
    let coord: Vec<Echelon> = bases
        .iter()
        .map(|b| {
            let mut e = Echelon::new();
            for (k, v) in b.iter().enumerate() {
                e.insert_tracked(v.clone(), k);
            }
            e
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut action = Vec::new();
    for a in 0..q.num_arrows() {
        let (s, t) = (q.source(a), q.target(a));
        let mut m = Matrix::zeros(dims[s], dims[t]);
        for (col, b) in bases[t].iter().enumerate() {
            let img = sparsify(&x.action[a].apply(&densify(b, x.dims[t])));
            let c = coord[s].solve(&img).expect("submodule is closed under the action");
            for (k, val) in c {
                m.set(k, col, val);
            }
        }
        action.push(m);
    }
    let blocks = bases
        .iter()
        .enumerate()
        .map(|(v, b)| Matrix::from_columns(&b.iter().map(|c| densify(c, x.dims[v])).collect::<Vec<_>>(), x.dims[v]))
        .collect();
    (Representation { dims, action }, ModuleMap { blocks })
}

/// `X / U` together with the projection.
pub fn quotient(alg: &FdAlgebra, x: &Representation, sub: &Submodule) -> (Representation, ModuleMap) {
    let q = alg.quiver();
    let n = x.dims.len();
    let comp: Vec<Vec<usize>> = (0..n).map(|v| (0..x.dims[v]).filter(|&i| !sub.spaces[v].is_pivot(i)).collect()).collect();
    let pos: Vec<BTreeMap<usize, usize>> = comp.iter().map(|c| c.iter().enumerate().map(|(k, &i)| (i, k)).collect()).collect();
    let dims: Vec<usize> = comp.iter().map(Vec::len).collect();
    let project = |v: usize, vec: &[Scalar]| -> Vec<Scalar> {
        let r = sub.spaces[v].reduced(&sparsify(vec));
        let mut out = vec![Scalar::zero(); dims[v]];
        for (i, c) in r {
            out[pos[v][&i]] = c;
        }
        out
    };
    let mut action = Vec::new();
    for a in 0..q.num_arrows() {
        let (s, t) = (q.source(a), q.target(a));
        let cols: Vec<Vec<Scalar>> = comp[t]
            .iter()
            .map(|&i| {
                let mut e = vec![Scalar::zero(); x.dims[t]];
                e[i] = Scalar::one();
                project(s, &x.action[a].apply(&e))
            })
            .collect();
        action.push(Matrix::from_columns(&cols, dims[s]));
    }
    let blocks = (0..n)
        .map(|v| {
            let cols: Vec<Vec<Scalar>> = (0..x.dims[v])
                .map(|i| {
                    let mut e = vec![Scalar::zero(); x.dims[v]];
                    e[i] = Scalar::one();
                    project(v, &e)
                })
                .collect();
            Matrix::from_columns(&cols, dims[v])
        })
        .collect();
    (Representation { dims, action }, ModuleMap { blocks })
}

pub fn kernel(alg: &FdAlgebra, x: &Representation, f: &ModuleMap) -> (Representation, ModuleMap) {
    let gens: Vec<(usize, Vec<Scalar>)> =
        (0..x.dims.len()).flat_map(|v| f.blocks[v].kernel().into_iter().map(move |k| (v, k))).collect();
    submodule_rep(alg, x, &generate(alg, x, &gens))
}

pub fn image(alg: &FdAlgebra, y: &Representation, f: &ModuleMap) -> Submodule {
    let gens: Vec<(usize, Vec<Scalar>)> =
        (0..y.dims.len()).flat_map(|v| (0..f.blocks[v].cols()).map(move |c| (v, f.blocks[v].column(c)))).collect();
    generate(alg, y, &gens)
}

pub fn cokernel(alg: &FdAlgebra, y: &Representation, f: &ModuleMap) -> (Representation, ModuleMap) {
    quotient(alg, y, &image(alg, y, f))
}

/// `rad X = X·J`.
pub fn radical(alg: &FdAlgebra, x: &Representation) -> Submodule {
    let q = alg.quiver();
    let gens: Vec<(usize, Vec<Scalar>)> = (0..q.num_arrows())
        .flat_map(|a| {
            let s = q.source(a);
            (0..x.action[a].cols()).map(move |c| (s, x.action[a].column(c)))
        })
        .collect();
    generate(alg, x, &gens)
}

pub fn top_dims(alg: &FdAlgebra, x: &Representation) -> Vec<usize> {
    let r = radical(alg, x).dims();
    x.dims.iter().zip(r).map(|(d, r)| d - r).collect()
}

/// Basis of the socle at each vertex.
pub fn socle(alg: &FdAlgebra, x: &Representation) -> Vec<Vec<Vec<Scalar>>> {
    let q = alg.quiver();
    (0..x.dims.len())
        .map(|t| {
            let stacked = q.arrows_to(t).into_iter().fold(Matrix::zeros(0, x.dims[t]), |acc, a| acc.vstack(&x.action[a]));
            stacked.kernel()
        })
        .collect()
}

pub fn socle_dims(alg: &FdAlgebra, x: &Representation) -> Vec<usize> {
    socle(alg, x).iter().map(Vec::len).collect()
}

/// Dimension vectors of the radical layers `rad^k X / rad^{k+1} X`.
pub fn radical_layers(alg: &FdAlgebra, x: &Representation) -> Vec<Vec<usize>> {
    let mut layers = Vec::new();
    let mut cur = x.clone();
    while !cur.is_zero() {
        let r = radical(alg, &cur);
        let rd = r.dims();
        layers.push(cur.dims.iter().zip(&rd).map(|(d, r)| d - r).collect());
        cur = submodule_rep(alg, &cur, &r).0;
    }
    layers
}

/// Layers written as `(S3⊕S3)/S1/S2`.
pub fn format_layers(alg: &FdAlgebra, layers: &[Vec<usize>]) -> String {
    let q = alg.quiver();
    layers
        .iter()
        .map(|l| {
            let parts: Vec<String> =
                l.iter().enumerate().flat_map(|(v, &k)| std::iter::repeat_n(format!("S{}", q.vertex_name(v)), k)).collect();
            if parts.len() == 1 {
                parts[0].clone()
            } else {
                format!("({})", parts.join("⊕"))
            }
        })
        .collect::<Vec<_>>()
        .join("/")
}

/// Minimal projective cover `P -> X`; the summands of `P` are listed.
pub fn projective_cover(alg: &FdAlgebra, x: &Representation) -> Result<(Representation, ModuleMap, Vec<usize>)> {
    if x.is_zero() {
        return Err(Error::ZeroModule);
    }
    let rad = radical(alg, x);
    let mut summands = Vec::new();
    let mut maps = Vec::new();
    for v in 0..x.dims.len() {
        let mut span = rad.spaces[v].clone();
        for i in 0..x.dims[v] {
            let mut e = vec![Scalar::zero(); x.dims[v]];
            e[i] = Scalar::one();
            if span.insert(sparsify(&e)).is_some() {
                summands.push(v);
                maps.push(map_from_projective(alg, v, x, &e));
            }
        }
    }
    let ps: Vec<Representation> = summands.iter().map(|&v| projective(alg, v)).collect();
    let (p, _, _) = direct_sum(alg, &ps);
    Ok((p, row_map(&maps, x), summands))
}

/// The socle element of `P_v` and the vertex it sits at.
pub fn projective_socle(alg: &FdAlgebra, v: usize) -> Result<(usize, Vec<Scalar>)> {
    let p = projective(alg, v);
    let soc = socle(alg, &p);
    let total: usize = soc.iter().map(Vec::len).sum();
    if total != 1 {
        return Err(Error::NotWeaklySymmetric);
    }
    let w = soc.iter().position(|s| s.len() == 1).unwrap();
    Ok((w, soc[w][0].clone()))
}

/// Injective envelope `X -> I` with `I` a sum of indecomposable
/// projective-injectives; the summands are listed.
pub fn injective_envelope(alg: &FdAlgebra, x: &Representation) -> Result<(Representation, ModuleMap, Vec<usize>)> {
    let n = alg.num_vertices();
    let socx = socle(alg, x);
    let mut summands = Vec::new();
    let mut maps = Vec::new();
    for w in 0..n {
        let (u, s) = projective_socle(alg, w)?;
        let need = socx[u].len();
        if need == 0 {
            continue;
        }
        let pw = projective(alg, w);
        let pivot = s.iter().position(|c| !c.is_zero()).unwrap();
        let mut chosen = Echelon::new();
        for g in hom(alg, x, &pw) {
            if chosen.rank() == need {
                break;
            }
            let functional: Vec<Scalar> = socx[u].iter().map(|e| &g.blocks[u].apply(e)[pivot] / &s[pivot]).collect();
            if chosen.insert(sparsify(&functional)).is_some() {
                summands.push(w);
                maps.push(g);
            }
        }
        if chosen.rank() < need {
            return Err(Error::NotWeaklySymmetric);
        }
    }
    let is: Vec<Representation> = summands.iter().map(|&w| projective(alg, w)).collect();
    let (i, _, _) = direct_sum(alg, &is);
    Ok((i, column_map(&maps, x), summands))
}

/// `ΩX`, the kernel of the projective cover (zero for `X = 0`).
pub fn syzygy(alg: &FdAlgebra, x: &Representation) -> Representation {
    if x.is_zero() {
        return x.clone();
    }
    let (p, f, _) = projective_cover(alg, x).expect("nonzero");
    kernel(alg, &p, &f).0
}

/// `Ω⁻¹X`, the cokernel of the injective envelope.
pub fn cosyzygy(alg: &FdAlgebra, x: &Representation) -> Result<Representation> {
    if x.is_zero() {
        return Ok(x.clone());
    }
    let (i, f, _) = injective_envelope(alg, x)?;
    Ok(cokernel(alg, &i, &f).0)
}

pub fn syzygy_power(alg: &FdAlgebra, x: &Representation, k: usize) -> Representation {
    (0..k).fold(x.clone(), |acc, _| syzygy(alg, &acc))
}

/// Removes all projective summands. A projective-injective `P_v` with
/// socle element `s` splits off `X` exactly `rank(x ↦ x·s on X_v)` times.
pub fn strip_projectives(alg: &FdAlgebra, x: &Representation) -> Result<Representation> {
    let mut cur = x.clone();
    for v in 0..alg.num_vertices() {
        let (w, s) = projective_socle(alg, v)?;
        let socle_elem = alg.element(
            &projective_basis(alg, v, w)
                .iter()
                .zip(&s)
                .filter(|(_, c)| !c.is_zero())
                .map(|(p, c)| (alg.basis_index(p).unwrap(), c.clone()))
                .collect(),
        );
        let m = cur.comb_matrix(alg, &socle_elem).expect("homogeneous");
        if m.rank() == 0 {
            continue;
        }
        let mut img = Echelon::new();
        let mut maps = Vec::new();
        for c in 0..m.cols() {
            if img.insert(m.column_sparse(c)).is_some() {
                let mut e = vec![Scalar::zero(); cur.dims[v]];
                e[c] = Scalar::one();
                maps.push(map_from_projective(alg, v, &cur, &e));
            }
        }
        let f = row_map(&maps, &cur);
        cur = cokernel(alg, &cur, &f).0;
    }
    Ok(cur)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoResult {
    Iso,
    NotIso,
    Unknown,
}

/// Three-valued isomorphism test: cheap invariants first, then a seeded
/// search for an invertible element of `Hom(X, Y)`.
pub fn iso_test(alg: &FdAlgebra, x: &Representation, y: &Representation, seed: u64) -> IsoResult {
    use rand::{Rng, SeedableRng};
    if x.dims != y.dims {
        return IsoResult::NotIso;
    }
    if x.is_zero() {
        return IsoResult::Iso;
    }
    if top_dims(alg, x) != top_dims(alg, y) || socle_dims(alg, x) != socle_dims(alg, y) {
        return IsoResult::NotIso;
    }
    let hxy = hom(alg, x, y);
    let hyx = hom(alg, y, x);
    let hxx = hom(alg, x, x).len();
    let hyy = hom(alg, y, y).len();
    if hxy.len() != hyx.len() || hxx != hyy || hxy.len() != hxx {
        return IsoResult::NotIso;
    }
    if radical_layers(alg, x) != radical_layers(alg, y) {
        return IsoResult::NotIso;
    }
    for g in &hxy {
        if g.is_iso() {
            return IsoResult::Iso;
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..24 {
        let mut f = ModuleMap::zero(x, y);
        for g in &hxy {
            let c: i64 = rng.gen_range(-6..=6);
            f = f.add(&g.scale(&Scalar::from(c)));
        }
        if f.is_iso() {
            return IsoResult::Iso;
        }
    }
    if hxy.len() <= 3 {
        let grid: Vec<i64> = (-2..=2).collect();
        let mut idx = vec![0usize; hxy.len()];
        loop {
            let mut f = ModuleMap::zero(x, y);
            for (g, &i) in hxy.iter().zip(&idx) {
                f = f.add(&g.scale(&Scalar::from(grid[i])));
            }
            if f.is_iso() {
                return IsoResult::Iso;
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < grid.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    IsoResult::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e2() -> FdAlgebra {
        FdAlgebra::new(&fixtures::e2()).unwrap()
    }

    #[test]
    fn projectives_are_modules() {
        for (_, p) in fixtures::catalog() {
            let alg = FdAlgebra::new(&p).unwrap();
            let total: usize = (0..alg.num_vertices()).map(|v| projective(&alg, v).total_dim()).sum();
            assert_eq!(total, alg.dim());
            for v in 0..alg.num_vertices() {
                projective(&alg, v).check(&alg).unwrap();
            }
        }
    }

    #[test]
    fn hom_between_projectives_is_a_slice() {
        let alg = e2();
        for a in 0..3 {
            for b in 0..3 {
                let h = hom(&alg, &projective(&alg, a), &projective(&alg, b));
                assert_eq!(h.len(), alg.slice_basis(a, b).len());
                assert!(h.iter().all(|f| f.is_homomorphism(&alg, &projective(&alg, a), &projective(&alg, b))));
            }
        }
    }

    #[test]
    fn simples_are_orthogonal() {
        let alg = e2();
        for a in 0..3 {
            for b in 0..3 {
                let n = hom(&alg, &simple(&alg, a), &simple(&alg, b)).len();
                assert_eq!(n, usize::from(a == b));
            }
        }
    }

    #[test]
    fn cover_and_envelope_of_simple() {
        let alg = e2();
        for v in 0..3 {
            let (p, f, s) = projective_cover(&alg, &simple(&alg, v)).unwrap();
            assert_eq!(s, vec![v]);
            assert_eq!(p, projective(&alg, v));
            assert!(f.is_homomorphism(&alg, &p, &simple(&alg, v)));
            let (_, g, s) = injective_envelope(&alg, &simple(&alg, v)).unwrap();
            assert_eq!(s, vec![v]);
            assert_eq!(g.rank(), 1);
        }
    }

    #[test]
    fn loewy_layers_of_projective() {
        let alg = e2();
        let layers = radical_layers(&alg, &projective(&alg, 0));
        assert_eq!(layers.first().unwrap(), &vec![1, 0, 0]);
        assert_eq!(layers.last().unwrap(), &vec![1, 0, 0]);
        assert_eq!(layers.len(), alg.nilpotency());
    }

    #[test]
    fn syzygy_roundtrip() {
        let alg = FdAlgebra::new(&fixtures::e1(3)).unwrap();
        for v in 0..3 {
            let s = simple(&alg, v);
            let back = cosyzygy(&alg, &syzygy(&alg, &s)).unwrap();
            assert_eq!(iso_test(&alg, &strip_projectives(&alg, &back).unwrap(), &s, 7), IsoResult::Iso);
        }
    }

    #[test]
    fn strip_removes_projective_summands() {
        let alg = e2();
        let (x, _, _) = direct_sum(&alg, &[projective(&alg, 1), simple(&alg, 2), projective(&alg, 1)]);
        let y = strip_projectives(&alg, &x).unwrap();
        assert_eq!(iso_test(&alg, &y, &simple(&alg, 2), 1), IsoResult::Iso);
    }

    #[test]
    fn iso_test_detects_difference() {
        let alg = e2();
        assert_eq!(iso_test(&alg, &simple(&alg, 0), &simple(&alg, 1), 0), IsoResult::NotIso);
        let s = syzygy(&alg, &simple(&alg, 0));
        let t = syzygy(&alg, &simple(&alg, 0));
        assert_eq!(iso_test(&alg, &s, &t, 0), IsoResult::Iso);
        assert_eq!(format_layers(&alg, &[vec![0, 0, 2], vec![1, 0, 0]]), "(S3⊕S3)/S1");
    }

    #[test]
    fn third_syzygy_of_last_simple() {
        let alg = FdAlgebra::new(&fixtures::e1(3)).unwrap();
        let x = syzygy_power(&alg, &simple(&alg, 2), 3);
        assert_eq!(iso_test(&alg, &x, &simple(&alg, 1), 0), IsoResult::Iso);
        assert_eq!(strip_projectives(&alg, &x).unwrap(), x);
    }

    #[test]
    fn dual_numbers_syzygy() {
        let alg = FdAlgebra::new(&fixtures::dual_numbers()).unwrap();
        assert_eq!(projective(&alg, 0).dims, vec![2]);
        let s = simple(&alg, 0);
        assert_eq!(iso_test(&alg, &syzygy(&alg, &s), &s, 0), IsoResult::Iso);
        assert!(strip_projectives(&alg, &projective(&alg, 0)).unwrap().is_zero());
    }
}
