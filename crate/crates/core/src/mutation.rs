//! Combinatorial left tilting mutation at a loopless vertex `v`: the
//! quiver `Δ'` with arrows of four kinds, relations of five kinds, and
//! elimination of redundant arrows.
//!
//! Vertices of `Δ'` keep their names. Arrow labels:
//! `α*` (from `α: v -> i`), `(x.y.z)*` or `r<k>*` (from a relation class
//! `v -> i`), `β'` (from `β` avoiding `v`), `(α.β)'` (from `αβ` through `v`).
//!
//! Membership in `ker Φ` is decided without the oracle: between vertices
//! other than `v'`, a path of `Δ'` is read back into `A` by `β' ↦ β`,
//! `(αβ)' ↦ αβ` and `r*α* ↦ r/α`, and `Φ` of it vanishes iff that element
//! of `A` does. Paths starting at `v'` are tested after composing with
//! every `α*`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{FdAlgebra, Subideal};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, nullspace, Echelon, SparseVec};
use crate::quiver::{enumerate_paths, Path, PathComb, Presentation, Quiver};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ArrowTag {
    A1,
    A2,
    A3,
    A4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RelationTag {
    R1,
    R2,
    R3,
    R4,
    R5,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProvenancedArrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub tag: ArrowTag,
    /// The arrow, relation or pair of arrows of `A` it comes from.
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProvenancedRelation {
    pub relation: PathComb,
    pub tag: RelationTag,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Elimination {
    pub arrow: String,
    pub replacement: String,
    pub relation: String,
}

#[derive(Clone, Debug)]
pub struct MutationResult {
    pub vertex: usize,
    pub plus: bool,
    pub arrows: Vec<ProvenancedArrow>,
    pub relations: Vec<ProvenancedRelation>,
    pub raw: Presentation,
    pub reduced: Presentation,
    pub eliminations: Vec<Elimination>,
    /// `(i, i')`; names are kept.
    pub vertex_map: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

/// What a raw arrow stands for.
#[derive(Clone, Debug)]
enum Kind {
    /// `α*` for `α: v -> i`
    Star(usize),
    /// `r*` for the `k`-th relation class
    Class(usize),
    /// `β'`
    Old(usize),
    /// `(αβ)'`
    Through(usize, usize),
}

/// The quiver `Δ'` together with the data needed to build relations.
pub struct Mutation<'a> {
    pub alg: &'a FdAlgebra,
    pub vertex: usize,
    pub quiver: Quiver,
    pub arrows: Vec<ProvenancedArrow>,
    kinds: Vec<Kind>,
    /// `(r, raw arrow)` for each relation class.
    classes: Vec<(PathComb, usize)>,
    star: BTreeMap<usize, usize>,
    old: BTreeMap<usize, usize>,
    through: BTreeMap<(usize, usize), usize>,
}

fn dotted(q: &Quiver, p: &Path) -> String {
    p.arrows().iter().map(|&a| q.label(a)).collect::<Vec<_>>().join(".")
}

/// The arrows `A1`–`A4` of `Δ'`.
pub fn mutate_arrows(alg: &FdAlgebra, v: usize) -> Result<Mutation<'_>> {
    let q = alg.quiver();
    if v >= q.num_vertices() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    if !q.loops(v).is_empty() {
        return Err(Error::LoopAtVertex(q.vertex_name(v).to_string()));
    }
    if !alg.is_weakly_symmetric() {
        return Err(Error::NotWeaklySymmetric);
    }
    let mut quiver = Quiver::new();
    for name in &q.vertices {
        quiver.add_vertex(name)?;
    }
    let mut m = Mutation {
        alg,
        vertex: v,
        quiver,
        arrows: Vec::new(),
        kinds: Vec::new(),
        classes: Vec::new(),
        star: BTreeMap::new(),
        old: BTreeMap::new(),
        through: BTreeMap::new(),
    };
    let add = |m: &mut Mutation, label: String, s: usize, t: usize, tag: ArrowTag, witness: String, kind: Kind| -> Result<usize> {
        let idx = m.quiver.add_arrow(&label, s, t)?;
        m.arrows.push(ProvenancedArrow { label, source: s, target: t, tag, witness });
        m.kinds.push(kind);
        Ok(idx)
    };
    for a in q.arrows_from(v) {
        let idx = add(&mut m, format!("{}*", q.label(a)), q.target(a), v, ArrowTag::A1, q.label(a).into(), Kind::Star(a))?;
        m.star.insert(a, idx);
    }
    let den = Subideal::Sum(vec![Subideal::JeI(v), Subideal::IJ]);
    let mut unnamed = 0;
    for i in (0..q.num_vertices()).filter(|&i| i != v) {
        for r in alg.quotient_slice_basis(&Subideal::I, &den, v, i).representatives {
            let label = match r.terms().collect::<Vec<_>>().as_slice() {
                [(p, c)] if c.is_one() => format!("({})*", dotted(q, p)),
                _ => {
                    unnamed += 1;
                    format!("r{unnamed}*")
                }
            };
            let k = m.classes.len();
            let idx = add(&mut m, label, v, i, ArrowTag::A2, r.display(q), Kind::Class(k))?;
            m.classes.push((r, idx));
        }
    }
    for b in 0..q.num_arrows() {
        if q.source(b) != v && q.target(b) != v {
            let idx = add(&mut m, format!("{}'", q.label(b)), q.source(b), q.target(b), ArrowTag::A3, q.label(b).into(), Kind::Old(b))?;
            m.old.insert(b, idx);
        }
    }
    for beta in q.arrows_to(v) {
        for alpha in q.arrows_from(v) {
            let p = Path::arrow(q, alpha).compose(&Path::arrow(q, beta)).unwrap();
            if alg.reduce(&PathComb::from_path(p.clone())).is_zero() {
                continue;
            }
            let label = format!("({})'", dotted(q, &p));
            let idx = add(&mut m, label, q.source(beta), q.target(alpha), ArrowTag::A4, p.display(q), Kind::Through(alpha, beta))?;
            m.through.insert((alpha, beta), idx);
        }
    }
    Ok(m)
}

impl Mutation<'_> {
    fn q(&self) -> &Quiver {
        self.alg.quiver()
    }

    fn raw_path(&self, arrows: &[usize]) -> Path {
        Path::from_arrows(&self.quiver, arrows).expect("composable")
    }

    /// `p ↦ p'` for paths between vertices other than `v`; pairs `αβ`
    /// through `v` that vanish in `A` send the term to zero.
    pub fn translate(&self, x: &PathComb) -> Result<PathComb> {
        let q = self.q();
        let mut out = PathComb::zero();
        for (p, c) in x.terms() {
            if p.source() == self.vertex || p.target() == self.vertex {
                return Err(Error::IllegalEndpoint(p.display(q)));
            }
            if p.is_trivial() {
                out.add_term(p.clone(), c.clone());
                continue;
            }
            let arrows = p.arrows();
            let mut image = Vec::new();
            let mut k = arrows.len();
            let mut vanishes = false;
            // walk in the order the arrows are applied
            while k > 0 {
                let a = arrows[k - 1];
                if q.target(a) == self.vertex {
                    let alpha = arrows[k - 2];
                    match self.through.get(&(alpha, a)) {
                        Some(&t) => image.push(t),
                        None => vanishes = true,
                    }
                    k -= 2;
                } else {
                    image.push(self.old[&a]);
                    k -= 1;
                }
            }
            if !vanishes {
                image.reverse();
                out.add_term(self.raw_path(&image), c.clone());
            }
        }
        Ok(out)
    }

    /// Reads a path of `Δ'` between vertices other than `v'` back into `A`.
    fn read_back(&self, p: &Path) -> PathComb {
        let q = self.q();
        let alg = self.alg;
        let mut acc = PathComb::from_path(Path::trivial(p.source()));
        let arrows = p.arrows();
        let mut k = arrows.len();
        while k > 0 {
            let a = arrows[k - 1];
            let image = match &self.kinds[a] {
                Kind::Old(b) => PathComb::from_path(Path::arrow(q, *b)),
                Kind::Through(alpha, beta) => PathComb::from_path(Path::arrow(q, *alpha).compose(&Path::arrow(q, *beta)).unwrap()),
                Kind::Star(alpha) => {
                    k -= 1;
                    let Kind::Class(c) = &self.kinds[arrows[k - 1]] else { unreachable!("only class arrows leave v'") };
                    self.classes[*c].0.divide_left(&Path::arrow(q, *alpha), q)
                }
                Kind::Class(_) => unreachable!("paths start away from v'"),
            };
            acc = alg.mul(&image, &acc);
            k -= 1;
        }
        acc
    }

    /// Paths of `Δ'` made of `A3`/`A4` arrows, of length `< M`.
    fn old_paths(&self, source: usize, target: usize) -> Vec<Path> {
        let mut sub = Quiver::new();
        for name in &self.quiver.vertices {
            sub.add_vertex(name).unwrap();
        }
        let mut back = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if matches!(a.tag, ArrowTag::A3 | ArrowTag::A4) {
                sub.add_arrow(&a.label, a.source, a.target).unwrap();
                back.push(i);
            }
        }
        let bound = self.alg.nilpotency().saturating_sub(1);
        enumerate_paths(&sub, bound, Some(source), Some(target))
            .into_iter()
            .map(|p| {
                if p.is_trivial() {
                    p
                } else {
                    self.raw_path(&p.arrows().iter().map(|&a| back[a]).collect::<Vec<_>>())
                }
            })
            .collect()
    }

    /// `w·r*` for `w` an old path, grouped by target.
    fn candidates(&self, target: usize) -> Vec<(Path, Path, usize)> {
        let mut out = Vec::new();
        for (k, (_, a)) in self.classes.iter().enumerate() {
            let t = self.quiver.target(*a);
            for w in self.old_paths(t, target) {
                let full = w.compose(&Path::arrow(&self.quiver, *a)).unwrap();
                out.push((full, w, k));
            }
        }
        out
    }

    /// Coordinates of `Φ(x·α*)` over all arrows `α` out of `v`.
    fn probe(&self, w: &Path, k: usize) -> SparseVec {
        let q = self.q();
        let dim = self.alg.dim();
        let head = self.read_back(w);
        let mut v = SparseVec::new();
        for (ai, alpha) in q.arrows_from(self.vertex).into_iter().enumerate() {
            let tail = self.classes[k].0.divide_left(&Path::arrow(q, alpha), q);
            for (i, c) in self.alg.coords(&self.alg.mul(&head, &tail)) {
                add_entry(&mut v, ai * dim + i, &c);
            }
        }
        v
    }

    /// All relations `R1`–`R5`.
    pub fn relations(&self) -> Result<Vec<ProvenancedRelation>> {
        let alg = self.alg;
        let q = self.q();
        let v = self.vertex;
        let n = q.num_vertices();
        let mut out = Vec::new();
        let others: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        // R1
        let den = Subideal::Sum(vec![Subideal::JeI(v), Subideal::IeJ(v)]);
        for &i in &others {
            for &j in &others {
                for rho in alg.quotient_slice_basis(&Subideal::I, &den, i, j).representatives {
                    let r = self.translate(&rho)?;
                    if !r.is_zero() {
                        out.push(ProvenancedRelation { relation: r, tag: RelationTag::R1, witness: rho.display(q) });
                    }
                }
            }
        }
        // R2
        for (r, a) in &self.classes {
            for alpha in q.arrows_from(v) {
                let quotient = r.divide_left(&Path::arrow(q, alpha), q);
                let mut rel = self.translate(&quotient)?;
                let path = Path::arrow(&self.quiver, *a).compose(&Path::arrow(&self.quiver, self.star[&alpha])).unwrap();
                rel.add_term(path, -Scalar::one());
                out.push(ProvenancedRelation {
                    relation: rel,
                    tag: RelationTag::R2,
                    witness: format!("{} / {}", r.display(q), q.label(alpha)),
                });
            }
        }
        // R3
        for beta in q.arrows_to(v) {
            let mut rel = PathComb::zero();
            for alpha in q.arrows_from(v) {
                if let Some(&t) = self.through.get(&(alpha, beta)) {
                    let p = Path::arrow(&self.quiver, self.star[&alpha]).compose(&Path::arrow(&self.quiver, t)).unwrap();
                    rel.add_term(p, Scalar::one());
                }
            }
            if !rel.is_zero() {
                out.push(ProvenancedRelation { relation: rel, tag: RelationTag::R3, witness: q.label(beta).into() });
            }
        }
        let cands: BTreeMap<usize, Vec<(Path, Path, usize)>> = others.iter().map(|&i| (i, self.candidates(i))).collect();
        let budget: usize = cands.values().map(Vec::len).sum();
        if budget > 50_000 {
            return Err(Error::R5SearchExhausted(budget));
        }
        // R4: Σ α*·Y_α with Φ(Y_α) the map given by (αρ)/γ
        let den4 = Subideal::Sum(vec![Subideal::IJ, Subideal::JI]);
        for rho in alg.quotient_slice_basis(&Subideal::I, &den4, v, v).representatives {
            let mut rel = PathComb::zero();
            for alpha in q.arrows_from(v) {
                let t = q.target(alpha);
                let c = &cands[&t];
                let mut ech = Echelon::new();
                for (idx, (_, w, k)) in c.iter().enumerate() {
                    ech.insert_tracked(self.probe(w, *k), idx);
                }
                let alpha_rho = rho.left_mul_path(&Path::arrow(q, alpha));
                let dim = alg.dim();
                let mut rhs = SparseVec::new();
                for (gi, gamma) in q.arrows_from(v).into_iter().enumerate() {
                    let part = alg.reduce(&alpha_rho.divide_left(&Path::arrow(q, gamma), q));
                    for (i, x) in alg.coords(&part) {
                        add_entry(&mut rhs, gi * dim + i, &x);
                    }
                }
                let combo = ech.solve(&rhs).ok_or(Error::R5SearchExhausted(c.len()))?;
                for (idx, x) in combo {
                    let p = Path::arrow(&self.quiver, self.star[&alpha]).compose(&c[idx].0).unwrap();
                    rel.add_term(p, x);
                }
            }
            if !rel.is_zero() {
                out.push(ProvenancedRelation { relation: rel, tag: RelationTag::R4, witness: rho.display(q) });
            }
        }
        // R5: kernels on candidate spaces, modulo consequences
        let mut kernels: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
        for &i in &others {
            let c = &cands[&i];
            let cols: Vec<SparseVec> = c.iter().map(|(_, w, k)| self.probe(w, *k)).collect();
            kernels.insert(i, nullspace(&transpose(&cols), c.len()));
        }
        for &i in &others {
            let c = &cands[&i];
            let index: BTreeMap<(Path, usize), usize> =
                c.iter().enumerate().map(|(idx, (_, w, k))| ((w.clone(), *k), idx)).collect();
            let mut cons = Echelon::new();
            // w·r* with w already zero in A
            for (k, (_, a)) in self.classes.iter().enumerate() {
                let ws = self.old_paths(self.quiver.target(*a), i);
                let cols: Vec<SparseVec> = ws.iter().map(|w| alg.coords(&self.read_back(w))).collect();
                for z in nullspace(&transpose(&cols), ws.len()) {
                    cons.insert(z.into_iter().map(|(wi, x)| (index[&(ws[wi].clone(), k)], x)).collect());
                }
            }
            // u·κ for shorter kernel elements κ ending elsewhere
            for &l in &others {
                let cl = &cands[&l];
                for u in self.old_paths(l, i).into_iter().filter(|u| !u.is_trivial()) {
                    for kappa in &kernels[&l] {
                        let mut z = SparseVec::new();
                        for (idx, x) in kappa {
                            let (_, w, k) = &cl[*idx];
                            let uw = u.compose(w).unwrap();
                            if let Some(&j) = index.get(&(uw, *k)) {
                                add_entry(&mut z, j, x);
                            }
                        }
                        cons.insert(z);
                    }
                }
            }
            for kappa in &kernels[&i] {
                let red = cons.reduced(kappa);
                if cons.insert(kappa.clone()).is_some() {
                    let rel = PathComb::from_terms(red.iter().map(|(idx, x)| (c[*idx].0.clone(), x.clone())));
                    out.push(ProvenancedRelation {
                        relation: rel.monic(),
                        tag: RelationTag::R5,
                        witness: format!("vanishes after every {}", self.star_list()),
                    });
                }
            }
        }
        Ok(out)
    }

    fn star_list(&self) -> String {
        self.star.values().map(|&a| self.quiver.label(a).to_string()).collect::<Vec<_>>().join(", ")
    }
}

fn transpose(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c {
            rows.entry(*i).or_default().insert(j, x.clone());
        }
    }
    rows.into_values().collect()
}

/// Substitutes `arrow := replacement` in every path of `x`.
fn substitute(x: &PathComb, arrow: usize, replacement: &PathComb, q: &Quiver) -> PathComb {
    x.map_paths(|p| {
        let mut acc = PathComb::from_path(Path::trivial(p.source()));
        for &a in p.arrows().iter().rev() {
            let factor = if a == arrow { replacement.clone() } else { PathComb::from_path(Path::arrow(q, a)) };
            acc = factor.mul(&acc);
        }
        acc
    })
}

/// Drops linearly dependent and zero relations.
fn independent(rels: Vec<PathComb>) -> Vec<PathComb> {
    let mut ids: BTreeMap<Path, usize> = BTreeMap::new();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for r in rels {
        let v: SparseVec = r
            .terms()
            .map(|(p, c)| {
                let n = ids.len();
                (*ids.entry(p.clone()).or_insert(n), c.clone())
            })
            .collect();
        if ech.insert(v).is_some() {
            out.push(r);
        }
    }
    out
}

/// Eliminates arrows occurring as a linear term of some relation,
/// until all relations lie in `J'^2`.
pub fn reduce_presentation(pres: &Presentation) -> Result<(Presentation, Vec<Elimination>)> {
    let mut q = pres.quiver.clone();
    let mut rels: Vec<PathComb> = independent(pres.relations.clone());
    let mut log = Vec::new();
    let guard = q.num_arrows() + 1;
    for _ in 0..guard {
        let pick = rels.iter().enumerate().find_map(|(ri, r)| {
            let linear: Vec<(usize, Scalar)> = r.terms().filter(|(p, _)| p.len() == 1).map(|(p, c)| (p.arrows()[0], c.clone())).collect();
            linear
                .iter()
                .rev()
                .find(|(a, _)| r.terms().filter(|(p, _)| p.arrows().contains(a)).count() == 1)
                .map(|(a, c)| (ri, *a, c.clone()))
        });
        let Some((ri, a, c)) = pick else {
            if rels.iter().any(|r| r.min_len() < 2) {
                return Err(Error::NonTerminating("a linear term remains but no arrow can be eliminated".into()));
            }
            break;
        };
        let rel = rels.remove(ri);
        let mut rest = rel.clone();
        rest.add_term(Path::arrow(&q, a), -c.clone());
        let replacement = rest.scale(&-c.inv());
        log.push(Elimination { arrow: q.label(a).into(), replacement: replacement.display(&q), relation: rel.display(&q) });
        rels = rels.iter().map(|r| substitute(r, a, &replacement, &q)).collect();
        // drop the arrow and renumber
        let mut nq = Quiver::new();
        for name in &q.vertices {
            nq.add_vertex(name)?;
        }
        let mut map = vec![usize::MAX; q.num_arrows()];
        for b in 0..q.num_arrows() {
            if b != a {
                map[b] = nq.add_arrow(q.label(b), q.source(b), q.target(b))?;
            }
        }
        rels = independent(rels.iter().map(|r| r.map_paths(|p| PathComb::from_path(p.with_arrows_renamed(&map)))).collect());
        q = nq;
    }
    if rels.iter().any(|r| r.min_len() < 2) {
        return Err(Error::NonTerminating("elimination did not settle".into()));
    }
    let mut out = Presentation::new(q, pres.field);
    for r in rels {
        out.add_relation(r)?;
    }
    Ok((out, log))
}

/// Drops relations, longest first, as long as the algebra keeps its
/// dimension; the rest are made monic.
pub fn minimize_relations(pres: &Presentation) -> Result<Presentation> {
    let dim = FdAlgebra::general(pres)?.dim();
    let mut rels: Vec<PathComb> = pres.relations.iter().map(PathComb::monic).collect();
    let mut order: Vec<usize> = (0..rels.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse((rels[i].max_len(), rels[i].len())));
    let mut keep = vec![true; rels.len()];
    for i in order {
        keep[i] = false;
        let mut trial = Presentation::new(pres.quiver.clone(), pres.field);
        trial.relations = (0..rels.len()).filter(|&k| keep[k]).map(|k| rels[k].clone()).collect();
        if FdAlgebra::general(&trial).map(|a| a.dim()).ok() != Some(dim) {
            keep[i] = true;
        }
    }
    let mut out = Presentation::new(pres.quiver.clone(), pres.field);
    out.relations = rels.drain(..).zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect();
    Ok(out)
}

pub fn mutate_plus(alg: &FdAlgebra, v: usize) -> Result<MutationResult> {
    let m = mutate_arrows(alg, v)?;
    let relations = m.relations()?;
    let mut raw = Presentation::new(m.quiver.clone(), alg.field());
    for r in &relations {
        raw.add_relation(r.relation.clone())?;
    }
    let (reduced, eliminations) = reduce_presentation(&raw)?;
    let reduced = minimize_relations(&reduced)?;
    let vertex_map = alg.quiver().vertices.iter().map(|n| (n.clone(), n.clone())).collect();
    Ok(MutationResult { vertex: v, plus: true, arrows: m.arrows, relations, raw, reduced, eliminations, vertex_map, warnings: Vec::new() })
}

/// Right mutation, as the opposite of the left mutation of the opposite
/// algebra. With `checked`, the dimension is compared with the
/// endomorphism algebra of the right tilting complex.
pub fn mutate_minus(alg: &FdAlgebra, v: usize, checked: bool) -> Result<MutationResult> {
    let op = FdAlgebra::new(&alg.presentation().opposite())?;
    let r = mutate_plus(&op, v)?;
    let out = MutationResult {
        vertex: v,
        plus: false,
        arrows: r.arrows.into_iter().map(|a| ProvenancedArrow { source: a.target, target: a.source, ..a }).collect(),
        relations: r.relations.into_iter().map(|x| ProvenancedRelation { relation: x.relation.reversed(), ..x }).collect(),
        raw: r.raw.opposite(),
        reduced: r.reduced.opposite(),
        eliminations: r.eliminations,
        vertex_map: r.vertex_map,
        warnings: r.warnings,
    };
    if checked {
        let t = crate::homotopy::build_tilt_right(alg, &[v])?;
        let end = crate::homotopy::end_algebra(alg, &t, &alg.quiver().vertices);
        let got = FdAlgebra::general(&out.reduced)?.dim();
        if got != end.dim() {
            return Err(Error::OracleMismatch(format!("right mutation has dimension {got}, End of the tilting complex {}", end.dim())));
        }
    }
    Ok(out)
}

/// The first two maps of a projective resolution of `S'_j` over the
/// mutated algebra, read off the raw presentation.
#[derive(Clone, Debug)]
pub struct ResolutionPrefix {
    pub vertex: usize,
    /// Summands of the middle term: one per arrow into `j'`.
    pub middle: Vec<usize>,
    pub arrows: Vec<usize>,
    /// Summands of the left term: one per relation ending at `j'`.
    pub left: Vec<usize>,
    pub relations: Vec<usize>,
    /// Entry `(a, ρ)` is `a \ ρ`.
    pub phi: Vec<Vec<PathComb>>,
}

pub fn resolution_prefix(result: &MutationResult, j: usize) -> ResolutionPrefix {
    let q = &result.raw.quiver;
    let arrows = q.arrows_to(j);
    let relations: Vec<usize> = (0..result.raw.relations.len())
        .filter(|&k| result.raw.relations[k].endpoints().map(|(_, t)| t) == Some(j))
        .collect();
    let phi = arrows
        .iter()
        .map(|&a| relations.iter().map(|&k| result.raw.relations[k].divide_right(&Path::arrow(q, a), q)).collect())
        .collect();
    ResolutionPrefix {
        vertex: j,
        middle: arrows.iter().map(|&a| q.source(a)).collect(),
        left: relations.iter().map(|&k| result.raw.relations[k].endpoints().unwrap().0).collect(),
        arrows,
        relations,
        phi,
    }
}

impl ResolutionPrefix {
    /// Entries `r* \ ρ` for class arrows `r*` and relations from `v'`.
    pub fn upper_left_zero(&self, result: &MutationResult) -> bool {
        self.arrows.iter().enumerate().all(|(ai, &a)| {
            result.arrows[a].tag != ArrowTag::A2
                || self.relations.iter().enumerate().all(|(ri, &k)| result.relations[k].tag != RelationTag::R5 || self.phi[ai][ri].is_zero())
        })
    }

    /// Composite is zero, and the sequence is exact at the middle and at
    /// `P'_j` (whose cokernel is `S'_j`), over `b`.
    pub fn check(&self, b: &FdAlgebra) -> (bool, bool, bool) {
        let q = b.quiver();
        let block = |rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> PathComb| -> crate::linalg::Matrix {
            let row_basis: Vec<Vec<usize>> = rows.iter().map(|&y| b.projective_indices(y)).collect();
            let col_basis: Vec<Vec<usize>> = cols.iter().map(|&x| b.projective_indices(x)).collect();
            let nr: usize = row_basis.iter().map(Vec::len).sum();
            let mut columns = Vec::new();
            for (c, cb) in col_basis.iter().enumerate() {
                for &u in cb {
                    let mut col = vec![Scalar::zero(); nr];
                    let mut off = 0;
                    for (r, rb) in row_basis.iter().enumerate() {
                        let img = b.coords(&b.mul(&entry(r, c), &PathComb::from_path(b.basis()[u].clone())));
                        for (i, x) in img {
                            let pos = rb.iter().position(|&k| k == i).expect("lands in the projective");
                            col[off + pos] = x;
                        }
                        off += rb.len();
                    }
                    columns.push(col);
                }
            }
            crate::linalg::Matrix::from_columns(&columns, nr)
        };
        let d1 = block(&[self.vertex], &self.middle, &|_, c| PathComb::from_path(Path::arrow(q, self.arrows[c])));
        let d2 = block(&self.middle, &self.left, &|r, c| self.phi[r][c].clone());
        let complex = d1.mul(&d2).is_zero();
        let top = d1.rank() + 1 == b.projective_indices(self.vertex).len();
        let middle = d1.rank() + d2.rank() == d1.cols();
        (complex, top, middle)
    }
}

/// An isomorphism of presented algebras: vertex `i` of `P` goes to
/// `vertices[i]` of `Q`, arrow `a` to `scalars[a]·arrows[a]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationIso {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
    pub scalars: Vec<Scalar>,
}

/// Backtracking search over vertex bijections, arrow bijections and
/// signs; the ideal is checked by normal forms.
pub fn presentation_iso(p: &Presentation, q: &Presentation) -> Result<Option<PresentationIso>> {
    let (qp, qq) = (&p.quiver, &q.quiver);
    let n = qp.num_vertices();
    if n != qq.num_vertices() || qp.num_arrows() != qq.num_arrows() {
        return Ok(None);
    }
    let ap = FdAlgebra::general(p)?;
    let aq = FdAlgebra::general(q)?;
    if ap.dim() != aq.dim() {
        return Ok(None);
    }
    let count = |qv: &Quiver, s: usize, t: usize| (0..qv.num_arrows()).filter(|&a| qv.source(a) == s && qv.target(a) == t).count();
    let cp = ap.cartan_matrix();
    let cq = aq.cartan_matrix();
    let mut budget = 200_000usize;
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn vertices(
        k: usize,
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(&[usize], usize) -> bool,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if k == sigma.len() {
            return found(sigma);
        }
        for w in 0..sigma.len() {
            if !used[w] {
                sigma[k] = w;
                if ok(sigma, k) {
                    used[w] = true;
                    if vertices(k + 1, sigma, used, ok, found) {
                        return true;
                    }
                    used[w] = false;
                }
                sigma[k] = usize::MAX;
            }
        }
        false
    }
    let ok = |s: &[usize], k: usize| {
        (0..=k).all(|i| {
            count(qp, i, k) == count(qq, s[i], s[k])
                && count(qp, k, i) == count(qq, s[k], s[i])
                && cp[i][k] == cq[s[i]][s[k]]
                && cp[k][i] == cq[s[k]][s[i]]
        })
    };
    let mut result = None;
    let mut found = |s: &[usize]| -> bool {
        // parallel arrow groups
        let mut groups: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for a in 0..qp.num_arrows() {
            groups.entry((qp.source(a), qp.target(a))).or_default().0.push(a);
        }
        for b in 0..qq.num_arrows() {
            let key = (0..n).find(|&i| s[i] == qq.source(b)).unwrap();
            let key2 = (0..n).find(|&i| s[i] == qq.target(b)).unwrap();
            groups.entry((key, key2)).or_default().1.push(b);
        }
        let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().collect();
        let mut arrow_map = vec![usize::MAX; qp.num_arrows()];
        assign(&groups, 0, &mut arrow_map, &mut |am| {
            let m = qp.num_arrows();
            for signs in 0..(1u64 << m) {
                if budget == 0 {
                    return true;
                }
                budget -= 1;
                let scalars: Vec<Scalar> = (0..m).map(|a| if signs >> a & 1 == 1 { -Scalar::one() } else { Scalar::one() }).collect();
                let image = |x: &PathComb| {
                    x.map_paths(|path| {
                        let mut acc = PathComb::from_path(Path::trivial(s[path.source()]));
                        for &a in path.arrows().iter().rev() {
                            acc = PathComb::from_term(Path::arrow(qq, am[a]), scalars[a].clone()).mul(&acc);
                        }
                        acc
                    })
                };
                if p.relations.iter().all(|r| aq.table().in_ideal(&image(r))) {
                    result = Some(PresentationIso { vertices: s.to_vec(), arrows: am.to_vec(), scalars });
                    return true;
                }
            }
            false
        })
    };
    vertices(0, &mut sigma, &mut used, &ok, &mut found);
    Ok(result)
}

fn assign(groups: &[(Vec<usize>, Vec<usize>)], g: usize, map: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if g == groups.len() {
        return f(map);
    }
    let (from, to) = &groups[g];
    let mut perm: Vec<usize> = (0..to.len()).collect();
    loop {
        for (i, &a) in from.iter().enumerate() {
            map[a] = to[perm[i]];
        }
        if assign(groups, g + 1, map, f) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossValidation {
    pub surjective: bool,
    pub raw_dim: usize,
    pub reduced_dim: usize,
    pub oracle_dim: usize,
    /// Relations of the combinatorial presentation not killed by `Φ`.
    pub relations_outside_kernel: Vec<String>,
    /// Generators of `ker Φ` not in the combinatorial ideal.
    pub kernel_outside_ideal: Vec<String>,
    pub reduced_iso: bool,
    pub passed: bool,
}

/// Builds the mutation combinatorially and through the tilting complex
/// `[P_v -> ⊕ P_t(γ)] ⊕ ⊕ P_i[-1]` and compares.
pub fn cross_validate(alg: &FdAlgebra, v: usize) -> Result<(MutationResult, CrossValidation)> {
    use crate::homotopy::{end_algebra, kernel_rules, presentation_from_surjection, ChainMap, Surjection, TwoTermComplex};
    let res = mutate_plus(alg, v)?;
    let m = mutate_arrows(alg, v)?;
    let q = alg.quiver();
    let n = q.num_vertices();
    let out_arrows = q.arrows_from(v);
    let mut summands: Vec<TwoTermComplex> = (0..n).map(|i| TwoTermComplex::stalk(i, 1)).collect();
    summands[v] = TwoTermComplex {
        low: 0,
        deg0: vec![v],
        deg1: out_arrows.iter().map(|&a| q.target(a)).collect(),
        differential: out_arrows.iter().map(|&a| vec![PathComb::from_path(Path::arrow(q, a))]).collect(),
    };
    let end = end_algebra(alg, &summands, &q.vertices);
    let e = |x: Path| PathComb::from_path(x);
    let one_entry = |x: PathComb| BTreeMap::from([(1, vec![vec![x]])]);
    let mut images = Vec::new();
    for (idx, a) in m.arrows.iter().enumerate() {
        let f = match &m.kinds[idx] {
            Kind::Star(alpha) => {
                let pos = out_arrows.iter().position(|x| x == alpha).unwrap();
                let col = (0..out_arrows.len())
                    .map(|r| vec![if r == pos { e(Path::trivial(a.source)) } else { PathComb::zero() }])
                    .collect();
                ChainMap { maps: BTreeMap::from([(1, col)]) }
            }
            Kind::Class(k) => {
                let r = &m.classes[*k].0;
                let row = out_arrows.iter().map(|&g| alg.reduce(&r.divide_left(&Path::arrow(q, g), q))).collect();
                ChainMap { maps: BTreeMap::from([(1, vec![row])]) }
            }
            Kind::Old(b) => ChainMap { maps: one_entry(e(Path::arrow(q, *b))) },
            Kind::Through(x, y) => ChainMap { maps: one_entry(e(Path::arrow(q, *x).compose(&Path::arrow(q, *y)).unwrap())) },
        };
        let img = end
            .element(alg, a.source, a.target, &f)
            .ok_or_else(|| Error::OracleMismatch(format!("image of {} is not a chain map", a.label)))?;
        images.push((a.label.clone(), a.source, a.target, img));
    }
    let phi = Surjection::new(&end, &images)?;
    let surjective = kernel_rules(&end, &phi).is_ok();
    let raw_alg = FdAlgebra::general(&res.raw)?;
    let reduced_alg = FdAlgebra::general(&res.reduced)?;
    let relations_outside_kernel: Vec<String> = res
        .raw
        .relations
        .iter()
        .filter(|r| !phi.evaluate(&end, r).is_empty())
        .map(|r| r.display(&res.raw.quiver))
        .collect();
    let mut kernel_outside_ideal = Vec::new();
    let mut reduced_iso = false;
    if surjective {
        let oracle = presentation_from_surjection(&end, &phi)?;
        kernel_outside_ideal = oracle
            .relations
            .iter()
            .filter(|r| !raw_alg.table().in_ideal(r))
            .map(|r| r.display(&oracle.quiver))
            .collect();
        let (oracle_reduced, _) = reduce_presentation(&oracle)?;
        reduced_iso = presentation_iso(&res.reduced, &oracle_reduced)?.is_some();
    }
    let passed = surjective
        && raw_alg.dim() == end.dim()
        && reduced_alg.dim() == end.dim()
        && relations_outside_kernel.is_empty()
        && kernel_outside_ideal.is_empty()
        && reduced_iso;
    let report = CrossValidation {
        surjective,
        raw_dim: raw_alg.dim(),
        reduced_dim: reduced_alg.dim(),
        oracle_dim: end.dim(),
        relations_outside_kernel,
        kernel_outside_ideal,
        reduced_iso,
        passed,
    };
    Ok((res, report))
}
