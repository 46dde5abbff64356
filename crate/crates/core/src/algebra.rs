//! The finite-dimensional algebra `A = kΔ/I` with its normal-word basis,
//! validation, and bases of the quotients of slices of subideals of `I`
//! that the mutation rules are built from.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{NormalFormTable, DEFAULT_DEGREE_CAP};
use crate::linalg::{nullspace, Echelon, SparseVec};
use crate::quiver::{enumerate_paths, Path, PathComb, Presentation, Quiver};
use crate::scalar::{Field, Scalar};

#[derive(Debug)]
pub struct FdAlgebra {
    table: NormalFormTable,
    index: HashMap<Path, usize>,
    space: OnceLock<PathSpace>,
}

impl Clone for FdAlgebra {
    fn clone(&self) -> Self {
        FdAlgebra { table: self.table.clone(), index: self.index.clone(), space: OnceLock::new() }
    }
}

/// All paths of length at most `D`, indexed in canonical order, with the
/// ideal part `κ(p) = p - nf(p)` of each.
#[derive(Debug)]
struct PathSpace {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    kappa: Vec<SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub admissible: bool,
    #[serde(rename = "finiteDimensional")]
    pub finite_dimensional: bool,
    #[serde(rename = "weaklySymmetric")]
    pub weakly_symmetric: bool,
    pub loops: BTreeMap<String, usize>,
    #[serde(rename = "socleTypes")]
    pub socle_types: BTreeMap<String, String>,
    pub dimension: Option<usize>,
    #[serde(rename = "loewyLength")]
    pub loewy_length: Option<usize>,
    pub problems: Vec<String>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "admissible: {}", self.admissible)?;
        writeln!(f, "finite dimensional: {}", self.finite_dimensional)?;
        writeln!(f, "weakly symmetric: {}", self.weakly_symmetric)?;
        if let Some(d) = self.dimension {
            writeln!(f, "dimension: {d}")?;
        }
        if let Some(l) = self.loewy_length {
            writeln!(f, "loewy length: {l}")?;
        }
        let loops: Vec<String> = self.loops.iter().map(|(v, n)| format!("{v}:{n}")).collect();
        writeln!(f, "loops: {}", loops.join(" "))?;
        let soc: Vec<String> = self.socle_types.iter().map(|(v, w)| format!("{v}->{w}")).collect();
        writeln!(f, "socle types: {}", soc.join(" "))?;
        for p in &self.problems {
            writeln!(f, "problem: {p}")?;
        }
        Ok(())
    }
}

/// Subideals of `I` from which quotient slices are built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subideal {
    I,
    JI,
    IJ,
    /// `J(1-e_v)I`
    JeI(usize),
    /// `I(1-e_v)J`
    IeJ(usize),
    Sum(Vec<Subideal>),
}

impl Subideal {
    /// Parses `I`, `JI`, `IJ`, `J(1-e_v)I`, `I(1-e_v)J` and `+`-sums.
    pub fn parse(text: &str, q: &Quiver) -> Result<Subideal> {
        let parts: Vec<&str> = text.split('+').map(str::trim).collect();
        if parts.len() > 1 {
            return Ok(Subideal::Sum(parts.iter().map(|p| Subideal::parse(p, q)).collect::<Result<_>>()?));
        }
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let vertex = |inner: &str| {
            q.vertex_index(inner).ok_or_else(|| Error::UnknownSpec(format!("{text}: unknown vertex `{inner}`")))
        };
        match t.as_str() {
            "I" => Ok(Subideal::I),
            "JI" => Ok(Subideal::JI),
            "IJ" => Ok(Subideal::IJ),
            _ => {
                if let Some(inner) = t.strip_prefix("J(1-e_").and_then(|s| s.strip_suffix(")I")) {
                    Ok(Subideal::JeI(vertex(inner)?))
                } else if let Some(inner) = t.strip_prefix("I(1-e_").and_then(|s| s.strip_suffix(")J")) {
                    Ok(Subideal::IeJ(vertex(inner)?))
                } else {
                    Err(Error::UnknownSpec(text.to_string()))
                }
            }
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        match self {
            Subideal::I => "I".into(),
            Subideal::JI => "JI".into(),
            Subideal::IJ => "IJ".into(),
            Subideal::JeI(v) => format!("J(1-e_{})I", q.vertex_name(*v)),
            Subideal::IeJ(v) => format!("I(1-e_{})J", q.vertex_name(*v)),
            Subideal::Sum(parts) => parts.iter().map(|p| p.display(q)).collect::<Vec<_>>().join(" + "),
        }
    }
}

/// Representatives of a basis of `e_target (N / D) e_source`, each lying
/// in `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceQuotientBasis {
    pub numerator: Subideal,
    pub denominator: Subideal,
    pub source: usize,
    pub target: usize,
    pub representatives: Vec<PathComb>,
}

impl FdAlgebra {
    /// Builds the algebra of a presentation whose relations lie in `J²`.
    pub fn new(pres: &Presentation) -> Result<FdAlgebra> {
        Self::with_cap(pres, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(pres: &Presentation, degree_cap: usize) -> Result<FdAlgebra> {
        Ok(Self::from_table(NormalFormTable::build(pres, degree_cap)?))
    }

    /// Builds the algebra without insisting that relations lie in `J²`.
    pub fn general(pres: &Presentation) -> Result<FdAlgebra> {
        Ok(Self::from_table(NormalFormTable::build_general(pres, DEFAULT_DEGREE_CAP)?))
    }

    pub fn from_table(table: NormalFormTable) -> FdAlgebra {
        let index = table.basis().iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        FdAlgebra { table, index, space: OnceLock::new() }
    }

    pub fn table(&self) -> &NormalFormTable {
        &self.table
    }

    pub fn presentation(&self) -> &Presentation {
        self.table.presentation()
    }

    pub fn quiver(&self) -> &Quiver {
        self.table.quiver()
    }

    pub fn field(&self) -> Field {
        self.presentation().field
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver().num_vertices()
    }

    pub fn dim(&self) -> usize {
        self.table.basis().len()
    }

    pub fn basis(&self) -> &[Path] {
        self.table.basis()
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn nilpotency(&self) -> usize {
        self.table.nilpotency()
    }

    pub fn truncation(&self) -> usize {
        self.table.truncation()
    }

    pub fn one(&self) -> Scalar {
        self.field().int(1)
    }

    pub fn reduce(&self, x: &PathComb) -> PathComb {
        self.table.reduce(x)
    }

    pub fn mul(&self, x: &PathComb, y: &PathComb) -> PathComb {
        self.table.mul(x, y)
    }

    /// Coordinates of `nf(x)` in the normal-word basis.
    pub fn coords(&self, x: &PathComb) -> SparseVec {
        self.reduce(x).terms().map(|(p, c)| (self.index[p], c.clone())).collect()
    }

    pub fn element(&self, v: &SparseVec) -> PathComb {
        PathComb::from_terms(v.iter().map(|(i, c)| (self.basis()[*i].clone(), c.clone())))
    }

    /// Basis indices of paths from `source` to `target`, i.e. of
    /// `e_target A e_source`.
    pub fn slice_indices(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis()[i].source() == source && self.basis()[i].target() == target).collect()
    }

    /// Normal-word basis of `e_j A e_i` (paths `i -> j`).
    pub fn slice_basis(&self, i: usize, j: usize) -> Vec<Path> {
        self.slice_indices(i, j).into_iter().map(|k| self.basis()[k].clone()).collect()
    }

    /// Basis indices of `P_v = e_v A`: normal words ending at `v`.
    pub fn projective_indices(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis()[i].target() == v).collect()
    }

    /// Entry `(i, j)` is `dim e_i A e_j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0; n]; n];
        for p in self.basis() {
            c[p.target()][p.source()] += 1;
        }
        c
    }

    /// Socle of `e_v A`: elements killed by every arrow on the right.
    pub fn socle(&self, v: usize) -> Vec<PathComb> {
        let q = self.quiver();
        let idx = self.projective_indices(v);
        // one equation per (arrow, basis coordinate of the product)
        let mut eqs: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (k, &i) in idx.iter().enumerate() {
            let p = &self.basis()[i];
            for a in q.arrows_to(p.source()) {
                let prod = self.coords(&PathComb::from_path(p.compose(&Path::arrow(q, a)).unwrap()));
                for (j, c) in prod {
                    eqs.entry((a, j)).or_default().insert(k, c);
                }
            }
        }
        let rows: Vec<SparseVec> = eqs.into_values().collect();
        nullspace(&rows, idx.len())
            .into_iter()
            .map(|x| self.element(&x.into_iter().map(|(k, c)| (idx[k], c)).collect()))
            .collect()
    }

    /// Socle of `e_v A` restricted to paths starting at `w`.
    pub fn socle_at(&self, v: usize, w: usize) -> usize {
        let q = self.quiver();
        let idx = self.slice_indices(w, v);
        let mut eqs: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (k, &i) in idx.iter().enumerate() {
            let p = &self.basis()[i];
            for a in q.arrows_to(w) {
                let prod = self.coords(&PathComb::from_path(p.compose(&Path::arrow(q, a)).unwrap()));
                for (j, c) in prod {
                    eqs.entry((a, j)).or_default().insert(k, c);
                }
            }
        }
        let rows: Vec<SparseVec> = eqs.into_values().collect();
        nullspace(&rows, idx.len()).len()
    }

    pub fn is_weakly_symmetric(&self) -> bool {
        let n = self.num_vertices();
        (0..n).all(|v| (0..n).all(|w| self.socle_at(v, w) == usize::from(v == w)))
    }

    fn space(&self) -> &PathSpace {
        self.space.get_or_init(|| {
            let paths = enumerate_paths(self.quiver(), self.truncation(), None, None);
            let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let kappa = paths
                .iter()
                .map(|p| {
                    let x = PathComb::from_path(p.clone()).sub(&self.reduce(&PathComb::from_path(p.clone())));
                    x.terms().map(|(q, c)| (index[q], c.clone())).collect()
                })
                .collect();
            PathSpace { paths, index, kappa }
        })
    }

    /// Vector of a combination supported in length `<= D`, dropping longer
    /// terms.
    fn space_vec(&self, x: &PathComb) -> SparseVec {
        let sp = self.space();
        x.terms().filter_map(|(p, c)| sp.index.get(p).map(|&i| (i, c.clone()))).collect()
    }

    fn space_comb(&self, v: &SparseVec) -> PathComb {
        let sp = self.space();
        PathComb::from_terms(v.iter().map(|(i, c)| (sp.paths[*i].clone(), c.clone())))
    }

    /// `I` in the truncated slice of paths `source -> target`.
    fn ideal_slice(&self, source: usize, target: usize) -> Vec<SparseVec> {
        let sp = self.space();
        let mut ech = Echelon::new();
        for (i, p) in sp.paths.iter().enumerate() {
            if p.source() == source && p.target() == target && !sp.kappa[i].is_empty() {
                ech.insert(sp.kappa[i].clone());
            }
        }
        ech.basis()
    }

    /// Left-multiplies a truncated vector by a path.
    fn left_mul(&self, u: &Path, v: &SparseVec) -> SparseVec {
        let sp = self.space();
        let mut out = SparseVec::new();
        for (i, c) in v {
            if let Some(up) = u.compose(&sp.paths[*i]) {
                if let Some(&j) = sp.index.get(&up) {
                    out.insert(j, c.clone());
                }
            }
        }
        out
    }

    fn right_mul(&self, v: &SparseVec, u: &Path) -> SparseVec {
        let sp = self.space();
        let mut out = SparseVec::new();
        for (i, c) in v {
            if let Some(pu) = sp.paths[*i].compose(u) {
                if let Some(&j) = sp.index.get(&pu) {
                    out.insert(j, c.clone());
                }
            }
        }
        out
    }

    fn paths_between(&self, source: Option<usize>, target: Option<usize>, min_len: usize) -> Vec<Path> {
        self.space()
            .paths
            .iter()
            .filter(|p| p.len() >= min_len && source.is_none_or(|s| p.source() == s) && target.is_none_or(|t| p.target() == t))
            .cloned()
            .collect()
    }

    /// Spanning vectors of `e_target S e_source` inside the truncation.
    fn subideal_generators(&self, spec: &Subideal, source: usize, target: usize) -> Vec<SparseVec> {
        let n = self.num_vertices();
        match spec {
            Subideal::I => self.ideal_slice(source, target),
            Subideal::JI | Subideal::JeI(_) => {
                let avoid = if let Subideal::JeI(v) = spec { Some(*v) } else { None };
                let mut out = Vec::new();
                for k in 0..n {
                    if avoid == Some(k) {
                        continue;
                    }
                    let ideal = self.ideal_slice(source, k);
                    if ideal.is_empty() {
                        continue;
                    }
                    // plain JI only needs arrows on the left
                    let us: Vec<Path> = self
                        .paths_between(Some(k), Some(target), 1)
                        .into_iter()
                        .filter(|u| avoid.is_some() || u.len() == 1)
                        .collect();
                    for u in &us {
                        for b in &ideal {
                            let w = self.left_mul(u, b);
                            if !w.is_empty() {
                                out.push(w);
                            }
                        }
                    }
                }
                out
            }
            Subideal::IJ | Subideal::IeJ(_) => {
                let avoid = if let Subideal::IeJ(v) = spec { Some(*v) } else { None };
                let mut out = Vec::new();
                for k in 0..n {
                    if avoid == Some(k) {
                        continue;
                    }
                    let ideal = self.ideal_slice(k, target);
                    if ideal.is_empty() {
                        continue;
                    }
                    let us: Vec<Path> = self
                        .paths_between(Some(source), Some(k), 1)
                        .into_iter()
                        .filter(|u| avoid.is_some() || u.len() == 1)
                        .collect();
                    for u in &us {
                        for b in &ideal {
                            let w = self.right_mul(b, u);
                            if !w.is_empty() {
                                out.push(w);
                            }
                        }
                    }
                }
                out
            }
            Subideal::Sum(parts) => parts.iter().flat_map(|p| self.subideal_generators(p, source, target)).collect(),
        }
    }

    /// Echelon form of `e_target S e_source` in the truncation.
    pub fn subideal_echelon(&self, spec: &Subideal, source: usize, target: usize) -> Echelon {
        let mut ech = Echelon::new();
        for g in self.subideal_generators(spec, source, target) {
            ech.insert(g);
        }
        ech
    }

    pub fn subideal_contains(&self, spec: &Subideal, x: &PathComb) -> bool {
        let Some((s, t)) = x.endpoints() else { return true };
        self.subideal_echelon(spec, s, t).contains(&self.space_vec(x))
    }

    /// Basis of `e_target (N/D) e_source`. Monomials of `I` are preferred
    /// as representatives (shortest, then lexicographically first), then
    /// echelon vectors of `N` reduced modulo `D`.
    pub fn quotient_slice_basis(&self, numerator: &Subideal, denominator: &Subideal, source: usize, target: usize) -> SliceQuotientBasis {
        let den = self.subideal_echelon(denominator, source, target);
        let num = self.subideal_echelon(numerator, source, target);
        let mut both = den.clone();
        for b in num.basis() {
            both.insert(b);
        }
        let wanted = both.rank() - den.rank();
        let mut chosen = den;
        let mut reps = Vec::new();
        let sp = self.space();
        let monomials = sp.paths.iter().enumerate().filter(|(i, p)| {
            p.source() == source && p.target() == target && sp.kappa[*i].len() == 1 && sp.kappa[*i].contains_key(i)
        });
        for (i, _) in monomials {
            if reps.len() == wanted {
                break;
            }
            let v: SparseVec = [(i, self.one())].into_iter().collect();
            if both.contains(&v) && chosen.insert(v.clone()).is_some() {
                reps.push(self.space_comb(&v));
            }
        }
        for b in num.basis() {
            if reps.len() == wanted {
                break;
            }
            let r = chosen.reduced(&b);
            if !r.is_empty() && chosen.insert(b.clone()).is_some() {
                reps.push(self.space_comb(&r).monic());
            }
        }
        SliceQuotientBasis { numerator: numerator.clone(), denominator: denominator.clone(), source, target, representatives: reps }
    }

    /// Writes `x` (in `e_target N e_source`, truncated) as a combination of
    /// generators modulo `den`; generators are arbitrary elements of the
    /// same slice. Returns `None` if `x` is not in their span plus `den`.
    pub fn solve_modulo(&self, x: &PathComb, generators: &[PathComb], den: &Subideal, source: usize, target: usize) -> Option<Vec<Scalar>> {
        let mut tracked = Echelon::new();
        for b in self.subideal_echelon(den, source, target).basis() {
            tracked.insert(b);
        }
        for (k, g) in generators.iter().enumerate() {
            tracked.insert_tracked(self.space_vec(g), k);
        }
        let combo = tracked.solve(&self.space_vec(x))?;
        Some((0..generators.len()).map(|k| combo.get(&k).cloned().unwrap_or_else(Scalar::zero)).collect())
    }

    /// Full validation; never fails, problems are reported.
    pub fn validate(pres: &Presentation) -> ValidationReport {
        let q = &pres.quiver;
        let loops = (0..q.num_vertices()).map(|v| (q.vertex_name(v).to_string(), q.loops(v).len())).collect();
        let mut report = ValidationReport {
            admissible: false,
            finite_dimensional: false,
            weakly_symmetric: false,
            loops,
            socle_types: BTreeMap::new(),
            dimension: None,
            loewy_length: None,
            problems: Vec::new(),
        };
        let in_j2 = pres.relations.iter().all(|r| r.min_len() >= 2);
        if !in_j2 {
            report.problems.push(Error::NotAdmissible("a relation has a term of length < 2".into()).to_string());
        }
        let alg = match NormalFormTable::build_general(pres, DEFAULT_DEGREE_CAP) {
            Ok(t) => FdAlgebra::from_table(t),
            Err(e) => {
                report.problems.push(e.to_string());
                return report;
            }
        };
        report.finite_dimensional = true;
        report.admissible = in_j2;
        report.dimension = Some(alg.dim());
        report.loewy_length = Some(alg.nilpotency());
        if !in_j2 {
            return report;
        }
        let n = q.num_vertices();
        let mut ws = true;
        for v in 0..n {
            let dims: Vec<usize> = (0..n).map(|w| alg.socle_at(v, w)).collect();
            let total: usize = dims.iter().sum();
            if total == 1 {
                let w = dims.iter().position(|&d| d == 1).unwrap();
                report.socle_types.insert(q.vertex_name(v).to_string(), q.vertex_name(w).to_string());
                if w != v {
                    ws = false;
                }
            } else {
                ws = false;
                report.problems.push(format!("socle of P_{} has dimension {total}", q.vertex_name(v)));
            }
        }
        report.weakly_symmetric = ws;
        if !ws {
            report.problems.push(Error::NotWeaklySymmetric.to_string());
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(alg: &FdAlgebra, b: &SliceQuotientBasis) -> Vec<String> {
        b.representatives.iter().map(|r| r.display(alg.quiver())).collect()
    }

    /// Brute-force count of paths `i -> j` whose normal form is nonzero
    /// and that are themselves normal words.
    fn brute_slice(alg: &FdAlgebra, i: usize, j: usize) -> usize {
        let paths = enumerate_paths(alg.quiver(), alg.nilpotency(), Some(i), Some(j));
        let mut ech = Echelon::new();
        for p in paths {
            ech.insert(alg.coords(&PathComb::from_path(p)));
        }
        ech.rank()
    }

    #[test]
    fn dual_numbers() {
        let alg = FdAlgebra::new(&fixtures::dual_numbers()).unwrap();
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.cartan_matrix(), vec![vec![2]]);
        let names: Vec<String> = alg.slice_basis(0, 0).iter().map(|p| p.display(alg.quiver())).collect();
        assert_eq!(names, vec!["e_1", "x"]);
        assert!(alg.is_weakly_symmetric());
    }

    #[test]
    fn e2_slices_match_brute_force() {
        let alg = FdAlgebra::new(&fixtures::e2()).unwrap();
        let n = alg.num_vertices();
        let mut total = 0;
        for i in 0..n {
            for j in 0..n {
                let s = alg.slice_basis(i, j).len();
                assert_eq!(s, brute_slice(&alg, i, j));
                total += s;
            }
        }
        assert_eq!(total, alg.dim());
        assert_eq!(alg.dim(), 18);
        assert_eq!(alg.cartan_matrix(), vec![vec![2, 2, 2], vec![2, 2, 2], vec![2, 2, 2]]);
    }

    #[test]
    fn validation_reports() {
        let r = FdAlgebra::validate(&fixtures::e2());
        assert!(r.weakly_symmetric && r.admissible && r.finite_dimensional);
        assert!(r.loops.values().all(|&n| n == 0));
        let r = FdAlgebra::validate(&fixtures::e1(3));
        assert!(r.weakly_symmetric);
        assert_eq!(r.loops["0"], 1);
        assert!(FdAlgebra::validate(&fixtures::dual_numbers()).weakly_symmetric);
        let a2 = crate::grammar::parse_presentation("vertex 1\nvertex 2\narrow a : 1 -> 2\n").unwrap();
        let r = FdAlgebra::validate(&a2);
        assert!(r.finite_dimensional && !r.weakly_symmetric);
    }

    #[test]
    fn e2_a2_classes() {
        let alg = FdAlgebra::new(&fixtures::e2()).unwrap();
        let q = alg.quiver();
        let v1 = q.vertex_index("1").unwrap();
        let num = Subideal::I;
        let den = Subideal::parse("J(1-e_1)I + IJ", q).unwrap();
        let mut all = Vec::new();
        for t in 0..3 {
            if t == v1 {
                continue;
            }
            let b = alg.quotient_slice_basis(&num, &den, v1, t);
            all.extend(names(&alg, &b));
        }
        all.sort();
        assert_eq!(all, vec!["a1*a3*b3", "b3*b1*a1"]);
    }

    /// a1a3a2a1 = (a1a3a2 - b2b3b1)a1 + b2(b3b1a1), so it is not a new class.
    #[test]
    fn e2_long_relation_is_reducible() {
        let alg = FdAlgebra::new(&fixtures::e2()).unwrap();
        let pres = alg.presentation();
        let p = |s: &str| PathComb::from_path(pres.path(s).unwrap());
        let witness = p("a1*a3*a2").sub(&p("b2*b3*b1")).mul(&p("a1")).add(&p("b2").mul(&p("b3*b1*a1")));
        assert_eq!(witness, p("a1*a3*a2*a1"));
        let den = Subideal::parse("J(1-e_1)I + IJ", alg.quiver()).unwrap();
        assert!(alg.subideal_contains(&den, &p("a1*a3*a2*a1")));
        assert!(alg.subideal_contains(&den, &p("b3*b1*b2*b3")));
        assert!(!alg.subideal_contains(&den, &p("a1*a3*b3")));
    }

    /// b²a1 = a1⋯am·a1 - (a1⋯am - b²)a1, and a1⋯am·a1 = a1⋯a(m-1)·(am a1)
    /// with am a1 a relation ending at m-1.
    #[test]
    fn e1_a2_classes() {
        for m in [3, 4] {
            let alg = FdAlgebra::new(&fixtures::e1(m)).unwrap();
            let q = alg.quiver();
            let v1 = q.vertex_index("1").unwrap();
            let den = Subideal::parse("J(1-e_1)I + IJ", q).unwrap();
            let mut all = Vec::new();
            for t in (0..m).filter(|&t| t != v1) {
                all.extend(names(&alg, &alg.quotient_slice_basis(&Subideal::I, &den, v1, t)));
            }
            assert_eq!(all, vec![format!("a{m}*a1")]);
            let bba1 = PathComb::from_path(alg.presentation().path("b*b*a1").unwrap());
            assert!(alg.subideal_contains(&den, &bba1));
        }
    }

    #[test]
    fn zero_quotient() {
        let alg = FdAlgebra::new(&fixtures::e2()).unwrap();
        let b = alg.quotient_slice_basis(&Subideal::JI, &Subideal::JI, 0, 1);
        assert!(b.representatives.is_empty());
    }

    #[test]
    fn unknown_spec() {
        let q = fixtures::e2().quiver;
        assert!(matches!(Subideal::parse("JIJ", &q), Err(Error::UnknownSpec(_))));
        assert!(matches!(Subideal::parse("J(1-e_9)I", &q), Err(Error::UnknownSpec(_))));
    }
}

