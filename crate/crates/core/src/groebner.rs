//! Normal forms in `kΔ/I` by noncommutative Buchberger completion under the
//! length-lexicographic path order.
//!
//! Completion runs in two phases. The first is degree-capped and only
//! serves to certify `J^N ⊆ I` for some `N` (every path of length `N`
//! reduces to zero using rules that are known to lie in `I`). The second
//! adds the monomials of length `N` implicitly and completes for real;
//! the result is a Gröbner basis, so normal forms are unique.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::quiver::{enumerate_paths, Path, PathComb, Presentation, Quiver};
use crate::scalar::Scalar;

pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Bail-out for runaway normal-word enumeration before finiteness is known.
const WORD_BUDGET: usize = 200_000;

/// `lead -> tail`, with every term of `tail` smaller than `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Path,
    pub tail: PathComb,
}

#[derive(Clone, Debug)]
pub struct NormalFormTable {
    presentation: Presentation,
    rules: Vec<Rule>,
    lookup: HashMap<Vec<usize>, usize>,
    lead_lens: Vec<usize>,
    nilpotency: usize,
    basis: Vec<Path>,
}

/// Completion state shared by both phases.
struct Completion<'a> {
    quiver: &'a Quiver,
    rules: Vec<Option<Rule>>,
    lookup: HashMap<Vec<usize>, usize>,
    lens: BTreeSet<usize>,
    pairs: BinaryHeap<Reverse<(usize, usize, usize, usize)>>,
    pending: Vec<PathComb>,
    zero_len: Option<usize>,
}

impl<'a> Completion<'a> {
    fn new(quiver: &'a Quiver) -> Self {
        Completion {
            quiver,
            rules: Vec::new(),
            lookup: HashMap::new(),
            lens: BTreeSet::new(),
            pairs: BinaryHeap::new(),
            pending: Vec::new(),
            zero_len: None,
        }
    }

    fn find_lead(&self, p: &Path) -> Option<(usize, usize)> {
        let arrows = p.arrows();
        for start in 0..arrows.len() {
            for &l in &self.lens {
                if start + l > arrows.len() {
                    break;
                }
                if let Some(&id) = self.lookup.get(&arrows[start..start + l]) {
                    return Some((start, id));
                }
            }
        }
        None
    }

    fn reduce(&self, x: &PathComb) -> PathComb {
        reduce_with(self.quiver, x, self.zero_len, |p| {
            self.find_lead(p).map(|(start, id)| {
                let rule = self.rules[id].as_ref().expect("lookup only holds live rules");
                (start, rule)
            })
        })
    }

    fn add_rule(&mut self, poly: PathComb) -> Result<()> {
        let poly = poly.monic();
        let (lead, _) = poly.leading().expect("nonzero");
        let lead = lead.clone();
        if lead.is_trivial() {
            return Err(Error::Invalid(format!("relations force e_{} = 0", self.quiver.vertex_name(lead.source()))));
        }
        let tail = PathComb::from_path(lead.clone()).sub(&poly);
        let id = self.rules.len();
        // Existing rules whose lead contains the new lead become redundant.
        let doomed: Vec<usize> = self
            .rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().filter(|r| contains(r.lead.arrows(), lead.arrows())).map(|_| i))
            .collect();
        for i in doomed {
            let r = self.rules[i].take().expect("live");
            self.lookup.remove(r.lead.arrows());
            self.pending.push(PathComb::from_path(r.lead.clone()).sub(&r.tail));
        }
        self.lookup.insert(lead.arrows().to_vec(), id);
        self.rules.push(Some(Rule { lead, tail }));
        self.lens = self.rules.iter().flatten().map(|r| r.lead.len()).collect();
        let new_lead = self.rules[id].as_ref().unwrap().lead.clone();
        for (j, r) in self.rules.iter().enumerate() {
            let Some(r) = r else { continue };
            for k in overlaps(new_lead.arrows(), r.lead.arrows()) {
                self.pairs.push(Reverse((new_lead.len() + r.lead.len() - k, id, j, k)));
            }
            if j != id {
                for k in overlaps(r.lead.arrows(), new_lead.arrows()) {
                    self.pairs.push(Reverse((new_lead.len() + r.lead.len() - k, j, id, k)));
                }
            }
        }
        if let Some(n) = self.zero_len {
            self.push_monomial_overlaps(id, n);
        }
        Ok(())
    }

    /// Overlaps of rule `id` with the implicit monomial rules of length `n`.
    fn push_monomial_overlaps(&mut self, id: usize, n: usize) {
        let rule = self.rules[id].as_ref().expect("live").clone();
        let need = n.saturating_sub(rule.lead.len());
        for u in enumerate_exact(self.quiver, need, Some(rule.lead.target()), None) {
            self.pending.push(rule.tail.left_mul_path(&u));
        }
        for v in enumerate_exact(self.quiver, need, None, Some(rule.lead.source())) {
            self.pending.push(rule.tail.right_mul_path(&v));
        }
    }

    fn drain_pending(&mut self) -> Result<()> {
        while let Some(f) = self.pending.pop() {
            let g = self.reduce(&f);
            if !g.is_zero() {
                self.add_rule(g)?;
            }
        }
        Ok(())
    }

    /// Processes every pair whose overlap word has length `<= cap`.
    fn run(&mut self, cap: Option<usize>) -> Result<()> {
        self.drain_pending()?;
        while let Some(&Reverse((len, i, j, k))) = self.pairs.peek() {
            if cap.is_some_and(|c| len > c) {
                break;
            }
            self.pairs.pop();
            let (Some(ri), Some(rj)) = (&self.rules[i], &self.rules[j]) else { continue };
            // lead_i = u s, lead_j = s v, |s| = k
            let u = ri.lead.subpath(self.quiver, 0, ri.lead.len() - k);
            let v = rj.lead.subpath(self.quiver, k, rj.lead.len());
            let s = ri.tail.right_mul_path(&v).sub(&rj.tail.left_mul_path(&u));
            self.pending.push(s);
            self.drain_pending()?;
        }
        Ok(())
    }

    /// Normal words w.r.t. the current leads, grouped by length, stopping at
    /// the first empty length or at `max_len`.
    fn normal_words(&self, max_len: usize) -> Result<Vec<Vec<Path>>> {
        let mut layers = vec![(0..self.quiver.num_vertices()).map(Path::trivial).collect::<Vec<_>>()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in layers.last().unwrap() {
                for a in self.quiver.arrows_from(p.target()) {
                    let q = Path::arrow(self.quiver, a).compose(p).unwrap();
                    if self.zero_len.is_some_and(|n| q.len() >= n) {
                        continue;
                    }
                    // only the new prefixes can contain a fresh lead
                    let fresh = self.lens.iter().any(|&l| l <= q.len() && self.lookup.contains_key(&q.arrows()[..l]));
                    if !fresh {
                        next.push(q);
                    }
                }
            }
            if next.len() > WORD_BUDGET {
                return Err(Error::NotFiniteDimensional(max_len));
            }
            let empty = next.is_empty();
            layers.push(next);
            if empty {
                break;
            }
        }
        Ok(layers)
    }

    fn into_rules(self) -> Vec<Rule> {
        let mut rules: Vec<Rule> = self.rules.iter().flatten().cloned().collect();
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        rules
    }
}

/// Largest-term-first reduction with a caller-supplied lead finder.
fn reduce_with<'r>(
    quiver: &Quiver,
    x: &PathComb,
    zero_len: Option<usize>,
    find: impl Fn(&Path) -> Option<(usize, &'r Rule)>,
) -> PathComb {
    let mut todo = x.clone();
    let mut done = PathComb::zero();
    while let Some((p, c)) = todo.leading().map(|(p, c)| (p.clone(), c.clone())) {
        todo.add_term(p.clone(), -&c);
        if zero_len.is_some_and(|n| p.len() >= n) {
            continue;
        }
        match find(&p) {
            Some((start, rule)) => {
                let u = p.subpath(quiver, 0, start);
                let v = p.subpath(quiver, start + rule.lead.len(), p.len());
                let repl = rule.tail.right_mul_path(&v).left_mul_path(&u);
                todo.add_assign_scaled(&repl, &c);
            }
            None => done.add_term(p, c),
        }
    }
    done
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Lengths `k` with `0 < k < min(|a|,|b|)` such that the last `k` arrows of
/// `a` equal the first `k` of `b`.
fn overlaps(a: &[usize], b: &[usize]) -> Vec<usize> {
    (1..a.len().min(b.len())).filter(|&k| a[a.len() - k..] == b[..k]).collect()
}

fn enumerate_exact(q: &Quiver, len: usize, source: Option<usize>, target: Option<usize>) -> Vec<Path> {
    enumerate_paths(q, len, source, target).into_iter().filter(|p| p.len() == len).collect()
}

impl NormalFormTable {
    /// Builds the table for a validated presentation: every relation must
    /// lie in `J²`.
    pub fn build(pres: &Presentation, degree_cap: usize) -> Result<NormalFormTable> {
        for r in &pres.relations {
            if r.min_len() < 2 {
                return Err(Error::NotAdmissible(r.display(&pres.quiver)));
            }
        }
        Self::build_general(pres, degree_cap)
    }

    /// Builds the table without the admissibility check; the ideal need
    /// only contain some power of the arrow ideal.
    pub fn build_general(pres: &Presentation, degree_cap: usize) -> Result<NormalFormTable> {
        let q = &pres.quiver;
        let mut comp = Completion::new(q);
        for r in &pres.relations {
            if !r.is_zero() {
                comp.pending.push(r.clone());
            }
        }
        let mut certified = None;
        for cap in 1..=degree_cap {
            comp.run(Some(cap))?;
            let layers = comp.normal_words(cap)?;
            if layers.last().is_some_and(|l| l.is_empty()) {
                // a long path may still reduce to a short word when the
                // relations have linear terms
                let first = layers.len() - 1;
                certified = (first..=cap).find(|&n| {
                    enumerate_exact(q, n, None, None).iter().all(|p| comp.reduce(&PathComb::from_path(p.clone())).is_zero())
                });
                if certified.is_some() {
                    break;
                }
            }
        }
        let n = certified.ok_or(Error::NotFiniteDimensional(degree_cap))?;

        comp.zero_len = Some(n);
        let ids: Vec<usize> = (0..comp.rules.len()).filter(|&i| comp.rules[i].is_some()).collect();
        for id in ids {
            let long = comp.rules[id].as_ref().is_some_and(|r| r.lead.len() >= n);
            if long {
                let r = comp.rules[id].take().unwrap();
                comp.lookup.remove(r.lead.arrows());
                comp.pending.push(r.tail);
            } else {
                comp.push_monomial_overlaps(id, n);
            }
        }
        comp.lens = comp.rules.iter().flatten().map(|r| r.lead.len()).collect();
        comp.run(None)?;

        let layers = comp.normal_words(n)?;
        let basis: Vec<Path> = layers.iter().flatten().cloned().collect();
        let nilpotency = layers.iter().position(Vec::is_empty).unwrap_or(layers.len());
        let mut rules = comp.into_rules();
        // Fully reduce tails so the rule set is the reduced Gröbner basis.
        let lookup: HashMap<Vec<usize>, usize> = rules.iter().enumerate().map(|(i, r)| (r.lead.arrows().to_vec(), i)).collect();
        let lead_lens: Vec<usize> = rules.iter().map(|r| r.lead.len()).collect::<BTreeSet<_>>().into_iter().collect();
        let mut table = NormalFormTable {
            presentation: pres.clone(),
            rules: rules.clone(),
            lookup,
            lead_lens,
            nilpotency,
            basis: {
                let mut b = basis;
                b.sort();
                b
            },
        };
        for r in rules.iter_mut() {
            r.tail = table.reduce(&r.tail);
        }
        table.rules = rules;
        Ok(table)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Least `M` with every path of length `M` in `I`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    /// `D = M + 2`.
    pub fn truncation(&self) -> usize {
        self.nilpotency + 2
    }

    /// Normal words, i.e. a basis of the algebra, in canonical order.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn is_normal(&self, p: &Path) -> bool {
        p.len() < self.nilpotency && self.find_lead(p).is_none()
    }

    fn find_lead(&self, p: &Path) -> Option<(usize, &Rule)> {
        let arrows = p.arrows();
        for start in 0..arrows.len() {
            for &l in &self.lead_lens {
                if start + l > arrows.len() {
                    break;
                }
                if let Some(&id) = self.lookup.get(&arrows[start..start + l]) {
                    return Some((start, &self.rules[id]));
                }
            }
        }
        None
    }

    /// Normal form of an element with no term longer than `D`.
    pub fn normal_form(&self, x: &PathComb) -> Result<PathComb> {
        let cap = self.truncation();
        if x.max_len() > cap {
            return Err(Error::TermTooLong { len: x.max_len(), cap });
        }
        Ok(self.reduce(x))
    }

    /// Normal form without the length precondition; long terms vanish
    /// because the arrow ideal is nilpotent modulo `I`.
    pub fn reduce(&self, x: &PathComb) -> PathComb {
        reduce_with(&self.presentation.quiver, x, Some(self.nilpotency), |p| self.find_lead(p))
    }

    pub fn reduce_path(&self, p: &Path) -> PathComb {
        self.reduce(&PathComb::from_path(p.clone()))
    }

    pub fn in_ideal(&self, x: &PathComb) -> bool {
        self.reduce(x).is_zero()
    }

    /// `nf(x * y)`.
    pub fn mul(&self, x: &PathComb, y: &PathComb) -> PathComb {
        self.reduce(&x.mul(y))
    }

    pub fn scalar_one(&self) -> Scalar {
        self.presentation.field.int(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_presentation;
    use crate::linalg::Echelon;
    use std::collections::BTreeMap;

    fn table(text: &str) -> NormalFormTable {
        NormalFormTable::build(&parse_presentation(text).unwrap(), DEFAULT_DEGREE_CAP).unwrap()
    }

    const E1_M2: &str = "vertex 0\nvertex 1\narrow a1 : 1 -> 0\narrow a2 : 0 -> 1\narrow b : 0 -> 0\n\
        rel b*b - a1*a2\nrel a1*a2*b*a1\nrel a2*b*a1*a2\nrel a2*a1\n";

    const E2: &str = "vertex 1\nvertex 2\nvertex 3\n\
        arrow a1 : 1 -> 2\narrow a2 : 2 -> 3\narrow a3 : 3 -> 1\n\
        arrow b1 : 2 -> 1\narrow b2 : 3 -> 2\narrow b3 : 1 -> 3\n\
        rel b1*a1\nrel b2*a2\nrel b3*a3\nrel a1*b1\nrel a2*b2\nrel a3*b3\n\
        rel a3*a2*a1 - b1*b2*b3\nrel a1*a3*a2 - b2*b3*b1\nrel a2*a1*a3 - b3*b1*b2\n";

    /// Independent oracle: dimension of kΔ/I computed as paths of length
    /// < n modulo the span of all u·r·v, assuming J^n ⊆ I.
    fn oracle_dim(text: &str, n: usize) -> usize {
        let pres = parse_presentation(text).unwrap();
        let q = &pres.quiver;
        let paths = enumerate_paths(q, n - 1, None, None);
        let index: BTreeMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ech = Echelon::new();
        let all = enumerate_paths(q, n, None, None);
        for r in &pres.relations {
            for u in all.iter().filter(|u| u.source() == r.endpoints().unwrap().1) {
                for v in all.iter().filter(|v| v.target() == r.endpoints().unwrap().0) {
                    let x = r.left_mul_path(u).right_mul_path(v).truncated(n);
                    let vec = x.terms().map(|(p, c)| (index[p], c.clone())).collect();
                    ech.insert(vec);
                }
            }
        }
        paths.len() - ech.rank()
    }

    #[test]
    fn truncated_polynomial_ring() {
        let t = table("vertex v\narrow x : v -> v\nrel x*x\n");
        assert_eq!(t.nilpotency(), 2);
        assert_eq!(t.basis().len(), 2);
        let x = t.quiver().arrow_index("x").unwrap();
        assert_eq!(t.basis()[1], Path::arrow(t.quiver(), x));
    }

    #[test]
    fn free_loop_is_infinite() {
        let pres = parse_presentation("vertex v\narrow x : v -> v\n").unwrap();
        assert_eq!(NormalFormTable::build(&pres, 16).unwrap_err(), Error::NotFiniteDimensional(16));
    }

    #[test]
    fn not_admissible() {
        let pres = parse_presentation("vertex v\nvertex w\narrow x : v -> w\narrow y : v -> w\nrel x - y\n").unwrap();
        assert!(matches!(NormalFormTable::build(&pres, 8), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn e1_m2_normal_forms() {
        let t = table(E1_M2);
        let p = |s: &str| PathComb::from_path(t.presentation().path(s).unwrap());
        assert!(t.normal_form(&p("a2*a1")).unwrap().is_zero());
        assert_eq!(t.normal_form(&p("b*b")).unwrap(), p("a1*a2"));
        let e = PathComb::from_path(Path::trivial(0));
        assert_eq!(t.normal_form(&e).unwrap(), e);
        assert_eq!(t.basis().len(), oracle_dim(E1_M2, t.nilpotency() + 1));
    }

    #[test]
    fn e2_dimension_matches_oracle() {
        let t = table(E2);
        assert_eq!(t.basis().len(), oracle_dim(E2, t.nilpotency() + 1));
        // every path of length M is zero, some path of length M-1 is not
        let q = t.quiver();
        let m = t.nilpotency();
        assert!(enumerate_exact(q, m, None, None).iter().all(|p| t.reduce_path(p).is_zero()));
        assert!(enumerate_exact(q, m - 1, None, None).iter().any(|p| !t.reduce_path(p).is_zero()));
    }

    #[test]
    fn term_too_long() {
        let t = table("vertex v\narrow x : v -> v\nrel x*x\n");
        let p = Path::from_arrows(t.quiver(), &[0; 5]).unwrap();
        assert!(matches!(t.normal_form(&PathComb::from_path(p)), Err(Error::TermTooLong { len: 5, cap: 4 })));
    }

    #[test]
    fn linear_terms_delay_nilpotency() {
        // c*d = y with y*y*y = 0: the word c*d*c*d is nonzero though no
        // normal word has length 4
        let text = "vertex 1\nvertex 2\narrow c : 1 -> 2\narrow d : 2 -> 1\narrow y : 2 -> 2\nrel c*d - y\nrel y*y*y\n";
        let t = NormalFormTable::build_general(&parse_presentation(text).unwrap(), DEFAULT_DEGREE_CAP).unwrap();
        let p = Path::from_arrows(t.quiver(), &[0, 1, 0, 1]).unwrap();
        assert!(!t.normal_form(&PathComb::from_path(p)).unwrap().is_zero());
    }
}
