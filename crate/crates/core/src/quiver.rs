//! Quivers, paths, linear combinations of paths and presentations.
//!
//! Paths compose right to left: the path `a*b` applies `b` first, so its
//! source is `s(b)` and its target is `t(a)`. Arrows are stored leftmost
//! first.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vertex_index(name).is_some() {
            return Err(Error::Duplicate(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, label: &str, source: usize, target: usize) -> Result<usize> {
        if self.arrow_index(label).is_some() {
            return Err(Error::Duplicate(label.to_string()));
        }
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::UnknownVertex(format!("{source}->{target}")));
        }
        self.arrows.push(Arrow { label: label.to_string(), source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.arrows[a].label
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn loops(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v && self.arrows[a].target == v).collect()
    }

    pub fn arrows_from(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn arrows_to(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// A path `arrows[0] * arrows[1] * ... * arrows[n-1]`, applied right to left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        Path { source: q.source(a), target: q.target(a), arrows: vec![a] }
    }

    /// Builds a path from arrows listed leftmost first; `None` if they do
    /// not compose.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Option<Path> {
        let (&first, &last) = (arrows.first()?, arrows.last()?);
        for w in arrows.windows(2) {
            if q.source(w[0]) != q.target(w[1]) {
                return None;
            }
        }
        Some(Path { source: q.source(last), target: q.target(first), arrows: arrows.to_vec() })
    }

    /// Subpath `arrows[i..j]`; the trivial path at the right vertex when
    /// `i == j`.
    pub fn subpath(&self, q: &Quiver, i: usize, j: usize) -> Path {
        debug_assert!(i <= j && j <= self.arrows.len());
        if i == j {
            let v = if i == 0 {
                self.target
            } else {
                q.source(self.arrows[i - 1])
            };
            return Path::trivial(v);
        }
        Path { source: q.source(self.arrows[j - 1]), target: q.target(self.arrows[i]), arrows: self.arrows[i..j].to_vec() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self * q`: apply `q`, then `self`.
    pub fn compose(&self, q: &Path) -> Option<Path> {
        if self.source != q.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { source: q.source, target: self.target, arrows })
    }

    pub fn has_suffix(&self, q: &Path) -> bool {
        self.source == q.source && self.arrows.ends_with(&q.arrows)
    }

    pub fn has_prefix(&self, q: &Path) -> bool {
        self.target == q.target && self.arrows.starts_with(&q.arrows)
    }

    /// Does the path pass through `v` strictly inside (not at its ends)?
    pub fn visits_interior(&self, q: &Quiver, v: usize) -> bool {
        self.arrows.iter().skip(1).any(|&a| q.target(a) == v)
    }

    /// The same arrows in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }

    pub fn with_arrows_renamed(&self, map: &[usize]) -> Path {
        Path { source: self.source, target: self.target, arrows: self.arrows.iter().map(|&a| map[a]).collect() }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertex_name(self.source));
        }
        self.arrows.iter().map(|&a| q.label(a)).collect::<Vec<_>>().join("*")
    }
}

/// Finite linear combination of paths with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathComb {
    terms: BTreeMap<Path, Scalar>,
}

impl PathComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::from_term(p, Scalar::one())
    }

    pub fn from_term(p: Path, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(p, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest term in canonical order.
    pub fn leading(&self) -> Option<(&Path, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &PathComb) -> PathComb {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &PathComb) -> PathComb {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Scalar::one());
        out
    }

    pub fn add_assign_scaled(&mut self, other: &PathComb, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (p, v) in &other.terms {
            self.add_term(p.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> PathComb {
        if c.is_zero() {
            return PathComb::zero();
        }
        PathComb { terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> PathComb {
        self.scale(&-Scalar::one())
    }

    /// Product in the path algebra: `self * other`.
    pub fn mul(&self, other: &PathComb) -> PathComb {
        let mut out = PathComb::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        out
    }

    pub fn left_mul_path(&self, p: &Path) -> PathComb {
        PathComb::from_terms(self.terms.iter().filter_map(|(q, c)| p.compose(q).map(|pq| (pq, c.clone()))))
    }

    pub fn right_mul_path(&self, p: &Path) -> PathComb {
        PathComb::from_terms(self.terms.iter().filter_map(|(q, c)| q.compose(p).map(|qp| (qp, c.clone()))))
    }

    /// `(source, target)` shared by every term, if any.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source(), first.target());
        it.all(|p| (p.source(), p.target()) == ends).then_some(ends)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.endpoints().is_some()
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(Path::len).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    /// Drops terms of length `>= n`.
    pub fn truncated(&self, n: usize) -> PathComb {
        PathComb { terms: self.terms.iter().filter(|(p, _)| p.len() < n).map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    /// `self / q`: every term `p'q` contributes `p'`.
    pub fn divide_left(&self, q_path: &Path, quiver: &Quiver) -> PathComb {
        let k = q_path.len();
        PathComb::from_terms(
            self.terms
                .iter()
                .filter(|(p, _)| p.has_suffix(q_path))
                .map(|(p, c)| (p.subpath(quiver, 0, p.len() - k), c.clone())),
        )
    }

    /// `q \ self`: every term `q p'` contributes `p'`.
    pub fn divide_right(&self, q_path: &Path, quiver: &Quiver) -> PathComb {
        let k = q_path.len();
        PathComb::from_terms(
            self.terms
                .iter()
                .filter(|(p, _)| p.has_prefix(q_path))
                .map(|(p, c)| (p.subpath(quiver, k, p.len()), c.clone())),
        )
    }

    pub fn reversed(&self) -> PathComb {
        PathComb::from_terms(self.terms.iter().map(|(p, c)| (p.reversed(), c.clone())))
    }

    pub fn map_paths(&self, f: impl Fn(&Path) -> PathComb) -> PathComb {
        let mut out = PathComb::zero();
        for (p, c) in &self.terms {
            out.add_assign_scaled(&f(p), c);
        }
        out
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> PathComb {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv()),
            None => PathComb::zero(),
        }
    }

    /// Text in the presentation grammar, leading term first.
    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&p.display(q));
        }
        out
    }
}

/// All paths of length at most `max_len`, with optional endpoint filters,
/// in canonical order.
pub fn enumerate_paths(q: &Quiver, max_len: usize, source: Option<usize>, target: Option<usize>) -> Vec<Path> {
    let mut layer: Vec<Path> = (0..q.num_vertices()).filter(|&v| source.is_none_or(|s| s == v)).map(Path::trivial).collect();
    let mut all = layer.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for a in q.arrows_from(p.target()) {
                next.push(Path::arrow(q, a).compose(p).expect("composable by construction"));
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    all.retain(|p| target.is_none_or(|t| t == p.target()));
    all.sort();
    all
}

/// Quiver with relations over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub field: Field,
    pub relations: Vec<PathComb>,
}

impl Presentation {
    pub fn new(quiver: Quiver, field: Field) -> Self {
        Presentation { quiver, field, relations: Vec::new() }
    }

    pub fn add_relation(&mut self, r: PathComb) -> Result<()> {
        if !r.is_homogeneous() {
            return Err(Error::InhomogeneousRelation(r.display(&self.quiver)));
        }
        if !r.is_zero() {
            self.relations.push(r);
        }
        Ok(())
    }

    /// Parses `label*label*...` against this quiver.
    pub fn path(&self, text: &str) -> Result<Path> {
        parse_path(&self.quiver, text)
    }

    /// The opposite presentation: arrows and relation paths reversed.
    pub fn opposite(&self) -> Presentation {
        Presentation {
            quiver: self.quiver.opposite(),
            field: self.field,
            relations: self.relations.iter().map(PathComb::reversed).collect(),
        }
    }

    pub fn is_admissible_shape(&self) -> bool {
        self.relations.iter().all(|r| r.min_len() >= 2)
    }
}

/// Splits a product `l1*l2*...` into labels; a `*` is a separator only
/// when followed by a character that can start a label.
pub fn split_labels(text: &str) -> Vec<&str> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..bytes.len() {
        if bytes[i] == b'*' && i > start && i + 1 < bytes.len() && is_label_start(bytes[i + 1] as char) {
            out.push(&text[start..i]);
            start = i + 1;
        }
    }
    out.push(&text[start..]);
    out
}

pub fn is_label_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_' || c == '('
}

/// Is `label` printable so that `split_labels` recovers it?
pub fn is_valid_label(label: &str) -> bool {
    let Some(first) = label.chars().next() else { return false };
    if !is_label_start(first) {
        return false;
    }
    if label.chars().any(|c| c.is_whitespace() || matches!(c, ':' | '+' | '#' | ',')) || label.contains('-') {
        return false;
    }
    split_labels(label).len() == 1
}

pub fn parse_path(q: &Quiver, text: &str) -> Result<Path> {
    let text = text.trim();
    if let Some(v) = text.strip_prefix("e_") {
        if let Some(i) = q.vertex_index(v) {
            return Ok(Path::trivial(i));
        }
    }
    let mut ids = Vec::new();
    for l in split_labels(text) {
        ids.push(q.arrow_index(l).ok_or_else(|| Error::UnknownArrow(l.to_string()))?);
    }
    Path::from_arrows(q, &ids).ok_or_else(|| Error::IllFormedPath(text.to_string()))
}
