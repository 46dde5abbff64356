//! Maximal systems of orthogonal bricks in the stable category and their
//! left and right mutations.
//!
//! Shift is `[1] = Ω⁻¹`. Cones of `f: X -> Y` are realized as
//! `coker((f, ι): X -> Y ⊕ I(X))` and normalized by stripping projectives.

use serde::Serialize;

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::module::*;
use crate::stable::{left_approximation, right_approximation, simple_image, stable_hom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Maximality {
    CheckedTrue,
    Unchecked,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomFlags {
    /// `T(S_i,S_i) = k` and `T(S_i,S_j) = 0` for `i != j`.
    pub orthobrick: bool,
    pub maximality: Maximality,
    /// No `S_i` is isomorphic to `S_i[2]`.
    pub no2periodic: bool,
}

#[derive(Clone, Debug)]
pub struct BrickSystem {
    pub bricks: Vec<Representation>,
    /// `dims[i][j] = dim T(S_i, S_j)`.
    pub dims: Vec<Vec<usize>>,
    pub flags: AxiomFlags,
    /// Multiplicities `n_j` (left) or `m_j` (right) of the last mutation.
    pub multiplicities: Option<Vec<usize>>,
}

impl BrickSystem {
    pub fn holds(&self) -> bool {
        self.flags.orthobrick && self.flags.no2periodic && self.flags.maximality != Maximality::Failed
    }
}

const SEED: u64 = 0x5eed;

fn cone(alg: &FdAlgebra, x: &Representation, y: &Representation, f: &ModuleMap) -> Result<Representation> {
    if x.is_zero() {
        return strip_projectives(alg, y);
    }
    let (i, iota, _) = injective_envelope(alg, x)?;
    let (target, _, _) = direct_sum(alg, &[y.clone(), i]);
    let map = column_map(&[f.clone(), iota], x);
    let (c, _) = cokernel(alg, &target, &map);
    strip_projectives(alg, &c)
}

fn shift(alg: &FdAlgebra, x: &Representation, k: i32) -> Result<Representation> {
    let mut y = x.clone();
    for _ in 0..k.unsigned_abs() {
        y = if k > 0 { cosyzygy(alg, &y)? } else { syzygy(alg, &y) };
    }
    strip_projectives(alg, &y)
}

/// Checks the axioms; maximality only against the supplied witnesses.
pub fn check_system(alg: &FdAlgebra, bricks: &[Representation], indecomposables: Option<&[Representation]>) -> Result<BrickSystem> {
    let bricks: Vec<Representation> = bricks.iter().map(|b| strip_projectives(alg, b)).collect::<Result<_>>()?;
    let n = bricks.len();
    let mut dims = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            dims[i][j] = stable_hom(alg, &bricks[i], &bricks[j])?.dim;
        }
    }
    let orthobrick = (0..n).all(|i| (0..n).all(|j| dims[i][j] == usize::from(i == j)));
    let mut no2periodic = true;
    for b in &bricks {
        if b.is_zero() || iso_test(alg, b, &shift(alg, b, 2)?, SEED) == IsoResult::Iso {
            no2periodic = false;
        }
    }
    let maximality = match indecomposables {
        None => Maximality::Unchecked,
        Some(xs) => {
            let mut ok = true;
            for x in xs.iter().filter(|x| !x.is_zero()) {
                let mut hit = false;
                for b in &bricks {
                    if stable_hom(alg, x, b)?.dim != 0 {
                        hit = true;
                        break;
                    }
                }
                ok &= hit;
            }
            if ok {
                Maximality::CheckedTrue
            } else {
                Maximality::Failed
            }
        }
    };
    Ok(BrickSystem { bricks, dims, flags: AxiomFlags { orthobrick, maximality, no2periodic }, multiplicities: None })
}

pub fn simples_system(alg: &FdAlgebra) -> Result<BrickSystem> {
    let simples: Vec<Representation> = (0..alg.num_vertices()).map(|v| simple(alg, v)).collect();
    check_system(alg, &simples, None)
}

fn precondition(alg: &FdAlgebra, sys: &BrickSystem, i: usize) -> Result<()> {
    let s = sys.bricks.get(i).ok_or_else(|| Error::Invalid(format!("no brick with index {i}")))?;
    if stable_hom(alg, s, &shift(alg, s, 1)?)?.dim != 0 {
        return Err(Error::SelfExtensionNonzero(i));
    }
    Ok(())
}

/// `S⁺_j → S_j[-1] → S_i^{n_j}` with the second map a minimal left
/// approximation.
pub fn mutate_system_left(alg: &FdAlgebra, sys: &BrickSystem, i: usize) -> Result<BrickSystem> {
    precondition(alg, sys, i)?;
    let si = &sys.bricks[i];
    let mut bricks = Vec::new();
    let mut mult = Vec::new();
    for (j, sj) in sys.bricks.iter().enumerate() {
        if j == i {
            bricks.push(si.clone());
            mult.push(0);
            continue;
        }
        let x = shift(alg, sj, -1)?;
        let approx = left_approximation(alg, &x, std::slice::from_ref(si), true)?;
        mult.push(approx.summands.len());
        let c = cone(alg, &x, &approx.object, &approx.map)?;
        bricks.push(shift(alg, &c, -1)?);
    }
    let mut out = check_system(alg, &bricks, None)?;
    out.multiplicities = Some(mult);
    Ok(out)
}

/// `S_i^{m_j} → S_j[1] → S⁻_j` with the first map a minimal right
/// approximation.
pub fn mutate_system_right(alg: &FdAlgebra, sys: &BrickSystem, i: usize) -> Result<BrickSystem> {
    precondition(alg, sys, i)?;
    let si = &sys.bricks[i];
    let mut bricks = Vec::new();
    let mut mult = Vec::new();
    for (j, sj) in sys.bricks.iter().enumerate() {
        if j == i {
            bricks.push(si.clone());
            mult.push(0);
            continue;
        }
        let y = shift(alg, sj, 1)?;
        let approx = right_approximation(alg, std::slice::from_ref(si), &y, true)?;
        mult.push(approx.summands.len());
        bricks.push(cone(alg, &approx.object, &y, &approx.map)?);
    }
    let mut out = check_system(alg, &bricks, None)?;
    out.multiplicities = Some(mult);
    Ok(out)
}

/// Brickwise isomorphism, in order.
pub fn systems_iso(alg: &FdAlgebra, a: &[Representation], b: &[Representation]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| iso_test(alg, x, y, SEED) == IsoResult::Iso)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConsistencyReport {
    pub vertex: usize,
    /// Per `j`: is the left-mutated brick isomorphic to the image of `S_j`.
    pub matches: Vec<bool>,
    pub multiplicities: Vec<usize>,
    pub axioms: AxiomFlags,
    pub consistent: bool,
}

/// Compares the left mutation of the simples at `v` with the images of the
/// simples of the mutated algebra.
pub fn consistency_with_tilting(alg: &FdAlgebra, v: usize) -> Result<ConsistencyReport> {
    let simples = simples_system(alg)?;
    let mutated = mutate_system_left(alg, &simples, v)?;
    let mut matches = Vec::new();
    for j in 0..alg.num_vertices() {
        let img = simple_image(alg, v, j)?;
        matches.push(iso_test(alg, &mutated.bricks[j], &img, SEED) == IsoResult::Iso);
    }
    let consistent = matches.iter().all(|&m| m) && mutated.holds();
    Ok(ConsistencyReport {
        vertex: v,
        matches,
        multiplicities: mutated.multiplicities.clone().unwrap_or_default(),
        axioms: mutated.flags,
        consistent,
    })
}

/// One brick per line: `simple v`, `omega k v` (`Ω^k S_v`, negative `k`
/// for cosyzygies) or `image u v` (image of `S_v` under mutation at `u`).
/// Vertices by name; `#` starts a comment.
pub fn parse_system(alg: &FdAlgebra, text: &str) -> Result<Vec<Representation>> {
    let vertex = |name: &str| alg.quiver().vertex_index(name).ok_or_else(|| Error::UnknownVertex(name.into()));
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Syntax { line: n + 1, column: 1, message: format!("expected `simple v`, `omega k v` or `image u v`, got `{line}`") };
        let brick = match words.as_slice() {
            ["simple", v] => simple(alg, vertex(v)?),
            ["omega", k, v] => {
                let k: i32 = k.parse().map_err(|_| bad())?;
                shift(alg, &simple(alg, vertex(v)?), -k)?
            }
            ["image", u, v] => simple_image(alg, vertex(u)?, vertex(v)?)?,
            _ => return Err(bad()),
        };
        out.push(brick);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn e2() -> FdAlgebra {
        FdAlgebra::new(&fixtures::e2()).unwrap()
    }

    #[test]
    fn simples_are_a_system() {
        let alg = e2();
        let sys = simples_system(&alg).unwrap();
        assert!(sys.flags.orthobrick && sys.flags.no2periodic);
        assert_eq!(sys.flags.maximality, Maximality::Unchecked);
    }

    #[test]
    fn repeated_brick_is_not_orthogonal() {
        let alg = e2();
        let s = simple(&alg, 0);
        assert!(!check_system(&alg, &[s.clone(), s], None).unwrap().flags.orthobrick);
    }

    #[test]
    fn maximality_witness() {
        let alg = e2();
        let s1 = simple(&alg, 0);
        let s2 = simple(&alg, 1);
        let sys = check_system(&alg, &[s1.clone()], Some(&[s2])).unwrap();
        assert_eq!(sys.flags.maximality, Maximality::Failed);
        let sys = check_system(&alg, &[s1.clone()], Some(&[s1])).unwrap();
        assert_eq!(sys.flags.maximality, Maximality::CheckedTrue);
    }

    #[test]
    fn left_mutation_of_simples_on_e2() {
        let alg = e2();
        let sys = simples_system(&alg).unwrap();
        let m = mutate_system_left(&alg, &sys, 0).unwrap();
        let dims: Vec<Vec<usize>> = m.bricks.iter().map(|b| b.dims.clone()).collect();
        assert_eq!(dims, vec![vec![1, 0, 0], vec![1, 1, 2], vec![1, 2, 1]]);
        assert_eq!(m.multiplicities, Some(vec![0, 1, 1]));
        assert!(m.holds());
    }

    #[test]
    fn inverse_law() {
        let alg = e2();
        let sys = simples_system(&alg).unwrap();
        let left = mutate_system_left(&alg, &sys, 0).unwrap();
        let back = mutate_system_right(&alg, &left, 0).unwrap();
        assert!(systems_iso(&alg, &back.bricks, &sys.bricks));
        let right = mutate_system_right(&alg, &sys, 0).unwrap();
        let back = mutate_system_left(&alg, &right, 0).unwrap();
        assert!(systems_iso(&alg, &back.bricks, &sys.bricks));
    }

    #[test]
    fn self_extension_rejected() {
        let alg = FdAlgebra::new(&crate::grammar::parse_presentation("vertex 1\narrow x : 1 -> 1\nrel x*x\n").unwrap()).unwrap();
        let sys = simples_system(&alg).unwrap();
        assert_eq!(mutate_system_left(&alg, &sys, 0).unwrap_err(), Error::SelfExtensionNonzero(0));
    }

    #[test]
    fn consistency() {
        for (p, v) in [(fixtures::e2(), 0), (fixtures::e1(3), 1)] {
            let alg = FdAlgebra::new(&p).unwrap();
            let r = consistency_with_tilting(&alg, v).unwrap();
            assert!(r.consistent, "{r:?}");
        }
    }

    #[test]
    fn zero_multiplicities_give_syzygies() {
        // with no approximation, the triangle degenerates to S⁺_j = ΩS_j
        let alg = FdAlgebra::new(&fixtures::e1(3)).unwrap();
        let sys = simples_system(&alg).unwrap();
        let m = mutate_system_left(&alg, &sys, 1).unwrap();
        for (j, n) in m.multiplicities.unwrap().into_iter().enumerate() {
            if j != 1 && n == 0 {
                let omega = shift(&alg, &sys.bricks[j], -1).unwrap();
                assert_eq!(iso_test(&alg, &m.bricks[j], &omega, 1), IsoResult::Iso);
            }
        }
    }

    #[test]
    fn system_file() {
        let alg = e2();
        let bricks = parse_system(&alg, "simple 1\nimage 1 2 # second\nomega -1 3\n").unwrap();
        assert_eq!(bricks[1].dims, vec![1, 1, 2]);
        assert!(parse_system(&alg, "simple 9").is_err());
        assert!(matches!(parse_system(&alg, "brick"), Err(Error::Syntax { line: 1, .. })));
    }
}
