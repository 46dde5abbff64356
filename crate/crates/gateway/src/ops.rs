//! The operations behind both the HTTP routes and the command line.

use tiltmut_core::json::{simple_image_json, BrickSystemJson, MutationResultJson, SimpleImageJson};
use tiltmut_core::msob::{check_system, mutate_system_left, mutate_system_right};
use tiltmut_core::mutation::{cross_validate, mutate_minus, mutate_plus, MutationResult};
use tiltmut_core::module::Representation;
use tiltmut_core::stable::simple_image;
use tiltmut_core::{Error, FdAlgebra, Presentation, Result};

/// Above this dimension the oracle is skipped in checked mode.
pub const ORACLE_DIM_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" | "plus" | "+" => Ok(Side::Left),
            "right" | "minus" | "-" => Ok(Side::Right),
            _ => Err(Error::Invalid(format!("side must be `left` or `right`, got `{s}`"))),
        }
    }
}

pub fn vertex(alg: &FdAlgebra, name: &str) -> Result<usize> {
    alg.quiver().vertex_index(name).ok_or_else(|| Error::UnknownVertex(name.into()))
}

pub struct MutateOptions {
    pub side: Side,
    pub reduce: bool,
    pub checked: bool,
}

impl Default for MutateOptions {
    fn default() -> Self {
        MutateOptions { side: Side::Left, reduce: true, checked: true }
    }
}

pub fn mutate(pres: &Presentation, vertex_name: &str, opts: &MutateOptions) -> Result<MutationResult> {
    let alg = FdAlgebra::new(pres)?;
    let v = vertex(&alg, vertex_name)?;
    let oracle = opts.checked && alg.dim() <= ORACLE_DIM_LIMIT;
    let mut result = match (opts.side, oracle) {
        (Side::Left, true) => {
            let (result, report) = cross_validate(&alg, v)?;
            if !report.passed {
                return Err(Error::OracleMismatch(serde_json::to_string(&report).unwrap_or_default()));
            }
            result
        }
        (Side::Left, false) => mutate_plus(&alg, v)?,
        (Side::Right, checked) => mutate_minus(&alg, v, checked)?,
    };
    if opts.checked && !oracle {
        result.warnings.push(format!("dimension {} exceeds {ORACLE_DIM_LIMIT}; oracle skipped", alg.dim()));
    }
    if !opts.reduce {
        result.reduced = result.raw.clone();
        result.eliminations.clear();
    }
    Ok(result)
}

pub fn simple_images(pres: &Presentation, vertex_name: &str) -> Result<Vec<SimpleImageJson>> {
    let alg = FdAlgebra::new(pres)?;
    let v = vertex(&alg, vertex_name)?;
    (0..alg.num_vertices()).map(|j| Ok(simple_image_json(&alg, j, &simple_image(&alg, v, j)?))).collect()
}

/// The mutation together with the images of the simples for left mutations.
pub fn mutate_json(pres: &Presentation, vertex_name: &str, opts: &MutateOptions) -> Result<MutationResultJson> {
    let result = mutate(pres, vertex_name, opts)?;
    let mut json = MutationResultJson::from_result(&result);
    if opts.side == Side::Left {
        json.simple_images = Some(simple_images(pres, vertex_name)?);
    }
    Ok(json)
}

/// Bricks are listed in vertex order; mutation is at the brick sitting at
/// the named vertex.
pub fn msob_mutate(pres: &Presentation, bricks: &[Representation], vertex_name: &str, side: Side) -> Result<BrickSystemJson> {
    let alg = FdAlgebra::new(pres)?;
    let i = vertex(&alg, vertex_name)?;
    let sys = check_system(&alg, bricks, None)?;
    let out = match side {
        Side::Left => mutate_system_left(&alg, &sys, i)?,
        Side::Right => mutate_system_right(&alg, &sys, i)?,
    };
    Ok(BrickSystemJson::from_system(&alg, &out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltmut_core::fixtures;

    #[test]
    fn sides_parse() {
        assert_eq!("left".parse::<Side>().unwrap(), Side::Left);
        assert_eq!("-".parse::<Side>().unwrap(), Side::Right);
        assert!("up".parse::<Side>().is_err());
    }

    #[test]
    fn unknown_vertex() {
        let err = mutate(&fixtures::e2(), "9", &MutateOptions::default()).unwrap_err();
        assert_eq!(err, Error::UnknownVertex("9".into()));
    }

    #[test]
    fn unreduced_output_keeps_raw_arrows() {
        let opts = MutateOptions { reduce: false, checked: false, ..Default::default() };
        let r = mutate(&fixtures::e2(), "1", &opts).unwrap();
        assert_eq!(r.reduced.quiver.num_arrows(), 8);
        assert!(r.eliminations.is_empty());
    }

    #[test]
    fn right_side_returns_opposite_orientation() {
        let opts = MutateOptions { side: Side::Right, ..Default::default() };
        let j = mutate_json(&fixtures::e2(), "1", &opts).unwrap();
        assert_eq!(j.side, "right");
        assert!(j.simple_images.is_none());
    }
}
