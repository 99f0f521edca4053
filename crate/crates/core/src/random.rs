//! Seeded random algebras.
//!
//! The power-associative modes instantiate a catalog entry and hide it behind a
//! random monomial change of basis. Raw mode fills the structure matrix freely.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, EvolutionAlgebra};
use crate::catalog::{entries, CatalogEntry, CatalogLabel, Kind, MAX_DIM};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomMode {
    PaMixed,
    NilPa,
    Raw,
}

impl fmt::Display for RandomMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RandomMode::PaMixed => "pa_mixed",
            RandomMode::NilPa => "nil_pa",
            RandomMode::Raw => "raw",
        })
    }
}

impl FromStr for RandomMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pa_mixed" => Ok(RandomMode::PaMixed),
            "nil_pa" => Ok(RandomMode::NilPa),
            "raw" => Ok(RandomMode::Raw),
            _ => Err(format!("unknown mode `{s}` (expected pa_mixed, nil_pa or raw)")),
        }
    }
}

const SMALL_RATIONALS: [(i64, i64); 10] =
    [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1), (1, 2), (-1, 2), (1, 3), (3, 2)];

pub fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rationals => {
            if rng.gen_bool(0.25) {
                return field.zero();
            }
            random_nonzero(field, rng)
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn random_nonzero<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rationals => {
            let (n, d) = *SMALL_RATIONALS.choose(rng).expect("nonempty");
            field.ratio(n, d).expect("nonzero denominator")
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(1..p) as i64),
    }
}

/// A random basis `f_i = d_i e_{π(i)}`, returned as a list of vectors.
pub fn random_monomial_basis<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Vec<Element> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm.iter()
        .map(|&j| {
            let mut v = vec![field.zero(); n];
            v[j] = random_nonzero(field, rng);
            v
        })
        .collect()
}

/// `a` rewritten in a random monomial basis, with the matrix whose columns are that basis.
pub fn disguise<R: Rng + ?Sized>(a: &EvolutionAlgebra, rng: &mut R) -> Result<(EvolutionAlgebra, Matrix)> {
    let basis = random_monomial_basis(a.field(), a.dim(), rng);
    Ok((a.rebase(&basis)?, linalg::transpose(&basis)))
}

/// Parameters for `entry` drawn until the constraints hold.
pub fn random_params<R: Rng + ?Sized>(entry: &CatalogEntry, field: Field, rng: &mut R) -> Vec<Scalar> {
    loop {
        let p: Vec<Scalar> = (0..entry.param_count()).map(|_| random_nonzero(field, rng)).collect();
        if entry.check_params(&p).is_ok() {
            return p;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomAlgebra {
    pub algebra: EvolutionAlgebra,
    /// The hidden catalog label in the power-associative modes.
    pub label: Option<CatalogLabel>,
}

pub fn random_algebra(field: Field, dim: usize, mode: RandomMode, seed: u64) -> Result<RandomAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_algebra_with(field, dim, mode, &mut rng)
}

pub fn random_algebra_with<R: Rng + ?Sized>(
    field: Field,
    dim: usize,
    mode: RandomMode,
    rng: &mut R,
) -> Result<RandomAlgebra> {
    if dim == 0 {
        return Err(Error::ShapeMismatch);
    }
    if mode == RandomMode::Raw {
        let rows = (0..dim).map(|_| (0..dim).map(|_| random_scalar(field, rng)).collect()).collect();
        return Ok(RandomAlgebra { algebra: EvolutionAlgebra::new(field, rows)?, label: None });
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    let pool: Vec<&CatalogEntry> =
        entries().iter().filter(|e| e.dim == dim && (mode == RandomMode::PaMixed || e.kind == Kind::Nil)).collect();
    let entry = *pool.choose(rng).expect("every dimension has entries");
    let params = random_params(entry, field, rng);
    let canonical = entry.instantiate(field, &params)?;
    let (algebra, _) = disguise(&canonical, rng)?;
    Ok(RandomAlgebra { algebra, label: Some(entry.label(params)) })
}
