//! Peirce and Wedderburn decompositions, and splitting along the support graph.

use crate::algebra::{self, Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::identities::{annihilator_chain, is_nil, is_power_associative};
use crate::linalg::{self, Matrix, Subspace};

/// Eigenspaces of left multiplication by an idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeirceDecomposition {
    pub one: Subspace,
    pub half: Subspace,
    pub zero: Subspace,
}

impl PeirceDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.one.dim(), self.half.dim(), self.zero.dim())
    }
}

fn require_pa(a: &EvolutionAlgebra) -> Result<()> {
    match is_power_associative(a).witness {
        Some(w) => Err(Error::NotPowerAssociative(w.to_string())),
        None => Ok(()),
    }
}

pub fn peirce(a: &EvolutionAlgebra, e: &[crate::field::Scalar]) -> Result<PeirceDecomposition> {
    let sq = a.multiply(e, e)?;
    if algebra::is_zero(e) || sq != e {
        return Err(Error::NotIdempotent);
    }
    require_pa(a)?;
    let n = a.dim();
    let field = a.field();
    // Column j of L_e is e e_j = e_j-coordinate of e times e_j^2.
    let l: Matrix = (0..n).map(|k| (0..n).map(|j| &e[j] * a.constant(j, k)).collect()).collect();
    let eigenspace = |lambda: crate::field::Scalar| {
        let shifted: Matrix = l
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, x)| if i == j { x - &lambda } else { x.clone() }).collect())
            .collect();
        let k = linalg::kernel(field, &shifted, n);
        Subspace::span(field, n, &k).expect("kernel vectors")
    };
    Ok(PeirceDecomposition {
        one: eigenspace(field.one()),
        half: eigenspace(field.ratio(1, 2)?),
        zero: eigenspace(field.zero()),
    })
}

/// `u = a_ii^-2 e_i^2` for the smallest `i` with `a_ii != 0`.
pub fn extract_idempotent(a: &EvolutionAlgebra) -> Result<Option<(Element, usize)>> {
    require_pa(a)?;
    for i in 0..a.dim() {
        let d = a.constant(i, i);
        if !d.is_zero() {
            let c = d.square().inv()?;
            let u = algebra::scale(&c, &a.basis_square(i));
            return Ok(Some((u, i)));
        }
    }
    Ok(None)
}

/// `E = ⊕ F u_i ⊕ N` with pairwise orthogonal idempotents `u_i` and nil `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnDecomposition {
    pub s: usize,
    pub idempotents: Vec<Element>,
    /// Basis indices `i` with `u_i = a_ii^-2 e_i^2`.
    pub idempotent_indices: Vec<usize>,
    /// Basis indices spanning the radical.
    pub radical_indices: Vec<usize>,
    pub radical: Option<EvolutionAlgebra>,
    /// Columns are the new basis (idempotents, then radical basis) in old coordinates.
    pub basis_change: Matrix,
}

pub fn wedderburn(a: &EvolutionAlgebra) -> Result<WedderburnDecomposition> {
    require_pa(a)?;
    let n = a.dim();
    let idempotent_indices: Vec<usize> = (0..n).filter(|&i| !a.constant(i, i).is_zero()).collect();
    let radical_indices: Vec<usize> = (0..n).filter(|&i| a.constant(i, i).is_zero()).collect();
    let mut idempotents = Vec::with_capacity(idempotent_indices.len());
    for &i in &idempotent_indices {
        let c = a.constant(i, i).square().inv()?;
        idempotents.push(algebra::scale(&c, &a.basis_square(i)));
    }
    let mut basis = idempotents.clone();
    basis.extend(radical_indices.iter().map(|&j| a.basis_vector(j)));
    let rebased = a.rebase(&basis)?;
    let s = idempotents.len();
    for i in 0..n {
        for k in 0..n {
            let expected_zero = if i < s { i != k } else { k < s };
            let c = rebased.constant(i, k);
            if (expected_zero && !c.is_zero()) || (i < s && i == k && !c.is_one()) {
                return Err(Error::InternalConsistency("Wedderburn basis is not split".into()));
            }
        }
    }
    let radical = if radical_indices.is_empty() {
        None
    } else {
        if !a.is_closed_on(&radical_indices) {
            return Err(Error::InternalConsistency("radical is not a subalgebra".into()));
        }
        let r = a.restrict(&radical_indices);
        if !is_nil(&r).verdict {
            return Err(Error::InternalConsistency("radical is not nil".into()));
        }
        Some(r)
    };
    Ok(WedderburnDecomposition {
        s,
        idempotents,
        idempotent_indices,
        radical_indices,
        radical,
        basis_change: linalg::transpose(&basis),
    })
}

/// A connected component of the support graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub indices: Vec<usize>,
    pub algebra: EvolutionAlgebra,
}

/// Splits along connected components of the graph with an edge `i - k`
/// whenever `a_ik != 0` or `a_ki != 0`. Components are ordered by smallest index.
pub fn graph_components(a: &EvolutionAlgebra) -> Vec<Component> {
    let n = a.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for k in a.support(i).collect::<Vec<_>>() {
            let (ri, rk) = (find(&mut parent, i), find(&mut parent, k));
            if ri != rk {
                parent[ri.max(rk)] = ri.min(rk);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of_group: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of_group.iter().position(|&g| g == r) {
            Some(g) => groups[g].push(i),
            None => {
                root_of_group.push(r);
                groups.push(vec![i]);
            }
        }
    }
    groups.into_iter().map(|indices| Component { algebra: a.restrict(&indices), indices }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposabilityHint {
    DecomposableByAnnBound,
    Unknown,
}

/// `dim ann(E) >= dim(E)/2 >= 1` forces a decomposition.
pub fn decomposability_hint(a: &EvolutionAlgebra) -> DecomposabilityHint {
    let ann = annihilator_chain(a).chain[0].dim();
    let n = a.dim();
    if 2 * ann >= n && n >= 2 {
        DecomposabilityHint::DecomposableByAnnBound
    } else {
        DecomposabilityHint::Unknown
    }
}
