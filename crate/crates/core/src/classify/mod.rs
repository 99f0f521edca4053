//! Classification of power-associative evolution algebras of dimension at most six.

pub mod iso;
mod nil;

use crate::algebra::{Element, EvolutionAlgebra};
use crate::catalog::{find_by_atoms, CatalogLabel, MAX_DIM};
use crate::decomposition::wedderburn;
use crate::error::{Error, Result};
use crate::identities::{annihilator_chain, dim_u_square, is_associative, is_power_associative};
use crate::linalg::{self, Matrix};

pub use iso::{
    find_monomial_isomorphism, format_matrix, params_equivalent, support_isomorphic, verify_isomorphism,
    MonomialSearch, ParamEquivalence, DEFAULT_HEIGHT_BOUND,
};

/// Basis-independent data compared between an input and its canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantRecord {
    pub type_sequence: Vec<usize>,
    pub dim_ann: usize,
    pub associative: bool,
    pub dim_u_square: Option<usize>,
    /// Number of idempotent lines in the Wedderburn decomposition.
    pub idempotents: usize,
}

impl InvariantRecord {
    pub fn of(a: &EvolutionAlgebra) -> InvariantRecord {
        let chain = annihilator_chain(a);
        InvariantRecord {
            dim_ann: chain.chain[0].dim(),
            type_sequence: chain.type_sequence,
            associative: is_associative(a).verdict,
            dim_u_square: dim_u_square(a),
            idempotents: (0..a.dim()).filter(|&i| !a.constant(i, i).is_zero()).count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub label: CatalogLabel,
    /// `x -> iso x` maps input coordinates to canonical coordinates.
    pub iso: Matrix,
    /// Columns are the canonical basis vectors written in the input basis.
    pub canonical_basis: Matrix,
    pub invariants: InvariantRecord,
    /// Label of the nil radical, when it is nonzero.
    pub radical: Option<CatalogLabel>,
    pub flags: Vec<String>,
}

pub fn classify(a: &EvolutionAlgebra) -> Result<ClassificationResult> {
    let n = a.dim();
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    let pa = is_power_associative(a);
    if !pa.verdict {
        let w = pa.witness.map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::NotPowerAssociative(w));
    }
    let field = a.field();
    let wd = wedderburn(a)?;
    let mut flags = Vec::new();
    let pieces = match &wd.radical {
        Some(r) => nil::decompose_nil(r, &mut flags)?,
        None => Vec::new(),
    };
    let mut atoms: Vec<_> = pieces.iter().map(|p| p.atom).collect();
    atoms.sort();
    let entry = find_by_atoms(wd.s, &atoms).ok_or_else(|| {
        Error::InternalConsistency(format!("no catalog entry for {} idempotents and {atoms:?}", wd.s))
    })?;

    // Order the pieces as the entry lists its atoms.
    let mut used = vec![false; pieces.len()];
    let mut ordered = Vec::new();
    for atom in entry.nil_atoms() {
        let k = (0..pieces.len())
            .find(|&k| !used[k] && pieces[k].atom == atom)
            .ok_or_else(|| Error::InternalConsistency("atom bookkeeping".into()))?;
        used[k] = true;
        ordered.push(&pieces[k]);
    }

    let embed = |v: &Element| {
        let mut full = a.zero_element();
        for (t, &i) in wd.radical_indices.iter().enumerate() {
            full[i] = v[t].clone();
        }
        full
    };
    let mut basis: Vec<Element> = wd.idempotents.clone();
    let mut params = Vec::new();
    for p in &ordered {
        basis.extend(p.basis.iter().map(embed));
        params.extend(p.params.iter().cloned());
    }
    let label = entry.label(params);
    let canonical = entry.instantiate(field, &label.params)?;
    let canonical_basis = linalg::transpose(&basis);
    let iso = linalg::inverse(field, &canonical_basis)
        .map_err(|_| Error::InternalConsistency("assembled basis is singular".into()))?;
    let check = verify_isomorphism(a, &canonical, &iso)?;
    if !check.verdict {
        let w = check.witness.map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::InternalConsistency(format!("isomorphism to {label} fails: {w}")));
    }
    let invariants = InvariantRecord::of(a);
    if invariants != InvariantRecord::of(&canonical) {
        return Err(Error::InternalConsistency(format!("invariants differ from {label}")));
    }
    let radical = if wd.radical.is_some() && wd.s > 0 {
        let e = find_by_atoms(0, &atoms)
            .ok_or_else(|| Error::InternalConsistency("radical has no catalog entry".into()))?;
        let mut rp = Vec::new();
        let mut taken = vec![false; ordered.len()];
        for atom in e.nil_atoms() {
            let k = (0..ordered.len()).find(|&k| !taken[k] && ordered[k].atom == atom).expect("atoms agree");
            taken[k] = true;
            rp.extend(ordered[k].params.iter().cloned());
        }
        Some(e.label(rp))
    } else if wd.radical.is_some() {
        Some(label.clone())
    } else {
        None
    };
    Ok(ClassificationResult { label, iso, canonical_basis, invariants, radical, flags })
}
