//! Isomorphism verification and search over monomial basis changes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::algebra::{format_element, EvolutionAlgebra};
use crate::catalog::{canonical_algebra, CatalogLabel};
use crate::error::{Error, Result};
use crate::field::{Field, FieldError, Scalar};
use crate::identities::{CheckReport, Condition, Witness};
use crate::linalg::{self, Matrix};

/// Checks that `x -> m x` is an isomorphism from `a` to `b`: `m` is
/// invertible and `m(e_i e_j) = (m e_i)(m e_j)` for every basis pair.
pub fn verify_isomorphism(a: &EvolutionAlgebra, b: &EvolutionAlgebra, m: &Matrix) -> Result<CheckReport> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.dim() });
    }
    if a.field() != b.field() {
        return Err(FieldError::FieldMismatch.into());
    }
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: m.len() });
    }
    if m.iter().flatten().any(|x| x.field() != a.field()) {
        return Err(FieldError::FieldMismatch.into());
    }
    if linalg::rank(m, n) < n {
        let zero = a.zero_element();
        return Ok(CheckReport {
            verdict: false,
            witness: Some(Witness { condition: Condition::Singular, indices: vec![], left: zero.clone(), right: zero }),
        });
    }
    let cols = linalg::transpose(m);
    for i in 0..n {
        for j in 0..n {
            let left = if i == j { linalg::mat_vec(a.field(), m, a.row(i)) } else { a.zero_element() };
            let right = b.multiply(&cols[i], &cols[j])?;
            if left != right {
                return Ok(CheckReport {
                    verdict: false,
                    witness: Some(Witness { condition: Condition::Homomorphism, indices: vec![i, j], left, right }),
                });
            }
        }
    }
    Ok(CheckReport { verdict: true, witness: None })
}

pub fn format_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.iter().map(|r| format_element(r)).collect();
    format!("[{}]", rows.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialSearch {
    /// An isomorphism `a -> b` of the form `e_i -> d_i f_{π(i)}`.
    Found(Matrix),
    /// No monomial isomorphism exists.
    Exhausted,
    /// None found, but the search over ℚ was cut off by the height bound.
    Inconclusive,
}

fn signature(a: &EvolutionAlgebra, i: usize) -> (bool, usize, usize) {
    let n = a.dim();
    let out = (0..n).filter(|&k| k != i && !a.constant(i, k).is_zero()).count();
    let inc = (0..n).filter(|&k| k != i && !a.constant(k, i).is_zero()).count();
    (!a.constant(i, i).is_zero(), out, inc)
}

/// Calls `visit` for every permutation `π` with `a_ik != 0 <=> b_{π(i)π(k)} != 0`
/// until it returns `true`. Returns whether any visit returned `true`.
pub fn for_each_support_permutation(
    a: &EvolutionAlgebra,
    b: &EvolutionAlgebra,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = a.dim();
    if b.dim() != n {
        return false;
    }
    let sa: Vec<_> = (0..n).map(|i| signature(a, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| signature(b, i)).collect();
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return false;
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        a: &EvolutionAlgebra,
        b: &EvolutionAlgebra,
        sa: &[(bool, usize, usize)],
        sb: &[(bool, usize, usize)],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = a.dim();
        if i == n {
            return visit(perm);
        }
        for t in 0..n {
            if used[t] || sa[i] != sb[t] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                (a.constant(i, k).is_zero() == b.constant(t, perm[k]).is_zero())
                    && (a.constant(k, i).is_zero() == b.constant(perm[k], t).is_zero())
            });
            if !consistent {
                continue;
            }
            perm[i] = t;
            used[t] = true;
            if rec(i + 1, a, b, sa, sb, perm, used, visit) {
                return true;
            }
            used[t] = false;
        }
        perm[i] = usize::MAX;
        false
    }
    rec(0, a, b, &sa, &sb, &mut perm, &mut used, visit)
}

/// Whether some permutation matches the zero patterns of `a` and `b`.
pub fn support_isomorphic(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> bool {
    for_each_support_permutation(a, b, &mut |_| true)
}

/// Nonzero rationals of height at most `h`, by increasing height.
fn rational_roots(field: Field, h: u64) -> Vec<Scalar> {
    let mut out = vec![field.one(), -field.one()];
    for height in 2..=h as i64 {
        for other in 1..=height {
            if other.gcd(&height) != 1 {
                continue;
            }
            for (num, den) in [(height, other), (other, height)] {
                if num == den {
                    continue;
                }
                let r = Scalar::Rational(Box::new(BigRational::new(BigInt::from(num), BigInt::from(den))));
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    out
}

#[derive(Clone)]
struct Equation {
    i: usize,
    k: usize,
    /// `d_k = ratio * d_i^2` with `ratio = b_{π(i)π(k)} / a_ik`.
    ratio: Scalar,
}

/// Solves the scaling equations of one component by propagation, branching
/// on square roots.
fn propagate(values: &mut Vec<Option<Scalar>>, eqs: &[Equation]) -> bool {
    loop {
        let mut progressed = false;
        for e in eqs {
            match (&values[e.i], &values[e.k]) {
                (Some(di), Some(dk)) => {
                    if &(&e.ratio * &di.square()) != dk {
                        return false;
                    }
                }
                (Some(di), None) => {
                    values[e.k] = Some(&e.ratio * &di.square());
                    progressed = true;
                }
                _ => {}
            }
        }
        if !progressed {
            break;
        }
    }
    let Some(e) = eqs.iter().find(|e| values[e.i].is_none() && values[e.k].is_some()) else {
        return eqs.iter().all(|e| values[e.i].is_some() && values[e.k].is_some());
    };
    let dk = values[e.k].clone().expect("known");
    let Ok(sq) = dk.checked_div(&e.ratio) else { return false };
    let Some(r) = sq.sqrt() else { return false };
    for root in [r.clone(), -r] {
        let mut trial = values.clone();
        trial[e.i] = Some(root);
        if propagate(&mut trial, eqs) {
            *values = trial;
            return true;
        }
    }
    false
}

/// Searches for an isomorphism `a -> b` mapping each basis vector to a
/// multiple of a basis vector. Over ℚ, free scalings are drawn from
/// rationals of height at most `height_bound`.
pub fn find_monomial_isomorphism(
    a: &EvolutionAlgebra,
    b: &EvolutionAlgebra,
    height_bound: u64,
) -> Result<MonomialSearch> {
    let n = a.dim();
    if b.dim() != n {
        return Ok(MonomialSearch::Exhausted);
    }
    if a.field() != b.field() {
        return Err(FieldError::FieldMismatch.into());
    }
    let field = a.field();
    let roots = match field.nonzero_elements() {
        Some(all) => all,
        None => rational_roots(field, height_bound),
    };
    let mut truncated = false;
    let mut found: Option<Matrix> = None;
    for_each_support_permutation(a, b, &mut |perm| {
        let mut eqs = Vec::new();
        let mut values: Vec<Option<Scalar>> = vec![None; n];
        for i in 0..n {
            for k in 0..n {
                let c = a.constant(i, k);
                if c.is_zero() {
                    continue;
                }
                let target = b.constant(perm[i], perm[k]);
                if i == k {
                    // a_ii d_i = b_ii d_i^2.
                    let d = c.checked_div(target).expect("support matches");
                    if let Some(prev) = &values[i] {
                        if prev != &d {
                            return false;
                        }
                    }
                    values[i] = Some(d);
                } else {
                    eqs.push(Equation { i, k, ratio: target.checked_div(c).expect("support matches") });
                }
            }
        }
        // Undirected components of the equation graph.
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for e in &eqs {
                    for (x, y) in [(e.i, e.k), (e.k, e.i)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        for members in &comps {
            let owned: Vec<Equation> = eqs.iter().filter(|e| comp[e.i] == comp[members[0]]).cloned().collect();
            if owned.is_empty() {
                for &v in members {
                    if values[v].is_none() {
                        values[v] = Some(field.one());
                    }
                }
                continue;
            }
            if members.iter().any(|&v| values[v].is_some()) {
                if !propagate(&mut values, &owned) {
                    return false;
                }
                continue;
            }
            let root = members[0];
            let mut solved = false;
            for r in &roots {
                let mut trial = values.clone();
                trial[root] = Some(r.clone());
                if propagate(&mut trial, &owned) {
                    values = trial;
                    solved = true;
                    break;
                }
            }
            if !solved {
                if !field.is_finite() {
                    truncated = true;
                }
                return false;
            }
        }
        let mut m = vec![vec![field.zero(); n]; n];
        for i in 0..n {
            m[perm[i]][i] = values[i].clone().expect("all scalings solved");
        }
        if verify_isomorphism(a, b, &m).map(|r| r.verdict).unwrap_or(false) {
            found = Some(m);
            true
        } else {
            false
        }
    });
    Ok(match found {
        Some(m) => MonomialSearch::Found(m),
        None if truncated => MonomialSearch::Inconclusive,
        None => MonomialSearch::Exhausted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamEquivalence {
    /// Witness isomorphism from the first instance to the second.
    Equivalent(Matrix),
    NotEquivalent,
    NotEquivalentUnderSearch,
}

pub const DEFAULT_HEIGHT_BOUND: u64 = 10;

/// Whether two parameter tuples of one catalog entry give isomorphic algebras,
/// decided by monomial isomorphism search.
pub fn params_equivalent(
    label: &CatalogLabel,
    p1: &[Scalar],
    p2: &[Scalar],
    field: Field,
    height_bound: u64,
) -> Result<ParamEquivalence> {
    let l1 = CatalogLabel { params: p1.to_vec(), ..label.clone() };
    let l2 = CatalogLabel { params: p2.to_vec(), ..label.clone() };
    let a = canonical_algebra(&l1, field)?;
    let b = canonical_algebra(&l2, field)?;
    Ok(match find_monomial_isomorphism(&a, &b, height_bound)? {
        MonomialSearch::Found(m) => ParamEquivalence::Equivalent(m),
        MonomialSearch::Exhausted => ParamEquivalence::NotEquivalent,
        MonomialSearch::Inconclusive => ParamEquivalence::NotEquivalentUnderSearch,
    })
}
