//! Identity checks with first-failure witnesses, the annihilator chain and
//! nilpotency data.

use std::fmt;

use crate::algebra::{self, format_element, Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `e_i^2 e_j = 0` for `i != j`.
    Associative,
    /// `a_ii^2 = a_ii`.
    /// The four basis conditions for `x^2 x^2 = x^4`.
    FourthPower(u8),
    /// The five basis conditions for the Jordan identity.
    Jordan(u8),
    NilDiagonal,
    NilChain,
    /// The two basis conditions for fourth power-associativity of a nil algebra.
    NilFourth(u8),
    Homomorphism,
    Singular,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Associative => write!(f, "assoc"),
            Condition::FourthPower(k) => write!(f, "pa4.{k}"),
            Condition::Jordan(k) => write!(f, "jordan.{k}"),
            Condition::NilDiagonal => write!(f, "nil.diag"),
            Condition::NilChain => write!(f, "nil.chain"),
            Condition::NilFourth(k) => write!(f, "nil4.{k}"),
            Condition::Homomorphism => write!(f, "iso.hom"),
            Condition::Singular => write!(f, "iso.singular"),
        }
    }
}

/// The first violated instance of a condition. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: Condition,
    pub indices: Vec<usize>,
    pub left: Element,
    pub right: Element,
}

impl Witness {
    /// Re-evaluates the condition at the stored indices and confirms the
    /// stored sides and their inequality.
    pub fn recheck(&self, a: &EvolutionAlgebra) -> bool {
        if self.condition == Condition::NilChain {
            let chain = annihilator_chain(a);
            let top = chain.chain.last().expect("chain is never empty");
            let i = self.indices[0];
            return !top.contains(&a.basis_vector(i)).unwrap_or(true)
                && self.left == a.basis_square(i)
                && !top.contains(&self.left).unwrap_or(true);
        }
        match evaluate(a, self.condition, &self.indices) {
            Some((l, r)) => l == self.left && r == self.right && l != r,
            None => false,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(
            f,
            "{} ({}) left={} right={}",
            self.condition,
            idx.join(","),
            format_element(&self.left),
            format_element(&self.right)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    fn pass() -> CheckReport {
        CheckReport { verdict: true, witness: None }
    }

    fn fail(condition: Condition, indices: Vec<usize>, left: Element, right: Element) -> CheckReport {
        CheckReport { verdict: false, witness: Some(Witness { condition, indices, left, right }) }
    }
}

/// Basis products that the identity conditions are built from.
struct Products<'a> {
    a: &'a EvolutionAlgebra,
    sq: Vec<Element>,
}

impl<'a> Products<'a> {
    fn new(a: &'a EvolutionAlgebra) -> Self {
        Products { a, sq: (0..a.dim()).map(|i| a.basis_square(i)).collect() }
    }

    /// `e_i^3 = e_i^2 e_i`.
    fn cube(&self, i: usize) -> Element {
        self.a.mul_basis(&self.sq[i], i)
    }

    /// `e_i^4 = e_i^3 e_i`.
    fn fourth(&self, i: usize) -> Element {
        self.a.mul_basis(&self.cube(i), i)
    }

    /// `e_i^2 e_j`.
    fn sq_e(&self, i: usize, j: usize) -> Element {
        self.a.mul_basis(&self.sq[i], j)
    }

    /// `(e_i^2 e_j) e_k`.
    fn sq_e_e(&self, i: usize, j: usize, k: usize) -> Element {
        self.a.mul_basis(&self.sq_e(i, j), k)
    }

    fn sq_sq(&self, i: usize, j: usize) -> Element {
        self.a.mul(&self.sq[i], &self.sq[j])
    }
}

/// Both sides of a condition at the given indices.
pub fn evaluate(a: &EvolutionAlgebra, condition: Condition, idx: &[usize]) -> Option<(Element, Element)> {
    eval(&Products::new(a), condition, idx)
}

fn eval(p: &Products<'_>, condition: Condition, idx: &[usize]) -> Option<(Element, Element)> {
    let a = p.a;
    let zero = a.zero_element();
    let field = a.field();
    Some(match (condition, idx) {
        (Condition::Associative, &[i, j]) => (p.sq_e(i, j), zero),
        (Condition::FourthPower(1), &[i]) => (p.fourth(i), p.sq_sq(i, i)),
        (Condition::FourthPower(2), &[i, j]) => {
            (algebra::scale(&field.from_i64(2), &p.sq_sq(i, j)), algebra::add(&p.sq_e_e(i, j, j), &p.sq_e_e(j, i, i)))
        }
        (Condition::FourthPower(3), &[i, j]) => (algebra::add(&a.mul_basis(&p.cube(i), j), &p.sq_e_e(i, j, i)), zero),
        (Condition::FourthPower(4), &[i, j, k]) => (algebra::add(&p.sq_e_e(i, j, k), &p.sq_e_e(i, k, j)), zero),
        (Condition::Jordan(1), &[i]) => (p.sq_sq(i, i), p.fourth(i)),
        (Condition::Jordan(2), &[i, j]) => (a.mul_basis(&p.cube(i), j), zero),
        (Condition::Jordan(3), &[i, j]) => (p.sq_e_e(i, j, i), zero),
        (Condition::Jordan(4), &[i, j]) => {
            let x = p.sq_sq(i, j);
            let y = p.sq_e_e(i, j, j);
            if x != y {
                (x, y)
            } else {
                (y, p.sq_e_e(j, i, i))
            }
        }
        (Condition::Jordan(5), &[i, j, k]) => (p.sq_e_e(i, j, k), zero),
        (Condition::NilDiagonal, &[i]) => (algebra::scale(a.constant(i, i), &a.basis_vector(i)), zero),
        (Condition::NilFourth(1), &[i, j]) => (p.sq_sq(i, j), zero),
        (Condition::NilFourth(2), &[i, j, k]) => (p.sq_e_e(i, j, k), zero),
        _ => return None,
    })
}

/// Associative iff `e_i^2 e_j = 0` for all `i != j`.
pub fn is_associative(a: &EvolutionAlgebra) -> CheckReport {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if i != j && !a.constant(i, j).is_zero() && !a.is_zero_row(j) {
                let (l, r) = evaluate(a, Condition::Associative, &[i, j]).expect("arity");
                return CheckReport::fail(Condition::Associative, vec![i, j], l, r);
            }
        }
    }
    CheckReport::pass()
}

/// `x^2 x^2 = x^4` for all `x`, via the four basis conditions.
pub fn is_fourth_power_associative(a: &EvolutionAlgebra) -> CheckReport {
    let n = a.dim();
    let p = Products::new(a);
    let field = a.field();
    let zero = a.zero_element();
    for i in 0..n {
        let (l, r) = (p.fourth(i), p.sq_sq(i, i));
        if l != r {
            return CheckReport::fail(Condition::FourthPower(1), vec![i], l, r);
        }
    }
    let two = field.from_i64(2);
    for i in 0..n {
        for j in i + 1..n {
            let l = algebra::scale(&two, &p.sq_sq(i, j));
            let r = algebra::add(&p.sq_e_e(i, j, j), &p.sq_e_e(j, i, i));
            if l != r {
                return CheckReport::fail(Condition::FourthPower(2), vec![i, j], l, r);
            }
        }
    }
    for i in 0..n {
        let cube = p.cube(i);
        for j in 0..n {
            if i == j {
                continue;
            }
            let l = algebra::add(&a.mul_basis(&cube, j), &p.sq_e_e(i, j, i));
            if l != zero {
                return CheckReport::fail(Condition::FourthPower(3), vec![i, j], l, zero);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in j + 1..n {
                if i == j || i == k {
                    continue;
                }
                let l = algebra::add(&p.sq_e_e(i, j, k), &p.sq_e_e(i, k, j));
                if l != zero {
                    return CheckReport::fail(Condition::FourthPower(4), vec![i, j, k], l, zero);
                }
            }
        }
    }
    CheckReport::pass()
}

/// Power-associativity. Outside characteristics 2, 3 and 5 it is equivalent to
/// `x^2 x^2 = x^4`. Diagonal entries other than 0 and 1 are allowed: `e^2 = 2e`
/// is associative.
pub fn is_power_associative(a: &EvolutionAlgebra) -> CheckReport {
    is_fourth_power_associative(a)
}

/// The Jordan identity via the five basis conditions.
pub fn is_jordan(a: &EvolutionAlgebra) -> CheckReport {
    let n = a.dim();
    let p = Products::new(a);
    let zero = a.zero_element();
    for i in 0..n {
        let (l, r) = (p.sq_sq(i, i), p.fourth(i));
        if l != r {
            return CheckReport::fail(Condition::Jordan(1), vec![i], l, r);
        }
    }
    for cond in 2..=4u8 {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (l, r) = eval(&p, Condition::Jordan(cond), &[i, j]).expect("arity");
                if l != r {
                    return CheckReport::fail(Condition::Jordan(cond), vec![i, j], l, r);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let l = p.sq_e_e(i, j, k);
                if l != zero {
                    return CheckReport::fail(Condition::Jordan(5), vec![i, j, k], l, zero);
                }
            }
        }
    }
    CheckReport::pass()
}

/// For nil algebras: fourth power-associative iff `e_i^2 e_j^2 = 0` and
/// `(e_i^2 e_j) e_k = 0` for all indices.
pub fn nil_fourth_pa_criterion(a: &EvolutionAlgebra) -> Result<CheckReport> {
    if !is_nil(a).verdict {
        return Err(Error::NotNil);
    }
    let n = a.dim();
    let p = Products::new(a);
    let zero = a.zero_element();
    for i in 0..n {
        for j in i..n {
            let l = p.sq_sq(i, j);
            if l != zero {
                return Ok(CheckReport::fail(Condition::NilFourth(1), vec![i, j], l, zero));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let l = p.sq_e_e(i, j, k);
                if l != zero {
                    return Ok(CheckReport::fail(Condition::NilFourth(2), vec![i, j, k], l, zero));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// `ann^1 ⊂ ann^2 ⊂ ...` with the natural basis vectors added at each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorChain {
    pub chain: Vec<Subspace>,
    pub layers: Vec<Vec<usize>>,
    pub type_sequence: Vec<usize>,
    pub reaches_full: bool,
}

impl AnnihilatorChain {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }

    pub fn length(&self) -> usize {
        self.layers.len()
    }
}

pub fn annihilator_chain(a: &EvolutionAlgebra) -> AnnihilatorChain {
    let n = a.dim();
    let field = a.field();
    let mut in_ann = vec![false; n];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut chain = Vec::new();
    loop {
        let layer: Vec<usize> = (0..n).filter(|&i| !in_ann[i] && a.support(i).all(|k| in_ann[k])).collect();
        if layer.is_empty() {
            break;
        }
        for &i in &layer {
            in_ann[i] = true;
        }
        layers.push(layer);
        let idx: Vec<usize> = (0..n).filter(|&i| in_ann[i]).collect();
        chain.push(Subspace::coordinate(field, n, &idx));
    }
    if chain.is_empty() {
        chain.push(Subspace::zero(field, n));
    }
    let type_sequence = layers.iter().map(Vec::len).collect();
    let reaches_full = in_ann.iter().all(|&b| b);
    AnnihilatorChain { chain, layers, type_sequence, reaches_full }
}

/// Nil iff the annihilator chain reaches the whole algebra.
pub fn is_nil(a: &EvolutionAlgebra) -> CheckReport {
    for i in 0..a.dim() {
        if !a.constant(i, i).is_zero() {
            let (l, r) = evaluate(a, Condition::NilDiagonal, &[i]).expect("arity");
            return CheckReport::fail(Condition::NilDiagonal, vec![i], l, r);
        }
    }
    let chain = annihilator_chain(a);
    if chain.reaches_full {
        return CheckReport::pass();
    }
    let top = chain.chain.last().expect("chain is never empty");
    let i = (0..a.dim()).find(|&i| !top.pivots().contains(&i)).expect("chain is not full");
    CheckReport::fail(Condition::NilChain, vec![i], a.basis_square(i), a.zero_element())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilProfile {
    pub is_nil: bool,
    /// Least `m` with `E^m = 0`.
    pub right_nilpotency_index: Option<u32>,
    /// Nil-index for power-associative nil algebras.
    pub nil_index_pa: Option<u32>,
}

pub fn nil_profile(a: &EvolutionAlgebra) -> NilProfile {
    if !is_nil(a).verdict {
        return NilProfile { is_nil: false, right_nilpotency_index: None, nil_index_pa: None };
    }
    let mut m = 1;
    while !a.power_subspace(m).is_zero() {
        m += 1;
    }
    let nil_index_pa = if !is_power_associative(a).verdict {
        None
    } else if a.power_subspace(2).is_zero() {
        Some(2)
    } else if is_associative(a).verdict {
        Some(3)
    } else {
        Some(4)
    };
    NilProfile { is_nil: true, right_nilpotency_index: Some(m), nil_index_pa }
}

/// Data showing that a non-associative power-associative nil algebra has nil-index 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilIndexFour {
    pub pair: (usize, usize),
    /// `e_i + e_j`, with nonzero cube.
    pub a: Element,
    pub a_cubed: Element,
    /// A basis vector outside `E^2` that annihilates `E^2`.
    pub y_index: usize,
}

pub fn nil_index_four_certificate(a: &EvolutionAlgebra) -> Result<NilIndexFour> {
    if !is_nil(a).verdict {
        return Err(Error::NotNil);
    }
    if let Some(w) = is_power_associative(a).witness {
        return Err(Error::NotPowerAssociative(w.to_string()));
    }
    let n = a.dim();
    let mut pair = None;
    'outer: for i in 0..n {
        for j in 0..n {
            if i == j || a.constant(i, j).is_zero() || a.is_zero_row(j) {
                continue;
            }
            let mut x = a.zero_element();
            x[i] = a.field().one();
            x[j] = a.field().one();
            let cube = a.principal_power(&x, 3)?;
            if !algebra::is_zero(&cube) {
                pair = Some((i, j, x, cube));
                break 'outer;
            }
        }
    }
    let (i, j, x, cube) = pair.ok_or_else(|| Error::InternalConsistency("algebra is associative".into()))?;
    let zero_column = |y: usize| (0..n).all(|k| a.constant(k, y).is_zero());
    let y_index = if zero_column(i) {
        i
    } else {
        (0..n).find(|&y| zero_column(y)).ok_or_else(|| Error::InternalConsistency("no top-layer vector".into()))?
    };
    Ok(NilIndexFour { pair: (i, j), a: x, a_cubed: cube, y_index })
}

/// `dim (U_r ⊕ U_1)^2`, where `U_r ⊕ U_1 = {x in ann^r : x ann^(r-1) = 0}`
/// and `r` is the length of the annihilator chain.
pub fn dim_u_square(a: &EvolutionAlgebra) -> Option<usize> {
    let chain = annihilator_chain(a);
    let r = chain.layers.len();
    if r == 0 {
        return None;
    }
    let top: Vec<usize> = chain.layers.iter().flatten().copied().collect();
    let below: Vec<usize> = chain.layers[..r - 1].iter().flatten().copied().collect();
    let u: Vec<usize> = top.into_iter().filter(|&i| !below.contains(&i) || a.is_zero_row(i)).collect();
    let squares: Vec<Element> = u.iter().map(|&i| a.basis_square(i)).collect();
    Some(Subspace::span(a.field(), a.dim(), &squares).expect("same algebra").dim())
}
