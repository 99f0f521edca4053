//! The catalog of power-associative evolution algebras of dimension at most six.
//!
//! Every entry is a block-diagonal sum of indecomposable atoms. Nil entries
//! come first within a dimension, then the entries with idempotents, ordered
//! by the number of idempotents and then by the nil radical.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::algebra::EvolutionAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Indecomposable building blocks. `Idem` is the one-dimensional algebra `e^2 = e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Idem,
    N11,
    N22,
    N33,
    N45,
    N46,
    N58,
    N59,
    N510,
    N511,
    N512,
    N616,
    N617,
    N618,
    N619,
    N620,
    N621,
    N622,
    N623,
    N624,
    N625,
    N626,
}

const NONE: i8 = -1;

/// `(row, col, coefficient, parameter)`: `a[row][col] = coefficient * param`.
type Cell = (u8, u8, i8, i8);

const NIL_HEAD: [Cell; 4] = [(0, 1, 1, NONE), (0, 2, 1, NONE), (1, 4, 1, NONE), (2, 4, -1, NONE)];
const NIL_HEAD6: [Cell; 4] = [(0, 1, 1, NONE), (0, 2, 1, NONE), (1, 5, 1, NONE), (2, 5, -1, NONE)];

impl Atom {
    pub const ALL: [Atom; 22] = [
        Atom::Idem,
        Atom::N11,
        Atom::N22,
        Atom::N33,
        Atom::N45,
        Atom::N46,
        Atom::N58,
        Atom::N59,
        Atom::N510,
        Atom::N511,
        Atom::N512,
        Atom::N616,
        Atom::N617,
        Atom::N618,
        Atom::N619,
        Atom::N620,
        Atom::N621,
        Atom::N622,
        Atom::N623,
        Atom::N624,
        Atom::N625,
        Atom::N626,
    ];

    pub fn dim(self) -> usize {
        match self {
            Atom::Idem | Atom::N11 => 1,
            Atom::N22 => 2,
            Atom::N33 => 3,
            Atom::N45 | Atom::N46 => 4,
            Atom::N58 | Atom::N59 | Atom::N510 | Atom::N511 | Atom::N512 => 5,
            _ => 6,
        }
    }

    /// Catalog index of the indecomposable nil algebra in its dimension.
    pub fn index(self) -> usize {
        match self {
            Atom::Idem => 1,
            Atom::N11 => 1,
            Atom::N22 => 2,
            Atom::N33 => 3,
            Atom::N45 => 5,
            Atom::N46 => 6,
            Atom::N58 => 8,
            Atom::N59 => 9,
            Atom::N510 => 10,
            Atom::N511 => 11,
            Atom::N512 => 12,
            Atom::N616 => 16,
            Atom::N617 => 17,
            Atom::N618 => 18,
            Atom::N619 => 19,
            Atom::N620 => 20,
            Atom::N621 => 21,
            Atom::N622 => 22,
            Atom::N623 => 23,
            Atom::N624 => 24,
            Atom::N625 => 25,
            Atom::N626 => 26,
        }
    }

    pub fn cells(self) -> Vec<Cell> {
        let mut c: Vec<Cell> = match self {
            Atom::Idem => vec![(0, 0, 1, NONE)],
            Atom::N11 => vec![],
            Atom::N22 => vec![(0, 1, 1, NONE)],
            Atom::N33 => vec![(0, 2, 1, NONE), (1, 2, 1, 0)],
            Atom::N45 => vec![(0, 3, 1, NONE), (1, 3, 1, 0), (2, 3, 1, 1)],
            Atom::N46 => vec![(0, 1, 1, NONE), (0, 2, 1, NONE), (1, 3, 1, NONE), (2, 3, -1, NONE)],
            Atom::N58 => vec![(0, 4, 1, NONE), (1, 4, 1, 0), (2, 4, 1, 1), (3, 4, 1, 2)],
            Atom::N59 => vec![(0, 3, 1, NONE), (1, 3, 1, 0), (1, 4, 1, 1), (2, 4, 1, NONE)],
            Atom::N510 => [&NIL_HEAD[..], &[(3, 4, 1, 0)]].concat(),
            Atom::N511 => [&NIL_HEAD[..], &[(3, 1, 1, 0), (3, 2, 1, 0)]].concat(),
            Atom::N512 => [&NIL_HEAD[..], &[(3, 1, 1, 0), (3, 2, 1, 0), (3, 4, 1, 1)]].concat(),
            Atom::N616 => vec![(0, 5, 1, NONE), (1, 5, 1, 0), (2, 5, 1, 1), (3, 5, 1, 2), (4, 5, 1, 3)],
            Atom::N617 => vec![(0, 4, 1, NONE), (1, 4, 1, 0), (1, 5, 1, 1), (2, 5, 1, 2), (3, 5, 1, NONE)],
            Atom::N618 => {
                vec![(0, 4, 1, NONE), (1, 4, 1, 0), (1, 5, 1, 1), (2, 4, 1, 2), (2, 5, 1, 3), (3, 5, 1, NONE)]
            }
            Atom::N619 => [&NIL_HEAD6[..], &[(3, 5, 1, 0), (4, 5, 1, 1)]].concat(),
            Atom::N620 => [&NIL_HEAD6[..], &[(3, 1, 1, 0), (3, 2, 1, 0), (4, 5, 1, 1)]].concat(),
            Atom::N621 => [&NIL_HEAD6[..], &[(3, 1, 1, 0), (3, 2, 1, 0), (3, 5, 1, 1), (4, 5, 1, 2)]].concat(),
            Atom::N622 => [&NIL_HEAD6[..], &[(3, 1, 1, 0), (3, 2, 1, 0), (4, 1, 1, 1), (4, 2, 1, 1)]].concat(),
            Atom::N623 => {
                [&NIL_HEAD6[..], &[(3, 1, 1, 0), (3, 2, 1, 0), (3, 5, 1, 1), (4, 1, 1, 2), (4, 2, 1, 2), (4, 5, 1, 3)]]
                    .concat()
            }
            Atom::N624 => {
                [&NIL_HEAD6[..], &[(3, 1, 1, 0), (3, 2, 1, 0), (3, 5, 1, 1), (4, 1, 1, 2), (4, 2, 1, 2)]].concat()
            }
            Atom::N625 => [&NIL_HEAD[..], &[(3, 1, 1, 0), (3, 2, 1, 0), (3, 5, 1, NONE)]].concat(),
            Atom::N626 => vec![
                (0, 1, 1, NONE),
                (0, 2, 1, NONE),
                (0, 3, 1, NONE),
                (1, 4, 1, NONE),
                (2, 5, 1, NONE),
                (3, 4, -1, NONE),
                (3, 5, -1, NONE),
            ],
        };
        c.sort();
        c
    }

    pub fn param_count(self) -> usize {
        self.cells().iter().map(|c| (c.3 + 1) as usize).max().unwrap_or(0)
    }

    /// Parameter index quadruples `(a, b, c, d)` with `p_a p_d - p_b p_c != 0`.
    pub fn determinant_constraints(self) -> &'static [(usize, usize, usize, usize)] {
        match self {
            Atom::N618 | Atom::N623 => &[(0, 3, 1, 2)],
            _ => &[],
        }
    }

    pub fn is_nil(self) -> bool {
        self != Atom::Idem
    }

    /// Reads parameters back from an instantiated structure matrix.
    pub fn read_params(self, a: &EvolutionAlgebra) -> Vec<Scalar> {
        let cells = self.cells();
        (0..self.param_count())
            .map(|p| {
                let c = cells.iter().find(|c| c.3 == p as i8).expect("parameter occurs");
                let v = a.constant(c.0 as usize, c.1 as usize);
                if c.2 == 1 {
                    v.clone()
                } else {
                    v.checked_div(&a.field().from_i64(c.2 as i64)).expect("nonzero coefficient")
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Nil,
    Mixed,
    Semisimple,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Nil => "nil",
            Kind::Mixed => "mixed",
            Kind::Semisimple => "semisimple",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CatalogLabel {
    pub kind: Kind,
    pub dim: usize,
    pub index: usize,
    pub params: Vec<Scalar>,
}

impl CatalogLabel {
    pub fn new(kind: Kind, dim: usize, index: usize, params: Vec<Scalar>) -> CatalogLabel {
        CatalogLabel { kind, dim, index, params }
    }

    pub fn base_name(&self) -> String {
        let letter = if self.kind == Kind::Nil { "N" } else { "E" };
        format!("{letter}_{{{},{}}}", self.dim, self.index)
    }

    pub fn entry(&self) -> Option<&'static CatalogEntry> {
        find_entry(self.dim, self.index).filter(|e| e.kind == self.kind)
    }
}

impl fmt::Display for CatalogLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base_name())?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|s| s.to_string()).collect();
            write!(f, "({})", p.join(", "))?;
        }
        Ok(())
    }
}

/// One summand in the displayed decomposition of an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// `E_{ss}`, the sum of `s` idempotent lines.
    Idempotents(usize),
    /// The nil entry `N_{dim,index}`.
    Nil(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub kind: Kind,
    pub dim: usize,
    pub index: usize,
    pub atoms: Vec<Atom>,
    /// Empty for the indecomposable nil entries.
    pub parts: Vec<Part>,
}

const GREEK: [&str; 8] = ["α", "β", "γ", "δ", "ε", "ζ", "η", "θ"];

impl CatalogEntry {
    pub fn param_count(&self) -> usize {
        self.atoms.iter().map(|a| a.param_count()).sum()
    }

    pub fn idempotent_count(&self) -> usize {
        self.atoms.iter().filter(|a| **a == Atom::Idem).count()
    }

    pub fn nil_atoms(&self) -> Vec<Atom> {
        self.atoms.iter().copied().filter(|a| a.is_nil()).collect()
    }

    pub fn label(&self, params: Vec<Scalar>) -> CatalogLabel {
        CatalogLabel::new(self.kind, self.dim, self.index, params)
    }

    /// Cells of the whole block-diagonal template, with global offsets.
    pub fn cells(&self) -> Vec<(usize, usize, i64, Option<usize>)> {
        let mut out = Vec::new();
        let (mut off, mut poff) = (0, 0);
        for atom in &self.atoms {
            for (r, c, k, p) in atom.cells() {
                let p = if p == NONE { None } else { Some(poff + p as usize) };
                out.push((off + r as usize, off + c as usize, k as i64, p));
            }
            off += atom.dim();
            poff += atom.param_count();
        }
        out
    }

    pub fn check_params(&self, params: &[Scalar]) -> Result<()> {
        let name = self.label(Vec::new()).base_name();
        if params.len() != self.param_count() {
            return Err(Error::ParamConstraintViolated(format!(
                "{name} takes {} parameters, got {}",
                self.param_count(),
                params.len()
            )));
        }
        if let Some(i) = params.iter().position(Scalar::is_zero) {
            return Err(Error::ParamConstraintViolated(format!("{name}: parameter {} is zero", i + 1)));
        }
        let mut poff = 0;
        for atom in &self.atoms {
            for &(a, b, c, d) in atom.determinant_constraints() {
                let p = &params[poff..];
                let det = &(&p[a] * &p[b]) - &(&p[c] * &p[d]);
                if det.is_zero() {
                    return Err(Error::ParamConstraintViolated(format!(
                        "{name}: {}{} - {}{} vanishes",
                        GREEK[poff + a],
                        GREEK[poff + b],
                        GREEK[poff + c],
                        GREEK[poff + d]
                    )));
                }
            }
            poff += atom.param_count();
        }
        Ok(())
    }

    pub fn instantiate(&self, field: Field, params: &[Scalar]) -> Result<EvolutionAlgebra> {
        if params.iter().any(|p| p.field() != field) {
            return Err(crate::field::FieldError::FieldMismatch.into());
        }
        self.check_params(params)?;
        let mut a = EvolutionAlgebra::zero(field, self.dim);
        for (r, c, k, p) in self.cells() {
            let base = field.from_i64(k);
            let v = match p {
                Some(i) => &base * &params[i],
                None => base,
            };
            a.set_constant(r, c, v);
        }
        Ok(a)
    }

    fn symbols(&self, offset: usize, count: usize) -> String {
        if count == 0 {
            return String::new();
        }
        format!("({})", GREEK[offset..offset + count].join(", "))
    }

    /// `N_{5,6}(α) = N_{3,3}(α) ⊕ N_{2,2}`.
    pub fn render_name(&self) -> String {
        let base = self.label(Vec::new()).base_name();
        let mut s = format!("{base}{}", self.symbols(0, self.param_count()));
        if self.parts.is_empty() {
            return s;
        }
        let mut poff = 0;
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|part| match *part {
                Part::Idempotents(k) => format!("E_{{{k}{k}}}"),
                Part::Nil(d, j) => {
                    let e = find_entry(d, j).expect("part exists");
                    let n = e.param_count();
                    let r = format!("N_{{{d},{j}}}{}", self.symbols(poff, n));
                    poff += n;
                    r
                }
            })
            .collect();
        s.push_str(" = ");
        s.push_str(&parts.join(" ⊕ "));
        s
    }

    /// The multiplication table, e.g. `e1^2 = e2 + e3, e2^2 = e4, e3^2 = -e4, e4^2 = 0`.
    pub fn render_products(&self) -> String {
        let cells = self.cells();
        let mut pieces: Vec<String> = Vec::new();
        let mut zero_run: Vec<usize> = Vec::new();
        let flush = |run: &mut Vec<usize>, pieces: &mut Vec<String>| {
            if !run.is_empty() {
                let lhs: Vec<String> = run.iter().map(|i| format!("e{}^2", i + 1)).collect();
                pieces.push(format!("{} = 0", lhs.join(" = ")));
                run.clear();
            }
        };
        for row in 0..self.dim {
            let terms: Vec<(usize, i64, Option<usize>)> =
                cells.iter().filter(|c| c.0 == row).map(|c| (c.1, c.2, c.3)).collect();
            if terms.is_empty() {
                zero_run.push(row);
                continue;
            }
            flush(&mut zero_run, &mut pieces);
            pieces.push(format!("e{}^2 = {}", row + 1, render_terms(&terms)));
        }
        flush(&mut zero_run, &mut pieces);
        pieces.join(", ")
    }

    /// `α, β ∈ F*` plus any determinant conditions; empty without parameters.
    pub fn render_constraints(&self) -> String {
        let n = self.param_count();
        if n == 0 {
            return String::new();
        }
        let mut s = format!("{} ∈ F*", GREEK[..n].join(", "));
        let mut poff = 0;
        for atom in &self.atoms {
            for &(a, b, c, d) in atom.determinant_constraints() {
                s.push_str(&format!(
                    ", {}{} - {}{} ≠ 0",
                    GREEK[poff + a],
                    GREEK[poff + b],
                    GREEK[poff + c],
                    GREEK[poff + d]
                ));
            }
            poff += atom.param_count();
        }
        s
    }
}

fn render_coefficient(k: i64, p: Option<usize>) -> String {
    let sym = p.map(|i| GREEK[i]).unwrap_or("");
    match (k, sym.is_empty()) {
        (1, _) => sym.to_string(),
        (-1, _) => format!("-{sym}"),
        (k, _) => format!("{k}{sym}"),
    }
}

type TermGroup = ((i64, Option<usize>), Vec<usize>);

fn render_terms(terms: &[(usize, i64, Option<usize>)]) -> String {
    let mut groups: Vec<TermGroup> = Vec::new();
    for &(col, k, p) in terms {
        match groups.iter_mut().find(|g| g.0 == (k, p)) {
            Some(g) => g.1.push(col),
            None => groups.push(((k, p), vec![col])),
        }
    }
    let mut out = String::new();
    for (n, ((k, p), cols)) in groups.iter().enumerate() {
        let basis: Vec<String> = cols.iter().map(|c| format!("e{}", c + 1)).collect();
        let coef = render_coefficient(*k, *p);
        let body = if cols.len() == 1 {
            format!("{coef}{}", basis[0])
        } else if coef.is_empty() {
            basis.join(" + ")
        } else {
            format!("{coef}({})", basis.join(" + "))
        };
        if n == 0 {
            out.push_str(&body);
        } else if let Some(rest) = body.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&body);
        }
    }
    out
}

enum NilDef {
    Single(Atom),
    Sum((usize, usize), (usize, usize)),
}

fn nil_defs(d: usize) -> Vec<NilDef> {
    use NilDef::{Single, Sum};
    let with_line = |count: usize| (1..=count).map(move |j| Sum((d - 1, j), (1, 1)));
    match d {
        1 => vec![Single(Atom::N11)],
        2 => vec![Sum((1, 1), (1, 1)), Single(Atom::N22)],
        3 => vec![Sum((2, 1), (1, 1)), Sum((2, 2), (1, 1)), Single(Atom::N33)],
        4 => {
            let mut v: Vec<NilDef> = with_line(3).collect();
            v.extend([Sum((2, 2), (2, 2)), Single(Atom::N45), Single(Atom::N46)]);
            v
        }
        5 => {
            let mut v: Vec<NilDef> = with_line(5).collect();
            v.extend([Sum((3, 3), (2, 2)), Sum((4, 6), (1, 1))]);
            v.extend([Atom::N58, Atom::N59, Atom::N510, Atom::N511, Atom::N512].map(Single));
            v
        }
        6 => {
            let mut v: Vec<NilDef> = with_line(12).collect();
            v.extend([Sum((4, 5), (2, 2)), Sum((3, 3), (3, 3)), Sum((4, 4), (2, 2))]);
            v.extend(
                [
                    Atom::N616,
                    Atom::N617,
                    Atom::N618,
                    Atom::N619,
                    Atom::N620,
                    Atom::N621,
                    Atom::N622,
                    Atom::N623,
                    Atom::N624,
                    Atom::N625,
                    Atom::N626,
                ]
                .map(Single),
            );
            // The one decomposable sum that has no slot below the indecomposables.
            v.push(Sum((4, 6), (2, 2)));
            v
        }
        _ => Vec::new(),
    }
}

pub const MAX_DIM: usize = 6;

struct Catalog {
    entries: Vec<CatalogEntry>,
    by_label: HashMap<(usize, usize), usize>,
    by_atoms: HashMap<(usize, Vec<Atom>), usize>,
}

fn build() -> Catalog {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut by_label: HashMap<(usize, usize), usize> = HashMap::new();
    for d in 1..=MAX_DIM {
        for (j, def) in nil_defs(d).into_iter().enumerate() {
            let (atoms, parts) = match def {
                NilDef::Single(a) => (vec![a], Vec::new()),
                NilDef::Sum(l, r) => {
                    let mut atoms = entries[by_label[&l]].atoms.clone();
                    atoms.extend(entries[by_label[&r]].atoms.iter().copied());
                    (atoms, vec![Part::Nil(l.0, l.1), Part::Nil(r.0, r.1)])
                }
            };
            by_label.insert((d, j + 1), entries.len());
            entries.push(CatalogEntry { kind: Kind::Nil, dim: d, index: j + 1, atoms, parts });
        }
        let mut index = nil_defs(d).len();
        for s in 1..=d {
            let mut targets: Vec<Option<usize>> = Vec::new();
            if s == d {
                targets.push(None);
            } else {
                targets.extend((1..=nil_defs(d - s).len()).map(Some));
            }
            for t in targets {
                index += 1;
                let mut atoms = vec![Atom::Idem; s];
                let mut parts = vec![Part::Idempotents(s)];
                let kind = match t {
                    Some(j) => {
                        atoms.extend(entries[by_label[&(d - s, j)]].atoms.iter().copied());
                        parts.push(Part::Nil(d - s, j));
                        Kind::Mixed
                    }
                    None => Kind::Semisimple,
                };
                by_label.insert((d, index), entries.len());
                entries.push(CatalogEntry { kind, dim: d, index, atoms, parts });
            }
        }
    }
    let mut by_atoms = HashMap::new();
    for (i, e) in entries.iter().enumerate() {
        let mut nil = e.nil_atoms();
        nil.sort();
        let prev = by_atoms.insert((e.idempotent_count(), nil), i);
        assert!(prev.is_none(), "duplicate atom signature");
    }
    Catalog { entries, by_label, by_atoms }
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// All entries of dimension `1..=6`, in catalog order.
pub fn entries() -> &'static [CatalogEntry] {
    &catalog().entries
}

pub fn find_entry(dim: usize, index: usize) -> Option<&'static CatalogEntry> {
    let c = catalog();
    c.by_label.get(&(dim, index)).map(|&i| &c.entries[i])
}

/// The entry with `s` idempotents and the given multiset of nil atoms.
pub fn find_by_atoms(s: usize, nil_atoms: &[Atom]) -> Option<&'static CatalogEntry> {
    let mut key = nil_atoms.to_vec();
    key.sort();
    let c = catalog();
    c.by_atoms.get(&(s, key)).map(|&i| &c.entries[i])
}

/// The structure matrix of a labelled catalog algebra.
pub fn canonical_algebra(label: &CatalogLabel, field: Field) -> Result<EvolutionAlgebra> {
    let entry = label.entry().ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    entry.instantiate(field, &label.params)
}

/// Every parameter tuple drawn from `grid` that satisfies the entry's constraints.
pub fn param_tuples(entry: &CatalogEntry, grid: &[Scalar]) -> Vec<Vec<Scalar>> {
    let n = entry.param_count();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if n > 0 && grid.is_empty() {
        return out;
    }
    loop {
        let params: Vec<Scalar> = idx.iter().map(|&i| grid[i].clone()).collect();
        if entry.check_params(&params).is_ok() {
            out.push(params);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < grid.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All catalog instances of dimension at most `max_dim` over the parameter grid.
pub fn emit_catalog(field: Field, max_dim: usize, grid: &[Scalar]) -> Result<Vec<(CatalogLabel, EvolutionAlgebra)>> {
    if let Some(z) = grid.iter().find(|s| s.is_zero() || s.field() != field) {
        return Err(Error::ParamConstraintViolated(format!("grid value {z} is not a nonzero element of {field}")));
    }
    let mut out = Vec::new();
    for entry in entries().iter().filter(|e| e.dim <= max_dim) {
        for params in param_tuples(entry, grid) {
            let a = entry.instantiate(field, &params)?;
            out.push((entry.label(params), a));
        }
    }
    Ok(out)
}
