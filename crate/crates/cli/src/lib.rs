//! Commands behind the `evalg` binary. Each returns a [`Report`] or writes files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use evalg_core::algebra::format_element;
use evalg_core::catalog::{entries, param_tuples, CatalogEntry, Kind};
use evalg_core::classify::{classify, format_matrix, verify_isomorphism};
use evalg_core::decomposition::{decomposability_hint, graph_components, wedderburn, DecomposabilityHint};
use evalg_core::identities::{
    annihilator_chain, dim_u_square, is_associative, is_fourth_power_associative, is_jordan, is_nil,
    is_power_associative, nil_profile, CheckReport,
};
use evalg_core::linalg::Matrix;
use evalg_core::random::{random_algebra, RandomMode};
use evalg_core::{parse_algebra_file, serialize_algebra_file, EvolutionAlgebra, Field, Scalar};

/// Ordered `key: value` lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn lines(&self) -> &[(String, String)] {
        &self.lines
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Assoc,
    Pa4,
    Pa,
    Jordan,
    Nil,
    Chain,
}

impl Check {
    pub const ALL: [Check; 6] = [Check::Assoc, Check::Pa4, Check::Pa, Check::Jordan, Check::Nil, Check::Chain];

    pub fn key(self) -> &'static str {
        match self {
            Check::Assoc => "assoc",
            Check::Pa4 => "pa4",
            Check::Pa => "pa",
            Check::Jordan => "jordan",
            Check::Nil => "nil",
            Check::Chain => "chain",
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.key() == s)
            .ok_or_else(|| format!("unknown check `{s}` (expected assoc, pa4, pa, jordan, nil or chain)"))
    }
}

pub fn read_algebra(path: &Path) -> anyhow::Result<EvolutionAlgebra> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_algebra_file(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A square matrix stored in the algebra file format.
pub fn read_matrix(path: &Path) -> anyhow::Result<Matrix> {
    Ok(read_algebra(path)?.rows())
}

pub fn matrix_file(field: Field, m: &Matrix) -> anyhow::Result<String> {
    Ok(serialize_algebra_file(&EvolutionAlgebra::new(field, m.clone())?))
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn optional<T: fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn push_check(report: &mut Report, key: &str, r: &CheckReport) {
    report.push(key, r.verdict);
    if let Some(w) = &r.witness {
        report.push(format!("{key}.witness"), w);
    }
}

pub fn cmd_check(a: &EvolutionAlgebra, which: &[Check]) -> anyhow::Result<Report> {
    let mut r = Report::default();
    r.push("field", a.field());
    r.push("dim", a.dim());
    for &c in which {
        match c {
            Check::Assoc => push_check(&mut r, "assoc", &is_associative(a)),
            Check::Pa4 => push_check(&mut r, "pa4", &is_fourth_power_associative(a)),
            Check::Pa => push_check(&mut r, "pa", &is_power_associative(a)),
            Check::Jordan => push_check(&mut r, "jordan", &is_jordan(a)),
            Check::Nil => {
                push_check(&mut r, "nil", &is_nil(a));
                let p = nil_profile(a);
                r.push("nil.right_nilpotency_index", optional(p.right_nilpotency_index));
                r.push("nil.index", optional(p.nil_index_pa));
            }
            Check::Chain => {
                let chain = annihilator_chain(a);
                r.push("chain.dims", list(&chain.dims()));
                r.push("chain.reaches_full", chain.reaches_full);
                r.push("type", list(&chain.type_sequence));
                r.push("dim_u_square", optional(dim_u_square(a)));
            }
        }
    }
    Ok(r)
}

/// The classification report and the verified isomorphism.
pub fn cmd_classify(a: &EvolutionAlgebra) -> anyhow::Result<(Report, Matrix)> {
    let c = classify(a)?;
    let canonical = evalg_core::canonical_algebra(&c.label, a.field())?;
    let verified = verify_isomorphism(a, &canonical, &c.iso)?.verdict;
    let mut r = Report::default();
    r.push("label", &c.label);
    r.push("kind", c.label.kind);
    r.push("dim", c.label.dim);
    r.push("index", c.label.index);
    r.push("params", list(&c.label.params));
    r.push("iso", format_matrix(&c.iso));
    r.push("canonical_basis", format_matrix(&c.canonical_basis));
    r.push("verified", verified);
    r.push("invariants.type", list(&c.invariants.type_sequence));
    r.push("invariants.dim_ann", c.invariants.dim_ann);
    r.push("invariants.associative", c.invariants.associative);
    r.push("invariants.dim_u_square", optional(c.invariants.dim_u_square));
    r.push("wedderburn.s", c.invariants.idempotents);
    r.push("wedderburn.radical", optional(c.radical.as_ref()));
    r.push("flags", list(&c.flags));
    Ok((r, c.iso))
}

fn one_based(xs: &[usize]) -> String {
    list(&xs.iter().map(|i| i + 1).collect::<Vec<_>>())
}

pub fn cmd_decompose(a: &EvolutionAlgebra) -> anyhow::Result<Report> {
    let mut r = Report::default();
    let comps = graph_components(a);
    r.push("components", comps.len());
    for (k, c) in comps.iter().enumerate() {
        r.push(format!("component.{}", k + 1), one_based(&c.indices));
    }
    r.push(
        "decomposability_hint",
        match decomposability_hint(a) {
            DecomposabilityHint::DecomposableByAnnBound => "decomposable_by_ann_bound",
            DecomposabilityHint::Unknown => "unknown",
        },
    );
    let pa = is_power_associative(a);
    push_check(&mut r, "pa", &pa);
    if !pa.verdict {
        return Ok(r);
    }
    let w = wedderburn(a)?;
    r.push("wedderburn.s", w.s);
    r.push("wedderburn.idempotents", list(&w.idempotents.iter().map(|u| format_element(u)).collect::<Vec<_>>()));
    r.push("wedderburn.radical_indices", one_based(&w.radical_indices));
    let radical_label = match &w.radical {
        Some(rad) if rad.dim() <= evalg_core::catalog::MAX_DIM => Some(classify(rad)?.label),
        _ => None,
    };
    r.push("wedderburn.radical", optional(radical_label));
    r.push("wedderburn.basis_change", format_matrix(&w.basis_change));
    Ok(r)
}

/// One row per entry: name, products with constraints, type, associativity.
pub fn table_row(entry: &CatalogEntry, field: Field, grid: &[Scalar]) -> anyhow::Result<String> {
    let tuples = param_tuples(entry, grid);
    if tuples.is_empty() {
        bail!("the grid admits no parameters for {}", entry.render_name());
    }
    let mut types = Vec::new();
    let mut assoc = Vec::new();
    for p in &tuples {
        let a = entry.instantiate(field, p)?;
        types.push(annihilator_chain(&a).type_sequence);
        assoc.push(is_associative(&a).verdict);
    }
    types.dedup();
    assoc.dedup();
    let ty = match (entry.kind, types.as_slice()) {
        (Kind::Nil, [t]) => list(t),
        (Kind::Nil, _) => "varies".to_string(),
        _ => "-".to_string(),
    };
    let assoc = match assoc.as_slice() {
        [true] => "Yes",
        [false] => "No",
        _ => "varies",
    };
    let mut products = entry.render_products();
    let constraints = entry.render_constraints();
    if !constraints.is_empty() {
        products = format!("{products} with {constraints}");
    }
    Ok(format!("{} | {products} | {ty} | {assoc}", entry.render_name()))
}

pub fn table_text(field: Field, dims: std::ops::RangeInclusive<usize>, grid: &[Scalar]) -> anyhow::Result<String> {
    let mut out = String::new();
    for entry in entries().iter().filter(|e| dims.contains(&e.dim)) {
        out.push_str(&table_row(entry, field, grid)?);
        out.push('\n');
    }
    Ok(out)
}

/// Every grid instance of the given dimension, in the algebra file format.
pub fn instances_text(field: Field, dim: usize, grid: &[Scalar]) -> anyhow::Result<String> {
    let mut out = String::new();
    for entry in entries().iter().filter(|e| e.dim == dim) {
        for p in param_tuples(entry, grid) {
            out.push_str(&format!("# {}\n", entry.label(p.clone())));
            out.push_str(&serialize_algebra_file(&entry.instantiate(field, &p)?));
        }
    }
    Ok(out)
}

/// Writes `table-dim<d>.txt` and `instances-dim<d>.txt` for each `d <= max_dim`.
pub fn cmd_tables(field: Field, max_dim: usize, grid: &[Scalar], out_dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    if max_dim == 0 || max_dim > evalg_core::catalog::MAX_DIM {
        bail!("dimension must be between 1 and {}", evalg_core::catalog::MAX_DIM);
    }
    if let Some(z) = grid.iter().find(|s| s.is_zero()) {
        bail!("grid value {z} is zero");
    }
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let mut written = Vec::new();
    for d in 1..=max_dim {
        let table = out_dir.join(format!("table-dim{d}.txt"));
        fs::write(&table, table_text(field, d..=d, grid)?)?;
        let inst = out_dir.join(format!("instances-dim{d}.txt"));
        fs::write(&inst, instances_text(field, d, grid)?)?;
        written.push(table);
        written.push(inst);
    }
    Ok(written)
}

pub fn parse_grid(field: Field, text: &str) -> anyhow::Result<Vec<Scalar>> {
    text.split(',')
        .map(|s| field.parse_scalar(s.trim()).map_err(|e| anyhow::anyhow!("grid value `{}`: {e}", s.trim())))
        .collect()
}

/// The default grid: all of `F_p^*`, or `{1, 2, 3, -1}` over ℚ.
pub fn default_grid(field: Field) -> Vec<Scalar> {
    match field.nonzero_elements() {
        Some(all) => all,
        None => [1, 2, 3, -1].iter().map(|&k| field.from_i64(k)).collect(),
    }
}

pub fn cmd_random(field: Field, dim: usize, seed: u64, mode: RandomMode) -> anyhow::Result<String> {
    Ok(serialize_algebra_file(&random_algebra(field, dim, mode, seed)?.algebra))
}

pub fn cmd_verify(a: &EvolutionAlgebra, b: &EvolutionAlgebra, m: &Matrix) -> anyhow::Result<Report> {
    let mut r = Report::default();
    let check = verify_isomorphism(a, b, m)?;
    r.push("isomorphism", check.verdict);
    if let Some(w) = &check.witness {
        r.push("isomorphism.witness", w);
        if w.indices.len() == 2 {
            r.push("isomorphism.pair", format!("({}, {})", w.indices[0] + 1, w.indices[1] + 1));
        }
    }
    Ok(r)
}
