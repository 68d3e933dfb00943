//! Benchmark tables: every (instance, method, seed) cell constructs a family
//! and is bracketed against the instance's certified lower bound and, when
//! the budget allows, its exact value.

use std::time::Instant;

use crate::bounds::{bound_report, ReportOptions};
use crate::constructions::{construct, Method, Options};
use crate::error::{Error, ErrorClass, Result};
use crate::exact::Budget;
use crate::generate::{generate, GeneratorSpec};
use crate::hypergraph::Hypergraph;
use crate::par::{self, Exec};

/// Column order of [`to_csv`].
pub const COLUMNS: [&str; 11] = [
    "instance",
    "n",
    "m",
    "method",
    "seed",
    "size",
    "paper_bound",
    "exact",
    "lower_bound",
    "wall_time",
    "status",
];

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub instances: Vec<GeneratorSpec>,
    pub methods: Vec<Method>,
    pub seeds: Vec<u64>,
    pub exec: Exec,
    pub budget: Budget,
    pub run_exact: bool,
    /// Omit wall times so that identical configurations give identical
    /// tables.
    pub deterministic: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            instances: Vec::new(),
            methods: vec![Method::Random, Method::Degeneracy],
            seeds: vec![0],
            exec: Exec::default(),
            budget: Budget::default(),
            run_exact: true,
            deterministic: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub method: Method,
    pub seed: u64,
    /// Absent when the method does not apply to the instance.
    pub size: Option<usize>,
    pub paper_bound: Option<f64>,
    pub exact: Option<usize>,
    pub lower_bound: usize,
    /// Seconds; absent in deterministic mode.
    pub wall_time: Option<f64>,
    /// `ok`, or the reason the method was skipped.
    pub status: String,
}

struct Instance {
    name: String,
    h: Hypergraph,
    exact: Option<usize>,
    lower: usize,
}

fn prepare(spec: &GeneratorSpec, cfg: &BenchConfig) -> Result<Instance> {
    let h = generate(spec)?;
    let name = spec.name();
    let opts = ReportOptions {
        exec: Exec::Sequential,
        budget: cfg.budget,
        run_exact: cfg.run_exact,
        methods: Vec::new(),
        ..ReportOptions::default()
    };
    let report = bound_report(&h, &name, &opts)?;
    Ok(Instance {
        name,
        exact: report.exact(),
        lower: report.best_lower(),
        h,
    })
}

fn cell(inst: &Instance, method: Method, seed: u64, cfg: &BenchConfig) -> Result<BenchRow> {
    let opts = Options {
        seed,
        exec: Exec::Sequential,
        ..Options::default()
    };
    let start = Instant::now();
    let outcome = construct(&inst.h, method, &opts);
    let elapsed = start.elapsed().as_secs_f64();
    let mut row = BenchRow {
        instance: inst.name.clone(),
        n: inst.h.n(),
        m: inst.h.m(),
        method,
        seed,
        size: None,
        paper_bound: None,
        exact: inst.exact,
        lower_bound: inst.lower,
        wall_time: (!cfg.deterministic).then_some(elapsed),
        status: "ok".into(),
    };
    match outcome {
        Ok(c) => {
            let size = c.size();
            if size < inst.lower || inst.exact.is_some_and(|x| size < x) {
                return Err(Error::Verification(format!(
                    "{} with {method}: size {size} below lower bound {} or exact {:?}",
                    inst.name, inst.lower, inst.exact
                )));
            }
            row.size = Some(size);
            row.paper_bound = Some(c.ledger.paper_bound);
        }
        Err(e) if e.class() != ErrorClass::Verification => {
            row.status = format!("skipped: {e}");
        }
        Err(e) => return Err(e),
    }
    Ok(row)
}

/// Runs all cells. Instances are prepared and cells constructed in
/// parallel; rows come back in (instance, method, seed) order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let instances: Vec<Instance> = par::map(cfg.exec, &cfg.instances, |s| prepare(s, cfg))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut methods = cfg.methods.clone();
    methods.sort();
    methods.dedup();
    let mut seeds = cfg.seeds.clone();
    seeds.sort_unstable();
    seeds.dedup();
    let mut keys = Vec::new();
    for i in 0..instances.len() {
        for &m in &methods {
            for &s in &seeds {
                keys.push((i, m, s));
            }
        }
    }
    par::map(cfg.exec, &keys, |&(i, m, s)| cell(&instances[i], m, s, cfg))
        .into_iter()
        .collect()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "NA".to_string(), |v| v.to_string())
}

/// CSV with the fixed [`COLUMNS`]; missing values are `NA`, reals use six
/// decimals.
pub fn to_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.method.to_string(),
            r.seed.to_string(),
            opt(r.size),
            opt(r.paper_bound.map(|b| format!("{b:.6}"))),
            opt(r.exact),
            r.lower_bound.to_string(),
            opt(r.wall_time.map(|t| format!("{t:.6}"))),
            r.status.clone(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cliques() -> BenchConfig {
        BenchConfig {
            instances: (4..=8).map(|n| GeneratorSpec::Clique { n }).collect(),
            seeds: vec![3, 1],
            ..BenchConfig::default()
        }
    }

    #[test]
    fn clique_table_is_bracketed() {
        let rows = run_bench(&cliques()).unwrap();
        assert_eq!(rows.len(), 5 * 2 * 2);
        for r in &rows {
            let size = r.size.unwrap();
            assert!(size >= r.lower_bound);
            assert!(r.exact.map_or(true, |x| size >= x));
            let omega_bound = ((r.n / 2) as f64).log2();
            assert!(size as f64 >= omega_bound - 1e-9);
        }
        assert_eq!(rows[0].exact, Some(3));
    }

    #[test]
    fn deterministic_tables_repeat() {
        let a = to_csv(&run_bench(&cliques()).unwrap()).unwrap();
        let seq = BenchConfig {
            exec: Exec::Sequential,
            ..cliques()
        };
        let b = to_csv(&run_bench(&seq).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.lines().next().unwrap().starts_with("instance,n,m,method,seed"));
        assert!(a.contains(",NA,ok"));
    }

    #[test]
    fn inapplicable_methods_are_skipped() {
        let cfg = BenchConfig {
            instances: vec![GeneratorSpec::Path { n: 5 }],
            methods: vec![Method::Hypercube],
            ..BenchConfig::default()
        };
        let rows = run_bench(&cfg).unwrap();
        assert!(rows[0].status.starts_with("skipped"));
        assert_eq!(rows[0].size, None);
    }
}
