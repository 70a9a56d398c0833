use rand::Rng;

use super::{beta_file, sample, RunOptions, SuiteReport, TrialConfig, TrialOutcome, Violation, Witness};
use crate::ext::{beta_to_extension, counterexample_check, BetaDomain, BetaMap, ExtError};
use crate::io::ModuleFile;
use crate::matrix::Vector;
use crate::module::{FdModule, Subspace};

fn violates(n: &FdModule) -> bool {
    n.algebra_dimension() > n.dim()
}

/// Replace `n` by smaller modules with `dim S/ann > dim` while possible:
/// quotients by a socle line, then submodules of codimension one (these
/// contain `m N`). Each step re-verifies; the first success is kept.
pub fn shrink_module(n: &FdModule) -> FdModule {
    let mut cur = n.clone();
    'outer: loop {
        let field = cur.field();
        for s in cur.socle().basis() {
            let line = Subspace::span(field, cur.dim(), [s.clone()]);
            if let Ok(q) = cur.quotient_by_submodule(&line) {
                if violates(&q) {
                    cur = q;
                    continue 'outer;
                }
            }
        }
        let top = cur.radical_image();
        let free = top.free_coordinates();
        for &skip in &free {
            let mut h = top.clone();
            for &f in free.iter().filter(|&&f| f != skip) {
                h.insert(cur.unit_vector(f));
            }
            if let Ok(sub) = cur.restrict(&h) {
                if violates(&sub) {
                    cur = sub;
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

/// Zero out images of `beta` one at a time while the extension still has
/// `dim S/ann N > dim N`.
fn shrink_beta(beta: &BetaMap) -> BetaMap {
    let mut cur = beta.clone();
    for i in 0..cur.images().len() {
        if crate::matrix::is_zero_vector(&cur.images()[i]) {
            continue;
        }
        let mut images = cur.images().to_vec();
        images[i] = cur.target().zero_vector();
        let Ok(candidate) = BetaMap::on_maximal(cur.target().clone(), images) else {
            continue;
        };
        if candidate.validate().is_ok() {
            if let Ok(ext) = beta_to_extension(&candidate) {
                if violates(&ext.total) {
                    cur = candidate;
                }
            }
        }
    }
    cur
}

/// Build modules by repeated extension: start from a random cyclic
/// quotient and extend by `S/m` along random maps in `Hom(m, M)` until
/// `cfg.max_dim`, checking `dim S/ann N <= dim N` at every stage. A
/// violation is recorded with its map and a shrunk module.
pub fn search_counterexamples(cfg: &TrialConfig, opts: RunOptions) -> SuiteReport {
    let field = cfg.field;
    super::run_trials("search", cfg, opts, Vec::new(), |t, rng| {
        let mut out = TrialOutcome::new(Some(t));
        let max_dim = cfg.max_dim.max(2);
        let start = rng.random_range(1..max_dim);
        let mut m = match sample::cyclic_module(rng, field, cfg.nvars, start, cfg.degree_cap) {
            Ok(r) => r.into_module(),
            Err(_) => return out.skip("degree_cap"),
        };
        out.accepted = true;
        while m.dim() < max_dim {
            let step = sample::hom_element(rng, &m).and_then(|b| {
                let n = beta_to_extension(&b)?.total;
                Ok::<_, ExtError>((b, n))
            });
            let (beta, n) = match step {
                Ok(x) => x,
                Err(e) => {
                    out.error("extension", e);
                    return out;
                }
            };
            out.checks += 1;
            out.count("stages");
            let (a, d) = (n.algebra_dimension(), n.dim());
            if a > d {
                let beta = shrink_beta(&beta);
                let n = beta_to_extension(&beta).map(|e| e.total).unwrap_or(n);
                let small = shrink_module(&n);
                out.violation(Violation {
                    trial: None,
                    inequality: "dim S/ann N <= dim N".into(),
                    lhs: n.algebra_dimension(),
                    rhs: n.dim(),
                    witness: Witness::Extension { beta: beta_file(&beta) },
                    shrunk: Some(ModuleFile::from_module(&small)),
                });
                out.count(&format!("shrunk_to_dim_{}", small.dim()));
                break;
            }
            m = n;
        }
        out
    })
}

/// Random `(M, b)`: the inequality `dim S/ann M + dim b(ann M) <= dim M + 1`
/// must agree with `dim S/ann N <= dim N` for the extension `N`, the latter
/// computed separately by monomial rank; changing `b` by a coboundary keeps
/// the verdict; `b(ann M)` lies in the socle.
pub fn suite_oracle_equivalence(cfg: &TrialConfig, opts: RunOptions) -> SuiteReport {
    let field = cfg.field;
    super::run_trials("oracle", cfg, opts, Vec::new(), |t, rng| {
        let mut out = TrialOutcome::new(Some(t));
        let result = (|| -> Result<(), ExtError> {
            let m = sample::module(rng, field, cfg.nvars, cfg.max_dim, cfg.degree_cap)?;
            let beta = sample::hom_element(rng, &m)?;
            out.accepted = true;
            let report = counterexample_check(&beta)?;
            let n = beta_to_extension(&beta)?.total;
            let direct = n.algebra_dimension_by_monomials() > n.dim();
            out.check("verdict equals direct check", report.is_counterexample() == direct, || {
                format!("{} vs algebra dimension {} on {}", report.summary(), n.algebra_dimension_by_monomials(), n.dim())
            });
            out.check("report is internally consistent", report.consistent, || report.summary());
            let soc = m.socle();
            let in_soc = report
                .witnesses
                .iter()
                .all(|w| crate::io::parse_vector(field, w).map(|v| soc.contains(&v)).unwrap_or(false));
            out.check("b(ann M) lies in the socle", in_soc, || report.summary());
            let u: Vector = sample::vector(rng, field, m.dim());
            let shifted = beta.add(&BetaMap::coboundary(m.clone(), BetaDomain::Maximal, &u)?);
            let other = counterexample_check(&shifted)?;
            out.check("verdict depends only on the class", other.verdict == report.verdict, || {
                format!("{} vs {}", report.summary(), other.summary())
            });
            if report.is_counterexample() {
                out.count("counterexamples");
            } else {
                out.count("holds");
            }
            Ok(())
        })();
        if let Err(e) = result {
            out.error("oracle trial", e);
        }
        out
    })
}

/// One or two commuting matrices: `dim S/ann N <= dim N` always. Half of
/// the trials take a sparse random matrix and a polynomial in it, half
/// take a random module in `cfg.nvars <= 2` variables.
pub fn suite_gerstenhaber_pairs(cfg: &TrialConfig, opts: RunOptions) -> SuiteReport {
    let field = cfg.field;
    let nvars = cfg.nvars.clamp(1, 2);
    super::run_trials("gerstenhaber", cfg, opts, Vec::new(), |t, rng| {
        let mut out = TrialOutcome::new(Some(t));
        let n = if rng.random_bool(0.5) {
            let d = rng.random_range(1..=cfg.max_dim.max(1));
            let a = sample::sparse_matrix(rng, field, d, 0.3);
            let mut mats = vec![a.clone()];
            if nvars == 2 {
                mats.push(sample::polynomial_in(rng, &a));
            }
            out.count("polynomial_pairs");
            FdModule::from_matrices(field, mats)
                .map_err(ExtError::from)
        } else {
            out.count("extension_modules");
            sample::module(rng, field, nvars, cfg.max_dim, cfg.degree_cap)
        };
        match n {
            Ok(n) => {
                out.accepted = true;
                let (a, b) = (n.algebra_dimension(), n.algebra_dimension_by_monomials());
                out.check("two algebra dimension routes agree", a == b, || format!("{a} vs {b}"));
                out.check("dim S/ann N <= dim N", a <= n.dim(), || format!("{a} > {}", n.dim()));
            }
            Err(e) => out.error("module", e),
        }
        out
    })
}
