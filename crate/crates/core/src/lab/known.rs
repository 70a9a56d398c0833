use std::time::Instant;

use super::{sample, RunOptions, SuiteReport, Timing, TrialConfig, TrialOutcome};
use crate::ext::{beta_to_extension, counterexample_check, cyclic_counterexample_check, BetaMap};
use crate::field::FieldSpec;
use crate::matrix::{DenseMatrix, Vector};
use crate::module::{annihilator, cyclic_quotient, FdModule, DEFAULT_DEGREE_CAP};
use crate::poly::{parse_poly, IdealGens};

/// `E13, E14, E23, E24` acting on `k^4` as `x, y, z, w`.
pub fn four_matrix_module(field: FieldSpec) -> FdModule {
    let e = |i, j| DenseMatrix::unit(field, 4, i, j);
    FdModule::from_matrices(field, vec![e(0, 2), e(0, 3), e(1, 2), e(1, 3)]).expect("E13, E14, E23, E24 commute")
}

/// Exhaustive sweep when the field has at most this many vectors of length 3.
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// The worked examples: the four-matrix module, the map behind it, and the
/// three-dimensional extension of `S/(x, y^2, z)` without a generator.
/// `cfg.field` is the field; `cfg.trials` random candidates replace the
/// generator sweep when the field is too large to enumerate.
pub fn reproduce_known(cfg: &TrialConfig, opts: RunOptions) -> SuiteReport {
    let start = Instant::now();
    let f = cfg.field;
    let mut out = TrialOutcome::new(None);

    let e = four_matrix_module(f);
    let (ad, am) = (e.algebra_dimension(), e.algebra_dimension_by_monomials());
    out.check("four matrices generate a 5-dimensional algebra", ad == 5 && am == 5 && e.dim() == 4, || {
        format!("algebra dimension {ad} (by monomials {am}) on k^{}", e.dim())
    });

    match four_matrix_pair(f) {
        Ok((ring, beta)) => match (counterexample_check(&beta), cyclic_counterexample_check(&ring, &beta)) {
            (Ok(r), Ok(c)) => {
                let terms: Vec<usize> = r.lhs_terms.iter().chain(&r.rhs_terms).map(|t| t.value).collect();
                out.check("four-matrix map is a counterexample", r.is_counterexample() && r.consistent, || r.summary());
                out.check("four-matrix map terms", terms == [3, 2, 3, 1], || r.summary());
                out.check(
                    "four-matrix extension",
                    r.extension_dim == 4 && r.extension_algebra_dim == 5,
                    || format!("dim {} algebra {}", r.extension_dim, r.extension_algebra_dim),
                );
                out.check("four-matrix image of I", c.lhs == 2 && c.is_counterexample(), || c.summary());
            }
            (Err(e), _) | (_, Err(e)) => out.error("four-matrix map", e),
        },
        Err(e) => out.error("four-matrix map", e),
    }

    let mut candidates = 0;
    match small_extension(f) {
        Ok(n) => {
            out.check("small extension dimension", n.dim() == 3, || n.dim().to_string());
            let ann = annihilator(&n);
            let q = ann.as_ref().map(|a| a.quotient_dim).unwrap_or(0);
            out.check("small extension dim S/ann", q == 3 && n.algebra_dimension() == 3, || q.to_string());
            let listed = IdealGens::parse(f, 3, &["z", "y^2", "x*y", "x^2"]).expect("valid");
            let kills = listed.gens().iter().all(|g| n.annihilates(g).unwrap_or(false));
            let colength = cyclic_quotient(&listed, cfg.degree_cap).map(|r| r.dim());
            out.check("small extension annihilator", kills && colength == Ok(3), || {
                format!("generators annihilate: {kills}, colength {colength:?}")
            });
            let mut generator: Option<Vector> = None;
            let mut try_v = |v: Vector| {
                candidates += 1;
                if generator.is_none() && n.submodule_generated([v.clone()]).dim() == n.dim() {
                    generator = Some(v);
                }
            };
            match f.modulus().filter(|&p| (p as u64).pow(3) <= EXHAUSTIVE_LIMIT) {
                Some(_) => {
                    let elems: Vec<_> = f.elements().unwrap().collect();
                    for a in &elems {
                        for b in &elems {
                            for c in &elems {
                                try_v(vec![a.clone(), b.clone(), c.clone()]);
                            }
                        }
                    }
                }
                None => {
                    let mut rng = cfg.rng(0);
                    for _ in 0..cfg.trials {
                        try_v(sample::vector(&mut rng, f, 3));
                    }
                }
            }
            out.check("small extension has no generator", generator.is_none(), || format!("{generator:?}"));
            out.check("small extension is not cyclic", n.is_cyclic() == Ok(false), || "cyclic".into());
        }
        Err(e) => out.error("small extension", e),
    }
    out.stats.insert("generator_candidates".into(), candidates);
    out.accepted = true;

    let mut report = SuiteReport::empty("reproduce-known", cfg);
    report.trials_run = candidates;
    report.absorb(out);
    if opts.timing {
        let us = start.elapsed().as_micros() as u64;
        report.timing = Some(Timing {
            total_us: us,
            mean_trial_us: us,
            max_trial_us: us,
        });
    }
    report
}

/// `S/((x, y) + m^2)` in four variables with `x -> z`, `y -> w`; the extension
/// is four-dimensional with a five-dimensional algebra, like the four-matrix
/// module up to renaming variables.
pub fn four_matrix_pair(f: FieldSpec) -> Result<(crate::module::QuotientRing, BetaMap), crate::ext::ExtError> {
    let ring = cyclic_quotient(&IdealGens::parse(f, 4, &["x", "y", "z^2", "z*w", "w^2"])?, DEFAULT_DEGREE_CAP)?;
    let m = ring.module().clone();
    let z = ring.normal_form(&parse_poly("z", 4, f)?)?;
    let w = ring.normal_form(&parse_poly("w", 4, f)?)?;
    let beta = BetaMap::on_maximal(m.clone(), vec![z, w, m.zero_vector(), m.zero_vector()])?;
    Ok((ring, beta))
}

/// The extension of `S/m` by `S/(x, y^2, z)` with `x -> y`.
pub fn small_extension(f: FieldSpec) -> Result<FdModule, crate::ext::ExtError> {
    let ring = cyclic_quotient(&IdealGens::parse(f, 3, &["x", "y^2", "z"])?, DEFAULT_DEGREE_CAP)?;
    let m = ring.module().clone();
    let y = ring.normal_form(&parse_poly("y", 3, f)?)?;
    let beta = BetaMap::on_maximal(m.clone(), vec![y, m.zero_vector(), m.zero_vector()])?;
    Ok(beta_to_extension(&beta)?.total)
}
