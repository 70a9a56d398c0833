use super::{ideal_beta_file, sample, RunOptions, SuiteReport, TrialConfig, TrialOutcome, Violation, Witness};
use crate::ext::{cyclic_counterexample_check, ExtError};
use crate::module::{cyclic_quotient, ModuleError};

/// Maps `b: m -> S/I` for random `I` of colength at most `cfg.max_dim` in
/// three variables: `dim b(I) <= 1`, `b(I)` lies in the socle, and the two
/// ways of deciding the verdict agree.
pub fn suite_main_theorem(cfg: &TrialConfig, opts: RunOptions) -> SuiteReport {
    let field = cfg.field;
    super::run_trials("main-theorem", cfg, opts, Vec::new(), |t, rng| {
        let mut out = TrialOutcome::new(Some(t));
        let ideal = sample::cyclic_ideal(rng, field, cfg.nvars, cfg.max_dim);
        let ring = match cyclic_quotient(&ideal, cfg.degree_cap) {
            Ok(r) => r,
            Err(ModuleError::DegreeCapExceeded(_)) => return out.skip("degree_cap"),
            Err(e) => {
                out.error("quotient", e);
                return out;
            }
        };
        out.accepted = true;
        let result = sample::hom_element(rng, ring.module()).and_then(|beta| {
            let r = cyclic_counterexample_check(&ring, &beta)?;
            Ok::<_, ExtError>((beta, r))
        });
        let (beta, report) = match result {
            Ok(x) => x,
            Err(e) => {
                out.error("cyclic check", e);
                return out;
            }
        };
        out.check("verdicts agree", report.consistent, || report.summary());
        let soc = ring.module().socle();
        let in_socle = report.witnesses.iter().all(|w| {
            crate::io::parse_vector(field, w)
                .map(|v| soc.contains(&v))
                .unwrap_or(false)
        });
        out.check("image of I lies in the socle", in_socle, || report.summary());
        if report.lhs == 2 {
            out.count("image_dim_2");
        }
        if report.is_counterexample() {
            out.theorem_violation(
                field,
                Violation {
                    trial: None,
                    inequality: report.inequality.clone(),
                    lhs: report.lhs,
                    rhs: report.rhs,
                    witness: Witness::Cyclic {
                        beta: ideal_beta_file(&beta, ring.ideal()),
                    },
                    shrunk: None,
                },
            );
        }
        out
    })
}
