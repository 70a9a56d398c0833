use rand::Rng;

use super::{beta_file, sample, RunOptions, SuiteReport, TrialConfig, TrialOutcome, Violation, Witness};
use crate::ext::{counterexample_check, gorenstein_divisibility_solve, BetaDomain, BetaMap, ExtError};
use crate::matrix::{DenseMatrix, Vector};
use crate::module::{cyclic_quotient, project_onto_quotient, FdModule, QuotientRing, Subspace};
use crate::poly::IdealGens;

/// `(a, b, c)` for trial `t`: all 27 exponent triples in `1..=3` in turn.
fn exponents(t: u64) -> (u32, u32, u32) {
    let t = (t % 27) as u32;
    (t / 9 + 1, (t / 3) % 3 + 1, t % 3 + 1)
}

fn complete_intersection(cfg: &TrialConfig, t: u64) -> Result<QuotientRing, ExtError> {
    let (a, b, c) = exponents(t);
    let gens = [format!("x^{a}"), format!("y^{b}"), format!("z^{c}")];
    let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
    Ok(cyclic_quotient(&IdealGens::parse(cfg.field, 3, &gens)?, cfg.degree_cap)?)
}

/// `{s : s w = 0 for all w in W}` for a subspace `W` of `R = S/K`.
fn ann_of(ring: &QuotientRing, w: &Subspace) -> Result<Subspace, ExtError> {
    let m = ring.module();
    let mats = w
        .basis()
        .iter()
        .map(|v| m.poly_matrix(&ring.lift(v)))
        .collect::<Result<Vec<_>, _>>()?;
    if mats.is_empty() {
        return Ok(Subspace::full(m.field(), m.dim()));
    }
    let refs: Vec<&DenseMatrix> = mats.iter().collect();
    let stacked = DenseMatrix::vstack(m.field(), m.dim(), &refs);
    Ok(Subspace::span(m.field(), m.dim(), stacked.kernel_basis()))
}

fn nonzero_vector<R: Rng>(rng: &mut R, m: &FdModule) -> Vector {
    loop {
        let v = sample::vector(rng, m.field(), m.dim());
        if crate::module::nonzero(&v) {
            return v;
        }
    }
}

/// Images of a socle basis in `M/rM` are dependent, for nonzero `r`.
fn socle_dependence(ring: &QuotientRing, r: &[crate::field::Scalar]) -> Result<bool, ExtError> {
    let m = ring.module();
    let rm = m.submodule_generated([r.to_vec()]);
    let soc = m.socle();
    let images: Vec<Vector> = soc.basis().iter().map(|s| project_onto_quotient(&rm, s)).collect();
    let span = Subspace::span(m.field(), m.dim() - rm.dim(), images);
    Ok(span.dim() < soc.dim())
}

fn coboundary_space(m: &FdModule) -> Subspace {
    let d = m.dim();
    let n = m.nvars();
    Subspace::span(
        m.field(),
        n * d,
        (0..d).map(|j| {
            let e = m.unit_vector(j);
            (0..n).flat_map(|i| m.act(i, &e)).collect::<Vector>()
        }),
    )
}

fn trial<R: Rng>(cfg: &TrialConfig, t: u64, rng: &mut R) -> Result<TrialOutcome, ExtError> {
    let mut out = TrialOutcome::new(Some(t));
    let ring = complete_intersection(cfg, t)?;
    let m = ring.module();
    out.accepted = true;
    out.count(&format!("ci_{}{}{}", exponents(t).0, exponents(t).1, exponents(t).2));
    let soc = m.socle().dim();
    out.check("complete intersection is Gorenstein", soc == 1, || soc.to_string());

    let (r1, r2) = (sample::vector(rng, m.field(), m.dim()), sample::vector(rng, m.field(), m.dim()));
    let (i1, i2) = (m.submodule_generated([r1]), m.submodule_generated([r2]));
    let lhs = ann_of(&ring, &i1)?.sum(&ann_of(&ring, &i2)?);
    let rhs = ann_of(&ring, &i1.intersection(&i2))?;
    out.check("ann(I1) + ann(I2) = ann(I1 ∩ I2)", lhs == rhs, || {
        format!("dimensions {} and {}", lhs.dim(), rhs.dim())
    });

    let r = nonzero_vector(rng, m);
    out.check("socle dependent modulo r", socle_dependence(&ring, &r)?, || format!("{r:?}"));

    // a non-Gorenstein ring and the dual of a cyclic module, which has a
    // one-dimensional socle
    let other = sample::cyclic_module(rng, cfg.field, 3, cfg.max_dim, cfg.degree_cap)?;
    let r = nonzero_vector(rng, other.module());
    out.check("socle dependent modulo r", socle_dependence(&other, &r)?, || format!("{r:?}"));
    let dual = other.module().dual();
    for target in [m, &dual] {
        let soc = target.socle().dim();
        out.check("Gorenstein target", soc == 1, || soc.to_string());
        let a = target.algebra_dimension();
        out.check("dim S/ann M <= dim M", a <= target.dim(), || format!("{a} > {}", target.dim()));
        let beta = sample::hom_element(rng, target)?;
        let report = counterexample_check(&beta)?;
        out.check("verdicts agree", report.consistent, || report.summary());
        if report.is_counterexample() {
            out.failures.push(super::Failure {
                trial: Some(t),
                check: "extension of a Gorenstein module".into(),
                detail: report.summary(),
            });
            out.violation(Violation {
                trial: None,
                inequality: report.inequality.clone(),
                lhs: report.lhs,
                rhs: report.rhs,
                witness: Witness::Pair { beta: beta_file(&beta) },
                shrunk: None,
            });
        }
    }

    let planted = sample::vector(rng, m.field(), m.dim());
    let gamma = BetaMap::coboundary(m.clone(), BetaDomain::Maximal, &planted)?;
    let found = gorenstein_divisibility_solve(&gamma)?;
    let round_trip = match &found {
        Some(r) => BetaMap::coboundary(m.clone(), BetaDomain::Maximal, r)? == gamma,
        None => false,
    };
    out.check("planted coboundary is recovered", round_trip, || format!("{planted:?}"));

    let gamma = sample::hom_element(rng, m)?;
    let found = gorenstein_divisibility_solve(&gamma)?;
    let flat: Vector = gamma.images().concat();
    let is_coboundary = coboundary_space(m).contains(&flat);
    let ok = match &found {
        Some(r) => is_coboundary && BetaMap::coboundary(m.clone(), BetaDomain::Maximal, r)? == gamma,
        None => !is_coboundary,
    };
    out.check("solver agrees with the coboundary space", ok, || format!("{:?}", gamma.images()));
    out.count(if is_coboundary { "gamma_coboundary" } else { "gamma_not_coboundary" });
    Ok(out)
}

/// Over `S/(x^a, y^b, z^c)` with `1 <= a, b, c <= 3` (trial `t` uses triple
/// `t mod 27`): the annihilator identity for two principal ideals, the
/// socle dependence modulo a nonzero element, `dim S/ann M <= dim M` and
/// the extension inequality for Gorenstein targets, and the divisibility
/// solver on planted and random maps.
pub fn suite_gorenstein(cfg: &TrialConfig, opts: RunOptions) -> SuiteReport {
    super::run_trials("gorenstein", cfg, opts, Vec::new(), |t, rng| {
        trial(cfg, t, rng).unwrap_or_else(|e| {
            let mut out = TrialOutcome::new(Some(t));
            out.error("gorenstein trial", e);
            out
        })
    })
}
