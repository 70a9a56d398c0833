use serde::{Deserialize, Serialize};

use super::{sample, RunOptions, SuiteReport, TrialConfig, TrialOutcome, Violation, Witness};
use crate::ext::ExtError;
use crate::field::FieldSpec;
use crate::module::{cyclic_quotient, project_onto_quotient, ModuleError, QuotientRing, Subspace};
use crate::poly::{parse_poly, IdealGens, Poly, PolyError};

/// `f_1, f_2, f_3, g` in `m` of `k[x, y, z]`, defining
/// `F_ij = x_i f_j - x_j f_i`, `J = (F_12, F_13, F_23, g)` and the map
/// `b': m -> S/J` with `b'(x_i) = f_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialCaseInstance {
    pub field: FieldSpec,
    pub f: [String; 3],
    pub g: String,
}

impl SpecialCaseInstance {
    pub fn new(f: [&Poly; 3], g: &Poly) -> Self {
        SpecialCaseInstance {
            field: g.field(),
            f: f.map(ToString::to_string),
            g: g.to_string(),
        }
    }

    pub fn parse(field: FieldSpec, f: [&str; 3], g: &str) -> Result<Self, PolyError> {
        let fs = [
            parse_poly(f[0], 3, field)?,
            parse_poly(f[1], 3, field)?,
            parse_poly(f[2], 3, field)?,
        ];
        Ok(Self::new([&fs[0], &fs[1], &fs[2]], &parse_poly(g, 3, field)?))
    }

    fn polys(&self) -> Result<([Poly; 3], Poly), PolyError> {
        let p = |s: &str| parse_poly(s, 3, self.field);
        Ok(([p(&self.f[0])?, p(&self.f[1])?, p(&self.f[2])?], p(&self.g)?))
    }

    /// `F_12, F_13, F_23`.
    pub fn commutators(&self) -> Result<[Poly; 3], PolyError> {
        let (f, _) = self.polys()?;
        let x = |i| Poly::var(self.field, 3, i);
        let c = |i: usize, j: usize| x(i).mul(&f[j])?.sub(&x(j).mul(&f[i])?);
        Ok([c(0, 1)?, c(0, 2)?, c(1, 2)?])
    }

    pub fn ideal(&self) -> Result<IdealGens, PolyError> {
        let (_, g) = self.polys()?;
        let mut gens = self.commutators()?.to_vec();
        gens.push(g);
        IdealGens::new(self.field, 3, gens)
    }

    /// A representative of `b'(p)` for `p` in `m`: `sum q_i f_i` where
    /// `p = sum q_i x_i`.
    pub fn beta_value(&self, p: &Poly) -> Result<Poly, ExtError> {
        let (f, _) = self.polys()?;
        let (constant, qs) = p.split_by_variables();
        if !constant.is_zero() {
            return Err(ExtError::NotInDomain(p.to_string()));
        }
        let mut acc = Poly::zero(self.field, 3);
        for (q, fi) in qs.iter().zip(&f) {
            acc = acc.add(&q.mul(fi)?)?;
        }
        Ok(acc)
    }

    pub fn quotient(&self, degree_cap: u32) -> Result<QuotientRing, ExtError> {
        Ok(cyclic_quotient(&self.ideal()?, degree_cap)?)
    }
}

/// `dim span(b'(g), b'(h))` in `S/(J + (h))` localized at the origin.
pub fn dependence_rank(instance: &SpecialCaseInstance, h: &str, degree_cap: u32) -> Result<usize, ExtError> {
    let hp = parse_poly(h, 3, instance.field)?;
    let (_, g) = instance.polys()?;
    let j = instance.ideal()?;
    let jh = j.sum(&IdealGens::new(instance.field, 3, vec![hp.clone()])?);
    let ring = cyclic_quotient(&jh, degree_cap)?;
    let away = ring.module().away_from_origin();
    let local = |p: &Poly| -> Result<_, ExtError> {
        Ok(project_onto_quotient(&away, &ring.normal_form(&instance.beta_value(p)?)?))
    };
    let (vg, vh) = (local(&g)?, local(&hp)?);
    let span = Subspace::span(instance.field, vg.len(), [vg, vh]);
    Ok(span.dim())
}

const H_PER_INSTANCE: usize = 5;
const H_ATTEMPTS: usize = 20;

fn examine(
    out: &mut TrialOutcome,
    inst: &SpecialCaseInstance,
    hs: &mut dyn FnMut(&QuotientRing) -> Option<Poly>,
    count: usize,
    cap: u32,
) {
    let ring = match inst.quotient(cap) {
        Ok(r) => r,
        Err(ExtError::Module(ModuleError::DegreeCapExceeded(_))) => {
            out.skipped = true;
            out.count("not_finite");
            return;
        }
        Err(e) => return out.error("quotient", e),
    };
    out.accepted = true;
    let m = ring.module();
    let local = match m.restrict(&m.origin_component()) {
        Ok(l) => l,
        Err(e) => return out.error("origin component", e),
    };
    let soc = local.socle().dim();
    out.check("origin socle has dimension 2", soc == 2, || {
        format!("socle dimension {soc}, local dimension {}, J = {:?}", local.dim(), inst)
    });
    for _ in 0..count {
        let Some(h) = hs(&ring) else {
            out.count("h_not_found");
            continue;
        };
        out.count("h_checked");
        let h = h.to_string();
        match dependence_rank(inst, &h, cap) {
            Ok(rank) => {
                out.checks += 1;
                if rank > 1 {
                    out.theorem_violation(
                        inst.field,
                        Violation {
                            trial: None,
                            inequality: "dim span(b'(g), b'(h)) <= 1".into(),
                            lhs: rank,
                            rhs: 1,
                            witness: Witness::Dependence {
                                instance: inst.clone(),
                                h,
                            },
                            shrunk: None,
                        },
                    );
                }
            }
            Err(ExtError::Module(ModuleError::DegreeCapExceeded(_))) => out.count("h_cap"),
            Err(e) => out.error("dependence", e),
        }
    }
}

/// The instance with `f = (y, z, x^2)`, `g = x`, `h = y`.
pub fn curve_instance(field: FieldSpec) -> SpecialCaseInstance {
    SpecialCaseInstance::parse(field, ["y", "z", "x^2"], "x").expect("valid")
}

/// Random `f_1, f_2, f_3, g` in `m`. For each instance with `S/J` finite
/// dimensional within the degree cap: the origin summand of `S/J` has a
/// two-dimensional socle, and for random `h` in `m` outside `J`, `b'(g)` and
/// `b'(h)` are dependent in the origin summand of `S/(J + (h))`.
pub fn suite_special_case(cfg: &TrialConfig, opts: RunOptions) -> SuiteReport {
    let field = cfg.field;
    let cap = cfg.degree_cap;
    let mut fixed = TrialOutcome::new(None);
    let curve = curve_instance(field);
    let y = Poly::var(field, 3, 1);
    examine(&mut fixed, &curve, &mut |_| Some(y.clone()), 1, cap);
    match curve.quotient(cap) {
        Ok(r) => fixed.check("curve instance has dimension 3", r.dim() == 3, || r.dim().to_string()),
        Err(e) => fixed.error("curve instance", e),
    }
    super::run_trials("special-case", cfg, opts, vec![fixed], |t, rng| {
        let mut out = TrialOutcome::new(Some(t));
        let draw = |rng: &mut _| sample::poly_in_maximal(rng, field, 3, cfg.max_degree.max(1), 2);
        let f = [draw(rng), draw(rng), draw(rng)];
        let g = draw(rng);
        let inst = SpecialCaseInstance::new([&f[0], &f[1], &f[2]], &g);
        match inst.commutators() {
            Ok(fs) if fs.iter().all(Poly::is_zero) => return out.skip("degenerate"),
            Ok(_) => {}
            Err(e) => {
                out.error("commutators", e);
                return out;
            }
        }
        let mut hs = |ring: &QuotientRing| {
            (0..H_ATTEMPTS)
                .map(|_| draw(rng))
                .find(|h| ring.normal_form(h).map(|v| crate::module::nonzero(&v)).unwrap_or(false))
        };
        examine(&mut out, &inst, &mut hs, H_PER_INSTANCE, cap);
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::DEFAULT_DEGREE_CAP;

    #[test]
    fn curve_instance_by_hand() {
        let f7 = FieldSpec::prime(7).unwrap();
        let inst = curve_instance(f7);
        let fs: Vec<String> = inst.commutators().unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(fs, ["x*z + 6*y^2", "x^3 + 6*y*z", "x^2*y + 6*z^2"]);
        let q = curve_instance(FieldSpec::rational());
        let fs: Vec<String> = q.commutators().unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(fs, ["x*z - y^2", "x^3 - y*z", "x^2*y - z^2"]);
        let ring = inst.quotient(DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(ring.dim(), 3);
        assert_eq!(ring.module().socle().dim(), 2);
        assert_eq!(dependence_rank(&inst, "y", DEFAULT_DEGREE_CAP).unwrap(), 1);
    }

    #[test]
    fn localization_drops_other_points() {
        // g = x - x^2 adds the point (1, 1, 1) to the support
        let q = FieldSpec::rational();
        let inst = SpecialCaseInstance::parse(q, ["y", "z", "x^2"], "x - x^2").unwrap();
        let ring = inst.quotient(DEFAULT_DEGREE_CAP).unwrap();
        let m = ring.module();
        let w0 = m.origin_component();
        assert!(w0.dim() < m.dim());
        assert_eq!(w0.dim() + m.away_from_origin().dim(), m.dim());
        assert_eq!(m.restrict(&w0).unwrap().socle().dim(), 2);
    }
}
