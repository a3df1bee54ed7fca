//! Task dispatch: builds the library objects a config describes, runs the
//! requested computation and collects a [`Report`].

use gg_core::distributions::{fourier_consistency_check, gg_distribution_pair, windowed_bump, TestFunction};
use gg_core::integral::{integral_eval, ContourKind, ContourSpec, Quadrature};
use gg_core::lattice::{brute_force_cosets, candidate_family, lattice_quotient, orthogonal_lattice, torsion_profile};
use gg_core::resonance::{candidate_consistent_vectors, check_extra_relation, hyperplane_samples, resonance_invariants};
use gg_core::sampling::{self, GgSample, ReducedSample};
use gg_core::series::{convergence_condition, gg_series_eval, reduced_series_eval, SeriesMode, SeriesSpec};
use gg_core::verify::{
    check_gg_system, check_reduced_system, check_reduced_system_numeric, solution_family_rank, DerivativeMode,
    ResidualReport,
};
use gg_core::{build_reduced_system, enumerate_bases, kernel_space, reducibility_check, GgError, C64};
use gg_core::{BaseSelection64, ReducedSystem64, VectorSet64};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::config::{Convention, ContourName, DerivativeKind, Pair, PhiConfig, ProblemConfig, SeriesKind, Task};
use crate::report::{cx, cxs, Report, Residual};

/// Why a run produced no report.
#[derive(Debug)]
pub enum RunError {
    /// Bad input: exit code 2.
    Invalid(String),
    /// A numeric failure while computing: exit code 1.
    Failed(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Invalid(m) => write!(f, "invalid input: {m}"),
            RunError::Failed(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl From<GgError> for RunError {
    fn from(e: GgError) -> Self {
        match e {
            GgError::InvalidInput(_) | GgError::Domain(_) | GgError::Pole { .. } => RunError::Invalid(e.to_string()),
            _ => RunError::Failed(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, RunError>;

fn c(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

fn cvec(v: &[Pair]) -> Vec<C64> {
    v.iter().map(c).collect()
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

fn zero_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i - 1).collect()
}

/// Everything derived from a validated config.
struct Problem<'a> {
    cfg: &'a ProblemConfig,
    set: VectorSet64,
    base: BaseSelection64,
    system: ReducedSystem64,
    k: Vec<i64>,
}

impl<'a> Problem<'a> {
    fn new(cfg: &'a ProblemConfig) -> Res<Self> {
        let sign = match cfg.convention {
            Convention::Omega => 1.0,
            Convention::Ell => -1.0,
        };
        let omega = cfg.omega.iter().map(|row| row.iter().map(|p| c(p) * sign).collect()).collect();
        let set = VectorSet64::new(cfg.n, omega)?;
        let base = match &cfg.base {
            Some(b) => set.base(&zero_based(b))?,
            None => enumerate_bases(&set)
                .into_iter()
                .next()
                .ok_or_else(|| RunError::Invalid("the vectors have no base".into()))?,
        };
        let system = build_reduced_system(&base);
        let k = cfg.k.clone().unwrap_or_else(|| vec![0; cfg.n]);
        Ok(Problem {
            cfg,
            set,
            base,
            system,
            k,
        })
    }

    fn seed(&self) -> Res<u64> {
        self.cfg
            .seed
            .ok_or_else(|| RunError::Invalid("seed: required when random samples are requested".into()))
    }

    fn mode(&self) -> SeriesMode {
        match self.cfg.series {
            SeriesKind::Reduced => SeriesMode::Reduced,
            SeriesKind::Full => SeriesMode::Full,
            SeriesKind::Mixed => SeriesMode::Mixed {
                first: zero_based(self.cfg.mixed_first.as_deref().unwrap_or_default()),
            },
        }
    }

    fn spec(&self, mode: SeriesMode) -> Res<SeriesSpec<f64>> {
        Ok(SeriesSpec::new(self.system.clone(), self.k.clone(), self.cfg.truncation, mode)?)
    }

    fn derivative(&self) -> DerivativeMode {
        match self.cfg.derivative {
            DerivativeKind::FiniteDifference => DerivativeMode::default(),
            DerivativeKind::Cauchy => DerivativeMode::Cauchy {
                relative_radius: 0.25,
                nodes: 64,
            },
        }
    }

    fn derivative_json(&self) -> Value {
        match self.derivative() {
            DerivativeMode::FiniteDifference { relative_step } => {
                json!({"kind": "finite-difference", "relative_step": relative_step})
            }
            DerivativeMode::Cauchy { relative_radius, nodes } => {
                json!({"kind": "cauchy", "relative_radius": relative_radius, "nodes": nodes})
            }
        }
    }

    fn series_json(&self) -> Value {
        json!({
            "form": self.cfg.series,
            "base": one_based(self.base.indices()),
            "k": self.k,
            "truncation": self.cfg.truncation,
            "mixed_first": self.cfg.mixed_first,
        })
    }

    /// `(β, a)` samples: explicit `a`, explicit `x` (with `a_i = 1` on the
    /// base), or generated from `samples` and `seed`.
    fn gg_samples(&self) -> Res<Vec<GgSample<f64>>> {
        let cfg = self.cfg;
        if let (Some(beta), Some(a)) = (&cfg.beta, &cfg.a) {
            return Ok(beta.iter().zip(a).map(|(b, a)| GgSample { beta: cvec(b), a: cvec(a) }).collect());
        }
        if let (Some(beta), Some(x)) = (&cfg.beta, &cfg.x) {
            return Ok(beta
                .iter()
                .zip(x)
                .map(|(b, x)| {
                    let mut a = vec![C64::new(1.0, 0.0); self.set.len()];
                    for (q, &j) in self.base.complement().iter().enumerate() {
                        a[j] = c(&x[q]);
                    }
                    GgSample { beta: cvec(b), a }
                })
                .collect());
        }
        let s = cfg
            .samples
            .as_ref()
            .ok_or_else(|| RunError::Invalid("samples: give beta with a or x, or a sample count".into()))?;
        Ok(sampling::gg_samples(&self.system, s.count, s.radius, self.seed()?)?)
    }

    fn reduced_samples(&self) -> Res<Vec<ReducedSample<f64>>> {
        let cfg = self.cfg;
        if let (Some(beta), Some(x)) = (&cfg.beta, &cfg.x) {
            return Ok(beta.iter().zip(x).map(|(b, x)| ReducedSample { beta: cvec(b), x: cvec(x) }).collect());
        }
        if let (Some(beta), Some(a)) = (&cfg.beta, &cfg.a) {
            return beta
                .iter()
                .zip(a)
                .map(|(b, a)| {
                    Ok(ReducedSample {
                        beta: cvec(b),
                        x: self.system.x_from_a(&cvec(a))?,
                    })
                })
                .collect();
        }
        let s = cfg
            .samples
            .as_ref()
            .ok_or_else(|| RunError::Invalid("samples: give beta with x or a, or a sample count".into()))?;
        Ok(sampling::reduced_samples(&self.system, s.count, s.radius, self.seed()?))
    }

    /// Adds the negative-control perturbation `perturb * a_1` if requested.
    fn perturbed<'f>(
        &self,
        f: impl Fn(&[C64], &[C64]) -> gg_core::Result<C64> + 'f,
    ) -> impl Fn(&[C64], &[C64]) -> gg_core::Result<C64> + 'f {
        let eps = self.cfg.perturb.unwrap_or(0.0);
        move |b: &[C64], a: &[C64]| Ok(f(b, a)? + a[0] * eps)
    }
}

pub fn run(cfg: &ProblemConfig) -> Res<Report> {
    cfg.validate().map_err(|e| RunError::Invalid(e.to_string()))?;
    let p = Problem::new(cfg)?;
    let (results, residuals, extra_pass) = match cfg.task {
        Task::Bases => bases(&p),
        Task::Reduce => reduce(&p),
        Task::Eval => eval(&p)?,
        Task::Verify => verify(&p)?,
        Task::Lattice => lattice(&p)?,
        Task::Integral => integral(&p)?,
        Task::Resonance => resonance(&p)?,
        Task::Distribution => distribution(&p)?,
        Task::Family => family(&p)?,
    };
    Ok(Report::new(cfg, results, residuals, extra_pass))
}

type Outcome = (Value, Vec<Residual>, bool);

fn bases(p: &Problem) -> Outcome {
    let list: Vec<Vec<usize>> = enumerate_bases(&p.set).iter().map(|b| one_based(b.indices())).collect();
    let r = reducibility_check(&p.set);
    let results = json!({
        "bases": list,
        "kernel_dimension": kernel_space(&p.set).len(),
        "reducibility": {
            "contains_coordinate_subspace": r.contains_coordinate_subspace,
            "inside_proper_coordinate_subspace": r.inside_proper_coordinate_subspace,
            "contains_difference_vector": r.contains_difference_vector,
            "is_reduced": r.is_reduced,
            "zero_vectors": one_based(&r.zero_vectors),
            "duplicate_pairs": r.duplicate_pairs.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
            "not_in_span_of_others": one_based(&r.not_in_span_of_others),
        },
    });
    (results, Vec::new(), true)
}

fn reduce(p: &Problem) -> Outcome {
    let n = p.cfg.n;
    let flags = convergence_condition(&p.system, p.cfg.truncation);
    let variables: Vec<Value> = p
        .base
        .complement()
        .iter()
        .enumerate()
        .map(|(q, &j)| {
            let f = &flags[q];
            json!({
                "index": j + 1,
                "gamma": cxs(p.system.omega_coords(q)),
                "l": (0..n).map(|i| cx(p.system.l_base(q, i))).collect::<Vec<_>>(),
                "l_sum": cx(f.l_sum),
                "l_condition": f.l_condition,
                "gamma_condition": f.gamma_condition,
                "growth": format!("{:?}", f.verdict),
                "radius": f.radius,
            })
        })
        .collect();
    let converges = flags.iter().all(|f| f.holds());
    let results = json!({
        "base": one_based(p.base.indices()),
        "complement": one_based(p.base.complement()),
        "variables": variables,
        "ratio_test_truncation": p.cfg.truncation.max(8),
        "converges": converges,
    });
    (results, Vec::new(), converges)
}

fn eval(p: &Problem) -> Res<Outcome> {
    let tol = p.cfg.tolerance;
    let mut values = Vec::new();
    let mut ok = true;
    if p.cfg.series == SeriesKind::Reduced {
        let spec = p.spec(SeriesMode::Reduced)?;
        for s in p.reduced_samples()? {
            let v = reduced_series_eval(&spec, &s.beta, &s.x)?;
            ok &= v.tail_estimate <= tol * v.value.norm();
            values.push(json!({"beta": cxs(&s.beta), "x": cxs(&s.x), "value": cx(v.value),
                "tail_estimate": v.tail_estimate, "terms_used": v.terms_used}));
        }
    } else {
        let spec = p.spec(p.mode())?;
        for s in p.gg_samples()? {
            let v = gg_series_eval(&spec, &s.beta, &s.a)?;
            ok &= v.tail_estimate <= tol * v.value.norm();
            values.push(json!({"beta": cxs(&s.beta), "a": cxs(&s.a), "value": cx(v.value),
                "tail_estimate": v.tail_estimate, "terms_used": v.terms_used}));
        }
    }
    let results = json!({"series": p.series_json(), "values": values, "tails_below_tolerance": ok});
    Ok((results, Vec::new(), ok))
}

fn verify(p: &Problem) -> Res<Outcome> {
    let tol = p.cfg.tolerance;
    let series = p.series_json();
    let mut residuals = Vec::new();
    let points;
    if p.cfg.series == SeriesKind::Reduced {
        let spec = p.spec(SeriesMode::Reduced)?;
        let samples = p.reduced_samples()?;
        points = samples.len();
        if p.cfg.perturb.is_some() {
            let f = p.perturbed(|b: &[C64], x: &[C64]| reduced_series_eval(&spec, b, x).map(|v| v.value));
            let ctx = json!({"series": series, "derivative": p.derivative_json()});
            let r = check_reduced_system_numeric(&f, &p.system, &samples, p.derivative(), tol)?;
            residuals.push(Residual::new(&r.red1, ctx.clone()));
            residuals.push(Residual::new(&r.red2, ctx));
        } else {
            let ctx = json!({"series": series, "derivative": "term-wise"});
            let r = check_reduced_system(&spec, &samples, tol)?;
            residuals.push(Residual::new(&r.red1, ctx.clone()));
            residuals.push(Residual::new(&r.red2, ctx));
        }
    } else {
        let spec = p.spec(p.mode())?;
        let samples = p.gg_samples()?;
        points = samples.len();
        let f = p.perturbed(|b: &[C64], a: &[C64]| gg_series_eval(&spec, b, a).map(|v| v.value));
        let r = check_gg_system(&f, &p.set, &samples, p.derivative(), tol)?;
        let ctx = json!({"series": series, "derivative": p.derivative_json()});
        for rep in r.reports() {
            residuals.push(Residual::new(rep, ctx.clone()));
        }
    }
    let results = json!({"series": p.series_json(), "sample_points": points, "perturb": p.cfg.perturb});
    Ok((results, residuals, true))
}

fn lattice(p: &Problem) -> Res<Outcome> {
    let lat = orthogonal_lattice(&p.set)?;
    let bases: Vec<Vec<usize>> = match &p.cfg.base {
        Some(b) => {
            let mut b = zero_based(b);
            b.sort_unstable();
            vec![b]
        }
        None => enumerate_bases(&p.set).iter().map(|b| b.indices().to_vec()).collect(),
    };
    let to_i64 = |z: &BigInt| -> Res<i64> {
        z.to_i64().ok_or_else(|| RunError::Invalid("lattice entry exceeds 64 bits".into()))
    };
    let rows: Vec<Vec<i64>> = lat
        .basis_rows
        .iter()
        .map(|r| r.iter().map(to_i64).collect::<Res<Vec<_>>>())
        .collect::<Res<_>>()?;
    let mut quotients = Vec::new();
    let mut all_confirmed = true;
    for b in &bases {
        let q = lattice_quotient(&lat, b)?;
        let divisors: Vec<i64> = q.elementary_divisors.iter().map(to_i64).collect::<Res<_>>()?;
        let order = to_i64(q.order.as_ref().expect("lattice_quotient rejects infinite quotients"))?;
        let reps: Vec<Vec<i64>> = q
            .representatives
            .iter()
            .map(|r| r.iter().map(to_i64).collect::<Res<Vec<_>>>())
            .collect::<Res<_>>()?;
        let projected: Vec<Vec<i64>> = rows.iter().map(|r| b.iter().map(|&i| r[i]).collect()).collect();
        // det Z^n lies in the sublattice, so a box of side at least |det|
        // meets every coset.
        let half = order / 2 + 1;
        let box_size = (2 * half + 1).checked_pow(b.len() as u32).unwrap_or(i64::MAX);
        let brute = if box_size <= 2_000_000 {
            let (count, profile) = brute_force_cosets(&projected, half);
            let confirmed = count as i64 == order && profile == torsion_profile(&divisors, order as usize);
            all_confirmed &= confirmed;
            json!({"half_width": half, "cosets": count, "confirmed": confirmed})
        } else {
            Value::Null
        };
        quotients.push(json!({
            "base": one_based(b),
            "elementary_divisors": divisors,
            "order": order,
            "representatives": reps,
            "brute_force": brute,
        }));
    }
    let results = json!({"lattice_rank": lat.rank, "lattice_basis": rows, "quotients": quotients});
    Ok((results, Vec::new(), all_confirmed))
}

fn integral(p: &Problem) -> Res<Outcome> {
    let ic = p.cfg.integral.as_ref().expect("validated");
    let kind = match ic.contour {
        ContourName::Hankel => ContourKind::HankelLoop,
        ContourName::ShiftedPlane => ContourKind::ShiftedPlane(p.k.clone()),
        ContourName::Euler => ContourKind::EulerSegment,
    };
    let contour = ContourSpec {
        kind,
        quadrature: Quadrature {
            nodes: ic.nodes,
            cutoff: ic.cutoff,
            tolerance: ic.quadrature_tolerance,
        },
    };
    contour.quadrature.validate()?;
    let samples = p.reduced_samples()?;
    let mut values = Vec::new();
    for s in &samples {
        let q = integral_eval(&p.base, &s.beta, &s.x, &contour)?;
        values.push(json!({"beta": cxs(&s.beta), "x": cxs(&s.x), "value": cx(q.value),
            "error_estimate": q.error_estimate, "nodes": q.nodes, "cutoff": q.cutoff}));
    }
    let f = p.perturbed(|b: &[C64], x: &[C64]| integral_eval(&p.base, b, x, &contour).map(|q| q.value));
    let r = check_reduced_system_numeric(&f, &p.system, &samples, p.derivative(), p.cfg.tolerance)?;
    let quad = json!({"contour": ic.contour, "k": p.k, "nodes": ic.nodes, "cutoff": ic.cutoff,
        "quadrature_tolerance": ic.quadrature_tolerance});
    let ctx = json!({"integral": quad, "derivative": p.derivative_json()});
    let residuals = vec![Residual::new(&r.red1, ctx.clone()), Residual::new(&r.red2, ctx)];
    let results = json!({"base": one_based(p.base.indices()), "integral": quad, "values": values});
    Ok((results, residuals, true))
}

fn resonance(p: &Problem) -> Res<Outcome> {
    let found = candidate_consistent_vectors(&p.set);
    let spec = p.spec(SeriesMode::Full)?;
    let f = p.perturbed(|b: &[C64], a: &[C64]| gg_series_eval(&spec, b, a).map(|v| v.value));
    let mut entries = Vec::new();
    let mut residuals = Vec::new();
    let mut invariants_hold = true;
    for (idx, an) in found.iter().enumerate() {
        let inv = resonance_invariants(&p.set, an);
        invariants_hold &= inv.all();
        let chains = an.decomposition.as_ref().map(|d| {
            json!({
                "chains": d.chains.iter().map(|ch| one_based(&ch.members)).collect::<Vec<_>>(),
                "k0": d.k0(),
                "total": d.total(),
            })
        });
        entries.push(json!({
            "v": cxs(&an.v),
            "a_v": an.av.iter().map(|&(j, t)| json!([j + 1, t.map(|t| t + 1)])).collect::<Vec<_>>(),
            "b_v": one_based(&an.bv),
            "codim": an.codim,
            "lambda": an.lambda.as_deref().map(cxs),
            "offset": an.offset.map(cx),
            "decomposition": chains,
            "invariants": {
                "codim_one": inv.codim_one,
                "v_not_in_a": inv.v_not_in_a,
                "v_not_in_lv": inv.v_not_in_lv,
                "av_disjoint_from_lv": inv.av_disjoint_from_lv,
            },
        }));
        if let (Some(s), Some(_)) = (&p.cfg.samples, &an.lambda) {
            let samples = hyperplane_samples(an, &p.system, s.count, s.radius, p.seed()?)?;
            let r = check_extra_relation(&f, &p.set, an, &samples, p.cfg.tolerance)?;
            let ctx = json!({"vector": idx + 1, "series": p.series_json(), "derivative": "shift"});
            residuals.push(Residual::new(&r, ctx));
        }
    }
    let results = json!({"consistent_vectors": entries, "invariants_hold": invariants_hold});
    Ok((results, residuals, invariants_hold))
}

fn distribution(p: &Problem) -> Res<Outcome> {
    let d = p.cfg.distribution.as_ref().expect("validated");
    let n = p.cfg.n;
    let ell: Vec<Vec<C64>> = (0..p.system.r())
        .map(|q| (0..n).map(|i| p.system.l_base(q, i)).collect())
        .collect();
    let points: Vec<Vec<C64>> = p.cfg.x.as_deref().unwrap_or_default().iter().map(|x| cvec(x)).collect();
    let mut values = Vec::new();
    let mut residuals = Vec::new();
    let params = json!({"outer": d.outer, "inner": d.inner, "phi": d.phi});
    match &d.phi {
        PhiConfig::Exponential { theta } => {
            let theta = cvec(theta);
            let th = theta.clone();
            let phi = TestFunction::new(move |z: &[C64]| {
                z.iter().zip(&th).fold(C64::zero(), |s, (z, t)| s + z * t).exp()
            });
            for x in &points {
                let got = gg_distribution_pair(&ell, x, &phi, d.outer, d.inner)?;
                let mut e = theta.iter().fold(C64::zero(), |s, t| s + t.exp());
                for (l, xq) in ell.iter().zip(x) {
                    let dot = l.iter().zip(&theta).fold(C64::zero(), |s, (l, t)| s + l * t);
                    e += xq * dot.exp();
                }
                let want = e.exp();
                let abs = (got.value - want).norm();
                let rel = abs / want.norm().max(got.value.norm()).max(1e-300);
                let rep = ResidualReport {
                    equation_id: "closed-form".into(),
                    max_abs_residual: abs,
                    max_rel_residual: rel,
                    sample_points: 1,
                    tolerance: p.cfg.tolerance,
                    pass: rel <= p.cfg.tolerance,
                };
                residuals.push(Residual::new(&rep, json!({"x": cxs(x), "pairing": params})));
                values.push(json!({"x": cxs(x), "value": cx(got.value), "tail_estimate": got.tail_estimate,
                    "reference": cx(want)}));
            }
        }
        PhiConfig::Bump { half_width } => {
            if n != 1 || ell.len() != 1 {
                return Err(RunError::Invalid("distribution.phi: the bump test needs n = 1 and N = 2".into()));
            }
            let hw = *half_width;
            if !(hw > 0.0 && hw.is_finite()) {
                return Err(RunError::Invalid("distribution.phi.half_width: must be positive".into()));
            }
            for x in &points {
                let r = fourier_consistency_check(ell[0][0], x[0], windowed_bump(hw), hw, p.cfg.tolerance)?;
                residuals.push(Residual::new(&r, json!({"x": cxs(x), "ell": cx(ell[0][0]), "pairing": params})));
            }
        }
    }
    let ell_json: Vec<Value> = ell.iter().map(|l| json!(cxs(l))).collect();
    let results = json!({"base": one_based(p.base.indices()), "ell": ell_json, "pairing": params, "values": values});
    Ok((results, residuals, true))
}

fn family(p: &Problem) -> Res<Outcome> {
    let fc = p.cfg.family.as_ref().expect("validated");
    let bases: Vec<Vec<usize>> = fc.bases.iter().map(|b| zero_based(b)).collect();
    let members = candidate_family(&p.set, &bases)?;
    let seed = p.seed()?;
    let beta = match p.cfg.beta.as_ref().and_then(|b| b.first()) {
        Some(b) => cvec(b),
        None => sampling::sample_beta(&mut sampling::rng(seed), &p.base),
    };
    let r = solution_family_rank(
        &p.set,
        &members,
        &beta,
        fc.samples,
        p.cfg.truncation,
        seed,
        p.derivative(),
        p.cfg.tolerance,
    )?;
    let mut residuals = Vec::new();
    for (m, rep) in members.iter().zip(&r.member_reports) {
        let ctx = json!({"base": one_based(&m.base), "k": m.k, "truncation": p.cfg.truncation,
            "derivative": p.derivative_json()});
        for rr in rep.reports() {
            residuals.push(Residual::new(rr, ctx.clone()));
        }
    }
    let results = json!({
        "beta": cxs(&beta),
        "members": members.iter().map(|m| json!({"base": one_based(&m.base), "k": m.k})).collect::<Vec<_>>(),
        "rank": r.rank,
        "singular_values": r.singular_values,
        "argument_scale": r.scale,
        "samples": fc.samples,
        "truncation": p.cfg.truncation,
    });
    Ok((results, residuals, true))
}
