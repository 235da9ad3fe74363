use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rankdual_core::diagrams::{WeightSystem, YoungDiagram};
use rankdual_core::duality::{self, DualityInstance};
use rankdual_core::numeric::{intersection_float, verlinde_float, Complex, FloatCtx};
use rankdual_core::parlin::linalg::Subspace;
use rankdual_core::parlin::{
    annihilator_check, parabolic_hom, schubert_tangent_dim, string_filtration, tensor_subspace, FullFlag,
    ParabolicSpace,
};
use rankdual_core::quot::{self, IntersectionInstance};
use rankdual_core::schur::{reciprocity_check, schur_eval, EvalPoint};
use rankdual_core::subsets::{binomial, Subsets};
use rankdual_core::verlinde::{self, check_rank_level, verlinde_all, verlinde_with_root, VerlindeInstance};
use rankdual_core::{Error, Variant};

use crate::report::*;
use crate::{Command, JobSpec, Shape};

pub enum Failure {
    Input(String),
    Identity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonIntegral { .. } => Failure::Identity(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

const MAX_LISTED_FAILURES: usize = 5;

fn parse_weights(shape: &Shape) -> Outcome<WeightSystem> {
    if shape.r == 0 || shape.l == 0 {
        return Err(Failure::Input(format!("r and l must be positive, got r = {} l = {}", shape.r, shape.l)));
    }
    let texts: Vec<String> = serde_json::from_str(&shape.weights)
        .map_err(|e| Failure::Input(format!("malformed weights JSON: {e}")))?;
    Ok(WeightSystem::parse(&texts, shape.r, shape.l)?)
}

fn elapsed(job: &JobSpec, start: Instant) -> Option<u128> {
    job.timings.then(|| start.elapsed().as_millis())
}

fn oracle_check(ctx: &mut FloatCtx, digits: usize, float: &Complex, exact: &BigInt) -> OracleCheck {
    let discrepancy = ctx.discrepancy(float, exact);
    OracleCheck {
        digits,
        value: ctx.render(&float.re),
        discrepancy: ctx.render(&discrepancy),
        rounds_to_exact: ctx.rounds_to(float, exact),
    }
}

pub fn execute(job: &JobSpec) -> Outcome<Report> {
    let start = Instant::now();
    match &job.command {
        Command::Verlinde { shape, variant } => {
            let weights = parse_weights(shape)?;
            let inst = VerlindeInstance::new(shape.g, weights.clone())?;
            let variant: Variant = (*variant).into();
            let value = verlinde::verlinde(&inst, variant)?;
            let elapsed_ms = elapsed(job, start);
            let oracle = job.oracle.then(|| {
                let mut ctx = FloatCtx::new(job.precision);
                let float = verlinde_float(&weights, shape.g, variant, &mut ctx);
                oracle_check(&mut ctx, job.precision, &float, &value)
            });
            Ok(Report::Verlinde(VerlindeReport {
                variant: variant.to_string(),
                r: inst.r(),
                l: inst.l(),
                g: inst.g(),
                n: inst.n(),
                total_weight: weights.total_size(),
                value: value.to_string(),
                subset_count: binomial(inst.r() + inst.l(), inst.r()),
                elapsed_ms,
                oracle,
            }))
        }
        Command::Vi { shape, d } => {
            let weights = parse_weights(shape)?;
            let inst = IntersectionInstance::new(shape.g, *d, weights.clone())?;
            let value = quot::intersection_number(&inst)?;
            let elapsed_ms = elapsed(job, start);
            let oracle = job.oracle.then(|| {
                let mut ctx = FloatCtx::new(job.precision);
                let float = intersection_float(&weights, shape.g, &mut ctx);
                oracle_check(&mut ctx, job.precision, &float, &value)
            });
            Ok(Report::Vi(ViReport {
                r: inst.r(),
                l: inst.l(),
                g: inst.g(),
                n: inst.n(),
                d: *d,
                total_weight: weights.total_size(),
                quot_dimension: inst.dimension(),
                value: value.to_string(),
                subset_count: binomial(inst.r() + inst.l(), inst.l()),
                elapsed_ms,
                oracle,
            }))
        }
        Command::ViCheck { shape, d } => {
            let weights = parse_weights(shape)?;
            let rep = quot::vi_equals_verlinde(shape.g, *d, &weights)?;
            let elapsed_ms = elapsed(job, start);
            let oracle = job.oracle.then(|| {
                let mut ctx = FloatCtx::new(job.precision);
                let vi = intersection_float(&weights.conjugate(), shape.g, &mut ctx);
                let vl = verlinde_float(&weights.transpose(), shape.g, Variant::Twisted, &mut ctx);
                vec![
                    oracle_check(&mut ctx, job.precision, &vi, &rep.intersection),
                    oracle_check(&mut ctx, job.precision, &vl, &rep.verlinde),
                ]
            });
            Ok(Report::ViCheck(ViCheckReport {
                r: weights.rows(),
                l: weights.level(),
                g: shape.g,
                n: weights.len(),
                d: *d,
                total_weight: weights.total_size(),
                equal: rep.holds(),
                intersection: rep.intersection.to_string(),
                verlinde_twisted_transposed: rep.verlinde.to_string(),
                elapsed_ms,
                oracle,
            }))
        }
        Command::Normalize { shape, d, dd, threshold } => {
            let input = DualityInstance::new(shape.g, *d, *dd, parse_weights(shape)?);
            let (normalized, plan) = duality::normalize(&input, *threshold)?;
            Ok(Report::Normalize(NormalizeReport {
                postconditions: duality::postconditions(&normalized, *threshold),
                line_degree: normalized.admissibility().line_degree,
                input,
                normalized,
                plan,
            }))
        }
        Command::Verdict { shape, d, dd, threshold } => {
            let input = DualityInstance::new(shape.g, *d, *dd, parse_weights(shape)?);
            let v = duality::dimension_verdict(&input, *threshold)?;
            let elapsed_ms = elapsed(job, start);
            let oracle = job.oracle.then(|| {
                let mut ctx = FloatCtx::new(job.precision);
                let w = v.normalized.weights();
                let g = v.normalized.g();
                let here = verlinde_float(w, g, Variant::Twisted, &mut ctx);
                let there = verlinde_float(&w.transpose(), g, Variant::Twisted, &mut ctx);
                vec![
                    oracle_check(&mut ctx, job.precision, &here, &v.r_side),
                    oracle_check(&mut ctx, job.precision, &there, &v.l_side),
                ]
            });
            Ok(Report::Verdict(VerdictReport {
                equal: v.equal(),
                r_side: v.r_side.to_string(),
                l_side: v.l_side.to_string(),
                input,
                normalized: v.normalized,
                plan: v.plan,
                elapsed_ms,
                oracle,
            }))
        }
        Command::SchurEval { diagram, order, subset } => schur(job, diagram, *order, subset),
        Command::Symmetry { order, exhaustive, samples } => symmetry(job, *order, *exhaustive, *samples, start),
        Command::ParlinCheck { exhaustive_max, random_seeds, random_max } => {
            parlin(job, *exhaustive_max, *random_seeds, *random_max, start)
        }
    }
}

fn schur(job: &JobSpec, diagram: &str, order: usize, subset: &str) -> Outcome<Report> {
    let exps: Vec<usize> = subset
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Failure::Input(format!("malformed subset {subset:?}: {e}")))?;
    let r = exps.len();
    if r == 0 || r >= order || exps.iter().any(|&e| e >= order) {
        return Err(Failure::Input(format!("subset {exps:?} must have between 1 and N-1 entries in 0..{order}")));
    }
    let lam = YoungDiagram::parse(diagram, r, order - r)?;
    let pts = EvalPoint::from_subset(order as u32, &exps);
    let value = schur_eval(&lam, &pts)?;
    let oracle = job.oracle.then(|| {
        let mut ctx = FloatCtx::new(job.precision);
        let exact = ctx.embed(&value);
        let zs: Vec<Complex> = exps.iter().map(|&k| ctx.zeta(order as u32, k as i64)).collect();
        let float = ctx.schur(lam.parts(), &zs);
        let diff = ctx.sub(&float, &exact);
        let discrepancy = ctx.abs(&diff);
        let half = ctx.int(1).div(&ctx.int(2), ctx.precision(), astro_rounding());
        OracleCheck {
            digits: job.precision,
            value: format!("{float}"),
            discrepancy: ctx.render(&discrepancy),
            rounds_to_exact: discrepancy.cmp(&half).is_some_and(|c| c < 0),
        }
    });
    Ok(Report::Schur(SchurReport {
        diagram: lam.to_string(),
        order,
        subset: exps,
        rational: value.as_rational().map(|q| q.to_string()),
        value: value.to_string(),
        oracle,
    }))
}

fn astro_rounding() -> astro_float::RoundingMode {
    astro_float::RoundingMode::ToEven
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: usize,
}

impl Tally {
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String, listed: &mut Vec<String>) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if listed.len() < MAX_LISTED_FAILURES {
                listed.push(detail());
            }
        }
    }

    fn line(&self, check: &str) -> SuiteLine {
        SuiteLine::new(check, self.cases, self.failures)
    }
}

fn random_diagram(rng: &mut ChaCha8Rng, r: usize, l: usize) -> YoungDiagram {
    let mut parts: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=l)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    YoungDiagram::from_parts(&parts, r, l).expect("parts fit the rectangle")
}

/// Weight systems of at most two diagrams for every split `r + l = order`, genus at most 2.
fn all_small_instances(order: usize) -> Vec<VerlindeInstance> {
    let mut out = Vec::new();
    for r in 1..order {
        let l = order - r;
        let ds = YoungDiagram::all(r, l);
        let mut systems: Vec<Vec<YoungDiagram>> = vec![vec![]];
        for i in 0..ds.len() {
            systems.push(vec![ds[i].clone()]);
            for j in i..ds.len() {
                systems.push(vec![ds[i].clone(), ds[j].clone()]);
            }
        }
        for sys in systems {
            let ws = WeightSystem::new(r, l, sys).expect("same rectangle");
            for g in 0..=2 {
                if let Ok(inst) = VerlindeInstance::new(g, ws.clone()) {
                    out.push(inst);
                }
            }
        }
    }
    out
}

fn sampled_instances(order: usize, samples: usize, rng: &mut ChaCha8Rng) -> Vec<VerlindeInstance> {
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let r = rng.gen_range(1..order);
        let l = order - r;
        let n = rng.gen_range(0..=3);
        let ws = WeightSystem::new(r, l, (0..n).map(|_| random_diagram(rng, r, l)).collect()).expect("same rectangle");
        if let Ok(inst) = VerlindeInstance::new(rng.gen_range(0..=3), ws) {
            out.push(inst);
        }
    }
    out
}

fn symmetry(job: &JobSpec, order: usize, exhaustive: bool, samples: usize, start: Instant) -> Outcome<Report> {
    if order < 2 {
        return Err(Failure::Input(format!("N must be at least 2, got {order}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let mut listed = Vec::new();

    let mut recip = Tally::default();
    let mut check_recip = |lam: &YoungDiagram, s: &[usize], listed: &mut Vec<String>| {
        let ok = reciprocity_check(lam, s).is_ok_and(|rep| rep.holds());
        recip.record(ok, || format!("reciprocity {lam:?} at {s:?}"), listed);
    };
    if exhaustive {
        for r in 1..order {
            let ds = YoungDiagram::all(r, order - r);
            for s in Subsets::new(order, r) {
                for lam in &ds {
                    check_recip(lam, &s, &mut listed);
                }
            }
        }
    } else {
        for _ in 0..samples {
            let r = rng.gen_range(1..order);
            let lam = random_diagram(&mut rng, r, order - r);
            let mut s = rand::seq::index::sample(&mut rng, order, r).into_vec();
            s.sort_unstable();
            check_recip(&lam, &s, &mut listed);
        }
    }

    let instances = if exhaustive { all_small_instances(order) } else { sampled_instances(order, samples, &mut rng) };
    let (mut rank_level, mut cross, mut galois) = (Tally::default(), Tally::default(), Tally::default());
    for inst in &instances {
        let rep = check_rank_level(inst);
        rank_level.record(rep.as_ref().is_ok_and(|r| r.holds()), || format!("rank-level {inst:?}: {rep:?}"), &mut listed);
        let base = verlinde_all(inst, 1);
        cross.record(
            base.as_ref().is_ok_and(|v| v.cross_relations_hold(inst.r(), inst.l(), inst.g())),
            || format!("cross-relations {inst:?}: {base:?}"),
            &mut listed,
        );
        let n = order as i64;
        for a in (2..n).filter(|a| a.gcd(&n) == 1) {
            for v in Variant::ALL {
                let other = verlinde_with_root(inst, v, a);
                let ok = matches!((&base, &other), (Ok(b), Ok(o)) if b.get(v) == o);
                galois.record(ok, || format!("root {a} {v} {inst:?}: {other:?}"), &mut listed);
            }
        }
    }
    Ok(Report::Suite(SuiteReport {
        suite: format!("symmetry N={order}{}", if exhaustive { " exhaustive" } else { "" }),
        seed: (!exhaustive).then_some(job.seed),
        lines: vec![
            recip.line("schur reciprocity"),
            rank_level.line("rank-level equality"),
            cross.line("cross-relations"),
            galois.line("galois invariance"),
        ],
        failures: listed,
        elapsed_ms: elapsed(job, start),
    }))
}

struct ParlinTallies {
    tensor: Tally,
    hom: Tally,
    annihilator: Tally,
    tangent: Tally,
    string: Tally,
    listed: Vec<String>,
}

impl ParlinTallies {
    fn case(&mut self, lam: &YoungDiagram, seed: Option<u64>) {
        let (r, l) = (lam.rows(), lam.level());
        let f_kind = lam.transpose().conjugate();
        let (e, f, ft) = match seed {
            None => (
                ParabolicSpace::standard(lam),
                ParabolicSpace::standard(&f_kind),
                ParabolicSpace::standard(&lam.transpose()),
            ),
            Some(s) => (
                ParabolicSpace::random(lam, s),
                ParabolicSpace::random(&f_kind, s.wrapping_add(1)),
                ParabolicSpace::random(&lam.transpose(), s.wrapping_add(2)),
            ),
        };
        let listed = &mut self.listed;
        let g = tensor_subspace(&e, &ft).map(|g| g.dim());
        self.tensor.record(g == Ok(lam.size()), || format!("dim G {lam:?} seed {seed:?}: {g:?}"), listed);
        let h = parabolic_hom(&e, &f).map(|h| h.dim());
        self.hom.record(h == Ok(r * l - lam.size()), || format!("dim Hom {lam:?} seed {seed:?}: {h:?}"), listed);
        let a = annihilator_check(&e, &f);
        self.annihilator.record(a == Ok(true), || format!("annihilator {lam:?} seed {seed:?}"), listed);
        let t = schubert_tangent_dim(lam);
        self.tangent.record(t + lam.size() == r * l, || format!("tangent {lam:?}: {t}"), listed);
        let (fe, ff) = match seed {
            None => (FullFlag::standard(r), FullFlag::standard(l)),
            Some(s) => (FullFlag::random(r, s.wrapping_add(3)), FullFlag::random(l, s.wrapping_add(4))),
        };
        let word = lam.string_of();
        let dims: Vec<usize> = match string_filtration(&fe, &ff, lam) {
            Ok(g) => g.iter().map(Subspace::dim).collect(),
            Err(_) => Vec::new(),
        };
        let expected: Vec<usize> = (0..=r + l).map(|k| (l - word.k_l(k)) * word.k_r(k)).collect();
        self.string.record(dims == expected, || format!("string {lam:?} seed {seed:?}: {dims:?}"), listed);
    }
}

fn parlin(job: &JobSpec, exhaustive_max: usize, random_seeds: usize, random_max: usize, start: Instant) -> Outcome<Report> {
    if random_max == 0 && random_seeds > 0 {
        return Err(Failure::Input("--random-max must be positive".into()));
    }
    let mut t = ParlinTallies {
        tensor: Tally::default(),
        hom: Tally::default(),
        annihilator: Tally::default(),
        tangent: Tally::default(),
        string: Tally::default(),
        listed: Vec::new(),
    };
    for r in 1..=exhaustive_max {
        for l in 1..=exhaustive_max {
            for lam in YoungDiagram::all(r, l) {
                t.case(&lam, None);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    for _ in 0..random_seeds {
        let r = rng.gen_range(1..=random_max);
        let l = rng.gen_range(1..=random_max);
        let lam = random_diagram(&mut rng, r, l);
        let seed = rng.gen();
        t.case(&lam, Some(seed));
    }
    Ok(Report::Suite(SuiteReport {
        suite: "parlin".into(),
        seed: Some(job.seed),
        lines: vec![
            t.tensor.line("dim G = |λ|"),
            t.hom.line("dim Hom_par = |λ*|"),
            t.annihilator.line("annihilator identity"),
            t.tangent.line("schubert tangent = rl - |λ|"),
            t.string.line("string filtration dims"),
        ],
        failures: t.listed,
        elapsed_ms: elapsed(job, start),
    }))
}
