//! The `verify` suite: every closed form against its oracle and every
//! identity on seeded random inputs.

use std::thread;

use modloc_core::algebra::sampling::RationalSampler;
use modloc_core::algebra::{binomial, GaussianRational, Rational};
use modloc_core::determinantal::{harris_tu_degree, multiplicity_trivial_rank2};
use modloc_core::invariants::{
    invariant_presentation, so3_eval_from_vectors, so3_verify_relations, trace_of_product, vector_to_matrix,
    verify_polarized_trace_identity, verify_polarized_trace_identity_with, CharPolyMode, TorusActionSpec,
};
use modloc_core::moduli_local::{multiplicity_case1, segre_degree_oracle, theta_multiplicity, SplitPoint};
use modloc_core::special_models::{
    coble_local_model, degree_of_theta_map, kummer_partials_check, theta_map_hilbert_polynomial, CobleCase,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::commands::corank_values;
use crate::report::{Check, CliError, Request};

type Item = fn(&str, &Params) -> Result<Check, CliError>;

pub(crate) struct Params {
    seed: u64,
    trials: usize,
}

const ITEMS: &[(&str, Item)] = &[
    ("segre_multiplicity", segre),
    ("multiplicity_one_scan", multiplicity_one),
    ("corank_formula", corank),
    ("harris_tu_sanity", harris_tu),
    ("rank2_trivial_multiplicity", rank2_trivial),
    ("torus_invariants", torus),
    ("weyl_relations", weyl),
    ("lebruyn_traces", lebruyn),
    ("trace_identity_2", |n, p| trace_identity(n, p, 2)),
    ("trace_identity_3", |n, p| trace_identity(n, p, 3)),
    ("trace_identity_negative_control", trace_negative),
    ("theta_map_degree", theta_map),
    ("kummer_ideal", kummer),
    ("theta_multiplicity", theta),
];

/// Runs every item, concurrently, and reports them in a fixed order.
pub fn run_suite(r: &Request) -> Result<(Value, Vec<Check>), CliError> {
    let seed = r.required("seed")?;
    let trials = r.natural("trials")?.unwrap_or(100);
    if trials == 0 {
        return Err(CliError::InvalidParameter("--trials must be at least 1".into()));
    }
    let params = Params { seed, trials: trials as usize };
    let outcomes: Vec<Result<Check, CliError>> = thread::scope(|s| {
        let handles: Vec<_> = ITEMS.iter().map(|(name, f)| s.spawn(|| f(name, &params))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Internal("suite item panicked".into()))))
            .collect()
    });
    let checks = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    let passed = checks.iter().filter(|c| c.passed()).count();
    let results = json!({ "seed": seed, "trials": trials, "passed": passed, "total": checks.len() });
    Ok((results, checks))
}


fn segre(name: &str, _: &Params) -> Result<Check, CliError> {
    let mut bad = Vec::new();
    for a in 1..=5u64 {
        for b in 1..=5u64 {
            if binomial(a + b - 2, a - 1) != segre_degree_oracle(a, b)? {
                bad.push((a, b));
            }
        }
    }
    Ok(Check::new(name, bad.is_empty(), format!("1 <= a, b <= 5; mismatches {bad:?}")))
}

fn multiplicity_one(name: &str, _: &Params) -> Result<Check, CliError> {
    let mut ones = Vec::new();
    for g in 2..=6 {
        for r1 in 1..=3 {
            for r2 in 1..=3 {
                if multiplicity_case1(&SplitPoint::new(g, r1, r2)?) == BigInt::from(1) {
                    ones.push((g, r1, r2));
                }
            }
        }
    }
    Ok(Check::new(
        name,
        ones == [(2, 1, 1)],
        format!("multiplicity 1 exactly at {ones:?}"),
    ))
}

fn corank(name: &str, p: &Params) -> Result<Check, CliError> {
    let mut detail = Vec::new();
    let mut ok = true;
    for g in 3..=8u64 {
        let (formula, brute) = corank_values(g, p.seed, 2)?;
        ok &= brute.iter().all(|&b| b as u64 == formula);
        detail.push(format!("g={g}: formula {formula}, contraction {brute:?}"));
    }
    Ok(Check::new(name, ok, detail.join("; ")))
}

fn harris_tu(name: &str, _: &Params) -> Result<Check, CliError> {
    let mut ok = true;
    for g in 1..=10u64 {
        ok &= harris_tu_degree(g, 1)? == BigInt::from(g);
        ok &= harris_tu_degree(g, g)? == BigInt::from(1);
        if g >= 2 {
            ok &= harris_tu_degree(g, 2)? == binomial(g + 1, 3);
        }
    }
    Ok(Check::new(name, ok, "d_g^1 = g, d_g^2 = C(g+1,3), d_g^g = 1 for g <= 10"))
}

fn rank2_trivial(name: &str, _: &Params) -> Result<Check, CliError> {
    let m: Vec<BigInt> =
        (2..=4).map(|g| multiplicity_trivial_rank2(g).map(|r| r.multiplicity)).collect::<Result<_, _>>()?;
    let coble = coble_local_model(CobleCase::Trivial)?.presentation.declared_multiplicity;
    let ok = m == [BigInt::from(1), BigInt::from(2), BigInt::from(20)] && coble == m[1];
    Ok(Check::new(
        name,
        ok,
        format!("g = 2, 3, 4 give {m:?}; local model T^2 - det has multiplicity {coble}"),
    ))
}

fn torus(name: &str, _: &Params) -> Result<Check, CliError> {
    let spec = TorusActionSpec::from_ranks(2, &[1, 1, 1])?;
    let pres = invariant_presentation(&spec, 3, 6)?;
    let rel: Vec<String> = pres.relations.iter().map(ToString::to_string).collect();
    let ok = pres.generators.len() == 5
        && rel.len() == 1
        && (rel[0] == "zeta_1*zeta_2*zeta_3 - zeta_4*zeta_5" || rel[0] == "-zeta_1*zeta_2*zeta_3 + zeta_4*zeta_5")
        && pres.relations_vanish()?;
    Ok(Check::new(name, ok, format!("{} generators, relations {rel:?}", pres.generators.len())))
}

fn weyl(name: &str, p: &Params) -> Result<Check, CliError> {
    let mut violations = 0usize;
    let mut first = None;
    for g in [4usize, 5, 6] {
        let mut s = RationalSampler::with_stream(p.seed, 100 + g as u64);
        for _ in 0..p.trials {
            let u: Vec<Vec<Rational>> = (0..g).map(|_| s.vector(3)).collect();
            let bad = so3_verify_relations(&so3_eval_from_vectors(&u)?);
            if let (None, Some(b)) = (&first, bad.first()) {
                first = Some(format!("g={g}: {b}"));
            }
            violations += bad.len();
        }
    }
    Ok(Check::new(
        name,
        violations == 0,
        format!("{} tuples for each g in 4, 5, 6; {violations} violations{}", p.trials, first.map(|f| format!(", first {f}")).unwrap_or_default()),
    ))
}

fn lebruyn(name: &str, p: &Params) -> Result<Check, CliError> {
    let mut s = RationalSampler::with_stream(p.seed, 200);
    let two = Rational::from_integer(2.into());
    let kappa = GaussianRational::new(Rational::from_integer(0.into()), two.clone());
    let lift = |u: &[Rational]| [0, 1, 2].map(|k| GaussianRational::real(u[k].clone()));
    let mut ok = true;
    for _ in 0..p.trials {
        let (a, b, c) = (s.vector(3), s.vector(3), s.vector(3));
        let (x, y, z) = (vector_to_matrix(&lift(&a)), vector_to_matrix(&lift(&b)), vector_to_matrix(&lift(&c)));
        let dot: Rational = (0..3).map(|k| &a[k] * &b[k]).sum();
        ok &= trace_of_product(&[x.clone(), y.clone()]) == GaussianRational::real(&dot * &two);
        let det = so3_eval_from_vectors(&[a, b, c])?.triple(1, 2, 3);
        ok &= trace_of_product(&[x, y, z]) == &kappa * &GaussianRational::real(det);
    }
    Ok(Check::new(name, ok, format!("Tr(XY) = 2 u.v and Tr(XYZ) = 2i det over {} triples", p.trials)))
}

fn trace_identity(name: &str, p: &Params, n: usize) -> Result<Check, CliError> {
    let ok = verify_polarized_trace_identity(n, p.trials, p.seed)?;
    Ok(Check::new(name, ok, format!("{} random {n}-by-{n} tuples", p.trials)))
}

fn trace_negative(name: &str, p: &Params) -> Result<Check, CliError> {
    let holds = verify_polarized_trace_identity_with(2, p.trials, p.seed, CharPolyMode::LeadingTerm)?;
    Ok(Check::new(name, !holds, "truncated characteristic polynomial must be detected"))
}

fn theta_map(name: &str, _: &Params) -> Result<Check, CliError> {
    let lead = theta_map_hilbert_polynomial()?.coefficient(&[8]);
    let deg = degree_of_theta_map()?;
    let ok = lead == Rational::new(2.into(), 40320.into()) && deg == BigInt::from(2);
    Ok(Check::new(name, ok, format!("leading coefficient {lead}, degree {deg}")))
}

fn kummer(name: &str, _: &Params) -> Result<Check, CliError> {
    Ok(Check::new(name, kummer_partials_check()?, "partials of T^2 - det generate (T, 2x2 minors)"))
}

fn theta(name: &str, _: &Params) -> Result<Check, CliError> {
    let mut ok = true;
    for g in 2..=6 {
        let base = multiplicity_case1(&SplitPoint::new(g, 1, 1)?);
        for h in 1..=3u64 {
            ok &= theta_multiplicity(g, h)? == BigInt::from(h) * &base;
        }
    }
    Ok(Check::new(name, ok, "h * C(2g-4, g-2) for 2 <= g <= 6, 1 <= h <= 3"))
}
