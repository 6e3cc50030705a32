//! Dispatch from a [`Request`] to the library.

use modloc_core::algebra::sampling::RationalSampler;
use modloc_core::algebra::{binomial, Rational};
use modloc_core::determinantal::{
    corank_bruteforce, corank_formula, multiplicity_trivial_rank2, random_rank3_symmetric, tangent_cone_trivial_rank2,
    CorankMap,
};
use modloc_core::invariants::{certify_hilbert_basis, invariant_presentation, TorusActionSpec};
use modloc_core::moduli_local::{
    multiplicity_case1, segre_degree_oracle, tangent_cone_case1, tangent_space_dim_case1, theta_multiplicity,
    SplitPoint,
};
use modloc_core::special_models::{
    coble_local_model, degree_of_theta_map, su3_genus2_local_model, theta_map_hilbert_polynomial, CobleCase,
    Su3Case,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::json;
use crate::report::{Check, CliError, Command, Report, Request};
use crate::verify;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Runs one request and assembles its report.
pub fn run(request: &Request) -> Result<Report, CliError> {
    let (results, checks) = match request.command {
        Command::Mult => mult(request)?,
        Command::TangentCone => tangent_cone(request)?,
        Command::Invariants => invariants(request)?,
        Command::Corank => corank(request)?,
        Command::Hilbert => hilbert()?,
        Command::Theta => theta(request)?,
        Command::Verify => verify::run_suite(request)?,
    };
    Ok(Report {
        command: request.command.name().to_string(),
        inputs: request.params.clone(),
        results,
        checks,
        version: VERSION.to_string(),
    })
}

type Outcome = Result<(Value, Vec<Check>), CliError>;

fn split_point(r: &Request) -> Result<SplitPoint, CliError> {
    Ok(SplitPoint::new(r.required("g")?, r.required("r1")?, r.required("r2")?)?)
}

fn case<'a>(r: &'a Request, default: &'a str) -> &'a str {
    r.text("case").unwrap_or(default)
}

fn mult(r: &Request) -> Outcome {
    match case(r, "split") {
        "split" => {
            let p = split_point(r)?;
            let d = p.off_diagonal_dim();
            let m = multiplicity_case1(&p);
            let oracle = segre_degree_oracle(d, d)?;
            let results = json!({
                "case": "split",
                "multiplicity": json::integer(&m),
                "off_diagonal_dim": d,
                "tangent_space_dim": tangent_space_dim_case1(&p),
            });
            let check = Check::consistency(
                "multiplicity_equals_segre_oracle",
                m == oracle,
                format!("C(2d-2, d-1) = {m}, Hilbert interpolation = {oracle}"),
            );
            Ok((results, vec![check]))
        }
        "trivial-rank2" => {
            let rep = multiplicity_trivial_rank2(r.required("g")?)?;
            let expected = if rep.g == 2 { BigInt::from(1) } else { BigInt::from(1 + rep.corank_dim) * &rep.segre_factor };
            let results = json!({
                "case": "trivial-rank2",
                "multiplicity": json::integer(&rep.multiplicity),
                "corank_dim": rep.corank_dim,
                "segre_factor": json::integer(&rep.segre_factor),
                "tangent_space_dim": rep.tangent_space_dim,
            });
            let check = Check::consistency(
                "multiplicity_is_length_times_degree",
                rep.multiplicity == expected,
                format!("(1 + {}) * {} = {}", rep.corank_dim, rep.segre_factor, rep.multiplicity),
            );
            Ok((results, vec![check]))
        }
        other => Err(CliError::InvalidParameter(format!("--case for mult must be split or trivial-rank2, got {other:?}"))),
    }
}

fn tangent_cone(r: &Request) -> Outcome {
    let (name, cone) = match case(r, "split") {
        "split" => ("split".to_string(), tangent_cone_case1(&split_point(r)?)?),
        "trivial-rank2" => ("trivial-rank2".to_string(), tangent_cone_trivial_rank2(r.required("g")?)?),
        "su3-torus" => {
            let m = su3_genus2_local_model(Su3Case::Torus)?;
            (m.name, m.presentation)
        }
        "su3-two-summand" => {
            let m = su3_genus2_local_model(Su3Case::TwoSummand)?;
            (m.name, m.presentation)
        }
        "coble-trivial" => {
            let m = coble_local_model(CobleCase::Trivial)?;
            (m.name, m.presentation)
        }
        "coble-split" => {
            let m = coble_local_model(CobleCase::Split)?;
            (m.name, m.presentation)
        }
        other => return Err(CliError::InvalidParameter(format!("unknown --case {other:?} for tangent-cone"))),
    };
    let zariski = cone.zariski_tangent_dim();
    let check = Check::consistency(
        "tangent_space_dim_matches_presentation",
        zariski == cone.tangent_space_dim,
        format!("formula {}, from linear parts {zariski}", cone.tangent_space_dim),
    );
    let results = json!({ "model": name, "presentation": json::cone(&cone) });
    Ok((results, vec![check]))
}

fn invariants(r: &Request) -> Outcome {
    let g = r.required("g")?;
    let mut ranks = vec![r.required("r1")?, r.required("r2")?];
    if let Some(r3) = r.natural("r3")? {
        ranks.push(r3);
    }
    let bound = r.natural("degree-bound")?.unwrap_or(3);
    if bound == 0 {
        return Err(CliError::InvalidParameter("--degree-bound must be at least 1".into()));
    }
    let bound = u32::try_from(bound).map_err(|_| CliError::InvalidParameter("--degree-bound too large".into()))?;
    let x_bound = 2 * bound;
    let spec = TorusActionSpec::from_ranks(g, &ranks)?;
    let pres = invariant_presentation(&spec, bound, x_bound)?;
    let gap = certify_hilbert_basis(&spec, &pres.generators, x_bound);
    let results = json!({
        "x_variables": pres.x_variables,
        "generators": pres.generators,
        "generator_monomials": pres.generator_monomials().iter().map(json::polynomial).collect::<Vec<_>>(),
        "relations": pres.relations.iter().map(json::polynomial).collect::<Vec<_>>(),
        "degree_bound": bound,
        "relation_degree_bound": x_bound,
        "completeness": format!(
            "generators complete up to degree {bound}; every invariant monomial up to degree {x_bound} checked to decompose"
        ),
    });
    let checks = vec![
        Check::new(
            "hilbert_basis_decomposes",
            gap.is_none(),
            match &gap {
                None => format!("all invariant monomials up to degree {x_bound} decompose"),
                Some(e) => format!("{e:?} does not decompose"),
            },
        ),
        Check::consistency("relations_vanish", pres.relations_vanish()?, "relations substituted with generators"),
    ];
    Ok((results, checks))
}

/// Closed form against the explicit contraction matrix on `diag(1,1,1,0,..)`
/// and on `samples` seeded random rank-3 matrices.
pub(crate) fn corank_values(g: u64, seed: u64, samples: u64) -> Result<(u64, Vec<usize>), CliError> {
    if g < 3 {
        return Err(CliError::InvalidParameter(format!("corank needs g >= 3, got {g}")));
    }
    let formula = corank_formula(g)?;
    let gs = g as usize;
    let mut diag = vec![Rational::from_integer(0.into()); gs];
    for d in diag.iter_mut().take(3) {
        *d = Rational::from_integer(1.into());
    }
    let mut brute = vec![corank_bruteforce(&CorankMap::diagonal(&diag))];
    for k in 0..samples {
        let mut s = RationalSampler::with_stream(seed, g * 1000 + k);
        brute.push(corank_bruteforce(&CorankMap::new(random_rank3_symmetric(&mut s, gs))?));
    }
    Ok((formula, brute))
}

fn corank(r: &Request) -> Outcome {
    let g = r.required("g")?;
    let seed = r.natural("seed")?.unwrap_or(0);
    let samples = r.natural("samples")?.unwrap_or(3);
    let (formula, brute) = corank_values(g, seed, samples)?;
    let agree = brute.iter().all(|&b| b as u64 == formula);
    let results = json!({
        "g": g,
        "formula": formula,
        "bruteforce_diagonal": brute[0],
        "bruteforce_random": &brute[1..],
        "wedge3_dim": json::integer(&binomial(g, 3)),
    });
    let check = Check::consistency(
        "formula_equals_bruteforce",
        agree,
        format!("C(g,3) - C(g-3,3) = {formula}, contraction coranks {brute:?}"),
    );
    Ok((results, vec![check]))
}

fn hilbert() -> Outcome {
    let p = theta_map_hilbert_polynomial()?;
    let degree = degree_of_theta_map()?;
    let results = json!({
        "polynomial": json::polynomial(&p),
        "leading_coefficient": json::rational(&p.coefficient(&[8])),
        "degree_of_map": json::integer(&degree),
    });
    let check = Check::consistency("degree_is_two", degree == BigInt::from(2), format!("8! * leading coefficient = {degree}"));
    Ok((results, vec![check]))
}

fn theta(r: &Request) -> Outcome {
    let g = r.required("g")?;
    let h = r.required("h")?;
    let m = theta_multiplicity(g, h)?;
    let base = multiplicity_case1(&SplitPoint::new(g, 1, 1)?);
    let results = json!({ "multiplicity": json::integer(&m) });
    let check = Check::consistency(
        "h_times_case1",
        m == BigInt::from(h) * &base,
        format!("{h} * {base} vs {m}"),
    );
    Ok((results, vec![check]))
}
