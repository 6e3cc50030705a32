//! JSON encodings of exact values.
//!
//! Rationals become `{"num": "...", "den": "..."}` with decimal strings;
//! integers become exact JSON numbers of any size; polynomials list their
//! terms in ascending lex order of exponent vectors.

use modloc_core::algebra::{Polynomial, Rational};
use modloc_core::moduli_local::ConePresentation;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn rational(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn integer(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("decimal integer is valid JSON")
}

pub fn polynomial(p: &Polynomial) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!({ "exp": e, "coef": rational(c) })).collect();
    json!({ "vars": p.var_names(), "terms": terms })
}

pub fn cone(c: &ConePresentation) -> Value {
    json!({
        "variables": c.variables,
        "equations": c.equations.iter().map(polynomial).collect::<Vec<_>>(),
        "free_dim": c.free_dim,
        "declared_multiplicity": integer(&c.declared_multiplicity),
        "tangent_space_dim": c.tangent_space_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use modloc_core::algebra::{int, rat};

    #[test]
    fn schema_examples() {
        assert_eq!(rational(&rat(1, 2)).to_string(), r#"{"den":"2","num":"1"}"#);
        let p = Polynomial::zero_in(&["T"]).unwrap();
        let t = Polynomial::var(p.vars().clone(), "T").unwrap().scale(&int(2));
        assert_eq!(
            polynomial(&t).to_string(),
            r#"{"terms":[{"coef":{"den":"1","num":"2"},"exp":[1]}],"vars":["T"]}"#
        );
    }

    #[test]
    fn large_integers_stay_exact() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(integer(&n).to_string(), "123456789012345678901234567890");
    }
}
