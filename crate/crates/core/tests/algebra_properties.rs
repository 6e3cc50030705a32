use std::sync::Arc;

use modloc_core::algebra::sampling::RationalSampler;
use modloc_core::algebra::Polynomial;

#[test]
fn rational_field_axioms_hold_exactly() {
    let mut s = RationalSampler::new(3);
    for _ in 0..500 {
        let (a, b, c) = (s.rational(), s.rational(), s.rational());
        assert_eq!((&a + &b) + &c, &a + (&b + &c));
        assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }
}

#[test]
fn partial_is_linear_and_leibniz() {
    let vars: Arc<[String]> = ["x", "y", "z"].iter().map(|v| v.to_string()).collect();
    let mut s = RationalSampler::new(8);
    for trial in 0..100 {
        let f = s.sparse_polynomial(&vars, 4, 3);
        let g = s.sparse_polynomial(&vars, 4, 3);
        let c = s.rational();
        let name = vars[trial % 3].as_str();
        let d = |p: &Polynomial| p.partial(name).unwrap();

        let lin = &f.scale(&c) + &g;
        assert_eq!(d(&lin), &d(&f).scale(&c) + &d(&g), "trial {trial}");

        let prod = &f * &g;
        assert_eq!(d(&prod), &(&d(&f) * &g) + &(&f * &d(&g)), "trial {trial}");
    }
}
