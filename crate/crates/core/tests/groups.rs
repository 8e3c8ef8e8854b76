use std::collections::BTreeSet;

use coxinv::algebra::{Golden, Poly, VarRing};
use coxinv::coxeter::{
    character_mismatch, enumerate_group, find_reflections, generators_h3, generators_h4, normalize_form, Variant,
};
use coxinv::data::{transcribed, Defs};

fn normalized_set(forms: &[Poly]) -> BTreeSet<String> {
    forms.iter().map(|f| normalize_form(f).canonical()).collect()
}

#[test]
fn h4_order_reflections_and_printed_forms() {
    let gs = generators_h4(Variant::Plain);
    let t = enumerate_group(&gs).unwrap();
    assert_eq!(t.order(), 14400);
    let ring = VarRing::of(&["u1", "u2", "u3", "u4"]);
    let refl = find_reflections(&t, &ring);
    assert_eq!(refl.len(), 60);
    let printed = Defs::parse_poly(transcribed::H4_FORMS, &ring).unwrap().numbered("l").unwrap();
    assert_eq!(printed.len(), 60);
    let found: Vec<Poly> = refl.iter().map(|r| r.form.clone()).collect();
    assert_eq!(normalized_set(&found), normalized_set(&printed));

    for m in &t.elements {
        assert!(m.transpose().mul(m).is_identity());
        let d = m.det();
        assert!(d == Golden::one() || d == Golden::from_int(-1));
    }
    let star = enumerate_group(&generators_h4(Variant::Star)).unwrap();
    assert_eq!(star.keys(), t.conj().keys());
    assert!(character_mismatch(&gs, &generators_h4(Variant::Star), &[0, 1]).passed());
}

#[test]
fn h3_forms_match_repaired_list() {
    let t = enumerate_group(&generators_h3(Variant::Plain)).unwrap();
    let ring = VarRing::of(&["u1", "u2", "u3"]);
    let found: Vec<Poly> = find_reflections(&t, &ring).into_iter().map(|r| r.form).collect();
    let printed = Defs::parse_poly(transcribed::H3_FORMS, &ring).unwrap().numbered("l").unwrap();
    assert_eq!(normalized_set(&found), normalized_set(&printed));
    assert_eq!(normalized_set(&printed).len(), 15);
}
