use coxinv::algebra::VarRing;
use coxinv::data::{canonical, canonical_text, transcribed, Defs};

fn assert_matches(src: &str, name: &str, vars: &[&str], golden: &str) {
    let ring = VarRing::of(vars);
    let p = Defs::parse_poly(src, &ring).unwrap().poly(name).unwrap();
    assert_eq!(p.canonical(), canonical_text(golden), "{name} in {vars:?}");
}

#[test]
fn small_transcriptions_canonicalize_to_reference_text() {
    assert_matches(transcribed::H3_DISCRIMINANT, "Delta", &["x1", "x2", "x3"], canonical::H3_DISCRIMINANT);
    assert_matches(transcribed::H3PRIME_DISCRIMINANT, "Delta", &["t1", "t3", "z"], canonical::H3PRIME_DISCRIMINANT);
    assert_matches(transcribed::H3_Q0, "Q0", &["I1", "I2", "I3"], canonical::H3_Q0);
    assert_matches(transcribed::H4_DTILDE, "Dt", &["Z2", "Z12", "Z20", "Z30"], canonical::H4_DTILDE);
}

#[test]
fn large_transcriptions_canonicalize_to_reference_text() {
    assert_matches(transcribed::H4_DISCRIMINANT, "Delta", &["x1", "x2", "x3", "x4"], canonical::H4_DISCRIMINANT);
    assert_matches(transcribed::H4_9_PSI_TILDE, "Psi", &["t1", "t2", "t4", "w0"], canonical::H4_9_PSI_TILDE);
    let z = ["Z2", "Z12", "Z20", "Z30"];
    for (name, golden) in [
        ("Y2", canonical::H4_Y2),
        ("Y12", canonical::H4_Y12),
        ("Y20", canonical::H4_Y20),
        ("Y30", canonical::H4_Y30),
    ] {
        assert_matches(transcribed::H4_Y_IN_Z, name, &z, golden);
    }
}
