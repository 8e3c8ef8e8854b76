//! Polynomials transcribed from printed displays, and the canonical text of
//! those that are compared verbatim.
//!
//! Transcriptions are definition files (`name = expr;`) parsed at runtime;
//! canonical files hold one polynomial in canonical text after `#` header
//! lines.

use std::collections::HashMap;

use crate::algebra::text::{parse_defs, split_defs, Env};
use crate::algebra::{AlgebraError, Basis, DenomBasis, LocPoly, Poly, Ring};

macro_rules! data_file {
    ($name:ident, $path:literal) => {
        pub const $name: &str = include_str!(concat!("../data/", $path));
    };
}

/// Definition files.
pub mod transcribed {
    data_file!(H3_PREPOTENTIAL, "transcribed/h3_prepotential.txt");
    data_file!(H3_DISCRIMINANT, "transcribed/h3_discriminant.txt");
    data_file!(H3_FORMS, "transcribed/h3_forms.txt");
    data_file!(H3_EQUIVARIANT, "transcribed/h3_equivariant.txt");
    data_file!(H3_J_IN_I, "transcribed/h3_j_in_i.txt");
    data_file!(H3_XSTAR_IN_X, "transcribed/h3_xstar_in_x.txt");
    data_file!(H3_XSTAR_IN_T, "transcribed/h3_xstar_in_t.txt");
    data_file!(H3_Q0, "transcribed/h3_q0.txt");
    data_file!(H3_WEIGHT_MAPS, "transcribed/h3_weight_maps.txt");
    data_file!(H3_FVW, "transcribed/h3_fvw.txt");
    data_file!(H3PRIME_PREPOTENTIAL, "transcribed/h3prime_prepotential.txt");
    data_file!(H3PRIME_DISCRIMINANT, "transcribed/h3prime_discriminant.txt");
    data_file!(H4_INVARIANTS, "transcribed/h4_invariants.txt");
    data_file!(H4_FORMS, "transcribed/h4_forms.txt");
    data_file!(H4_DTILDE, "transcribed/h4_dtilde.txt");
    data_file!(H4_Y_IN_Z, "transcribed/h4_y_in_z.txt");
    data_file!(H4_PREPOTENTIAL, "transcribed/h4_prepotential.txt");
    data_file!(H4_DISCRIMINANT, "transcribed/h4_discriminant.txt");
    data_file!(H4_MAP_X_Z, "transcribed/h4_map_x_z.txt");
    data_file!(H4_9_PREPOTENTIAL, "transcribed/h4_9_prepotential.txt");
    data_file!(H4_9_PSI_TILDE, "transcribed/h4_9_psi_tilde.txt");
    data_file!(H4_MAPS, "transcribed/h4_maps.txt");
}

/// Canonical text of verbatim-compared polynomials.
pub mod canonical {
    data_file!(H3_DISCRIMINANT, "golden/h3_discriminant.txt");
    data_file!(H3PRIME_DISCRIMINANT, "golden/h3prime_discriminant.txt");
    data_file!(H3_Q0, "golden/h3_q0.txt");
    data_file!(H4_DISCRIMINANT, "golden/h4_discriminant.txt");
    data_file!(H4_DTILDE, "golden/h4_dtilde.txt");
    data_file!(H4_9_PSI_TILDE, "golden/h4_9_psi_tilde.txt");
    data_file!(H4_Y2, "golden/h4_y2.txt");
    data_file!(H4_Y12, "golden/h4_y12.txt");
    data_file!(H4_Y20, "golden/h4_y20.txt");
    data_file!(H4_Y30, "golden/h4_y30.txt");
}

/// The polynomial line of a canonical file.
pub fn canonical_text(file: &str) -> &str {
    file.lines().find(|l| !l.starts_with('#') && !l.trim().is_empty()).map(str::trim).unwrap_or("")
}

/// Parsed definitions of one file.
#[derive(Clone, Debug)]
pub struct Defs {
    values: HashMap<String, LocPoly>,
}

impl Defs {
    pub fn parse(src: &str, basis: &Basis) -> Result<Defs, AlgebraError> {
        let mut env = Env::new();
        let values = parse_defs(src, basis, &mut env)?.into_iter().collect();
        Ok(Defs { values })
    }

    pub fn parse_poly(src: &str, ring: &Ring) -> Result<Defs, AlgebraError> {
        Defs::parse(src, &DenomBasis::trivial(ring))
    }

    /// Parses only the named statements, so that names defined elsewhere in
    /// the file cannot shadow variables of `basis`.
    pub fn parse_only(src: &str, names: &[&str], basis: &Basis) -> Result<Defs, AlgebraError> {
        let mut picked = String::new();
        for (name, body) in split_defs(src)? {
            if names.contains(&name.as_str()) {
                picked.push_str(&format!("{name} = {body};\n"));
            }
        }
        Defs::parse(&picked, basis)
    }

    pub fn loc(&self, name: &str) -> Result<LocPoly, AlgebraError> {
        self.values.get(name).cloned().ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn poly(&self, name: &str) -> Result<Poly, AlgebraError> {
        let v = self.loc(name)?;
        v.as_poly().cloned().ok_or_else(|| AlgebraError::NotDivisible(format!("{name} = {v}")))
    }

    /// `prefix1, prefix2, ...` for as long as they are defined.
    pub fn numbered(&self, prefix: &str) -> Result<Vec<Poly>, AlgebraError> {
        let mut out = Vec::new();
        while let Some(v) = self.values.get(&format!("{prefix}{}", out.len() + 1)) {
            out.push(v.as_poly().cloned().ok_or_else(|| AlgebraError::NotDivisible(v.to_string()))?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarRing;

    #[test]
    fn canonical_line_skips_header() {
        assert_eq!(canonical_text("# a\n# b\nx1+1\n"), "x1+1");
    }

    #[test]
    fn forms_parse_with_local_constants() {
        let ring = VarRing::of(&["u1", "u2", "u3"]);
        let d = Defs::parse_poly(transcribed::H3_FORMS, &ring).unwrap();
        let forms = d.numbered("l").unwrap();
        assert_eq!(forms.len(), 15);
        assert_eq!(forms[6].canonical(), "u1+(-1/2-1/2*r5)*u2+(-1/2+1/2*r5)*u3");
    }
}
