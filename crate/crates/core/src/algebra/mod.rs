//! Finite fields, projective matrices and Cayley digraphs of matrix groups.

pub mod cayley;
pub mod field;
pub mod projective;

pub use cayley::{pgl_order, psl_order, CayleyDigraph, DEFAULT_CLOSURE_CAP};
pub use field::{is_prime, legendre, FieldElem, FieldSpec};
pub use projective::{determinant, ProjMatrix};

use crate::error::{Error, Result};

/// Generators of the 4-regular Cayley digraph of PSL_2(F_31).
pub const PSL2_F31_GENERATORS: &str = include_str!("../../data/psl2_f31.txt");
/// Four generators in PGL_3(F_4), F_4 = F_2[x]/(x^2+x+1).
pub const PGL3_F4_GENERATORS: &str = include_str!("../../data/pgl3_f4.txt");

/// Parsed generator file.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub field: FieldSpec,
    pub d: usize,
    pub generators: Vec<ProjMatrix>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_coeff_list(s: &str, line: usize) -> Result<Vec<u64>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| parse_err(line, format!("expected [..], got `{s}`")))?;
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| parse_err(line, format!("bad coefficient `{t}`")))
        })
        .collect()
}

/// Parses the field header `field p=<p> e=<e> mod=[c0,c1,..]`.
pub fn parse_field_header(s: &str) -> Result<FieldSpec> {
    let mut toks = s.split_whitespace();
    if toks.next() != Some("field") {
        return Err(parse_err(1, "header must start with `field`"));
    }
    let (mut p, mut e, mut modulus) = (None, None, None);
    for t in toks {
        let (key, val) = t
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("expected key=value, got `{t}`")))?;
        match key {
            "p" => p = Some(val.parse::<u64>().map_err(|_| parse_err(1, "bad p"))?),
            "e" => e = Some(val.parse::<usize>().map_err(|_| parse_err(1, "bad e"))?),
            "mod" => modulus = Some(parse_coeff_list(val, 1)?),
            _ => return Err(parse_err(1, format!("unknown key `{key}`"))),
        }
    }
    let p = p.ok_or_else(|| parse_err(1, "missing p"))?;
    let e = e.unwrap_or(1);
    let modulus = modulus.unwrap_or_else(|| vec![0, 1]);
    if modulus.len() != e + 1 {
        return Err(parse_err(1, "modulus degree does not match e"));
    }
    FieldSpec::new(p, modulus)
}

/// Parses a generator file: a field header followed by one matrix per line,
/// entries row-major. Prime-field entries are decimal integers; extension
/// entries are coefficient tuples `[c0,c1,..]` meaning `c0 + c1 x + ..`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_generators(text: &str) -> Result<GeneratorSet> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty generator file"))?;
    let field = parse_field_header(header)?;
    let mut d = None;
    let mut generators = Vec::new();
    for (ln, l) in lines {
        let entries = l
            .split_whitespace()
            .map(|tok| {
                if tok.starts_with('[') {
                    field.from_coeffs(&parse_coeff_list(tok, ln)?)
                } else {
                    let v = tok
                        .parse::<u64>()
                        .map_err(|_| parse_err(ln, format!("bad entry `{tok}`")))?;
                    if field.e > 1 && v >= field.p {
                        return Err(parse_err(ln, format!("entry {v} not below p")));
                    }
                    Ok(field.from_u64(v))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() || dim == 0 {
            return Err(parse_err(ln, format!("{} entries is not a square", entries.len())));
        }
        if *d.get_or_insert(dim) != dim {
            return Err(parse_err(ln, "matrices of different sizes"));
        }
        generators.push(ProjMatrix::canonical(&field, dim, &entries)?);
    }
    let d = d.ok_or_else(|| parse_err(1, "no generators"))?;
    Ok(GeneratorSet {
        field,
        d,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_generator_files_parse() {
        let g = parse_generators(PSL2_F31_GENERATORS).unwrap();
        assert_eq!((g.field.p, g.field.e, g.d, g.generators.len()), (31, 1, 2, 4));
        let h = parse_generators(PGL3_F4_GENERATORS).unwrap();
        assert_eq!((h.field.p, h.field.e, h.d, h.generators.len()), (2, 2, 3, 4));
        assert_eq!(h.field, FieldSpec::f4());
    }

    #[test]
    fn generator_file_errors() {
        assert!(parse_generators("").is_err());
        assert!(parse_generators("field p=9\n1 0 0 1\n").is_err());
        assert!(parse_generators("field p=5\n1 0 0\n").is_err());
        assert_eq!(
            parse_generators("field p=5\n1 2 2 4\n").unwrap_err(),
            Error::SingularMatrix
        );
        assert!(parse_generators("field p=5\n1 0 0 1\n1 0 0 0 1 0 0 0 1\n").is_err());
    }
}
