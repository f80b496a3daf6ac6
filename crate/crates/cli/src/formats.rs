//! Parsers for the descriptor, universe, and sequence file formats.
//! Grammars are documented in FORMATS.md at the repository root. Errors
//! carry line/column positions; canonicalization fixups come back as
//! warnings rather than errors.

use kgr_core::abgroup::parse_group;
use kgr_core::crt::{CrtData, RationalCrt, RealKData};
use kgr_core::folner::parse_ext_group;
use kgr_core::groring::Universe;
use kgr_core::homalg::{hom_well_defined, CyclicSequence, GroupHom, PresentedGroup};
use kgr_core::kchar::{AlgebraDescriptor, DescriptorKData, FieldBase, Flags, KData};
use kgr_core::matrix::IntMatrix;
use kgr_core::{Error, FgAbGroup};

type Result<T> = std::result::Result<T, Error>;

/// A parsed universe plus human-readable warnings (auto-canonicalized
/// torsion lists and the like).
pub struct ParsedUniverse {
    pub universe: Universe,
    pub warnings: Vec<String>,
}

pub fn parse_universe(text: &str) -> Result<ParsedUniverse> {
    let mut universe = Universe::new();
    let mut warnings = Vec::new();
    let mut lines = text.lines().enumerate().peekable();

    while let Some((idx, raw)) = lines.next() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        if let Some(rest) = line.strip_prefix("algebra") {
            let rest = rest.trim();
            let name = rest
                .strip_suffix('{')
                .map(str::trim)
                .filter(|n| !n.is_empty())
                .ok_or_else(|| Error::parse(lineno, 1, "expected `algebra <name> {`"))?;
            let mut body = Vec::new();
            let mut closed = false;
            for (bidx, braw) in lines.by_ref() {
                let bline = strip_comment(braw);
                if bline == "}" {
                    closed = true;
                    break;
                }
                if !bline.is_empty() {
                    body.push((bidx + 1, bline.to_string()));
                }
            }
            if !closed {
                return Err(Error::parse(lineno, 1, format!("unterminated `algebra {name}` block")));
            }
            let descriptor = parse_algebra_body(name, &body, &mut warnings)?;
            universe
                .register(descriptor)
                .map_err(|e| Error::parse(lineno, 1, e.to_string()))?;
        } else if let Some(rest) = line.strip_prefix("relation") {
            let mut sub = None;
            let mut mid = None;
            let mut quot = None;
            let mut verified = false;
            for token in rest.split_whitespace() {
                match token.split_once('=') {
                    Some(("sub", v)) => sub = Some(v.to_string()),
                    Some(("mid", v)) => mid = Some(v.to_string()),
                    Some(("quot", v)) => quot = Some(v.to_string()),
                    None if token == "verified" => verified = true,
                    _ => {
                        return Err(Error::parse(
                            lineno,
                            1,
                            format!("unrecognized relation token `{token}`"),
                        ))
                    }
                }
            }
            let (sub, mid, quot) = match (sub, mid, quot) {
                (Some(s), Some(m), Some(q)) => (s, m, q),
                _ => {
                    return Err(Error::parse(
                        lineno,
                        1,
                        "relation needs sub=<name> mid=<name> quot=<name>",
                    ))
                }
            };
            universe
                .add_relation(&sub, &mid, &quot, verified)
                .map_err(|e| Error::parse(lineno, 1, e.to_string()))?;
        } else if let Some(rest) = line.strip_prefix("closure") {
            for token in rest.split_whitespace() {
                match token {
                    "infinite_sums" => universe.infinite_sums = true,
                    "infinite_products" => universe.infinite_products = true,
                    _ => {
                        return Err(Error::parse(
                            lineno,
                            1,
                            format!("unrecognized closure flag `{token}`"),
                        ))
                    }
                }
            }
        } else {
            return Err(Error::parse(
                lineno,
                1,
                format!("expected `algebra`, `relation`, or `closure`, found `{line}`"),
            ));
        }
    }
    Ok(ParsedUniverse { universe, warnings })
}

/// Descriptor files are universe files without relations or closure lines.
pub fn parse_descriptors(text: &str) -> Result<(Vec<AlgebraDescriptor>, Vec<String>)> {
    let parsed = parse_universe(text)?;
    let names: Vec<String> = parsed.universe.names().iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    for name in names {
        out.push(parsed.universe.descriptor(&name).expect("just parsed").clone());
    }
    Ok((out, parsed.warnings))
}

fn strip_comment(raw: &str) -> &str {
    let no_comment = raw.split('#').next().unwrap_or("");
    no_comment.trim()
}

fn parse_algebra_body(
    name: &str,
    body: &[(usize, String)],
    warnings: &mut Vec<String>,
) -> Result<AlgebraDescriptor> {
    let mut field_base = None;
    let mut k0 = None;
    let mut k1 = None;
    let mut ko = None;
    let mut ku = None;
    let mut kt = None;
    let mut rational = false;
    let mut flags = Flags::default();
    let first_line = body.first().map(|(l, _)| *l).unwrap_or(1);

    for (lineno, line) in body {
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::parse(*lineno, 1, format!("expected `key: value`, found `{line}`")))?;
        let key = key.trim();
        let col = line.find(':').map(|c| c + 2).unwrap_or(1);
        let value = value.trim();
        match key {
            "field" => {
                field_base = Some(match value {
                    "complex" => FieldBase::Complex,
                    "real" => FieldBase::Real,
                    "quaternion" => FieldBase::Quaternion,
                    other => {
                        return Err(Error::parse(*lineno, col, format!("unknown field base `{other}`")))
                    }
                });
            }
            "K0" => k0 = Some(parse_ext_at(value, *lineno, col)?),
            "K1" => k1 = Some(parse_ext_at(value, *lineno, col)?),
            "KO" => ko = Some(value.to_string()),
            "KU" => ku = Some(value.to_string()),
            "KT" => kt = Some(value.to_string()),
            "rational" => {
                rational = value == "true";
                if value != "true" && value != "false" {
                    return Err(Error::parse(*lineno, col, "rational must be true or false"));
                }
            }
            "flags" => {
                for flag in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    match flag {
                        "ktp" => flags.ktp_class = true,
                        "fg_k" => flags.finitely_generated_k = true,
                        "nuclear" => flags.nuclear = true,
                        "separable" => flags.separable = true,
                        "n_real" => flags.n_real = true,
                        other => {
                            return Err(Error::parse(*lineno, col, format!("unknown flag `{other}`")))
                        }
                    }
                }
            }
            other => return Err(Error::parse(*lineno, 1, format!("unknown key `{other}`"))),
        }
    }

    let field_base =
        field_base.ok_or_else(|| Error::parse(first_line, 1, format!("algebra `{name}` needs a `field:` line")))?;

    let kdata = match field_base {
        FieldBase::Complex => {
            let k0 = k0.ok_or_else(|| Error::parse(first_line, 1, "complex algebra needs `K0:`"))?;
            let k1 = k1.ok_or_else(|| Error::parse(first_line, 1, "complex algebra needs `K1:`"))?;
            if k0.1 || k1.1 {
                warnings.push(format!("algebra {name}: torsion list auto-canonicalized"));
            }
            DescriptorKData::Complex(KData::new(k0.0, k1.0))
        }
        FieldBase::Real | FieldBase::Quaternion => {
            let ko = ko.ok_or_else(|| Error::parse(first_line, 1, "real algebra needs `KO:` (8 entries)"))?;
            let ku = ku.ok_or_else(|| Error::parse(first_line, 1, "real algebra needs `KU:` (2 entries)"))?;
            let kt = kt.ok_or_else(|| Error::parse(first_line, 1, "real algebra needs `KT:` (4 entries)"))?;
            if rational {
                let r = RationalCrt {
                    ko: parse_dims::<8>(&ko, first_line)?,
                    ku: parse_dims::<2>(&ku, first_line)?,
                    kt: parse_dims::<4>(&kt, first_line)?,
                };
                DescriptorKData::Real(RealKData::Rational(r))
            } else {
                let c = CrtData {
                    ko: parse_groups::<8>(&ko, first_line, name, warnings)?,
                    ku: parse_groups::<2>(&ku, first_line, name, warnings)?,
                    kt: parse_groups::<4>(&kt, first_line, name, warnings)?,
                };
                DescriptorKData::Real(RealKData::Fg(c))
            }
        }
    };

    AlgebraDescriptor::new(name, field_base, kdata, flags)
        .map_err(|e| Error::parse(first_line, 1, e.to_string()))
}

/// Parse an extended group literal, reporting whether the written fg
/// torsion part needed canonicalization.
fn parse_ext_at(value: &str, lineno: usize, col: usize) -> Result<(kgr_core::ExtGroup, bool)> {
    // detect non-canonical torsion on the plain-fg subset
    let canonical_note = match parse_group(value) {
        Ok(lit) => !lit.canonical,
        Err(_) => false,
    };
    let g = parse_ext_group(value).map_err(|e| Error::parse(lineno, col, e.to_string()))?;
    Ok((g, canonical_note))
}

fn parse_groups<const N: usize>(
    value: &str,
    lineno: usize,
    name: &str,
    warnings: &mut Vec<String>,
) -> Result<[FgAbGroup; N]> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(Error::parse(
            lineno,
            1,
            format!("expected {N} comma-separated group literals, found {}", parts.len()),
        ));
    }
    let mut out = Vec::with_capacity(N);
    for p in parts {
        let lit = parse_group(p).map_err(|e| Error::parse(lineno, 1, e.to_string()))?;
        if !lit.canonical {
            warnings.push(format!("algebra {name}: torsion list auto-canonicalized in `{p}`"));
        }
        out.push(lit.group);
    }
    Ok(out.try_into().expect("length checked"))
}

fn parse_dims<const N: usize>(value: &str, lineno: usize) -> Result<[u64; N]> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(Error::parse(
            lineno,
            1,
            format!("expected {N} comma-separated dimensions, found {}", parts.len()),
        ));
    }
    let mut out = [0u64; N];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .parse()
            .map_err(|_| Error::parse(lineno, 1, format!("bad dimension `{p}`")))?;
    }
    Ok(out)
}

/// A parsed sequence file: six groups (canonical presentations of the
/// written literals) and six matrices, assembled into a cyclic sequence.
pub struct ParsedSequence {
    pub sequence: CyclicSequence,
    pub warnings: Vec<String>,
}

pub fn parse_sequence(text: &str) -> Result<ParsedSequence> {
    let mut warnings = Vec::new();
    let mut groups: Vec<(usize, FgAbGroup)> = Vec::new();
    let mut matrices: Vec<(usize, Vec<Vec<i64>>)> = Vec::new();
    let mut section = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        match line {
            "groups:" => {
                section = Some("groups");
                continue;
            }
            "maps:" => {
                section = Some("maps");
                continue;
            }
            _ => {}
        }
        match section {
            Some("groups") => {
                let lit = parse_group(line).map_err(|e| Error::parse(lineno, 1, e.to_string()))?;
                if !lit.canonical {
                    warnings.push(format!("group {} auto-canonicalized", groups.len() + 1));
                }
                groups.push((lineno, lit.group));
            }
            Some("maps") => {
                matrices.push((lineno, parse_matrix(line, lineno)?));
            }
            _ => {
                return Err(Error::parse(lineno, 1, "expected `groups:` or `maps:` section header"));
            }
        }
    }

    if groups.len() != 6 {
        return Err(Error::parse(1, 1, format!("expected 6 groups, found {}", groups.len())));
    }
    if matrices.len() != 6 {
        return Err(Error::parse(1, 1, format!("expected 6 maps, found {}", matrices.len())));
    }

    let presentations: Vec<PresentedGroup> =
        groups.iter().map(|(_, g)| PresentedGroup::from_group(g)).collect();
    let mut homs = Vec::new();
    for i in 0..6 {
        let src = &presentations[i];
        let tgt = &presentations[(i + 1) % 6];
        let (lineno, rows) = &matrices[i];
        let m = shape_matrix(rows, tgt.n_gens(), src.n_gens(), *lineno)?;
        let ok = hom_well_defined(src, tgt, &m).map_err(|e| Error::parse(*lineno, 1, e.to_string()))?;
        if !ok {
            return Err(Error::parse(
                *lineno,
                1,
                format!("map {} does not preserve the relations of group {}", i + 1, i + 1),
            ));
        }
        homs.push(GroupHom::new(src.clone(), tgt.clone(), m).expect("well-definedness checked"));
    }

    let groups: [PresentedGroup; 6] = presentations.try_into().expect("six groups");
    let maps: [GroupHom; 6] = homs.try_into().expect("six maps");
    let sequence = CyclicSequence::new(groups, maps).map_err(|e| Error::parse(1, 1, e.to_string()))?;
    Ok(ParsedSequence { sequence, warnings })
}

/// Matrix literal `[[a,b],[c,d]]`; `[]` and `[[],[]]` denote empty shapes.
fn parse_matrix(s: &str, lineno: usize) -> Result<Vec<Vec<i64>>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(lineno, 1, "matrix literal must be bracketed"))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let row_body = rest
            .strip_prefix('[')
            .ok_or_else(|| Error::parse(lineno, 1, "expected `[` starting a matrix row"))?;
        let close = row_body
            .find(']')
            .ok_or_else(|| Error::parse(lineno, 1, "unterminated matrix row"))?;
        let row_str = &row_body[..close];
        let row: Vec<i64> = if row_str.is_empty() {
            Vec::new()
        } else {
            row_str
                .split(',')
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::parse(lineno, 1, format!("bad matrix entry `{t}`")))
                })
                .collect::<Result<_>>()?
        };
        rows.push(row);
        rest = &row_body[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| Error::parse(lineno, 1, "expected `,` between matrix rows"))?;
    }
    Ok(rows)
}

fn shape_matrix(rows: &[Vec<i64>], want_rows: usize, want_cols: usize, lineno: usize) -> Result<IntMatrix> {
    if rows.is_empty() {
        if want_rows == 0 || want_cols == 0 {
            return Ok(IntMatrix::zero(want_rows, want_cols));
        }
        return Err(Error::parse(
            lineno,
            1,
            format!("empty matrix but {want_rows}x{want_cols} expected"),
        ));
    }
    if rows.len() != want_rows || rows.iter().any(|r| r.len() != want_cols) {
        return Err(Error::parse(
            lineno,
            1,
            format!(
                "matrix must be {want_rows}x{want_cols} (target generators x source generators), found {}x{}",
                rows.len(),
                rows.first().map_or(0, Vec::len)
            ),
        ));
    }
    Ok(IntMatrix::from_rows(rows.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_round_trip() {
        let text = "
# a small universe
algebra A {
  field: complex
  K0: Z
  K1: 0
  flags: ktp, fg_k, nuclear, separable
}
algebra B {
  field: complex
  K0: Z/4 + Z/2   # wrong chain order, canonicalized with a warning
  K1: 0
  flags: ktp, fg_k, nuclear, separable
}
algebra Cm {
  field: complex
  K0: Z + Z/2 + Z/4
  K1: 0
  flags: ktp, fg_k, nuclear, separable
}
relation sub=A mid=Cm quot=B verified
closure infinite_sums
";
        let parsed = parse_universe(text).unwrap();
        assert_eq!(parsed.universe.names(), vec!["A", "B", "Cm"]);
        assert_eq!(parsed.universe.relations().len(), 1);
        assert!(parsed.universe.infinite_sums);
        assert_eq!(parsed.warnings.len(), 1, "{:?}", parsed.warnings);

        // unknown reference is named
        let bad = "algebra A {\n field: complex\n K0: Z\n K1: 0\n}\nrelation sub=A mid=A quot=Missing\n";
        let err = parse_universe(bad).unwrap_err();
        assert!(err.to_string().contains("Missing"), "{err}");
    }

    #[test]
    fn real_descriptor_parsing() {
        let text = "
algebra R {
  field: real
  KO: Z, Z/2, Z/2, 0, Z, 0, 0, 0
  KU: Z, 0
  KT: Z, Z/2, 0, Z
  flags: fg_k, nuclear, separable, n_real
}
algebra Ur {
  field: real
  rational: true
  KO: 1, 0, 0, 0, 1, 0, 0, 0
  KU: 1, 0
  KT: 1, 0, 0, 1
  flags: nuclear, separable, n_real
}
";
        let (descs, warnings) = parse_descriptors(text).unwrap();
        assert_eq!(descs.len(), 2);
        assert!(warnings.is_empty());
        assert_eq!(
            descs[0].real_kdata().unwrap(),
            &RealKData::Fg(kgr_core::catalog::crt_of_reals())
        );
        assert_eq!(
            descs[1].real_kdata().unwrap(),
            &RealKData::Rational(kgr_core::catalog::rational_crt_of_ur())
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_universe("algebra X {\n field: martian\n}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
        let err = parse_universe("algebra X {\n").unwrap_err();
        assert!(err.to_string().contains("unterminated"));
    }

    #[test]
    fn sequence_parsing() {
        let text = "
groups:
Z
Z
Z/2
0
0
0
maps:
[[2]]
[[1]]
[]
[]
[]
[]
";
        let parsed = parse_sequence(text).unwrap();
        assert!(parsed.sequence.is_exact().unwrap());

        // ill-defined map is rejected with its line number
        let bad = "
groups:
Z/2
Z
0
0
0
0
maps:
[[1]]
[]
[]
[]
[]
[]
";
        let err = parse_sequence(bad).unwrap_err();
        assert!(err.to_string().contains("does not preserve"), "{err}");
    }

    #[test]
    fn matrix_literals() {
        assert_eq!(parse_matrix("[[1,2],[3,4]]", 1).unwrap(), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(parse_matrix("[]", 1).unwrap(), Vec::<Vec<i64>>::new());
        assert_eq!(parse_matrix("[[],[]]", 1).unwrap(), vec![Vec::<i64>::new(), Vec::new()]);
        assert!(parse_matrix("[1,2", 1).is_err());
    }
}
