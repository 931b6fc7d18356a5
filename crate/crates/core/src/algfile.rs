//! Line-oriented structure-constant files and the bundled fixture algebras.
//!
//! A file has sections `[meta]`, `[generators]`, `[circ]`, `[bracket]`.
//! Generator lines are `label parity`; product lines are
//! `a b -> c1*z1 + c2*z2 ...` with exact rational coefficients written as
//! integers or `p/q`. A section that is present but empty declares the zero
//! product; an absent `[bracket]` section leaves the bracket undefined.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Error;
use crate::exactpoly::Rational;
use crate::gdcore::{zero_tensor, Parity, SuperAlgebra, SuperBasis};
use crate::Result;

/// Parsed algebra file.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub name: String,
    pub metadata: BTreeMap<String, String>,
    pub algebra: SuperAlgebra,
}

fn parse_rational(s: &str, line: usize) -> Result<Rational> {
    let s = s.trim();
    let mk_err = || Error::Parse { line, msg: format!("bad rational literal `{s}`") };
    if let Some((n, d)) = s.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().map_err(|_| mk_err())?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| mk_err())?;
        if d.is_zero() {
            return Err(mk_err());
        }
        Ok(Rational::new(n, d))
    } else {
        let n: num_bigint::BigInt = s.parse().map_err(|_| mk_err())?;
        Ok(Rational::from_integer(n))
    }
}

/// Parse a linear combination `c1*z1 + c2*z2 - z3` over declared labels.
fn parse_combination(rhs: &str, basis: &SuperBasis, line: usize) -> Result<Vec<(usize, Rational)>> {
    let compact: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse { line, msg: "empty right-hand side".into() });
    }
    if compact == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(current.clone());
            current.clear();
        }
        current.push(ch);
    }
    terms.push(current);
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coef, label) = match body.split_once('*') {
            Some((c, l)) => (parse_rational(c, line)?, l),
            None => (Rational::from_integer(1.into()), body),
        };
        if label.is_empty() {
            return Err(Error::Parse { line, msg: "missing generator label in term".into() });
        }
        let idx = basis
            .index_of(label)
            .map_err(|_| Error::Parse { line, msg: format!("undeclared label `{label}`") })?;
        let c = coef * Rational::from_integer(sign.into());
        if let Some(e) = out.iter_mut().find(|(i, _)| *i == idx) {
            e.1 += c;
        } else {
            out.push((idx, c));
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    Ok(out)
}

/// Parse an algebra definition; `default_name` is used when the file
/// carries no `name` metadata.
pub fn parse_algebra(text: &str, default_name: &str) -> Result<AlgebraFile> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Meta,
        Generators,
        Circ,
        Bracket,
    }
    let mut section = Section::None;
    let mut gens: Vec<(String, Parity)> = Vec::new();
    let mut metadata = BTreeMap::new();
    // product lines are collected first; tensors are filled once the basis
    // is complete
    let mut circ_lines: Vec<(usize, String)> = Vec::new();
    let mut bracket_lines: Vec<(usize, String)> = Vec::new();
    let mut has_circ = false;
    let mut has_bracket = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line {
            "[meta]" => {
                section = Section::Meta;
                continue;
            }
            "[generators]" => {
                section = Section::Generators;
                continue;
            }
            "[circ]" => {
                section = Section::Circ;
                has_circ = true;
                continue;
            }
            "[bracket]" => {
                section = Section::Bracket;
                has_bracket = true;
                continue;
            }
            _ if line.starts_with('[') => {
                return Err(Error::Parse { line: lineno, msg: format!("unknown section {line}") });
            }
            _ => {}
        }
        match section {
            Section::None => {
                return Err(Error::Parse { line: lineno, msg: "content before any section".into() })
            }
            Section::Meta => {
                let (k, v) = line.split_once(char::is_whitespace).ok_or(Error::Parse {
                    line: lineno,
                    msg: "metadata needs `key value`".into(),
                })?;
                metadata.insert(k.to_string(), v.trim().to_string());
            }
            Section::Generators => {
                let mut it = line.split_whitespace();
                let label = it.next().unwrap().to_string();
                let parity = match it.next() {
                    Some("even") => Parity::Even,
                    Some("odd") => Parity::Odd,
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("parity must be `even` or `odd`, got {other:?}"),
                        })
                    }
                };
                if it.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "generator lines are `label parity`".into(),
                    });
                }
                gens.push((label, parity));
            }
            Section::Circ => circ_lines.push((lineno, line.to_string())),
            Section::Bracket => bracket_lines.push((lineno, line.to_string())),
        }
    }
    let basis = SuperBasis::new(gens)?;
    let dim = basis.dim();
    let fill = |lines: &[(usize, String)]| -> Result<Vec<Vec<Vec<Rational>>>> {
        let mut t = zero_tensor(dim);
        for (lineno, line) in lines {
            let (lhs, rhs) = line.split_once("->").ok_or(Error::Parse {
                line: *lineno,
                msg: "product lines are `a b -> combination`".into(),
            })?;
            let mut it = lhs.split_whitespace();
            let (a, b) = (
                it.next().ok_or(Error::Parse { line: *lineno, msg: "missing labels".into() })?,
                it.next().ok_or(Error::Parse { line: *lineno, msg: "missing labels".into() })?,
            );
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: *lineno,
                    msg: "left side must be exactly two labels".into(),
                });
            }
            let ia = basis.index_of(a).map_err(|_| Error::Parse {
                line: *lineno,
                msg: format!("undeclared label `{a}`"),
            })?;
            let ib = basis.index_of(b).map_err(|_| Error::Parse {
                line: *lineno,
                msg: format!("undeclared label `{b}`"),
            })?;
            let combo = parse_combination(rhs, &basis, *lineno)?;
            let want = basis.parity(ia).plus(basis.parity(ib));
            for (k, c) in combo {
                if basis.parity(k) != want {
                    return Err(Error::Parse {
                        line: *lineno,
                        msg: format!(
                            "parity violation: {}·{} is {} but `{}` is {}",
                            a,
                            b,
                            want,
                            basis.name(k),
                            basis.parity(k)
                        ),
                    });
                }
                t[ia][ib][k] = c;
            }
        }
        Ok(t)
    };
    let circ = if has_circ { Some(fill(&circ_lines)?) } else { None };
    let bracket = if has_bracket { Some(fill(&bracket_lines)?) } else { None };
    let algebra = SuperAlgebra::new(basis, circ, bracket)?;
    let name = metadata.get("name").cloned().unwrap_or_else(|| default_name.to_string());
    Ok(AlgebraFile { name, metadata, algebra })
}

fn fmt_coeff(c: &Rational) -> String {
    if c.denom() == &num_bigint::BigInt::from(1) {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Deterministic textual form; `parse_algebra` of the output reproduces the
/// algebra exactly.
pub fn print_algebra(file: &AlgebraFile) -> String {
    let alg = &file.algebra;
    let basis = &alg.basis;
    let mut out = String::new();
    out.push_str("[meta]\n");
    out.push_str(&format!("name {}\n", file.name));
    for (k, v) in &file.metadata {
        if k != "name" {
            out.push_str(&format!("{k} {v}\n"));
        }
    }
    out.push_str("\n[generators]\n");
    for i in 0..basis.dim() {
        out.push_str(&format!("{} {}\n", basis.name(i), basis.parity(i)));
    }
    for (header, tensor) in [("circ", &alg.circ), ("bracket", &alg.bracket)] {
        let Some(t) = tensor else { continue };
        out.push_str(&format!("\n[{header}]\n"));
        for i in 0..basis.dim() {
            for j in 0..basis.dim() {
                let mut parts = Vec::new();
                for k in 0..basis.dim() {
                    let c = &t[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    if c == &Rational::from_integer(1.into()) {
                        parts.push(basis.name(k).to_string());
                    } else if c == &Rational::from_integer((-1).into()) {
                        parts.push(format!("-{}", basis.name(k)));
                    } else {
                        parts.push(format!("{}*{}", fmt_coeff(c), basis.name(k)));
                    }
                }
                if !parts.is_empty() {
                    out.push_str(&format!(
                        "{} {} -> {}\n",
                        basis.name(i),
                        basis.name(j),
                        parts.join(" + ").replace("+ -", "- ")
                    ));
                }
            }
        }
    }
    out
}

/// Names of the built-in fixtures.
pub fn fixture_names() -> Vec<&'static str> {
    vec!["heisenberg3", "virasoro-source", "novikov2", "zero1", "supernov2"]
}

/// Source text of a built-in fixture.
pub fn fixture(name: &str) -> Option<&'static str> {
    match name {
        "heisenberg3" => Some(
            "[meta]\nname heisenberg3\n\n[generators]\nx even\ny even\nz even\n\n[circ]\nx x -> x - y\ny x -> y\nx y -> -y\n\n[bracket]\nx y -> z\ny x -> -z\n",
        ),
        "virasoro-source" => Some(
            "[meta]\nname virasoro-source\n\n[generators]\nv even\n\n[circ]\nv v -> v\n\n[bracket]\n",
        ),
        "novikov2" => Some(
            "[meta]\nname novikov2\n\n[generators]\nv even\nu even\n\n[circ]\nv v -> v + u\nu v -> u\n\n[bracket]\n",
        ),
        "zero1" => Some("[meta]\nname zero1\n\n[generators]\na even\n\n[circ]\n\n[bracket]\n"),
        "supernov2" => Some(
            "[meta]\nname supernov2\n\n[generators]\ne even\nf odd\n\n[circ]\ne f -> f\n\n[bracket]\n",
        ),
        _ => None,
    }
}

/// Load by fixture name or filesystem path.
pub fn load_algebra(spec: &str) -> Result<AlgebraFile> {
    if let Some(text) = fixture(spec) {
        return parse_algebra(text, spec);
    }
    let path = std::path::Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        let stem = path.file_stem().map(|s| s.to_string_lossy().to_string());
        return parse_algebra(&text, stem.as_deref().unwrap_or("algebra"));
    }
    Err(Error::Usage(format!(
        "`{spec}` is neither a file nor a built-in fixture ({})",
        fixture_names().join(", ")
    )))
}
