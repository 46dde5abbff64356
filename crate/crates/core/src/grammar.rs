//! Line-oriented presentation text:
//!
//! ```text
//! field Q            # or: field F 7
//! vertex 1
//! vertex 2
//! arrow a : 1 -> 2
//! arrow b : 2 -> 1
//! rel a*b*a
//! rel 2*b*a - 1/2*b*a
//! ```
//!
//! `p*q` applies `q` first. `#` starts a comment.

use crate::error::{Error, Result};
use crate::quiver::{is_label_start, is_valid_label, split_labels, Path, PathComb, Presentation, Quiver};
use crate::scalar::{Field, Scalar};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut field: Option<Field> = None;
    let mut quiver = Quiver::new();
    let mut rel_lines: Vec<(usize, usize, &str)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let indent = line.len() - line.trim_start().len();
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.find(char::is_whitespace) {
            Some(i) => (&line[..i], line[i..].trim_start()),
            None => (line, ""),
        };
        let rest_col = indent + line.len() - rest.len() + 1;
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(syntax(line_no, indent + 1, "field declared twice"));
                }
                field = Some(parse_field(rest, line_no, rest_col)?);
            }
            "vertex" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(syntax(line_no, rest_col, "expected a single vertex id"));
                }
                quiver.add_vertex(rest)?;
            }
            "arrow" => parse_arrow(&mut quiver, rest, line_no, rest_col)?,
            "rel" => rel_lines.push((line_no, rest_col, rest)),
            other => return Err(syntax(line_no, indent + 1, format!("unknown keyword `{other}`"))),
        }
    }

    let field = field.unwrap_or(Field::Rational);
    let mut pres = Presentation::new(quiver, field);
    for (line_no, col, text) in rel_lines {
        let r = parse_relation(&pres.quiver, field, text, line_no, col)?;
        pres.add_relation(r)?;
    }
    Ok(pres)
}

pub fn parse_field(rest: &str, line: usize, col: usize) -> Result<Field> {
    let parts: Vec<&str> = rest.split_whitespace().collect();
    match parts.as_slice() {
        ["Q"] => Ok(Field::Rational),
        ["F", p] => {
            let p: u64 = p.parse().map_err(|_| syntax(line, col + 2, "expected a prime modulus"))?;
            Field::prime(p)
        }
        _ => Err(syntax(line, col, "expected `Q` or `F <p>`")),
    }
}

fn parse_arrow(quiver: &mut Quiver, rest: &str, line: usize, col: usize) -> Result<()> {
    let Some(colon) = rest.find(':') else {
        return Err(syntax(line, col, "expected `<label> : <src> -> <tgt>`"));
    };
    let label = rest[..colon].trim();
    if !is_valid_label(label) {
        return Err(syntax(line, col, format!("invalid arrow label `{label}`")));
    }
    let ends = &rest[colon + 1..];
    let Some(arrow_at) = ends.find("->") else {
        return Err(syntax(line, col + colon + 1, "expected `->`"));
    };
    let src = ends[..arrow_at].trim();
    let tgt = ends[arrow_at + 2..].trim();
    let s = quiver.vertex_index(src).ok_or_else(|| Error::UnknownVertex(src.to_string()))?;
    let t = quiver.vertex_index(tgt).ok_or_else(|| Error::UnknownVertex(tgt.to_string()))?;
    quiver.add_arrow(label, s, t)?;
    Ok(())
}

/// Parses `[-]term (± term)*` into a linear combination.
pub fn parse_relation(q: &Quiver, field: Field, text: &str, line: usize, col: usize) -> Result<PathComb> {
    let mut out = PathComb::zero();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut first = true;
    while i < chars.len() {
        while i < chars.len() && chars[i].1.is_whitespace() {
            i += 1;
        }
        if i >= chars.len() {
            break;
        }
        let mut negative = false;
        match chars[i].1 {
            '+' | '-' => {
                negative = chars[i].1 == '-';
                i += 1;
                while i < chars.len() && chars[i].1.is_whitespace() {
                    i += 1;
                }
            }
            _ if !first => return Err(syntax(line, col + chars[i].0, "expected `+` or `-`")),
            _ => {}
        }
        first = false;
        if i >= chars.len() {
            return Err(syntax(line, col + text.len(), "dangling sign"));
        }
        let start = chars[i].0;
        // A term runs until whitespace or a sign that follows a complete factor.
        let mut end_idx = i;
        while end_idx < chars.len() {
            let c = chars[end_idx].1;
            if c.is_whitespace() || ((c == '+' || c == '-') && end_idx > i) {
                break;
            }
            end_idx += 1;
        }
        let end = if end_idx < chars.len() { chars[end_idx].0 } else { text.len() };
        let term = &text[start..end];
        let (coef, path) = parse_term(q, field, term, line, col + start)?;
        out.add_term(path, if negative { -coef } else { coef });
        i = end_idx;
    }
    Ok(out)
}

fn parse_term(q: &Quiver, field: Field, term: &str, line: usize, col: usize) -> Result<(Scalar, Path)> {
    let first = term.chars().next().unwrap_or(' ');
    let (coef, body, body_col) = if first.is_ascii_digit() {
        let Some(star) = term.find('*') else {
            return Err(syntax(line, col, "a relation term needs a path"));
        };
        let c = Scalar::parse_exact(&term[..star], field).map_err(|e| match e {
            Error::Arithmetic(m) => syntax(line, col, m),
            other => other,
        })?;
        (c, &term[star + 1..], col + star + 1)
    } else {
        (field.int(1), term, col)
    };
    if body.is_empty() || !is_label_start(body.chars().next().unwrap()) {
        return Err(syntax(line, body_col, format!("expected an arrow label in `{term}`")));
    }
    let mut ids = Vec::new();
    for label in split_labels(body) {
        match q.arrow_index(label) {
            Some(a) => ids.push(a),
            None => return Err(Error::UnknownArrow(label.to_string())),
        }
    }
    let path = Path::from_arrows(q, &ids).ok_or_else(|| Error::IllFormedPath(body.to_string()))?;
    Ok((coef, path))
}

/// Canonical text; `parse_presentation(print_presentation(p)) == p`.
pub fn print_presentation(p: &Presentation) -> String {
    let mut out = format!("field {}\n\n", p.field);
    for v in &p.quiver.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    if !p.quiver.arrows.is_empty() {
        out.push('\n');
    }
    for a in &p.quiver.arrows {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            a.label,
            p.quiver.vertex_name(a.source),
            p.quiver.vertex_name(a.target)
        ));
    }
    if !p.relations.is_empty() {
        out.push('\n');
    }
    for r in &p.relations {
        out.push_str(&format!("rel {}\n", r.display(&p.quiver)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1_M2: &str = "field Q

vertex 0
vertex 1

arrow a1 : 1 -> 0
arrow a2 : 0 -> 1
arrow b : 0 -> 0

rel b*b - a1*a2
rel a1*a2*b*a1
rel a2*b*a1*a2
rel a2*a1
";

    #[test]
    fn e1_m2_shape() {
        let p = parse_presentation(E1_M2).unwrap();
        assert_eq!(p.quiver.num_vertices(), 2);
        assert_eq!(p.quiver.num_arrows(), 3);
        assert_eq!(p.relations.len(), 4);
    }

    #[test]
    fn round_trip() {
        let p = parse_presentation(E1_M2).unwrap();
        assert_eq!(print_presentation(&p), E1_M2);
    }

    #[test]
    fn empty_relations() {
        let p = parse_presentation("field Q\nvertex 1\nvertex 2\narrow a : 1 -> 2\n").unwrap();
        assert!(p.relations.is_empty());
    }

    #[test]
    fn coefficients_and_comments() {
        let text = "field F 5 # mod five\nvertex v\narrow x : v -> v\nrel 3*x*x + 1/2*x*x*x\n";
        let p = parse_presentation(text).unwrap();
        let r = &p.relations[0];
        assert_eq!(r.len(), 2);
        assert_eq!(r.display(&p.quiver), "3*x*x*x + 3*x*x");
    }

    #[test]
    fn errors() {
        let bad_path = "field Q\nvertex 0\nvertex 1\narrow a1 : 1 -> 0\narrow b : 0 -> 0\nrel a1*b\n";
        assert!(matches!(parse_presentation(bad_path), Err(Error::IllFormedPath(_))));
        let unknown = "vertex 0\nrel zz*zz\n";
        assert!(matches!(parse_presentation(unknown), Err(Error::UnknownArrow(_))));
        let kw = "vertex 0\n  bogus 1\n";
        assert_eq!(parse_presentation(kw), Err(Error::Syntax { line: 2, column: 3, message: "unknown keyword `bogus`".into() }));
        assert!(matches!(parse_presentation("field F 6\n"), Err(Error::NonPrimeModulus(6))));
        let inhom = "vertex 0\nvertex 1\narrow a : 0 -> 1\narrow b : 1 -> 0\nrel a*b + b*a\n";
        assert!(matches!(parse_presentation(inhom), Err(Error::InhomogeneousRelation(_))));
    }

    #[test]
    fn starred_labels_round_trip() {
        let text = "field Q\n\nvertex 1\nvertex 2\n\narrow a1* : 2 -> 1\narrow (a1.a2)' : 2 -> 2\n\nrel a1**(a1.a2)'\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(print_presentation(&p), text);
    }
}
