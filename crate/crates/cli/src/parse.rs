//! Literal grammars for groups, weight sets, sequences, and elements.
//!
//! Groups: `"C6"`, `"C3xC3"`, or `"3,3"`. Weights: `"full"` or `"1,2,4"`.
//! Sequences: comma- or semicolon-separated coordinate tuples,
//! `"(1,0),(0,1),(1,1)"`; the empty string is λ.

use std::fmt;

use zerosum_core::{GroupElement, GroupSpec, Sequence, WeightSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at position {}: expected {} in {:?}",
            self.pos, self.expected, self.input
        )
    }
}

impl std::error::Error for ParseError {}

fn err(input: &str, pos: usize, expected: &str) -> ParseError {
    ParseError {
        input: input.to_string(),
        pos,
        expected: expected.to_string(),
    }
}

fn parse_int(input: &str, piece: &str, offset: usize) -> Result<i64, ParseError> {
    piece
        .trim()
        .parse::<i64>()
        .map_err(|_| err(input, offset, "an integer"))
}

/// `"C6"`, `"C3xC3"` (case-insensitive), or a bare comma list `"3,3"`.
pub fn parse_group(literal: &str) -> Result<GroupSpec, ParseError> {
    let trimmed = literal.trim();
    if trimmed.is_empty() {
        return Err(err(literal, 0, "a group literal like C6 or 3,3"));
    }
    let orders: Vec<u64> = if trimmed.starts_with('C') || trimmed.starts_with('c') {
        trimmed
            .split(['x', 'X'])
            .map(|piece| {
                let piece = piece.trim();
                let digits = piece
                    .strip_prefix('C')
                    .or_else(|| piece.strip_prefix('c'))
                    .ok_or_else(|| err(literal, 0, "a factor like C6"))?;
                digits
                    .parse::<u64>()
                    .map_err(|_| err(literal, 0, "digits after C"))
            })
            .collect::<Result<_, _>>()?
    } else {
        trimmed
            .split(',')
            .map(|piece| parse_int(literal, piece, 0).map(|v| v.max(0) as u64))
            .collect::<Result<_, _>>()?
    };
    GroupSpec::new(&orders).map_err(|e| err(literal, 0, &format!("a valid group ({e})")))
}

/// `"full"` or a comma list of weights.
pub fn parse_weights(literal: &str, exponent: u64) -> Result<WeightSet, ParseError> {
    let trimmed = literal.trim();
    if trimmed.eq_ignore_ascii_case("full") {
        return Ok(WeightSet::full(exponent));
    }
    let entries: Vec<i64> = trimmed
        .split(',')
        .map(|piece| parse_int(literal, piece, 0))
        .collect::<Result<_, _>>()?;
    WeightSet::new(&entries, exponent)
        .map_err(|e| err(literal, 0, &format!("a valid weight set ({e})")))
}

/// One coordinate tuple starting at `pos`; returns the element and the
/// position just past the closing paren.
fn parse_tuple(
    group: &GroupSpec,
    input: &str,
    pos: usize,
) -> Result<(GroupElement, usize), ParseError> {
    let bytes = input.as_bytes();
    if bytes.get(pos) != Some(&b'(') {
        return Err(err(input, pos, "'('"));
    }
    let close = input[pos..]
        .find(')')
        .map(|o| pos + o)
        .ok_or_else(|| err(input, input.len(), "')'"))?;
    let inner = &input[pos + 1..close];
    let coords: Vec<i64> = inner
        .split(',')
        .map(|piece| parse_int(input, piece, pos + 1))
        .collect::<Result<_, _>>()?;
    let elem = group
        .element(&coords)
        .map_err(|_| err(input, pos, &format!("{} coordinates", group.invariant_factors().len())))?;
    Ok((elem, close + 1))
}

/// A comma/semicolon list of coordinate tuples; `""` parses as λ.
pub fn parse_sequence(literal: &str, group: &GroupSpec) -> Result<Sequence, ParseError> {
    let mut elems = Vec::new();
    let mut pos = 0;
    let bytes = literal.as_bytes();
    loop {
        while pos < bytes.len() && (bytes[pos] as char).is_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        let (elem, next) = parse_tuple(group, literal, pos)?;
        elems.push(elem);
        pos = next;
        while pos < bytes.len() && (bytes[pos] as char).is_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() {
            if bytes[pos] == b',' || bytes[pos] == b';' {
                pos += 1;
            } else {
                return Err(err(literal, pos, "',' or ';' between tuples"));
            }
        }
    }
    Ok(Sequence::from_elements(elems))
}

/// A single element: a tuple `"(1,0)"`, a bare coordinate list `"1,0"`, or
/// `"0"` for the identity of any group.
pub fn parse_element(literal: &str, group: &GroupSpec) -> Result<GroupElement, ParseError> {
    let trimmed = literal.trim();
    if trimmed == "0" {
        return Ok(group.identity());
    }
    if trimmed.starts_with('(') {
        let (elem, next) = parse_tuple(group, trimmed, 0)?;
        if !trimmed[next..].trim().is_empty() {
            return Err(err(trimmed, next, "end of input"));
        }
        return Ok(elem);
    }
    let coords: Vec<i64> = trimmed
        .split(',')
        .map(|piece| parse_int(trimmed, piece, 0))
        .collect::<Result<_, _>>()?;
    group
        .element(&coords)
        .map_err(|_| err(trimmed, 0, &format!("{} coordinates", group.invariant_factors().len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_literals() {
        assert_eq!(parse_group("C6").unwrap().invariant_factors(), &[6]);
        assert_eq!(parse_group("C3xC3").unwrap().invariant_factors(), &[3, 3]);
        assert_eq!(parse_group("3,3").unwrap().invariant_factors(), &[3, 3]);
        assert_eq!(parse_group("c2xC4").unwrap().invariant_factors(), &[2, 4]);
        // Canonicalization applies to literals too.
        assert_eq!(parse_group("2,3").unwrap().invariant_factors(), &[6]);
        assert!(parse_group("").is_err());
        assert!(parse_group("Cx").is_err());
        assert!(parse_group("0").is_err());
    }

    #[test]
    fn weight_literals() {
        assert_eq!(parse_weights("full", 4).unwrap().residues(), &[1, 2, 3]);
        assert_eq!(parse_weights("1,3", 4).unwrap().residues(), &[1, 3]);
        assert_eq!(parse_weights("FULL", 3).unwrap().residues(), &[1, 2]);
        assert!(parse_weights("4", 4).is_err());
        assert!(parse_weights("x", 4).is_err());
    }

    #[test]
    fn sequence_literals() {
        let g = parse_group("C3xC3").unwrap();
        let s = parse_sequence("(1,0),(0,1),(1,1)", &g).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.literal(), "(1,0),(0,1),(1,1)");
        let s = parse_sequence("(1,0); (0,1)", &g).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(parse_sequence("", &g).unwrap().len(), 0);
        assert_eq!(parse_sequence("  ", &g).unwrap().len(), 0);

        let e = parse_sequence("(1,0)(0,1)", &g).unwrap_err();
        assert_eq!(e.pos, 5);
        assert!(e.expected.contains("','"));
        assert!(parse_sequence("(1,0),(2)", &g).is_err());
        assert!(parse_sequence("(1,0", &g).is_err());
    }

    #[test]
    fn element_literals() {
        let g = parse_group("C3xC3").unwrap();
        assert_eq!(parse_element("0", &g).unwrap(), g.identity());
        assert_eq!(
            parse_element("(1,2)", &g).unwrap(),
            g.element(&[1, 2]).unwrap()
        );
        assert_eq!(
            parse_element("1,2", &g).unwrap(),
            g.element(&[1, 2]).unwrap()
        );
        let c6 = parse_group("C6").unwrap();
        assert_eq!(parse_element("3", &c6).unwrap(), c6.element(&[3]).unwrap());
        assert!(parse_element("(1,2) junk", &g).is_err());
    }
}
