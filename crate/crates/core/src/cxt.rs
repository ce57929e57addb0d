//! Burmeister `.cxt` reading and writing.
//!
//! Layout: `B`, a name line (written empty), `|G|`, `|M|`, an empty line,
//! one line per object name, one per attribute name, then `|G|` rows of
//! `.`/`X` of length `|M|`. Every line ends with `\n`.

use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Parses a Burmeister context. `x` is accepted as a cross as well as `X`;
/// a trailing `\r` is stripped from every line.
pub fn read_cxt(text: &str) -> Result<FormalContext> {
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of file, expected {what}")))
    };

    let (line, magic) = next("header")?;
    if magic.trim() != "B" {
        return Err(Error::parse(line, "expected 'B' header"));
    }
    next("context name line")?;
    let parse_count = |(line, s): (usize, &str), what: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::parse(line, format!("expected {what}, found {s:?}")))
    };
    let num_objects = parse_count(next("object count")?, "object count")?;
    let num_attributes = parse_count(next("attribute count")?, "attribute count")?;
    let (line, blank) = next("empty separator line")?;
    if !blank.trim().is_empty() {
        return Err(Error::parse(line, "expected an empty line after the dimensions"));
    }

    let mut objects = Vec::with_capacity(num_objects);
    for _ in 0..num_objects {
        objects.push(next("object name")?.1.to_string());
    }
    let mut attributes = Vec::with_capacity(num_attributes);
    for _ in 0..num_attributes {
        attributes.push(next("attribute name")?.1.to_string());
    }

    let mut matrix = Vec::with_capacity(num_objects);
    for _ in 0..num_objects {
        let (line, row) = next("incidence row")?;
        let row = row.trim_end();
        if row.chars().count() != num_attributes {
            return Err(Error::parse(
                line,
                format!("row has {} entries, expected {num_attributes}", row.chars().count()),
            ));
        }
        let cells = row
            .chars()
            .map(|c| match c {
                'X' | 'x' => Ok(true),
                '.' => Ok(false),
                other => Err(Error::parse(line, format!("illegal character {other:?} in row"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        matrix.push(cells);
    }

    for (line, rest) in lines {
        if !rest.trim().is_empty() {
            return Err(Error::parse(line, "unexpected content after the incidence rows"));
        }
    }

    FormalContext::new(objects, attributes, &matrix).map_err(|e| match e {
        Error::Domain(msg) => Error::parse(6, msg),
        other => other,
    })
}

/// Serializes a context in canonical Burmeister form.
pub fn write_cxt(context: &FormalContext) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", context.num_objects(), context.num_attributes());
    for name in context.object_names().iter().chain(context.attribute_names()) {
        out.push_str(name);
        out.push('\n');
    }
    for row in context.incidence_matrix() {
        out.extend(row.iter().map(|&b| if b { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    const RUNNING: &str = "B\n\n5\n5\n\ng\nh\ni\nj\nk\nm\nn\no\np\nq\n.XX.X\n.X.XX\nXX.X.\nX.XX.\nX...X\n";
    const RESISTANT: &str =
        "B\n\n5\n6\n\n1\n2\n3\n4\n5\na\nb\nc\nd\ne\nf\n..XXXX\nXX..XX\nXXXX..\n.X.X.X\nX.X.X.\n";

    #[test]
    fn canonical_files_round_trip() {
        for text in [RUNNING, RESISTANT, "B\n\n0\n0\n\n"] {
            let ctx = read_cxt(text).unwrap();
            assert_eq!(write_cxt(&ctx), text);
        }
        assert_eq!(read_cxt(RUNNING).unwrap(), samples::running_example());
        assert_eq!(read_cxt(RESISTANT).unwrap(), samples::resistant_context());
    }

    #[test]
    fn empty_context_shape() {
        let ctx = read_cxt("B\n\n0\n0\n\n").unwrap();
        assert_eq!((ctx.num_objects(), ctx.num_attributes()), (0, 0));
    }

    #[test]
    fn lenient_on_crlf_and_lowercase() {
        let text = RUNNING.replace('\n', "\r\n").replace('X', "x");
        assert_eq!(read_cxt(&text).unwrap(), samples::running_example());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad_header = read_cxt("A\n\n0\n0\n\n").unwrap_err();
        assert_eq!(bad_header, Error::parse(1, "expected 'B' header"));

        let bad_count = read_cxt("B\n\nfive\n0\n\n").unwrap_err();
        assert!(matches!(bad_count, Error::Parse { line: 3, .. }));

        let bad_char = RUNNING.replace("X...X", "X..?X");
        assert!(matches!(read_cxt(&bad_char), Err(Error::Parse { line: 20, .. })));

        let short_row = RUNNING.replace("X...X", "X..X");
        assert!(matches!(read_cxt(&short_row), Err(Error::Parse { line: 20, .. })));

        let truncated = &RUNNING[..RUNNING.len() - 7];
        assert!(matches!(read_cxt(truncated), Err(Error::Parse { .. })));

        let trailing = format!("{RUNNING}XX\n");
        assert!(matches!(read_cxt(&trailing), Err(Error::Parse { line: 21, .. })));

        let dup = "B\n\n2\n1\n\na\na\nx\nX\n.\n";
        assert!(matches!(read_cxt(dup), Err(Error::Parse { .. })));
    }
}
