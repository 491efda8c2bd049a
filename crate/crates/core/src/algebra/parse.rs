use super::{ArrowId, BoundQuiver, Quiver, RelationSet, VertexId};
use crate::error::ParseError;

/// Result of a successful parse: the normalized quiver plus the generators
/// dropped as subpath-redundant, rendered as label sequences.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub algebra: BoundQuiver,
    pub dropped: Vec<String>,
}

fn valid_label(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '\'' || c == '_')
}

/// Parses the line-oriented description format. All line errors are
/// collected; the quiver is only returned when there are none.
pub fn parse_algebra(text: &str) -> Result<Parsed, Vec<ParseError>> {
    let mut errors = Vec::new();
    let mut name: Option<String> = None;
    let mut quiver: Option<Quiver> = None;
    let mut relations: Vec<Vec<ArrowId>> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };
        if name.is_none() && keyword != "algebra" {
            errors.push(pe(line, "first directive must be `algebra <name>`".into()));
            name = Some(String::new());
        }
        match keyword {
            "algebra" => {
                if name.is_some() {
                    errors.push(pe(line, "duplicate `algebra` directive".into()));
                } else if args.len() != 1 {
                    errors.push(pe(line, "expected `algebra <name>`".into()));
                    name = Some(String::new());
                } else {
                    name = Some(args[0].to_string());
                }
            }
            "vertices" => {
                if quiver.is_some() {
                    errors.push(pe(line, "duplicate `vertices` directive".into()));
                    continue;
                }
                match args {
                    [n] => match n.parse::<u32>() {
                        Ok(0) => errors.push(pe(line, "vertex set is empty".into())),
                        Ok(n) => quiver = Some(Quiver::new(n)),
                        Err(_) => errors.push(pe(line, format!("bad vertex count `{n}`"))),
                    },
                    _ => errors.push(pe(line, "expected `vertices <n>`".into())),
                }
            }
            "arrow" => {
                let Some(q) = quiver.as_mut() else {
                    errors.push(pe(line, "`arrow` before `vertices`".into()));
                    continue;
                };
                let [label, s, t] = args else {
                    errors.push(pe(line, "expected `arrow <label> <src> <dst>`".into()));
                    continue;
                };
                if !valid_label(label) {
                    errors.push(pe(line, format!("bad arrow label `{label}`")));
                    continue;
                }
                if q.arrow_by_label(label).is_some() {
                    errors.push(pe(line, format!("duplicate arrow label `{label}`")));
                    continue;
                }
                let mut ends = [VertexId(0); 2];
                let mut ok = true;
                for (slot, tok) in ends.iter_mut().zip([s, t]) {
                    match tok.parse::<u32>() {
                        Ok(v) if q.has_vertex(VertexId(v)) => *slot = VertexId(v),
                        _ => {
                            errors.push(pe(line, format!("unknown vertex `{tok}`")));
                            ok = false;
                        }
                    }
                }
                if ok {
                    q.add_arrow(label, ends[0], ends[1]).expect("checked above");
                }
            }
            "relation" => {
                let Some(q) = quiver.as_ref() else {
                    errors.push(pe(line, "`relation` before `vertices`".into()));
                    continue;
                };
                if args.len() < 2 {
                    errors.push(pe(line, "relations need length at least 2".into()));
                    continue;
                }
                let mut path = Vec::with_capacity(args.len());
                for label in args {
                    match q.arrow_by_label(label) {
                        Some(a) => path.push(a),
                        None => errors.push(pe(line, format!("unknown arrow label `{label}`"))),
                    }
                }
                if path.len() != args.len() {
                    continue;
                }
                if !q.is_composable(&path) {
                    errors.push(pe(line, "relation is not a composable path".into()));
                    continue;
                }
                relations.push(path);
            }
            other => errors.push(pe(line, format!("unknown directive `{other}`"))),
        }
    }

    let last_line = text.lines().count().max(1);
    if name.is_none() {
        errors.push(pe(last_line, "missing `algebra` directive".into()));
    }
    if quiver.is_none() && errors.is_empty() {
        errors.push(pe(last_line, "missing `vertices` directive".into()));
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let mut rels = RelationSet::new(relations);
    let dropped = rels.minimalize();
    let algebra = BoundQuiver::new(&name.unwrap(), quiver.unwrap(), rels);
    let dropped = dropped.iter().map(|p| algebra.render_path(p)).collect();
    Ok(Parsed { algebra, dropped })
}

fn pe(line: usize, message: String) -> ParseError {
    ParseError { line, message }
}
