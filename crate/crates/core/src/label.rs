//! Deterministic vertex-label encodings for derived digraphs.
//!
//! Every construction names its vertices by combining the labels of its
//! inputs. The encodings here are injective, so two distinct inputs can
//! never collide in a derived digraph:
//!
//! * pairs `(u,v)` from products and slices, with `(`, `)`, `,` and `\`
//!   inside a component escaped by a backslash;
//! * tags `L:u` / `R:u` from disjoint unions and `H:h` for codomain
//!   vertices inside mapping cylinders, cones and tubes;
//! * the apex `*` of a cone.
//!
//! Pair labels start with `(`, tag labels with an ASCII letter and the apex
//! is the single character `*`, so the three families are disjoint.

/// Label of the apex of every cone-like construction.
pub const APEX: &str = "*";

/// Tag for the left summand of a disjoint union.
pub const LEFT: &str = "L";

/// Tag for the right summand of a disjoint union.
pub const RIGHT: &str = "R";

/// Tag for codomain vertices inside cylinders, cones and tubes.
pub const CODOMAIN: &str = "H";

fn escape_into(out: &mut String, component: &str) {
    for ch in component.chars() {
        if matches!(ch, '(' | ')' | ',' | '\\') {
            out.push('\\');
        }
        out.push(ch);
    }
}

/// Encodes the ordered pair `(first, second)`.
pub fn pair(first: &str, second: &str) -> String {
    let mut out = String::with_capacity(first.len() + second.len() + 3);
    out.push('(');
    escape_into(&mut out, first);
    out.push(',');
    escape_into(&mut out, second);
    out.push(')');
    out
}

/// Encodes a vertex of the `level` slice of `G □ I` for a line digraph `I`.
pub fn level(vertex: &str, level: usize) -> String {
    pair(vertex, &level.to_string())
}

/// Encodes `label` under the tag `tag`, e.g. `L:a`.
pub fn tag(tag: &str, label: &str) -> String {
    let mut out = String::with_capacity(tag.len() + label.len() + 1);
    out.push_str(tag);
    out.push(':');
    out.push_str(label);
    out
}

/// Codomain vertex `h` as it appears inside a construction.
pub fn codomain(label: &str) -> String {
    tag(CODOMAIN, label)
}

/// Splits a pair label back into its components.
pub fn split_pair(label: &str) -> Option<(String, String)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let mut first = String::new();
    let mut second = String::new();
    let mut in_second = false;
    let mut chars = inner.chars();
    while let Some(ch) = chars.next() {
        let target = if in_second { &mut second } else { &mut first };
        match ch {
            '\\' => target.push(chars.next()?),
            ',' if !in_second => in_second = true,
            '(' | ')' | ',' => return None,
            _ => target.push(ch),
        }
    }
    in_second.then_some((first, second))
}

/// Strips `tag:` from `label` if present.
pub fn untag<'a>(tag: &str, label: &'a str) -> Option<&'a str> {
    label.strip_prefix(tag)?.strip_prefix(':')
}
