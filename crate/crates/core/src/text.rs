//! Small helpers for the text encodings.

/// Splits on `sep` outside of `[...]` and `{...}` groups; pieces are trimmed.
pub fn split_top_level(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '{' => depth += 1,
            ']' | '}' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_groups_are_kept() {
        assert_eq!(
            split_top_level("1,[2,3],{4;[5,6]}", ','),
            vec!["1", "[2,3]", "{4;[5,6]}"]
        );
        assert!(split_top_level("", ',').is_empty());
    }
}
