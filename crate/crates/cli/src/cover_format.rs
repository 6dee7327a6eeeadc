//! Text format for covers: line 1 is `cover k`, followed by `k` lines
//! of space-separated, ascending edge ids, one matching per line, LF
//! line endings.

use pmcover::graphcore::EdgeSet;

pub fn emit_cover(matchings: &[EdgeSet]) -> String {
    let mut out = format!("cover {}\n", matchings.len());
    for m in matchings {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_cover(text: &str) -> Result<Vec<EdgeSet>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty cover file")?;
    let k: usize = header
        .strip_prefix("cover ")
        .ok_or("first line must be `cover k`")?
        .trim()
        .parse()
        .map_err(|_| "first line must be `cover k`".to_string())?;
    let mut out = Vec::with_capacity(k);
    for (i, line) in lines.enumerate() {
        if i >= k {
            if line.trim().is_empty() {
                continue;
            }
            return Err(format!("more than {k} matching lines"));
        }
        let mut set = EdgeSet::new();
        for tok in line.split_whitespace() {
            let e: usize = tok.parse().map_err(|_| format!("bad edge id {tok:?}"))?;
            set.insert(e);
        }
        out.push(set);
    }
    if out.len() != k {
        return Err(format!("header declares {k} matchings, found {}", out.len()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ms = vec![
            [0usize, 3, 7].into_iter().collect::<EdgeSet>(),
            [1, 2].into_iter().collect(),
        ];
        let text = emit_cover(&ms);
        assert_eq!(text, "cover 2\n0 3 7\n1 2\n");
        assert_eq!(parse_cover(&text).unwrap(), ms);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_cover("").is_err());
        assert!(parse_cover("cover x\n").is_err());
        assert!(parse_cover("cover 2\n0 1\n").is_err());
        assert!(parse_cover("cover 1\n0 1\n2\n").is_err());
    }
}
