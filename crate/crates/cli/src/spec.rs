//! Group action specs: `trivial`, `sl2`, `torus:1,-1;2,0` (rows of the
//! charge matrix separated by `;`) and `finite:ord=3:chars=1,2;0,1` (one
//! character of the given order per `;`-separated weight vector).

use freefield::invariants::{Character, GroupAction};
use freefield::Rational;

fn int_rows(text: &str) -> Result<Vec<Vec<i64>>, String> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad integer {x:?} in {text:?}")))
                .collect()
        })
        .collect()
}

/// Parses a charge matrix written as `1,-1;2,0`.
pub fn parse_charges(text: &str) -> Result<Vec<Vec<i64>>, String> {
    let rows = int_rows(text)?;
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(format!("ragged charge matrix {text:?}"));
    }
    Ok(rows)
}

pub fn parse_action(text: &str) -> Result<GroupAction<Rational>, String> {
    let text = text.trim();
    match text {
        "trivial" => return Ok(GroupAction::trivial()),
        "sl2" => return Ok(GroupAction::sl2()),
        _ => {}
    }
    if let Some(rows) = text.strip_prefix("torus:") {
        return Ok(GroupAction::Torus(parse_charges(rows)?));
    }
    if let Some(rest) = text.strip_prefix("finite:") {
        let (ord, chars) = rest.split_once(':').ok_or_else(|| format!("expected finite:ord=K:chars=..., got {text:?}"))?;
        let order: u64 = ord
            .strip_prefix("ord=")
            .and_then(|k| k.trim().parse().ok())
            .filter(|&k| k > 0)
            .ok_or_else(|| format!("bad order in {text:?}"))?;
        let chars = chars.strip_prefix("chars=").ok_or_else(|| format!("expected chars= in {text:?}"))?;
        let characters = int_rows(chars)?.into_iter().map(|weights| Character { order, weights }).collect();
        return Ok(GroupAction::FiniteAbelian(characters));
    }
    Err(format!("unknown action {text:?}; expected trivial, sl2, torus:... or finite:ord=K:chars=..."))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(parse_action("torus:1,-1;2,0").unwrap(), GroupAction::Torus(vec![vec![1, -1], vec![2, 0]]));
        assert_eq!(
            parse_action("finite:ord=3:chars=1,2").unwrap(),
            GroupAction::FiniteAbelian(vec![Character { order: 3, weights: vec![1, 2] }])
        );
        assert_eq!(parse_action("sl2").unwrap(), GroupAction::sl2());
        assert!(parse_action("torus:1;2,3").is_err());
        assert!(parse_action("finite:ord=0:chars=1").is_err());
        assert!(parse_action("so3").is_err());
    }
}
