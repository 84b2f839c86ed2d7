//! Textual word syntax: whitespace-separated tokens `p-q` (or `s{p,q}`),
//! the empty string being the identity.

use cactus::{CactusError, GroupContext, Interval, Result, SizeSet, Word};

pub fn parse_interval(ctx: GroupContext, token: &str) -> Result<Interval> {
    let bad = || CactusError::InvalidArgument(format!("cannot parse generator `{token}`; expected p-q or s{{p,q}}"));
    let (p, q) = if let Some(inner) = token.strip_prefix("s{").and_then(|t| t.strip_suffix('}')) {
        inner.split_once(',').ok_or_else(bad)?
    } else {
        token.split_once('-').ok_or_else(bad)?
    };
    let p: usize = p.trim().parse().map_err(|_| bad())?;
    let q: usize = q.trim().parse().map_err(|_| bad())?;
    ctx.interval(p, q)
}

pub fn parse_word(ctx: GroupContext, text: &str) -> Result<Word> {
    let letters = text.split_whitespace().map(|t| parse_interval(ctx, t)).collect::<Result<Vec<_>>>()?;
    ctx.word(letters)
}

/// Interval sizes such as `2,3` or `{2,3}`.
pub fn parse_sizes(ctx: GroupContext, text: &str) -> Result<SizeSet> {
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    let sizes = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| CactusError::InvalidArgument(format!("bad size `{t}` in `{text}`"))))
        .collect::<Result<SizeSet>>()?;
    sizes.validate(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> GroupContext {
        GroupContext::new(n).unwrap()
    }

    #[test]
    fn words() {
        let w = parse_word(c(4), "1-4 1-2").unwrap();
        assert_eq!(w, c(4).word_from_pairs(&[(1, 4), (1, 2)]).unwrap());
        assert_eq!(parse_word(c(4), "s{1,4} 1-2").unwrap(), w);
        assert!(parse_word(c(4), "").unwrap().is_empty());
        assert!(parse_word(c(4), "   ").unwrap().is_empty());
        assert_eq!(parse_word(c(4), &w.to_string()).unwrap(), w);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(parse_word(c(3), "1-4").is_err());
        assert!(parse_word(c(3), "2-2").is_err());
        assert!(parse_word(c(3), "12").is_err());
        assert!(parse_word(c(3), "s{1,2").is_err());
        assert!(parse_word(c(3), "a-b").is_err());
    }

    #[test]
    fn sizes() {
        let s = parse_sizes(c(4), "{2,3}").unwrap();
        assert!(s.contains(2) && s.contains(3) && !s.contains(4));
        assert_eq!(parse_sizes(c(4), "3 4").unwrap(), [3, 4].into_iter().collect());
        assert!(parse_sizes(c(4), "5").is_err());
        assert!(parse_sizes(c(4), "x").is_err());
    }
}
