//! Plain-text formats.
//!
//! Cycles: for `q <= 10` a single line of digit characters, otherwise
//! comma-separated decimal symbols. Index sets: comma-separated decimals.

use thiserror::Error;

use crate::types::{CyclicString, ParamError, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {0:?} at byte {1}")]
    BadChar(char, usize),
    #[error("bad number {0:?}")]
    BadNumber(String),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// Formats a cycle in the stable text format (no trailing newline).
pub fn format_cycle(chi: &CyclicString) -> String {
    if chi.q() <= 10 {
        chi.symbols().iter().map(|&s| char::from_digit(s, 10).unwrap()).collect()
    } else {
        let parts: Vec<String> = chi.symbols().iter().map(|s| s.to_string()).collect();
        parts.join(",")
    }
}

/// Parses the cycle text format. Surrounding whitespace is ignored; a comma
/// anywhere selects the decimal list form regardless of `q`.
pub fn parse_cycle(text: &str, q: u32) -> Result<CyclicString, TextError> {
    let body = text.trim();
    if body.is_empty() {
        return Err(TextError::Empty);
    }
    let symbols = if body.contains(',') {
        parse_list(body)?
            .into_iter()
            .map(|v| Symbol::try_from(v).map_err(|_| TextError::BadNumber(v.to_string())))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        body.char_indices()
            .map(|(i, c)| c.to_digit(10).ok_or(TextError::BadChar(c, i)))
            .collect::<Result<Vec<_>, _>>()?
    };
    Ok(CyclicString::new(q, symbols)?)
}

/// Parses `"0,9,18"` into integers. Spaces around items are allowed.
pub fn parse_list(text: &str) -> Result<Vec<u64>, TextError> {
    let body = text.trim();
    if body.is_empty() {
        return Err(TextError::Empty);
    }
    body.split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<u64>().map_err(|_| TextError::BadNumber(item.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn digits_and_lists() {
        let c = parse_cycle("00010111\n", 2).unwrap();
        assert_eq!(c.symbols(), &[0, 0, 0, 1, 0, 1, 1, 1]);
        assert_eq!(format_cycle(&c), "00010111");
        let w = parse_cycle("0,11,3", 12).unwrap();
        assert_eq!(format_cycle(&w), "0,11,3");
        assert_eq!(parse_cycle("  ", 2), Err(TextError::Empty));
        assert_eq!(parse_cycle("01x", 2), Err(TextError::BadChar('x', 2)));
        assert!(matches!(parse_cycle("012", 2), Err(TextError::Param(_))));
        assert_eq!(parse_list("0, 9,18").unwrap(), vec![0, 9, 18]);
        assert!(parse_list("0,,1").is_err());
        assert!(parse_list("-1").is_err());
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(q in 2u32..20, raw in prop::collection::vec(0u32..1000, 1..64)) {
            let symbols: Vec<u32> = raw.into_iter().map(|s| s % q).collect();
            let c = CyclicString::new(q, symbols).unwrap();
            prop_assert_eq!(parse_cycle(&format_cycle(&c), q).unwrap(), c);
        }
    }
}
