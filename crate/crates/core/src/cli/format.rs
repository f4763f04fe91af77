/// Shortest decimal that round-trips to the same double (at most 17
/// significant digits), never locale-dependent.
pub(crate) fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Quotes a CSV field when it contains a separator, quote or newline.
pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [1.0, 0.0, -2.5, 1.0572508753757286, 1e-300, 184486604703.6371, f64::MAX] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(1.0), "1.0");
        assert!(!num(1e300).contains(','));
    }

    #[test]
    fn quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    }
}
