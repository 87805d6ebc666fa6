//! Fixed float formatting for byte-stable output.

/// 17 significant digits in scientific notation; `-0` prints as `0`.
pub fn sig17(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{:.16e}", v + 0.0)
}

/// As [`sig17`], but non-finite values become JSON `null`.
pub fn sig17_json(v: f64) -> String {
    if v.is_finite() {
        sig17(v)
    } else {
        "null".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_round_trip() {
        for v in [0.5, 1.0, -2.75, 1.0 / 3.0, 1e-300, 123456789.0] {
            let s = sig17(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(sig17(-0.0), sig17(0.0));
        assert_eq!(sig17(0.5), "5.0000000000000000e-1");
        assert_eq!(sig17_json(f64::NAN), "null");
    }
}
