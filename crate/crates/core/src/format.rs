//! Number formatting shared by every report: 9 significant digits, trailing
//! zeros trimmed, in the style of C's `%.9g`.

const DIGITS: usize = 9;

pub fn g9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // rounding to 9 digits can bump the exponent (9.999999999 -> 1e1)
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS as i32 {
        let m = trim(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::g9;

    #[test]
    fn matches_printf_style() {
        assert_eq!(g9(0.185786437626905), "0.185786438");
        assert_eq!(g9(2.0), "2");
        assert_eq!(g9(-0.5), "-0.5");
        assert_eq!(g9(1234567890.0), "1.23456789e+09");
        assert_eq!(g9(0.0000123), "1.23e-05");
        assert_eq!(g9(0.0001), "0.0001");
        assert_eq!(g9(9.9999999999), "10");
        assert_eq!(g9(123456789.0), "123456789");
        assert_eq!(g9(0.0), "0");
        assert_eq!(g9(f64::NAN), "nan");
    }
}
