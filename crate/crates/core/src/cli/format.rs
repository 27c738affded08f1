/// `%.{digits}g`-style formatting. With `keep_zeros` trailing zeros are kept
/// (`%#.{digits}g`), so `0` prints as `0.000` at four digits.
pub fn sig_digits(x: f64, digits: usize, keep_zeros: bool) -> String {
    let digits = digits.max(1);
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = if x == 0.0 {
        0
    } else {
        // Exponent after rounding to the requested precision.
        let sci = format!("{:.*e}", digits - 1, x);
        sci[sci.find('e').unwrap() + 1..].parse::<i32>().unwrap()
    };
    let mut out = if exponent < -4 || exponent >= digits as i32 {
        let sci = format!("{:.*e}", digits - 1, x);
        let (mantissa, exp) = sci.split_at(sci.find('e').unwrap());
        let exp: i32 = exp[1..].parse().unwrap();
        let mantissa = if keep_zeros { mantissa.to_string() } else { trim_zeros(mantissa) };
        format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if keep_zeros {
            fixed
        } else {
            trim_zeros(&fixed)
        }
    };
    if out == "-0" {
        out = "0".into();
    }
    out
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::sig_digits;

    #[test]
    fn general_format() {
        assert_eq!(sig_digits(0.0, 6, false), "0");
        assert_eq!(sig_digits(11.0, 6, false), "11");
        assert_eq!(sig_digits(2.0 / 3.0, 6, false), "0.666667");
        assert_eq!(sig_digits(123456.7, 6, false), "123457");
        assert_eq!(sig_digits(1234567.0, 6, false), "1.23457e+06");
        assert_eq!(sig_digits(0.00001234, 6, false), "1.234e-05");
        assert_eq!(sig_digits(9.9999996, 6, false), "10");
    }

    #[test]
    fn alternate_format() {
        assert_eq!(sig_digits(0.0, 4, true), "0.000");
        assert_eq!(sig_digits(1.23456, 4, true), "1.235");
        assert_eq!(sig_digits(123.456, 4, true), "123.5");
        assert_eq!(sig_digits(0.0123456, 4, true), "0.01235");
        assert_eq!(sig_digits(2.5, 4, true), "2.500");
    }
}
