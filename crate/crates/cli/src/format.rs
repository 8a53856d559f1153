use orbitlab_core::LogReal;

/// Twelve significant digits, `%g` style: fixed notation for exponents in
/// [-5, 12), scientific otherwise, trailing zeros trimmed.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

pub fn fmt_log(x: LogReal) -> String {
    fmt_float(x.value())
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(fmt_float(2f64.ln() / 6f64.ln()), "0.386852807235");
        assert_eq!(fmt_float(14f64.ln()), "2.63905732962");
        assert_eq!(fmt_float(2.0), "2");
        assert_eq!(fmt_float(-1.5), "-1.5");
        assert_eq!(fmt_float(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_float(1.25e-7), "1.25e-7");
        assert_eq!(fmt_float(-0.0), "0");
    }
}
