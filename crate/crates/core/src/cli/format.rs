//! Number formatting shared by every subcommand.

/// `x` to 12 significant digits, `%g`-style: fixed notation for moderate
/// exponents, scientific otherwise, trailing zeros dropped.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let digits = (11 - exp) as usize;
        trim_zeros(&format!("{x:.digits$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// λ_N with a subscript index, e.g. `λ₂`.
pub fn lambda_sub(n: usize) -> String {
    let sub: String = n
        .to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect();
    format!("λ{sub}")
}
