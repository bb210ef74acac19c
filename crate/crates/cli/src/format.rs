use num_complex::Complex64;

pub fn real(x: f64) -> String {
    format!("{x:.12}")
}

pub fn complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{:.12} {sign} {:.12}i", z.re, z.im.abs())
}

pub fn letters(l: &[i32]) -> String {
    if l.is_empty() {
        "(empty)".into()
    } else {
        l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}
