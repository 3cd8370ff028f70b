//! Printing in the parser's syntax. Terms are listed by ascending total
//! degree; within a degree the lexicographically larger monomial comes first.

use num_traits::{One, Signed};

use super::{Chart, VectorField};
use crate::exactalg::{format_rational, Monomial, Poly, RatFunc, Rational};

fn format_monomial(m: &Monomial, chart: &Chart) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.names()[i].clone()),
            _ => parts.push(format!("{}^{}", chart.names()[i], e)),
        }
    }
    parts.join("*")
}

/// Unsigned term body, e.g. `1/2*x^2`, `x*y`, `3`.
fn term_body(m: &Monomial, c: &Rational, chart: &Chart) -> String {
    let c = c.abs();
    if m.is_one() {
        return format_rational(&c);
    }
    let mono = format_monomial(m, chart);
    if c.is_one() {
        mono
    } else {
        format!("{}*{}", format_rational(&c), mono)
    }
}

fn ordered_terms(p: &Poly) -> Vec<(&Monomial, &Rational)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| b.0.exponents().cmp(a.0.exponents()))
    });
    terms
}

fn join_signed(items: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (k, (negative, body)) in items.into_iter().enumerate() {
        match (k, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

pub fn format_poly(p: &Poly, chart: &Chart) -> String {
    if p.is_zero() {
        return "0".into();
    }
    join_signed(
        ordered_terms(p)
            .into_iter()
            .map(|(m, c)| (c.is_negative(), term_body(m, c, chart)))
            .collect(),
    )
}

pub fn format_function(f: &RatFunc, chart: &Chart) -> String {
    match f.as_poly() {
        Some(p) => format_poly(p, chart),
        None => format!(
            "({})/({})",
            format_poly(f.numer(), chart),
            format_poly(f.denom(), chart)
        ),
    }
}

pub fn format_vf(v: &VectorField, chart: &Chart) -> String {
    let mut items = Vec::new();
    for (a, c) in v.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = format!("d{}", chart.names()[a]);
        let item = match c.as_poly() {
            Some(p) if p.num_terms() == 1 => {
                let (m, k) = p.terms().next().unwrap();
                let body = if m.is_one() && k.abs().is_one() {
                    d
                } else {
                    format!("{}*{}", term_body(m, k, chart), d)
                };
                (k.is_negative(), body)
            }
            _ => (false, format!("({})*{}", format_function(c, chart), d)),
        };
        items.push(item);
    }
    if items.is_empty() {
        return "0".into();
    }
    join_signed(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfield::{parse_function, parse_vf};

    fn chart() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn example_expressions_print_canonically() {
        for s in [
            "z - 1/2*x^2",
            "z - x^2 - x*y",
            "x",
            "0",
            "-x^2",
            "3 + x*z^2",
        ] {
            let f = parse_function(s, &chart()).unwrap();
            assert_eq!(format_function(&f, &chart()), s);
        }
        for s in [
            "dx + (2*x + y)*dz",
            "dy + (x + x^2)*dz",
            "2*x*dz",
            "-dx",
            "0",
            "-1/2*y*dx - dz",
        ] {
            let v = parse_vf(s, &chart()).unwrap();
            assert_eq!(format_vf(&v, &chart()), s);
        }
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let f = parse_function("(x - 2)/(3 + 3*y)", &chart()).unwrap();
        let s = format_function(&f, &chart());
        assert_eq!(parse_function(&s, &chart()).unwrap(), f);
        let v = parse_vf("x/(1 + y)*dz - dx", &chart()).unwrap();
        let s = format_vf(&v, &chart());
        assert_eq!(parse_vf(&s, &chart()).unwrap(), v);
    }
}
