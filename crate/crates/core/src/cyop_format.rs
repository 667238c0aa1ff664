//! The `.cyop` operator text format.
//!
//! UTF-8 lines: `order: n`, `degree: m`, then m+1 lines
//! `P[k]: c0 c1 ... c_n` listing the coefficients of T^0..T^n of P_k as
//! integers or `p/q` fractions in lowest terms. `#` starts a comment.
//! Writers emit exactly this layout; readers ignore extra whitespace.

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rational::{fmt_q, parse_q};
use crate::theta::ThetaOperator;

pub fn write_operator(op: &ThetaOperator) -> String {
    let n = op.order();
    let m = op.degree();
    let mut out = String::new();
    out.push_str(&format!("order: {n}\n"));
    out.push_str(&format!("degree: {m}\n"));
    for k in 0..=m {
        let p = op.theta_coeff(k);
        let row: Vec<String> = (0..=n).map(|i| fmt_q(&p.coeff(i))).collect();
        out.push_str(&format!("P[{k}]: {}\n", row.join(" ")));
    }
    out
}

pub fn parse_operator(text: &str) -> Result<ThetaOperator> {
    let mut order: Option<usize> = None;
    let mut degree: Option<usize> = None;
    let mut rows: Vec<(usize, QPoly, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "expected `key: value`".into(),
        })?;
        let key = key.trim();
        let value = value.trim();
        let parse_usize = |what: &str| -> Result<usize> {
            value.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("invalid {what} `{value}`"),
            })
        };
        match key {
            "order" => order = Some(parse_usize("order")?),
            "degree" => degree = Some(parse_usize("degree")?),
            _ if key.starts_with("P[") && key.ends_with(']') => {
                let k: usize = key[2..key.len() - 1].parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid coefficient index `{key}`"),
                })?;
                let mut coeffs = Vec::new();
                for tok in value.split_whitespace() {
                    coeffs.push(parse_q(tok).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?);
                }
                rows.push((k, QPoly::new(coeffs), line_no));
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown key `{key}`"),
                })
            }
        }
    }
    let order = order.ok_or(Error::Parse {
        line: 0,
        msg: "missing `order:` line".into(),
    })?;
    let degree = degree.ok_or(Error::Parse {
        line: 0,
        msg: "missing `degree:` line".into(),
    })?;
    let mut coeffs = vec![QPoly::zero(); degree + 1];
    for (k, p, line_no) in rows {
        if k > degree {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("P[{k}] exceeds declared degree {degree}"),
            });
        }
        coeffs[k] = p;
    }
    ThetaOperator::from_theta_coefficients(order, coeffs)
        .map_err(|e| Error::Parse {
            line: 0,
            msg: e.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn round_trip() {
        let op = ThetaOperator::general_form(3, 2, &[(1, 3, qi(2)), (2, 1, qi(-7))]).unwrap();
        let text = write_operator(&op);
        let back = parse_operator(&text).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn tolerant_reader_strict_writer() {
        let text = "# a comment\n order:  3 \ndegree: 0\nP[0]:   0 0   0 1  # theta cubed\n";
        let op = parse_operator(text).unwrap();
        assert_eq!(op.order(), 3);
        assert_eq!(write_operator(&op), "order: 3\ndegree: 0\nP[0]: 0 0 0 1\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "order: 3\ndegree: 0\nP[0]: 0 0 x 1\n";
        match parse_operator(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_operator("degree: 0\nP[0]: 1\n").is_err());
    }
}
