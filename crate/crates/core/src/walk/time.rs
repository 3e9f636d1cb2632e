use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A walk time: either `t = 2π·num/den` exactly, or an arbitrary real.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WalkTime {
    Rational { num: i64, den: u64 },
    Real { value: f64 },
}

impl WalkTime {
    /// `2π·num/den`, reduced to lowest terms.
    pub fn rational(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Precondition("time denominator must be positive".into()));
        }
        let g = (num.unsigned_abs()).gcd(&den).max(1);
        Ok(WalkTime::Rational { num: num / g as i64, den: den / g })
    }

    /// `2π/den`.
    pub fn two_pi_over(den: u64) -> Self {
        Self::rational(1, den).expect("positive denominator")
    }

    /// `π·num/den`.
    pub fn pi_times(num: i64, den: u64) -> Self {
        Self::rational(num, 2 * den).expect("positive denominator")
    }

    pub fn real(value: f64) -> Self {
        WalkTime::Real { value }
    }

    pub fn zero() -> Self {
        WalkTime::Rational { num: 0, den: 1 }
    }

    pub fn value(&self) -> f64 {
        match *self {
            WalkTime::Rational { num, den } => 2.0 * PI * num as f64 / den as f64,
            WalkTime::Real { value } => value,
        }
    }

    /// `(num, den)` with `t = 2π·num/den` for rational times.
    pub fn as_rational(&self) -> Option<(i64, u64)> {
        match *self {
            WalkTime::Rational { num, den } => Some((num, den)),
            WalkTime::Real { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value() == 0.0
    }
}

impl fmt::Display for WalkTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WalkTime::Real { value } => write!(f, "real:{value}"),
            WalkTime::Rational { num, den } => {
                // t / π = a / b in lowest terms.
                let (mut a, mut b) = (2 * num, den as i64);
                let g = a.gcd(&b).max(1);
                a /= g;
                b /= g;
                if a == 0 {
                    return write!(f, "0");
                }
                if a < 0 {
                    write!(f, "-")?;
                }
                let a = a.abs();
                let (head, mult) = if a % 2 == 0 { ("2pi", a / 2) } else { ("pi", a) };
                write!(f, "{head}")?;
                if mult != 1 {
                    write!(f, "*{mult}")?;
                }
                if b != 1 {
                    write!(f, "/{b}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_uint(s: &str, what: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("invalid {what} '{s}'")))
}

impl FromStr for WalkTime {
    type Err = Error;

    /// Accepts `0`, `real:<float>`, and `[-][k]pi[*m][/n]` where `n` may be
    /// `sqrtN` (which yields a real time).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("real:") {
            let value: f64 = rest.trim().parse().map_err(|_| Error::Parse(format!("invalid real time '{rest}'")))?;
            if !value.is_finite() {
                return Err(Error::Parse(format!("time must be finite, got '{rest}'")));
            }
            return Ok(WalkTime::real(value));
        }
        if s == "0" {
            return Ok(WalkTime::zero());
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(b) => (true, b.trim_start()),
            None => (false, s),
        };
        let pos = body.find("pi").ok_or_else(|| Error::Parse(format!("unrecognized time '{s}'")))?;
        let coef = if pos == 0 { 1 } else { parse_uint(&body[..pos], "coefficient")? };
        let mut rest = &body[pos + 2..];
        let mut mult = 1u64;
        if let Some(r) = rest.strip_prefix('*') {
            let end = r.find('/').unwrap_or(r.len());
            mult = parse_uint(&r[..end], "multiplier")?;
            rest = &r[end..];
        }
        let numerator = coef
            .checked_mul(mult)
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(|| Error::Parse(format!("time '{s}' is too large")))?;
        let numerator = if negative { -numerator } else { numerator };
        if rest.is_empty() {
            return WalkTime::rational(numerator, 2);
        }
        let denom = rest.strip_prefix('/').ok_or_else(|| Error::Parse(format!("unrecognized time '{s}'")))?;
        if let Some(radicand) = denom.strip_prefix("sqrt") {
            let r = parse_uint(radicand, "radicand")?;
            if r == 0 {
                return Err(Error::Parse("square root of zero in denominator".into()));
            }
            return Ok(WalkTime::real(numerator as f64 * PI / (r as f64).sqrt()));
        }
        let d = parse_uint(denom, "denominator")?;
        if d == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        WalkTime::rational(numerator, 2 * d)
    }
}
