//! Exact rationals.
use alloc::format;
use alloc::string::String;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;

#[inline]
pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

#[inline]
pub fn qr(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// `"p/q"`, always with a denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: i128 = a.trim().parse().ok()?;
            let b: i128 = b.trim().parse().ok()?;
            if b == 0 {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<i128>().ok().map(q),
    }
}

pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn half() -> Q {
    Q::new(1, 2)
}

pub fn one() -> Q {
    Q::one()
}

pub fn zero() -> Q {
    Q::zero()
}

/// Floor of a rational as an integer.
pub fn floor(x: &Q) -> i128 {
    x.floor().to_integer()
}

/// Representative of `x` modulo 1 in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for s in ["3/4", "-7/2", "5/1", "0/1"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("6"), Some(q(6)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(frac(&qr(-1, 3)), qr(2, 3));
    }
}
