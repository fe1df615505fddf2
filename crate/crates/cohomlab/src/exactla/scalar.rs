use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// An element of ℚ(i). Purely rational values simply carry a zero imaginary
/// part; every arithmetic path short-circuits on that case.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: RBig,
    im: RBig,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: RBig::ZERO, im: RBig::ZERO };
    pub const ONE: Scalar = Scalar { re: RBig::ONE, im: RBig::ZERO };

    pub fn new(re: RBig, im: RBig) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: RBig::from(n), im: RBig::ZERO }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: RBig::from_parts_signed(IBig::from(num), IBig::from(den)),
            im: RBig::ZERO,
        }
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar { re: RBig::from(re), im: RBig::from(im) }
    }

    pub fn i() -> Self {
        Scalar { re: RBig::ZERO, im: RBig::ONE }
    }

    pub fn re(&self) -> &RBig {
        &self.re
    }

    pub fn im(&self) -> &RBig {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -&self.im }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Scalar { re: RBig::ONE / &self.re, im: RBig::ZERO });
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Scalar { re: &self.re / &norm, im: -&self.im / &norm })
    }

    /// Least common multiple of the denominators of both parts.
    pub(crate) fn denom_lcm(&self) -> UBig {
        lcm(self.re.denominator(), self.im.denominator())
    }

    /// `self * m` as a Gaussian integer; `m` must clear both denominators.
    pub(crate) fn scaled_parts(&self, m: &UBig) -> (IBig, IBig) {
        let part = |x: &RBig| -> IBig {
            let q = m / x.denominator();
            x.numerator() * IBig::from(q)
        };
        (part(&self.re), part(&self.im))
    }
}

pub(crate) fn lcm(a: &UBig, b: &UBig) -> UBig {
    use dashu_base::Gcd;
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = a.gcd(b);
    a / g * b
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<RBig> for Scalar {
    fn from(re: RBig) -> Self {
        Scalar { re, im: RBig::ZERO }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_real() && o.is_real() {
            return Scalar { re: &self.re + &o.re, im: RBig::ZERO };
        }
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.is_real() && o.is_real() {
            return Scalar { re: &self.re - &o.re, im: RBig::ZERO };
        }
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_real() && o.is_real() {
            return Scalar { re: &self.re * &o.re, im: RBig::ZERO };
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        if self.is_real() && o.is_real() {
            return Scalar { re: &self.re / &o.re, im: RBig::ZERO };
        }
        self * &o.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar { (&self).$f(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar { (&self).$f(o) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar { self.$f(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::ZERO;
        for x in iter {
            acc += &x;
        }
        acc
    }
}

fn fmt_rat(x: &RBig) -> String {
    if x.denominator().is_one() {
        x.numerator().to_string()
    } else {
        format!("{}/{}", x.numerator(), x.denominator())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return f.write_str(&fmt_rat(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{} i", fmt_rat(&self.im))
        };
        if self.re.is_zero() {
            f.write_str(&im)
        } else if im.starts_with('-') {
            write!(f, "{}{}", fmt_rat(&self.re), im)
        } else {
            write!(f, "{}+{}", fmt_rat(&self.re), im)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str, whole: &str) -> Result<RBig, ExactError> {
    let bad = || ExactError::Parse(whole.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    // RBig accepts radix prefixes and underscores; we only want plain p/q.
    let ok = s
        .char_indices()
        .all(|(i, c)| c.is_ascii_digit() || c == '/' || ((c == '-' || c == '+') && i == 0));
    if !ok {
        return Err(bad());
    }
    if let Some((_, den)) = s.split_once('/') {
        if den.trim_start_matches('0').is_empty() {
            return Err(bad());
        }
    }
    RBig::from_str(s).map_err(|_| bad())
}

impl FromStr for Scalar {
    type Err = ExactError;

    /// Accepts `p`, `p/q`, `c/d i`, `a/b+c/d i`, `i`, `-i`, `2i`, `2*i`.
    fn from_str(src: &str) -> Result<Self, ExactError> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::from(parse_rat(&s, src)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (re_txt, im_txt) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_txt.is_empty() { RBig::ZERO } else { parse_rat(re_txt, src)? };
        let im = match im_txt {
            "" | "+" => RBig::ONE,
            "-" => RBig::NEG_ONE,
            t => parse_rat(t, src)?,
        };
        Ok(Scalar { re, im })
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}
