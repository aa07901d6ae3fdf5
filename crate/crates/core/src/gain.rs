//! Unit gains: exact Gaussian rationals of norm 1, or angles on the unit circle.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A complex number with rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    /// Builds re + im*i from integer pairs (re_num/re_den, im_num/im_den).
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRat {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::from_parts(re, 1, im, 1)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sqr().is_one()
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero");
        GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: Self) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: Self) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: Self) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// A complex number of modulus one attached to an oriented edge.
///
/// `Exact` holds a Gaussian rational with re^2 + im^2 = 1 exactly; `Approx`
/// represents e^{i*angle} with the angle in radians.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitGain {
    Exact(GaussRat),
    Approx(f64),
}

impl UnitGain {
    pub fn one() -> Self {
        UnitGain::Exact(GaussRat::one())
    }

    pub fn i() -> Self {
        UnitGain::Exact(GaussRat::i())
    }

    pub fn minus_one() -> Self {
        UnitGain::Exact(GaussRat::from_ints(-1, 0))
    }

    pub fn minus_i() -> Self {
        UnitGain::Exact(GaussRat::from_ints(0, -1))
    }

    pub fn exact(re: GaussRat) -> Result<Self> {
        if !re.is_unit() {
            return Err(Error::NonUnitGain {
                norm: re.norm_sqr().to_string(),
            });
        }
        Ok(UnitGain::Exact(re))
    }

    pub fn from_angle(radians: f64) -> Self {
        UnitGain::Approx(radians)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, UnitGain::Exact(_))
    }

    /// The gain of the reversed orientation.
    pub fn conjugate(&self) -> Self {
        match self {
            UnitGain::Exact(z) => UnitGain::Exact(z.conj()),
            UnitGain::Approx(a) => UnitGain::Approx(-a),
        }
    }

    /// Gain of a concatenated traversal.
    pub fn product(&self, rhs: &UnitGain) -> Result<Self> {
        match (self, rhs) {
            (UnitGain::Exact(a), UnitGain::Exact(b)) => Ok(UnitGain::Exact(a * b)),
            (UnitGain::Approx(a), UnitGain::Approx(b)) => Ok(UnitGain::Approx(a + b)),
            _ => Err(Error::MixedGainModes),
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            UnitGain::Exact(z) => z.to_complex64(),
            UnitGain::Approx(a) => Complex64::from_polar(1.0, *a),
        }
    }
}

/// Parses "p/q" or "p" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|e| Error::GraphFormat(format!("bad rational {s:?}: {e}")))
}

// JSON shape: {"re": "p/q", "im": "r/s"} for exact gains, {"angle_deg": x}
// for angle gains.
impl Serialize for UnitGain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            UnitGain::Exact(z) => {
                let mut st = serializer.serialize_struct("UnitGain", 2)?;
                st.serialize_field("re", &z.re.to_string())?;
                st.serialize_field("im", &z.im.to_string())?;
                st.end()
            }
            UnitGain::Approx(a) => {
                let mut st = serializer.serialize_struct("UnitGain", 1)?;
                st.serialize_field("angle_deg", &a.to_degrees())?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for UnitGain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct GainVisitor;

        impl<'de> Visitor<'de> for GainVisitor {
            type Value = UnitGain;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a gain object with re/im strings or angle_deg")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<UnitGain, A::Error> {
                let mut re: Option<String> = None;
                let mut im: Option<String> = None;
                let mut angle: Option<f64> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "re" => re = Some(map.next_value()?),
                        "im" => im = Some(map.next_value()?),
                        "angle_deg" => angle = Some(map.next_value()?),
                        other => {
                            return Err(de::Error::unknown_field(
                                other,
                                &["re", "im", "angle_deg"],
                            ))
                        }
                    }
                }
                match (re, im, angle) {
                    (Some(re), Some(im), None) => {
                        let re = parse_rational(&re).map_err(de::Error::custom)?;
                        let im = parse_rational(&im).map_err(de::Error::custom)?;
                        UnitGain::exact(GaussRat::new(re, im)).map_err(de::Error::custom)
                    }
                    (None, None, Some(deg)) => Ok(UnitGain::from_angle(deg.to_radians())),
                    _ => Err(de::Error::custom(
                        "gain must have either re+im or angle_deg",
                    )),
                }
            }
        }

        deserializer.deserialize_map(GainVisitor)
    }
}
