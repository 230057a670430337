//! Exact coefficients: ratios of integer polynomials in formal parameters.
//!
//! Parameter-free values stay on a rational fast path. Formal parameters are
//! algebraically independent, so `m*l0 + n*l1` vanishes only for `m = n = 0`.

mod poly;

pub use poly::{PMono, ParamPoly, Symbol};

use std::borrow::Cow;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    /// Canonical fraction with at least one parameter present.
    Fraction { num: ParamPoly, den: ParamPoly },
}

/// Element of the coefficient field Q(params).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rational(BigRational::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rational(BigRational::one()))
    }

    pub fn int(n: i64) -> Self {
        Scalar(Repr::Rational(BigRational::from_integer(BigInt::from(n))))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar(Repr::Rational(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(Repr::Rational(BigRational::from_integer(n)))
    }

    /// The formal parameter `name` as a field element.
    pub fn param(name: &str) -> Self {
        Scalar::from_polys(ParamPoly::var(name), ParamPoly::constant(1))
    }

    /// Builds `num / den` in canonical form.
    pub fn from_polys(num: ParamPoly, den: ParamPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(d) = den.as_constant() {
            if let Some(n) = num.as_constant() {
                return Scalar(Repr::Rational(BigRational::new(n, d)));
            }
            if d.is_one() {
                return Scalar(Repr::Fraction { num, den });
            }
            // integer denominator: only the content can cancel
            let g = num.content_gcd().gcd(&d);
            let g = if d.is_negative() { -g } else { g };
            let (n, d) = if g.is_one() { (num, d) } else { (num.div_exact(&ParamPoly::constant(g.clone())).unwrap(), &d / &g) };
            return Scalar(Repr::Fraction { num: n, den: ParamPoly::constant(d) });
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g).expect("gcd divides numerator");
        let mut d = den.div_exact(&g).expect("gcd divides denominator");
        if d.leading_sign() < 0 {
            n = n.neg();
            d = d.neg();
        }
        if let (Some(n), Some(d)) = (n.as_constant(), d.as_constant()) {
            return Scalar(Repr::Rational(BigRational::new(n, d)));
        }
        Scalar(Repr::Fraction { num: n, den: d })
    }

    /// `num / den` for coprime `num`, `den`: fixes signs and the representation only.
    fn canonical(num: ParamPoly, den: ParamPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(d) = den.as_constant() {
            // an integer denominator may still share integer content
            return Scalar::from_polys(num, ParamPoly::constant(d));
        }
        let (n, d) = if den.leading_sign() < 0 { (num.neg(), den.neg()) } else { (num, den) };
        Scalar(Repr::Fraction { num: n, den: d })
    }

    fn parts_ref(&self) -> (Cow<'_, ParamPoly>, Cow<'_, ParamPoly>) {
        match &self.0 {
            Repr::Rational(q) => (
                Cow::Owned(ParamPoly::constant(q.numer().clone())),
                Cow::Owned(ParamPoly::constant(q.denom().clone())),
            ),
            Repr::Fraction { num, den } => (Cow::Borrowed(num), Cow::Borrowed(den)),
        }
    }

    fn parts(&self) -> (ParamPoly, ParamPoly) {
        match &self.0 {
            Repr::Rational(q) => (
                ParamPoly::constant(q.numer().clone()),
                ParamPoly::constant(q.denom().clone()),
            ),
            Repr::Fraction { num, den } => (num.clone(), den.clone()),
        }
    }

    /// Numerator and denominator polynomials of the canonical form.
    pub fn numerator_denominator(&self) -> (ParamPoly, ParamPoly) {
        self.parts()
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rational(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Fraction { .. } => None,
        }
    }

    pub fn is_parametric(&self) -> bool {
        matches!(self.0, Repr::Fraction { .. })
    }

    pub fn inv(&self) -> Option<Scalar> {
        match &self.0 {
            Repr::Rational(q) if q.is_zero() => None,
            Repr::Rational(q) => Some(Scalar(Repr::Rational(q.recip()))),
            Repr::Fraction { num, den } => Some(Scalar::from_polys(den.clone(), num.clone())),
        }
    }

    /// True when the value is a negative rational, or its leading numerator term is negative.
    pub fn looks_negative(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_negative(),
            Repr::Fraction { num, .. } => num.leading_sign() < 0,
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

fn exact(a: &ParamPoly, d: &ParamPoly) -> ParamPoly {
    if d.as_constant().map_or(false, |c| c.is_one()) {
        return a.clone();
    }
    a.div_exact(d).expect("gcd divides")
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            _ => {
                let (an, ad) = self.parts_ref();
                let (bn, bd) = rhs.parts_ref();
                if ad == bd {
                    return Scalar::from_polys(an.add(&bn), ad.into_owned());
                }
                // With g = gcd(ad, bd), only g can share factors with the new numerator.
                let g = ad.gcd(&bd);
                let (ad1, bd1) = (exact(&ad, &g), exact(&bd, &g));
                let num = an.mul(&bd1).add(&bn.mul(&ad1));
                if num.is_zero() {
                    return Scalar::zero();
                }
                let h = num.gcd(&g);
                Scalar::canonical(exact(&num, &h), ad1.mul(&bd1).mul(&exact(&g, &h)))
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            _ => {
                if self.is_zero() || rhs.is_zero() {
                    return Scalar::zero();
                }
                let (an, ad) = self.parts_ref();
                let (bn, bd) = rhs.parts_ref();
                if ad.as_constant().is_some() && bd.as_constant().is_some() {
                    return Scalar::from_polys(an.mul(&bn), ad.mul(&bd));
                }
                // Both inputs are reduced, so cross-cancelling leaves a reduced product.
                let g1 = an.gcd(&bd);
                let g2 = bn.gcd(&ad);
                Scalar::canonical(
                    exact(&an, &g1).mul(&exact(&bn, &g2)),
                    exact(&ad, &g2).mul(&exact(&bd, &g1)),
                )
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
            Repr::Fraction { num, den } => Scalar(Repr::Fraction {
                num: num.neg(),
                den: den.clone(),
            }),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Fraction { num, den } => {
                let single = num.terms().count() == 1;
                let den_one = den.as_constant().map_or(false, |d| d.is_one());
                match (single, den_one) {
                    (_, true) => write!(f, "{num}"),
                    (true, false) => write!(f, "{num}/({den})"),
                    (false, false) => write!(f, "({num})/({den})"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::ratio(1, 3);
        assert_eq!(&a + &b, Scalar::ratio(5, 6));
        assert_eq!((&a * &b).to_string(), "1/6");
        assert_eq!((&a / &b), Scalar::ratio(3, 2));
    }

    #[test]
    fn parametric_fractions_cancel() {
        let l0 = Scalar::param("l0");
        let l1 = Scalar::param("l1");
        let s = &(&l0 * &l0) - &(&l1 * &l1);
        let d = &l0 - &l1;
        assert_eq!(&s / &d, &l0 + &l1);
        assert_eq!(&(&l0 / &l1) * &l1, l0);
        assert!((&(&l0 / &l0) - &Scalar::one()).is_zero());
    }

    #[test]
    fn canonical_sign_on_denominator() {
        let l0 = Scalar::param("l0");
        let x = &Scalar::one() / &(-&l0);
        assert_eq!(x.to_string(), "-1/(l0)");
        assert_eq!(x, -&(&Scalar::one() / &l0));
    }

    #[test]
    fn independence_of_parameters() {
        // m*l0 + n*l1 = 0 only for m = n = 0
        let l0 = Scalar::param("l0");
        let l1 = Scalar::param("l1");
        for m in -3..=3 {
            for n in -3..=3 {
                let v = &(&Scalar::int(m) * &l0) + &(&Scalar::int(n) * &l1);
                assert_eq!(v.is_zero(), m == 0 && n == 0);
            }
        }
    }
}
