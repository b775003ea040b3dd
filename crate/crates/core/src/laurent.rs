//! Integer Laurent polynomials in v.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Σ cᵢ vⁱ with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// c·v^e
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// v + v⁻¹
    pub fn quantum_two() -> Self {
        Self::monomial(1, 1) + Self::monomial(1, -1)
    }

    /// v − v⁻¹
    pub fn v_minus_v_inverse() -> Self {
        Self::monomial(1, 1) - Self::monomial(1, -1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiplication by v^k.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// v ↦ v⁻¹
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Membership in A⁻ = Z[v⁻¹].
    pub fn in_a_minus(&self) -> bool {
        self.max_degree().is_none_or(|d| d <= 0)
    }

    /// Membership in v⁻¹A⁻.
    pub fn in_v_inverse_a_minus(&self) -> bool {
        self.max_degree().is_none_or(|d| d < 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exact quotient by `divisor` if it exists in Z[v, v⁻¹].
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlo, dhi) = (divisor.min_degree()?, divisor.max_degree()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some(hi) = rem.max_degree() {
            let lo = rem.min_degree().expect("nonempty");
            if hi - lo < dhi - dlo {
                return None;
            }
            let c = rem.coeff(hi);
            if !(&c % &lead).is_zero() {
                return None;
            }
            let term = LaurentPoly::monomial(&c / &lead, hi - dhi);
            rem = rem - &term * divisor;
            quotient += term;
        }
        Some(quotient)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::monomial(c, 0)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, &-c);
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// `3v^-2 + 1 - v + v^2`, ascending exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = magnitude.is_one();
            match e {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude}")?;
                    }
                    f.write_str("v")?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Inverse of `Display`; whitespace is optional.
    fn from_str(s: &str) -> Result<Self, Error> {
        let chars: Vec<char> = s.chars().collect();
        let err = |i: usize, message: &str| Error::PolyParse {
            column: i + 1,
            message: message.to_string(),
        };
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        let digits = |i: &mut usize| -> String {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            chars[start..*i].iter().collect()
        };
        let mut out = LaurentPoly::zero();
        let mut i = 0;
        skip_ws(&mut i);
        if i == chars.len() {
            return Err(err(i, "empty polynomial"));
        }
        let mut first = true;
        while i < chars.len() {
            let mut negative = false;
            if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                negative = chars[i] == '-';
                i += 1;
                skip_ws(&mut i);
            } else if !first {
                return Err(err(i, "expected `+` or `-`"));
            }
            first = false;
            let num = digits(&mut i);
            let mut coeff = if num.is_empty() {
                BigInt::one()
            } else {
                num.parse::<BigInt>().map_err(|_| err(i, "bad coefficient"))?
            };
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            let mut exponent = 0;
            if i < chars.len() && chars[i] == 'v' {
                i += 1;
                exponent = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let sign = if i < chars.len() && chars[i] == '-' {
                        i += 1;
                        -1
                    } else {
                        1
                    };
                    let e = digits(&mut i);
                    if e.is_empty() {
                        return Err(err(i, "expected an exponent"));
                    }
                    exponent = sign * e.parse::<i32>().map_err(|_| err(i, "exponent too large"))?;
                }
            } else if num.is_empty() {
                return Err(err(i, "expected a coefficient or `v`"));
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(exponent, &coeff);
            skip_ws(&mut i);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_format() {
        assert_eq!(p("3v^-2 + 1 + v^2").to_string(), "3v^-2 + 1 + v^2");
        assert_eq!(LaurentPoly::v_minus_v_inverse().to_string(), "-v^-1 + v");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-2v - 3").to_string(), "-3 - 2v");
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("v + 3").bar(), p("v^-1 + 3"));
        assert_eq!(LaurentPoly::quantum_two().bar(), LaurentPoly::quantum_two());
    }

    #[test]
    fn lattice_predicates() {
        assert!(p("1 + v^-3").in_a_minus());
        assert!(!p("1 + v^-3").in_v_inverse_a_minus());
        assert!(LaurentPoly::zero().in_v_inverse_a_minus());
        assert!(!p("v").in_a_minus());
        assert!(!p("v^-1 - v^-2").is_nonnegative());
    }

    #[test]
    fn exact_division() {
        let q2 = LaurentPoly::quantum_two();
        let x = &q2.pow(3) * &p("2v^-1 - 5");
        assert_eq!(x.div_exact(&q2.pow(3)), Some(p("2v^-1 - 5")));
        assert_eq!(p("v").div_exact(&q2), None);
        assert_eq!(LaurentPoly::zero().div_exact(&q2), Some(LaurentPoly::zero()));
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("3 4".parse::<LaurentPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..6, -20i64..20), 0..6)
            .prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_an_involution(a in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a);
        }

        #[test]
        fn display_round_trips(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(b.clone() + c.clone()), &a * &b + &a * &c);
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert!((a.clone() - a.clone()).is_zero());
        }

        #[test]
        fn division_undoes_multiplication(a in arb_poly(), k in 0u32..4) {
            let d = LaurentPoly::quantum_two().pow(k);
            prop_assert_eq!((&a * &d).div_exact(&d), Some(a));
        }
    }
}
