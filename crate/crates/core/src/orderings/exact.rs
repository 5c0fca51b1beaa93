//! Ordering conditions in exact rational arithmetic.
//!
//! The improving-ordering results are discrete: one ulp on the wrong side of
//! a prefix bound flips membership of a whole cell. When variances are given
//! as decimal literals they can be checked without rounding here.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{ensure_ascending, enumerate_in, first_violation, MpgState, PermutationOrdering};
use crate::error::{Error, Result};
use crate::profile::{check_dim, VarianceProfile};

/// Parses a decimal literal such as `"16"`, `"0.125"`, `"-3.5e-2"` into an
/// exact rational.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidDecimal(text.to_string());
    let t = text.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(k) => (&t[..k], t[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(k) => (&digits[..k], &digits[k + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut all_digits = alloc::string::String::with_capacity(int_part.len() + frac_part.len());
    all_digits.push_str(int_part);
    all_digits.push_str(frac_part);
    let mut numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        BigRational::from_integer(numer * pow)
    } else {
        BigRational::new(numer, pow)
    })
}

/// A variance profile held as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactProfile {
    values: Vec<BigRational>,
}

impl ExactProfile {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::GroupTooSmall(values.len()));
        }
        if let Some(index) = values.iter().position(|v| !v.is_positive()) {
            return Err(Error::InvalidVariance {
                index,
                value: to_f64(&values[index]),
            });
        }
        Ok(Self { values })
    }

    pub fn from_decimals<S: AsRef<str>>(texts: &[S]) -> Result<Self> {
        Self::new(
            texts
                .iter()
                .map(|t| parse_decimal(t.as_ref()))
                .collect::<Result<_>>()?,
        )
    }

    /// Exact value of each double.
    pub fn from_profile(s: &VarianceProfile) -> Self {
        Self {
            values: s
                .values()
                .iter()
                .map(|&v| BigRational::from_float(v).expect("finite variance"))
                .collect(),
        }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Nearest doubles.
    pub fn to_profile(&self) -> VarianceProfile {
        VarianceProfile::new(self.values.iter().map(to_f64).collect())
            .expect("positive rationals map to positive doubles")
    }

    /// Ordering that sorts ascending, ties broken by index.
    pub fn ascending_order(&self) -> PermutationOrdering {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]));
        PermutationOrdering::from_zero_based(idx).expect("sorted indices form a permutation")
    }

    pub fn relabel(&self, tau: &PermutationOrdering) -> Result<Self> {
        check_dim(self.len(), tau.len())?;
        Ok(Self {
            values: tau.apply(&self.values),
        })
    }

    pub fn permutation_condition(&self, tau: &PermutationOrdering) -> Result<bool> {
        check_dim(self.len(), tau.len())?;
        Ok(first_violation(&self.values, tau.as_slice()).is_none())
    }

    pub fn ordering_sufficiency(&self) -> Result<bool> {
        ensure_ascending(&self.values)?;
        self.permutation_condition(&PermutationOrdering::identity(self.len()))
    }

    pub fn mpg_state(&self) -> Result<MpgState<BigRational>> {
        MpgState::from_values(self.values.clone())
    }

    pub fn mpg(&self) -> Result<Vec<PermutationOrdering>> {
        Ok(self.mpg_state()?.improving_orderings())
    }

    pub fn enumerate_improving_orderings(&self, cap: usize) -> Result<Vec<PermutationOrdering>> {
        enumerate_in(&self.values, cap)
    }
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
