//! Exact Bernoulli numbers.
//!
//! Values follow the `z/(e^z − 1)` convention, so `B_1 = −1/2`. The table is
//! built eagerly from the binomial recurrence
//! `Σ_{k=0}^{n} C(n+1, k)·B_k = 0` in exact rational arithmetic and is
//! immutable afterwards.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type BigRational = num_rational::BigRational;

/// Largest index held by [`shared_table`].
pub const SHARED_MAX_INDEX: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    max_index: usize,
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Builds `B_0 ..= B_max_index`. `max_index` must be even.
    pub fn build(max_index: usize) -> Result<Self> {
        if max_index % 2 != 0 {
            return Err(Error::invalid(
                "max_index",
                format!("must be even, got {max_index}"),
            ));
        }
        let mut values: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        values.push(BigRational::one());
        // binomial row C(n+1, 0..=n+1), advanced once per n
        let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        for n in 1..=max_index {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(BigInt::one());
            for w in row.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::one());
            row = next;

            if n >= 3 && n % 2 == 1 {
                values.push(BigRational::zero());
                continue;
            }
            let mut acc = BigRational::zero();
            for (k, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * BigRational::from_integer(row[k].clone());
                }
            }
            let lead = BigRational::from_integer(row[n].clone());
            values.push(-acc / lead);
        }
        Ok(BernoulliTable { max_index, values })
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Result<&BigRational> {
        self.values.get(index).ok_or(Error::IndexOutOfRange {
            index,
            max: self.max_index,
        })
    }

    /// `B_index / index!`, exactly.
    pub fn over_factorial(&self, index: usize) -> Result<BigRational> {
        let b = self.get(index)?;
        Ok(b / BigRational::from_integer(factorial(index)))
    }

    /// Nearest double to `B_index`.
    pub fn to_f64(&self, index: usize) -> Result<f64> {
        Ok(rational_to_f64(self.get(index)?))
    }

    /// Fails with [`Error::TableTooSmall`] unless `index` is covered.
    pub fn require(&self, index: usize) -> Result<()> {
        if index > self.max_index {
            Err(Error::TableTooSmall {
                required: index,
                available: self.max_index,
            })
        } else {
            Ok(())
        }
    }
}

/// `B_index / index!` for the given table.
pub fn bernoulli_over_factorial(table: &BernoulliTable, index: usize) -> Result<BigRational> {
    table.over_factorial(index)
}

/// Process-wide table up to [`SHARED_MAX_INDEX`], built on first use.
pub fn shared_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::build(SHARED_MAX_INDEX).expect("even index"))
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Converts with a single rounding step.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // out of f64 range: the sign of the overflow still matters
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
