//! Exact values of the named constants for given `(Δ, k)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// How a stored value relates to its defining formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Approx {
    Exact,
    /// Stored value is at least the true value.
    Upper,
    /// Stored value is at most the true value.
    Lower,
    /// Built from an upper and a lower approximation; no one-sided guarantee.
    Mixed,
}

/// Base-two logarithm of `x`, exact when `x` is a power of two, otherwise the
/// integer ceiling.
fn log2_ceil(x: u64) -> (u64, Approx) {
    assert!(x >= 1);
    let exact = x.is_power_of_two();
    let bits = 64 - (x - 1).leading_zeros() as u64;
    let value = if x == 1 { 0 } else { bits };
    (value, if exact { Approx::Exact } else { Approx::Upper })
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e as usize
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn rpow(x: &BigRational, e: u64) -> BigRational {
    Pow::pow(x, e as u32)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamLedger {
    pub delta: u64,
    pub k: u64,
    /// `1/(32Δ)`.
    pub gamma: BigRational,
    /// `γ^{2Δ}/(2^{11}Δ^4)`.
    pub epsilon: BigRational,
    /// `log(32Δ)`.
    pub s: BigRational,
    /// `1/(8s)`.
    pub beta: BigRational,
    /// `2^{90Δ+12} Δ^{33Δ+6} k`.
    pub m: BigInt,
    /// `(γ/4) ε^{s−1} β^{s−2}`, the factor multiplying `N` in `m_0`.
    pub m0_coefficient: BigRational,
    /// `2^{512Δlog²Δ} k`, the least host order for the efficient absorber.
    pub n_min: BigInt,
    /// `m_0` evaluated at `N = n_min`.
    pub m0: BigRational,
    /// `2^{84Δ+2} Δ^{32Δ} k`.
    pub ramsey_ub: BigInt,
    /// `2^{256Δlog²Δ} k`.
    pub q: BigInt,
    /// `(γ/4)^Δ/(8Δ)`, used by the tie search.
    pub tie_epsilon_prime: BigRational,
    /// `γ^Δ ε'/(8Δ)`.
    pub tie_epsilon: BigRational,
    /// Direction of every field that is not exact.
    pub approx: BTreeMap<&'static str, Approx>,
}

/// Largest `Δ` accepted; beyond this the powers become impractically long.
pub const MAX_DELTA: u64 = 64;

pub fn param_ledger(delta: u64, k: u64) -> Result<ParamLedger> {
    if delta == 0 || k == 0 {
        return Err(Error::Precondition("delta and k must be at least 1".into()));
    }
    if delta > MAX_DELTA {
        return Err(Error::SizeLimit {
            what: "ledger delta",
            got: delta as usize,
            limit: MAX_DELTA as usize,
        });
    }
    let d = big(delta);
    let kk = big(k);
    let one = BigRational::one();

    let gamma = ratio(BigInt::one(), big(32 * delta));
    let epsilon = rpow(&gamma, 2 * delta) / BigRational::from(pow2(11) * Pow::pow(&d, 4u32));

    let (s_int, s_dir) = log2_ceil(32 * delta);
    let (log_delta, log_dir) = log2_ceil(delta);
    let log_sq = log_delta * log_delta;
    let s = BigRational::from(big(s_int));
    let beta = ratio(BigInt::one(), big(8 * s_int));

    let m = pow2(90 * delta + 12) * Pow::pow(&d, (33 * delta + 6) as u32) * &kk;
    let m0_coefficient = &gamma / BigRational::from(big(4))
        * rpow(&epsilon, s_int - 1)
        * rpow(&beta, s_int.saturating_sub(2));
    let n_min = pow2(512 * delta * log_sq) * &kk;
    let m0 = &m0_coefficient * BigRational::from(n_min.clone());
    let ramsey_ub = pow2(84 * delta + 2) * Pow::pow(&d, (32 * delta) as u32) * &kk;
    let q = pow2(256 * delta * log_sq) * &kk;

    let tie_epsilon_prime = rpow(&(&gamma / BigRational::from(big(4))), delta)
        / BigRational::from(big(8 * delta));
    let tie_epsilon = rpow(&gamma, delta) * &tie_epsilon_prime / BigRational::from(big(8 * delta));

    debug_assert!(beta < one && !beta.is_zero());

    let mut approx = BTreeMap::new();
    if s_dir != Approx::Exact {
        approx.insert("s", Approx::Upper);
        approx.insert("beta", Approx::Lower);
        // ε, β < 1, so a larger s shrinks the coefficient
        approx.insert("m0_coefficient", Approx::Lower);
    }
    if log_dir != Approx::Exact {
        approx.insert("n_min", Approx::Upper);
        approx.insert("q", Approx::Upper);
    }
    // m0 = coefficient × n_min
    match (s_dir, log_dir) {
        (Approx::Exact, Approx::Exact) => {}
        (_, Approx::Exact) => {
            approx.insert("m0", Approx::Lower);
        }
        (Approx::Exact, _) => {
            approx.insert("m0", Approx::Upper);
        }
        _ => {
            approx.insert("m0", Approx::Mixed);
        }
    }
    Ok(ParamLedger {
        delta,
        k,
        gamma,
        epsilon,
        s,
        beta,
        m,
        m0_coefficient,
        n_min,
        m0,
        ramsey_ub,
        q,
        tie_epsilon_prime,
        tie_epsilon,
        approx,
    })
}

impl ParamLedger {
    pub fn direction(&self, field: &str) -> Approx {
        self.approx.get(field).copied().unwrap_or(Approx::Exact)
    }

    /// Field name → decimal string (`p` or `p/q`), in a fixed order.
    pub fn decimal_fields(&self) -> Vec<(&'static str, String)> {
        fn r(x: &BigRational) -> String {
            if x.is_integer() {
                x.numer().to_string()
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        }
        vec![
            ("delta", self.delta.to_string()),
            ("k", self.k.to_string()),
            ("gamma", r(&self.gamma)),
            ("epsilon", r(&self.epsilon)),
            ("s", r(&self.s)),
            ("beta", r(&self.beta)),
            ("m", self.m.to_string()),
            ("m0_coefficient", r(&self.m0_coefficient)),
            ("n_min", self.n_min.to_string()),
            ("m0", r(&self.m0)),
            ("ramsey_ub", self.ramsey_ub.to_string()),
            ("q", self.q.to_string()),
            ("tie_epsilon_prime", r(&self.tie_epsilon_prime)),
            ("tie_epsilon", r(&self.tie_epsilon)),
        ]
    }
}

impl Serialize for ParamLedger {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let fields = self.decimal_fields();
        let mut map = s.serialize_map(Some(fields.len() + 1))?;
        for (name, value) in &fields {
            map.serialize_entry(name, value)?;
        }
        map.serialize_entry("approx", &self.approx)?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Schoolbook base-10^9 arithmetic, independent of num-bigint.
    fn limbs_mul_small(a: &mut Vec<u64>, f: u64) {
        let mut carry = 0u128;
        for limb in a.iter_mut() {
            let cur = *limb as u128 * f as u128 + carry;
            *limb = (cur % 1_000_000_000) as u64;
            carry = cur / 1_000_000_000;
        }
        while carry > 0 {
            a.push((carry % 1_000_000_000) as u64);
            carry /= 1_000_000_000;
        }
    }

    fn limbs_to_string(a: &[u64]) -> String {
        let mut s = a.last().unwrap().to_string();
        for limb in a.iter().rev().skip(1) {
            s.push_str(&format!("{limb:09}"));
        }
        s
    }

    fn ramsey_ub_oracle(delta: u64, k: u64) -> String {
        let mut acc = vec![1u64];
        for _ in 0..84 * delta + 2 {
            limbs_mul_small(&mut acc, 2);
        }
        for _ in 0..32 * delta {
            limbs_mul_small(&mut acc, delta);
        }
        limbs_mul_small(&mut acc, k);
        limbs_to_string(&acc)
    }

    #[test]
    fn gamma_and_ramsey_bound() {
        let l = param_ledger(2, 10).unwrap();
        assert_eq!(l.gamma, ratio(1.into(), 64.into()));
        assert_eq!(l.ramsey_ub, pow2(234) * big(10));
        assert_eq!(l.ramsey_ub.to_string(), ramsey_ub_oracle(2, 10));
        for (d, k) in [(1, 1), (3, 7), (5, 40), (12, 3)] {
            let l = param_ledger(d, k).unwrap();
            assert_eq!(l.ramsey_ub.to_string(), ramsey_ub_oracle(d, k));
        }
    }

    #[test]
    fn logarithms() {
        let l = param_ledger(1, 2).unwrap();
        assert_eq!(l.s, BigRational::from(big(5)));
        assert_eq!(l.direction("s"), Approx::Exact);
        assert_eq!(l.q, big(2));
        let l3 = param_ledger(3, 2).unwrap();
        // log(96) < 7
        assert_eq!(l3.s, BigRational::from(big(7)));
        assert_eq!(l3.direction("s"), Approx::Upper);
        assert_eq!(l3.direction("beta"), Approx::Lower);
        assert_eq!(l3.direction("q"), Approx::Upper);
        let l4 = param_ledger(4, 1).unwrap();
        assert_eq!(l4.q, pow2(256 * 4 * 4));
        assert_eq!(l4.direction("m0"), Approx::Exact);
    }

    #[test]
    fn formulas_exact() {
        let l = param_ledger(2, 10).unwrap();
        let gamma = ratio(1.into(), 64.into());
        assert_eq!(l.epsilon, rpow(&gamma, 4) / BigRational::from(big(2048 * 16)));
        assert_eq!(l.beta, ratio(1.into(), 48.into()));
        assert_eq!(l.m, pow2(192) * big(2).pow(72u32) * big(10));
        assert_eq!(l.n_min, pow2(1024) * big(10));
        assert_eq!(l.tie_epsilon_prime, rpow(&(gamma.clone() / BigRational::from(big(4))), 2) / BigRational::from(big(16)));
    }

    #[test]
    fn serialisation_is_reproducible() {
        let a = serde_json::to_string(&param_ledger(3, 11).unwrap()).unwrap();
        let b = serde_json::to_string(&param_ledger(3, 11).unwrap()).unwrap();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["gamma"], "1/96");
        assert!(param_ledger(0, 3).is_err());
    }
}
