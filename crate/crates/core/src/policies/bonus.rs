use super::PolicyError;

/// Recency exploration bonus `g(x) = sqrt(c * ln x)` for `x >= 1`.
///
/// `c = 2` suits arbitrary rewards bounded in `[0, 1]`; `c = 1/2` is the
/// sharper choice when rewards are known to be Bernoulli.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BonusFn {
    c: f64,
}

impl BonusFn {
    pub const GENERAL: BonusFn = BonusFn { c: 2.0 };
    pub const BERNOULLI: BonusFn = BonusFn { c: 0.5 };

    pub fn new(c: f64) -> Result<Self, PolicyError> {
        if !(c.is_finite() && c > 0.0) {
            return Err(PolicyError::InvalidParam(format!(
                "bonus coefficient must be positive, got {c}"
            )));
        }
        Ok(Self { c })
    }

    pub fn coefficient(&self) -> f64 {
        self.c
    }

    /// `g(x)`. Callers pass `x = n / tau >= 1`; the logarithm is clamped at
    /// zero so `n == tau` gives exactly 0 despite rounding.
    pub fn value(&self, x: f64) -> f64 {
        debug_assert!(x >= 1.0 - 1e-12, "bonus argument {x} below 1");
        (self.c * x.ln().max(0.0)).sqrt()
    }

    /// Bonus of a band last sensed at slot `last` when the clock reads `now`.
    #[inline]
    pub fn recency(&self, now: u64, last: u64) -> f64 {
        self.value(now as f64 / last as f64)
    }

    /// `g^{-1}(delta) = exp(delta^2 / c)`.
    pub fn inverse(&self, delta: f64) -> Result<f64, PolicyError> {
        if delta.is_nan() || delta < 0.0 {
            return Err(PolicyError::InvalidParam(format!(
                "bonus inverse needs a nonnegative gap, got {delta}"
            )));
        }
        Ok((delta * delta / self.c).exp())
    }

    /// Asymptotic growth rate of a suboptimal band's sensing count per unit
    /// of `ln n` when its gap is `delta`: `1 / ln g^{-1}(delta)`.
    pub fn log_rate(&self, delta: f64) -> Result<f64, PolicyError> {
        Ok(1.0 / self.inverse(delta)?.ln())
    }
}
