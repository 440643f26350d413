/// The exponential price base `B_k = k ln k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PriceBase {
    k: usize,
    base: f64,
    ln_base: f64,
}

impl PriceBase {
    pub fn new(k: usize) -> Self {
        let kf = k as f64;
        let base = kf * kf.ln();
        PriceBase { k, base, ln_base: base.ln() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    /// `ln B_k = ln k + ln ln k`.
    pub fn ln_base(&self) -> f64 {
        self.ln_base
    }

    /// `B^{x - 1}`, evaluated as `exp((x - 1) ln B)`.
    pub fn pow(&self, x: f64) -> f64 {
        ((x - 1.0) * self.ln_base).exp()
    }

    /// `B^s - 1` without cancellation for small `s`.
    pub fn growth(&self, s: f64) -> f64 {
        (s * self.ln_base).exp_m1()
    }

    /// `∫_lo^hi B^{t-1} dt`.
    pub fn revenue_between(&self, lo: f64, hi: f64) -> f64 {
        self.pow(lo) * self.growth(hi - lo) / self.ln_base
    }
}
