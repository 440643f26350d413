use super::price::PriceBase;

/// Non-increasing step function `f(t) = Σ_{e ∋ i, w_e ≥ t} y_e` of one resource.
///
/// Stored as segments `(t_lo, t_hi]` with a constant level, ordered by
/// threshold. Past the last breakpoint the level is zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StepFill {
    /// `(t_hi, level)`: the level holds on `(previous t_hi, t_hi]`.
    pub breakpoints: Vec<(f64, f64)>,
}

impl StepFill {
    /// Builds from `(weight, y)` pairs in any order.
    pub fn from_support(mut items: Vec<(f64, f64)>) -> Self {
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut breakpoints: Vec<(f64, f64)> = Vec::new();
        // suffix sums from the heaviest edge downward
        let mut level = 0.0;
        for &(w, y) in items.iter().rev() {
            level += y;
            match breakpoints.last_mut() {
                Some(last) if last.0 == w => last.1 = level,
                _ => breakpoints.push((w, level)),
            }
        }
        breakpoints.reverse();
        StepFill { breakpoints }
    }

    /// `f(0)`, the total fill.
    pub fn total(&self) -> f64 {
        self.breakpoints.first().map_or(0.0, |b| b.1)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.breakpoints
            .iter()
            .find(|(hi, _)| t <= *hi)
            .map_or(0.0, |b| b.1)
    }

    /// Constant pieces `(lo, hi, level)` covering `[0, upto]`.
    pub fn segments(&self, upto: f64) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::new();
        let mut lo = 0.0;
        for &(hi, level) in &self.breakpoints {
            if lo >= upto {
                return out;
            }
            let top = hi.min(upto);
            if top > lo {
                out.push((lo, top, level));
            }
            lo = hi;
        }
        if upto > lo {
            out.push((lo, upto, 0.0));
        }
        out
    }

    /// `∫_lo^hi B^{f(t) - 1} dt`, summed exactly over the pieces.
    pub fn integral_exp(&self, lo: f64, hi: f64, base: PriceBase) -> f64 {
        self.segments(hi)
            .into_iter()
            .filter(|s| s.1 > lo)
            .map(|(a, b, level)| (b - a.max(lo)) * base.pow(level))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels_are_suffix_sums() {
        let f = StepFill::from_support(vec![(2.0, 0.25), (1.0, 0.5), (2.0, 0.1)]);
        assert_eq!(f.breakpoints.len(), 2);
        assert!((f.eval(0.0) - 0.85).abs() < 1e-15);
        assert!((f.eval(1.0) - 0.85).abs() < 1e-15);
        assert!((f.eval(1.5) - 0.35).abs() < 1e-15);
        assert!((f.eval(2.0) - 0.35).abs() < 1e-15);
        assert_eq!(f.eval(2.5), 0.0);
        assert!((f.total() - 0.85).abs() < 1e-15);
    }

    #[test]
    fn two_segment_integral() {
        let base = PriceBase::new(2);
        let f = StepFill::from_support(vec![(2.0, 0.25)]);
        let got = f.integral_exp(0.0, 3.0, base);
        let b = 2.0 * 2f64.ln();
        let want = 2.0 * b.powf(0.25 - 1.0) + 1.0 / b;
        assert!((got - want).abs() < 1e-14, "{got} vs {want}");
    }

    #[test]
    fn empty_fill_integrates_to_inverse_base() {
        let base = PriceBase::new(5);
        let f = StepFill::default();
        assert!((f.integral_exp(0.0, 1.0, base) - 1.0 / base.base()).abs() < 1e-15);
        assert!(f.segments(0.0).is_empty());
    }

    #[test]
    fn partial_interval() {
        let base = PriceBase::new(3);
        let f = StepFill::from_support(vec![(1.0, 0.5), (4.0, 0.2)]);
        let whole = f.integral_exp(0.0, 4.0, base);
        let split = f.integral_exp(0.0, 2.5, base) + f.integral_exp(2.5, 4.0, base);
        assert!((whole - split).abs() < 1e-14);
    }
}
