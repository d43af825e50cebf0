use std::ops::{AddAssign, SubAssign};

/// Magnitude beyond which an integer cell is reported as saturated.
pub const INT_SATURATION: i64 = 1 << 62;
/// Above this magnitude a float cell no longer resolves unit increments.
pub const FLOAT_SATURATION: f64 = 9_007_199_254_740_992.0;

/// Storage type of state cells.
pub(crate) trait Element: Copy + Default + PartialEq + Send + Sync + 'static {
    /// Accumulator wide enough to sum many cells without overflow.
    type Acc: Copy + Default + PartialEq + AddAssign + SubAssign + Send + Sync;

    fn widen(self) -> Self::Acc;
    fn acc_to_f64(acc: Self::Acc) -> f64;
    /// Narrows an accumulated projection; the flag reports clamping.
    fn narrow(acc: Self::Acc) -> (Self, bool);
    fn is_zero(self) -> bool;
    /// Adds `sign * delta` to `cell`; returns true when the result is past
    /// the saturation threshold.
    fn add_signed(cell: &mut Self, delta: Self, positive: bool) -> bool;
    fn saturated(self) -> bool;
}

impl Element for i64 {
    type Acc = i128;

    #[inline]
    fn widen(self) -> i128 {
        self as i128
    }

    fn acc_to_f64(acc: i128) -> f64 {
        acc as f64
    }

    fn narrow(acc: i128) -> (i64, bool) {
        let clamped = acc.clamp(i64::MIN as i128, i64::MAX as i128) as i64;
        (clamped, clamped as i128 != acc)
    }

    #[inline]
    fn is_zero(self) -> bool {
        self == 0
    }

    #[inline]
    fn add_signed(cell: &mut i64, delta: i64, positive: bool) -> bool {
        *cell = if positive {
            cell.saturating_add(delta)
        } else {
            cell.saturating_sub(delta)
        };
        cell.saturated()
    }

    #[inline]
    fn saturated(self) -> bool {
        self.unsigned_abs() > INT_SATURATION as u64
    }
}

impl Element for f64 {
    type Acc = f64;

    #[inline]
    fn widen(self) -> f64 {
        self
    }

    fn acc_to_f64(acc: f64) -> f64 {
        acc
    }

    fn narrow(acc: f64) -> (f64, bool) {
        (acc, false)
    }

    #[inline]
    fn is_zero(self) -> bool {
        self == 0.0
    }

    #[inline]
    fn add_signed(cell: &mut f64, delta: f64, positive: bool) -> bool {
        if positive {
            *cell += delta;
        } else {
            *cell -= delta;
        }
        cell.saturated()
    }

    #[inline]
    fn saturated(self) -> bool {
        !self.is_finite() || self.abs() > FLOAT_SATURATION
    }
}
