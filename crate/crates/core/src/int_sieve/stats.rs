use twofloat::TwoFloat;

/// 1/ζ(2) = 6/π² as a double-double.
pub fn inv_zeta2() -> TwoFloat {
    TwoFloat::try_from((0.6079271018540267, -2.379773927663665e-17))
        .expect("non-overlapping double-double parts")
}

/// ζ(2) = π²/6 in double precision.
pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// Running count, sum and sum of squares in double-double.
#[derive(Debug, Clone, Copy)]
pub struct StatAccumulator {
    count: u64,
    sum: TwoFloat,
    sum_sq: TwoFloat,
}

impl Default for StatAccumulator {
    fn default() -> Self {
        StatAccumulator {
            count: 0,
            sum: TwoFloat::from(0.0),
            sum_sq: TwoFloat::from(0.0),
        }
    }
}

impl StatAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, value: TwoFloat) {
        self.count += 1;
        self.sum += value;
        self.sum_sq += value * value;
    }

    /// Combines two disjoint accumulations.
    pub fn merge(&mut self, other: &StatAccumulator) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn sum(&self) -> TwoFloat {
        self.sum
    }

    pub fn sum_sq(&self) -> TwoFloat {
        self.sum_sq
    }

    /// Mean of the pushed values; 0 when empty.
    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        f64::from(self.sum / TwoFloat::from(self.count))
    }

    /// Mean of the squared values; 0 when empty.
    pub fn mean_sq(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        f64::from(self.sum_sq / TwoFloat::from(self.count))
    }
}
