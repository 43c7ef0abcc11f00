/// Whether size budgets are enforced. `Force` lifts upper limits for
/// exploratory runs; lower limits always hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Guard {
    #[default]
    Enforce,
    Force,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{op}: size {n} outside the supported range {min}..={max}")]
pub struct GuardError {
    pub op: &'static str,
    pub n: usize,
    pub min: usize,
    pub max: usize,
}

impl Guard {
    pub fn check(self, op: &'static str, n: usize, min: usize, max: usize) -> Result<(), GuardError> {
        let too_big = n > max && self == Guard::Enforce;
        if n < min || too_big {
            Err(GuardError { op, n, min, max })
        } else {
            Ok(())
        }
    }

    pub fn is_forced(self) -> bool {
        self == Guard::Force
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn force_lifts_only_the_upper_bound() {
        assert!(Guard::Enforce.check("det", 9, 1, 8).is_err());
        assert!(Guard::Force.check("det", 9, 1, 8).is_ok());
        assert!(Guard::Force.check("det", 0, 1, 8).is_err());
        let e = Guard::Enforce.check("det", 9, 1, 8).unwrap_err();
        assert_eq!(e.to_string(), "det: size 9 outside the supported range 1..=8");
    }
}
