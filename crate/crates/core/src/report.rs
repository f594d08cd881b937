//! Pass/fail reports shared by the verifiers.

use serde::Serialize;

/// Witnesses kept per report; further failures are only counted.
pub const MAX_WITNESSES: usize = 16;

/// A point `(i, i', u)` (1-based labels) where a check failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub i_prime: usize,
    pub u: i64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub pair: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, pair: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            pair: pair.into(),
            passed: true,
            checked: 0,
            failures: 0,
            max_error: None,
            witnesses: Vec::new(),
        }
    }

    /// Count one check; on failure keep the witness if there is room.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn observe_error(&mut self, e: f64) {
        let cur = self.max_error.unwrap_or(0.0);
        // NaN must register as a failure-sized error
        self.max_error = Some(if e.is_nan() { f64::INFINITY } else { cur.max(e) });
    }

    /// Fold another report of the same check into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.passed &= other.passed;
        self.checked += other.checked;
        self.failures += other.failures;
        if let Some(e) = other.max_error {
            self.observe_error(e);
        }
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }

    pub fn fail(&mut self, witness: Witness) {
        self.record(false, || witness);
    }
}

pub fn witness(i: usize, i_prime: usize, u: i64, detail: impl Into<String>) -> Witness {
    Witness {
        i,
        i_prime,
        u,
        detail: detail.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_and_absorb() {
        let mut r = CheckReport::new("c", "A1xA1");
        r.record(true, || unreachable!());
        assert!(r.passed);
        let mut s = CheckReport::new("c", "A1xA1");
        for _ in 0..20 {
            s.record(false, || witness(1, 1, 0, "x"));
        }
        s.observe_error(f64::NAN);
        r.absorb(s);
        assert!(!r.passed);
        assert_eq!(r.checked, 21);
        assert_eq!(r.failures, 20);
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        assert_eq!(r.max_error, Some(f64::INFINITY));
    }
}
