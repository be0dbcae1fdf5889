//! Delays: increasing surjections `Z -> Z`, the identity far left and a shift far right.

use serde::{Deserialize, Serialize};

/// `mult[k]` is the size of the preimage of `lo + k`; outside the window every point has a
/// single preimage. Canonical form has no leading or trailing `1`, so the identity is `mult = []`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Delay {
    lo: i64,
    mult: Vec<usize>,
}

impl Delay {
    pub fn identity() -> Self {
        Delay { lo: 0, mult: vec![] }
    }

    /// The elementary delay holding the value `i` for one extra step.
    pub fn elementary(i: i64) -> Self {
        Delay { lo: i, mult: vec![2] }
    }

    /// Zero multiplicities are rejected since a delay is surjective.
    pub fn new(lo: i64, mult: Vec<usize>) -> Option<Self> {
        if mult.contains(&0) {
            return None;
        }
        Some(Delay { lo, mult }.canonical())
    }

    fn canonical(mut self) -> Self {
        while self.mult.last() == Some(&1) {
            self.mult.pop();
        }
        let lead = self.mult.iter().take_while(|&&m| m == 1).count();
        self.mult.drain(..lead);
        self.lo = if self.mult.is_empty() { 0 } else { self.lo + lead as i64 };
        self
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    pub fn is_identity(&self) -> bool {
        self.mult.is_empty()
    }

    /// Number of points absorbed: `d(t) = t - excess` far right.
    pub fn excess(&self) -> i64 {
        self.mult.iter().map(|&m| m as i64 - 1).sum()
    }

    /// First domain point after the window.
    fn domain_end(&self) -> i64 {
        self.lo + self.mult.iter().sum::<usize>() as i64
    }

    pub fn mult_at(&self, target: i64) -> usize {
        let k = target - self.lo;
        if k < 0 || k >= self.mult.len() as i64 {
            1
        } else {
            self.mult[k as usize]
        }
    }

    pub fn eval(&self, t: i64) -> i64 {
        if t < self.lo {
            return t;
        }
        if t >= self.domain_end() {
            return t - self.excess();
        }
        let mut start = self.lo;
        for (k, &m) in self.mult.iter().enumerate() {
            if t < start + m as i64 {
                return self.lo + k as i64;
            }
            start += m as i64;
        }
        unreachable!("t lies in the window")
    }

    /// First and last domain points mapped to `target`.
    pub fn preimage(&self, target: i64) -> (i64, i64) {
        if target < self.lo {
            return (target, target);
        }
        let k = target - self.lo;
        if k >= self.mult.len() as i64 {
            let t = target + self.excess();
            return (t, t);
        }
        let start = self.lo + self.mult[..k as usize].iter().sum::<usize>() as i64;
        (start, start + self.mult[k as usize] as i64 - 1)
    }

    /// `self . then`, i.e. `t -> self(then(t))`, matching the notation `ad` for delayed paths.
    pub fn compose(&self, then: &Delay) -> Delay {
        if self.is_identity() {
            return then.clone();
        }
        if then.is_identity() {
            return self.clone();
        }
        let lo = self.lo.min(then.lo);
        let hi = (self.domain_end() + then.excess()).max(then.domain_end());
        let mut mult = Vec::new();
        let mut t = lo;
        while t <= hi {
            let v = self.eval(then.eval(t));
            let mut m = 0;
            while self.eval(then.eval(t)) == v {
                m += 1;
                t += 1;
            }
            mult.push(m);
        }
        Delay { lo, mult }.canonical()
    }

    /// `(e1, e2)` with `d1 . e1 == d2 . e2`: both sides become the delay whose multiplicity at
    /// each point is the larger of the two.
    pub fn cofilter_witness(d1: &Delay, d2: &Delay) -> (Delay, Delay) {
        let lo = match (d1.is_identity(), d2.is_identity()) {
            (true, true) => return (Delay::identity(), Delay::identity()),
            (true, false) => d2.lo,
            (false, true) => d1.lo,
            (false, false) => d1.lo.min(d2.lo),
        };
        let hi = (d1.lo + d1.mult.len() as i64).max(d2.lo + d2.mult.len() as i64);
        let split = |d: &Delay| {
            let mut mult = Vec::new();
            for k in lo..hi {
                let (m, big) = (d.mult_at(k), d1.mult_at(k).max(d2.mult_at(k)));
                mult.extend(std::iter::repeat_n(1, m - 1));
                mult.push(big - m + 1);
            }
            Delay { lo, mult }.canonical()
        };
        (split(d1), split(d2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_values() {
        let d = Delay::elementary(2);
        let got: Vec<i64> = (-1..6).map(|t| d.eval(t)).collect();
        assert_eq!(got, vec![-1, 0, 1, 2, 2, 3, 4]);
        assert_eq!(d.preimage(2), (2, 3));
        assert_eq!(d.preimage(4), (5, 5));
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Delay::new(3, vec![1, 1, 2, 1]), Some(Delay::elementary(5)));
        assert!(Delay::new(0, vec![1, 1]).unwrap().is_identity());
        assert_eq!(Delay::new(0, vec![0]), None);
    }

    #[test]
    fn composite_of_two_elementaries() {
        // holding 1 then 4 in the output
        let d = Delay::elementary(1).compose(&Delay::elementary(5));
        for t in -3..12 {
            assert_eq!(d.eval(t), Delay::elementary(1).eval(Delay::elementary(5).eval(t)));
        }
        assert_eq!(d.multiplicities(), &[2, 1, 1, 2]);
    }

    #[test]
    fn witness_for_equal_delays_is_trivial() {
        let d = Delay::elementary(4);
        let (a, b) = Delay::cofilter_witness(&d, &d);
        assert!(a.is_identity() && b.is_identity());
    }
}
