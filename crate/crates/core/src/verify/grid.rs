use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    Linear,
    Log,
}

/// An interval of the real line; open endpoints are excluded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub const fn open(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_open: true, hi_open: true }
    }

    pub const fn closed(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: false }
    }

    pub const fn positive() -> Self {
        Interval::open(0.0, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }
}

/// Sample positions along one variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub sampling: Sampling,
}

impl Axis {
    pub fn log(lo: f64, hi: f64, count: usize) -> Self {
        Axis { lo, hi, count, sampling: Sampling::Log }
    }

    pub fn linear(lo: f64, hi: f64, count: usize) -> Self {
        Axis { lo, hi, count, sampling: Sampling::Linear }
    }

    /// Points in increasing order, endpoints reproduced exactly.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.lo;
                }
                if i == n - 1 {
                    return self.hi;
                }
                let t = i as f64 / (n - 1) as f64;
                self.at(t)
            })
            .collect()
    }

    fn at(&self, t: f64) -> f64 {
        match self.sampling {
            Sampling::Linear => self.lo + t * (self.hi - self.lo),
            Sampling::Log => (self.lo.ln() + t * (self.hi.ln() - self.lo.ln())).exp(),
        }
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> f64 {
        let t: f64 = rng.gen();
        self.at(t).clamp(self.lo, self.hi)
    }

    fn validate(&self, domain: &Interval) -> Result<()> {
        if self.count < 2 {
            return Err(Error::InvalidGrid(format!("axis needs at least 2 points, got {}", self.count)));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(Error::InvalidGrid(format!("axis bounds [{}, {}] are not an interval", self.lo, self.hi)));
        }
        if self.sampling == Sampling::Log && self.lo <= 0.0 {
            return Err(Error::InvalidGrid("log sampling needs a positive lower bound".into()));
        }
        if !domain.contains(self.lo) || !domain.contains(self.hi) {
            return Err(Error::InvalidGrid(format!(
                "axis [{}, {}] leaves the case domain {}{}, {}{}",
                self.lo,
                self.hi,
                if domain.lo_open { "(" } else { "[" },
                domain.lo,
                domain.hi,
                if domain.hi_open { ")" } else { "]" },
            )));
        }
        Ok(())
    }
}

/// Sampling plan for one case: a tensor grid plus optional random points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub axes: Vec<Axis>,
    /// Extra uniformly drawn points (in each axis' sampling scale).
    pub random_points: usize,
    pub rng_seed: u64,
}

impl GridSpec {
    pub fn new(axes: Vec<Axis>) -> Self {
        GridSpec { axes, random_points: 0, rng_seed: 0 }
    }

    pub(crate) fn validate(&self, domain: &[Interval]) -> Result<()> {
        if self.axes.len() != domain.len() {
            return Err(Error::InvalidGrid(format!(
                "case has {} variables but the grid has {} axes",
                domain.len(),
                self.axes.len()
            )));
        }
        self.axes.iter().zip(domain).try_for_each(|(a, d)| a.validate(d))
    }

    /// Tensor-product points (first axis varies slowest), then random points.
    pub(crate) fn points(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in &self.axes {
            let xs = axis.points();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    xs.iter().map(move |&x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        for _ in 0..self.random_points {
            out.push(self.axes.iter().map(|a| a.random(rng)).collect());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn log_axis_endpoints_exact() {
        let pts = Axis::log(1e-3, 30.0, 512).points();
        assert_eq!(pts.len(), 512);
        assert_eq!(pts[0], 1e-3);
        assert_eq!(pts[511], 30.0);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tensor_order_and_random_tail() {
        let mut g = GridSpec::new(vec![Axis::linear(0.0, 1.0, 2), Axis::linear(5.0, 6.0, 3)]);
        g.random_points = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts = g.points(&mut rng);
        assert_eq!(pts.len(), 10);
        assert_eq!(pts[0], vec![0.0, 5.0]);
        assert_eq!(pts[1], vec![0.0, 5.5]);
        assert_eq!(pts[3], vec![1.0, 5.0]);
        assert!(pts[6..].iter().all(|p| (0.0..=1.0).contains(&p[0]) && (5.0..=6.0).contains(&p[1])));
    }

    #[test]
    fn validation() {
        let d = [Interval::open(0.0, 1.0)];
        assert!(GridSpec::new(vec![Axis::linear(0.1, 0.9, 2)]).validate(&d).is_ok());
        assert!(GridSpec::new(vec![Axis::linear(0.0, 0.9, 2)]).validate(&d).is_err());
        assert!(GridSpec::new(vec![Axis::linear(0.1, 0.9, 1)]).validate(&d).is_err());
        assert!(GridSpec::new(vec![Axis::linear(0.9, 0.1, 2)]).validate(&d).is_err());
        assert!(GridSpec::new(vec![Axis::log(0.1, 0.9, 2), Axis::log(0.1, 0.9, 2)]).validate(&d).is_err());
        let closed = [Interval::closed(0.0, 1.0)];
        assert!(GridSpec::new(vec![Axis::linear(0.0, 1.0, 9)]).validate(&closed).is_ok());
        assert!(GridSpec::new(vec![Axis::log(0.0, 1.0, 9)]).validate(&closed).is_err());
    }
}
