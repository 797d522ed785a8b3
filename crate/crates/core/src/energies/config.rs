use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Stripe direction: `Horizontal` stripes are constant along the first coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Periodic stripe state of width `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StripeSpec {
    pub h: u64,
    pub orientation: Orientation,
}

impl StripeSpec {
    pub fn new(h: u64, orientation: Orientation) -> Result<Self> {
        if h == 0 {
            return domain("stripe width must be >= 1");
        }
        Ok(StripeSpec { h, orientation })
    }
}

/// A ±1 field on the torus `Z^2 / L Z^2`, stored row-major as `spins[x2 * L + x1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinConfiguration {
    side: usize,
    spins: Vec<i8>,
}

/// `(-1)^{floor(x / h)}`
fn block_sign(x: usize, h: u64) -> i8 {
    if (x as u64 / h).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl SpinConfiguration {
    pub fn new(side: usize, spins: Vec<i8>) -> Result<Self> {
        if side == 0 {
            return domain("torus side must be >= 1");
        }
        if spins.len() != side * side {
            return domain(format!("expected {} spins, got {}", side * side, spins.len()));
        }
        if spins.iter().any(|&s| s != 1 && s != -1) {
            return domain("spins must be +1 or -1");
        }
        Ok(SpinConfiguration { side, spins })
    }

    pub fn from_fn(side: usize, f: impl Fn(usize, usize) -> i8) -> Result<Self> {
        let spins = (0..side * side).map(|i| f(i % side, i / side)).collect();
        SpinConfiguration::new(side, spins)
    }

    pub fn uniform(side: usize, sign: i8) -> Result<Self> {
        SpinConfiguration::from_fn(side, |_, _| sign)
    }

    /// Stripe state of width `spec.h`; the side must be a multiple of `2h`.
    pub fn stripe(side: usize, spec: StripeSpec) -> Result<Self> {
        if !(side as u64).is_multiple_of(2 * spec.h) {
            return Err(Error::Divisibility(format!(
                "torus side {side} is not a multiple of 2h = {}",
                2 * spec.h
            )));
        }
        match spec.orientation {
            Orientation::Horizontal => SpinConfiguration::from_fn(side, |_, x2| block_sign(x2, spec.h)),
            Orientation::Vertical => SpinConfiguration::from_fn(side, |x1, _| block_sign(x1, spec.h)),
        }
    }

    /// Checkerboard of `h1 x h2` tiles; the side must be a multiple of `2h1` and `2h2`.
    pub fn checkerboard(side: usize, h1: u64, h2: u64) -> Result<Self> {
        if h1 == 0 || h2 == 0 {
            return domain("tile sides must be >= 1");
        }
        if !(side as u64).is_multiple_of(2 * h1) || !(side as u64).is_multiple_of(2 * h2) {
            return Err(Error::Divisibility(format!(
                "torus side {side} is not a multiple of 2h1 = {} and 2h2 = {}",
                2 * h1,
                2 * h2
            )));
        }
        SpinConfiguration::from_fn(side, |x1, x2| block_sign(x1, h1) * block_sign(x2, h2))
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    /// Spin at `(x1, x2)`, with periodic wraparound.
    pub fn get(&self, x1: i64, x2: i64) -> i8 {
        let l = self.side as i64;
        self.spins[(x2.rem_euclid(l) * l + x1.rem_euclid(l)) as usize]
    }

    pub fn flipped(&self) -> Self {
        SpinConfiguration {
            side: self.side,
            spins: self.spins.iter().map(|s| -s).collect(),
        }
    }

    /// The same periodic field viewed on the torus of side `n L`.
    pub fn replicate(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return domain("replication factor must be >= 1");
        }
        let l = self.side;
        SpinConfiguration::from_fn(n * l, |x1, x2| self.spins[(x2 % l) * l + x1 % l])
    }

    pub fn is_uniform(&self) -> bool {
        self.spins.iter().all(|&s| s == self.spins[0])
    }

    /// `C(d) = sum_x s_x s_{x+d}` for every displacement, row-major in `d`.
    pub fn autocorrelation(&self) -> Vec<i64> {
        let l = self.side;
        let mut out = vec![0i64; l * l];
        for d2 in 0..l {
            for d1 in 0..l {
                let mut c = 0i64;
                for x2 in 0..l {
                    let row = &self.spins[x2 * l..(x2 + 1) * l];
                    let shifted = &self.spins[((x2 + d2) % l) * l..((x2 + d2) % l + 1) * l];
                    for x1 in 0..l {
                        c += (row[x1] * shifted[(x1 + d1) % l]) as i64;
                    }
                }
                out[d2 * l + d1] = c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SpinConfiguration::new(2, vec![1, -1, 1]).is_err());
        assert!(SpinConfiguration::new(2, vec![1, -1, 1, 0]).is_err());
        assert!(SpinConfiguration::new(2, vec![1, -1, 1, 1]).is_ok());
        assert!(matches!(
            SpinConfiguration::checkerboard(6, 2, 2),
            Err(Error::Divisibility(_))
        ));
    }

    #[test]
    fn checkerboard_pattern() {
        let c = SpinConfiguration::checkerboard(4, 1, 2).unwrap();
        assert_eq!(c.get(0, 0), 1);
        assert_eq!(c.get(1, 0), -1);
        assert_eq!(c.get(0, 2), -1);
        assert_eq!(c.get(1, 3), 1);
        assert_eq!(c.get(-1, -1), c.get(3, 3));
    }

    #[test]
    fn autocorrelation_of_stripe() {
        let s = SpinConfiguration::stripe(4, StripeSpec::new(1, Orientation::Horizontal).unwrap()).unwrap();
        let c = s.autocorrelation();
        assert_eq!(c[0], 16);
        assert_eq!(c[1], 16); // d = (1, 0)
        assert_eq!(c[4], -16); // d = (0, 1)
    }
}
