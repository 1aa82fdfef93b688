use crate::error::{Error, Result};

/// An n-dimensional real vector, the argument of every norm.
///
/// Coordinates are finite (no NaN or infinity) and n >= 1; both are
/// enforced at construction so downstream code never re-checks.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorN {
    coords: Vec<f64>,
}

impl VectorN {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("vector must have dimension >= 1".into()));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("non-finite coordinate {bad}")));
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }
}

impl TryFrom<Vec<f64>> for VectorN {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl AsRef<[f64]> for VectorN {
    fn as_ref(&self) -> &[f64] {
        &self.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(VectorN::new(vec![]).is_err());
        assert!(VectorN::new(vec![1.0, f64::NAN]).is_err());
        assert!(VectorN::new(vec![f64::INFINITY]).is_err());
        assert!(VectorN::new(vec![0.0]).is_ok());
    }

    #[test]
    fn zero_detection() {
        assert!(VectorN::new(vec![0.0, -0.0]).unwrap().is_zero());
        assert!(!VectorN::new(vec![0.0, 1e-300]).unwrap().is_zero());
    }
}
