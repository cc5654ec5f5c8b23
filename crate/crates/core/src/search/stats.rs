use serde::Serialize;

use crate::error::{Error, Result};

/// Descriptive statistics of a bit sequence. No pass/fail thresholds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceStats {
    pub length: usize,
    pub ones: usize,
    /// Fraction of ones.
    pub balance: f64,
    pub longest_run: usize,
    /// Least `p` with `bits[i] == bits[i + p]` wherever both exist.
    pub period: usize,
}

pub fn basic_stats(bits: &[u8]) -> Result<SequenceStats> {
    if bits.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ones = bits.iter().filter(|&&b| b == 1).count();
    let longest_run = bits
        .chunk_by(|x, y| x == y)
        .map(<[u8]>::len)
        .max()
        .unwrap_or(0);
    let period = (1..=bits.len())
        .find(|&p| bits.iter().zip(&bits[p..]).all(|(x, y)| x == y))
        .unwrap_or(bits.len());
    Ok(SequenceStats {
        length: bits.len(),
        ones,
        balance: ones as f64 / bits.len() as f64,
        longest_run,
        period,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating() {
        let s = basic_stats(&[1, 0, 1, 0]).unwrap();
        assert_eq!((s.balance, s.longest_run, s.period), (0.5, 1, 2));
    }

    #[test]
    fn constant() {
        let s = basic_stats(&[1; 8]).unwrap();
        assert_eq!((s.balance, s.longest_run, s.period), (1.0, 8, 1));
    }

    #[test]
    fn aperiodic_prefix() {
        let s = basic_stats(&[0, 0, 1, 1, 1, 0]).unwrap();
        assert_eq!((s.ones, s.longest_run, s.period), (3, 3, 5));
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(basic_stats(&[]), Err(Error::EmptyInput));
    }
}
