//! Seeded random instances for tests, the `gen` command, and benchmarks.
//!
//! Characters are drawn uniformly from the first `alphabet` lowercase
//! letters. Pattern lengths are uniform in `[1, max_pattern_len]`. The RNG is
//! ChaCha8 seeded from a `u64`, so a seed reproduces the same bytes on every
//! platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub x: Vec<u8>,
    pub y: Vec<u8>,
    pub patterns: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub alphabet: usize,
    pub num_patterns: usize,
    pub max_pattern_len: usize,
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if self.alphabet == 0 || self.alphabet > MAX_ALPHABET {
            return Err(Error::InvalidParameter(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {}",
                self.alphabet
            )));
        }
        if self.num_patterns > 0 && self.max_pattern_len == 0 {
            return Err(Error::InvalidParameter(
                "max pattern length must be at least 1 when patterns are requested".into(),
            ));
        }
        Ok(())
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_string<R: Rng>(rng: &mut R, len: usize, alphabet: usize) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..alphabet) as u8).collect()
}

/// Draws one instance from `rng`.
pub fn random_instance<R: Rng>(rng: &mut R, params: &GenParams) -> Instance {
    let x = random_string(rng, params.n, params.alphabet);
    let y = random_string(rng, params.m, params.alphabet);
    let patterns = (0..params.num_patterns)
        .map(|_| {
            let len = rng.gen_range(1..=params.max_pattern_len);
            random_string(rng, len, params.alphabet)
        })
        .collect();
    Instance { x, y, patterns }
}

/// The instance written by `exclcs gen --seed SEED`.
pub fn generate(seed: u64, params: &GenParams) -> Result<Instance> {
    params.validate()?;
    Ok(random_instance(&mut rng(seed), params))
}

/// Benchmark instance: random `x` and `y`, plus random patterns of length
/// `pattern_len` (the last one shorter if needed) totalling exactly `r`
/// characters before normalization.
///
/// `x`, `y` and the patterns come from separate RNG streams, so changing one
/// size leaves the other components unchanged (and shorter outputs are
/// prefixes of longer ones).
pub fn bench_instance(
    seed: u64,
    n: usize,
    m: usize,
    r: usize,
    alphabet: usize,
    pattern_len: usize,
) -> Result<Instance> {
    GenParams { n, m, alphabet, num_patterns: 0, max_pattern_len: 0 }.validate()?;
    if pattern_len == 0 {
        return Err(Error::InvalidParameter("pattern length must be at least 1".into()));
    }
    let stream = |id| {
        let mut rng = rng(seed);
        rng.set_stream(id);
        rng
    };
    let x = random_string(&mut stream(0), n, alphabet);
    let y = random_string(&mut stream(1), m, alphabet);
    let mut rng = stream(2);
    let mut patterns = Vec::new();
    let mut left = r;
    while left > 0 {
        let len = left.min(pattern_len);
        patterns.push(random_string(&mut rng, len, alphabet));
        left -= len;
    }
    Ok(Instance { x, y, patterns })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let p = GenParams { n: 30, m: 20, alphabet: 4, num_patterns: 3, max_pattern_len: 4 };
        assert_eq!(generate(7, &p).unwrap(), generate(7, &p).unwrap());
        assert_ne!(generate(7, &p).unwrap(), generate(8, &p).unwrap());
    }

    #[test]
    fn lengths_and_alphabet() {
        let p = GenParams { n: 50, m: 0, alphabet: 2, num_patterns: 10, max_pattern_len: 3 };
        let inst = generate(1, &p).unwrap();
        assert_eq!((inst.x.len(), inst.y.len(), inst.patterns.len()), (50, 0, 10));
        assert!(inst.x.iter().all(|&c| c == b'a' || c == b'b'));
        assert!(inst.patterns.iter().all(|p| (1..=3).contains(&p.len())));
    }

    #[test]
    fn invalid_params() {
        let p = GenParams { n: 1, m: 1, alphabet: 0, num_patterns: 0, max_pattern_len: 0 };
        assert!(generate(0, &p).is_err());
        let p = GenParams { alphabet: 27, ..p };
        assert!(generate(0, &p).is_err());
        let p = GenParams { alphabet: 2, num_patterns: 1, ..p };
        assert!(generate(0, &p).is_err());
    }

    #[test]
    fn bench_total_length() {
        let inst = bench_instance(3, 10, 10, 19, 4, 8).unwrap();
        let lens: Vec<usize> = inst.patterns.iter().map(Vec::len).collect();
        assert_eq!(lens, [8, 8, 3]);
        assert!(bench_instance(3, 10, 10, 0, 4, 8).unwrap().patterns.is_empty());

        let longer = bench_instance(3, 20, 10, 19, 4, 8).unwrap();
        assert_eq!(longer.x[..10], inst.x[..]);
        assert_eq!((longer.y, longer.patterns), (inst.y, inst.patterns));
    }
}
