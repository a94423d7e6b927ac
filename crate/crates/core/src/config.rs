//! Configurations of the n-cube packed into a `u32`.
//!
//! Coordinate `i` (1-based) lives in bit `i - 1`, so `e_i = 1 << (i - 1)` and the
//! integer value of a configuration is its `enc` order.

pub type Config = u32;

pub const MAX_DIM: usize = 24;

/// Unit vector `e_i` for a 1-based coordinate.
#[inline]
pub fn unit(i: usize) -> Config {
    debug_assert!((1..=MAX_DIM).contains(&i));
    1 << (i - 1)
}

#[inline]
pub fn weight(x: Config) -> usize {
    x.count_ones() as usize
}

#[inline]
pub fn dist(x: Config, y: Config) -> usize {
    (x ^ y).count_ones() as usize
}

/// All-ones configuration of dimension `n`.
#[inline]
pub fn ones(n: usize) -> Config {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn complement(x: Config, n: usize) -> Config {
    x ^ ones(n)
}

/// Componentwise order `x <= y`.
#[inline]
pub fn leq(x: Config, y: Config) -> bool {
    x & !y == 0
}

/// Strict componentwise order `x < y`.
#[inline]
pub fn lt(x: Config, y: Config) -> bool {
    x != y && leq(x, y)
}

#[inline]
pub fn bit(x: Config, i: usize) -> bool {
    x >> (i - 1) & 1 == 1
}

/// Key for the (weight, enc) order used to break ties deterministically.
#[inline]
pub fn weight_key(x: Config) -> (u32, Config) {
    (x.count_ones(), x)
}

#[inline]
pub fn cube_size(n: usize) -> usize {
    1usize << n
}

/// Bit string with `x_1` as the leftmost character.
pub fn to_bits(x: Config, n: usize) -> String {
    (1..=n).map(|i| if bit(x, i) { '1' } else { '0' }).collect()
}

/// Inverse of [`to_bits`]; `None` unless the token is a binary string.
pub fn from_bits(s: &str) -> Option<Config> {
    if s.is_empty() || s.len() > MAX_DIM {
        return None;
    }
    let mut x = 0;
    for (k, c) in s.bytes().enumerate() {
        match c {
            b'0' => {}
            b'1' => x |= 1 << k,
            _ => return None,
        }
    }
    Some(x)
}

/// Number of k-subsets of an m-set.
pub fn binomial(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut r: usize = 1;
    for j in 0..k {
        r = r * (m - j) / (j + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_strings_put_first_coordinate_on_the_left() {
        assert_eq!(to_bits(unit(1), 3), "100");
        assert_eq!(to_bits(unit(3), 3), "001");
        assert_eq!(from_bits("110"), Some(0b011));
        assert_eq!(from_bits("1a0"), None);
    }

    #[test]
    fn order_and_distance() {
        assert!(leq(0b001, 0b011));
        assert!(!leq(0b100, 0b011));
        assert!(lt(0, 1));
        assert!(!lt(5, 5));
        assert_eq!(dist(0b101, 0b011), 2);
        assert_eq!(complement(0b001, 3), 0b110);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
    }
}
