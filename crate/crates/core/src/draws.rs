//! Counting distinct draft sequences.

use num_bigint::BigUint;

use crate::deck::DECK_SIZE;
use crate::state::PLAYERS;

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of distinct ways the deck can be dealt into twelve 4-domino
/// drafts, ignoring the order within each draft:
/// the product over `i` in `0..12` of `C(48 - 4i, 4)`.
pub fn count_deck_draws() -> BigUint {
    draw_factors().into_iter().product()
}

/// The twelve per-draft factors, first draft first.
pub fn draw_factors() -> Vec<BigUint> {
    let drafts = DECK_SIZE / PLAYERS;
    (0..drafts)
        .map(|i| binomial((DECK_SIZE - PLAYERS * i) as u64, PLAYERS as u64))
        .collect()
}

/// Formats a big integer as `d.dd...e<exp>` with `digits` significant digits
/// (rounded half up).
pub fn scientific(value: &BigUint, digits: usize) -> String {
    let s = value.to_str_radix(10);
    let exp = s.len() - 1;
    if s.len() <= digits {
        let (head, tail) = s.split_at(1);
        return if tail.is_empty() {
            format!("{head}e{exp}")
        } else {
            format!("{head}.{tail}e{exp}")
        };
    }
    let mut mantissa: Vec<u8> = s.as_bytes()[..digits].iter().map(|b| b - b'0').collect();
    let mut exp = exp;
    if s.as_bytes()[digits] >= b'5' {
        let mut i = digits;
        loop {
            if i == 0 {
                mantissa.insert(0, 1);
                mantissa.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if mantissa[i] == 9 {
                mantissa[i] = 0;
            } else {
                mantissa[i] += 1;
                break;
            }
        }
    }
    let text: String = mantissa.iter().map(|d| char::from(b'0' + d)).collect();
    let (head, tail) = text.split_at(1);
    if tail.is_empty() {
        format!("{head}e{exp}")
    } else {
        format!("{head}.{tail}e{exp}")
    }
}
