use super::BikeiTable;
use crate::error::{Error, Result};
use crate::Element;

/// Maps a residue in `0..n` to its element index, with `n` standing for 0.
fn index_of(residue: u64, n: u64) -> Element {
    if residue == 0 {
        n as Element
    } else {
        residue as Element
    }
}

/// Alexander bikei on `Z_n`: `x ▁ y = t·x + (s − t)·y`, `x ▔ y = s·x`.
///
/// Requires `s² = t² = 1` and `(1 − s)(s − t) = 0` in `Z_n`.
pub fn alexander_bikei(n: u64, s: u64, t: u64) -> Result<BikeiTable> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "modulus must be at least 1".into(),
        ));
    }
    let (s, t) = (s % n, t % n);
    let sub = |a: u64, b: u64| (a + n - b) % n;
    if s * s % n != 1 % n {
        return Err(Error::InvalidParameters(format!(
            "s^2 = {} != 1 mod {n}",
            s * s % n
        )));
    }
    if t * t % n != 1 % n {
        return Err(Error::InvalidParameters(format!(
            "t^2 = {} != 1 mod {n}",
            t * t % n
        )));
    }
    let s_minus_t = sub(s, t);
    let product = sub(1, s) * s_minus_t % n;
    if product != 0 {
        return Err(Error::InvalidParameters(format!(
            "(1 - s)(s - t) = {product} != 0 mod {n}"
        )));
    }
    BikeiTable::from_fn(n as usize, |x, y| {
        let (x, y) = (x as u64 % n, y as u64 % n);
        (
            index_of((t * x + s_minus_t * y) % n, n),
            index_of(s * x % n, n),
        )
    })
}

/// Core kei of a group given by its multiplication table
/// (`mul[(i - 1) * n + (j - 1)]` is the index of `g_i g_j`):
/// `x ▁ y = y x⁻¹ y`, `x ▔ y = x`.
pub fn core_kei(mul: &[Element]) -> Result<BikeiTable> {
    let n = (mul.len() as f64).sqrt() as usize;
    if n == 0 || n * n != mul.len() {
        return Err(Error::InvalidGroup(format!(
            "{} entries is not a square table",
            mul.len()
        )));
    }
    if let Some(&bad) = mul.iter().find(|&&e| e == 0 || e as usize > n) {
        return Err(Error::InvalidGroup(format!("entry {bad} outside 1..={n}")));
    }
    let m = |a: Element, b: Element| mul[(a as usize - 1) * n + (b as usize - 1)];
    let elems = 1..=n as Element;

    let identity = elems
        .clone()
        .find(|&e| elems.clone().all(|g| m(e, g) == g && m(g, e) == g))
        .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
    let mut inverse = vec![0; n + 1];
    for g in elems.clone() {
        inverse[g as usize] = elems
            .clone()
            .find(|&h| m(g, h) == identity && m(h, g) == identity)
            .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
    }
    for a in elems.clone() {
        for b in elems.clone() {
            for c in elems.clone() {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    BikeiTable::from_fn(n, |x, y| (m(m(y, inverse[x as usize]), y), x))
}

/// Takasaki kei on `Z_n`: `x ▁ y = 2y − x`, `x ▔ y = x`.
pub fn takasaki_kei(n: u64) -> Result<BikeiTable> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "modulus must be at least 1".into(),
        ));
    }
    BikeiTable::from_fn(n as usize, |x, y| {
        let (x, y) = (x as u64 % n, y as u64 % n);
        (index_of((2 * y + n - x) % n, n), index_of(x, n))
    })
}

/// The two-element bikei `Z_2` with `x ▁ y = x ▔ y = x + 1`, the fundamental
/// bikei of the unknot.
pub fn unknot_bikei() -> BikeiTable {
    BikeiTable::new(2, vec![2, 2, 1, 1], vec![2, 2, 1, 1]).expect("static table")
}

/// The bikei on `n` elements with `x ▁ y = x ▔ y = x`.
pub fn trivial_bikei(n: usize) -> BikeiTable {
    BikeiTable::from_fn(n, |x, _| (x, x)).expect("trivial table is total")
}
