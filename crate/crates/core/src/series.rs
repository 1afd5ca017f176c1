//! Counting sequences for the map classes: closed forms where they exist
//! and the algebraic recurrence for the sum-closed class of f2.

use crate::error::Error;

/// Largest index the u128 arithmetic is guaranteed to cover.
const MAX_INDEX: usize = 40;

/// Coefficients, constant term first, of the discriminant polynomial of the
/// f2 class's generating function. Its smallest root in (0, 1) is the
/// reciprocal of the class's growth rate.
pub fn a2_growth_polynomial() -> Vec<f64> {
    vec![1.0, -6.0, 1.0, 0.0, -12.0, -20.0, 8.0, 0.0, 4.0, 16.0, 16.0]
}

/// Counts of the f2 class for lengths 1 through `up_to`, by the recurrence
/// of f = U + U f + f^2 where U counts the atoms by length.
pub fn a2_series(up_to: usize) -> Result<Vec<u128>, Error> {
    if !(1..=MAX_INDEX).contains(&up_to) {
        return Err(Error::SeriesIndexOutOfRange(up_to));
    }
    fn atoms(k: usize) -> u128 {
        match k {
            1 => 1,
            4 => 2,
            5 => 4,
            _ => 0,
        }
    }
    let mut a: Vec<u128> = vec![0]; // unused zero index
    for n in 1..=up_to {
        let mut total = atoms(n);
        for k in 1..n {
            let linear = atoms(k).checked_mul(a[n - k]).expect("series fits in u128");
            let square = a[k].checked_mul(a[n - k]).expect("series fits in u128");
            total = total
                .checked_add(linear)
                .and_then(|t| t.checked_add(square))
                .expect("series fits in u128");
        }
        a.push(total);
    }
    a.remove(0);
    Ok(a)
}

/// The number of length-`n` members of the class of map `f2`, `f3`, `f4`,
/// `f5` or `f6`, picked by number. Classes 3 and 4 coincide. Supported for
/// `n` in 1..=40.
pub fn series_formula(class_id: u8, n: usize) -> Result<u128, Error> {
    if !(1..=MAX_INDEX).contains(&n) {
        return Err(Error::SeriesIndexOutOfRange(n));
    }
    let two = |e: usize| -> u128 { 1u128 << e };
    match class_id {
        2 => Ok(a2_series(n)?[n - 1]),
        3 | 4 => Ok(match n {
            1 => 1,
            2 => 2,
            3 => 6,
            _ => 2 + (4 * n as u128 - 7) * two(n - 3),
        }),
        5 => Ok(match n {
            1 => 1,
            2 => 2,
            3 => 6,
            4 => 22,
            5 => 48,
            _ => two(n + 1) - 4 * n as u128 + 2,
        }),
        6 => Ok(match n {
            1 => 1,
            2 => 2,
            3 => 6,
            4 => 22,
            _ => two(n + 1) - 4 * n as u128 + 2,
        }),
        other => Err(Error::UnknownSeriesClass(other)),
    }
}
