use std::collections::HashSet;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::QuadOrder;

/// Binary quadratic form `a x^2 + b xy + c y^2`.
pub type Form = (i128, i128, i128);

fn isqrt(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `0 < b < √D` and `√D - b < 2|a| < √D + b`, decided in integers.
fn is_reduced((a, b, _): Form, disc: i128) -> bool {
    let two_a = 2 * a.abs();
    b > 0
        && b * b < disc
        && (two_a + b) * (two_a + b) > disc
        && (two_a - b <= 0 || (two_a - b) * (two_a - b) < disc)
}

/// Primitive reduced indefinite forms of discriminant `disc` (not a square).
pub fn reduced_forms(disc: i128) -> Vec<Form> {
    let root = isqrt(disc);
    let mut out = Vec::new();
    for b in 1..=root {
        if (b - disc).rem_euclid(2) != 0 || b * b >= disc {
            continue;
        }
        let ac = (b * b - disc) / 4;
        for a_abs in 1..=(-ac) {
            if (-ac) % a_abs != 0 {
                continue;
            }
            for a in [a_abs, -a_abs] {
                let c = ac / a;
                let f = (a, b, c);
                if a.gcd(&b).gcd(&c) == 1 && is_reduced(f, disc) {
                    out.push(f);
                }
            }
        }
    }
    out.sort();
    out
}

/// The reduction operator: `(a, b, c) -> (c, b', (b'^2 - D) / 4c)` with
/// `b' ≡ -b mod 2c` and `√D - 2|c| < b' < √D`.
pub fn rho((_, b, c): Form, disc: i128) -> Form {
    let m = 2 * c.abs();
    let root = isqrt(disc);
    // largest b' < √D congruent to -b mod 2|c|
    let mut b2 = root - (root + b).rem_euclid(m);
    if b2 * b2 == disc {
        b2 -= m;
    }
    let a2 = (b2 * b2 - disc) / (4 * c);
    (c, b2, a2)
}

/// Number of `rho`-cycles of reduced forms of discriminant `disc`.
pub fn class_number_of_discriminant(disc: i128) -> u64 {
    let forms = reduced_forms(disc);
    let mut seen = HashSet::new();
    let mut cycles = 0;
    for &f in &forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f;
        while seen.insert(g) {
            g = rho(g, disc);
        }
    }
    cycles
}

/// Class number of an order, counted as cycles of reduced forms (classes
/// under proper equivalence).
pub fn class_number(o: &QuadOrder) -> u64 {
    let disc = o
        .discriminant()
        .to_i128()
        .expect("discriminant fits in 128 bits");
    class_number_of_discriminant(disc)
}
