//! Dense polynomials over a prime field.
//!
//! Coefficients are stored lowest degree first (`[c0, c1, ..., cn]`) and are
//! always reduced into `0..p`. Only what field construction needs lives here:
//! multiplication, remainder by a monic divisor, and the irreducibility test.

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p = u64::from(p);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + u64::from(x) * u64::from(y)) % p;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    debug_assert_eq!(m.last(), Some(&1));
    let n = m.len() - 1;
    let mut r = trim(a.to_vec());
    let p64 = u64::from(p);
    while r.len() > n {
        let lead = u64::from(*r.last().unwrap());
        let shift = r.len() - 1 - n;
        for (i, &c) in m.iter().enumerate() {
            let sub = lead * u64::from(c) % p64;
            let cur = u64::from(r[shift + i]);
            r[shift + i] = ((cur + p64 - sub) % p64) as u32;
        }
        r = trim(r);
    }
    r
}

/// All monic polynomials of degree `deg`, in canonical order: the
/// coefficient vector `(c0, ..., c_{deg-1})` is compared lexicographically
/// with `c0` most significant.
pub(crate) fn monic_polys(deg: u32, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = u64::from(p).pow(deg);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u32; deg as usize + 1];
        for i in (0..deg as usize).rev() {
            coeffs[i] = (idx % u64::from(p)) as u32;
            idx /= u64::from(p);
        }
        coeffs[deg as usize] = 1;
        coeffs
    })
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = (f.len() - 1) as u32;
    (1..=deg / 2).all(|d| monic_polys(d, p).all(|g| !rem_monic(&f, &g, p).is_empty()))
}

pub(crate) fn smallest_irreducible(deg: u32, p: u32) -> Vec<u32> {
    monic_polys(deg, p)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_over_f3() {
        // x^2 + 1 is the first monic quadratic without a root in F_3.
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1]);
        assert!(!is_irreducible(&[2, 0, 1], 3)); // x^2 - 1
        assert!(!is_irreducible(&[0, 1, 1], 3)); // x(x + 1)
    }

    #[test]
    fn remainder_matches_manual_division() {
        // (x^3 + 2x + 1) mod (x^2 + 1) over F_3: x^3 = -x, so x + 1.
        assert_eq!(rem_monic(&[1, 2, 0, 1], &[1, 0, 1], 3), vec![1, 1]);
    }

    #[test]
    fn counts_of_irreducibles() {
        // Number of monic irreducibles of degree 2 over F_p is (p^2 - p) / 2.
        for p in [3u32, 5, 7] {
            let n = monic_polys(2, p).filter(|f| is_irreducible(f, p)).count() as u32;
            assert_eq!(n, (p * p - p) / 2);
        }
        // Degree 3 over F_3: (27 - 3) / 3 = 8.
        assert_eq!(monic_polys(3, 3).filter(|f| is_irreducible(f, 3)).count(), 8);
    }
}
