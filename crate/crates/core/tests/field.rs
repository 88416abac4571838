use fqdist::field::{Cyclotomic, FieldCtx, FieldElem, QuadClass};

/// Odd prime powers up to 49.
const ORDERS: &[(u32, u32)] = &[(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (37, 1), (41, 1), (43, 1), (47, 1), (7, 2)];

/// Shift-and-add product of two coefficient vectors modulo a monic `m`
/// (lowest degree first): walk the bits of `b` from the top, multiplying the
/// accumulator by x and reducing with x^k = -(m_0 + ... + m_{k-1} x^{k-1}).
fn oracle_mul(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let k = a.len();
    let times_x = |v: &[u32]| -> Vec<u32> {
        let top = v[k - 1];
        let mut out = vec![0; k];
        for i in (1..k).rev() {
            out[i] = v[i - 1];
        }
        for i in 0..k {
            out[i] = (out[i] + (p - m[i]) * top) % p;
        }
        out
    };
    let mut acc = vec![0u32; k];
    for &bj in b.iter().rev() {
        acc = times_x(&acc);
        for i in 0..k {
            acc[i] = (acc[i] + a[i] * bj) % p;
        }
    }
    acc
}

fn fields() -> impl Iterator<Item = FieldCtx> {
    ORDERS.iter().map(|&(p, k)| FieldCtx::new(p, k, None).unwrap())
}

#[test]
fn multiplication_matches_shift_and_add() {
    for f in fields().filter(|f| f.degree() > 1) {
        let m = f.modulus().unwrap().to_vec();
        let p = f.characteristic();
        for a in f.elements() {
            for b in f.elements() {
                let expected = oracle_mul(&f.coeffs(a), &f.coeffs(b), &m, p);
                assert_eq!(f.coeffs(f.mul(a, b)), expected, "q={} a={a:?} b={b:?}", f.order());
            }
        }
    }
}

#[test]
fn f9_hand_values() {
    // x² + 1 over F_3, elements written c0 + c1·x.
    let f = FieldCtx::new(3, 2, None).unwrap();
    assert_eq!(f.modulus(), Some(&[1, 0, 1][..]));
    let e = |c0, c1| f.from_coeffs(&[c0, c1]).unwrap();
    assert_eq!(f.mul(e(0, 1), e(0, 1)), e(2, 0));
    assert_eq!(f.mul(e(1, 1), e(1, 1)), e(0, 2));
    assert_eq!(f.mul(e(1, 2), e(2, 1)), e(0, 2));
    assert_eq!(f.add(e(2, 2), e(2, 1)), e(1, 0));
    // x⁴ = 1 makes x a square; (1 + x)⁴ = 2 makes 1 + x the first non-square.
    assert_eq!(f.gamma(), e(1, 1));
    assert_eq!(f.quad_class(e(0, 1)), QuadClass::Square);
}

#[test]
fn field_axioms_exhaustive() {
    for f in fields() {
        let q = f.order() as usize;
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            assert_eq!(f.mul(a, f.one()), a);
            if a != f.zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
            }
        }
        assert!(f.inv(f.zero()).is_err());
        // Distributivity on a diagonal slice keeps the loop at O(q²).
        for (i, a) in f.elements().enumerate() {
            let b = f.elem((i * 7 + 3) % q).unwrap();
            for c in f.elements() {
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

#[test]
fn quadratic_characters_exhaustive() {
    for f in fields() {
        let q = f.order() as usize;
        let squares: std::collections::BTreeSet<FieldElem> = f.nonzero().map(|a| f.square(a)).collect();
        assert_eq!(squares.len(), (q - 1) / 2, "q={q}");
        let non_squares: Vec<FieldElem> = f.nonzero().filter(|a| !squares.contains(a)).collect();
        for a in f.nonzero() {
            let expected = if squares.contains(&a) { QuadClass::Square } else { QuadClass::NonSquare };
            assert_eq!(f.quad_class(a), expected);
            match f.sqrt(a) {
                Some(r) => {
                    assert_eq!(f.square(r), a);
                    assert!(r <= f.neg(r), "sqrt returns the smaller root");
                }
                None => assert_eq!(expected, QuadClass::NonSquare),
            }
        }
        assert_eq!(f.sqrt(f.zero()), Some(f.zero()));
        assert_eq!(f.quad_class(f.zero()), QuadClass::Zero);
        for &a in &non_squares {
            for &b in &non_squares {
                assert!(squares.contains(&f.mul(a, b)), "non-square product, q={q}");
            }
        }
        assert_eq!(Some(&f.gamma()), non_squares.first());
    }
}

#[test]
fn additive_character_sums() {
    for f in fields() {
        let p = f.characteristic();
        let total: Cyclotomic = f.elements().map(|a| f.char_eval(a)).sum();
        assert!(total.is_zero(), "q={}", f.order());
        for a in f.elements() {
            for b in f.elements().step_by(3) {
                assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
                assert_eq!(
                    &f.char_eval(a) * &f.char_eval(b),
                    f.char_eval(f.add(a, b)),
                    "character is a homomorphism"
                );
            }
            assert_eq!(f.trace(f.pow(a, u64::from(p))), f.trace(a));
        }
        // Orthogonality: Σ_x χ(ax) = q·[a = 0].
        for a in f.elements() {
            let s: Cyclotomic = f.elements().map(|x| f.char_eval(f.mul(a, x))).sum();
            let expected = if a == f.zero() { i64::from(f.order()) } else { 0 };
            assert_eq!(s.as_integer(), Some(expected));
        }
    }
}

#[test]
fn integer_embedding_and_pow() {
    for f in fields() {
        let p = i64::from(f.characteristic());
        for n in -2 * p..2 * p {
            assert_eq!(f.from_int(n), f.from_int(n.rem_euclid(p)));
            assert!(f.in_prime_subfield(f.from_int(n)));
        }
        for a in f.nonzero() {
            assert_eq!(f.pow(a, u64::from(f.order()) - 1), f.one());
        }
    }
}
