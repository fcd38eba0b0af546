//! Subresultant remainder sequences: resultants and gcds in Z[X].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntPoly;

fn pow(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Sylvester-matrix resultant: `lc(a)^{deg b} * prod b(alpha)` over roots of `a`.
fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.deg() == 0 {
        return s * pow(&b.lc(), a.deg());
    }
    let ca = a.content();
    let cb = b.content();
    let t = pow(&ca, b.deg()) * pow(&cb, a.deg());
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return BigInt::zero();
        }
        a = b;
        let denom = &g * pow(&h, delta);
        b = r.div_scalar_exact(&denom);
        g = a.lc();
        // h <- g^delta / h^(delta-1)
        if delta > 0 {
            h = pow(&g, delta) / pow(&h, delta - 1);
        }
        if b.deg() == 0 {
            let da = a.deg();
            let hh = pow(&b.lc(), da) / pow(&h, da - 1);
            return s * t * hh;
        }
    }
}

/// `Res(f, g) = lc(g)^{deg f} * prod f(beta)` over the roots `beta` of `g`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    assert!(
        !f.is_zero() && !g.is_zero(),
        "resultant of the zero polynomial"
    );
    sylvester_resultant(g, f)
}

/// Greatest common divisor in Z[X], primitive-normalized with positive leading
/// coefficient times the gcd of the contents.
pub fn gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    if f.is_zero() {
        return g.primitive_part().scale(&g.content());
    }
    if g.is_zero() {
        return f.primitive_part().scale(&f.content());
    }
    let (mut a, mut b) = if f.deg() >= g.deg() {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    let d = a.content().gcd(&b.content());
    a = a.primitive_part();
    b = b.primitive_part();
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            break;
        }
        if r.deg() == 0 {
            return IntPoly::constant(d);
        }
        a = b;
        b = r.div_scalar_exact(&(&gg * pow(&h, delta)));
        gg = a.lc();
        h = if delta == 0 {
            h
        } else {
            pow(&gg, delta) / pow(&h, delta - 1)
        };
    }
    let mut out = b.primitive_part();
    if out.lc().is_negative() {
        out = -&out;
    }
    out.scale(&d)
}

/// `f / gcd(f, f')`, primitive.
pub fn squarefree_part(f: &IntPoly) -> IntPoly {
    if f.deg() == 0 {
        return IntPoly::one();
    }
    let g = gcd(f, &f.derivative());
    f.primitive_part()
        .div_exact(&g.primitive_part())
        .expect("gcd divides its argument")
        .primitive_part()
}
