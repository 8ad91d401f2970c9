#![allow(dead_code)]

use superllt::poly::{rat, VarId};
use superllt::shapes::{Partition, SkewShape};
use superllt::tableaux::AlphabetOrder;
use superllt::{MPoly, Monomial};

pub fn parts(s: &str) -> Partition {
    s.parse().unwrap()
}

pub fn skew(outer: &str, inner: &str) -> SkewShape {
    SkewShape::new(parts(outer), parts(inner)).unwrap()
}

pub fn order(s: &str) -> AlphabetOrder {
    s.parse().unwrap()
}

/// `(coefficient, "q^3 x1^2 y1")` terms; the empty string is the constant 1.
pub fn poly(terms: &[(i64, &str)]) -> MPoly {
    let mut p = MPoly::zero();
    for (c, m) in terms {
        let pairs = m.split_whitespace().map(|f| match f.split_once('^') {
            Some((v, e)) => (v.parse::<VarId>().unwrap(), e.parse::<i32>().unwrap()),
            None => (f.parse::<VarId>().unwrap(), 1),
        });
        p.add_term(Monomial::from_pairs(pairs).unwrap(), rat(*c));
    }
    p
}

/// Hook Schur polynomial by brute force over fillings: horizontal letters
/// increase weakly along rows and strictly down columns, vertical letters
/// the other way round, and each vertical letter contributes `-y`.
pub fn hook_schur(s: &SkewShape, order: &AlphabetOrder) -> MPoly {
    let cells = s.cells();
    let k = order.len();
    let mut total = MPoly::zero();
    let mut fill = vec![0usize; cells.len()];
    loop {
        let at = |r: usize, c: u32| cells.iter().position(|&x| x == (r, c)).map(|i| fill[i]);
        let ok = cells.iter().enumerate().all(|(i, &(r, c))| {
            let a = fill[i];
            let vertical = order.letters[a].kind == superllt::tableaux::LetterKind::Vertical;
            let left_ok = match c.checked_sub(1).and_then(|cc| at(r, cc)) {
                Some(b) => b < a || (b == a && !vertical),
                None => true,
            };
            let up_ok = match r.checked_sub(1).and_then(|rr| at(rr, c)) {
                Some(b) => b < a || (b == a && vertical),
                None => true,
            };
            left_ok && up_ok
        });
        if ok {
            let mut m = MPoly::one();
            for &a in &fill {
                let l = &order.letters[a];
                let v = MPoly::var(l.var);
                m = &m * &(if l.kind == superllt::tableaux::LetterKind::Vertical { -v } else { v });
            }
            total += &m;
        }
        // next filling in base k
        let mut i = 0;
        loop {
            if i == fill.len() {
                return total;
            }
            fill[i] += 1;
            if fill[i] < k {
                break;
            }
            fill[i] = 0;
            i += 1;
        }
    }
}
