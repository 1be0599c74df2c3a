//! Fraction-free elimination.
//!
//! Columns are cleared of denominators and kept primitive (content 1), so
//! all arithmetic is on integers whose size stays close to that of the
//! input. A column is reduced against the accepted pivot columns in the order
//! they were accepted; each accepted column vanishes at the pivot rows of all
//! earlier ones, so one pass suffices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{SparseMatrix, SparseVec};
use crate::Rational;

type IntVec = Vec<(usize, BigInt)>;

fn to_primitive(v: &SparseVec) -> IntVec {
    let mut l = BigInt::one();
    for (_, c) in v {
        l = l.lcm(c.denom());
    }
    let mut out: IntVec = v.iter().map(|(i, c)| (*i, c.numer() * (&l / c.denom()))).collect();
    make_primitive(&mut out, &mut []);
    out
}

/// Divides `v` and `hist` by the gcd of all their entries.
fn make_primitive(v: &mut IntVec, hist: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in v.iter().chain(hist.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in v.iter_mut() {
        *c /= &g;
    }
    for (_, c) in hist.iter_mut() {
        *c /= &g;
    }
}

fn lookup(v: &IntVec, i: usize) -> Option<&BigInt> {
    v.binary_search_by_key(&i, |(k, _)| *k).ok().map(|k| &v[k].1)
}

/// `a*x - b*y` on sorted sparse integer vectors.
fn combine(a: &BigInt, x: &IntVec, b: &BigInt, y: &IntVec) -> IntVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let c = a * &x[i].1 - b * &y[j].1;
            if !c.is_zero() {
                out.push((x[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct Pivot {
    row: usize,
    vec: IntVec,
    hist: IntVec,
}

struct Eliminator {
    pivots: Vec<Pivot>,
    track: bool,
}

impl Eliminator {
    /// Reduces `v` (with history `hist`); returns the remainder and history.
    fn reduce(&self, mut v: IntVec, mut hist: IntVec) -> (IntVec, IntVec) {
        for p in &self.pivots {
            if v.is_empty() {
                break;
            }
            let a = match lookup(&v, p.row) {
                Some(a) => a.clone(),
                None => continue,
            };
            let b = lookup(&p.vec, p.row).expect("pivot entry").clone();
            let g = a.gcd(&b);
            let (bb, aa) = (&b / &g, &a / &g);
            v = combine(&bb, &v, &aa, &p.vec);
            if self.track {
                hist = combine(&bb, &hist, &aa, &p.hist);
            }
            make_primitive(&mut v, &mut hist);
        }
        (v, hist)
    }

    fn accept(&mut self, v: IntVec, hist: IntVec) {
        let row = v
            .iter()
            .min_by(|x, y| x.1.abs().cmp(&y.1.abs()).then(x.0.cmp(&y.0)))
            .map(|(r, _)| *r)
            .expect("nonzero vector");
        self.pivots.push(Pivot { row, vec: v, hist });
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    let limit = m.rows().min(m.cols());
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by_key(|&j| (m.column(j).len(), j));
    let mut el = Eliminator { pivots: Vec::new(), track: false };
    for j in order {
        if el.pivots.len() == limit {
            break;
        }
        let (v, _) = el.reduce(to_primitive(m.column(j)), Vec::new());
        if !v.is_empty() {
            el.accept(v, Vec::new());
        }
    }
    el.pivots.len()
}

/// Basis of the null space `{v : m v = 0}`, as sparse rational vectors.
pub fn kernel(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut el = Eliminator { pivots: Vec::new(), track: true };
    let mut out = Vec::new();
    for j in 0..m.cols() {
        let col = m.column(j);
        let mut l = BigInt::one();
        for (_, c) in col {
            l = l.lcm(c.denom());
        }
        let v: IntVec = col.iter().map(|(i, c)| (*i, c.numer() * (&l / c.denom()))).collect();
        let (v, hist) = el.reduce(v, vec![(j, l)]);
        if v.is_empty() {
            out.push(hist.into_iter().map(|(i, c)| (i, Rational::from_integer(c))).collect());
        } else {
            el.accept(v, hist);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank(&SparseMatrix::zeros(3, 5)), 0);
        assert_eq!(rank(&SparseMatrix::identity(4)), 4);
        assert_eq!(rank(&SparseMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let m = SparseMatrix::from_columns(
            2,
            vec![
                vec![(0, crate::rational::ratio(1, 2)), (1, crate::rational::ratio(1, 3))],
                vec![(0, crate::rational::int(3)), (1, crate::rational::int(2))],
            ],
        )
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let m = SparseMatrix::from_dense(&[vec![1, 2, 3, 0], vec![2, 4, 6, 1]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 4 - rank(&m));
        for v in &k {
            assert!(m.mul_vec(v).is_empty());
        }
    }
}
