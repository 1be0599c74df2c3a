//! Graded tensor products and direct sums of based complexes.

use crate::error::{Error, Result};
use crate::exactlin::{ComplexWindow, Direction, SparseMatrix};
use crate::rational::sign;

fn check_compatible(windows: &[ComplexWindow]) -> Result<Direction> {
    let first = windows
        .first()
        .ok_or_else(|| Error::InvalidParameters("no complexes given".into()))?;
    if windows.iter().any(|w| w.direction != first.direction) {
        return Err(Error::ShapeMismatch("complexes with different directions".into()));
    }
    if windows.iter().any(ComplexWindow::is_empty) {
        return Err(Error::ShapeMismatch("empty window".into()));
    }
    Ok(first.direction)
}

/// The map leaving position `i` of a window, with its target position.
fn outgoing(w: &ComplexWindow, i: usize) -> Option<(&SparseMatrix, usize)> {
    match w.direction {
        Direction::Up => (i + 1 < w.len()).then(|| (&w.maps[i], i + 1)),
        Direction::Down => (i > 0).then(|| (&w.maps[i - 1], i - 1)),
    }
}

/// One summand of the total space: a position in each factor.
#[derive(Clone, Debug)]
struct Block {
    positions: Vec<usize>,
    offset: usize,
    dims: Vec<usize>,
}

impl Block {
    fn size(&self) -> usize {
        self.dims.iter().product()
    }

    /// Mixed-radix index, last factor fastest.
    fn index(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    fn parts(&self, mut k: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = k % d;
            k /= d;
        }
        out
    }
}

/// Position tuples with the given sum, in lexicographic order.
fn position_tuples(lens: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(lens: &[usize], total: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if lens.is_empty() {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..lens[0].min(total + 1) {
            cur.push(i);
            rec(&lens[1..], total - i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lens, total, &mut Vec::new(), &mut out);
    out
}

/// Graded tensor product. The space at total degree `d` is the sum over
/// degree tuples `(d_1, .., d_k)` with `Σ d_α = d` (lexicographic order) of
/// the tensor products of bases (last factor fastest). The differential on
/// the `β`-th factor carries the sign `(-1)^{d_1 + .. + d_{β-1}}`.
pub fn tensor_complexes(windows: &[ComplexWindow]) -> Result<ComplexWindow> {
    let direction = check_compatible(windows)?;
    let lens: Vec<usize> = windows.iter().map(ComplexWindow::len).collect();
    let top: usize = lens.iter().map(|l| l - 1).sum();
    let start: i64 = windows.iter().map(|w| w.start).sum();
    let mut levels: Vec<Vec<Block>> = Vec::with_capacity(top + 1);
    for t in 0..=top {
        let mut offset = 0;
        let mut blocks = Vec::new();
        for positions in position_tuples(&lens, t) {
            let dims: Vec<usize> = positions.iter().zip(windows).map(|(&i, w)| w.labels[i].len()).collect();
            let b = Block { positions, offset, dims };
            offset += b.size();
            blocks.push(b);
        }
        levels.push(blocks);
    }
    let level_dim = |t: usize| levels[t].iter().map(Block::size).sum::<usize>();
    let mut labels = Vec::with_capacity(top + 1);
    for blocks in &levels {
        let mut ls = Vec::new();
        for b in blocks {
            for k in 0..b.size() {
                let parts = b.parts(k);
                let names: Vec<&str> = parts
                    .iter()
                    .zip(&b.positions)
                    .zip(windows)
                    .map(|((&j, &i), w)| w.labels[i][j].as_str())
                    .collect();
                ls.push(names.join("⊗"));
            }
        }
        labels.push(ls);
    }
    let mut maps = Vec::with_capacity(top);
    for t in 0..top {
        // positions t and t+1; the source is t+1 when going down
        let (src, tgt) = match direction {
            Direction::Up => (t, t + 1),
            Direction::Down => (t + 1, t),
        };
        let mut trip = Vec::new();
        for b in &levels[src] {
            let mut degree_before = 0i64;
            for (beta, w) in windows.iter().enumerate() {
                let i = b.positions[beta];
                if let Some((m, j)) = outgoing(w, i) {
                    let mut positions = b.positions.clone();
                    positions[beta] = j;
                    let tb = levels[tgt]
                        .iter()
                        .find(|x| x.positions == positions)
                        .expect("target block exists");
                    let s = sign(if degree_before.rem_euclid(2) == 0 { 1 } else { -1 });
                    for k in 0..b.size() {
                        let parts = b.parts(k);
                        for (r, c) in m.column(parts[beta]) {
                            let mut tparts = parts.clone();
                            tparts[beta] = *r;
                            trip.push((tb.offset + tb.index(&tparts), b.offset + k, c * &s));
                        }
                    }
                }
                degree_before += w.start + i as i64;
            }
        }
        maps.push(SparseMatrix::from_triplets(level_dim(tgt), level_dim(src), trip)?);
    }
    ComplexWindow::new(
        start,
        direction,
        labels,
        maps,
        windows.iter().all(|w| w.lower_closed),
        windows.iter().all(|w| w.upper_closed),
    )
}

/// Direct sum of windows over the same degrees; bases are concatenated in
/// order.
pub fn direct_sum(windows: &[ComplexWindow]) -> Result<ComplexWindow> {
    let direction = check_compatible(windows)?;
    let first = &windows[0];
    if windows.iter().any(|w| w.start != first.start || w.len() != first.len()) {
        return Err(Error::ShapeMismatch("direct sum of windows over different degrees".into()));
    }
    let mut labels = vec![Vec::new(); first.len()];
    for (s, w) in windows.iter().enumerate() {
        for (acc, ls) in labels.iter_mut().zip(&w.labels) {
            acc.extend(ls.iter().map(|l| format!("{s}:{l}")));
        }
    }
    let maps = (0..first.maps.len())
        .map(|i| {
            windows[1..]
                .iter()
                .fold(first.maps[i].clone(), |acc, w| acc.direct_sum(&w.maps[i]))
        })
        .collect();
    ComplexWindow::new(
        first.start,
        direction,
        labels,
        maps,
        windows.iter().all(|w| w.lower_closed),
        windows.iter().all(|w| w.upper_closed),
    )
}
