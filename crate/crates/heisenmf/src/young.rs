//! Young diagrams, pre-diagrams and the wrapping process that turns a
//! row-shifted diagram back into a partition (or proves it cannot be one).

use std::fmt;

/// Integer partition: weakly decreasing positive rows. The empty partition
/// is allowed and has size 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    rows: Vec<u32>,
}

impl Partition {
    /// Panics if rows are not weakly decreasing or contain a zero.
    pub fn new(rows: Vec<u32>) -> Self {
        for w in rows.windows(2) {
            assert!(w[0] >= w[1], "partition rows must be weakly decreasing: {:?}", rows);
        }
        if let Some(&last) = rows.last() {
            assert!(last > 0, "partition rows must be positive: {:?}", rows);
        }
        Partition { rows }
    }

    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Number of rows.
    pub fn parts(&self) -> usize {
        self.rows.len()
    }

    /// Row length with 1-based index; rows below the diagram have length 0.
    pub fn row(&self, i: usize) -> u32 {
        assert!(i >= 1, "row index is 1-based");
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    /// True when `inner` fits inside `self` row by row.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner
            .rows
            .iter()
            .enumerate()
            .all(|(i, &r)| self.rows.get(i).copied().unwrap_or(0) >= r)
    }

    /// First-column hook lengths, strictly decreasing for a partition.
    pub fn hook_numbers(&self) -> Vec<i64> {
        hook_numbers(&self.rows)
    }

    /// Sum of (row index - column index) over all boxes, both 1-based.
    pub fn content_sum(&self) -> i64 {
        content_sum(&self.rows)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// Weakly constrained diagram shape: nonnegative rows, last row nonzero,
/// at most one ascent (index i with rows[i] < rows[i+1]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PreDiagram {
    rows: Vec<u32>,
}

impl PreDiagram {
    /// Panics if more than one ascent or the last row is zero.
    pub fn new(rows: Vec<u32>) -> Self {
        if let Some(&last) = rows.last() {
            assert!(last > 0, "pre-diagram must end in a nonzero row: {:?}", rows);
        }
        let ascents = rows.windows(2).filter(|w| w[1] > w[0]).count();
        assert!(ascents <= 1, "pre-diagram admits at most one ascent: {:?}", rows);
        PreDiagram { rows }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn hook_numbers(&self) -> Vec<i64> {
        hook_numbers(&self.rows)
    }

    pub fn content_sum(&self) -> i64 {
        content_sum(&self.rows)
    }

    /// Weakly decreasing rows, i.e. the shape already is a Young diagram.
    pub fn is_partition(&self) -> bool {
        self.rows.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Debug for PreDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl From<&Partition> for PreDiagram {
    fn from(p: &Partition) -> Self {
        PreDiagram { rows: p.rows.clone() }
    }
}

fn hook_numbers(rows: &[u32]) -> Vec<i64> {
    let r = rows.len() as i64;
    rows.iter()
        .enumerate()
        .map(|(idx, &len)| len as i64 + r - (idx as i64 + 1))
        .collect()
}

fn content_sum(rows: &[u32]) -> i64 {
    // Row i contributes sum_{j=1..len} (i - j).
    rows.iter()
        .enumerate()
        .map(|(idx, &len)| {
            let i = idx as i64 + 1;
            let len = len as i64;
            len * i - len * (len + 1) / 2
        })
        .sum()
}

/// Outcome of running the wrapping process to completion.
#[derive(Clone, Debug)]
pub struct WrapResult {
    pub final_shape: PreDiagram,
    pub move_count: usize,
    pub is_young: bool,
}

impl WrapResult {
    /// The final shape as a partition, when the process resolved to one.
    pub fn young(&self) -> Option<Partition> {
        if self.is_young {
            Some(Partition::new(self.final_shape.rows.clone()))
        } else {
            None
        }
    }
}

/// Appends `k` boxes to row `i` of `mu` (1-based), padding with empty rows
/// when `i` lies below the diagram. Panics unless 1 <= i <= parts(mu) + k.
pub fn place_strip(mu: &Partition, k: u32, i: usize) -> PreDiagram {
    assert!(k >= 1, "strip size must be positive");
    let r = mu.parts();
    assert!(
        i >= 1 && i <= r + k as usize,
        "row index {} outside [1, {}] for {:?} with k={}",
        i,
        r + k as usize,
        mu,
        k
    );
    let mut rows = mu.rows.clone();
    if i <= r {
        rows[i - 1] += k;
    } else {
        rows.resize(i - 1, 0);
        rows.push(k);
    }
    PreDiagram { rows }
}

/// Runs the row-swap rewriting to completion: while some adjacent pair has
/// rows[j+1] >= rows[j] + 2, replace it by (rows[j+1]-1, rows[j]+1).
/// Each move swaps two hook numbers, so the hook multiset is invariant;
/// the weighted row sum strictly drops, so the loop terminates.
pub fn wrap(shape: &PreDiagram) -> WrapResult {
    let mut rows = shape.rows.clone();
    let mut moves = 0usize;
    loop {
        let slot = rows
            .windows(2)
            .position(|w| w[1] >= w[0] + 2);
        match slot {
            Some(j) => {
                let (lo, hi) = (rows[j], rows[j + 1]);
                rows[j] = hi - 1;
                rows[j + 1] = lo + 1;
                moves += 1;
            }
            None => break,
        }
    }
    let is_young = rows.windows(2).all(|w| w[0] >= w[1]);
    WrapResult {
        final_shape: PreDiagram { rows },
        move_count: moves,
        is_young,
    }
}

/// A partition obtained by adding a connected rim strip, together with the
/// number of rows the strip occupies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderStrip {
    pub diagram: Partition,
    pub height: usize,
}

/// All partitions reachable from `mu` by adding a border strip of `k` boxes.
/// Runs the wrapping process on every row placement and keeps the shapes
/// that resolve to partitions. Ordered by placement row.
pub fn border_strips(mu: &Partition, k: u32) -> Vec<BorderStrip> {
    assert!(k >= 1, "strip size must be positive");
    let mut out = Vec::new();
    for i in 1..=mu.parts() + k as usize {
        let wrapped = wrap(&place_strip(mu, k, i));
        if let Some(diagram) = wrapped.young() {
            let height = strip_height(&diagram, mu);
            debug_assert_eq!(height, wrapped.move_count + 1);
            out.push(BorderStrip { diagram, height });
        }
    }
    out
}

/// Number of rows in which `outer` exceeds `inner`.
fn strip_height(outer: &Partition, inner: &Partition) -> usize {
    (1..=outer.parts())
        .filter(|&i| outer.row(i) > inner.row(i))
        .count()
}

/// Checks whether `outer` minus `inner` is a border strip: edge-connected,
/// free of 2x2 blocks, and nonempty. Returns the strip height when it is.
pub fn skew_border_strip(outer: &Partition, inner: &Partition) -> Option<usize> {
    if !outer.contains(inner) {
        return None;
    }
    let cells: Vec<(usize, u32)> = (1..=outer.parts())
        .flat_map(|i| {
            let lo = inner.row(i);
            let hi = outer.row(i);
            (lo..hi).map(move |j| (i, j + 1))
        })
        .collect();
    if cells.is_empty() {
        return None;
    }
    // No 2x2 block: a cell and its right, lower, lower-right neighbours.
    let has = |i: usize, j: u32| inner.row(i) < j && j <= outer.row(i);
    for &(i, j) in &cells {
        if has(i, j + 1) && has(i + 1, j) && has(i + 1, j + 1) {
            return None;
        }
    }
    // Edge connectivity by flood fill from the first cell.
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![cells[0]];
    seen.insert(cells[0]);
    while let Some((i, j)) = stack.pop() {
        let mut neighbours = vec![(i, j + 1), (i + 1, j)];
        if j > 1 {
            neighbours.push((i, j - 1));
        }
        if i > 1 {
            neighbours.push((i - 1, j));
        }
        for (ni, nj) in neighbours {
            if has(ni, nj) && seen.insert((ni, nj)) {
                stack.push((ni, nj));
            }
        }
    }
    if seen.len() != cells.len() {
        return None;
    }
    Some(strip_height(outer, inner))
}

/// Slow route to the same set as [`border_strips`]: scan every partition of
/// |mu| + k and keep those whose skew over `mu` is a border strip. Used as
/// an oracle in tests.
pub fn border_strips_direct(mu: &Partition, k: u32) -> Vec<BorderStrip> {
    assert!(k >= 1);
    partitions(mu.size() + k)
        .into_iter()
        .filter_map(|outer| {
            skew_border_strip(&outer, mu).map(|height| BorderStrip { diagram: outer, height })
        })
        .collect()
}

/// All partitions of `n` in reverse-lexicographic order ([n] first).
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { rows: current.clone() });
        return;
    }
    let top = remaining.min(max_part);
    for part in (1..=top).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// Partitions of `n` with at most two rows, ordered by ascending second row.
pub fn two_row_partitions(n: u32) -> Vec<Partition> {
    (0..=n / 2)
        .map(|b| {
            if b == 0 {
                if n == 0 {
                    Partition::empty()
                } else {
                    Partition::new(vec![n])
                }
            } else {
                Partition::new(vec![n - b, b])
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[u32]) -> Partition {
        Partition::new(rows.to_vec())
    }

    #[test]
    fn hook_numbers_match_hand_values() {
        assert_eq!(p(&[3, 2]).hook_numbers(), vec![4, 2]);
        assert_eq!(PreDiagram::new(vec![1, 0, 2]).hook_numbers(), vec![3, 1, 2]);
        assert_eq!(p(&[]).hook_numbers(), Vec::<i64>::new());
    }

    #[test]
    fn content_sum_hand_values() {
        // [3,2]: row 1 gives 0-1-2, row 2 gives 1+0.
        assert_eq!(p(&[3, 2]).content_sum(), -2);
        assert_eq!(p(&[1]).content_sum(), 0);
        assert_eq!(p(&[]).content_sum(), 0);
        // One-row diagram: 0-1-...-(n-1).
        assert_eq!(p(&[5]).content_sum(), -10);
        // One-column diagram: 0+1+...+(n-1).
        assert_eq!(p(&[1, 1, 1, 1, 1]).content_sum(), 10);
    }

    #[test]
    fn place_strip_cases() {
        assert_eq!(place_strip(&p(&[3, 2]), 2, 1).rows(), &[5, 2]);
        assert_eq!(place_strip(&p(&[3, 2]), 2, 2).rows(), &[3, 4]);
        assert_eq!(place_strip(&p(&[3, 2]), 2, 4).rows(), &[3, 2, 0, 2]);
        assert_eq!(place_strip(&p(&[]), 3, 1).rows(), &[3]);
        assert_eq!(place_strip(&p(&[]), 3, 2).rows(), &[0, 3]);
    }

    #[test]
    #[should_panic]
    fn place_strip_rejects_low_row() {
        place_strip(&p(&[2]), 1, 0);
    }

    #[test]
    #[should_panic]
    fn place_strip_rejects_high_row() {
        place_strip(&p(&[2]), 1, 3);
    }

    #[test]
    fn wrap_spec_sequence() {
        let r = wrap(&PreDiagram::new(vec![3, 2, 0, 5]));
        assert_eq!(r.final_shape.rows(), &[3, 3, 3, 1]);
        assert_eq!(r.move_count, 2);
        assert!(r.is_young);
    }

    #[test]
    fn wrap_detects_non_young() {
        // Hook numbers 2,2 collide, so this can never resolve.
        let r = wrap(&PreDiagram::new(vec![1, 2]));
        assert!(!r.is_young);
        assert_eq!(r.move_count, 0);
    }

    #[test]
    fn wrap_identity_on_partitions() {
        let r = wrap(&PreDiagram::from(&p(&[4, 2, 1])));
        assert!(r.is_young);
        assert_eq!(r.move_count, 0);
        assert_eq!(r.young().unwrap(), p(&[4, 2, 1]));
    }

    #[test]
    fn wrap_empty() {
        let r = wrap(&PreDiagram::new(vec![]));
        assert!(r.is_young);
        assert_eq!(r.move_count, 0);
    }

    #[test]
    fn border_strips_spec_examples() {
        let got = border_strips(&p(&[5, 3]), 3);
        let want = vec![
            (p(&[8, 3]), 1),
            (p(&[5, 3, 3]), 1),
            (p(&[5, 3, 2, 1]), 2),
            (p(&[5, 3, 1, 1, 1]), 3),
        ];
        assert_eq!(got.len(), want.len());
        for (bs, (d, h)) in got.iter().zip(want) {
            assert_eq!(bs.diagram, d);
            assert_eq!(bs.height, h);
        }

        let got = border_strips(&p(&[1]), 2);
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].diagram, p(&[3]));
        assert_eq!(got[0].height, 1);
        assert_eq!(got[1].diagram, p(&[1, 1, 1]));
        assert_eq!(got[1].height, 2);

        // Adding to the empty diagram yields exactly the hooks.
        let got = border_strips(&Partition::empty(), 4);
        let hooks: Vec<Partition> = vec![
            p(&[4]),
            p(&[3, 1]),
            p(&[2, 1, 1]),
            p(&[1, 1, 1, 1]),
        ];
        assert_eq!(got.iter().map(|b| b.diagram.clone()).collect::<Vec<_>>(), hooks);
        assert_eq!(got.iter().map(|b| b.height).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn skew_checker_rejects_disconnected_and_square() {
        // [2,1] over [1]: cells (1,2) and (2,1) touch only at a corner.
        assert_eq!(skew_border_strip(&p(&[2, 1]), &p(&[1])), None);
        // [2,2] over []: contains a 2x2 block.
        assert_eq!(skew_border_strip(&p(&[2, 2]), &Partition::empty()), None);
        // [3,1] over []: hook, fine.
        assert_eq!(skew_border_strip(&p(&[3, 1]), &Partition::empty()), Some(2));
        // Empty skew is not a strip.
        assert_eq!(skew_border_strip(&p(&[2]), &p(&[2])), None);
    }

    #[test]
    fn partition_count_small() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        // Reverse-lexicographic start and end.
        let ps = partitions(4);
        assert_eq!(ps[0], p(&[4]));
        assert_eq!(ps[1], p(&[3, 1]));
        assert_eq!(ps[4], p(&[1, 1, 1, 1]));
    }

    #[test]
    fn two_row_enumeration() {
        let ps = two_row_partitions(5);
        assert_eq!(ps, vec![p(&[5]), p(&[4, 1]), p(&[3, 2])]);
        assert_eq!(two_row_partitions(0), vec![Partition::empty()]);
    }
}
