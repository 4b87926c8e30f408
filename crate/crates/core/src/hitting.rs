//! Minimum-weight hitting sets over at most 64 elements by branch and bound.
//!
//! Solutions are ordered by (weight, cardinality, sorted element sequence), so
//! the result is canonical. Callers that only know some of the ranges up front
//! run [`solve_lazily`], which adds violated ranges until the answer checks out.

use num_traits::Zero;

use crate::graph::Weight;

/// Mask of elements, bit i = element i.
pub(crate) type Mask = u64;

pub(crate) fn mask_of(items: impl IntoIterator<Item = usize>) -> Mask {
    items.into_iter().fold(0, |m, i| m | 1 << i)
}

pub(crate) fn elements(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Lexicographic comparison of two equal-size sets as sorted sequences.
fn lex_less(a: Mask, b: Mask) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

struct Search<'a> {
    weights: &'a [Weight],
    ranges: &'a [Mask],
    best: Option<(Weight, u32, Mask)>,
}

impl Search<'_> {
    fn better(&self, w: &Weight, k: u32, m: Mask) -> bool {
        match &self.best {
            None => true,
            Some((bw, bk, bm)) => (w, k) < (bw, *bk) || ((w, k) == (bw, *bk) && lex_less(m, *bm)),
        }
    }

    fn run(&mut self, chosen: Mask, excluded: Mask, w: Weight) {
        let k = chosen.count_ones();
        let mut open: Vec<Mask> = self
            .ranges
            .iter()
            .filter(|&&r| r & chosen == 0)
            .map(|&r| r & !excluded)
            .collect();
        if open.is_empty() {
            if self.better(&w, k, chosen) {
                self.best = Some((w, k, chosen));
            }
            return;
        }
        if open.iter().any(|&r| r == 0) {
            return;
        }
        open.sort_unstable_by_key(|r| (r.count_ones(), *r));
        open.dedup();
        // Disjoint ranges each need their own element.
        let mut used: Mask = 0;
        let mut lb_w = w.clone();
        let mut lb_k = k;
        for &r in &open {
            if r & used == 0 {
                used |= r;
                lb_k += 1;
                lb_w += elements(r)
                    .map(|i| self.weights[i])
                    .min()
                    .expect("nonempty range");
            }
        }
        if let Some((bw, bk, _)) = &self.best {
            if (&lb_w, lb_k) > (bw, *bk) {
                return;
            }
        }
        let branch = open[0];
        let mut skip: Mask = 0;
        for v in elements(branch) {
            self.run(chosen | 1 << v, excluded | skip, w + self.weights[v]);
            skip |= 1 << v;
        }
    }
}

/// Best hitting set of `ranges`, or `None` when some range is empty.
pub(crate) fn min_hitting_set(weights: &[Weight], ranges: &[Mask]) -> Option<Mask> {
    debug_assert!(weights.len() <= 64);
    if ranges.iter().any(|&r| r == 0) {
        return None;
    }
    let mut search = Search {
        weights,
        ranges,
        best: None,
    };
    search.run(0, 0, Weight::zero());
    search.best.map(|(_, _, m)| m)
}

/// Repeats: solve on the known ranges, ask `violated` for a range the answer
/// misses, add it. Returns the first answer `violated` accepts, which is then
/// optimal for the full (implicit) family.
pub(crate) fn solve_lazily<E>(
    weights: &[Weight],
    mut ranges: Vec<Mask>,
    mut violated: impl FnMut(Mask) -> Result<Option<Mask>, E>,
) -> Result<Option<(Mask, usize)>, E> {
    loop {
        let Some(sol) = min_hitting_set(weights, &ranges) else {
            return Ok(None);
        };
        match violated(sol)? {
            None => return Ok(Some((sol, ranges.len()))),
            Some(r) => {
                debug_assert!(r & sol == 0, "violated range must miss the solution");
                ranges.push(r);
            }
        }
    }
}
