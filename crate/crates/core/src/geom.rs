//! Rectangle geometry engines: point-set emptiness, rectangle stabbing, a
//! dense-grid stabber, and an offline stabber for nested rectangle families
//! paired with permutation point sets.
//!
//! All coordinates are closed intervals of positive integers.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("inverted rectangle [{x1},{x2}]x[{y1},{y2}]")]
    InvertedRectangle { x1: u32, x2: u32, y1: u32, y2: u32 },
    #[error("coordinate {value} outside the declared grid bound {bound}")]
    CoordinateOutOfRange { value: u32, bound: u32 },
    #[error("rectangle {index} breaks the nesting order")]
    BrokenNesting { index: usize },
    #[error("point coordinates are not a permutation pairing of 1..={size}")]
    NotAPermutation { size: usize },
}

/// Axis-aligned rectangle with closed bounds; construction rejects inverted
/// intervals, so a `Rect` is never empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x1: u32,
    pub x2: u32,
    pub y1: u32,
    pub y2: u32,
}

impl Rect {
    pub fn new(x1: u32, x2: u32, y1: u32, y2: u32) -> Result<Rect, GeomError> {
        if x1 > x2 || y1 > y2 {
            return Err(GeomError::InvertedRectangle { x1, x2, y1, y2 });
        }
        Ok(Rect { x1, x2, y1, y2 })
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        self.x1 <= x && x <= self.x2 && self.y1 <= y && y <= self.y2
    }
}

/// Static point set answering "does any point lie in this rectangle?" via a
/// merge-sort tree: O(n log n) build, O(log² n) query.
pub struct PointEmptiness {
    size: usize,
    xs: Vec<u32>,
    // iterative segment tree: leaf i at size+i holds that point's y; an
    // internal node holds the sorted merge of its children
    ys: Vec<Vec<u32>>,
}

impl PointEmptiness {
    pub fn build(points: &[(u32, u32)]) -> PointEmptiness {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        let size = pts.len();
        let mut ys = vec![Vec::new(); 2 * size.max(1)];
        for (i, &(_, y)) in pts.iter().enumerate() {
            ys[size + i] = vec![y];
        }
        for v in (1..size).rev() {
            let (left, right) = (&ys[2 * v], &ys[2 * v + 1]);
            let mut merged = Vec::with_capacity(left.len() + right.len());
            let (mut a, mut b) = (0, 0);
            while a < left.len() && b < right.len() {
                if left[a] <= right[b] {
                    merged.push(left[a]);
                    a += 1;
                } else {
                    merged.push(right[b]);
                    b += 1;
                }
            }
            merged.extend_from_slice(&left[a..]);
            merged.extend_from_slice(&right[b..]);
            ys[v] = merged;
        }
        PointEmptiness {
            size,
            xs: pts.into_iter().map(|(x, _)| x).collect(),
            ys,
        }
    }

    /// True iff no point lies in the rectangle. Rectangles reaching outside
    /// the point range simply see fewer points.
    pub fn is_empty(&self, r: &Rect) -> bool {
        !self.contains_any(r)
    }

    pub fn contains_any(&self, r: &Rect) -> bool {
        if self.size == 0 {
            return false;
        }
        let any_y = |node: &Vec<u32>| {
            let at = node.partition_point(|&y| y < r.y1);
            at < node.len() && node[at] <= r.y2
        };
        let mut lo = self.xs.partition_point(|&x| x < r.x1) + self.size;
        let mut hi = self.xs.partition_point(|&x| x <= r.x2) + self.size;
        while lo < hi {
            if lo & 1 == 1 {
                if any_y(&self.ys[lo]) {
                    return true;
                }
                lo += 1;
            }
            if hi & 1 == 1 {
                hi -= 1;
                if any_y(&self.ys[hi]) {
                    return true;
                }
            }
            lo /= 2;
            hi /= 2;
        }
        false
    }
}

/// Static rectangle set answering "does any rectangle contain this point?"
/// via a segment tree over x whose nodes hold (y1, sorted) lists with
/// running maxima of y2: O(r log r) build, O(log² r) query.
pub struct RectStabbing {
    size: usize,
    // per tree node: rectangles assigned to the node's canonical x-range,
    // as (y1 sorted ascending, prefix-max of y2)
    lists: Vec<Vec<(u32, u32)>>,
}

impl RectStabbing {
    pub fn build(rects: &[Rect]) -> RectStabbing {
        let max_x = rects.iter().map(|r| r.x2).max().unwrap_or(0) as usize;
        let size = max_x.next_power_of_two().max(1);
        let mut lists: Vec<Vec<(u32, u32)>> = vec![Vec::new(); 2 * size];
        for r in rects {
            // canonical decomposition of [x1, x2] over leaves 1..=max_x
            let mut lo = r.x1 as usize - 1 + size;
            let mut hi = r.x2 as usize + size;
            while lo < hi {
                if lo & 1 == 1 {
                    lists[lo].push((r.y1, r.y2));
                    lo += 1;
                }
                if hi & 1 == 1 {
                    hi -= 1;
                    lists[hi].push((r.y1, r.y2));
                }
                lo /= 2;
                hi /= 2;
            }
        }
        for list in &mut lists {
            list.sort_unstable();
            let mut running = 0u32;
            for entry in list.iter_mut() {
                running = running.max(entry.1);
                entry.1 = running;
            }
        }
        RectStabbing { size, lists }
    }

    pub fn stabbed(&self, x: u32, y: u32) -> bool {
        if x == 0 || x as usize > self.size {
            return false;
        }
        let mut v = x as usize - 1 + self.size;
        loop {
            let list = &self.lists[v];
            let at = list.partition_point(|&(y1, _)| y1 <= y);
            if at > 0 && list[at - 1].1 >= y {
                return true;
            }
            if v == 1 {
                return false;
            }
            v /= 2;
        }
    }
}

/// Dense stabbing-count grid over [1,m]²: ±1 at rectangle corners, then 2d
/// prefix sums; O(m² + r) build, O(1) query.
pub struct GridStabbing {
    m: usize,
    // (m+2)² row-major; counts[x][y] = rectangles containing (x, y)
    counts: Vec<i32>,
}

impl GridStabbing {
    pub fn build<'a, I>(rects: I, m: usize) -> Result<GridStabbing, GeomError>
    where
        I: IntoIterator<Item = &'a Rect>,
    {
        let w = m + 2;
        let mut counts = vec![0i32; w * w];
        for r in rects {
            for &c in &[r.x1, r.x2, r.y1, r.y2] {
                if c == 0 || c as usize > m {
                    return Err(GeomError::CoordinateOutOfRange {
                        value: c,
                        bound: m as u32,
                    });
                }
            }
            let (x1, x2, y1, y2) = (r.x1 as usize, r.x2 as usize, r.y1 as usize, r.y2 as usize);
            counts[x1 * w + y1] += 1;
            counts[x1 * w + y2 + 1] -= 1;
            counts[(x2 + 1) * w + y1] -= 1;
            counts[(x2 + 1) * w + y2 + 1] += 1;
        }
        for x in 1..w {
            for y in 0..w {
                counts[x * w + y] += counts[(x - 1) * w + y];
            }
        }
        for x in 0..w {
            for y in 1..w {
                counts[x * w + y] += counts[x * w + y - 1];
            }
        }
        Ok(GridStabbing { m, counts })
    }

    /// Number of rectangles containing (x, y); coordinates up to m+1 are
    /// addressable and the padding row/column is always zero.
    pub fn count(&self, x: u32, y: u32) -> u32 {
        let w = self.m + 2;
        assert!(
            (1..w).contains(&(x as usize)) && (1..w).contains(&(y as usize)),
            "grid coordinate out of range"
        );
        self.counts[x as usize * w + y as usize] as u32
    }

    pub fn stabbed(&self, x: u32, y: u32) -> bool {
        self.count(x, y) > 0
    }
}

/// Offline stabbing for a nested family: x-intervals non-increasing under
/// inclusion, y-intervals non-decreasing, points a permutation pairing of
/// [1,h]². Returns one bool per point in O(h + r).
pub fn nested_stab_offline(
    points: &[(u32, u32)],
    rects: &[Rect],
) -> Result<Vec<bool>, GeomError> {
    let h = points.len();
    let mut x_of_y = vec![0u32; h + 1];
    let mut point_at_x = vec![usize::MAX; h + 1];
    {
        let mut seen_x = vec![false; h + 1];
        let mut seen_y = vec![false; h + 1];
        for (q, &(x, y)) in points.iter().enumerate() {
            let ok = (1..=h as u32).contains(&x)
                && (1..=h as u32).contains(&y)
                && !seen_x[x as usize]
                && !seen_y[y as usize];
            if !ok {
                return Err(GeomError::NotAPermutation { size: h });
            }
            seen_x[x as usize] = true;
            seen_y[y as usize] = true;
            x_of_y[y as usize] = x;
            point_at_x[x as usize] = q;
        }
    }
    for (index, r) in rects.iter().enumerate() {
        for &c in &[r.x1, r.x2, r.y1, r.y2] {
            if c == 0 || c as usize > h {
                return Err(GeomError::CoordinateOutOfRange {
                    value: c,
                    bound: h as u32,
                });
            }
        }
        if index > 0 {
            let p = &rects[index - 1];
            let x_nested = p.x1 <= r.x1 && r.x2 <= p.x2;
            let y_nested = r.y1 <= p.y1 && p.y2 <= r.y2;
            if !x_nested || !y_nested {
                return Err(GeomError::BrokenNesting { index });
            }
        }
    }

    let mut stabbed = vec![false; h];
    let Some(first) = rects.first() else {
        return Ok(stabbed);
    };
    // live[x] says x is inside the current (shrinking) x-interval; each x is
    // set once and cleared at most once, and each y enters the (growing)
    // y-interval once, so the sweep is O(h + r) in total
    let mut live = vec![false; h + 1];
    for x in first.x1..=first.x2 {
        live[x as usize] = true;
    }
    let (mut cur_x1, mut cur_x2) = (first.x1, first.x2);
    let (mut cur_y1, mut cur_y2) = (first.y1, first.y2);
    let check_entered = |y: u32, live: &[bool], out: &mut [bool]| {
        let x = x_of_y[y as usize];
        if x != 0 && live[x as usize] {
            out[point_at_x[x as usize]] = true;
        }
    };
    for y in cur_y1..=cur_y2 {
        check_entered(y, &live, &mut stabbed);
    }
    for r in rects.iter().skip(1) {
        for x in cur_x1..r.x1 {
            live[x as usize] = false;
        }
        for x in (r.x2 + 1)..=cur_x2 {
            live[x as usize] = false;
        }
        (cur_x1, cur_x2) = (r.x1, r.x2);
        for y in r.y1..cur_y1 {
            check_entered(y, &live, &mut stabbed);
        }
        for y in (cur_y2 + 1)..=r.y2 {
            check_entered(y, &live, &mut stabbed);
        }
        (cur_y1, cur_y2) = (r.y1, r.y2);
    }
    Ok(stabbed)
}
