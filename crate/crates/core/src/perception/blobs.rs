use super::frame::BinaryFrame;

/// A 4-connected foreground component.
#[derive(Debug, Clone, PartialEq)]
pub struct Blob {
    /// Mean column of the component's pixels.
    pub centroid_x: f64,
    /// Mean row of the component's pixels.
    pub centroid_y: f64,
    pub min_row: usize,
    pub max_row: usize,
    pub min_col: usize,
    pub max_col: usize,
    pub area: usize,
    /// First pixel in row-major order, as `(row, col)`.
    pub first_pixel: (usize, usize),
}

impl Blob {
    pub fn bbox_height(&self) -> usize {
        self.max_row - self.min_row + 1
    }

    pub fn bbox_width(&self) -> usize {
        self.max_col - self.min_col + 1
    }

    /// Long side over short side of the bounding box.
    pub fn aspect(&self) -> f64 {
        let (h, w) = (self.bbox_height() as f64, self.bbox_width() as f64);
        h.max(w) / h.min(w)
    }
}

#[derive(Clone, Copy)]
struct Accum {
    area: usize,
    sum_row: u64,
    sum_col: u64,
    min_row: usize,
    max_row: usize,
    min_col: usize,
    max_col: usize,
    first: usize,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) -> u32 {
    let (ra, rb) = (find(parent, a), find(parent, b));
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi as usize] = lo;
    lo
}

/// Labels 4-connected foreground components with a two-pass union-find scan.
///
/// Blobs come back largest first; equal areas keep row-major order of their
/// first pixel.
pub fn detect_blobs(bf: &BinaryFrame) -> Vec<Blob> {
    let (h, w) = (bf.height(), bf.width());
    let cells = bf.cells();
    // label 0 is background
    let mut labels = vec![0u32; h * w];
    let mut parent: Vec<u32> = vec![0];

    for r in 0..h {
        for c in 0..w {
            let i = r * w + c;
            if !cells[i] {
                continue;
            }
            let up = if r > 0 { labels[i - w] } else { 0 };
            let left = if c > 0 { labels[i - 1] } else { 0 };
            labels[i] = match (up, left) {
                (0, 0) => {
                    let l = parent.len() as u32;
                    parent.push(l);
                    l
                }
                (u, 0) => u,
                (0, l) => l,
                (u, l) if u == l => u,
                (u, l) => union(&mut parent, u, l),
            };
        }
    }

    // Resolve roots and accumulate in first-pixel order.
    let mut slot = vec![usize::MAX; parent.len()];
    let mut acc: Vec<Accum> = Vec::new();
    for (i, &label) in labels.iter().enumerate() {
        if label == 0 {
            continue;
        }
        let root = find(&mut parent, label) as usize;
        let (r, c) = (i / w, i % w);
        if slot[root] == usize::MAX {
            slot[root] = acc.len();
            acc.push(Accum {
                area: 0,
                sum_row: 0,
                sum_col: 0,
                min_row: r,
                max_row: r,
                min_col: c,
                max_col: c,
                first: i,
            });
        }
        let a = &mut acc[slot[root]];
        a.area += 1;
        a.sum_row += r as u64;
        a.sum_col += c as u64;
        a.min_row = a.min_row.min(r);
        a.max_row = a.max_row.max(r);
        a.min_col = a.min_col.min(c);
        a.max_col = a.max_col.max(c);
    }

    let mut blobs: Vec<Blob> = acc
        .into_iter()
        .map(|a| Blob {
            centroid_x: a.sum_col as f64 / a.area as f64,
            centroid_y: a.sum_row as f64 / a.area as f64,
            min_row: a.min_row,
            max_row: a.max_row,
            min_col: a.min_col,
            max_col: a.max_col,
            area: a.area,
            first_pixel: (a.first / w, a.first % w),
        })
        .collect();
    // stable: ties stay in first-pixel order
    blobs.sort_by_key(|b| std::cmp::Reverse(b.area));
    blobs
}
