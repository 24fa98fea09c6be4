//! Square-lattice paths, their algebraic area and their winding sectors.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Right,
    Left,
    Up,
    Down,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::Right, Step::Left, Step::Up, Step::Down];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::Right => (1, 0),
            Step::Left => (-1, 0),
            Step::Up => (0, 1),
            Step::Down => (0, -1),
        }
    }

    fn letter(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Left => 'L',
            Step::Up => 'U',
            Step::Down => 'D',
        }
    }
}

/// A walk on the square lattice starting at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        let (x, y) = self.steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.delta();
            (x + dx, y + dy)
        });
        x == 0 && y == 0
    }

    /// Vertices visited, including the start and the end.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut pos = (0, 0);
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(pos);
        for s in &self.steps {
            let (dx, dy) = s.delta();
            pos = (pos.0 + dx, pos.1 + dy);
            out.push(pos);
        }
        out
    }

    fn require_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("path {self} is not closed")))
        }
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c.to_ascii_uppercase() {
                'R' => Ok(Step::Right),
                'L' => Ok(Step::Left),
                'U' => Ok(Step::Up),
                'D' => Ok(Step::Down),
                other => Err(Error::InvalidInput(format!("unknown step {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePath::new)
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

/// Signed enclosed area as the discrete line integral `sum x dy`.
/// A counterclockwise unit square has area `+1`.
pub fn algebraic_area(path: &LatticePath) -> Result<i64> {
    path.require_closed()?;
    let mut x = 0i64;
    let mut area = 0i64;
    for s in path.steps() {
        match s {
            Step::Right => x += 1,
            Step::Left => x -= 1,
            Step::Up => area += x,
            Step::Down => area -= x,
        }
    }
    Ok(area)
}

/// Vertical edges keyed by their lower endpoint, with the net number of
/// upward traversals.
fn vertical_crossings(path: &LatticePath) -> HashMap<(i64, i64), i64> {
    let mut edges: HashMap<(i64, i64), i64> = HashMap::new();
    let verts = path.vertices();
    for (w, s) in verts.windows(2).zip(path.steps()) {
        match s {
            Step::Up => *edges.entry(w[0]).or_default() += 1,
            Step::Down => *edges.entry(w[1]).or_default() -= 1,
            _ => {}
        }
    }
    edges.retain(|_, v| *v != 0);
    edges
}

/// Winding number of every cell in the bounding box, keyed by the cell's
/// lower-left corner. Computed with a rightward ray from each cell centre.
pub fn winding_numbers(path: &LatticePath) -> Result<BTreeMap<(i64, i64), i64>> {
    path.require_closed()?;
    let verts = path.vertices();
    let (mut x0, mut x1, mut y0, mut y1) = (0, 0, 0, 0);
    for &(x, y) in &verts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let mut rows: HashMap<i64, Vec<(i64, i64)>> = HashMap::new();
    for ((ex, ey), dir) in vertical_crossings(path) {
        rows.entry(ey).or_default().push((ex, dir));
    }
    let mut out = BTreeMap::new();
    for cy in y0..y1 {
        let row = rows.get(&cy).map(Vec::as_slice).unwrap_or(&[]);
        for cx in x0..x1 {
            // ray from (cx + 1/2, cy + 1/2) towards +x crosses edges with ex > cx
            let w: i64 = row.iter().filter(|(ex, _)| *ex > cx).map(|(_, d)| d).sum();
            out.insert((cx, cy), w);
        }
    }
    Ok(out)
}

/// `m -> S_m`: number of cells with winding number `m`, for `m != 0`.
pub fn winding_decomposition(path: &LatticePath) -> Result<BTreeMap<i64, u64>> {
    let mut out = BTreeMap::new();
    for (_, w) in winding_numbers(path)? {
        if w != 0 {
            *out.entry(w).or_insert(0u64) += 1;
        }
    }
    Ok(out)
}

/// A maximal connected set of cells sharing one winding number, where two
/// neighbouring cells are connected unless the path runs along their shared
/// edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingSector {
    pub winding: i64,
    pub cells: usize,
    /// Whether the sector reaches the outside of the bounding box.
    pub unbounded: bool,
}

/// All winding sectors enclosed by the path, including zero-winding sectors
/// cut off from the outside. The unbounded zero sector is omitted.
pub fn winding_sectors(path: &LatticePath) -> Result<Vec<WindingSector>> {
    let cells = winding_numbers(path)?;
    let verts = path.vertices();
    let mut used: HashSet<((i64, i64), (i64, i64))> = HashSet::new();
    for w in verts.windows(2) {
        let (a, b) = if w[0] <= w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
        used.insert((a, b));
    }
    // shared edge between horizontally or vertically adjacent cells
    let separated = |c: (i64, i64), d: (i64, i64)| -> bool {
        let edge = if c.0 != d.0 {
            let x = c.0.max(d.0);
            ((x, c.1), (x, c.1 + 1))
        } else {
            let y = c.1.max(d.1);
            ((c.0, y), (c.0 + 1, y))
        };
        used.contains(&edge)
    };

    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    let mut sectors = Vec::new();
    for (&start, &w) in &cells {
        if !seen.insert(start) {
            continue;
        }
        let mut stack = vec![start];
        let mut size = 0usize;
        let mut unbounded = false;
        while let Some(c) = stack.pop() {
            size += 1;
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let d = (c.0 + dx, c.1 + dy);
                let Some(&wd) = cells.get(&d) else {
                    if !separated(c, d) {
                        unbounded = true;
                    }
                    continue;
                };
                if wd == w && !separated(c, d) && seen.insert(d) {
                    stack.push(d);
                }
            }
        }
        if w == 0 && unbounded {
            continue;
        }
        sectors.push(WindingSector {
            winding: w,
            cells: size,
            unbounded,
        });
    }
    sectors.sort_by(|a, b| b.winding.cmp(&a.winding).then(b.cells.cmp(&a.cells)));
    Ok(sectors)
}
