//! Wang tile sets, validity checking, NW-determinism, and exact tiling
//! search over rectangles and tori.
//!
//! Coordinates follow the convention that `y + 1` lies to the north, so a
//! vertical adjacency requires `north(x, y) = south(x, y + 1)` and a
//! horizontal one `east(x, y) = west(x + 1, y)`. Rectangle boundaries are
//! free; torus adjacencies wrap around, so a torus tiling extends
//! periodically to a valid tiling of the whole plane.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WangError {
    #[error("palette must be nonempty")]
    EmptyPalette,
    #[error("duplicate color `{0}`")]
    DuplicateColor(String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("tile set must contain at least one tile")]
    NoTiles,
    #[error("duplicate tile name `{0}`")]
    DuplicateTile(String),
    #[error("unknown tile name `{0}`")]
    UnknownTile(String),
    #[error("invalid name `{0}`: {1}")]
    BadName(String, &'static str),
    #[error("grid dimensions must be at least 1")]
    BadDimensions,
    #[error("grid has {got} entries, expected {expected}")]
    BadGridSize { got: usize, expected: usize },
}

/// Interned color index within one tile set's palette.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ColorId(pub(crate) u16);

impl ColorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A unit square with colored edges.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Tile {
    pub north: ColorId,
    pub south: ColorId,
    pub east: ColorId,
    pub west: ColorId,
}

fn check_name(name: &str, reserve_underscore: bool) -> Result<(), WangError> {
    if name.is_empty() {
        return Err(WangError::BadName(name.into(), "empty"));
    }
    if name.chars().any(|c| c.is_whitespace() || matches!(c, '#' | ':' | ',' | '/')) {
        return Err(WangError::BadName(
            name.into(),
            "must not contain whitespace or any of `# : , /`",
        ));
    }
    // `->` is a token of the text formats; a name containing it could not
    // be parsed back.
    if name.contains("->") {
        return Err(WangError::BadName(name.into(), "must not contain `->`"));
    }
    if reserve_underscore && name.starts_with('_') {
        return Err(WangError::BadName(
            name.into(),
            "names starting with `_` are reserved",
        ));
    }
    Ok(())
}

/// An ordered, named, finite set of Wang tiles over a declared palette.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSet {
    palette: Vec<String>,
    color_index: HashMap<String, ColorId>,
    names: Vec<String>,
    name_index: HashMap<String, usize>,
    tiles: Vec<Tile>,
}

impl TileSet {
    /// Builds a tile set from color names. Tiles are given as
    /// `(name, north, south, east, west)`.
    pub fn new(
        palette: &[&str],
        tiles: &[(&str, &str, &str, &str, &str)],
    ) -> Result<TileSet, WangError> {
        if palette.is_empty() {
            return Err(WangError::EmptyPalette);
        }
        let mut color_index = HashMap::new();
        for (i, c) in palette.iter().enumerate() {
            check_name(c, false)?;
            if color_index.insert((*c).to_owned(), ColorId(i as u16)).is_some() {
                return Err(WangError::DuplicateColor((*c).to_owned()));
            }
        }
        if tiles.is_empty() {
            return Err(WangError::NoTiles);
        }
        let mut names = Vec::new();
        let mut name_index = HashMap::new();
        let mut built = Vec::new();
        for (name, n, s, e, w) in tiles {
            check_name(name, true)?;
            if name_index.insert((*name).to_owned(), names.len()).is_some() {
                return Err(WangError::DuplicateTile((*name).to_owned()));
            }
            let color = |c: &str| {
                color_index
                    .get(c)
                    .copied()
                    .ok_or_else(|| WangError::UnknownColor(c.to_owned()))
            };
            built.push(Tile {
                north: color(n)?,
                south: color(s)?,
                east: color(e)?,
                west: color(w)?,
            });
            names.push((*name).to_owned());
        }
        Ok(TileSet {
            palette: palette.iter().map(|s| (*s).to_owned()).collect(),
            color_index,
            names,
            name_index,
            tiles: built,
        })
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn tile(&self, index: usize) -> &Tile {
        &self.tiles[index]
    }

    pub fn tile_name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn tile_names(&self) -> &[String] {
        &self.names
    }

    pub fn find_tile(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    pub fn palette(&self) -> &[String] {
        &self.palette
    }

    pub fn color_name(&self, c: ColorId) -> &str {
        &self.palette[c.index()]
    }

    /// Looks up the unique tile with the given (north, west) colors, when
    /// the set is NW-deterministic.
    pub fn tile_by_north_west(&self, north: ColorId, west: ColorId) -> Option<usize> {
        self.tiles
            .iter()
            .position(|t| t.north == north && t.west == west)
    }
}

/// A filled rectangle. `grid[y * width + x]` is a tile index; `y` increases
/// northward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectTiling {
    pub width: usize,
    pub height: usize,
    grid: Vec<usize>,
}

impl RectTiling {
    pub fn new(width: usize, height: usize, grid: Vec<usize>) -> Result<RectTiling, WangError> {
        if width == 0 || height == 0 {
            return Err(WangError::BadDimensions);
        }
        if grid.len() != width * height {
            return Err(WangError::BadGridSize {
                got: grid.len(),
                expected: width * height,
            });
        }
        Ok(RectTiling { width, height, grid })
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.grid[y * self.width + x]
    }

    pub fn tiles(&self) -> &[usize] {
        &self.grid
    }
}

/// A filled torus of periods `px × py`; indexing wraps, so the periodic
/// extension covers the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusTiling {
    pub px: usize,
    pub py: usize,
    grid: Vec<usize>,
}

impl TorusTiling {
    pub fn new(px: usize, py: usize, grid: Vec<usize>) -> Result<TorusTiling, WangError> {
        if px == 0 || py == 0 {
            return Err(WangError::BadDimensions);
        }
        if grid.len() != px * py {
            return Err(WangError::BadGridSize {
                got: grid.len(),
                expected: px * py,
            });
        }
        Ok(TorusTiling { px, py, grid })
    }

    /// Tile of the periodic extension at any integer point.
    pub fn get(&self, x: i64, y: i64) -> usize {
        let xm = x.rem_euclid(self.px as i64) as usize;
        let ym = y.rem_euclid(self.py as i64) as usize;
        self.grid[ym * self.px + xm]
    }

    pub fn tiles(&self) -> &[usize] {
        &self.grid
    }

    /// Restriction of the periodic extension to a `width × height` window
    /// whose south-west corner sits at `(x0, y0)`.
    pub fn window(&self, x0: i64, y0: i64, width: usize, height: usize) -> RectTiling {
        let mut grid = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                grid.push(self.get(x0 + x as i64, y0 + y as i64));
            }
        }
        RectTiling {
            width,
            height,
            grid,
        }
    }
}

/// One violated adjacency, with the coordinates of the south/west cell of
/// the pair and the two mismatched colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyViolation {
    pub x: i64,
    pub y: i64,
    /// True for a north/south mismatch, false for east/west.
    pub vertical: bool,
    pub colors: (ColorId, ColorId),
}

fn check_pair(
    ts: &TileSet,
    a: usize,
    b: usize,
    x: i64,
    y: i64,
    vertical: bool,
    violations: &mut Vec<AdjacencyViolation>,
) {
    let (ca, cb) = if vertical {
        (ts.tile(a).north, ts.tile(b).south)
    } else {
        (ts.tile(a).east, ts.tile(b).west)
    };
    if ca != cb {
        violations.push(AdjacencyViolation {
            x,
            y,
            vertical,
            colors: (ca, cb),
        });
    }
}

/// Checks every interior adjacency of a rectangle. Boundary edges are
/// unconstrained.
pub fn validate_rect_tiling(ts: &TileSet, t: &RectTiling) -> Result<(), Vec<AdjacencyViolation>> {
    let mut violations = Vec::new();
    for y in 0..t.height {
        for x in 0..t.width {
            if y + 1 < t.height {
                check_pair(ts, t.get(x, y), t.get(x, y + 1), x as i64, y as i64, true, &mut violations);
            }
            if x + 1 < t.width {
                check_pair(ts, t.get(x, y), t.get(x + 1, y), x as i64, y as i64, false, &mut violations);
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Checks every adjacency of a torus, wraparound pairs included.
pub fn validate_torus_tiling(ts: &TileSet, t: &TorusTiling) -> Result<(), Vec<AdjacencyViolation>> {
    let mut violations = Vec::new();
    for y in 0..t.py as i64 {
        for x in 0..t.px as i64 {
            check_pair(ts, t.get(x, y), t.get(x, y + 1), x, y, true, &mut violations);
            check_pair(ts, t.get(x, y), t.get(x + 1, y), x, y, false, &mut violations);
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A pair of distinct tiles sharing north and west colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NwConflict {
    pub first: usize,
    pub second: usize,
}

/// A tile set is NW-deterministic when the map `tile ↦ (north, west)` is
/// injective. Returns the first conflicting pair in declaration order.
pub fn is_nw_deterministic(ts: &TileSet) -> Result<(), NwConflict> {
    let mut seen: HashMap<(ColorId, ColorId), usize> = HashMap::new();
    for (i, tile) in ts.tiles.iter().enumerate() {
        if let Some(&first) = seen.get(&(tile.north, tile.west)) {
            return Err(NwConflict { first, second: i });
        }
        seen.insert((tile.north, tile.west), i);
    }
    Ok(())
}

/// Search result distinguishing a proven absence from an exhausted budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome<T> {
    Found(T),
    /// The search space was exhausted: no solution exists within the stated
    /// bounds.
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Tile placements attempted.
    pub nodes: u64,
}

/// Candidate tiles per (west constraint, south constraint), in declaration
/// order. `None` means the corresponding side is unconstrained.
struct Candidates {
    all: Vec<usize>,
    by_west: Vec<Vec<usize>>,
    by_south: Vec<Vec<usize>>,
    by_both: HashMap<(ColorId, ColorId), Vec<usize>>,
}

impl Candidates {
    fn new(ts: &TileSet) -> Candidates {
        let ncolors = ts.palette.len();
        let mut by_west = vec![Vec::new(); ncolors];
        let mut by_south = vec![Vec::new(); ncolors];
        let mut by_both: HashMap<(ColorId, ColorId), Vec<usize>> = HashMap::new();
        for (i, t) in ts.tiles.iter().enumerate() {
            by_west[t.west.index()].push(i);
            by_south[t.south.index()].push(i);
            by_both.entry((t.west, t.south)).or_default().push(i);
        }
        Candidates {
            all: (0..ts.len()).collect(),
            by_west,
            by_south,
            by_both,
        }
    }

    fn get(&self, west: Option<ColorId>, south: Option<ColorId>) -> &[usize] {
        static EMPTY: &[usize] = &[];
        match (west, south) {
            (None, None) => &self.all,
            (Some(w), None) => &self.by_west[w.index()],
            (None, Some(s)) => &self.by_south[s.index()],
            (Some(w), Some(s)) => self.by_both.get(&(w, s)).map_or(EMPTY, |v| v.as_slice()),
        }
    }
}

/// Exact backtracking search for a valid `width × height` rectangle, cells
/// in raster order (west to east, then south to north). Returns `Exhausted`
/// only after proving no assignment exists.
pub fn tile_rectangle(
    ts: &TileSet,
    width: usize,
    height: usize,
    node_budget: u64,
) -> (SolveOutcome<RectTiling>, SearchStats) {
    let mut stats = SearchStats::default();
    if width == 0 || height == 0 {
        return (SolveOutcome::Exhausted, stats);
    }
    let cand = Candidates::new(ts);
    let cells = width * height;
    let mut grid: Vec<usize> = vec![usize::MAX; cells];
    // choice[i] = index into the candidate list of cell i.
    let mut choice: Vec<usize> = vec![0; cells];
    let mut pos = 0usize;
    loop {
        if pos == cells {
            let tiling = RectTiling {
                width,
                height,
                grid,
            };
            debug_assert!(validate_rect_tiling(ts, &tiling).is_ok());
            return (SolveOutcome::Found(tiling), stats);
        }
        let (x, y) = (pos % width, pos / width);
        let west = if x > 0 {
            Some(ts.tile(grid[pos - 1]).east)
        } else {
            None
        };
        let south = if y > 0 {
            Some(ts.tile(grid[pos - width]).north)
        } else {
            None
        };
        let list = cand.get(west, south);
        if choice[pos] < list.len() {
            if stats.nodes >= node_budget {
                return (SolveOutcome::BudgetExceeded, stats);
            }
            stats.nodes += 1;
            grid[pos] = list[choice[pos]];
            choice[pos] += 1;
            pos += 1;
            if pos < cells {
                choice[pos] = 0;
            }
        } else {
            // Exhausted this cell; backtrack.
            if pos == 0 {
                return (SolveOutcome::Exhausted, stats);
            }
            grid[pos] = usize::MAX;
            pos -= 1;
        }
    }
}

/// Backtracking on a fixed `px × py` torus: same raster order, plus the
/// wraparound checks once a row or column closes.
fn solve_torus_fixed(
    ts: &TileSet,
    px: usize,
    py: usize,
    stats: &mut SearchStats,
    node_budget: u64,
) -> SolveOutcome<TorusTiling> {
    let cand = Candidates::new(ts);
    let cells = px * py;
    let mut grid: Vec<usize> = vec![usize::MAX; cells];
    let mut choice: Vec<usize> = vec![0; cells];
    let mut pos = 0usize;
    loop {
        if pos == cells {
            let tiling = TorusTiling { px, py, grid };
            debug_assert!(validate_torus_tiling(ts, &tiling).is_ok());
            return SolveOutcome::Found(tiling);
        }
        let (x, y) = (pos % px, pos / px);
        let west = if x > 0 {
            Some(ts.tile(grid[pos - 1]).east)
        } else {
            None
        };
        let south = if y > 0 {
            Some(ts.tile(grid[pos - px]).north)
        } else {
            None
        };
        let list = cand.get(west, south);
        let mut placed = false;
        while choice[pos] < list.len() {
            if stats.nodes >= node_budget {
                return SolveOutcome::BudgetExceeded;
            }
            stats.nodes += 1;
            let t = list[choice[pos]];
            choice[pos] += 1;
            let tile = ts.tile(t);
            // Wraparound constraints close against already-placed cells; on
            // a period-1 axis they close against the candidate itself.
            if x == px - 1 {
                let other = if px == 1 { t } else { grid[y * px] };
                if tile.east != ts.tile(other).west {
                    continue;
                }
            }
            if y == py - 1 {
                let other = if py == 1 { t } else { grid[x] };
                if tile.north != ts.tile(other).south {
                    continue;
                }
            }
            grid[pos] = t;
            pos += 1;
            if pos < cells {
                choice[pos] = 0;
            }
            placed = true;
            break;
        }
        if !placed {
            if pos == 0 {
                return SolveOutcome::Exhausted;
            }
            grid[pos] = usize::MAX;
            pos -= 1;
        }
    }
}

/// Searches periods `(px, py)` with `px ≤ max_px`, `py ≤ max_py` in order of
/// increasing `px · py`, ties broken by smaller `px`. Any returned torus is
/// valid and certifies a valid tiling of the whole plane.
pub fn find_torus_tiling(
    ts: &TileSet,
    max_px: usize,
    max_py: usize,
    node_budget: u64,
) -> (SolveOutcome<TorusTiling>, SearchStats) {
    let mut stats = SearchStats::default();
    if max_px == 0 || max_py == 0 {
        return (SolveOutcome::Exhausted, stats);
    }
    let mut periods: Vec<(usize, usize)> = (1..=max_px)
        .flat_map(|px| (1..=max_py).map(move |py| (px, py)))
        .collect();
    periods.sort_by_key(|&(px, py)| (px * py, px));
    for (px, py) in periods {
        match solve_torus_fixed(ts, px, py, &mut stats, node_budget) {
            SolveOutcome::Found(t) => return (SolveOutcome::Found(t), stats),
            SolveOutcome::Exhausted => continue,
            SolveOutcome::BudgetExceeded => return (SolveOutcome::BudgetExceeded, stats),
        }
    }
    (SolveOutcome::Exhausted, stats)
}

/// Outcome of the least-untileable-square search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeastNOutcome {
    /// The `(n+1) × (n+1)` square `{0, …, n}²` is untileable and every
    /// smaller square is tileable.
    Found { n: usize },
    /// Every square up to side `max_n + 1` is tileable.
    NoneUpToMax,
    /// The budget ran out while deciding side `at_n + 1`; the answer is
    /// unknown, which is distinct from `NoneUpToMax`.
    BudgetExceeded { at_n: usize },
}

/// Least `n ≤ max_n` such that the `(n+1) × (n+1)` square has no valid
/// tiling, each square decided by exhaustive search. The node budget is
/// shared across squares.
pub fn least_untileable_n(
    ts: &TileSet,
    max_n: usize,
    node_budget: u64,
) -> (LeastNOutcome, SearchStats) {
    let mut stats = SearchStats::default();
    for n in 0..=max_n {
        let side = n + 1;
        let remaining = node_budget.saturating_sub(stats.nodes);
        let (outcome, s) = tile_rectangle(ts, side, side, remaining);
        stats.nodes += s.nodes;
        match outcome {
            SolveOutcome::Found(_) => continue,
            SolveOutcome::Exhausted => return (LeastNOutcome::Found { n }, stats),
            SolveOutcome::BudgetExceeded => {
                return (LeastNOutcome::BudgetExceeded { at_n: n }, stats)
            }
        }
    }
    (LeastNOutcome::NoneUpToMax, stats)
}
