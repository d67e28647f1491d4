//! Wang tiles and their correspondence with automata.
//!
//! A tile `(N, W, S, E)` is read as the transition `W --S/N--> E`. Tile sets in
//! which west and south colors determine the tile (SW-deterministic) are
//! exactly automata whose states and letters are colors.
//!
//! Text format: a `colors` line followed by `tile <N> <W> <S> <E>` lines;
//! comment rules follow the automaton format.

use std::collections::HashMap;

use crate::automaton::{Automaton, LetterId, StateId, Symbols, Transition};
use crate::orbits::{orbit_word, path_in_transducer, GenLang, PathOutcome};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub north: usize,
    pub west: usize,
    pub south: usize,
    pub east: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSet {
    pub colors: Symbols,
    pub tiles: Vec<Tile>,
}

impl TileSet {
    pub fn parse(text: &str) -> Result<TileSet> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut colors: Option<Symbols> = None;
        let mut raw = Vec::new();
        for (i, l) in text.lines().enumerate() {
            let line = i + 1;
            let tokens: Vec<&str> = l.split_whitespace().collect();
            let Some(&keyword) = tokens.first() else { continue };
            if keyword.starts_with('#') {
                continue;
            }
            match keyword {
                "colors" => {
                    if colors.is_some() {
                        return Err(err(line, "repeated `colors` line".into()));
                    }
                    if tokens.len() == 1 {
                        return Err(err(line, "`colors` must not be empty".into()));
                    }
                    colors = Some(Symbols::from_names(tokens[1..].iter().copied()).map_err(|e| err(line, e.to_string()))?);
                }
                "tile" => {
                    if tokens.len() < 5 || tokens.get(5).is_some_and(|t| !t.starts_with('#')) {
                        return Err(err(line, "`tile` expects 4 colors".into()));
                    }
                    raw.push((line, [tokens[1], tokens[2], tokens[3], tokens[4]]));
                }
                other => return Err(err(line, format!("unknown keyword `{other}`"))),
            }
        }
        let colors = colors.ok_or_else(|| err(0, "missing `colors` line".into()))?;
        let mut tiles = Vec::with_capacity(raw.len());
        for (line, names) in raw {
            let c = |n: &str| colors.get(n).ok_or_else(|| err(line, format!("unknown color `{n}`")));
            tiles.push(Tile {
                north: c(names[0])?,
                west: c(names[1])?,
                south: c(names[2])?,
                east: c(names[3])?,
            });
        }
        Ok(TileSet { colors, tiles })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("colors");
        for c in self.colors.iter() {
            out.push(' ');
            out.push_str(c);
        }
        out.push('\n');
        for t in &self.tiles {
            out.push_str(&format!("tile {}\n", self.render_fields(t, " ")));
        }
        out
    }

    fn render_fields(&self, t: &Tile, sep: &str) -> String {
        [t.north, t.west, t.south, t.east]
            .iter()
            .map(|&c| self.colors.name(c))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// `N/W·S/E`.
    pub fn render_tile(&self, t: &Tile) -> String {
        let n = |c: usize| self.colors.name(c);
        format!("{}/{}·{}/{}", n(t.north), n(t.west), n(t.south), n(t.east))
    }

    /// First pair of tiles sharing west and south colors, if any.
    pub fn sw_conflict(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, t) in self.tiles.iter().enumerate() {
            if let Some(&j) = seen.get(&(t.west, t.south)) {
                return Some((j, i));
            }
            seen.insert((t.west, t.south), i);
        }
        None
    }

    pub fn is_sw_deterministic(&self) -> bool {
        self.sw_conflict().is_none()
    }
}

/// Automaton over colors with one transition `W --S/N--> E` per tile.
pub fn tileset_to_automaton(w: &TileSet) -> Result<Automaton> {
    if let Some((i, j)) = w.sw_conflict() {
        return Err(Error::NotSwDeterministic {
            first: w.render_tile(&w.tiles[i]),
            second: w.render_tile(&w.tiles[j]),
        });
    }
    let ts: Vec<Transition> = w
        .tiles
        .iter()
        .map(|t| Transition {
            state: StateId(t.west as u32),
            input: LetterId(t.south as u32),
            output: LetterId(t.north as u32),
            target: StateId(t.east as u32),
        })
        .collect();
    Automaton::from_parts("tiles", w.colors.clone(), w.colors.clone(), ts)
}

/// Color name for a state when states and letters share names.
pub fn state_color(name: &str, tagged: bool) -> String {
    if tagged {
        format!("s:{name}")
    } else {
        name.to_string()
    }
}

/// Color name for a letter when states and letters share names.
pub fn letter_color(name: &str, tagged: bool) -> String {
    if tagged {
        format!("l:{name}")
    } else {
        name.to_string()
    }
}

/// One tile `(b, q, a, p)` per transition `q --a/b--> p`. Colors are the
/// states followed by the letters, tagged with `s:`/`l:` if any name is shared.
pub fn automaton_to_tileset(a: &Automaton) -> Result<TileSet> {
    let view = a.finite("tiles")?;
    let tagged = view.state_names().iter().any(|q| a.alphabet().contains(q));
    let colors = Symbols::from_names(
        view.state_names()
            .iter()
            .map(|q| state_color(q, tagged))
            .chain(a.alphabet().iter().map(|l| letter_color(l, tagged))),
    )?;
    let k = view.num_states();
    let tiles = view
        .transitions()
        .map(|t| Tile {
            north: k + t.output.index(),
            west: t.state.index(),
            south: k + t.input.index(),
            east: t.target.index(),
        })
        .collect();
    Ok(TileSet { colors, tiles })
}

/// Rectangle with pairwise distinct horizontal color rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectTiling {
    /// `grid[k][x]` is the tile index in row `k` (bottom row first).
    pub grid: Vec<Vec<usize>>,
    /// Colors along the horizontal lines; `rows[k]` is below tile row `k`.
    pub rows: Vec<Vec<usize>>,
}

impl RectTiling {
    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    /// Number of tile rows.
    pub fn height(&self) -> usize {
        self.grid.len()
    }

    /// Checks adjacency and distinctness of the horizontal rows.
    pub fn validate(&self, w: &TileSet) -> std::result::Result<(), String> {
        if self.rows.len() != self.grid.len() + 1 {
            return Err("need one more color row than tile rows".into());
        }
        for (k, row) in self.grid.iter().enumerate() {
            if row.len() != self.width() || self.rows[k].len() != self.width() || self.rows[k + 1].len() != self.width() {
                return Err(format!("row {k} has the wrong width"));
            }
            for (x, &ti) in row.iter().enumerate() {
                let t = w.tiles.get(ti).ok_or_else(|| format!("unknown tile {ti}"))?;
                if t.south != self.rows[k][x] || t.north != self.rows[k + 1][x] {
                    return Err(format!("vertical mismatch at row {k}, column {x}"));
                }
                if x > 0 && w.tiles[row[x - 1]].east != t.west {
                    return Err(format!("horizontal mismatch at row {k}, column {x}"));
                }
            }
        }
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                if self.rows[i] == self.rows[j] {
                    return Err(format!("rows {i} and {j} coincide"));
                }
            }
        }
        Ok(())
    }

    /// Tile rows top-down, then the color rows bottom-up.
    pub fn render(&self, w: &TileSet) -> String {
        let mut out = String::new();
        for row in self.grid.iter().rev() {
            let cells: Vec<String> = row.iter().map(|&t| w.render_tile(&w.tiles[t])).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        for (k, row) in self.rows.iter().enumerate() {
            let names: Vec<&str> = row.iter().map(|&c| w.colors.name(c)).collect();
            out.push_str(&format!("h{k}: {}\n", names.join(" ")));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingSearch {
    Found(RectTiling),
    /// Every bottom row up to the width budget was examined.
    NotFound,
    /// The step budget ran out first.
    ExceededBudget,
}

/// Searches bottom rows of width `1..=width_budget` (shortest first, then
/// lexicographic over south colors) for a tiling with `y + 1` tile rows whose
/// `y + 2` horizontal color rows are pairwise distinct.
pub fn find_non_y_recurrent(w: &TileSet, y: usize, width_budget: usize, step_budget: usize) -> Result<TilingSearch> {
    let a = tileset_to_automaton(w)?;
    let mut south: Vec<usize> = w.tiles.iter().map(|t| t.south).collect();
    south.sort();
    south.dedup();
    if south.is_empty() {
        return Ok(TilingSearch::NotFound);
    }
    let by_sw: HashMap<(usize, usize), usize> = w.tiles.iter().enumerate().map(|(i, t)| ((t.west, t.south), i)).collect();
    let mut steps_left = step_budget;
    for width in 1..=width_budget {
        let total = south.len().checked_pow(width as u32).unwrap_or(usize::MAX);
        for code in 0..total {
            let mut r = code;
            let mut bottom = vec![0usize; width];
            for x in (0..width).rev() {
                bottom[x] = south[r % south.len()];
                r /= south.len();
            }
            let u: Vec<LetterId> = bottom.iter().map(|&c| LetterId(c as u32)).collect();
            let o = orbit_word(&a, &GenLang::FullStar, &u)?;
            if o.len() < y + 2 {
                continue;
            }
            match path_in_transducer(&o, false, y + 1, steps_left) {
                PathOutcome::Found(path) => {
                    let mut grid = Vec::new();
                    for (k, &f) in path.labels.iter().enumerate() {
                        let block = &o.blocks()[f];
                        let mut q = block.as_slice()[0];
                        let mut row = Vec::with_capacity(width);
                        for &s in &path.nodes[k] {
                            let ti = by_sw[&(q.index(), s.index())];
                            row.push(ti);
                            q = StateId(w.tiles[ti].east as u32);
                        }
                        grid.push(row);
                    }
                    let rows = path
                        .nodes
                        .iter()
                        .map(|n| n.iter().map(|l| l.index()).collect())
                        .collect();
                    let tiling = RectTiling { grid, rows };
                    tiling.validate(w).map_err(Error::Internal)?;
                    return Ok(TilingSearch::Found(tiling));
                }
                PathOutcome::NotFound => {}
                PathOutcome::ExceededBudget => return Ok(TilingSearch::ExceededBudget),
            }
            steps_left = steps_left.saturating_sub(o.len() * o.blocks().len());
            if steps_left == 0 {
                return Ok(TilingSearch::ExceededBudget);
            }
        }
    }
    Ok(TilingSearch::NotFound)
}
