//! Shared fixtures and generators for the integration suites.
#![allow(dead_code)] // each test binary uses its own subset

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tilemealy::wang::TileSet;
use tilemealy::words::{Alphabet, Word};
use tilemealy::MealyAutomaton;

/// One tile, all edges the same color: the plane is tileable.
pub fn t_mono() -> TileSet {
    TileSet::new(&["0"], &[("t", "0", "0", "0", "0")]).unwrap()
}

/// One tile whose north and south disagree: no two cells can stack, so the
/// 2×2 square is already untileable.
pub fn t_vert() -> TileSet {
    TileSet::new(&["0", "1"], &[("t", "0", "1", "0", "0")]).unwrap()
}

/// Two tiles tiling the plane in alternating rows.
pub fn t_stripes() -> TileSet {
    TileSet::new(
        &["0", "1"],
        &[("a", "0", "1", "0", "0"), ("b", "1", "0", "1", "1")],
    )
    .unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random total machine with up to `max_states` states and `max_letters`
/// letters.
pub fn random_machine(rng: &mut ChaCha8Rng, max_states: usize, max_letters: usize) -> MealyAutomaton {
    let ns = rng.gen_range(1..=max_states);
    let nl = rng.gen_range(1..=max_letters);
    random_machine_exact(rng, ns, nl)
}

pub fn random_machine_exact(rng: &mut ChaCha8Rng, ns: usize, nl: usize) -> MealyAutomaton {
    let states = Alphabet::new((0..ns).map(|i| format!("s{i}"))).unwrap();
    let alphabet = Alphabet::new((0..nl).map(|i| format!("x{i}"))).unwrap();
    let state_syms: Vec<_> = states.symbols().collect();
    let letter_syms: Vec<_> = alphabet.symbols().collect();
    MealyAutomaton::from_fn(states, alphabet, |_, _| {
        (
            state_syms[rng.gen_range(0..ns)],
            letter_syms[rng.gen_range(0..nl)],
        )
    })
}

/// A random reset machine: states = letters, next state is the letter read.
pub fn random_reset_machine(rng: &mut ChaCha8Rng, max_symbols: usize) -> MealyAutomaton {
    let n = rng.gen_range(1..=max_symbols);
    let alphabet = Alphabet::new((0..n).map(|i| format!("x{i}"))).unwrap();
    let syms: Vec<_> = alphabet.symbols().collect();
    MealyAutomaton::from_fn(alphabet.clone(), alphabet, |_, x| {
        let _ = x;
        (x, syms[rng.gen_range(0..n)])
    })
}

/// A uniformly random word of length in `0..=max_len` over the first `n`
/// symbols.
pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    random_word_exact(rng, alphabet, len)
}

pub fn random_word_exact(rng: &mut ChaCha8Rng, alphabet: &Alphabet, len: usize) -> Word {
    let syms: Vec<_> = alphabet.symbols().collect();
    (0..len).map(|_| syms[rng.gen_range(0..syms.len())]).collect()
}

/// Independent tiling oracle: enumerates every assignment in `T^(w·h)` and
/// checks validity with its own edge comparisons, no solver involved.
pub fn brute_force_rectangle(ts: &TileSet, width: usize, height: usize) -> Option<Vec<usize>> {
    let cells = width * height;
    let k = ts.len();
    let mut asn = vec![0usize; cells];
    loop {
        if brute_valid(ts, width, height, &asn) {
            return Some(asn);
        }
        let mut pos = cells;
        loop {
            if pos == 0 {
                return None;
            }
            asn[pos - 1] += 1;
            if asn[pos - 1] < k {
                break;
            }
            asn[pos - 1] = 0;
            pos -= 1;
        }
    }
}

fn brute_valid(ts: &TileSet, width: usize, height: usize, asn: &[usize]) -> bool {
    for y in 0..height {
        for x in 0..width {
            let t = ts.tile(asn[y * width + x]);
            if x + 1 < width {
                let right = ts.tile(asn[y * width + x + 1]);
                if t.east != right.west {
                    return false;
                }
            }
            if y + 1 < height {
                let up = ts.tile(asn[(y + 1) * width + x]);
                if t.north != up.south {
                    return false;
                }
            }
        }
    }
    true
}

/// Every rectangle shape with area at most `max_area`.
pub fn rect_shapes(max_area: usize) -> Vec<(usize, usize)> {
    let mut shapes = Vec::new();
    for w in 1..=max_area {
        for h in 1..=max_area {
            if w * h <= max_area {
                shapes.push((w, h));
            }
        }
    }
    shapes
}
