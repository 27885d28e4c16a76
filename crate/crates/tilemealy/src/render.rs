//! SVG rendering of tilings. Each tile is a square split into four edge
//! triangles meeting at the center, one per side, filled with a color
//! derived deterministically from the color's name.

use crate::wang::{ColorId, RectTiling, TileSet, TorusTiling};

const CELL: usize = 40;

/// FNV-1a over the name bytes; stable across platforms and runs, unlike the
/// standard library's randomized hasher.
fn stable_hash(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn hsl_to_rgb(h: f64, s: f64, l: f64) -> (u8, u8, u8) {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to8 = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    (to8(r), to8(g), to8(b))
}

/// Deterministic fill for a color name: hue by stable hash, fixed
/// saturation and lightness.
pub fn color_fill(name: &str) -> String {
    let hue = (stable_hash(name) % 360) as f64;
    let (r, g, b) = hsl_to_rgb(hue, 0.65, 0.55);
    format!("#{r:02x}{g:02x}{b:02x}")
}

fn render_cell(out: &mut String, ts: &TileSet, tile: usize, px: usize, py: usize) {
    let t = ts.tile(tile);
    let (x0, y0) = (px, py);
    let (x1, y1) = (px + CELL, py + CELL);
    let (cx, cy) = (px + CELL / 2, py + CELL / 2);
    let mut tri = |a: (usize, usize), b: (usize, usize), color: ColorId| {
        out.push_str(&format!(
            "<polygon points=\"{},{} {},{} {},{}\" fill=\"{}\"/>",
            a.0,
            a.1,
            b.0,
            b.1,
            cx,
            cy,
            color_fill(ts.color_name(color))
        ));
    };
    // SVG y grows downward, so the top edge of the cell is north.
    tri((x0, y0), (x1, y0), t.north);
    tri((x1, y0), (x1, y1), t.east);
    tri((x0, y1), (x1, y1), t.south);
    tri((x0, y0), (x0, y1), t.west);
    out.push_str(&format!(
        "<rect x=\"{x0}\" y=\"{y0}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>"
    ));
}

fn render_grid(ts: &TileSet, width: usize, height: usize, get: impl Fn(usize, usize) -> usize) -> String {
    let (w, h) = (width * CELL, height * CELL);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    ));
    for y in 0..height {
        for x in 0..width {
            // Row y = height - 1 is drawn at the top: y increases northward.
            let py = (height - 1 - y) * CELL;
            render_cell(&mut out, ts, get(x, y), x * CELL, py);
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_rect_svg(ts: &TileSet, t: &RectTiling) -> String {
    render_grid(ts, t.width, t.height, |x, y| t.get(x, y))
}

/// Renders one fundamental domain of the torus.
pub fn render_torus_svg(ts: &TileSet, t: &TorusTiling) -> String {
    render_grid(ts, t.px, t.py, |x, y| t.get(x as i64, y as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wang::TileSet;

    #[test]
    fn rendering_is_deterministic_and_wellformed() {
        let ts = TileSet::new(
            &["0", "1"],
            &[("a", "0", "1", "0", "0"), ("b", "1", "0", "1", "1")],
        )
        .unwrap();
        let tiling = RectTiling::new(2, 2, vec![0, 1, 1, 0]).unwrap();
        let one = render_rect_svg(&ts, &tiling);
        let two = render_rect_svg(&ts, &tiling);
        assert_eq!(one, two);
        assert!(one.starts_with("<svg"));
        assert!(one.ends_with("</svg>\n"));
        assert_eq!(one.matches("<polygon").count(), 16);
    }

    #[test]
    fn color_fill_is_a_hex_color() {
        let f = color_fill("0");
        assert_eq!(f.len(), 7);
        assert!(f.starts_with('#'));
        assert_eq!(color_fill("0"), f);
        assert_ne!(color_fill("1"), f);
    }
}
