//! Deterministic SVG figures. Box sets are drawn as cuboids: the real
//! coordinate maps to an axis directly and each p-adic coordinate is
//! embedded in [0,1] by the Monna map, which sends a coset to a closed
//! interval of length p^(-exp). All layout is exact rational arithmetic;
//! rounding to decimals happens only when attribute strings are emitted.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::direction::classify;
use crate::error::{Error, Result};
use crate::partition::{xi, Partition};
use crate::rational::Rational;
use crate::region::{Brick, PadicClass, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Projection {
    Isometric,
    ThreeFaces,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub projection: Projection,
    pub monna_depth_2: u32,
    pub monna_depth_3: u32,
    pub width: u32,
    pub height: u32,
    /// When rendering a partition, highlight this atom and dim the rest.
    pub shaded_atom: Option<usize>,
}

impl Default for RenderSpec {
    fn default() -> RenderSpec {
        RenderSpec {
            projection: Projection::Isometric,
            monna_depth_2: 4,
            monna_depth_3: 3,
            width: 420,
            height: 360,
            shaded_atom: None,
        }
    }
}

impl RenderSpec {
    fn validate(&self) -> Result<()> {
        if self.monna_depth_2 == 0 || self.monna_depth_3 == 0 {
            return Err(Error::BadDepth { min: 1, got: 0 });
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::BadDepth { min: 1, got: 0 });
        }
        Ok(())
    }
}

/// The Monna embedding of a coset: `sum a_n p^n + p^m Z_p` maps to the
/// closed interval starting at `sum a_n p^(-n-1)` of length `p^(-m)`.
pub fn monna_interval(class: &PadicClass) -> (Rational, Rational) {
    let p = class.prime().value() as u64;
    let mut start = Rational::zero();
    let mut residue = class.residue();
    let p_inv = Rational::from_big(BigInt::one(), BigInt::from(p)).expect("prime is nonzero");
    let mut scale = p_inv.clone();
    while residue != 0 {
        let digit = residue % p;
        start = start + Rational::from_integer(digit as i64) * &scale;
        scale = scale * &p_inv;
        residue /= p;
    }
    let len = Rational::from_big(BigInt::one(), BigInt::from((p as i64).pow(class.exp())))
        .expect("prime power is nonzero");
    (start, len)
}

/// Fixed-point decimal with up to six places, rounding half up; trailing
/// zeros trimmed. Pure integer arithmetic, so identical on any platform.
fn fmt_px(x: &Rational) -> String {
    let mega = BigInt::from(1_000_000i64);
    let scaled = x * Rational::from_bigint(mega.clone());
    let (q, frac) = scaled.floor_frac();
    let q = if frac >= Rational::new(1, 2) { q + 1 } else { q };
    let negative = q < BigInt::from(0);
    let q = if negative { -q } else { q };
    let (int_part, frac_part) = q.div_rem(&mega);
    let mut s = String::new();
    if negative && (!int_part.is_zero() || !frac_part.is_zero()) {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if !frac_part.is_zero() {
        let digits = format!("{frac_part:06}");
        let trimmed = digits.trim_end_matches('0');
        s.push('.');
        s.push_str(trimmed);
    }
    s
}

// palette for highlighted boxes (front, top, side) and context boxes
const SHADE_FILL: [&str; 3] = ["#7aa7cf", "#a9c8e4", "#5c87ad"];
const DIM_FILL: [&str; 3] = ["#e8e4da", "#f2efe8", "#d9d4c8"];
const EDGE: &str = "#2b2b2b";
const FRAME: &str = "#9a958a";
const GRID: &str = "#c9c4b8";

struct Canvas {
    out: String,
}

impl Canvas {
    fn new() -> Canvas {
        Canvas { out: String::new() }
    }

    fn polygon(&mut self, pts: &[(Rational, Rational)], fill: &str, stroke: &str, width: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{},{}", fmt_px(x), fmt_px(y)))
            .collect();
        let _ = writeln!(
            self.out,
            r#"<polygon points="{}" fill="{}" stroke="{}" stroke-width="{}"/>"#,
            coords.join(" "),
            fill,
            stroke,
            width
        );
    }

    fn line(&mut self, a: &(Rational, Rational), b: &(Rational, Rational), stroke: &str, width: &str) {
        let _ = writeln!(
            self.out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
            fmt_px(&a.0),
            fmt_px(&a.1),
            fmt_px(&b.0),
            fmt_px(&b.1),
            stroke,
            width
        );
    }

    fn text(&mut self, x: &Rational, y: &Rational, size: u32, content: &str) {
        let _ = writeln!(
            self.out,
            r##"<text x="{}" y="{}" font-family="Helvetica,Arial,sans-serif" font-size="{}" fill="#3a3a3a">{}</text>"##,
            fmt_px(x),
            fmt_px(y),
            size,
            content
        );
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Oblique cuboid projection with rational coefficients: the depth axis
/// is displaced by (2/5, -1/5) per unit. `(u, v, w)` are the real,
/// 2-adic-Monna and 3-adic-Monna coordinates in [0, 1].
struct Frame {
    origin_x: Rational,
    origin_y: Rational,
    scale: Rational,
}

impl Frame {
    /// Fit the projected unit cube (extent 7/5 by 6/5) into a panel.
    fn fit(panel_w: u32, panel_h: u32) -> Frame {
        let margin = r(3, 100) * Rational::from_integer(panel_w.min(panel_h) as i64)
            + Rational::from_integer(14);
        let avail_w = Rational::from_integer(panel_w as i64) - r(2, 1) * &margin;
        let avail_h = Rational::from_integer(panel_h as i64) - r(2, 1) * &margin;
        let scale = (avail_w * r(5, 7)).min(avail_h * r(5, 6));
        Frame {
            origin_x: margin.clone(),
            origin_y: margin,
            scale,
        }
    }

    fn project(&self, u: &Rational, v: &Rational, w: &Rational) -> (Rational, Rational) {
        let x = u + &(w * r(2, 5));
        let y = r(6, 5) - v - &(w * r(1, 5));
        (
            &self.origin_x + &(&self.scale * &x),
            &self.origin_y + &(&self.scale * &y),
        )
    }
}

fn cuboid(
    canvas: &mut Canvas,
    frame: &Frame,
    u: (&Rational, &Rational),
    v: (&Rational, &Rational),
    w: (&Rational, &Rational),
    fills: &[&str; 3],
    stroke_width: &str,
) {
    let p = |uu: &Rational, vv: &Rational, ww: &Rational| frame.project(uu, vv, ww);
    // front face (near depth), then top, then right side
    canvas.polygon(
        &[
            p(u.0, v.0, w.0),
            p(u.1, v.0, w.0),
            p(u.1, v.1, w.0),
            p(u.0, v.1, w.0),
        ],
        fills[0],
        EDGE,
        stroke_width,
    );
    canvas.polygon(
        &[
            p(u.0, v.1, w.0),
            p(u.1, v.1, w.0),
            p(u.1, v.1, w.1),
            p(u.0, v.1, w.1),
        ],
        fills[1],
        EDGE,
        stroke_width,
    );
    canvas.polygon(
        &[
            p(u.1, v.0, w.0),
            p(u.1, v.1, w.0),
            p(u.1, v.1, w.1),
            p(u.1, v.0, w.1),
        ],
        fills[2],
        EDGE,
        stroke_width,
    );
}

fn brick_monna(brick: &Brick) -> ((Rational, Rational), (Rational, Rational)) {
    let (v0, vlen) = monna_interval(brick.two());
    let (w0, wlen) = monna_interval(brick.three());
    ((v0.clone(), v0 + vlen), (w0.clone(), w0 + wlen))
}

/// Painter order: farther (larger depth), then lower, then left first.
fn paint_order(bricks: &mut Vec<(&Brick, bool)>) {
    bricks.sort_by(|(a, _), (b, _)| {
        let (_, wa) = brick_monna(a);
        let (_, wb) = brick_monna(b);
        wb.0.cmp(&wa.0)
            .then_with(|| {
                let (va, _) = brick_monna(a);
                let (vb, _) = brick_monna(b);
                va.0.cmp(&vb.0)
            })
            .then_with(|| a.lo().cmp(b.lo()))
            .then_with(|| a.cmp(b))
    });
}

fn isometric_body(canvas: &mut Canvas, frame: &Frame, sets: &[(&Region, bool)], spec: &RenderSpec) {
    let zero = Rational::zero();
    let one = Rational::one();

    // outer unit cube, back edges first
    let corners = |u: i64, v: i64, w: i64| {
        frame.project(
            &Rational::from_integer(u),
            &Rational::from_integer(v),
            &Rational::from_integer(w),
        )
    };
    for (a, b) in [
        ((0, 0, 1), (1, 0, 1)),
        ((0, 0, 1), (0, 1, 1)),
        ((0, 0, 1), (0, 0, 0)),
    ] {
        canvas.line(&corners(a.0, a.1, a.2), &corners(b.0, b.1, b.2), GRID, "1");
    }
    for (a, b) in [
        ((1, 0, 0), (1, 1, 0)),
        ((1, 1, 0), (0, 1, 0)),
        ((0, 1, 0), (0, 0, 0)),
        ((1, 0, 0), (0, 0, 0)),
        ((1, 0, 1), (1, 1, 1)),
        ((1, 1, 1), (0, 1, 1)),
        ((1, 0, 1), (1, 0, 0)),
        ((1, 1, 1), (1, 1, 0)),
        ((0, 1, 1), (0, 1, 0)),
    ] {
        canvas.line(&corners(a.0, a.1, a.2), &corners(b.0, b.1, b.2), FRAME, "1");
    }

    // Monna subdivision ticks on the two p-adic axes
    let tick = r(1, 50);
    for k in 1..2u64.pow(spec.monna_depth_2) {
        let v = Rational::new(k as i64, 2i64.pow(spec.monna_depth_2));
        let a = frame.project(&zero, &v, &zero);
        let b = frame.project(&(-&tick), &v, &zero);
        canvas.line(&a, &b, FRAME, "1");
    }
    for k in 1..3u64.pow(spec.monna_depth_3) {
        let w = Rational::new(k as i64, 3i64.pow(spec.monna_depth_3));
        let a = frame.project(&zero, &zero, &w);
        let b = frame.project(&zero, &(-&tick), &w);
        canvas.line(&a, &b, FRAME, "1");
    }

    let mut bricks: Vec<(&Brick, bool)> = Vec::new();
    for (region, highlight) in sets {
        for b in region.bricks() {
            bricks.push((b, *highlight));
        }
    }
    paint_order(&mut bricks);
    for (brick, highlight) in bricks {
        let (v, w) = brick_monna(brick);
        cuboid(
            canvas,
            frame,
            (brick.lo(), brick.hi()),
            (&v.0, &v.1),
            (&w.0, &w.1),
            if highlight { &SHADE_FILL } else { &DIM_FILL },
            "1",
        );
    }

    // axis labels
    let below = frame.project(&r(2, 5), &(-&r(11, 100)), &zero);
    canvas.text(&below.0, &below.1, 12, "[0,1)");
    let left = frame.project(&(-&r(13, 100)), &r(2, 5), &zero);
    canvas.text(&left.0, &left.1, 12, "Z2");
    let depth = frame.project(&(one + r(1, 25)), &zero, &r(1, 2));
    canvas.text(&depth.0, &depth.1, 12, "Z3");
}

fn three_faces_body(canvas: &mut Canvas, sets: &[(&Region, bool)], spec: &RenderSpec, w: u32, h: u32) {
    let pane_w = Rational::new(w as i64, 3);
    let margin = r(1, 20) * &pane_w + Rational::from_integer(10);
    let side = (&pane_w - r(2, 1) * &margin).min(
        Rational::from_integer(h as i64) - r(2, 1) * &margin - Rational::from_integer(16),
    );
    let titles = ["real x Z2", "real x Z3", "Z2 x Z3"];
    for (pane, title) in titles.iter().enumerate() {
        let ox = Rational::from_integer(pane as i64) * &pane_w + &margin;
        let oy = margin.clone() + Rational::from_integer(14);
        canvas.text(&ox, &(&oy - &Rational::from_integer(4)), 12, title);
        canvas.polygon(
            &[
                (ox.clone(), oy.clone()),
                (&ox + &side, oy.clone()),
                (&ox + &side, &oy + &side),
                (ox.clone(), &oy + &side),
            ],
            "none",
            FRAME,
            "1",
        );
        let mut rects: Vec<((Rational, Rational), (Rational, Rational), bool)> = Vec::new();
        for (region, highlight) in sets {
            for b in region.bricks() {
                let (v, wm) = brick_monna(b);
                let (xr, yr) = match pane {
                    0 => ((b.lo().clone(), b.hi().clone()), v),
                    1 => ((b.lo().clone(), b.hi().clone()), wm),
                    _ => (v, wm),
                };
                rects.push((xr, yr, *highlight));
            }
        }
        rects.sort_by(|a, b| (&a.0, &a.1, a.2).cmp(&(&b.0, &b.1, b.2)));
        rects.dedup();
        for (xr, yr, highlight) in rects {
            let x0 = &ox + &(&xr.0 * &side);
            let x1 = &ox + &(&xr.1 * &side);
            // y axis points down in SVG; flip the second coordinate
            let y0 = &oy + &(&(Rational::one() - &yr.1) * &side);
            let y1 = &oy + &(&(Rational::one() - &yr.0) * &side);
            canvas.polygon(
                &[
                    (x0.clone(), y0.clone()),
                    (x1.clone(), y0.clone()),
                    (x1.clone(), y1.clone()),
                    (x0.clone(), y1.clone()),
                ],
                if highlight { SHADE_FILL[0] } else { DIM_FILL[0] },
                EDGE,
                "1",
            );
        }
    }
    let _ = spec;
}

/// Render the boxes of one panel into a `<g>` group body. Shared between
/// the standalone renderers and the cone gallery so that a gallery panel
/// is byte-identical to the standalone figure of the same set.
fn panel_body(sets: &[(&Region, bool)], spec: &RenderSpec, w: u32, h: u32) -> String {
    let mut canvas = Canvas::new();
    match spec.projection {
        Projection::Isometric => {
            let frame = Frame::fit(w, h);
            isometric_body(&mut canvas, &frame, sets, spec);
        }
        Projection::ThreeFaces => three_faces_body(&mut canvas, sets, spec, w, h),
    }
    canvas.out
}

fn svg_document(width: u32, height: u32, body: &str) -> String {
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" "#,
            r#"viewBox="0 0 {w} {h}">"#,
            "\n",
            r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#fbfaf7"/>"##,
            "\n{body}</svg>\n"
        ),
        w = width,
        h = height,
        body = body
    )
}

/// Render a single box set. Deterministic: identical input gives a
/// byte-identical document.
pub fn render_boxset(set: &Region, spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    if set.is_empty() {
        return Err(Error::EmptyRender);
    }
    let body = panel_body(&[(set, true)], spec, spec.width, spec.height);
    Ok(svg_document(
        spec.width,
        spec.height,
        &format!("<g>\n{body}</g>\n"),
    ))
}

/// Render a partition with an optional highlighted atom (the rest is
/// dimmed), in the style of the cuboid figures.
pub fn render_partition(partition: &Partition, spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    if partition.is_empty() {
        return Err(Error::EmptyRender);
    }
    if let Some(idx) = spec.shaded_atom {
        if idx >= partition.len() {
            return Err(Error::IndexOutOfRange {
                index: idx as i64,
                size: partition.len() as u64,
            });
        }
    }
    let sets: Vec<(&Region, bool)> = partition
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, s)| (s, spec.shaded_atom.map_or(true, |idx| idx == i)))
        .collect();
    let body = panel_body(&sets, spec, spec.width, spec.height);
    Ok(svg_document(
        spec.width,
        spec.height,
        &format!("<g>\n{body}</g>\n"),
    ))
}

// slope of the line 2^x 3^y = 1, i.e. -log2/log3, as a fixed rational
// approximation (presentation only; nothing exact depends on it)
const LINE_SLOPE: (i64, i64) = (-63093, 100000);

fn header_body(width: u32, header_h: u32) -> String {
    let mut canvas = Canvas::new();
    let w = Rational::from_integer(width as i64);
    let h = Rational::from_integer(header_h as i64);
    let cx = &w * r(1, 2);
    let cy = &h * r(1, 2);
    let half = (&w * r(1, 2)).min(&h * r(1, 2)) - Rational::from_integer(12);
    // axes a = 0 and b = 0
    canvas.line(&(&cx - &half, cy.clone()), &(&cx + &half, cy.clone()), EDGE, "1");
    canvas.line(&(cx.clone(), &cy - &half), &(cx.clone(), &cy + &half), EDGE, "1");
    // the remaining non-expansive line through the origin
    let slope = r(LINE_SLOPE.0, LINE_SLOPE.1);
    let dy = &half * &slope;
    canvas.line(
        &(&cx - &half, &cy - &dy),
        &(&cx + &half, &cy + &dy),
        FRAME,
        "1",
    );
    canvas.text(&(&cx + &half - &Rational::from_integer(34)), &(&cy + &dy), 10, "2^x3^y=1");
    canvas.text(&(&cx + &half - &Rational::from_integer(12)), &(&cy - &Rational::from_integer(4)), 10, "a");
    canvas.text(&(&cx + &Rational::from_integer(5)), &(&cy - &half + &Rational::from_integer(10)), 10, "b");
    canvas.out
}

/// Figure-seven style gallery: one panel per expansive direction showing
/// the image of the first partition atom, arranged on a grid under a
/// header sketching the three non-expansive lines. Duplicate directions
/// produce duplicate panels.
pub fn render_cone_gallery(directions: &[(i64, i64)], spec: &RenderSpec) -> Result<String> {
    spec.validate()?;
    for &(a, b) in directions {
        if a == 0 || b == 0 {
            return Err(Error::NotExpansive { a, b });
        }
    }
    let n = directions.len() as u32;
    let cols = match n {
        0 => 1,
        _ => (1..).find(|c| c * c >= n).expect("finite"),
    };
    let rows = if n == 0 { 0 } else { n.div_ceil(cols) };
    let header_h = spec.height / 2;
    let total_w = (cols * spec.width).max(spec.width);
    let total_h = header_h + rows * spec.height;

    let mut body = String::new();
    let _ = writeln!(body, "<g>\n{}</g>", header_body(total_w, header_h));
    for (i, &(a, b)) in directions.iter().enumerate() {
        let col = i as u32 % cols;
        let row = i as u32 / cols;
        let x = col * spec.width;
        let y = header_h + row * spec.height;
        let base = xi(a, b)?;
        let shape = base.atoms()[0].image(a, b);
        let panel = panel_body(&[(&shape, true)], spec, spec.width, spec.height);
        let label_y = spec.height - 6;
        let cone = classify(a, b).cone;
        let _ = writeln!(
            body,
            "<g transform=\"translate({x} {y})\">\n{panel}\
             <text x=\"10\" y=\"{label_y}\" font-family=\"Helvetica,Arial,sans-serif\" \
             font-size=\"12\" fill=\"#3a3a3a\">alpha^({a},{b})  {cone}</text>\n</g>",
            cone = cone.label(),
        );
    }
    Ok(svg_document(total_w, total_h, &body))
}
