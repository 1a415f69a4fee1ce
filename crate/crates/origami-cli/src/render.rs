//! Deterministic SVG emission. Coordinates stay exact rationals until the
//! final formatting step, and the formatter is fixed-precision with a fixed
//! rounding rule, so identical scenes always produce identical bytes. The
//! output carries no timestamps and no non-deterministic ids.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// World-coordinate window, y pointing up.
#[derive(Clone)]
pub struct Viewport {
    pub min_x: BigRational,
    pub min_y: BigRational,
    pub width: BigRational,
    pub height: BigRational,
}

impl Viewport {
    pub fn new(
        min_x: BigRational,
        min_y: BigRational,
        width: BigRational,
        height: BigRational,
    ) -> Viewport {
        assert!(
            width.is_positive() && height.is_positive(),
            "viewport must have positive extent"
        );
        Viewport {
            min_x,
            min_y,
            width,
            height,
        }
    }

    pub fn max_x(&self) -> BigRational {
        self.min_x.clone() + self.width.clone()
    }

    pub fn max_y(&self) -> BigRational {
        self.min_y.clone() + self.height.clone()
    }

    pub fn contains(&self, x: &BigRational, y: &BigRational) -> bool {
        *x >= self.min_x && *x <= self.max_x() && *y >= self.min_y && *y <= self.max_y()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    /// Reference lines: axes, given segments.
    Axis,
    /// Fold lines produced by a construction.
    Fold,
    /// Dashed helper lines.
    Aux,
    /// Conic loci.
    Curve,
    /// Circles and polygon outlines.
    Outline,
}

impl Stroke {
    fn class(self) -> &'static str {
        match self {
            Stroke::Axis => "axis",
            Stroke::Fold => "fold",
            Stroke::Aux => "aux",
            Stroke::Curve => "curve",
            Stroke::Outline => "outline",
        }
    }
}

pub enum Shape {
    Circle {
        cx: BigRational,
        cy: BigRational,
        r: BigRational,
        stroke: Stroke,
    },
    Segment {
        x1: BigRational,
        y1: BigRational,
        x2: BigRational,
        y2: BigRational,
        stroke: Stroke,
    },
    Polyline {
        points: Vec<(BigRational, BigRational)>,
        stroke: Stroke,
    },
    Dot {
        x: BigRational,
        y: BigRational,
        label: Option<String>,
    },
}

pub struct RenderScene {
    pub viewport: Viewport,
    pub shapes: Vec<Shape>,
}

impl RenderScene {
    pub fn new(viewport: Viewport) -> RenderScene {
        RenderScene {
            viewport,
            shapes: Vec::new(),
        }
    }

    pub fn push(&mut self, shape: Shape) {
        self.shapes.push(shape);
    }
}

const CANVAS_WIDTH: i64 = 480;

const STYLE: &str = concat!(
    ".axis{stroke:#888888;stroke-width:1;fill:none}",
    ".fold{stroke:#1f5fbf;stroke-width:1.5;fill:none}",
    ".aux{stroke:#999999;stroke-width:1;stroke-dasharray:5 4;fill:none}",
    ".curve{stroke:#b03030;stroke-width:1.5;fill:none}",
    ".outline{stroke:#222222;stroke-width:1.5;fill:none}",
    ".dot{fill:#111111}",
    "text{font-family:serif;font-size:12px;fill:#111111}",
);

/// Fixed-point decimal with `places` fractional digits, rounding halves
/// toward positive infinity.
pub fn fixed(x: &BigRational, places: usize) -> String {
    let ten = BigInt::from(10).pow(places as u32);
    let scaled = x * BigRational::from_integer(ten.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = (scaled + half).floor().to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let m = n.abs();
    let ip = &m / &ten;
    if places == 0 {
        return format!("{sign}{ip}");
    }
    let mut fp = (&m % &ten).to_string();
    while fp.len() < places {
        fp.insert(0, '0');
    }
    format!("{sign}{ip}.{fp}")
}

struct Mapper {
    min_x: BigRational,
    max_y: BigRational,
    scale: BigRational,
}

impl Mapper {
    fn x(&self, x: &BigRational) -> String {
        fixed(&((x - &self.min_x) * &self.scale), 2)
    }

    fn y(&self, y: &BigRational) -> String {
        fixed(&((&self.max_y - y) * &self.scale), 2)
    }

    fn len(&self, d: &BigRational) -> String {
        fixed(&(d * &self.scale), 2)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_svg(scene: &RenderScene) -> String {
    let vp = &scene.viewport;
    let scale = BigRational::from_integer(BigInt::from(CANVAS_WIDTH)) / vp.width.clone();
    let map = Mapper {
        min_x: vp.min_x.clone(),
        max_y: vp.max_y(),
        scale: scale.clone(),
    };
    let canvas_h = fixed(&(vp.height.clone() * scale), 2);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{CANVAS_WIDTH}\" height=\"{canvas_h}\" viewBox=\"0 0 {CANVAS_WIDTH} {canvas_h}\">\n"
    ));
    out.push_str(&format!("<style>{STYLE}</style>\n"));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{CANVAS_WIDTH}\" height=\"{canvas_h}\" fill=\"#ffffff\"/>\n"
    ));
    for shape in &scene.shapes {
        match shape {
            Shape::Circle { cx, cy, r, stroke } => {
                out.push_str(&format!(
                    "<circle class=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                    stroke.class(),
                    map.x(cx),
                    map.y(cy),
                    map.len(r),
                ));
            }
            Shape::Segment {
                x1,
                y1,
                x2,
                y2,
                stroke,
            } => {
                out.push_str(&format!(
                    "<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                    stroke.class(),
                    map.x(x1),
                    map.y(y1),
                    map.x(x2),
                    map.y(y2),
                ));
            }
            Shape::Polyline { points, stroke } => {
                if points.len() < 2 {
                    continue;
                }
                let coords: Vec<String> = points
                    .iter()
                    .map(|(x, y)| format!("{},{}", map.x(x), map.y(y)))
                    .collect();
                out.push_str(&format!(
                    "<polyline class=\"{}\" points=\"{}\"/>\n",
                    stroke.class(),
                    coords.join(" "),
                ));
            }
            Shape::Dot { x, y, label } => {
                out.push_str(&format!(
                    "<circle class=\"dot\" cx=\"{}\" cy=\"{}\" r=\"3\"/>\n",
                    map.x(x),
                    map.y(y),
                ));
                if let Some(text) = label {
                    let lx = fixed(&((x - &map.min_x) * &map.scale + BigRational::from_integer(BigInt::from(6))), 2);
                    let ly = fixed(&((&map.max_y - y) * &map.scale - BigRational::from_integer(BigInt::from(6))), 2);
                    out.push_str(&format!("<text x=\"{lx}\" y=\"{ly}\">{}</text>\n", escape(text)));
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fixed_formatting_is_stable() {
        assert_eq!(fixed(&r(1, 3), 4), "0.3333");
        assert_eq!(fixed(&r(-1, 3), 4), "-0.3333");
        assert_eq!(fixed(&r(1, 2), 0), "1");
        assert_eq!(fixed(&r(5, 4), 1), "1.3");
        assert_eq!(fixed(&r(0, 1), 2), "0.00");
        assert_eq!(fixed(&r(-1, 800), 2), "0.00");
    }

    #[test]
    fn empty_scene_is_minimal_but_valid() {
        let scene = RenderScene::new(Viewport::new(r(-1, 1), r(-1, 1), r(2, 1), r(2, 1)));
        let svg = render_svg(&scene);
        assert!(svg.starts_with("<svg xmlns="));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 0);
    }

    #[test]
    fn identical_scenes_render_identically() {
        let build = || {
            let mut scene =
                RenderScene::new(Viewport::new(r(-2, 1), r(-1, 1), r(4, 1), r(2, 1)));
            scene.push(Shape::Circle {
                cx: r(0, 1),
                cy: r(0, 1),
                r: r(1, 1),
                stroke: Stroke::Outline,
            });
            scene.push(Shape::Dot {
                x: r(1, 3),
                y: r(-1, 7),
                label: Some("P".into()),
            });
            scene
        };
        assert_eq!(render_svg(&build()), render_svg(&build()));
    }
}
