//! Deterministic SVG rendering of an instance with a routed labeling.

use std::fmt::Write;

use mixlabel::routing::RoutedExternal;
use mixlabel::validity::Labeling;
use mixlabel::{Instance, Point, Scalar};

const SCALE: f64 = 40.0;

fn fmt(v: f64) -> String {
    format!("{:.3}", v * SCALE)
}

struct Canvas {
    body: String,
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
}

impl Canvas {
    fn new() -> Canvas {
        Canvas {
            body: String::new(),
            min_x: f64::MAX,
            min_y: f64::MAX,
            max_x: f64::MIN,
            max_y: f64::MIN,
        }
    }

    fn see(&mut self, x: f64, y: f64) {
        self.min_x = self.min_x.min(x);
        self.min_y = self.min_y.min(y);
        self.max_x = self.max_x.max(x);
        self.max_y = self.max_y.max(y);
    }

    // y is flipped so the world y-axis points up on screen
    fn polygon(&mut self, pts: &[Point], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|p| {
                let (x, y) = (p.x.to_f64(), p.y.to_f64());
                self.see(x, y);
                format!("{},{}", fmt(x), fmt(-y))
            })
            .collect();
        writeln!(
            self.body,
            "  <polygon points=\"{}\" style=\"{style}\"/>",
            coords.join(" ")
        )
        .unwrap();
    }

    fn rect(&mut self, anchor: &Point, w: &Scalar, h: &Scalar, style: &str) {
        let (x, y) = (anchor.x.to_f64(), anchor.y.to_f64());
        let (w, h) = (w.to_f64(), h.to_f64());
        self.see(x, y);
        self.see(x + w, y + h);
        writeln!(
            self.body,
            "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" style=\"{style}\"/>",
            fmt(x),
            fmt(-y - h),
            fmt(w),
            fmt(h)
        )
        .unwrap();
    }

    fn line(&mut self, a: &Point, b: &Point, style: &str) {
        let (x1, y1, x2, y2) = (a.x.to_f64(), a.y.to_f64(), b.x.to_f64(), b.y.to_f64());
        self.see(x1, y1);
        self.see(x2, y2);
        writeln!(
            self.body,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" style=\"{style}\"/>",
            fmt(x1),
            fmt(-y1),
            fmt(x2),
            fmt(-y2)
        )
        .unwrap();
    }

    fn dot(&mut self, p: &Point, style: &str) {
        let (x, y) = (p.x.to_f64(), p.y.to_f64());
        self.see(x, y);
        writeln!(
            self.body,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" style=\"{style}\"/>",
            fmt(x),
            fmt(-y)
        )
        .unwrap();
    }
}

/// Renders the map, obstacles, points, internal labels, leaders and routed
/// external labels. Byte-identical output for identical inputs.
pub fn render(instance: &Instance, labeling: &Labeling, routed: &[RoutedExternal]) -> String {
    let mut c = Canvas::new();
    c.polygon(
        &instance.map.verts(),
        "fill:#f7f3e8;stroke:#444444;stroke-width:1.5",
    );
    for obs in &instance.obstacles {
        c.polygon(
            &obs.polygon.verts,
            "fill:#b9b1a4;stroke:#6d6657;stroke-width:1",
        );
    }
    for r in routed {
        c.line(
            &instance.points[r.point],
            &r.boundary_exit,
            "stroke:#c04a3d;stroke-width:1.2",
        );
        c.line(
            &r.outer_path.0,
            &r.outer_path.1,
            "stroke:#c04a3d;stroke-width:1.2;stroke-dasharray:4 2",
        );
        c.rect(
            &r.label_rect.anchor,
            &r.label_rect.w,
            &r.label_rect.h,
            "fill:#f3c6bf;stroke:#c04a3d;stroke-width:1",
        );
    }
    for &i in &labeling.internal {
        let rect = instance.label_rect(i);
        c.rect(
            &rect.anchor,
            &rect.w,
            &rect.h,
            "fill:#cfe3c2;stroke:#4a7a3d;stroke-width:1",
        );
    }
    for (i, p) in instance.points.iter().enumerate() {
        let style = if labeling.internal.contains(&i) {
            "fill:#2c5e20"
        } else {
            "fill:#8c2d22"
        };
        c.dot(p, style);
    }
    let pad = 1.0;
    let (x0, y0) = ((c.min_x - pad) * SCALE, (-c.max_y - pad) * SCALE);
    let (w, h) = (
        (c.max_x - c.min_x + 2.0 * pad) * SCALE,
        (c.max_y - c.min_y + 2.0 * pad) * SCALE,
    );
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.3} {:.3} {:.3} {:.3}\">\n{}</svg>\n",
        x0, y0, w, h, c.body
    )
}
