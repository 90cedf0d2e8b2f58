//! Planar primitives: points, axis-aligned rectangles, ring area, ring
//! clipping against a rectangle and even-odd point containment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: Scalar> From<(T, T)> for Point<T> {
    fn from((x, y): (T, T)) -> Self {
        Point { x, y }
    }
}

/// Closed axis-aligned rectangle `[xmin, xmax] x [ymin, ymax]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect<T> {
    pub xmin: T,
    pub ymin: T,
    pub xmax: T,
    pub ymax: T,
}

impl<T: Scalar> Rect<T> {
    pub fn new(xmin: T, ymin: T, xmax: T, ymax: T) -> Self {
        Rect { xmin, ymin, xmax, ymax }
    }

    pub fn width(&self) -> T {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> T {
        self.ymax - self.ymin
    }

    pub fn area(&self) -> T {
        self.width() * self.height()
    }

    pub fn intersects(&self, other: &Rect<T>) -> bool {
        self.xmin <= other.xmax
            && other.xmin <= self.xmax
            && self.ymin <= other.ymax
            && other.ymin <= self.ymax
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        p.x >= self.xmin && p.x <= self.xmax && p.y >= self.ymin && p.y <= self.ymax
    }

    pub fn union(&self, other: &Rect<T>) -> Rect<T> {
        Rect {
            xmin: self.xmin.min(other.xmin),
            ymin: self.ymin.min(other.ymin),
            xmax: self.xmax.max(other.xmax),
            ymax: self.ymax.max(other.ymax),
        }
    }

    /// Bounding box of a vertex sequence; `None` when empty.
    pub fn bounding(points: &[Point<T>]) -> Option<Rect<T>> {
        let first = points.first()?;
        let init = Rect::new(first.x, first.y, first.x, first.y);
        Some(points.iter().skip(1).fold(init, |r, p| Rect {
            xmin: r.xmin.min(p.x),
            ymin: r.ymin.min(p.y),
            xmax: r.xmax.max(p.x),
            ymax: r.ymax.max(p.y),
        }))
    }
}

/// Signed shoelace area of an implicitly closed ring, positive when
/// counter-clockwise.
pub fn shoelace_area<T: Scalar>(ring: &[Point<T>]) -> Result<T> {
    if ring.len() < 3 {
        return Err(Error::invalid(format!(
            "ring needs at least 3 vertices, got {}",
            ring.len()
        )));
    }
    Ok(signed_area(ring))
}

/// Shoelace sum without the vertex-count check; 0 for fewer than 3 vertices.
///
/// Coordinates are taken relative to the first vertex so that large
/// projected offsets do not cancel away the significant digits.
pub(crate) fn signed_area<T: Scalar>(ring: &[Point<T>]) -> T {
    if ring.len() < 3 {
        return T::zero();
    }
    let o = ring[0];
    let mut twice = T::zero();
    for w in ring[1..].windows(2) {
        let (ax, ay) = (w[0].x - o.x, w[0].y - o.y);
        let (bx, by) = (w[1].x - o.x, w[1].y - o.y);
        twice = twice + (ax * by - bx * ay);
    }
    twice / T::lit(2.0)
}

#[derive(Clone, Copy)]
enum Edge {
    Left,
    Right,
    Bottom,
    Top,
}

impl Edge {
    fn inside<T: Scalar>(self, p: Point<T>, r: &Rect<T>) -> bool {
        match self {
            Edge::Left => p.x >= r.xmin,
            Edge::Right => p.x <= r.xmax,
            Edge::Bottom => p.y >= r.ymin,
            Edge::Top => p.y <= r.ymax,
        }
    }

    /// Intersection of segment `a`-`b` with this edge's line; the clipped
    /// coordinate is set exactly to the boundary value.
    fn cross<T: Scalar>(self, a: Point<T>, b: Point<T>, r: &Rect<T>) -> Point<T> {
        match self {
            Edge::Left | Edge::Right => {
                let x = if matches!(self, Edge::Left) { r.xmin } else { r.xmax };
                let t = (x - a.x) / (b.x - a.x);
                Point::new(x, a.y + t * (b.y - a.y))
            }
            Edge::Bottom | Edge::Top => {
                let y = if matches!(self, Edge::Bottom) { r.ymin } else { r.ymax };
                let t = (y - a.y) / (b.y - a.y);
                Point::new(a.x + t * (b.x - a.x), y)
            }
        }
    }
}

/// Sutherland-Hodgman clip of a ring against a rectangle.
///
/// The result may contain collinear or repeated vertices along the window
/// boundary when the input is concave; its shoelace area is still exact.
/// Returns an empty vector when the ring misses the rectangle.
pub fn clip_ring_to_rect<T: Scalar>(ring: &[Point<T>], rect: &Rect<T>) -> Vec<Point<T>> {
    let mut output: Vec<Point<T>> = ring.to_vec();
    let mut input = Vec::with_capacity(ring.len() + 4);
    for edge in [Edge::Left, Edge::Right, Edge::Bottom, Edge::Top] {
        if output.is_empty() {
            break;
        }
        std::mem::swap(&mut input, &mut output);
        output.clear();
        let mut prev = *input.last().unwrap();
        let mut prev_in = edge.inside(prev, rect);
        for &cur in &input {
            let cur_in = edge.inside(cur, rect);
            if cur_in {
                if !prev_in {
                    output.push(edge.cross(prev, cur, rect));
                }
                output.push(cur);
            } else if prev_in {
                output.push(edge.cross(prev, cur, rect));
            }
            prev = cur;
            prev_in = cur_in;
        }
    }
    output
}

/// Even-odd containment over any number of rings; holes are excluded by parity.
pub fn point_in_polygon<T: Scalar, R: AsRef<[Point<T>]>>(p: Point<T>, rings: &[R]) -> bool {
    let mut inside = false;
    for ring in rings {
        let ring = ring.as_ref();
        let n = ring.len();
        if n < 3 {
            continue;
        }
        let mut j = n - 1;
        for i in 0..n {
            let (a, b) = (ring[i], ring[j]);
            if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
                inside = !inside;
            }
            j = i;
        }
    }
    inside
}
