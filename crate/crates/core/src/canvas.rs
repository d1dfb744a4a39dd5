//! Cell painter used to build gadget footprints and compiled layouts.
//!
//! Everything starts as wall. Corridors are carved on layer 0. Vertical (N-S)
//! route segments that pass over a horizontal route segment are lifted to
//! layer 2 around the crossing, with risers through layer 1 on both sides:
//!
//! ```text
//! rows r-2 .. r+2 of the vertical at column x:
//!   r-2: layer 0 + riser (layers 1, 2)
//!   r-1, r, r+1: layer 2 only
//!   r+2: layer 0 + riser
//! ```
//!
//! Layer 1 never holds anything but risers, so a bridge cell is never
//! adjacent to the layer-0 corridor it passes over.

use std::collections::BTreeSet;

use crate::geom::Coord;

pub(crate) const BRIDGE_Z: i32 = 2;

#[derive(Debug, Clone, Default)]
pub(crate) struct Canvas {
    pub free: BTreeSet<Coord>,
    pub blocks: BTreeSet<Coord>,
    horizontals: BTreeSet<(i32, i32)>,
    verticals: Vec<(i32, i32, i32)>,
}

fn span(a: i32, b: i32) -> std::ops::RangeInclusive<i32> {
    a.min(b)..=a.max(b)
}

impl Canvas {
    pub fn new() -> Self {
        Canvas::default()
    }

    pub fn carve(&mut self, x: i32, y: i32) {
        self.free.insert(Coord::new(x, y, 0));
    }

    pub fn carve_at(&mut self, c: Coord) {
        self.free.insert(c);
    }

    pub fn block(&mut self, x: i32, y: i32) {
        self.carve(x, y);
        self.blocks.insert(Coord::new(x, y, 0));
    }

    pub fn carve_h(&mut self, y: i32, x0: i32, x1: i32) {
        for x in span(x0, x1) {
            self.carve(x, y);
        }
    }

    pub fn carve_v(&mut self, x: i32, y0: i32, y1: i32) {
        for y in span(y0, y1) {
            self.carve(x, y);
        }
    }

    /// Horizontal segment that vertical route segments may bridge over.
    pub fn route_h(&mut self, y: i32, x0: i32, x1: i32) {
        for x in span(x0, x1) {
            self.carve(x, y);
            self.horizontals.insert((x, y));
        }
    }

    /// Vertical segment, painted by [`Canvas::finish_routes`].
    pub fn route_v(&mut self, x: i32, y0: i32, y1: i32) {
        self.verticals.push((x, y0.min(y1), y0.max(y1)));
    }

    /// Axis-aligned polyline through the given layer-0 points.
    pub fn route(&mut self, points: &[(i32, i32)]) {
        for w in points.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if y0 == y1 {
                self.route_h(y0, x0, x1);
            } else {
                assert_eq!(x0, x1, "route segments must be axis-aligned");
                self.route_v(x0, y0, y1);
            }
        }
    }

    /// Paints deferred vertical segments, lifting them over every horizontal
    /// route cell they cross. Returns the crossing cells (layer 0).
    pub fn finish_routes(&mut self) -> Vec<Coord> {
        let mut crossings = Vec::new();
        let verticals = std::mem::take(&mut self.verticals);
        for (x, y0, y1) in verticals {
            let rows: Vec<i32> = ((y0 + 1)..y1).filter(|&y| self.horizontals.contains(&(x, y))).collect();
            let mut lifted = BTreeSet::new();
            for &r in &rows {
                assert!(r - 2 >= y0 && r + 2 <= y1, "crossing at ({x},{r}) too close to segment end");
                lifted.extend([r - 1, r, r + 1]);
                crossings.push(Coord::new(x, r, 0));
            }
            for y in y0..=y1 {
                if lifted.contains(&y) {
                    self.free.insert(Coord::new(x, y, BRIDGE_Z));
                } else {
                    self.carve(x, y);
                    if lifted.contains(&(y - 1)) || lifted.contains(&(y + 1)) {
                        for z in 1..=BRIDGE_Z {
                            self.free.insert(Coord::new(x, y, z));
                        }
                    }
                }
            }
        }
        crossings.sort_by_key(|c| c.zyx());
        crossings
    }

    pub fn depth(&self) -> i32 {
        self.free.iter().map(|c| c.z + 1).max().unwrap_or(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_is_bridged() {
        let mut c = Canvas::new();
        c.route(&[(0, 4), (8, 4)]);
        c.route(&[(4, 0), (4, 8)]);
        let x = c.finish_routes();
        assert_eq!(x, vec![Coord::new(4, 4, 0)]);
        assert!(c.free.contains(&Coord::new(4, 4, 0)));
        assert!(c.free.contains(&Coord::new(4, 4, 2)));
        assert!(!c.free.contains(&Coord::new(4, 4, 1)));
        assert!(!c.free.contains(&Coord::new(4, 3, 0)));
        assert!(c.free.contains(&Coord::new(4, 2, 1)));
        assert!(c.free.contains(&Coord::new(4, 6, 1)));
        assert_eq!(c.depth(), 3);
    }

    #[test]
    fn adjacent_crossings_share_one_bridge() {
        let mut c = Canvas::new();
        c.route(&[(0, 4), (8, 4)]);
        c.route(&[(0, 6), (8, 6)]);
        c.route(&[(4, 0), (4, 10)]);
        assert_eq!(c.finish_routes().len(), 2);
        assert!(c.free.contains(&Coord::new(4, 5, 2)));
        assert!(!c.free.contains(&Coord::new(4, 5, 0)));
        assert!(!c.free.contains(&Coord::new(4, 5, 1)));
    }
}
