//! Random-waypoint movement on a square grid.

use rand::Rng;

use crate::context::Point;

#[derive(Debug, Clone, PartialEq)]
pub struct Waypoint {
    pub position: Point,
    pub target: Point,
    pub speed: f64,
}

impl Waypoint {
    pub fn new(position: Point, target: Point, speed: f64) -> Self {
        Waypoint {
            position,
            target,
            speed,
        }
    }

    pub fn velocity(&self) -> Point {
        let d = self.position.distance(&self.target);
        if d == 0.0 || self.speed == 0.0 {
            return Point::default();
        }
        Point::new(
            (self.target.x - self.position.x) / d * self.speed,
            (self.target.y - self.position.y) / d * self.speed,
        )
    }

    /// Moves toward the target for `dt` seconds. On arrival a new target and
    /// speed are drawn; the remainder of the step is not carried over.
    pub fn advance<R: Rng + ?Sized>(&mut self, dt: f64, grid: f64, speed: (f64, f64), rng: &mut R) {
        if self.speed == 0.0 {
            return;
        }
        let remaining = self.position.distance(&self.target);
        let travel = self.speed * dt;
        if travel >= remaining {
            self.position = self.target;
            self.target = Point::new(rng.gen_range(0.0..grid), rng.gen_range(0.0..grid));
            self.speed = draw_speed(speed, rng);
        } else {
            let f = travel / remaining;
            self.position.x += (self.target.x - self.position.x) * f;
            self.position.y += (self.target.y - self.position.y) * f;
        }
        self.position.x = self.position.x.clamp(0.0, grid);
        self.position.y = self.position.y.clamp(0.0, grid);
    }
}

pub fn draw_speed<R: Rng + ?Sized>((lo, hi): (f64, f64), rng: &mut R) -> f64 {
    if lo >= hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}
