use std::collections::{HashMap, VecDeque};
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use num_complex::Complex64;

use crate::error::{bail, Result};
use crate::geometry::{distance, DiskPoint, IsometryElement};

const SIDES: usize = 8;
const MAX_REDUCTION_STEPS: usize = 10_000;

/// A cocompact surface group given by the side pairings of a regular
/// octagon centred at 0 (the Bolza surface, genus 2).
///
/// Generator `k < 4` is the translation by `2m` along the direction `kπ/4`,
/// `m` the edge-midpoint radius; it carries side `k + 4` onto side `k`.
/// Generators `4..8` are their inverses.
#[derive(Debug, Clone, PartialEq)]
pub struct FuchsianGroup {
    generators: Vec<IsometryElement>,
    vertex_radius: f64,
    edge_midpoint_radius: f64,
}

impl FuchsianGroup {
    pub fn generators(&self) -> &[IsometryElement] {
        &self.generators
    }

    /// Distance from 0 to an octagon vertex.
    pub fn vertex_radius(&self) -> f64 {
        self.vertex_radius
    }

    /// Distance from 0 to the midpoint of a side (the inradius).
    pub fn edge_midpoint_radius(&self) -> f64 {
        self.edge_midpoint_radius
    }

    /// Area of the fundamental domain, `4π` by Gauss–Bonnet.
    pub fn area(&self) -> f64 {
        4.0 * std::f64::consts::PI
    }

    /// Direction of the midpoint of side `k`.
    pub fn side_direction(k: usize) -> f64 {
        (k % SIDES) as f64 * FRAC_PI_4
    }

    /// Endpoints of side `k`, counter-clockwise.
    pub fn side_vertices(&self, k: usize) -> Result<(DiskPoint, DiskPoint)> {
        let t = Self::side_direction(k);
        Ok((
            DiskPoint::from_polar(self.vertex_radius, t - FRAC_PI_8)?,
            DiskPoint::from_polar(self.vertex_radius, t + FRAC_PI_8)?,
        ))
    }

    /// Signed distance from `p` to the geodesic carrying side `k`, positive
    /// on the side of the origin.
    pub fn side_distance(&self, p: &DiskPoint, k: usize) -> f64 {
        // Hyperboloid model: the side is {X : ⟨X, N⟩ = 0} with spacelike
        // unit normal N = (sinh m, cosh m·e_k), so sinh(dist) = |⟨X, N⟩|.
        let w = p.coord();
        let s = 1.0 - w.norm_sqr();
        let x0 = (2.0 - s) / s;
        let along = 2.0 * (w * Complex64::from_polar(1.0, -Self::side_direction(k))).re / s;
        let m = self.edge_midpoint_radius;
        (x0 * m.sinh() - along * m.cosh()).asinh()
    }

    /// Distance from `p` to the boundary of the octagon; negative outside.
    pub fn boundary_distance(&self, p: &DiskPoint) -> f64 {
        (0..SIDES)
            .map(|k| self.side_distance(p, k))
            .fold(f64::INFINITY, f64::min)
    }

    /// `T0 T3 T2⁻¹ T1 T0⁻¹ T3⁻¹ T2 T1⁻¹`, which is ±identity.
    pub fn relator(&self) -> IsometryElement {
        const WORD: [usize; 8] = [0, 3, 6, 1, 4, 7, 2, 5];
        WORD.iter().fold(IsometryElement::identity(), |acc, &i| {
            acc.compose(&self.generators[i])
        })
    }

    fn self_check(&self) -> Result<()> {
        for k in 0..4 {
            let g = &self.generators[k];
            let (a, b) = self.side_vertices(k + 4)?;
            let (c, d) = self.side_vertices(k)?;
            let (ga, gb) = (g.apply(&a)?, g.apply(&b)?);
            let fits = |x: &DiskPoint, y: &DiskPoint| (x.coord() - y.coord()).norm() < 1e-9;
            if !((fits(&ga, &d) && fits(&gb, &c)) || (fits(&ga, &c) && fits(&gb, &d))) {
                bail!(
                    Internal,
                    "generator {k} does not pair side {} with side {k}",
                    k + 4
                );
            }
        }
        if let Some(k) = self.generators.iter().position(|g| g.trace().abs() <= 2.0) {
            bail!(Internal, "generator {k} is not hyperbolic");
        }
        let rel = self
            .relator()
            .projective_distance(&IsometryElement::identity());
        if rel > 1e-7 {
            bail!(
                Internal,
                "surface-group relator is {rel:e} away from the identity"
            );
        }
        Ok(())
    }
}

/// The genus-2 regular-octagon group.
///
/// In the right triangle (centre, edge midpoint, vertex) the angles at the
/// centre and at the vertex are both `π/8` (eight interior angles `π/4`
/// meeting at one point), so `cosh(vertex radius) = cot²(π/8)` and
/// `cosh(midpoint radius) = cos(π/8)/sin(π/8)`.
pub fn octagon_group() -> Result<FuchsianGroup> {
    let cot = 1.0 / FRAC_PI_8.tan();
    let vertex_radius = (cot * cot).acosh();
    let edge_midpoint_radius = (FRAC_PI_8.cos() / FRAC_PI_8.sin()).acosh();
    // Consistency of the two legs with the hypotenuse: tanh b = tanh c cos A.
    if (edge_midpoint_radius.tanh() - vertex_radius.tanh() * FRAC_PI_8.cos()).abs() > 1e-12 {
        bail!(Internal, "octagon right-triangle identities disagree");
    }
    FuchsianGroup::regular_octagon(edge_midpoint_radius)
}

impl FuchsianGroup {
    /// Side pairings of the regular octagon with inradius `m`, checked for
    /// consistency; only `m = arccosh(cot(π/8))` yields a surface group.
    pub fn regular_octagon(edge_midpoint_radius: f64) -> Result<Self> {
        let m = edge_midpoint_radius;
        if !(m.is_finite() && m > 0.0) {
            bail!(InvalidArgument, "inradius must be positive, got {m}");
        }
        let vertex_radius = (m.tanh() / FRAC_PI_8.cos()).atanh();
        if !vertex_radius.is_finite() {
            bail!(Domain, "an octagon with inradius {m} has ideal vertices");
        }
        let forward: Vec<IsometryElement> = (0..4)
            .map(|k| IsometryElement::translation(Self::side_direction(k), 2.0 * m))
            .collect();
        let mut generators = forward.clone();
        generators.extend(forward.iter().map(IsometryElement::inverse));
        let group = Self {
            generators,
            vertex_radius,
            edge_midpoint_radius: m,
        };
        group.self_check()?;
        Ok(group)
    }
}

/// Greedy reduction into the closed Dirichlet domain about 0: repeatedly
/// applies the generator that most decreases the distance to 0. Returns the
/// reduced point and the element `g` with `g·p` equal to it.
pub fn reduce_to_fundamental(
    p: &DiskPoint,
    group: &FuchsianGroup,
) -> Result<(DiskPoint, IsometryElement)> {
    let mut cur = p.coord();
    let mut acc = IsometryElement::identity();
    for _ in 0..MAX_REDUCTION_STEPS {
        let r2 = cur.norm_sqr();
        let mut best: Option<(usize, Complex64, f64)> = None;
        for (i, g) in group.generators.iter().enumerate() {
            let w = (g.a() * cur + g.b()) / (g.b().conj() * cur + g.a().conj());
            let n = w.norm_sqr();
            // Strict decrease, with a relative guard so points on a side
            // never bounce between the two paired copies.
            if n < r2 * (1.0 - 1e-13) && best.is_none_or(|(_, _, bn)| n < bn) {
                best = Some((i, w, n));
            }
        }
        match best {
            None => return Ok((DiskPoint::new(cur)?, acc)),
            Some((i, w, _)) => {
                cur = w;
                acc = group.generators[i].compose(&acc);
            }
        }
    }
    bail!(
        Numeric,
        "fundamental-domain reduction did not terminate; group invariants violated"
    )
}

/// A group element with the image of the origin under it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitElement {
    pub element: IsometryElement,
    pub image: DiskPoint,
    /// `d(0, element·0)`.
    pub distance: f64,
}

/// All elements `γ` with `d(0, γ·0) ≤ radius`, sorted by that distance.
#[derive(Debug, Clone)]
pub struct Orbit {
    elements: Vec<OrbitElement>,
    radius: f64,
}

impl Orbit {
    /// Breadth-first search by left multiplication with the generators.
    /// Complete because greedy reduction of `γ·0` strictly decreases the
    /// distance to 0 at each step, so every element within the radius is
    /// reached through elements within the radius. Distinct elements have
    /// distinct images of 0 (the group is torsion-free), which is the
    /// deduplication key.
    pub fn enumerate(group: &FuchsianGroup, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            bail!(
                InvalidArgument,
                "orbit radius must be finite and ≥ 0, got {radius}"
            );
        }
        if radius > 24.0 {
            bail!(
                InvalidArgument,
                "orbit radius {radius} exceeds the enumerable range"
            );
        }
        const CELL: f64 = 1e-7;
        let key = |w: Complex64| ((w.re / CELL).round() as i64, (w.im / CELL).round() as i64);
        let mut seen: HashMap<(i64, i64), usize> = HashMap::new();
        let mut elements = Vec::new();
        let mut queue = VecDeque::new();
        let origin = DiskPoint::origin();
        let id = OrbitElement {
            element: IsometryElement::identity(),
            image: origin,
            distance: 0.0,
        };
        seen.insert(key(origin.coord()), 0);
        elements.push(id);
        queue.push_back(0usize);
        while let Some(i) = queue.pop_front() {
            let base = elements[i].element;
            for g in &group.generators {
                let e = g.compose(&base);
                let image = e.apply(&origin)?;
                let d = distance(&origin, &image);
                if d > radius {
                    continue;
                }
                let (kx, ky) = key(image.coord());
                let dup = (-1..=1).any(|dx| {
                    (-1..=1).any(|dy| {
                        seen.get(&(kx + dx, ky + dy))
                            .is_some_and(|&j| distance(&elements[j].image, &image) < 1e-3)
                    })
                });
                if dup {
                    continue;
                }
                seen.insert((kx, ky), elements.len());
                elements.push(OrbitElement {
                    element: e,
                    image,
                    distance: d,
                });
                queue.push_back(elements.len() - 1);
            }
        }
        elements.sort_by(|a, b| a.distance.total_cmp(&b.distance));
        Ok(Self { elements, radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn elements(&self) -> &[OrbitElement] {
        &self.elements
    }

    /// The elements with `d(0, γ·0) ≤ r`.
    pub fn within(&self, r: f64) -> &[OrbitElement] {
        let n = self.elements.partition_point(|e| e.distance <= r);
        &self.elements[..n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn group() -> FuchsianGroup {
        octagon_group().unwrap()
    }

    #[test]
    fn octagon_constants() {
        let g = group();
        assert!((g.vertex_radius() - 2.448_452_447_678_076).abs() < 1e-12);
        let cot = 1.0 / (PI / 8.0).tan();
        assert!((g.vertex_radius().cosh() - cot * cot).abs() < 1e-12);
        assert!((g.edge_midpoint_radius().cosh() - cot).abs() < 1e-12);
        assert_eq!(g.generators().len(), 8);
        assert!(
            g.relator()
                .projective_distance(&IsometryElement::identity())
                < 1e-9
        );
        // Any other inradius breaks the vertex cycle and is rejected.
        assert!(matches!(
            FuchsianGroup::regular_octagon(g.edge_midpoint_radius() * (1.0 + 1e-3)),
            Err(crate::Error::Internal(_))
        ));
        assert!(FuchsianGroup::regular_octagon(5.0).is_err());
    }

    #[test]
    fn interior_angles_sum_to_full_turn() {
        let g = group();
        let mut total = 0.0;
        for k in 0..8 {
            // Angle at the vertex shared by sides k and k+1, between the two
            // sides' tangent directions.
            let (_, v) = g.side_vertices(k).unwrap();
            let (a, _) = g.side_vertices(k).unwrap();
            let (_, b) = g.side_vertices(k + 1).unwrap();
            let to = |p: &DiskPoint| {
                let t = crate::geometry::translate_to_origin(&v);
                t.apply(p).unwrap().coord().arg()
            };
            let mut ang = (to(&a) - to(&b)).abs();
            if ang > PI {
                ang = 2.0 * PI - ang;
            }
            total += ang;
            assert!((ang - PI / 4.0).abs() < 1e-12, "angle {ang}");
            assert!((distance(&a, &v) - distance(&v, &b)).abs() < 1e-12);
        }
        assert!((total - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn side_distance_geometry() {
        let g = group();
        let m = g.edge_midpoint_radius();
        assert!((g.boundary_distance(&DiskPoint::origin()) - m).abs() < 1e-12);
        let (v, _) = g.side_vertices(3).unwrap();
        assert!(g.side_distance(&v, 3).abs() < 1e-10);
        let out = DiskPoint::from_polar(m + 0.1, 0.0).unwrap();
        assert!((g.side_distance(&out, 0) + 0.1).abs() < 1e-12);
    }

    #[test]
    fn reduction_examples() {
        let g = group();
        let (p, e) = reduce_to_fundamental(&DiskPoint::origin(), &g).unwrap();
        assert_eq!(p, DiskPoint::origin());
        assert_eq!(e, IsometryElement::identity());
        let q = DiskPoint::from_xy(0.3, -0.2).unwrap();
        let (p, e) = reduce_to_fundamental(&q, &g).unwrap();
        assert_eq!((p, e), (q, IsometryElement::identity()));
        for gen in g.generators() {
            let moved = gen.apply(&q).unwrap();
            let (back, e) = reduce_to_fundamental(&moved, &g).unwrap();
            assert!((back.coord() - q.coord()).norm() < 1e-9);
            assert!((e.apply(&moved).unwrap().coord() - back.coord()).norm() < 1e-10);
        }
    }

    #[test]
    fn orbit_counts_follow_area_growth() {
        let g = group();
        let orbit = Orbit::enumerate(&g, 9.0).unwrap();
        // #{γ : d(0, γ0) ≤ R} ~ area(B_R)/area(F) = (cosh R − 1)/2.
        let expected = (9f64.cosh() - 1.0) / 2.0;
        let n = orbit.elements().len() as f64;
        assert!((n / expected - 1.0).abs() < 0.15, "{n} vs {expected}");
        assert_eq!(orbit.within(0.0).len(), 1);
        // The eight nearest neighbours sit at distance 2m.
        let first = orbit.within(2.0 * g.edge_midpoint_radius() + 1e-9);
        assert_eq!(first.len(), 9);
        // Distinct images.
        for w in orbit.elements().windows(2) {
            assert!(w[0].distance <= w[1].distance);
        }
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_invariant(
            r in 0.0f64..6.0, a in 0.0f64..std::f64::consts::TAU,
            word in proptest::collection::vec(0usize..8, 0..=3),
        ) {
            let g = group();
            let p = DiskPoint::from_polar(r, a).unwrap();
            let (red, e) = reduce_to_fundamental(&p, &g).unwrap();
            prop_assert!(g.boundary_distance(&red) > -1e-9);
            prop_assert!((e.apply(&p).unwrap().coord() - red.coord()).norm() < 1e-10);
            let (again, id) = reduce_to_fundamental(&red, &g).unwrap();
            prop_assert_eq!(again, red);
            prop_assert_eq!(id, IsometryElement::identity());
            let w = word.iter().fold(IsometryElement::identity(), |acc, &i| acc.compose(&g.generators()[i]));
            let (other, _) = reduce_to_fundamental(&w.apply(&p).unwrap(), &g).unwrap();
            prop_assert!((other.coord() - red.coord()).norm() < 1e-8);
        }
    }
}
