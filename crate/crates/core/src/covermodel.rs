//! Combinatorial model of the universal abelian cover Ŝ and an exact oracle
//! for ℤ-valued intersection numbers of arcs in it.
//!
//! Ŝ is the thickened Cayley graph of ℤ^{2g}: one 4g-gon per lattice point,
//! one ribbon per lattice edge. Around each polygon the sides are attached,
//! in cyclic order, to the ribbons in directions
//! `a1+, b1-, a1-, b1+, ..., ag+, bg-, ag-, bg+`.
//!
//! The boundary circle of a polygon is parametrized by integer positions
//! `0..8g·SCALE`: side `k` occupies `[2k·SCALE, (2k+1)·SCALE]`, and the
//! boundary corner `k` (between sides `k` and `k+1`) occupies the next
//! `SCALE` units. Arcs are sequences of chords (pairs of positions on one
//! polygon) joined by ribbon traversals. Two chords in the same polygon
//! cross iff their endpoints interleave; no geometry is involved.
//!
//! Orientation: the surface is oriented so that travelling through
//! *decreasing* positions is the positive direction around each polygon.
//! With this choice `(a_i, b_i) = +1` on H, and the positive boundary
//! direction (surface on the left) also runs through decreasing positions.

use serde_json::{json, Value};

use crate::error::{check_valid_genus, Error, Result};
use crate::groupring::{ExponentVector, GroupRingElem};
use crate::pairing::Sign;

/// Integer length of one side (and of one boundary corner).
pub const SCALE: i64 = 12;

/// +1 if increasing positions are positively oriented, -1 otherwise.
const ORIENTATION: i64 = -1;

const UNPUSHED_T: i64 = 6;
const PUSHED_T: i64 = 4;
const HUG_T: i64 = 1;

/// Which end of a graph edge a polygon side belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HalfEdge {
    /// The tail, written `X+`: the ribbon leaves in the `+x` direction.
    Tail,
    /// The head, written `X-`.
    Head,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SideLabel {
    /// 0-based generator of H: `a1..ag` then `b1..bg`.
    pub generator: usize,
    pub end: HalfEdge,
}

impl SideLabel {
    pub fn name(&self, genus: usize) -> String {
        let base = crate::freegroup::generator_name(genus, self.generator);
        match self.end {
            HalfEdge::Tail => format!("{base}+"),
            HalfEdge::Head => format!("{base}-"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum MarkKind {
    /// A lift of the basepoint `*`.
    Base,
    /// A lift of the second basepoint `*'`, next to `*` in the positive
    /// boundary direction.
    Pushed,
}

/// A marked boundary point on the basepoint corner of a polygon.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mark {
    pub polygon: ExponentVector,
    pub kind: MarkKind,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chord {
    pub polygon: ExponentVector,
    pub from: i64,
    pub to: i64,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Segment {
    Chord(Chord),
    Ribbon { from: ExponentVector, from_side: usize, to: ExponentVector, to_side: usize },
}

/// A combinatorial arc in Ŝ between two marked points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddedArc {
    pub start: Mark,
    pub end: Mark,
    pub segments: Vec<Segment>,
}

impl EmbeddedArc {
    pub fn chords(&self) -> impl Iterator<Item = &Chord> {
        self.segments.iter().filter_map(|s| match s {
            Segment::Chord(c) => Some(c),
            Segment::Ribbon { .. } => None,
        })
    }

    pub fn translate(&self, h: &ExponentVector) -> Self {
        let mv = |p: &ExponentVector| p.add(h);
        EmbeddedArc {
            start: Mark { polygon: mv(&self.start.polygon), kind: self.start.kind },
            end: Mark { polygon: mv(&self.end.polygon), kind: self.end.kind },
            segments: self
                .segments
                .iter()
                .map(|s| match s {
                    Segment::Chord(c) => {
                        Segment::Chord(Chord { polygon: mv(&c.polygon), from: c.from, to: c.to })
                    }
                    Segment::Ribbon { from, from_side, to, to_side } => Segment::Ribbon {
                        from: mv(from),
                        from_side: *from_side,
                        to: mv(to),
                        to_side: *to_side,
                    },
                })
                .collect(),
        }
    }
}

/// The polygon record at one lattice point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polygon {
    pub center: ExponentVector,
    pub sides: Vec<SideLabel>,
}

/// The finite region `[-R, R]^{2g}` of the cover. Polygons are generated on
/// demand; all of them are combinatorially identical.
#[derive(Clone, Debug)]
pub struct CoverWindow {
    genus: usize,
    radius: i32,
}

impl CoverWindow {
    pub fn new(genus: usize, radius: i32) -> Result<Self> {
        check_valid_genus(genus)?;
        if radius < 1 {
            return Err(Error::precondition(format!("window radius must be >= 1, got {radius}")));
        }
        Ok(CoverWindow { genus, radius })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn radius(&self) -> i32 {
        self.radius
    }

    pub fn side_count(&self) -> usize {
        4 * self.genus
    }

    pub fn perimeter(&self) -> i64 {
        8 * self.genus as i64 * SCALE
    }

    /// Cyclic side order `A1+, B1-, A1-, B1+, ...`.
    pub fn side_label(&self, side: usize) -> SideLabel {
        let (handle, r) = (side / 4, side % 4);
        let g = self.genus;
        match r {
            0 => SideLabel { generator: handle, end: HalfEdge::Tail },
            1 => SideLabel { generator: g + handle, end: HalfEdge::Head },
            2 => SideLabel { generator: handle, end: HalfEdge::Head },
            _ => SideLabel { generator: g + handle, end: HalfEdge::Tail },
        }
    }

    pub fn side_index(&self, label: SideLabel) -> usize {
        let g = self.genus;
        let (handle, is_b) =
            if label.generator < g { (label.generator, false) } else { (label.generator - g, true) };
        4 * handle
            + match (is_b, label.end) {
                (false, HalfEdge::Tail) => 0,
                (true, HalfEdge::Head) => 1,
                (false, HalfEdge::Head) => 2,
                (true, HalfEdge::Tail) => 3,
            }
    }

    /// Number of lattice points in the window.
    pub fn polygon_count(&self) -> u64 {
        (2 * self.radius as u64 + 1).saturating_pow(2 * self.genus as u32)
    }

    pub fn contains(&self, p: &ExponentVector) -> bool {
        p.genus() == self.genus && p.max_abs() <= self.radius
    }

    pub fn polygon(&self, p: &ExponentVector) -> Option<Polygon> {
        self.contains(p).then(|| Polygon {
            center: p.clone(),
            sides: (0..self.side_count()).map(|s| self.side_label(s)).collect(),
        })
    }

    /// Every lattice point of the window, in lexicographic order.
    pub fn polygons(&self) -> impl Iterator<Item = ExponentVector> + '_ {
        lattice_cube(self.genus, self.radius)
    }

    /// The far end of the ribbon on side `side` of polygon `p`, ignoring the
    /// window bound.
    fn ribbon_unbounded(&self, p: &ExponentVector, side: usize) -> (ExponentVector, usize) {
        let label = self.side_label(side);
        let step = ExponentVector::unit(self.genus, label.generator);
        match label.end {
            HalfEdge::Tail => (
                p.add(&step),
                self.side_index(SideLabel { generator: label.generator, end: HalfEdge::Head }),
            ),
            HalfEdge::Head => (
                p.sub(&step),
                self.side_index(SideLabel { generator: label.generator, end: HalfEdge::Tail }),
            ),
        }
    }

    /// The polygon and side at the far end of the ribbon attached to `side`
    /// of polygon `p`, if it lies in the window.
    pub fn ribbon(&self, p: &ExponentVector, side: usize) -> Option<(ExponentVector, usize)> {
        let (q, s) = self.ribbon_unbounded(p, side);
        self.contains(&q).then_some((q, s))
    }

    fn side_position(&self, side: usize, t: i64) -> i64 {
        2 * side as i64 * SCALE + t
    }

    fn corner_start(&self, corner: usize) -> i64 {
        (2 * corner as i64 + 1) * SCALE
    }

    /// Position of a marked point; both marks sit on the corner between
    /// `Bg+` and `A1+`.
    pub fn mark_position(&self, kind: MarkKind) -> i64 {
        let base = self.corner_start(self.side_count() - 1) + SCALE / 2;
        match kind {
            MarkKind::Base => base,
            MarkKind::Pushed => base + ORIENTATION * (SCALE / 4),
        }
    }

    /// Debug dump of the window (polygons, side labels, ribbons). The format
    /// is not stable.
    pub fn to_debug_json(&self) -> Value {
        let polys: Vec<Value> = self
            .polygons()
            .map(|p| {
                let ribbons: Vec<Value> = (0..self.side_count())
                    .map(|s| match self.ribbon(&p, s) {
                        Some((q, t)) => json!({ "side": s, "to": q.as_slice(), "to_side": t }),
                        None => json!({ "side": s, "to": null }),
                    })
                    .collect();
                json!({ "center": p.as_slice(), "ribbons": ribbons })
            })
            .collect();
        let sides: Vec<String> =
            (0..self.side_count()).map(|s| self.side_label(s).name(self.genus)).collect();
        json!({ "genus": self.genus, "radius": self.radius, "sides": sides, "polygons": polys })
    }
}

fn lattice_cube(genus: usize, radius: i32) -> impl Iterator<Item = ExponentVector> {
    let dims = 2 * genus;
    let mut cur: Option<Vec<i32>> = Some(vec![-radius; dims]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut k = dims;
        loop {
            if k == 0 {
                cur = None;
                break;
            }
            k -= 1;
            if next[k] < radius {
                next[k] += 1;
                cur = Some(next);
                break;
            }
            next[k] = -radius;
        }
        Some(ExponentVector::from_slice(&out).expect("even length"))
    })
}

/// Incremental arc construction: tracks the current polygon and position.
struct ArcBuilder<'w> {
    window: &'w CoverWindow,
    polygon: ExponentVector,
    position: i64,
    segments: Vec<Segment>,
}

impl<'w> ArcBuilder<'w> {
    fn start(window: &'w CoverWindow, polygon: ExponentVector, position: i64) -> Self {
        ArcBuilder { window, polygon, position, segments: Vec::new() }
    }

    fn check(&self, p: &ExponentVector) -> Result<()> {
        if self.window.contains(p) {
            Ok(())
        } else {
            Err(Error::WindowOverflow { radius: self.window.radius })
        }
    }

    /// Chord to parameter `t` on `side`, then across its ribbon.
    fn through_side(&mut self, side: usize, t: i64) -> Result<()> {
        self.check(&self.polygon)?;
        let exit = self.window.side_position(side, t);
        self.segments.push(Segment::Chord(Chord {
            polygon: self.polygon.clone(),
            from: self.position,
            to: exit,
        }));
        let (q, s) = self.window.ribbon_unbounded(&self.polygon, side);
        self.check(&q)?;
        self.segments.push(Segment::Ribbon {
            from: self.polygon.clone(),
            from_side: side,
            to: q.clone(),
            to_side: s,
        });
        self.polygon = q;
        self.position = self.window.side_position(s, SCALE - t);
        Ok(())
    }

    /// Walks once around the boundary lift through the basepoint corner of
    /// the current polygon, staying just inside the surface. `dir` is +1 for
    /// increasing positions. Ends next to the same corner on the other side.
    fn hug_boundary(&mut self, dir: i64) -> Result<()> {
        let n = self.window.side_count();
        let start = self.polygon.clone();
        let mut corner = n - 1;
        for _ in 0..n {
            let (side, t) = if dir > 0 { ((corner + 1) % n, HUG_T) } else { (corner, SCALE - HUG_T) };
            self.through_side(side, t)?;
            let arrived = self.position - 2 * (self.position / (2 * SCALE)) * SCALE;
            let arrived_side = (self.position / (2 * SCALE)) as usize;
            debug_assert!(arrived > 0 && arrived < SCALE);
            corner = if dir > 0 { arrived_side } else { (arrived_side + n - 1) % n };
        }
        debug_assert_eq!(self.polygon, start);
        debug_assert_eq!(corner, n - 1);
        Ok(())
    }

    fn finish(mut self, end: i64, start: Mark, end_kind: MarkKind) -> Result<EmbeddedArc> {
        self.check(&self.polygon)?;
        self.segments.push(Segment::Chord(Chord {
            polygon: self.polygon.clone(),
            from: self.position,
            to: end,
        }));
        Ok(EmbeddedArc { start, end: Mark { polygon: self.polygon, kind: end_kind }, segments: self.segments })
    }
}

/// A representative of `h·s_i` (basis arc over generator `i`, translated by
/// `h`). With `push = Some(σ)` the representative of `h·φ_σ(s_i)` is built
/// instead: both endpoints slide from `*̂` marks to `*̂'` marks, for `σ = +`
/// along the short boundary arc and for `σ = -` the long way, once around
/// the whole boundary lift.
pub fn embed_basis_arc(
    window: &CoverWindow,
    i: usize,
    h: &ExponentVector,
    push: Option<Sign>,
) -> Result<EmbeddedArc> {
    let g = window.genus;
    if i >= 2 * g {
        return Err(Error::IndexOutOfRange { index: i, genus: g });
    }
    if h.genus() != g {
        return Err(Error::GenusMismatch { left: g, right: h.genus() });
    }
    let tail = window.side_index(SideLabel { generator: i, end: HalfEdge::Tail });
    let base = window.mark_position(MarkKind::Base);
    let pushed = window.mark_position(MarkKind::Pushed);
    match push {
        None => {
            let mut b = ArcBuilder::start(window, h.clone(), base);
            b.through_side(tail, UNPUSHED_T)?;
            b.finish(base, Mark { polygon: h.clone(), kind: MarkKind::Base }, MarkKind::Base)
        }
        Some(Sign::Plus) => {
            let mut b = ArcBuilder::start(window, h.clone(), pushed);
            b.through_side(tail, PUSHED_T)?;
            b.finish(pushed, Mark { polygon: h.clone(), kind: MarkKind::Pushed }, MarkKind::Pushed)
        }
        Some(Sign::Minus) => {
            // -ξ₋, then s_i, then z_i·ξ₋; ξ₋ runs in the negative direction.
            let positive = ORIENTATION;
            let mut b = ArcBuilder::start(window, h.clone(), pushed);
            b.hug_boundary(positive)?;
            b.through_side(tail, PUSHED_T)?;
            b.hug_boundary(-positive)?;
            b.finish(pushed, Mark { polygon: h.clone(), kind: MarkKind::Pushed }, MarkKind::Pushed)
        }
    }
}

/// The arc from `*̂(h)` along generator `i` in the negative direction, ending
/// at `*̂(h - z_i)`. Its class is `-h·z_i⁻¹·s_i`.
pub fn embed_backward_arc(window: &CoverWindow, i: usize, h: &ExponentVector) -> Result<EmbeddedArc> {
    let g = window.genus;
    if i >= 2 * g {
        return Err(Error::IndexOutOfRange { index: i, genus: g });
    }
    let head = window.side_index(SideLabel { generator: i, end: HalfEdge::Head });
    let base = window.mark_position(MarkKind::Base);
    let mut b = ArcBuilder::start(window, h.clone(), base);
    b.through_side(head, UNPUSHED_T)?;
    b.finish(base, Mark { polygon: h.clone(), kind: MarkKind::Base }, MarkKind::Base)
}

/// Strictly inside the open arc from `a` to `b` in increasing direction.
fn strictly_between(a: i64, b: i64, x: i64, perimeter: i64) -> bool {
    let d = (x - a).rem_euclid(perimeter);
    d > 0 && d < (b - a).rem_euclid(perimeter)
}

/// Signed crossing count of two chords drawn in one polygon.
fn chord_crossing(x: &Chord, y: &Chord, perimeter: i64) -> Result<i64> {
    let ends = [x.from, x.to, y.from, y.to];
    for a in 0..4 {
        for b in a + 1..4 {
            if ends[a] == ends[b] {
                return Err(Error::precondition("chords meet at an endpoint; not transverse"));
            }
        }
    }
    let y0_in = strictly_between(x.from, x.to, y.from, perimeter);
    let y1_in = strictly_between(x.from, x.to, y.to, perimeter);
    if y0_in == y1_in {
        return Ok(0);
    }
    let sign = if y0_in { 1 } else { -1 };
    Ok(ORIENTATION * sign)
}

/// Algebraic intersection number `(x, y)` of two arcs with disjoint endpoint
/// marks. Antisymmetric: `(y, x) = -(x, y)`.
pub fn intersection_number(window: &CoverWindow, x: &EmbeddedArc, y: &EmbeddedArc) -> Result<i64> {
    for mx in [&x.start, &x.end] {
        for my in [&y.start, &y.end] {
            if mx == my {
                return Err(Error::SharedEndpoint);
            }
        }
    }
    let perimeter = window.perimeter();
    let mut total = 0;
    for cx in x.chords() {
        for cy in y.chords() {
            if cx.polygon == cy.polygon {
                total += chord_crossing(cx, cy, perimeter)?;
            }
        }
    }
    Ok(total)
}

/// `⟨s_i, s_j⟩_σ = Σ_h (s_i, h·φ_σ(s_j)) h`, summed over translates `h` in
/// `[-R, R]^{2g}`.
///
/// Only translates whose arc shares a polygon with `s_i` can contribute, so
/// the sum is evaluated by pairing chords directly rather than by scanning
/// the whole window. Any nonzero contribution on the outer shell
/// `‖h‖∞ = R` (or beyond) means the window cannot certify the support, and
/// is reported as an error.
pub fn pairing_oracle(genus: usize, i: usize, j: usize, sign: Sign, radius: i32) -> Result<GroupRingElem> {
    if radius < 2 {
        return Err(Error::precondition(format!("oracle radius must be >= 2, got {radius}")));
    }
    let window = CoverWindow::new(genus, radius)?;
    let origin = ExponentVector::zero(genus);
    let x = embed_basis_arc(&window, i, &origin, None)?;
    let y = embed_basis_arc(&window, j, &origin, Some(sign))?;
    let perimeter = window.perimeter();
    let mut contributions: std::collections::BTreeMap<ExponentVector, i64> = Default::default();
    for cx in x.chords() {
        for cy in y.chords() {
            let h = cx.polygon.sub(&cy.polygon);
            let moved = Chord { polygon: cx.polygon.clone(), from: cy.from, to: cy.to };
            let v = chord_crossing(cx, &moved, perimeter)?;
            *contributions.entry(h).or_insert(0) += v;
        }
    }
    let mut out = GroupRingElem::zero(genus);
    for (h, v) in contributions {
        if v == 0 {
            continue;
        }
        if h.max_abs() >= radius {
            return Err(Error::WindowTooSmall { radius, translate: h.to_string() });
        }
        out += &GroupRingElem::monomial(h, v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin(g: usize) -> ExponentVector {
        ExponentVector::zero(g)
    }

    #[test]
    fn window_counts() {
        let w = CoverWindow::new(1, 1).unwrap();
        assert_eq!(w.polygon_count(), 9);
        assert_eq!(w.polygons().count(), 9);
        assert_eq!(w.side_count(), 4);
        let w = CoverWindow::new(2, 1).unwrap();
        assert_eq!(w.polygon_count(), 81);
        assert_eq!(w.polygons().count(), 81);
        assert!(w.polygons().all(|p| w.polygon(&p).unwrap().sides.len() == 8));
        assert!(CoverWindow::new(0, 1).is_err());
        assert!(CoverWindow::new(1, 0).is_err());
    }

    #[test]
    fn side_order() {
        let w = CoverWindow::new(2, 1).unwrap();
        let names: Vec<String> = (0..8).map(|s| w.side_label(s).name(2)).collect();
        assert_eq!(names, ["A1+", "B1-", "A1-", "B1+", "A2+", "B2-", "A2-", "B2+"]);
        for s in 0..8 {
            assert_eq!(w.side_index(w.side_label(s)), s);
        }
    }

    #[test]
    fn ribbons_pair_up() {
        let w = CoverWindow::new(2, 1).unwrap();
        for p in w.polygons() {
            for s in 0..w.side_count() {
                if let Some((q, t)) = w.ribbon(&p, s) {
                    assert_eq!(w.ribbon(&q, t), Some((p.clone(), s)));
                    let a = w.side_label(s);
                    let b = w.side_label(t);
                    assert_eq!(a.generator, b.generator);
                    assert_ne!(a.end, b.end);
                }
            }
        }
    }

    #[test]
    fn alpha_one_description() {
        let w = CoverWindow::new(1, 2).unwrap();
        let arc = embed_basis_arc(&w, 0, &origin(1), None).unwrap();
        let a1 = ExponentVector::unit(1, 0);
        assert_eq!(arc.start, Mark { polygon: origin(1), kind: MarkKind::Base });
        assert_eq!(arc.end, Mark { polygon: a1.clone(), kind: MarkKind::Base });
        match &arc.segments[..] {
            [Segment::Chord(c0), Segment::Ribbon { from, from_side, to, to_side }, Segment::Chord(c1)] => {
                assert_eq!(c0.polygon, origin(1));
                assert_eq!(c0.from, w.mark_position(MarkKind::Base));
                assert_eq!(w.side_label(*from_side).name(1), "A1+");
                assert_eq!(from, &origin(1));
                assert_eq!(to, &a1);
                assert_eq!(w.side_label(*to_side).name(1), "A1-");
                assert_eq!(c1.polygon, a1);
                assert_eq!(c1.to, w.mark_position(MarkKind::Base));
            }
            other => panic!("unexpected segments {other:?}"),
        }
    }

    #[test]
    fn pushed_arcs_end_on_pushed_marks() {
        let w = CoverWindow::new(2, 3).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            for i in 0..4 {
                let arc = embed_basis_arc(&w, i, &origin(2), Some(sign)).unwrap();
                assert_eq!(arc.start.kind, MarkKind::Pushed);
                assert_eq!(arc.end.kind, MarkKind::Pushed);
                assert_eq!(arc.end.polygon, ExponentVector::unit(2, i));
                let first = arc.chords().next().unwrap();
                let last = arc.chords().last().unwrap();
                assert_eq!(first.from, w.mark_position(MarkKind::Pushed));
                assert_eq!(last.to, w.mark_position(MarkKind::Pushed));
            }
        }
    }

    #[test]
    fn segments_are_consistent() {
        let w = CoverWindow::new(2, 3).unwrap();
        let arc = embed_basis_arc(&w, 3, &origin(2), Some(Sign::Minus)).unwrap();
        // chord, ribbon, chord, ribbon, ..., chord; each ribbon leaves the
        // polygon of the previous chord at its exit side.
        for pair in arc.segments.windows(2) {
            match pair {
                [Segment::Chord(c), Segment::Ribbon { from, from_side, .. }] => {
                    assert_eq!(&c.polygon, from);
                    assert_eq!(c.to / (2 * SCALE), *from_side as i64);
                }
                [Segment::Ribbon { to, to_side, .. }, Segment::Chord(c)] => {
                    assert_eq!(&c.polygon, to);
                    assert_eq!(c.from / (2 * SCALE), *to_side as i64);
                }
                other => panic!("segments do not alternate: {other:?}"),
            }
        }
    }

    #[test]
    fn window_overflow_is_reported() {
        let w = CoverWindow::new(1, 1).unwrap();
        let far = ExponentVector::from_slice(&[1, 0]).unwrap();
        assert!(matches!(
            embed_basis_arc(&w, 0, &far, None),
            Err(Error::WindowOverflow { radius: 1 })
        ));
    }

    #[test]
    fn disjoint_and_swapped_intersections() {
        let w = CoverWindow::new(1, 3).unwrap();
        let x = embed_basis_arc(&w, 0, &origin(1), None).unwrap();
        let far = ExponentVector::from_slice(&[2, 2]).unwrap();
        let y = embed_basis_arc(&w, 1, &far, Some(Sign::Plus)).unwrap();
        assert_eq!(intersection_number(&w, &x, &y).unwrap(), 0);
        // <alpha1, beta1>+ = a1*b1^-1: the crossing is with the a1*b1^-1 translate.
        let h = ExponentVector::from_slice(&[1, -1]).unwrap();
        let y = embed_basis_arc(&w, 1, &h, Some(Sign::Plus)).unwrap();
        let v = intersection_number(&w, &x, &y).unwrap();
        assert_eq!(v, 1);
        assert_ne!(v, 0);
        assert_eq!(intersection_number(&w, &y, &x).unwrap(), -v);
    }

    #[test]
    fn shared_endpoint_is_rejected() {
        let w = CoverWindow::new(1, 2).unwrap();
        let x = embed_basis_arc(&w, 0, &origin(1), None).unwrap();
        let y = embed_basis_arc(&w, 1, &origin(1), None).unwrap();
        assert_eq!(intersection_number(&w, &x, &y), Err(Error::SharedEndpoint));
    }

    #[test]
    fn oracle_alpha_beta_augments_to_one() {
        for sign in [Sign::Plus, Sign::Minus] {
            let v = pairing_oracle(2, 0, 2, sign, 2).unwrap();
            assert_eq!(v.augmentation(), 1.into());
            let v = pairing_oracle(2, 0, 0, sign, 2).unwrap();
            assert_eq!(v.augmentation(), 0.into());
        }
    }

    #[test]
    fn oracle_rejects_small_radius() {
        assert!(pairing_oracle(1, 0, 0, Sign::Plus, 1).is_err());
    }

    #[test]
    fn debug_json_lists_every_polygon() {
        let w = CoverWindow::new(1, 1).unwrap();
        let v = w.to_debug_json();
        assert_eq!(v["polygons"].as_array().unwrap().len(), 9);
        assert_eq!(v["sides"][1], "B1-");
    }
}
