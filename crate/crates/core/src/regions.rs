//! The phase diagram in the (linear entropy, concurrence) plane.
//!
//! Every state of the restricted family lands at a point `(s, c)` with
//! `s` its normalized linear entropy and `c` its concurrence. Conversely,
//! a point with `s <= s_max(c)` is realized by a one-parameter family of
//! states: in the rotated population coordinates
//! `x = (a - b) / sqrt(2)`, `y = (a + b - 2/3) / sqrt(2)` the fixed-measure
//! set is the ellipse `x = sqrt(6 D) cos(phi)`, `y = sqrt(2 D) sin(phi)`
//! with `D = 1/9 - c^2/12 - s/8`, cut down to the angles where the matrix
//! stays positive semidefinite.
//!
//! Whether a family member violates a CHSH inequality depends only on
//! `sin(phi)`, which splits the plane into three regions:
//!
//! * `Lambda1` (`s < s1(c)`, or any `s` when `c > 1/sqrt(2)`): every state
//!   with these measures violates,
//! * `Lambda2` (`s1(c) <= s < s2(c)`): some states violate and some do
//!   not, so the measure pair does not decide the verdict,
//! * `Lambda3` (`s2(c) <= s <= s_max(c)`): no state with these measures
//!   violates.
//!
//! For `Lambda2` points, [`witness_pair`] hands back the two verdicts in
//! the flesh: a violating and a non-violating state with identical
//! concurrence and linear entropy.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::states::E0Params;

/// Classification of a point of the (linear entropy, concurrence) plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// Every state with these measures violates a CHSH inequality.
    Lambda1,
    /// Violating and non-violating states coexist.
    Lambda2,
    /// No state with these measures violates.
    Lambda3,
    /// `s` exceeds `s_max(c)`: no state of the family has these measures.
    OutsideLambda,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Region::Lambda1 => "lambda1",
            Region::Lambda2 => "lambda2",
            Region::Lambda3 => "lambda3",
            Region::OutsideLambda => "outside",
        })
    }
}

/// A validated point: concurrence `c` in `(0, 1]`, linear entropy `s` in
/// `[0, 1]`. Values within the boundary snap outside those ranges are
/// clamped onto them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionPoint<T> {
    s: T,
    c: T,
}

impl<T: Scalar> RegionPoint<T> {
    pub fn new(s: T, c: T) -> Result<Self> {
        let snap = T::BOUNDARY_SNAP;
        if !c.is_finite() || c <= T::zero() || c > T::one() + snap {
            return Err(Error::OutOfRange { name: "c", value: c.as_f64(), domain: "(0, 1]" });
        }
        if !s.is_finite() || s < -snap || s > T::one() + snap {
            return Err(Error::OutOfRange { name: "s", value: s.as_f64(), domain: "[0, 1]" });
        }
        Ok(Self { s: s.max(T::zero()).min(T::one()), c: c.min(T::one()) })
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn c(&self) -> T {
        self.c
    }
}

fn validate_c<T: Scalar>(c: T) -> Result<T> {
    let snap = T::BOUNDARY_SNAP;
    if !c.is_finite() || c <= T::zero() || c > T::one() + snap {
        return Err(Error::OutOfRange { name: "c", value: c.as_f64(), domain: "(0, 1]" });
    }
    Ok(c.min(T::one()))
}

fn validate_c_half_domain<T: Scalar>(c: T) -> Result<T> {
    let snap = T::BOUNDARY_SNAP;
    let c = validate_c(c).map_err(|_| Error::OutOfRange {
        name: "c",
        value: c.as_f64(),
        domain: "(0, 1/sqrt(2)]",
    })?;
    if c > T::FRAC_1_SQRT_2() + snap {
        return Err(Error::OutOfRange { name: "c", value: c.as_f64(), domain: "(0, 1/sqrt(2)]" });
    }
    Ok(c)
}

fn s_max_value<T: Scalar>(c: T) -> T {
    let two_thirds = T::of(2.0 / 3.0);
    if c < two_thirds {
        T::of(8.0 / 9.0) - two_thirds * c * c
    } else {
        T::of(8.0 / 3.0) * c * (T::one() - c)
    }
}

fn s1_value<T: Scalar>(c: T) -> T {
    T::of(2.0 / 3.0) * c * c
}

fn s2_value<T: Scalar>(c: T) -> T {
    (T::of(2.0) - c * c + T::of(2.0) * (T::one() - c * c).max(T::zero()).sqrt()) / T::of(6.0)
}

/// Largest linear entropy reachable at concurrence `c`. Piecewise:
/// `8/9 - (2/3) c^2` up to `c = 2/3`, then `(8/3) c (1 - c)`.
pub fn s_max<T: Scalar>(c: T) -> Result<T> {
    Ok(s_max_value(validate_c(c)?))
}

/// Lower boundary of `Lambda2`: below `s1(c) = (2/3) c^2` every state
/// violates. Defined for `c` up to `1/sqrt(2)`; above, violation is
/// certain at any entropy.
pub fn s1<T: Scalar>(c: T) -> Result<T> {
    Ok(s1_value(validate_c_half_domain(c)?))
}

/// Upper boundary of `Lambda2`:
/// `s2(c) = (2 - c^2 + 2 sqrt(1 - c^2)) / 6`. From this entropy on, no
/// state violates. Defined for `c` up to `1/sqrt(2)`.
pub fn s2<T: Scalar>(c: T) -> Result<T> {
    Ok(s2_value(validate_c_half_domain(c)?))
}

/// Classify a point. Boundary values within the snap tolerance resolve
/// upward: `s = s1` counts as `Lambda2`, `s = s2` as `Lambda3`.
pub fn classify<T: Scalar>(point: &RegionPoint<T>) -> Region {
    let (s, c) = (point.s, point.c);
    let snap = T::BOUNDARY_SNAP;
    if s > s_max_value(c) + snap {
        return Region::OutsideLambda;
    }
    if c > T::FRAC_1_SQRT_2() + snap {
        return Region::Lambda1;
    }
    if s >= s2_value(c) - snap {
        return Region::Lambda3;
    }
    if s >= s1_value(c) - snap {
        return Region::Lambda2;
    }
    Region::Lambda1
}

/// Validate `(s, c)` and classify.
pub fn classify_point<T: Scalar>(s: T, c: T) -> Result<Region> {
    Ok(classify(&RegionPoint::new(s, c)?))
}

/// Rotated population coordinates of `(a, b)`.
pub fn xy_from_ab<T: Scalar>(a: T, b: T) -> (T, T) {
    let inv_sqrt2 = T::FRAC_1_SQRT_2();
    ((a - b) * inv_sqrt2, (a + b - T::of(2.0 / 3.0)) * inv_sqrt2)
}

/// Inverse of [`xy_from_ab`].
pub fn ab_from_xy<T: Scalar>(x: T, y: T) -> (T, T) {
    let inv_sqrt2 = T::FRAC_1_SQRT_2();
    let third = T::of(1.0 / 3.0);
    ((x + y) * inv_sqrt2 + third, (y - x) * inv_sqrt2 + third)
}

/// Geometry of the fixed-measure ellipse at one point of the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseGeometry<T> {
    /// `D = 1/9 - c^2/12 - s/8`; zero collapses the ellipse to its center.
    pub d: T,
    /// Semi-axis `sqrt(6 D)` along `x`.
    pub semi_axis_x: T,
    /// Semi-axis `sqrt(2 D)` along `y`.
    pub semi_axis_y: T,
    /// Height `(3 sqrt(1 - c^2) - 1) / (6 sqrt(2))` above which a state
    /// violates (meaningful for `c <= 1/sqrt(2)`).
    pub y_plus: T,
}

/// Compute the ellipse of a point. Fails with [`Error::DegenerateEllipse`]
/// when `D < 0`, which happens only above the flat branch of `s_max`.
pub fn ellipse_geometry<T: Scalar>(point: &RegionPoint<T>) -> Result<EllipseGeometry<T>> {
    let (s, c) = (point.s, point.c);
    let d_raw = T::of(1.0 / 9.0) - c * c / T::of(12.0) - s / T::of(8.0);
    if d_raw < -T::BOUNDARY_SNAP {
        return Err(Error::DegenerateEllipse { d: d_raw.as_f64() });
    }
    let d = d_raw.max(T::zero());
    let y_plus = (T::of(3.0) * (T::one() - c * c).max(T::zero()).sqrt() - T::one())
        / (T::of(6.0) * T::SQRT_2());
    Ok(EllipseGeometry {
        d,
        semi_axis_x: (T::of(6.0) * d).sqrt(),
        semi_axis_y: (T::of(2.0) * d).sqrt(),
        y_plus,
    })
}

/// The named angles of a point, each absent when its defining equation
/// has no solution on the ellipse:
///
/// * `phi1`: first crossing of the positivity hyperbola `a b = c^2 / 4`,
/// * `phi2`: crossing of the plane `rho44 = 0`,
/// * `phi3`: crossing of the violation threshold `y = y_plus`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiAngles<T> {
    pub phi1: Option<T>,
    pub phi2: Option<T>,
    pub phi3: Option<T>,
}

/// Sine arguments of the two hyperbola crossings. `t` is real only for
/// `s <= 2/3`; the clamp makes the formulas safe just past that line,
/// where the constraint is vacuous anyway.
fn hyperbola_args<T: Scalar>(s: T, sqrt_d: T) -> (T, T) {
    let t = (T::one() - T::of(1.5) * s).max(T::zero()).sqrt();
    let quarter = T::of(0.25);
    let twelfth = T::of(1.0 / 12.0);
    ((t * quarter - twelfth) / sqrt_d, -(t * quarter + twelfth) / sqrt_d)
}

/// Snap a sine argument onto the unit interval boundary when it is within
/// the snap window, so angles that are exactly `pi/2` in exact arithmetic
/// come out as exactly `pi/2`.
fn snap_to_unit<T: Scalar>(x: T, snap: T) -> T {
    if x >= T::one() - snap {
        T::one()
    } else if x <= -(T::one() - snap) {
        -T::one()
    } else {
        x
    }
}

fn ensure_below_s_max<T: Scalar>(point: &RegionPoint<T>) -> Result<()> {
    if point.s > s_max_value(point.c) + T::BOUNDARY_SNAP {
        return Err(Error::OutOfRange {
            name: "s",
            value: point.s.as_f64(),
            domain: "[0, s_max(c)]",
        });
    }
    Ok(())
}

/// Compute the named angles of a point with `s <= s_max(c)`. All three
/// are absent when the ellipse degenerates to its center.
pub fn phi_angles<T: Scalar>(point: &RegionPoint<T>) -> Result<PhiAngles<T>> {
    ensure_below_s_max(point)?;
    let geo = ellipse_geometry(point)?;
    if geo.d <= T::zero() {
        return Ok(PhiAngles { phi1: None, phi2: None, phi3: None });
    }
    let snap = T::BOUNDARY_SNAP;
    let sqrt_d = geo.d.sqrt();
    let (s, c) = (point.s, point.c);

    let phi1 = if s <= T::of(2.0 / 3.0) + snap {
        let (arg1, _) = hyperbola_args(s, sqrt_d);
        (arg1 >= -(T::one() + snap)).then(|| snap_to_unit(arg1, snap).asin())
    } else {
        None
    };

    let arg2 = T::one() / (T::of(6.0) * sqrt_d);
    let phi2 = (arg2 <= T::one() + snap).then(|| snap_to_unit(arg2, snap).asin());

    let phi3 = if c <= T::FRAC_1_SQRT_2() + snap {
        let sin3 = geo.y_plus / geo.semi_axis_y;
        (sin3 <= T::one() + snap).then(|| snap_to_unit(sin3, snap).asin())
    } else {
        None
    };

    Ok(PhiAngles { phi1, phi2, phi3 })
}

/// A closed angle arc `[lo, hi]` with `0 <= lo <= hi <= 2 pi`. Zero-length
/// arcs are legitimate: they mark single admissible angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> AngleInterval<T> {
    pub fn len(&self) -> T {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn midpoint(&self) -> T {
        (self.lo + self.hi) * T::of(0.5)
    }

    /// Membership up to the snap tolerance, with `phi` taken mod `2 pi`.
    pub fn contains(&self, phi: T) -> bool {
        let tau = T::TAU();
        let mut p = phi % tau;
        if p < T::zero() {
            p += tau;
        }
        let snap = T::BOUNDARY_SNAP;
        (p >= self.lo - snap && p <= self.hi + snap)
            || (p + tau >= self.lo - snap && p + tau <= self.hi + snap)
    }
}

/// Map raw arcs (closed, `lo <= hi`, anywhere on the real line) onto the
/// canonical `[0, 2 pi]` window, splitting arcs that cross the seam.
fn normalize_arcs<T: Scalar>(raw: &[(T, T)]) -> Vec<(T, T)> {
    let tau = T::TAU();
    let mut out = Vec::new();
    for &(lo, hi) in raw {
        if hi - lo >= tau {
            return vec![(T::zero(), tau)];
        }
        let k = (lo / tau).floor();
        let lo_shifted = lo - k * tau;
        let hi_shifted = hi - k * tau;
        if hi_shifted <= tau {
            out.push((lo_shifted, hi_shifted));
        } else {
            out.push((lo_shifted, tau));
            out.push((T::zero(), hi_shifted - tau));
        }
    }
    out
}

fn intersect_arc_sets<T: Scalar>(a: &[(T, T)], b: &[(T, T)]) -> Vec<(T, T)> {
    let snap = T::BOUNDARY_SNAP;
    let mut out = Vec::new();
    for &(alo, ahi) in a {
        for &(blo, bhi) in b {
            let lo = alo.max(blo);
            let hi = ahi.min(bhi);
            // Arcs that miss each other by at most the snap window are
            // tangent up to rounding, and the sets being intersected are
            // closed, so the tangency survives as a single angle instead
            // of vanishing. At s = 0 this is load-bearing: the hyperbola
            // and the rho44 plane touch the ellipse at the same two
            // angles, and one misrounded quotient would otherwise empty
            // the whole admissible set.
            if hi >= lo - snap {
                out.push((lo, hi.max(lo)));
            }
        }
    }
    out
}

/// Sort by lower endpoint and merge arcs that touch or overlap within the
/// snap tolerance. Touching arcs genuinely belong together: the admissible
/// set is closed, so a shared endpoint joins its neighbors.
fn merge_touching<T: Scalar>(mut arcs: Vec<(T, T)>) -> Vec<(T, T)> {
    arcs.sort_by(|x, y| {
        x.0.partial_cmp(&y.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal))
    });
    let mut out: Vec<(T, T)> = Vec::new();
    for (lo, hi) in arcs {
        if let Some(last) = out.last_mut() {
            if lo <= last.1 + T::BOUNDARY_SNAP {
                last.1 = last.1.max(hi);
                continue;
            }
        }
        out.push((lo, hi));
    }
    out
}

/// The set of angles `phi` for which the ellipse point is a valid state.
///
/// Positivity imposes two cuts: the coherence bound `a b >= c^2 / 4`
/// keeps `sin(phi) >= arg1` or `sin(phi) <= argL` (the region outside the
/// hyperbola band), and `rho44 >= 0` keeps `sin(phi) <= arg2`. The result
/// is their intersection as a sorted list of disjoint closed arcs in
/// `[0, 2 pi]`; depending on the point it has one, two or three pieces,
/// or is the full circle. Every angle in the returned arcs yields a valid
/// state and every angle outside them breaks a positivity constraint.
pub fn admissible_interval<T: Scalar>(point: &RegionPoint<T>) -> Result<Vec<AngleInterval<T>>> {
    ensure_below_s_max(point)?;
    let geo = ellipse_geometry(point)?;
    let tau = T::TAU();
    if geo.d <= T::zero() {
        return Ok(vec![AngleInterval { lo: T::zero(), hi: tau }]);
    }
    let snap = T::BOUNDARY_SNAP;
    let pi = T::PI();
    let sqrt_d = geo.d.sqrt();
    let (arg1, arg_l) = hyperbola_args(point.s, sqrt_d);

    let mut keep: Vec<(T, T)> = Vec::new();
    if arg1 <= -T::one() {
        keep.push((T::zero(), tau));
    } else {
        let a1 = snap_to_unit(arg1, snap).asin();
        keep.push((a1, pi - a1));
        if arg_l >= -(T::one() + snap) {
            // Second admissible arc around 3 pi / 2, below the lower
            // hyperbola branch. Present when c <= (1 - t) / 2.
            let al = snap_to_unit(arg_l, snap).asin();
            keep.push((pi - al, tau + al));
        }
    }

    let arg2 = T::one() / (T::of(6.0) * sqrt_d);
    let cap: Vec<(T, T)> = if arg2 >= T::one() - snap {
        vec![(T::zero(), tau)]
    } else {
        let a2 = arg2.asin();
        vec![(pi - a2, tau + a2)]
    };

    let arcs = merge_touching(intersect_arc_sets(&normalize_arcs(&keep), &normalize_arcs(&cap)));
    Ok(arcs.into_iter().map(|(lo, hi)| AngleInterval { lo, hi }).collect())
}

/// One point of the plane together with its ellipse and admissible angles.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiFamily<T> {
    pub point: RegionPoint<T>,
    pub geometry: EllipseGeometry<T>,
    pub intervals: Vec<AngleInterval<T>>,
}

impl<T: Scalar> PhiFamily<T> {
    /// The family member at angle `phi` with coherence phase `theta`.
    /// Fails with [`Error::PhiOutsideAdmissible`] off the admissible arcs.
    pub fn state_at(&self, phi: T, theta: T) -> Result<E0Params<T>> {
        if !self.intervals.iter().any(|arc| arc.contains(phi)) {
            return Err(Error::PhiOutsideAdmissible { phi: phi.as_f64() });
        }
        let sqrt_d = self.geometry.d.sqrt();
        let sqrt3 = T::of(3.0).sqrt();
        let third = T::of(1.0 / 3.0);
        let (sin, cos) = (phi.sin(), phi.cos());
        let a = third + sqrt_d * (sin + sqrt3 * cos);
        let b = third + sqrt_d * (sin - sqrt3 * cos);
        E0Params::new(a, b, self.point.c, theta)
    }
}

/// Build the family of states realizing a point with `s <= s_max(c)`.
pub fn phi_family<T: Scalar>(point: &RegionPoint<T>) -> Result<PhiFamily<T>> {
    let intervals = admissible_interval(point)?;
    Ok(PhiFamily { point: *point, geometry: ellipse_geometry(point)?, intervals })
}

/// One member of the family at a point, by angle and coherence phase.
pub fn family_state<T: Scalar>(point: &RegionPoint<T>, phi: T, theta: T) -> Result<E0Params<T>> {
    phi_family(point)?.state_at(phi, theta)
}

/// The admissible arcs of a family split by the CHSH verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct ViolatingSplit<T> {
    /// Arcs on which every state violates (`m > 1`). Never zero-length.
    pub violating: Vec<AngleInterval<T>>,
    /// Arcs on which no state violates (`m <= 1`). Zero-length arcs are
    /// kept: a lone boundary angle still names a non-violating state.
    pub non_violating: Vec<AngleInterval<T>>,
}

/// Split the admissible arcs of a family by the violation threshold.
/// Violation holds exactly for `sin(phi) > sin(phi3)`, so the violating
/// set is the open arc `(phi3, pi - phi3)` intersected with the family.
pub fn violating_split<T: Scalar>(family: &PhiFamily<T>) -> Result<ViolatingSplit<T>> {
    let snap = T::BOUNDARY_SNAP;
    if family.point.c > T::FRAC_1_SQRT_2() + snap {
        return Ok(ViolatingSplit {
            violating: family.intervals.clone(),
            non_violating: Vec::new(),
        });
    }
    let phi3 = match phi_angles(&family.point)?.phi3 {
        Some(phi3) => phi3,
        // Threshold above the ellipse top: nothing violates.
        None => {
            return Ok(ViolatingSplit {
                violating: Vec::new(),
                non_violating: family.intervals.clone(),
            })
        }
    };
    let v_lo = phi3;
    let v_hi = T::PI() - phi3;

    let mut violating: Vec<(T, T)> = Vec::new();
    let mut non_violating: Vec<(T, T)> = Vec::new();
    for arc in &family.intervals {
        let lo = arc.lo.max(v_lo);
        let hi = arc.hi.min(v_hi);
        if hi > lo {
            violating.push((lo, hi));
        }
        let left_hi = arc.hi.min(v_lo);
        if left_hi >= arc.lo {
            non_violating.push((arc.lo, left_hi));
        }
        let right_lo = arc.lo.max(v_hi);
        if arc.hi >= right_lo {
            non_violating.push((right_lo, arc.hi));
        }
    }
    let non_violating = merge_touching(non_violating);
    Ok(ViolatingSplit {
        violating: violating.into_iter().map(|(lo, hi)| AngleInterval { lo, hi }).collect(),
        non_violating: non_violating
            .into_iter()
            .map(|(lo, hi)| AngleInterval { lo, hi })
            .collect(),
    })
}

/// Two states with identical measures and opposite CHSH verdicts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessPair<T> {
    /// The violating member.
    pub violating: E0Params<T>,
    pub violating_phi: T,
    /// Its violation parameter; strictly above 1.
    pub violating_m: T,
    /// The non-violating member.
    pub non_violating: E0Params<T>,
    pub non_violating_phi: T,
    /// Its violation parameter; at most 1 up to rounding.
    pub non_violating_m: T,
}

fn widest<T: Scalar>(arcs: &[AngleInterval<T>]) -> Option<&AngleInterval<T>> {
    let mut best: Option<&AngleInterval<T>> = None;
    for arc in arcs {
        match best {
            Some(b) if arc.len() <= b.len() => {}
            _ => best = Some(arc),
        }
    }
    best
}

/// Construct a witness pair at a `Lambda2` point: both states sit on the
/// same ellipse (same `s`, same `c`, coherence phase `theta`), taken at
/// the midpoints of the widest violating and non-violating arcs.
pub fn witness_pair<T: Scalar>(point: &RegionPoint<T>, theta: T) -> Result<WitnessPair<T>> {
    let region = classify(point);
    if region != Region::Lambda2 {
        return Err(Error::NotLambda2 { actual: region });
    }
    let family = phi_family(point)?;
    let split = violating_split(&family)?;
    // Lambda2 guarantees both sides are inhabited: s < s2 puts violating
    // angles on the ellipse and s >= s1 keeps the first hyperbola crossing
    // non-violating.
    let v_arc = widest(&split.violating).expect("violating arc exists in Lambda2");
    let nv_arc = widest(&split.non_violating).expect("non-violating arc exists in Lambda2");
    let violating_phi = v_arc.midpoint();
    let non_violating_phi = nv_arc.midpoint();
    let violating = family.state_at(violating_phi, theta)?;
    let non_violating = family.state_at(non_violating_phi, theta)?;
    Ok(WitnessPair {
        violating_m: crate::chsh::horodecki_m_e0(&violating),
        non_violating_m: crate::chsh::horodecki_m_e0(&non_violating),
        violating,
        violating_phi,
        non_violating,
        non_violating_phi,
    })
}

/// Grid-search maximum of the linear entropy over all valid `(a, b)` at
/// fixed `c`, written against the raw closed form on purpose: it checks
/// [`s_max`] without sharing any code with it.
pub fn brute_force_smax<T: Scalar>(c: T, steps: usize) -> Result<T> {
    let c = validate_c(c)?;
    assert!(steps >= 2, "grid needs at least two steps");
    let root = (T::one() - c * c).max(T::zero()).sqrt();
    let a_lo = (T::one() - root) * T::of(0.5);
    let a_hi = (T::one() + root) * T::of(0.5);
    let n = T::of(steps as f64);
    let mut best = T::zero();
    for i in 0..=steps {
        let a = a_lo + (a_hi - a_lo) * T::of(i as f64) / n;
        if a <= T::zero() {
            continue;
        }
        let b_lo = c * c / (T::of(4.0) * a);
        let b_hi = T::one() - a;
        if b_hi < b_lo {
            continue;
        }
        for j in 0..=steps {
            let b = b_lo + (b_hi - b_lo) * T::of(j as f64) / n;
            let r44 = T::one() - a - b;
            let s = T::of(4.0 / 3.0)
                * (T::one() - a * a - b * b - r44 * r44 - c * c * T::of(0.5));
            best = best.max(s);
        }
    }
    Ok(best)
}
