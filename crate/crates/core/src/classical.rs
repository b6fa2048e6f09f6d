//! Mean-field (classical) LMG dynamics on the unit sphere: fixed points,
//! their linear stability and the four-zone classification of parameter
//! space. Energies are per `j`, `eps(X,Y,Z) = -(g_x X^2 + g_y Y^2)/2 - h Z`,
//! which is the scale used for the quantum spectrum in `analysis`.

use serde::{Serialize, Serializer};

use crate::error::{Result, SpinError};
use crate::lmg::LmgParams;

const SPHERE_TOLERANCE: f64 = 1e-12;
const BOUNDARY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpherePoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm_sq = x * x + y * y + z * z;
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > SPHERE_TOLERANCE {
            return Err(SpinError::OffSphere { norm_sq });
        }
        Ok(Self { x, y, z })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// `(dX/dt, dY/dt, dZ/dt)` of the rescaled equations of motion.
pub fn flow(point: &SpherePoint, params: &LmgParams) -> [f64; 3] {
    let SpherePoint { x, y, z } = *point;
    let LmgParams {
        gamma_x,
        gamma_y,
        h,
    } = *params;
    [
        y * (h - gamma_y * z),
        x * (gamma_x * z - h),
        x * y * (gamma_y - gamma_x),
    ]
}

pub fn classical_energy(point: &SpherePoint, params: &LmgParams) -> f64 {
    -(params.gamma_x * point.x * point.x + params.gamma_y * point.y * point.y) / 2.0
        - params.h * point.z
}

/// Jacobian of [`flow`] in ambient coordinates.
pub fn flow_jacobian(point: &SpherePoint, params: &LmgParams) -> [[f64; 3]; 3] {
    let SpherePoint { x, y, z } = *point;
    let LmgParams {
        gamma_x,
        gamma_y,
        h,
    } = *params;
    [
        [0.0, h - gamma_y * z, -gamma_y * y],
        [gamma_x * z - h, 0.0, gamma_x * x],
        [y * (gamma_y - gamma_x), x * (gamma_y - gamma_x), 0.0],
    ]
}

/// Eigenvalues `(re, im)` of the flow linearized on the tangent plane at a
/// fixed point.
pub fn tangent_eigenvalues(point: &SpherePoint, params: &LmgParams) -> [(f64, f64); 2] {
    let p = point.as_array();
    // seed with the axis least aligned with p
    let axis = (0..3)
        .min_by(|&a, &b| p[a].abs().total_cmp(&p[b].abs()))
        .unwrap();
    let mut e1 = [0.0; 3];
    e1[axis] = 1.0;
    let proj = dot(&e1, &p);
    for i in 0..3 {
        e1[i] -= proj * p[i];
    }
    let n1 = dot(&e1, &e1).sqrt();
    e1.iter_mut().for_each(|v| *v /= n1);
    let e2 = cross(&p, &e1);

    let jac = flow_jacobian(point, params);
    let apply = |v: &[f64; 3]| -> [f64; 3] {
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = (0..3).map(|k| jac[i][k] * v[k]).sum();
        }
        out
    };
    let (j1, j2) = (apply(&e1), apply(&e2));
    let m11 = dot(&e1, &j1);
    let m12 = dot(&e1, &j2);
    let m21 = dot(&e2, &j1);
    let m22 = dot(&e2, &j2);

    let tr = m11 + m22;
    let det = m11 * m22 - m12 * m21;
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        let im = (-disc).sqrt() / 2.0;
        [(tr / 2.0, im), (tr / 2.0, -im)]
    } else {
        let s = disc.sqrt();
        [((tr + s) / 2.0, 0.0), ((tr - s) / 2.0, 0.0)]
    }
}

/// Elliptic (purely imaginary spectrum) fixed point.
pub fn is_stable(point: &SpherePoint, params: &LmgParams) -> bool {
    let tol = 1e-9 * (1.0 + params.gamma_x.abs() + params.gamma_y.abs() + params.h.abs());
    tangent_eigenvalues(point, params)
        .iter()
        .all(|(re, _)| re.abs() <= tol)
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPointLabel {
    XzPlus,
    XzMinus,
    YzPlus,
    YzMinus,
    ZPlus,
    ZMinus,
}

impl FixedPointLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            FixedPointLabel::XzPlus => "FP_XZ+",
            FixedPointLabel::XzMinus => "FP_XZ-",
            FixedPointLabel::YzPlus => "FP_YZ+",
            FixedPointLabel::YzMinus => "FP_YZ-",
            FixedPointLabel::ZPlus => "FP_Z+",
            FixedPointLabel::ZMinus => "FP_Z-",
        }
    }
}

impl Serialize for FixedPointLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPoint {
    pub label: FixedPointLabel,
    /// Coordinates, when the fixed point exists.
    pub point: Option<SpherePoint>,
    /// Energy formula value; `None` when it is undefined (`gamma = 0`).
    pub h0: Option<f64>,
    pub exists: bool,
    pub stable: bool,
}

/// The six candidate fixed points with existence and numeric stability.
pub fn fixed_points(params: &LmgParams) -> Result<Vec<FixedPoint>> {
    let LmgParams {
        gamma_x,
        gamma_y,
        h,
    } = *params;
    if gamma_x == 0.0 && gamma_y == 0.0 && h == 0.0 {
        return Err(SpinError::InvalidParams(
            "all couplings vanish; every point is fixed".into(),
        ));
    }
    for (name, g) in [("gamma_x", gamma_x), ("gamma_y", gamma_y)] {
        if (h.abs() - g.abs()).abs() <= BOUNDARY_TOLERANCE {
            return Err(SpinError::Boundary(format!("|h| = |{name}| = {}", h.abs())));
        }
    }

    let mut out = Vec::with_capacity(6);
    let mut push = |label, coords: Option<[f64; 3]>, h0: Option<f64>| -> Result<()> {
        let point = coords
            .map(|[x, y, z]| SpherePoint::new(x, y, z))
            .transpose()?;
        let stable = point.map(|p| is_stable(&p, params)).unwrap_or(false);
        out.push(FixedPoint {
            label,
            point,
            h0,
            exists: point.is_some(),
            stable,
        });
        Ok(())
    };

    for (g, plus, minus, along_x) in [
        (gamma_x, FixedPointLabel::XzPlus, FixedPointLabel::XzMinus, true),
        (gamma_y, FixedPointLabel::YzPlus, FixedPointLabel::YzMinus, false),
    ] {
        let h0 = (g != 0.0).then(|| -(h * h + g * g) / (2.0 * g));
        let exists = h.abs() < g.abs();
        for (label, sign) in [(plus, 1.0), (minus, -1.0)] {
            let coords = exists.then(|| {
                let z = h / g;
                let r = sign * (1.0 - z * z).sqrt();
                if along_x {
                    [r, 0.0, z]
                } else {
                    [0.0, r, z]
                }
            });
            push(label, coords, h0)?;
        }
    }
    push(FixedPointLabel::ZPlus, Some([0.0, 0.0, 1.0]), Some(-h))?;
    push(FixedPointLabel::ZMinus, Some([0.0, 0.0, -1.0]), Some(h))?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    I,
    II,
    III,
    IV,
    Boundary,
}

impl Zone {
    pub fn as_str(self) -> &'static str {
        match self {
            Zone::I => "I",
            Zone::II => "II",
            Zone::III => "III",
            Zone::IV => "IV",
            Zone::Boundary => "boundary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubCase {
    A,
    B,
    None,
}

impl SubCase {
    pub fn as_str(self) -> &'static str {
        match self {
            SubCase::A => "a",
            SubCase::B => "b",
            SubCase::None => "none",
        }
    }
}

macro_rules! serialize_as_str {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }
    )*};
}
serialize_as_str!(Zone, SubCase);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZoneReport {
    /// Parameters after mapping `h` to `|h|`.
    pub params: LmgParams,
    pub zone: Zone,
    pub sub_case: SubCase,
    pub fixed_points: Vec<FixedPoint>,
    /// Energies `eps` of the unstable fixed points, ascending, deduplicated.
    pub esqpt_energies: Vec<f64>,
}

/// Zone of `(gamma_x, gamma_y, |h|)`, cross-checked against numeric stability.
///
/// Parameters on a defining equality, or with `gamma_x = gamma_y` and both
/// above `h` (a ring of fixed points), are reported as [`Zone::Boundary`].
pub fn classify_zone(params: &LmgParams) -> Result<ZoneReport> {
    if params.h == 0.0 {
        return Err(SpinError::Unsupported(
            "zone classification assumes h != 0".into(),
        ));
    }
    let p = LmgParams {
        h: params.h.abs(),
        ..*params
    };
    let (gx, gy, h) = (p.gamma_x, p.gamma_y, p.h);

    let on_boundary = (gx.abs() - h).abs() <= BOUNDARY_TOLERANCE
        || (gy.abs() - h).abs() <= BOUNDARY_TOLERANCE
        || (gx.abs() > h && gy.abs() > h && (gx - gy).abs() <= BOUNDARY_TOLERANCE);
    if on_boundary {
        return Ok(ZoneReport {
            params: p,
            zone: Zone::Boundary,
            sub_case: SubCase::None,
            fixed_points: Vec::new(),
            esqpt_energies: Vec::new(),
        });
    }

    let (zone, sub_case) = if gx.abs() < h && gy.abs() < h {
        (Zone::I, SubCase::None)
    } else if gx.abs() < h && h < gy.abs() {
        (Zone::II, SubCase::A)
    } else if gy.abs() < h && h < gx.abs() {
        (Zone::II, SubCase::B)
    } else if h < -gy && h < gx {
        (Zone::III, SubCase::A)
    } else if h < -gx && h < gy {
        (Zone::III, SubCase::B)
    } else if h < gx && h < gy {
        (Zone::IV, SubCase::A)
    } else {
        (Zone::IV, SubCase::B)
    };

    let fps = fixed_points(&p)?;
    check_zone_statements(zone, sub_case, &fps)?;

    let mut esqpt: Vec<f64> = fps
        .iter()
        .filter(|fp| fp.exists && !fp.stable)
        .filter_map(|fp| fp.h0)
        .collect();
    esqpt.sort_by(f64::total_cmp);
    esqpt.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);

    Ok(ZoneReport {
        params: p,
        zone,
        sub_case,
        fixed_points: fps,
        esqpt_energies: esqpt,
    })
}

/// Existence and stability each zone is known to have.
fn check_zone_statements(zone: Zone, sub_case: SubCase, fps: &[FixedPoint]) -> Result<()> {
    let get = |label| fps.iter().find(|fp| fp.label == label).unwrap();
    let pair = |a, b| -> (bool, bool) {
        let (p, q) = (get(a), get(b));
        if p.exists != q.exists || p.stable != q.stable {
            return (false, false);
        }
        (p.exists, p.stable)
    };
    let (xz_exists, xz_stable) = pair(FixedPointLabel::XzPlus, FixedPointLabel::XzMinus);
    let (yz_exists, yz_stable) = pair(FixedPointLabel::YzPlus, FixedPointLabel::YzMinus);
    let north = get(FixedPointLabel::ZPlus).stable;
    let south = get(FixedPointLabel::ZMinus).stable;

    let ok = match (zone, sub_case) {
        (Zone::I, _) => !xz_exists && !yz_exists && north && south,
        (Zone::II, SubCase::A) => !xz_exists && yz_exists && yz_stable && (north != south),
        (Zone::II, _) => xz_exists && xz_stable && !yz_exists && (north != south),
        (Zone::III, _) => {
            xz_exists && yz_exists && xz_stable && yz_stable && !north && !south
        }
        (Zone::IV, _) => xz_exists && yz_exists && (xz_stable != yz_stable) && north && south,
        (Zone::Boundary, _) => true,
    };
    if ok {
        Ok(())
    } else {
        Err(SpinError::Consistency(format!(
            "zone {}{} expectations violated by {:?}",
            zone.as_str(),
            sub_case.as_str(),
            fps.iter()
                .map(|fp| (fp.label.as_str(), fp.exists, fp.stable))
                .collect::<Vec<_>>()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(gx: f64, gy: f64, h: f64) -> LmgParams {
        LmgParams::new(gx, gy, h).unwrap()
    }

    fn find(fps: &[FixedPoint], label: FixedPointLabel) -> &FixedPoint {
        fps.iter().find(|fp| fp.label == label).unwrap()
    }

    #[test]
    fn pole_is_fixed() {
        let v = flow(&SpherePoint::new(0.0, 0.0, 1.0).unwrap(), &params(2.0, 0.5, 1.0));
        assert_eq!(v, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn flow_at_x_axis() {
        let v = flow(&SpherePoint::new(1.0, 0.0, 0.0).unwrap(), &params(2.0, 0.0, 1.0));
        assert_eq!(v, [0.0, -1.0, 0.0]);
    }

    #[test]
    fn isotropic_flow_rotates_about_z() {
        let g = 2.0;
        let h = 0.5;
        let z: f64 = h / g;
        let r = (1.0 - z * z).sqrt();
        let pt = SpherePoint::new(r * 0.6, r * 0.8, z).unwrap();
        let v = flow(&pt, &params(g, g, h));
        assert_eq!(v[2], 0.0);
    }

    #[test]
    fn off_sphere_rejected() {
        assert!(matches!(
            SpherePoint::new(1.0, 1.0, 0.0),
            Err(SpinError::OffSphere { .. })
        ));
    }

    #[test]
    fn table_values_zone_three() {
        let fps = fixed_points(&params(5.0, -3.0, 1.0)).unwrap();
        let xz = find(&fps, FixedPointLabel::XzPlus);
        assert!(xz.exists);
        assert!((xz.h0.unwrap() + 2.6).abs() < 1e-15);
        let yz = find(&fps, FixedPointLabel::YzMinus);
        assert!(yz.exists);
        assert!((yz.h0.unwrap() - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(find(&fps, FixedPointLabel::ZPlus).h0, Some(-1.0));
        assert_eq!(find(&fps, FixedPointLabel::ZMinus).h0, Some(1.0));
    }

    #[test]
    fn only_poles_in_zone_one() {
        let fps = fixed_points(&params(0.5, 1.0 / 3.0, 1.0)).unwrap();
        let existing: Vec<_> = fps.iter().filter(|fp| fp.exists).map(|fp| fp.label).collect();
        assert_eq!(existing, vec![FixedPointLabel::ZPlus, FixedPointLabel::ZMinus]);
    }

    #[test]
    fn free_precession_poles_are_stable() {
        let fps = fixed_points(&params(0.0, 0.0, 1.0)).unwrap();
        assert!(find(&fps, FixedPointLabel::ZPlus).stable);
        assert!(find(&fps, FixedPointLabel::ZMinus).stable);
        assert!(find(&fps, FixedPointLabel::XzPlus).h0.is_none());
    }

    #[test]
    fn degenerate_parameters() {
        assert!(matches!(
            fixed_points(&params(1.0, 0.2, 1.0)),
            Err(SpinError::Boundary(_))
        ));
        assert!(matches!(
            fixed_points(&params(0.0, 0.0, 0.0)),
            Err(SpinError::InvalidParams(_))
        ));
        assert!(matches!(
            classify_zone(&params(1.0, 0.5, 0.0)),
            Err(SpinError::Unsupported(_))
        ));
        let r = classify_zone(&params(-1.0, 3.0, 1.0)).unwrap();
        assert_eq!(r.zone, Zone::Boundary);
    }

    #[test]
    fn four_reference_zones() {
        let z = |gx, gy| classify_zone(&params(gx, gy, 1.0)).unwrap();
        let one = z(0.5, 1.0 / 3.0);
        assert_eq!((one.zone, one.sub_case), (Zone::I, SubCase::None));
        assert!(one.esqpt_energies.is_empty());

        let two = z(2.0, 0.5);
        assert_eq!((two.zone, two.sub_case), (Zone::II, SubCase::B));
        assert_eq!(two.esqpt_energies, vec![-1.0]);

        let three = z(5.0, -3.0);
        assert_eq!((three.zone, three.sub_case), (Zone::III, SubCase::A));
        assert_eq!(three.esqpt_energies, vec![-1.0, 1.0]);

        let four = z(5.0, 3.0);
        assert_eq!((four.zone, four.sub_case), (Zone::IV, SubCase::A));
        assert_eq!(four.esqpt_energies.len(), 1);
        assert!((four.esqpt_energies[0] + 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn negative_field_is_mapped() {
        let r = classify_zone(&params(2.0, 0.5, -1.0)).unwrap();
        assert_eq!(r.params.h, 1.0);
        assert_eq!(r.zone, Zone::II);
    }
}
