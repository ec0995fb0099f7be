//! Exact classification of Tutte-plane points for planar graphs: exact
//! complexity, approximation status, and grid scans for plotting.

use std::fmt;

use thiserror::Error;

use crate::gadget::{shift_certificate, ShiftCertificate};
use crate::par::Exec;
use crate::rational::{fmt_rational, int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("step must be positive")]
    BadStep,
    #[error("empty range [{0}, {1}]")]
    EmptyRange(String, String),
    #[error("grid of {0} points exceeds the limit of {1}")]
    TooLarge(u64, u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactStatus {
    FpEasy,
    SharpPHard,
}

/// Regions where approximation is hard for planar graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// x < 0, y < 0, q > 5
    NegativeQuadrant,
    /// x > 1, y < −1
    XAboveYBelow,
    /// y > 1, x < −1
    YAboveXBelow,
    /// (x−1)(y−1) = 3 with x, y < 1
    QThreeBranch,
}

impl Region {
    pub fn id(self) -> &'static str {
        match self {
            Region::NegativeQuadrant => "negQ-q>5",
            Region::XAboveYBelow => "x>1&y<-1",
            Region::YAboveXBelow => "y>1&x<-1",
            Region::QThreeBranch => "q=3-branch",
        }
    }

    /// The region containing the dual point (y, x).
    pub fn dual(self) -> Region {
        match self {
            Region::XAboveYBelow => Region::YAboveXBelow,
            Region::YAboveXBelow => Region::XAboveYBelow,
            r => r,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApproxStatus {
    ExactEasy,
    NoFpras(Region),
    Open,
}

impl fmt::Display for ExactStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactStatus::FpEasy => "FP-easy",
            ExactStatus::SharpPHard => "#P-hard",
        })
    }
}

impl fmt::Display for ApproxStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproxStatus::ExactEasy => f.write_str("exact-easy"),
            ApproxStatus::NoFpras(r) => write!(f, "no-FPRAS({})", r.id()),
            ApproxStatus::Open => f.write_str("open"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PointClass {
    pub exact: ExactStatus,
    pub approx: ApproxStatus,
    pub citation: &'static str,
    pub certificate: Option<ShiftCertificate>,
}

fn classify_inner(x: &Rational, y: &Rational) -> (ExactStatus, ApproxStatus, &'static str) {
    let q = Rational::from(x - 1u32) * Rational::from(y - 1u32);
    let one = int(1);
    let minus_one = int(-1);
    if q == 1 {
        return (ExactStatus::FpEasy, ApproxStatus::ExactEasy, "H1: polynomial-time on the hyperbola q=1");
    }
    if q == 2 {
        return (ExactStatus::FpEasy, ApproxStatus::ExactEasy, "H2: planar Ising partition function (q=2) is polynomial-time");
    }
    if *x == one && *y == one {
        return (ExactStatus::FpEasy, ApproxStatus::ExactEasy, "special point (1,1): spanning trees");
    }
    if *x == minus_one && *y == minus_one {
        return (ExactStatus::FpEasy, ApproxStatus::ExactEasy, "special point (-1,-1): bicycle-space dimension");
    }
    let region = if *x < 0 && *y < 0 && q > 5 {
        Some((Region::NegativeQuadrant, "no FPRAS unless RP=NP: negative quadrant with q>5, via planar independent set"))
    } else if *x > 1 && *y < -1 {
        Some((Region::XAboveYBelow, "no FPRAS unless RP=NP: x>1, y<-1, via planar independent set (q<0)"))
    } else if *y > 1 && *x < -1 {
        Some((Region::YAboveXBelow, "no FPRAS unless RP=NP: y>1, x<-1, dual of x>1, y<-1"))
    } else if q == 3 && *x < 1 && *y < 1 {
        Some((Region::QThreeBranch, "no FPRAS unless RP=NP: q=3 branch, via planar 3-colouring"))
    } else {
        None
    };
    match region {
        Some((r, c)) => (ExactStatus::SharpPHard, ApproxStatus::NoFpras(r), c),
        None => (ExactStatus::SharpPHard, ApproxStatus::Open, "open: approximation status unresolved for planar graphs"),
    }
}

/// Classify `(x, y)`; hard points with `q ∉ [0, 5]` carry a shift certificate.
pub fn classify_point(x: &Rational, y: &Rational) -> PointClass {
    classify_point_with(x, y, true)
}

pub fn classify_point_with(x: &Rational, y: &Rational, certify: bool) -> PointClass {
    let (exact, approx, citation) = classify_inner(x, y);
    let q = Rational::from(x - 1u32) * Rational::from(y - 1u32);
    let certificate = match approx {
        ApproxStatus::NoFpras(_) if certify && (q < 0 || q > 5) => shift_certificate(x, y).ok(),
        _ => None,
    };
    PointClass { exact, approx, citation, certificate }
}

#[derive(Clone, Debug)]
pub struct MapRecord {
    pub x: Rational,
    pub y: Rational,
    pub q: Rational,
    pub class: PointClass,
}

impl fmt::Display for MapRecord {
    /// `x<TAB>y<TAB>q<TAB>exact_status<TAB>approx_status<TAB>citation`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            fmt_rational(&self.x),
            fmt_rational(&self.y),
            fmt_rational(&self.q),
            self.class.exact,
            self.class.approx,
            self.class.citation
        )
    }
}

pub fn record(x: &Rational, y: &Rational, certify: bool) -> MapRecord {
    let q = Rational::from(x - 1u32) * Rational::from(y - 1u32);
    MapRecord { x: x.clone(), y: y.clone(), q, class: classify_point_with(x, y, certify) }
}

/// Upper limit on the number of grid points per scan.
pub const MAX_GRID_POINTS: u64 = 4_000_000;

fn axis(lo: &Rational, hi: &Rational, step: &Rational) -> Result<Vec<Rational>, ClassifyError> {
    if lo > hi {
        return Err(ClassifyError::EmptyRange(fmt_rational(lo), fmt_rational(hi)));
    }
    let count = Rational::from(hi - lo) / step;
    let count = count.floor().numer().to_u64().unwrap_or(u64::MAX).saturating_add(1);
    if count > MAX_GRID_POINTS {
        return Err(ClassifyError::TooLarge(count, MAX_GRID_POINTS));
    }
    Ok((0..count).map(|i| Rational::from(step * i) + lo).collect())
}

/// Lattice scan in row-major order: y ascending, then x ascending within a row.
/// No certificates are computed.
pub fn map_region(x_range: (&Rational, &Rational), y_range: (&Rational, &Rational), step: &Rational, exec: Exec) -> Result<Vec<MapRecord>, ClassifyError> {
    if *step <= 0 {
        return Err(ClassifyError::BadStep);
    }
    let xs = axis(x_range.0, x_range.1, step)?;
    let ys = axis(y_range.0, y_range.1, step)?;
    let total = xs.len() as u64 * ys.len() as u64;
    if total > MAX_GRID_POINTS {
        return Err(ClassifyError::TooLarge(total, MAX_GRID_POINTS));
    }
    let pts: Vec<(usize, usize)> = (0..ys.len()).flat_map(|j| (0..xs.len()).map(move |i| (i, j))).collect();
    Ok(exec.map(&pts, |&(i, j)| record(&xs[i], &ys[j], false)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn fixtures() {
        let c = classify_point(&int(2), &int(2));
        assert_eq!((c.exact, c.approx), (ExactStatus::FpEasy, ApproxStatus::ExactEasy));
        assert!(c.citation.starts_with("H1"));
        let c = classify_point(&int(0), &int(-1));
        assert_eq!(c.approx, ApproxStatus::ExactEasy);
        assert!(c.citation.starts_with("H2"));
        let c = classify_point(&int(-2), &int(-2));
        assert_eq!(c.approx, ApproxStatus::NoFpras(Region::NegativeQuadrant));
        assert!(c.certificate.unwrap().verify().unwrap());
        let c = classify_point(&int(-5), &rat(1, 2));
        assert_eq!(c.approx, ApproxStatus::NoFpras(Region::QThreeBranch));
        assert!(c.certificate.is_none());
        let c = classify_point(&int(-3), &int(0));
        assert_eq!((c.exact, c.approx), (ExactStatus::SharpPHard, ApproxStatus::Open));
        assert_eq!(classify_point(&int(-1), &int(-1)).exact, ExactStatus::FpEasy);
    }

    #[test]
    fn grid() {
        let (lo, hi) = (int(-5), int(5));
        let recs = map_region((&lo, &hi), (&lo, &hi), &rat(1, 2), Exec::default()).unwrap();
        assert_eq!(recs.len(), 441);
        assert!(recs.windows(2).all(|w| (&w[0].y, &w[0].x) < (&w[1].y, &w[1].x)));
        let r = recs.iter().find(|r| r.x == -5 && r.y == rat(1, 2)).unwrap();
        assert_eq!(r.class.approx, ApproxStatus::NoFpras(Region::QThreeBranch));
        assert_eq!(r.to_string(), "-5/1\t1/2\t3/1\t#P-hard\tno-FPRAS(q=3-branch)\tno FPRAS unless RP=NP: q=3 branch, via planar 3-colouring");
        assert!(map_region((&hi, &lo), (&lo, &hi), &int(1), Exec::default()).is_err());
        assert!(map_region((&lo, &hi), (&lo, &hi), &int(0), Exec::default()).is_err());
    }
}
