use std::fmt;

use crate::error::{Error, Result};
use crate::metrics::MetricKind;
use crate::response::{discord_of_response, werner_discord_vs_purity, WernerBranch};
use crate::states::{mq_family_c, mq_family_d, MqFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionLabel {
    A,
    B,
    C,
    D,
    E,
}

impl RegionLabel {
    pub fn as_char(self) -> char {
        match self {
            RegionLabel::A => 'a',
            RegionLabel::B => 'b',
            RegionLabel::C => 'c',
            RegionLabel::D => 'd',
            RegionLabel::E => 'e',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(RegionLabel::A),
            'b' => Some(RegionLabel::B),
            'c' => Some(RegionLabel::C),
            'd' => Some(RegionLabel::D),
            'e' => Some(RegionLabel::E),
            _ => None,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub label: RegionLabel,
    pub purity_lo: f64,
    pub purity_hi: f64,
}

const REGIONS: [Region; 5] = [
    Region {
        label: RegionLabel::A,
        purity_lo: 0.25,
        purity_hi: 1.0 / 3.0,
    },
    Region {
        label: RegionLabel::B,
        purity_lo: 1.0 / 3.0,
        purity_hi: 0.39,
    },
    Region {
        label: RegionLabel::C,
        purity_lo: 0.39,
        purity_hi: 0.53,
    },
    Region {
        label: RegionLabel::D,
        purity_lo: 0.53,
        purity_hi: 0.94,
    },
    Region {
        label: RegionLabel::E,
        purity_lo: 0.94,
        purity_hi: 1.0,
    },
];

fn check_purity(p: f64) -> Result<()> {
    if !(0.25..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "purity",
            value: p,
            lo: 0.25,
            hi: 1.0,
        });
    }
    Ok(())
}

/// Region containing `p`; a purity on a shared edge belongs to the lower region.
pub fn classify_region(p: f64) -> Result<Region> {
    check_purity(p)?;
    Ok(*REGIONS
        .iter()
        .find(|r| p <= r.purity_hi)
        .unwrap_or(&REGIONS[4]))
}

/// One of the curves whose upper envelope bounds the discord at fixed purity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryPiece {
    /// Werner states with `f <= 1/4`.
    WernerPlus,
    /// The constant `1/3` attained by the rank-4 family.
    Plateau,
    FamilyC,
    FamilyD,
    /// Werner states with `f >= 1/4`.
    WernerMinus,
}

impl BoundaryPiece {
    pub const ALL: [BoundaryPiece; 5] = [
        BoundaryPiece::WernerPlus,
        BoundaryPiece::Plateau,
        BoundaryPiece::FamilyC,
        BoundaryPiece::FamilyD,
        BoundaryPiece::WernerMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundaryPiece::WernerPlus => "werner_plus",
            BoundaryPiece::Plateau => "plateau",
            BoundaryPiece::FamilyC => "family_c",
            BoundaryPiece::FamilyD => "family_d",
            BoundaryPiece::WernerMinus => "werner_minus",
        }
    }

    /// Purity interval on which the curve is defined.
    pub fn domain(self) -> (f64, f64) {
        match self {
            BoundaryPiece::WernerPlus => WernerBranch::Plus.purity_range(),
            BoundaryPiece::Plateau => MqFamily::B.domain(),
            BoundaryPiece::FamilyC => MqFamily::C.domain(),
            BoundaryPiece::FamilyD => MqFamily::D.domain(),
            BoundaryPiece::WernerMinus => WernerBranch::Minus.purity_range(),
        }
    }

    /// Curves that need a numerical optimization per evaluation.
    pub fn is_expensive(self) -> bool {
        matches!(self, BoundaryPiece::FamilyC | BoundaryPiece::FamilyD)
    }

    pub fn region(self) -> RegionLabel {
        match self {
            BoundaryPiece::WernerPlus => RegionLabel::A,
            BoundaryPiece::Plateau => RegionLabel::B,
            BoundaryPiece::FamilyC => RegionLabel::C,
            BoundaryPiece::FamilyD => RegionLabel::D,
            BoundaryPiece::WernerMinus => RegionLabel::E,
        }
    }

    /// Value of the curve at `p`, or `None` outside its domain.
    pub fn value(self, p: f64) -> Result<Option<f64>> {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&p) {
            return Ok(None);
        }
        let v = match self {
            BoundaryPiece::WernerPlus => werner_discord_vs_purity(p, WernerBranch::Plus)?,
            BoundaryPiece::WernerMinus => werner_discord_vs_purity(p, WernerBranch::Minus)?,
            BoundaryPiece::Plateau => 1.0 / 3.0,
            BoundaryPiece::FamilyC => discord_of_response(&mq_family_c(p)?, MetricKind::Bures)?.value,
            BoundaryPiece::FamilyD => discord_of_response(&mq_family_d(p)?, MetricKind::Bures)?.value,
        };
        Ok(Some(v))
    }
}

/// All curves defined at `p` with their values.
pub fn boundary_candidates(p: f64) -> Result<Vec<(BoundaryPiece, f64)>> {
    check_purity(p)?;
    let mut out = Vec::with_capacity(5);
    for piece in BoundaryPiece::ALL {
        if let Some(v) = piece.value(p)? {
            out.push((piece, v));
        }
    }
    Ok(out)
}

/// Upper envelope at `p` and the curve attaining it. On ties closed-form
/// curves win over optimized ones, then earlier curves over later ones.
pub fn composite_boundary_piece(p: f64) -> Result<(BoundaryPiece, f64)> {
    let candidates = boundary_candidates(p)?;
    let mut best = candidates[0];
    for &(piece, v) in &candidates[1..] {
        let tie = (v - best.1).abs() <= 1e-12;
        if v > best.1 + 1e-12 || (tie && best.0.is_expensive() && !piece.is_expensive()) {
            best = (piece, v);
        }
    }
    Ok(best)
}

/// Largest known discord of response at purity `p`.
pub fn composite_boundary(p: f64) -> Result<f64> {
    Ok(composite_boundary_piece(p)?.1)
}

/// Whether `discord > composite_boundary(p) + tol`. Cheap closed-form curves
/// are tried first so the optimizations are only run near the boundary.
pub fn exceeds_boundary(p: f64, discord: f64, tol: f64) -> Result<bool> {
    check_purity(p)?;
    for expensive in [false, true] {
        for piece in BoundaryPiece::ALL.iter().filter(|c| c.is_expensive() == expensive) {
            if let Some(v) = piece.value(p)? {
                if discord <= v + tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A purity at which the curve attaining the envelope changes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub purity: f64,
    pub below: BoundaryPiece,
    pub above: BoundaryPiece,
}

/// Crossovers of the envelope, located to `1e-6` in purity.
pub fn crossovers() -> Result<Vec<Crossover>> {
    const STEPS: usize = 750;
    let grid = |i: usize| 0.25 + 0.75 * i as f64 / STEPS as f64;
    let mut out = Vec::new();
    let mut prev = composite_boundary_piece(grid(0))?.0;
    for i in 1..=STEPS {
        let piece = composite_boundary_piece(grid(i))?.0;
        if piece != prev {
            let (mut lo, mut hi) = (grid(i - 1), grid(i));
            while hi - lo > 1e-7 {
                let mid = 0.5 * (lo + hi);
                if composite_boundary_piece(mid)?.0 == prev {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(Crossover {
                purity: 0.5 * (lo + hi),
                below: prev,
                above: piece,
            });
            prev = piece;
        }
    }
    Ok(out)
}

/// Fitted closed-form approximation of the discord of the middle family.
pub fn region_c_approx(p: f64) -> Result<f64> {
    let (lo, hi) = MqFamily::C.domain();
    if !(lo..=hi).contains(&p) {
        return Err(Error::OutOfRange {
            name: "purity",
            value: p,
            lo,
            hi,
        });
    }
    let r = ((2.8 - p) * (p - 0.34)).sqrt();
    let inner = 0.013 * p * p + 0.19 + (0.09 * r - 0.09) * p - 0.2 * r;
    Ok(0.3 * p - 0.35 * r + 0.88 - 1.7 * inner.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::mq_family_b;

    #[test]
    fn region_table() {
        assert_eq!(classify_region(0.30).unwrap().label, RegionLabel::A);
        assert_eq!(classify_region(0.50).unwrap().label, RegionLabel::C);
        assert_eq!(classify_region(0.95).unwrap().label, RegionLabel::E);
        assert_eq!(classify_region(1.0 / 3.0).unwrap().label, RegionLabel::A);
        assert_eq!(classify_region(0.39).unwrap().label, RegionLabel::B);
        assert_eq!(classify_region(0.94).unwrap().label, RegionLabel::D);
        assert_eq!(classify_region(1.0).unwrap().label, RegionLabel::E);
        assert!(classify_region(0.2).is_err());
    }

    #[test]
    fn boundary_reference_values() {
        assert!(composite_boundary(0.25).unwrap().abs() < 1e-12);
        assert!((composite_boundary(1.0).unwrap() - 1.0).abs() < 1e-12);
        for i in 0..=10 {
            let p = 1.0 / 3.0 + (0.39 - 1.0 / 3.0) * i as f64 / 10.0;
            assert!((composite_boundary(p).unwrap() - 1.0 / 3.0).abs() < 1e-12, "P={p}");
        }
        assert!(composite_boundary(1.2).is_err());
    }

    #[test]
    fn plateau_is_attained() {
        let d = discord_of_response(&mq_family_b(0.37).unwrap(), MetricKind::Bures).unwrap().value;
        assert!((d - composite_boundary(0.37).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn approximate_middle_curve_tracks_family() {
        for i in 0..=7 {
            let p = 0.39 + 0.02 * i as f64;
            let exact = discord_of_response(&mq_family_c(p).unwrap(), MetricKind::Bures).unwrap().value;
            assert!((region_c_approx(p).unwrap() - exact).abs() < 0.02, "P={p}");
        }
    }

    #[test]
    fn exceeds_agrees_with_envelope() {
        for p in [0.3, 0.36, 0.45, 0.6, 0.9, 0.97] {
            let b = composite_boundary(p).unwrap();
            assert!(!exceeds_boundary(p, b, 1e-9).unwrap());
            assert!(!exceeds_boundary(p, b - 0.1, 1e-9).unwrap());
            assert!(exceeds_boundary(p, b + 1e-6, 1e-9).unwrap());
        }
    }
}
