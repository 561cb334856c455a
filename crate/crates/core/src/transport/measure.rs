use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::Rational;

/// Finitely supported probability measure with exact masses, sorted by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    masses: Vec<(usize, Rational)>,
}

impl Measure {
    /// Validates non-negativity, distinct support and total mass one. Zero
    /// masses are dropped.
    pub fn new(mut masses: Vec<(usize, Rational)>) -> Result<Measure> {
        masses.retain(|(_, m)| !m.is_zero());
        masses.sort_by_key(|&(v, _)| v);
        if let Some(w) = masses.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidMeasure(format!("vertex {} listed twice", w[0].0)));
        }
        if let Some((v, m)) = masses.iter().find(|(_, m)| *m < Rational::zero()) {
            return Err(Error::InvalidMeasure(format!("negative mass {m} at {v}")));
        }
        let total: Rational = masses.iter().map(|(_, m)| *m).sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("total mass {total} != 1")));
        }
        Ok(Measure { masses })
    }

    pub fn masses(&self) -> &[(usize, Rational)] {
        &self.masses
    }

    pub fn mass(&self, v: usize) -> Rational {
        self.masses
            .binary_search_by_key(&v, |&(w, _)| w)
            .map_or(Rational::zero(), |k| self.masses[k].1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.masses.iter().map(|&(v, _)| v)
    }
}

/// Lazy random-walk measure: mass `p` at the center and `(1 - p) / d_x` on
/// each neighbour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMeasure {
    pub center: usize,
    pub p: Rational,
    pub measure: Measure,
}

impl LocalMeasure {
    pub fn new(g: &Graph, center: usize, p: Rational) -> Result<LocalMeasure> {
        g.check_vertex(center)?;
        if p < Rational::zero() || p > Rational::one() {
            return Err(Error::InvalidMeasure(format!("idleness {p} outside [0, 1]")));
        }
        let degree = g.degree(center);
        if degree == 0 && !p.is_one() {
            return Err(Error::InvalidMeasure(format!("isolated vertex {center} needs p = 1")));
        }
        let mut masses = vec![(center, p)];
        if degree > 0 {
            let share = (Rational::one() - p) / Rational::from_integer(degree as i64);
            masses.extend(g.neighbors(center).iter().map(|&v| (v, share)));
        }
        Ok(LocalMeasure {
            center,
            p,
            measure: Measure::new(masses)?,
        })
    }
}

impl AsRef<Measure> for LocalMeasure {
    fn as_ref(&self) -> &Measure {
        &self.measure
    }
}

impl AsRef<Measure> for Measure {
    fn as_ref(&self) -> &Measure {
        self
    }
}
