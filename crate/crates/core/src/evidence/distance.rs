use std::sync::Arc;

use super::{EvidenceError, Frame, MassFunction, Subset};

/// Jaccard similarity of two subsets, extended to the empty set:
/// `D(∅,∅) = 1` and `D(∅,B) = 0` for nonempty `B`.
pub(crate) fn jaccard(a: Subset, b: Subset) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        (false, false) => f64::from(a.intersection(b).cardinality()) / f64::from(a.union(b).cardinality()),
    }
}

/// Dense `2^n × 2^n` Jaccard similarity matrix over a frame's power set.
///
/// Only practical for small frames; [`jousselme_distance`] evaluates the
/// same coefficients lazily over the focal sets it needs.
#[derive(Debug, Clone)]
pub struct JaccardMatrix {
    frame: Arc<Frame>,
    entries: Vec<f64>,
}

impl JaccardMatrix {
    pub fn new(frame: Arc<Frame>) -> Self {
        let n = frame.power_set_size();
        let mut entries = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                entries[a * n + b] = jaccard(Subset(a as u32), Subset(b as u32));
            }
        }
        JaccardMatrix { frame, entries }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn get(&self, a: Subset, b: Subset) -> f64 {
        self.entries[a.index() * self.frame.power_set_size() + b.index()]
    }

    /// `sqrt(0.5 · ΔᵀDΔ)` by full matrix product.
    pub fn distance(&self, m1: &MassFunction, m2: &MassFunction) -> Result<f64, EvidenceError> {
        if !m1.same_frame(m2) || *m1.frame().as_ref() != *self.frame {
            return Err(EvidenceError::FrameMismatch);
        }
        let n = self.frame.power_set_size();
        let delta: Vec<f64> = m1.masses().iter().zip(m2.masses()).map(|(a, b)| a - b).collect();
        let mut q = 0.0;
        for a in 0..n {
            let row = &self.entries[a * n..(a + 1) * n];
            let dot: f64 = row.iter().zip(&delta).map(|(d, x)| d * x).sum();
            q += delta[a] * dot;
        }
        Ok((0.5 * q).max(0.0).sqrt())
    }
}

/// Jousselme distance between two mass functions on the same frame.
pub fn jousselme_distance(m1: &MassFunction, m2: &MassFunction) -> Result<f64, EvidenceError> {
    if !m1.same_frame(m2) {
        return Err(EvidenceError::FrameMismatch);
    }
    let delta: Vec<(Subset, f64)> = m1
        .masses()
        .iter()
        .zip(m2.masses())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(k, (a, b))| (Subset(k as u32), a - b))
        .collect();
    let mut q = 0.0;
    for &(a, da) in &delta {
        for &(b, db) in &delta {
            q += da * db * jaccard(a, b);
        }
    }
    Ok((0.5 * q).max(0.0).sqrt().min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jaccard_matrix_shape() {
        let d = JaccardMatrix::new(Frame::preference());
        for a in 0..16u32 {
            assert_eq!(d.get(Subset(a), Subset(a)), 1.0);
            for b in 0..16u32 {
                let v = d.get(Subset(a), Subset(b));
                assert_eq!(v, d.get(Subset(b), Subset(a)));
                assert!((0.0..=1.0).contains(&v));
            }
        }
        assert_eq!(d.get(Subset(0b0011), Subset(0b0110)), 1.0 / 3.0);
        assert_eq!(d.get(Subset::EMPTY, Subset(1)), 0.0);
    }

    #[test]
    fn disjoint_categoricals_are_at_distance_one() {
        let f = Frame::preference();
        let a = MassFunction::categorical(f.clone(), Subset::singleton(0)).unwrap();
        let b = MassFunction::categorical(f.clone(), Subset::singleton(3)).unwrap();
        assert!((jousselme_distance(&a, &b).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(jousselme_distance(&a, &a).unwrap(), 0.0);
        let e = MassFunction::categorical(f, Subset::EMPTY).unwrap();
        assert!((jousselme_distance(&a, &e).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frame_mismatch() {
        let a = MassFunction::vacuous(Frame::preference());
        let b = MassFunction::vacuous(Frame::new(["x", "y"]).unwrap());
        assert!(jousselme_distance(&a, &b).is_err());
        assert!(JaccardMatrix::new(Frame::preference()).distance(&a, &b).is_err());
    }
}
