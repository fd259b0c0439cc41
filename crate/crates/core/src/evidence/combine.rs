use super::{EvidenceError, MassFunction};

/// Unnormalized conjunctive rule: the product mass of every pair of focal
/// sets lands on their intersection, conflict included.
pub fn conjunctive_combine(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction, EvidenceError> {
    if !m1.same_frame(m2) {
        return Err(EvidenceError::FrameMismatch);
    }
    let mut out = vec![0.0; m1.frame().power_set_size()];
    let rhs: Vec<_> = m2.focal_elements().collect();
    for (a, ma) in m1.focal_elements() {
        for &(b, mb) in &rhs {
            out[a.intersection(b).index()] += ma * mb;
        }
    }
    Ok(MassFunction::from_parts(m1.frame().clone(), out))
}

/// Left fold of [`conjunctive_combine`] over a nonempty list.
pub fn conjunctive_combine_many<'a, I>(ms: I) -> Result<MassFunction, EvidenceError>
where
    I: IntoIterator<Item = &'a MassFunction>,
{
    let mut it = ms.into_iter();
    let first = it.next().ok_or(EvidenceError::EmptyInput)?.clone();
    it.try_fold(first, |acc, m| conjunctive_combine(&acc, m))
}

/// Mean rule: the subset-wise average of the inputs.
pub fn mean_combine<'a, I>(ms: I) -> Result<MassFunction, EvidenceError>
where
    I: IntoIterator<Item = &'a MassFunction>,
{
    let mut it = ms.into_iter();
    let first = it.next().ok_or(EvidenceError::EmptyInput)?;
    let mut sum = first.masses().to_vec();
    let mut count = 1usize;
    for m in it {
        if !first.same_frame(m) {
            return Err(EvidenceError::FrameMismatch);
        }
        for (s, v) in sum.iter_mut().zip(m.masses()) {
            *s += v;
        }
        count += 1;
    }
    let n = count as f64;
    sum.iter_mut().for_each(|s| *s /= n);
    Ok(MassFunction::from_parts(first.frame().clone(), sum))
}
