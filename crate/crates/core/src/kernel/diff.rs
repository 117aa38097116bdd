use crate::error::Result;
use crate::observable::Observable;
use crate::state::PhaseState;

/// Exact gradient by dual-number propagation.
pub fn grad(f: &Observable, s: &PhaseState) -> Result<[f64; 6]> {
    f.check_chart(s)?;
    Ok(f.jet_at(&s.coords)?.eps)
}

/// Central-difference gradient with step `h`; an oracle independent of the
/// dual-number path (inputs are evaluated as plain constants).
pub fn fd_grad(f: &Observable, s: &PhaseState, h: f64) -> Result<[f64; 6]> {
    f.check_chart(s)?;
    assert!(h > 0.0, "finite-difference step must be positive");
    let mut g = [0.0; 6];
    for (i, gi) in g.iter_mut().enumerate() {
        let mut plus = s.coords;
        let mut minus = s.coords;
        plus[i] += h;
        minus[i] -= h;
        *gi = (f.value_at(&plus)? - f.value_at(&minus)?) / (2.0 * h);
    }
    Ok(g)
}
