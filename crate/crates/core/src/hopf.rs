use crate::algebra::Cdga;
use crate::error::{Error, Result};
use crate::linalg::Q;

/// The Hopf invariant read off the cup square: the coefficient `h` in
/// `w² = h·b`, where `b` spans degree `2|w|` (or is the named `top`).
pub fn hopf_invariant(ring: &Cdga, w: &str, top: Option<&str>) -> Result<Q> {
    let wg = ring.gen(w)?;
    let n = ring.free().generator(w)?.degree;
    let dim = ring.dim(2 * n);
    if dim != 1 {
        return Err(Error::Invalid(format!(
            "degree {} has rank {dim}, so w² is not proportional to a single top class",
            2 * n
        )));
    }
    let sq = ring.coords(&ring.product(&wg, &wg), 2 * n).get(0);
    match top {
        None => Ok(sq),
        Some(b) => {
            let bg = ring.gen(b)?;
            let bc = ring.coords(&bg, 2 * n).get(0);
            if ring.free().generator(b)?.degree != 2 * n || num_traits::Zero::is_zero(&bc) {
                return Err(Error::Invalid(format!("`{b}` does not span degree {}", 2 * n)));
            }
            Ok(sq / bc)
        }
    }
}
