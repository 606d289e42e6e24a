use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exec::{chunks, Exec};

use super::Multiplexer;

const CHUNK: usize = 256;

/// What came out of every channel while one user (or nobody) transmitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosstalkReport {
    pub active_user: Option<usize>,
    pub trials: usize,
    /// Per channel, the number of trials in which an idle channel decoded
    /// to a nonzero symbol. Always 0 for the active channel.
    pub leaks: Vec<u64>,
    /// Trials in which the active user's own symbol was not recovered.
    pub active_errors: u64,
}

impl CrosstalkReport {
    pub fn is_clean(&self) -> bool {
        self.active_errors == 0 && self.leaks.iter().all(|&c| c == 0)
    }
}

/// Sends random symbols on `active_user` with every other channel silent
/// and counts what leaks onto the silent channels.
pub fn crosstalk_probe(
    mux: &Multiplexer,
    active_user: Option<usize>,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<CrosstalkReport> {
    let n = mux.system().n();
    let p = mux.system().p();
    if let Some(u) = active_user {
        if u >= n {
            return Err(crate::Error::InvalidArgument(format!(
                "user {u} out of range for N = {n}"
            )));
        }
    }
    let parts = chunks(trials, CHUNK);
    let partial = exec.map_slice(&parts, |&(start, len)| -> Result<(Vec<u64>, u64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream((start / CHUNK) as u64);
        let mut leaks = vec![0u64; n];
        let mut errors = 0u64;
        let mut v = vec![0u32; n];
        for _ in 0..len {
            let sent = rng.random_range(0..p);
            if let Some(u) = active_user {
                v[u] = sent;
            }
            let back = mux.demux(&mux.mux(&v)?)?;
            for (i, &x) in back.iter().enumerate() {
                if Some(i) == active_user {
                    errors += u64::from(x != sent);
                } else {
                    leaks[i] += u64::from(x != 0);
                }
            }
        }
        Ok((leaks, errors))
    });
    let mut leaks = vec![0u64; n];
    let mut active_errors = 0;
    for part in partial {
        let (l, e) = part?;
        leaks.iter_mut().zip(l).for_each(|(a, b)| *a += b);
        active_errors += e;
    }
    Ok(CrosstalkReport {
        active_user,
        trials,
        leaks,
        active_errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::GaloisSystem;
    use crate::transform::Kind;

    #[test]
    fn clean_on_table_one() {
        let mux =
            Multiplexer::new(GaloisSystem::new(5, 1, 4, None).unwrap(), Kind::Hartley).unwrap();
        let r = crosstalk_probe(&mux, Some(2), 1000, 7, Exec::Sequential).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.leaks, vec![0; 4]);
        assert!(crosstalk_probe(&mux, None, 10, 0, Exec::Sequential)
            .unwrap()
            .is_clean());
        assert!(crosstalk_probe(&mux, Some(4), 10, 0, Exec::Sequential).is_err());
    }
}
