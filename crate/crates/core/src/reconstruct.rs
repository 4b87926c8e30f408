//! Recovering an s-t path from the sequence of trackers it visits.

use crate::error::{Error, Result};
use crate::graph::{Instance, VertexSet};
use crate::track::{for_each_st_path, verify, DEFAULT_PATH_CAP};

/// The tracker subsequence of a path.
pub fn tracker_sequence(path: &[usize], trackers: &VertexSet) -> Vec<usize> {
    path.iter().copied().filter(|v| trackers.contains(v)).collect()
}

/// The unique simple s-t path whose trackers, in order, are `sequence`.
pub fn reconstruct_path(instance: &Instance, trackers: &VertexSet, sequence: &[usize]) -> Result<Vec<usize>> {
    if !verify(instance, trackers)?.valid {
        return Err(Error::NotTrackingSet);
    }
    if sequence.iter().any(|v| !trackers.contains(v)) {
        return Err(Error::NoSuchPath);
    }
    let mut found = None;
    for_each_st_path(instance, DEFAULT_PATH_CAP, |path| {
        if tracker_sequence(path, trackers) == sequence {
            found = Some(path.to_vec());
            false
        } else {
            true
        }
    })?;
    found.ok_or(Error::NoSuchPath)
}
