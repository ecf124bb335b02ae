use std::collections::VecDeque;

use super::mask::{BinaryMask, PixelCoord};
use crate::error::{Error, Result};

const NEIGHBORS4: [(i64, i64); 4] = [(0, -1), (-1, 0), (1, 0), (0, 1)];

/// Background pixels 4-connected to the image frame.
fn outer_background(mask: &BinaryMask) -> Vec<bool> {
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    let mut reached = vec![false; w * h];
    let mut queue = VecDeque::new();
    let seed = |x: usize, y: usize, reached: &mut Vec<bool>, queue: &mut VecDeque<(usize, usize)>| {
        let i = y * w + x;
        if !mask.bits()[i] && !reached[i] {
            reached[i] = true;
            queue.push_back((x, y));
        }
    };
    for x in 0..w {
        seed(x, 0, &mut reached, &mut queue);
        seed(x, h - 1, &mut reached, &mut queue);
    }
    for y in 0..h {
        seed(0, y, &mut reached, &mut queue);
        seed(w - 1, y, &mut reached, &mut queue);
    }
    while let Some((x, y)) = queue.pop_front() {
        for (dx, dy) in NEIGHBORS4 {
            let (nx, ny) = (x as i64 + dx, y as i64 + dy);
            if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                continue;
            }
            let i = ny as usize * w + nx as usize;
            if !mask.bits()[i] && !reached[i] {
                reached[i] = true;
                queue.push_back((nx as usize, ny as usize));
            }
        }
    }
    reached
}

/// Foreground pixels with at least one background 4-neighbour, in `(y, x)` order.
///
/// The out-of-frame side of an edge pixel counts as background. With
/// `outer_only`, only background reachable from the frame counts, so the
/// boundaries of enclosed holes are skipped.
pub fn border_pixels(mask: &BinaryMask, outer_only: bool) -> Result<Vec<PixelCoord>> {
    if mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    let outer = outer_only.then(|| outer_background(mask));
    let w = mask.width() as usize;
    let is_bg = |x: i64, y: i64| -> bool {
        if x < 0 || y < 0 || x >= mask.width() as i64 || y >= mask.height() as i64 {
            return true;
        }
        let i = y as usize * w + x as usize;
        match &outer {
            Some(reach) => reach[i],
            None => !mask.bits()[i],
        }
    };
    Ok(mask
        .foreground()
        .filter(|p| NEIGHBORS4.iter().any(|(dx, dy)| is_bg(p.x as i64 + dx, p.y as i64 + dy)))
        .collect())
}
