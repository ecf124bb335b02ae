mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use quadprompt::geometry::{
    area, border_pixels, concavity_index, convex_hull, iou, pca_axes, rasterize_hull, rotate90_coord, BinaryMask, PixelCoord,
};
use quadprompt::prompt::{
    box_from_extreme, gen_extreme, gen_major_minor, gen_region_click, gen_tight_box, project_and_score, sample_refinement, PromptRole,
    ScoringParams,
};
use quadprompt::report::{instance_miou, normalize_concavity, summarize, EvalRecord};
use quadprompt::segmenter::{
    select_by_oracle, select_by_predicted, sketch_from_extreme, sketch_from_majmin, GroundTruth, PerturbedOracle, PromptHistory,
    SegmentRequest, Segmenter,
};
use quadprompt::session::{run_session, SelectionPolicy, SessionConfig, SessionStrategy};

fn mask_strategy(max: u32) -> impl proptest::strategy::Strategy<Value = BinaryMask> {
    (1..=max, 1..=max, 0.05f64..0.9)
        .prop_flat_map(|(w, h, p)| (Just(w), Just(h), proptest::collection::vec(proptest::bool::weighted(p), (w * h) as usize)))
        .prop_map(|(w, h, mut bits)| {
            if !bits.iter().any(|&b| b) {
                bits[0] = true;
            }
            BinaryMask::from_bits(w, h, bits).unwrap()
        })
}

fn ellipse_strategy() -> impl proptest::strategy::Strategy<Value = BinaryMask> {
    (10.0f64..24.0, 1.5f64..2.5, 28.0f64..36.0, 28.0f64..36.0, 0.0f64..std::f64::consts::PI).prop_map(|(a, ratio, cx, cy, theta)| {
        common::Ellipse { cx, cy, a, b: a / ratio, theta }.raster(64, 64)
    })
}

/// Random interior blob plus one pixel on each frame edge, so every axis
/// extreme is attained by exactly one border pixel.
fn spiked_strategy() -> impl proptest::strategy::Strategy<Value = BinaryMask> {
    (mask_strategy(30), 1u32..41, 1u32..41, 1u32..41, 1u32..41).prop_map(|(inner, t, b, l, r)| {
        let (w, h) = (42, 42);
        let mut m = BinaryMask::new(w, h).unwrap();
        for p in inner.foreground() {
            m.set(p.x + 6, p.y + 6, true);
        }
        m.set(t, 0, true);
        m.set(b, h - 1, true);
        m.set(0, l, true);
        m.set(w - 1, r, true);
        m
    })
}

fn rot_set(points: &[PixelCoord], height: u32) -> BTreeSet<(u32, u32)> {
    points.iter().map(|&p| rotate90_coord(p, height)).map(|p| (p.x, p.y)).collect()
}

fn set(points: &[PixelCoord]) -> BTreeSet<(u32, u32)> {
    points.iter().map(|p| (p.x, p.y)).collect()
}

/// Border pixels attaining the extremum of `key`, so ties can be excluded.
fn extremal_count(border: &[PixelCoord], key: impl Fn(&PixelCoord) -> i64) -> usize {
    let best = border.iter().map(&key).min().unwrap();
    border.iter().filter(|p| key(p) == best).count()
}

fn record(dataset: &str, class: &str, id: usize, final_iou: f64, concavity: f64) -> EvalRecord {
    EvalRecord {
        dataset_id: dataset.into(),
        instance_id: format!("i{id}"),
        class_id: class.into(),
        strategy: SessionStrategy::RegionIterative,
        budget: 1,
        repeat_index: 0,
        final_iou,
        concavity,
        normalized_concavity: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, max_global_rejects: 4096, ..ProptestConfig::default() })]

    #[test]
    fn iou_symmetric_and_bounded(a in mask_strategy(32), seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let mut b = a.clone();
        for _ in 0..(seed % 12) {
            use rand::Rng;
            let (x, y) = (r.gen_range(0..a.width()), r.gen_range(0..a.height()));
            let v = b.get(x, y);
            b.set(x, y, !v);
        }
        let (ab, ba) = (iou(&a, &b).unwrap(), iou(&b, &a).unwrap());
        prop_assert_eq!(ab, ba);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ab == 1.0, a == b);
    }

    #[test]
    fn hull_contains_mask_and_rotates(m in mask_strategy(40)) {
        let (w, h) = m.dims();
        let filled = rasterize_hull(&convex_hull(&m).unwrap(), w, h).unwrap();
        prop_assert!(m.is_subset_of(&filled).unwrap());
        let delta = concavity_index(&m).unwrap();
        prop_assert_eq!(delta == 0.0, area(&filled) == area(&m));
        prop_assert_eq!(concavity_index(&m.rotate90()).unwrap(), delta);
    }

    #[test]
    fn border_is_foreground_with_background_neighbour(m in mask_strategy(40), outer_only in any::<bool>()) {
        let border = border_pixels(&m, outer_only).unwrap();
        prop_assert!(border.windows(2).all(|w| w[0].row_major_key() < w[1].row_major_key()));
        for p in &border {
            prop_assert!(m.get(p.x, p.y));
            let (x, y) = (p.x as i64, p.y as i64);
            prop_assert!([(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)].iter().any(|&(a, b)| !m.get_signed(a, b)));
        }
        if outer_only {
            let all: BTreeSet<_> = set(&border_pixels(&m, false).unwrap());
            prop_assert!(set(&border).is_subset(&all));
        }
    }

    #[test]
    fn pca_orthonormal_and_rotation_covariant(m in mask_strategy(40)) {
        let border = border_pixels(&m, true).unwrap();
        prop_assume!(set(&border).len() >= 2);
        let axes = pca_axes(&border).unwrap();
        let (p, s) = (axes.primary, axes.secondary);
        prop_assert!((p[0].hypot(p[1]) - 1.0).abs() <= 1e-9);
        prop_assert!((s[0].hypot(s[1]) - 1.0).abs() <= 1e-9);
        prop_assert!((p[0] * s[0] + p[1] * s[1]).abs() <= 1e-9);
        prop_assume!(!axes.degenerate && (axes.lambda1 - axes.lambda2) > 1e-3 * axes.lambda1);
        let rotated: Vec<_> = border.iter().map(|&q| rotate90_coord(q, m.height())).collect();
        let r = pca_axes(&rotated).unwrap();
        // clockwise rotation maps (dx, dy) to (-dy, dx)
        let expect = [-p[1], p[0]];
        let dot = r.primary[0] * expect[0] + r.primary[1] * expect[1];
        prop_assert!((dot.abs() - 1.0).abs() < 1e-6, "rotated d1 {:?} vs {:?}", r.primary, expect);
    }

    #[test]
    fn prompts_stay_near_border(m in mask_strategy(48), seed in any::<u64>(), radius in 0u32..4) {
        let params = ScoringParams { dilation_radius: Some(radius), ..ScoringParams::default() };
        let border = border_pixels(&m, true).unwrap();
        let mut sets = vec![gen_extreme(&m, &params, seed, false).unwrap()];
        if set(&border).len() >= 2 {
            sets.push(gen_major_minor(&m, &params, seed, false).unwrap());
        }
        for ps in &sets {
            prop_assert!(ps.validate().is_ok());
            for p in &ps.points {
                prop_assert!(p.coord.x < m.width() && p.coord.y < m.height());
                prop_assert!(border.iter().any(|b| b.chebyshev(p.coord) <= radius));
            }
        }
        let click = gen_region_click(&m, seed).unwrap();
        prop_assert!(click.validate().is_ok());
        prop_assert!(m.get(click.points[0].coord.x, click.points[0].coord.y));
    }

    #[test]
    fn generation_is_deterministic(m in mask_strategy(48), seed in any::<u64>(), deterministic in any::<bool>()) {
        let params = ScoringParams::default();
        let a = serde_json::to_string(&gen_extreme(&m, &params, seed, deterministic).unwrap()).unwrap();
        let b = serde_json::to_string(&gen_extreme(&m, &params, seed, deterministic).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(gen_region_click(&m, seed).unwrap(), gen_region_click(&m, seed).unwrap());
    }

    #[test]
    fn extreme_rotation_equivariance(m in spiked_strategy()) {
        let params = ScoringParams { dilation_radius: Some(0), ..ScoringParams::default() };
        let border = border_pixels(&m, true).unwrap();
        prop_assume!(extremal_count(&border, |p| p.y as i64) == 1);
        prop_assume!(extremal_count(&border, |p| -(p.y as i64)) == 1);
        prop_assume!(extremal_count(&border, |p| p.x as i64) == 1);
        prop_assume!(extremal_count(&border, |p| -(p.x as i64)) == 1);
        let h = m.height();
        let before = gen_extreme(&m, &params, 0, true).unwrap();
        let after = gen_extreme(&m.rotate90(), &params, 0, true).unwrap();
        let rot = |role| rotate90_coord(before.role(role).unwrap(), h);
        prop_assert_eq!(after.role(PromptRole::Right).unwrap(), rot(PromptRole::Top));
        prop_assert_eq!(after.role(PromptRole::Bottom).unwrap(), rot(PromptRole::Right));
        prop_assert_eq!(after.role(PromptRole::Left).unwrap(), rot(PromptRole::Bottom));
        prop_assert_eq!(after.role(PromptRole::Top).unwrap(), rot(PromptRole::Left));
    }

    #[test]
    fn major_minor_rotation_equivariance(m in ellipse_strategy()) {
        let params = ScoringParams { dilation_radius: Some(0), ..ScoringParams::default() };
        let before = gen_major_minor(&m, &params, 0, true).unwrap();
        let after = gen_major_minor(&m.rotate90(), &params, 0, true).unwrap();
        for role in [PromptRole::Major, PromptRole::Minor] {
            prop_assert_eq!(set(&after.coords_with_role(role)), rot_set(&before.coords_with_role(role), m.height()));
        }
    }

    #[test]
    fn radius_zero_box_is_tight(m in mask_strategy(48)) {
        let params = ScoringParams { dilation_radius: Some(0), ..ScoringParams::default() };
        let b = box_from_extreme(&gen_extreme(&m, &params, 0, true).unwrap()).unwrap();
        prop_assert_eq!(b.points, gen_tight_box(&m).unwrap().points);
    }

    #[test]
    fn score_monotone(m in mask_strategy(32), angle in 0.0f64..std::f64::consts::TAU, use_ortho in any::<bool>()) {
        let border = border_pixels(&m, true).unwrap();
        let d = [angle.cos(), angle.sin()];
        let o = [-d[1], d[0]];
        let scored = project_and_score(&border, [m.width() as f64 / 2.0, m.height() as f64 / 2.0], d, o, &ScoringParams::default(), use_ortho).unwrap();
        for a in &scored {
            for b in &scored {
                let ortho_ok = !use_ortho || a.ortho <= b.ortho;
                if a.main > b.main && ortho_ok {
                    prop_assert!(a.score > b.score);
                }
                if use_ortho && a.main == b.main && a.ortho < b.ortho {
                    prop_assert!(a.score > b.score);
                }
            }
        }
    }

    #[test]
    fn refinement_lands_in_error_region(gt in mask_strategy(24), seed in any::<u64>()) {
        let pred = gt.rotate90();
        prop_assume!(pred.dims() == gt.dims());
        match sample_refinement(&gt, &pred, seed).unwrap() {
            None => prop_assert_eq!(&gt, &pred),
            Some(p) => {
                let (g, q) = (gt.get(p.coord.x, p.coord.y), pred.get(p.coord.x, p.coord.y));
                prop_assert!(g != q);
                prop_assert_eq!(p.role, if g { PromptRole::Positive } else { PromptRole::Negative });
            }
        }
    }

    #[test]
    fn oracle_selection_dominates(gt in mask_strategy(32), seed in any::<u64>(), with_prev in any::<bool>()) {
        let ps = gen_region_click(&gt, seed).unwrap();
        let history = PromptHistory::new(ps);
        let prev = gt.rotate90();
        let previous = (with_prev && prev.dims() == gt.dims()).then_some(&prev);
        let req = SegmentRequest { history: &history, previous, oracle: GroundTruth::new(&gt), seed };
        let out = PerturbedOracle::default().segment(&req).unwrap();
        if let Some(p) = previous {
            prop_assert!(out.candidates.iter().any(|c| &c.mask == p));
        }
        let o = iou(&out.candidates[select_by_oracle(&out, &gt).unwrap()].mask, &gt).unwrap();
        let q = iou(&out.candidates[select_by_predicted(&out)].mask, &gt).unwrap();
        prop_assert!(o >= q);
    }

    #[test]
    fn oracle_sessions_monotone(gt in mask_strategy(32), seed in any::<u64>(), budget in 1u32..=7) {
        let cfg = SessionConfig { selection: SelectionPolicy::Oracle, ..SessionConfig::new(SessionStrategy::RegionIterative, budget, seed) };
        let seg = PerturbedOracle::default();
        let t = run_session(&gt, &seg, &cfg).unwrap();
        prop_assert!(t.steps.len() as u32 <= budget);
        prop_assert!(t.steps.windows(2).all(|w| w[1].step_iou >= w[0].step_iou));
        prop_assert!(!t.early_stop || t.final_iou == 1.0);
        prop_assert_eq!(&t, &run_session(&gt, &seg, &cfg).unwrap());
    }

    #[test]
    fn sketches_rotate_with_their_prompts(m in ellipse_strategy()) {
        let params = ScoringParams { dilation_radius: Some(0), ..ScoringParams::default() };
        let h = m.height();
        let rotate_set = |ps: &quadprompt::PromptSet| {
            let mut out = ps.clone();
            for p in &mut out.points {
                p.coord = rotate90_coord(p.coord, h);
            }
            out
        };
        let ex = gen_extreme(&m, &params, 0, true).unwrap();
        let mut rx = rotate_set(&ex);
        // top->right, right->bottom, bottom->left, left->top
        for p in &mut rx.points {
            p.role = match p.role {
                PromptRole::Top => PromptRole::Right,
                PromptRole::Right => PromptRole::Bottom,
                PromptRole::Bottom => PromptRole::Left,
                PromptRole::Left => PromptRole::Top,
                r => r,
            };
        }
        prop_assert_eq!(sketch_from_extreme(&ex, 64, 64).unwrap().rotate90(), sketch_from_extreme(&rx, 64, 64).unwrap());
        let mm = gen_major_minor(&m, &params, 0, true).unwrap();
        let a = sketch_from_majmin(&mm, 64, 64).unwrap().rotate90();
        let b = sketch_from_majmin(&rotate_set(&mm), 64, 64).unwrap();
        // the ellipse test is exact up to floating rounding on boundary pixels
        prop_assert!(iou(&a, &b).unwrap() > 0.99, "rotated sketch differs");
    }

    #[test]
    fn aggregation_permutation_invariant(values in proptest::collection::vec((0usize..4, 0.0f64..=1.0, 0.0f64..0.9), 1..40), seed in any::<u64>()) {
        let mut recs: Vec<_> = values.iter().enumerate().map(|(i, &(c, v, d))| record(if i % 2 == 0 { "a" } else { "b" }, &format!("c{c}"), i, v, d)).collect();
        let before = instance_miou(&recs).unwrap();
        let rows = summarize(&recs).unwrap();
        let mut r = common::rng(seed);
        for i in (1..recs.len()).rev() {
            use rand::Rng;
            recs.swap(i, r.gen_range(0..=i));
        }
        prop_assert_eq!(instance_miou(&recs).unwrap(), before);
        prop_assert_eq!(summarize(&recs).unwrap(), rows);
    }

    #[test]
    fn normalized_concavity_in_range_and_ordered(values in proptest::collection::vec((0usize..3, 0.0f64..0.99), 1..40)) {
        let mut recs: Vec<_> = values.iter().enumerate().map(|(i, &(ds, d))| record(&format!("d{ds}"), "c", i, 0.5, d)).collect();
        normalize_concavity(&mut recs);
        for a in &recs {
            let na = a.normalized_concavity.unwrap();
            prop_assert!((0.0..=1.0).contains(&na));
            for b in recs.iter().filter(|b| b.dataset_id == a.dataset_id) {
                if a.concavity < b.concavity {
                    prop_assert!(na <= b.normalized_concavity.unwrap());
                }
            }
        }
    }
}
