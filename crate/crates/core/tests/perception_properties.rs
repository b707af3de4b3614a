use pct_agent::perception::{
    classify, detect_blobs, preprocess, track, BinaryFrame, Blob, CropConfig, GameLayout,
    PerceptState, RawFrame,
};
use proptest::prelude::*;

fn frame_strategy() -> impl Strategy<Value = RawFrame> {
    (1usize..48, 1usize..48).prop_flat_map(|(w, h)| {
        prop::collection::vec(any::<u8>(), w * h)
            .prop_map(move |px| RawFrame::new(w, h, px).unwrap())
    })
}

fn binary_strategy() -> impl Strategy<Value = BinaryFrame> {
    (1usize..40, 1usize..40).prop_flat_map(|(h, w)| {
        prop::collection::vec(any::<bool>(), h * w)
            .prop_map(move |c| BinaryFrame::from_cells(h, w, c))
    })
}

fn blob_at(x: f64, y: f64, area: usize) -> Blob {
    Blob {
        centroid_x: x,
        centroid_y: y,
        min_row: y as usize,
        max_row: y as usize + 1,
        min_col: x as usize,
        max_col: x as usize + 1,
        area,
        first_pixel: (y as usize, x as usize),
    }
}

proptest! {
    #[test]
    fn binarize_matches_pixelwise_threshold(f in frame_strategy(), t in any::<u8>(), top in 0usize..8, left in 0usize..8) {
        prop_assume!(top < f.height() && left < f.width());
        let cfg = CropConfig {
            top_row: top,
            left_col: left,
            crop_height: f.height() - top,
            crop_width: f.width() - left,
            threshold: t,
        };
        let b = preprocess(&f, &cfg).unwrap();
        prop_assert_eq!((b.height(), b.width()), (cfg.crop_height, cfg.crop_width));
        for r in 0..b.height() {
            for c in 0..b.width() {
                prop_assert_eq!(b.get(r, c), f.get(r + top, c + left) > t);
            }
        }
        // binarizing an already binary image changes nothing
        let full = CropConfig { top_row: 0, left_col: 0, crop_height: b.height(), crop_width: b.width(), threshold: t.min(254) };
        prop_assert_eq!(preprocess(&b.to_luminance(), &full).unwrap(), b);
    }

    #[test]
    fn blobs_partition_the_foreground(bf in binary_strategy()) {
        let blobs = detect_blobs(&bf);
        prop_assert_eq!(blobs.iter().map(|b| b.area).sum::<usize>(), bf.count_foreground());
        for w in blobs.windows(2) {
            prop_assert!(w[0].area > w[1].area || (w[0].area == w[1].area && w[0].first_pixel < w[1].first_pixel));
        }
        for b in &blobs {
            prop_assert!(bf.get(b.first_pixel.0, b.first_pixel.1));
            prop_assert!((b.min_col as f64..=b.max_col as f64).contains(&b.centroid_x));
            prop_assert!((b.min_row as f64..=b.max_row as f64).contains(&b.centroid_y));
        }
    }

    #[test]
    fn transposing_swaps_centroids(bf in binary_strategy()) {
        let (h, w) = (bf.height(), bf.width());
        let mut t = BinaryFrame::new(w, h);
        for r in 0..h {
            for c in 0..w {
                t.set(c, r, bf.get(r, c));
            }
        }
        let mut a: Vec<_> = detect_blobs(&bf).iter().map(|b| (b.area, b.min_row, b.min_col, b.max_row, b.max_col)).collect();
        let mut b: Vec<_> = detect_blobs(&t).iter().map(|b| (b.area, b.min_col, b.min_row, b.max_col, b.max_row)).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn missing_ball_is_held_then_dropped(hold in 0u32..10, misses in 0u32..20) {
        let layout = GameLayout { ball_hold_ticks: hold, ..GameLayout::breakout() };
        let paddle = blob_at(60.0, 90.0, 48);
        let mut s = track(&PerceptState::default(), Some(&blob_at(30.0, 40.0, 4)), Some(&paddle), &layout);
        for i in 1..=misses {
            s = track(&s, None, Some(&paddle), &layout);
            prop_assert_eq!(s.stale_ticks, i);
            prop_assert_eq!(s.ball_valid, i <= hold);
            prop_assert_eq!((s.ball_x, s.ball_y), (30.0, 40.0));
            prop_assert!(s.ball_velocity.is_none());
        }
    }

    #[test]
    fn velocity_needs_two_consecutive_detections(xs in prop::collection::vec(prop::option::of(0.0f64..100.0), 1..30)) {
        let layout = GameLayout::breakout();
        let mut s = PerceptState::default();
        let mut prev_seen = false;
        for x in xs {
            let ball = x.map(|x| blob_at(x, 20.0, 4));
            let before = s.clone();
            s = track(&s, ball.as_ref(), None, &layout);
            match x {
                Some(x) if prev_seen => prop_assert_eq!(s.ball_velocity, Some((x - before.ball_x, 0.0))),
                _ => prop_assert!(s.ball_velocity.is_none()),
            }
            prev_seen = x.is_some();
        }
    }

    #[test]
    fn ball_is_never_taken_from_paddle_zone(y in 0.0f64..99.0, area in 1usize..12) {
        let layout = GameLayout::breakout();
        let b = blob_at(40.0, y, area);
        let (ball, _) = classify(std::slice::from_ref(&b), &layout);
        prop_assert_eq!(ball.is_some(), !layout.paddle_zone.intersects(&b));
    }
}
