use pct_agent::pct::{
    ControlUnit, DutyAccumulator, Hierarchy, HierarchySpec, Press, PressIntegrator,
};
use pct_agent::perception::PerceptState;
use pct_agent::Action;
use proptest::prelude::*;

fn percept(ball: f64, paddle: f64, delta: f64) -> PerceptState {
    PerceptState {
        ball_x: ball,
        ball_y: 30.0,
        ball_valid: true,
        paddle_axis: paddle,
        paddle_valid: true,
        paddle_delta: delta,
        direction: if delta > 0.25 {
            1
        } else if delta < -0.25 {
            -1
        } else {
            0
        },
        ..PerceptState::default()
    }
}

fn press() -> impl Strategy<Value = Press> {
    prop_oneof![Just(Press::Left), Just(Press::Right), Just(Press::Idle)]
}

proptest! {
    #[test]
    fn error_is_gain_times_difference(k in 0.001f64..100.0, r in -1e6f64..1e6, p in -1e6f64..1e6) {
        let mut u = ControlUnit::new(k);
        let (e, o) = u.step(p, r).unwrap();
        prop_assert_eq!(e.get(), k * (r - p));
        prop_assert_eq!(o.get(), e.get());
    }

    #[test]
    fn non_finite_inputs_leave_unit_untouched(k in 0.1f64..10.0, r in -10.0f64..10.0, p in -10.0f64..10.0,
                                             bad in prop_oneof![Just(f64::NAN), Just(f64::INFINITY), Just(f64::NEG_INFINITY)]) {
        let mut u = ControlUnit::new(k);
        u.step(p, r).unwrap();
        let before = u.clone();
        prop_assert!(u.step(bad, r).is_err());
        prop_assert!(u.step(p, bad).is_err());
        prop_assert_eq!(u, before);
    }

    #[test]
    fn centred_still_paddle_does_nothing(x in 0.0f64..132.0) {
        let mut h = Hierarchy::new(HierarchySpec::default()).unwrap();
        for _ in 0..10 {
            prop_assert_eq!(h.step(&percept(x, x, 0.0)).unwrap(), Action::Noop);
        }
        prop_assert_eq!(h.state().errors(), [0.0; 4]);
    }

    #[test]
    fn mirrored_inputs_mirror_actions(seq in prop::collection::vec((0.0f64..132.0, 0.0f64..132.0, -12.0f64..12.0), 1..60)) {
        let spec = HierarchySpec::default();
        let mut h = Hierarchy::new(spec.clone()).unwrap();
        let mut m = Hierarchy::new(spec).unwrap();
        for (b, p, d) in seq {
            let a = h.step(&percept(b, p, d)).unwrap();
            let am = m.step(&percept(-b, -p, -d)).unwrap();
            prop_assert_eq!(am, a.mirrored());
            let (e, em) = (h.state().errors(), m.state().errors());
            for i in 0..4 {
                prop_assert_eq!(e[i], -em[i]);
            }
        }
    }

    #[test]
    fn integrator_count_stays_below_limit(limit in 1u32..6, presses in prop::collection::vec(press(), 0..200)) {
        let mut it = PressIntegrator::default();
        let mut same = 0u32;
        let mut last = Press::Idle;
        for p in presses {
            it.update(p, limit);
            prop_assert!(it.count < limit);
            // the requested run is broken at least every `limit` presses
            same = if p == last && p != Press::Idle { same + 1 } else { 1 };
            last = p;
            if same.is_multiple_of(limit) && p != Press::Idle {
                prop_assert_eq!(it.count, 0);
            }
        }
    }

    #[test]
    fn duty_matches_floor_of_accumulated_drive(e in 0.01f64..40.0, scale in 0.01f64..0.5, n in 1usize..200) {
        let mut d = DutyAccumulator::default();
        let presses = (0..n).filter(|_| d.next(-e, scale) == Press::Right).count();
        let drive = e * scale;
        if drive >= 1.0 {
            prop_assert_eq!(presses, n);
        } else {
            // accumulated fractional duty, up to rounding of the running sum
            let exact = drive * n as f64;
            prop_assert!((presses as f64 - exact.floor()).abs() <= 1.0, "{} presses for {}", presses, exact);
        }
    }

    #[test]
    fn press_sign_follows_error_sign(e in prop_oneof![-100.0f64..-0.01, 0.01f64..100.0]) {
        let mut d = DutyAccumulator::default();
        let p = (0..1000).map(|_| d.next(e, 0.125)).find(|p| *p != Press::Idle).unwrap();
        prop_assert_eq!(p, if e > 0.0 { Press::Left } else { Press::Right });
    }

    #[test]
    fn lost_ball_fires_after_hold(hold in 0u32..20, stale in 0u32..40) {
        let spec = HierarchySpec { fire_hold_ticks: hold, ..HierarchySpec::default() };
        let mut h = Hierarchy::new(spec).unwrap();
        let p = PerceptState { ball_valid: false, paddle_valid: true, paddle_axis: 50.0, stale_ticks: stale, ..PerceptState::default() };
        let a = h.step(&p).unwrap();
        prop_assert_eq!(a == Action::Fire, stale > hold);
    }
}
