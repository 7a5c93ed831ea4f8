//! Exercises the C ABI exactly as a foreign caller would: raw pointers,
//! status codes, and caller-owned buffers.

use std::f64::consts::PI;
use std::ffi::CStr;
use std::ptr;

use chainsim_ffi::*;

fn last_error() -> String {
    let needed = chainsim_last_error_message(ptr::null_mut(), 0);
    let mut buf = vec![0i8; needed + 1];
    chainsim_last_error_message(buf.as_mut_ptr().cast(), buf.len());
    unsafe { CStr::from_ptr(buf.as_ptr().cast()) }
        .to_string_lossy()
        .into_owned()
}

fn new_config(n_spins: usize) -> *mut ChainsimConfig {
    let mut config = ptr::null_mut();
    assert_eq!(
        chainsim_config_new_uniform(n_spins, &mut config),
        ChainsimStatus::Ok
    );
    assert!(!config.is_null());
    config
}

#[test]
fn version_and_default_angle() {
    let version = unsafe { CStr::from_ptr(chainsim_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    assert!((chainsim_default_kick_angle() - PI / 2.0).abs() < 1e-15);
}

#[test]
fn standard_run_reproduces_end_pair_curve() {
    let n = 4;
    let config = new_config(n);
    let mut schedule = ptr::null_mut();
    assert_eq!(
        chainsim_schedule_new_standard(n, chainsim_default_kick_angle(), &mut schedule),
        ChainsimStatus::Ok
    );

    let n_times = 241usize;
    let times: Vec<f64> = (0..n_times)
        .map(|k| 6.0 * PI * k as f64 / (n_times - 1) as f64)
        .collect();
    let pairs_i = [1usize];
    let pairs_j = [n];
    let mut concurrence = vec![0.0f64; n_times];
    let mut purity = vec![0.0f64; n_times];
    let mut norm = vec![0.0f64; n_times];
    assert_eq!(
        chainsim_run(
            config,
            schedule,
            times.as_ptr(),
            n_times,
            pairs_i.as_ptr(),
            pairs_j.as_ptr(),
            1,
            concurrence.as_mut_ptr(),
            purity.as_mut_ptr(),
            norm.as_mut_ptr(),
        ),
        ChainsimStatus::Ok
    );
    // even chain: C_1N = max(0, |sin(t/2)| - cos^2(t/2)/2) after the kicks
    for (k, &t) in times.iter().enumerate() {
        let expect = if t < (n - 2) as f64 * PI {
            0.0
        } else {
            let h = t / 2.0;
            (h.sin().abs() - h.cos().powi(2) / 2.0).max(0.0)
        };
        assert!(
            (concurrence[k] - expect).abs() < 1e-9,
            "C({t}) = {} vs {expect}",
            concurrence[k]
        );
        assert!((norm[k] - 1.0).abs() < 1e-12);
    }
    // full entanglement at t = 3pi implies a pure end pair
    let k_peak = times
        .iter()
        .position(|&t| (t - 3.0 * PI).abs() < 1e-9)
        .unwrap();
    assert!((concurrence[k_peak] - 1.0).abs() < 1e-9);
    assert!((purity[k_peak] - 1.0).abs() < 1e-9);

    chainsim_schedule_free(schedule);
    chainsim_config_free(config);
}

#[test]
fn hand_built_schedule_matches_standard_one() {
    // N = 3: the standard sequence is one +pi/2 kick on spins 1 and 2 at t = pi
    let config = new_config(3);
    let mut schedule = ptr::null_mut();
    assert_eq!(chainsim_schedule_new(&mut schedule), ChainsimStatus::Ok);
    let targets = [1usize, 2];
    assert_eq!(
        chainsim_schedule_push(schedule, PI, targets.as_ptr(), 2, 1, PI / 2.0),
        ChainsimStatus::Ok
    );

    let times = [2.0 * PI];
    let (pi_, pj) = ([1usize], [3usize]);
    let mut c = [0.0f64];
    assert_eq!(
        chainsim_run(
            config,
            schedule,
            times.as_ptr(),
            1,
            pi_.as_ptr(),
            pj.as_ptr(),
            1,
            c.as_mut_ptr(),
            ptr::null_mut(),
            ptr::null_mut(),
        ),
        ChainsimStatus::Ok
    );
    assert!((c[0] - 1.0).abs() < 1e-12, "C = {}", c[0]);

    chainsim_schedule_free(schedule);
    chainsim_config_free(config);
}

#[test]
fn masked_bond_decouples_the_pair() {
    // switching bond 2 off splits a 4-chain; spins 3-4 still entangle freely
    let config = new_config(4);
    assert_eq!(
        chainsim_config_set_bond(config, 2, 1.0, false),
        ChainsimStatus::Ok
    );
    let mut schedule = ptr::null_mut();
    assert_eq!(chainsim_schedule_new(&mut schedule), ChainsimStatus::Ok);

    let times = [PI / 2.0];
    let pi_ = [2usize, 3];
    let pj = [3usize, 4];
    let mut c = [0.0f64; 2];
    assert_eq!(
        chainsim_run(
            config,
            schedule,
            times.as_ptr(),
            1,
            pi_.as_ptr(),
            pj.as_ptr(),
            2,
            c.as_mut_ptr(),
            ptr::null_mut(),
            ptr::null_mut(),
        ),
        ChainsimStatus::Ok
    );
    assert!(c[0].abs() < 1e-12, "cut pair C = {}", c[0]);
    // spins 3-4 form an isolated pair: C = |sin(t/2)|
    let expect = (times[0] / 2.0).sin().abs();
    assert!((c[1] - expect).abs() < 1e-12, "live pair C = {}", c[1]);

    chainsim_schedule_free(schedule);
    chainsim_config_free(config);
}

#[test]
fn error_paths_set_status_and_message() {
    let mut config = ptr::null_mut();
    assert_eq!(
        chainsim_config_new_uniform(0, &mut config),
        ChainsimStatus::OutOfRange
    );
    assert!(!last_error().is_empty());

    let config = new_config(3);
    assert_eq!(
        chainsim_config_set_bond(config, 3, 1.0, true),
        ChainsimStatus::OutOfRange
    );
    assert!(last_error().contains("bond 3"));
    assert_eq!(
        chainsim_config_set_bond(ptr::null_mut(), 1, 1.0, true),
        ChainsimStatus::NullPointer
    );

    // duplicate kick times are rejected when the run starts
    let mut schedule = ptr::null_mut();
    assert_eq!(chainsim_schedule_new(&mut schedule), ChainsimStatus::Ok);
    let targets = [1usize];
    for _ in 0..2 {
        assert_eq!(
            chainsim_schedule_push(schedule, 1.0, targets.as_ptr(), 1, 1, 0.5),
            ChainsimStatus::Ok
        );
    }
    let times = [2.0];
    let (pi_, pj) = ([1usize], [3usize]);
    let mut c = [0.0f64];
    assert_eq!(
        chainsim_run(
            config,
            schedule,
            times.as_ptr(),
            1,
            pi_.as_ptr(),
            pj.as_ptr(),
            1,
            c.as_mut_ptr(),
            ptr::null_mut(),
            ptr::null_mut(),
        ),
        ChainsimStatus::InvalidArgument
    );

    assert_eq!(
        chainsim_schedule_push(schedule, f64::NAN, targets.as_ptr(), 1, 1, 0.5),
        ChainsimStatus::InvalidArgument
    );
    assert_eq!(
        chainsim_schedule_push(schedule, 2.0, targets.as_ptr(), 1, 2, 0.5),
        ChainsimStatus::InvalidArgument
    );

    chainsim_schedule_free(schedule);
    chainsim_config_free(config);
    // free functions tolerate null
    chainsim_config_free(ptr::null_mut());
    chainsim_schedule_free(ptr::null_mut());
}

#[test]
fn verify_reports_deviation() {
    let mut dev = f64::NAN;
    assert_eq!(
        chainsim_verify(4, chainsim_default_kick_angle(), &mut dev),
        ChainsimStatus::Ok
    );
    assert!(dev < 1e-9, "deviation {dev}");

    assert_eq!(
        chainsim_verify(3, PI, &mut dev),
        ChainsimStatus::VerifyFailed
    );
    assert!(dev > 1e-3);
    assert!(last_error().contains("deviation"));

    assert_eq!(
        chainsim_verify(2, PI / 2.0, ptr::null_mut()),
        ChainsimStatus::InvalidArgument
    );
}
