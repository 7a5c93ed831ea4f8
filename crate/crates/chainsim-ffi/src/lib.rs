//! C ABI for the chainsim simulator.
//!
//! All functions return a [`ChainsimStatus`]; on failure a human-readable
//! message is stored per thread and can be fetched with
//! [`chainsim_last_error_message`]. Handles are opaque and must be released
//! with their matching `_free` function. Spin and bond indices are 1-based,
//! matching the core crate: bond `j` couples spins `j` and `j + 1`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::ptr;

use chainsim::{
    run_schedule, verify_against_oracles, ChainConfig, Error, ObservableSet, PulseEvent,
    PulseSchedule, DEFAULT_KICK_ANGLE,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainsimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    NonPhysical = 4,
    VerifyFailed = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: ChainsimStatus, message: &str) -> ChainsimStatus {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(sanitized).unwrap());
    status
}

fn fail_from(err: Error) -> ChainsimStatus {
    let status = match &err {
        Error::SpinCountOutOfRange { .. } | Error::SpinIndexOutOfRange { .. } => {
            ChainsimStatus::OutOfRange
        }
        Error::NonPhysical(_) => ChainsimStatus::NonPhysical,
        _ => ChainsimStatus::InvalidArgument,
    };
    fail(status, &err.to_string())
}

/// Copies the current thread's last error message into `buffer` (NUL
/// terminated, truncated to `capacity`). Returns the full message length in
/// bytes, excluding the NUL; call with a null buffer to query the length.
#[no_mangle]
pub extern "C" fn chainsim_last_error_message(buffer: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes();
        if !buffer.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr(), buffer.cast(), n);
                *buffer.add(n) = 0;
            }
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn chainsim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Default kick angle magnitude in radians (a Bloch rotation by pi/2).
#[no_mangle]
pub extern "C" fn chainsim_default_kick_angle() -> f64 {
    DEFAULT_KICK_ANGLE
}

/// Opaque chain description: spin count, bond couplings, bond on/off mask.
pub struct ChainsimConfig(ChainConfig);

/// Opaque kick schedule under construction; validated when a run starts.
pub struct ChainsimSchedule(Vec<PulseEvent>);

/// Creates a chain of `n_spins` spins with every bond coupling set to 1.
#[no_mangle]
pub extern "C" fn chainsim_config_new_uniform(
    n_spins: usize,
    out: *mut *mut ChainsimConfig,
) -> ChainsimStatus {
    if out.is_null() {
        return fail(ChainsimStatus::NullPointer, "out is null");
    }
    match ChainConfig::uniform(n_spins) {
        Ok(config) => {
            unsafe { *out = Box::into_raw(Box::new(ChainsimConfig(config))) };
            ChainsimStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Sets bond `bond` (1-based, coupling spins `bond` and `bond + 1`) to the
/// given coupling strength, and switches it on or off.
#[no_mangle]
pub extern "C" fn chainsim_config_set_bond(
    config: *mut ChainsimConfig,
    bond: usize,
    coupling: f64,
    active: bool,
) -> ChainsimStatus {
    let Some(config) = (unsafe { config.as_mut() }) else {
        return fail(ChainsimStatus::NullPointer, "config is null");
    };
    let n_bonds = config.0.bond_couplings.len();
    if bond < 1 || bond > n_bonds {
        return fail(
            ChainsimStatus::OutOfRange,
            &format!("bond {bond} out of range 1..={n_bonds}"),
        );
    }
    if !coupling.is_finite() {
        return fail(ChainsimStatus::InvalidArgument, "coupling must be finite");
    }
    config.0.bond_couplings[bond - 1] = coupling;
    config.0.bond_mask[bond - 1] = active;
    ChainsimStatus::Ok
}

#[no_mangle]
pub extern "C" fn chainsim_config_free(config: *mut ChainsimConfig) {
    if !config.is_null() {
        drop(unsafe { Box::from_raw(config) });
    }
}

/// Creates an empty schedule (free evolution).
#[no_mangle]
pub extern "C" fn chainsim_schedule_new(out: *mut *mut ChainsimSchedule) -> ChainsimStatus {
    if out.is_null() {
        return fail(ChainsimStatus::NullPointer, "out is null");
    }
    unsafe { *out = Box::into_raw(Box::new(ChainsimSchedule(Vec::new()))) };
    ChainsimStatus::Ok
}

/// Creates the standard end-to-end entangling sequence for `n_spins` spins:
/// N - 2 kicks at t = k*pi on spins 1..N-1 with alternating sign, each a
/// y rotation of magnitude `angle`.
#[no_mangle]
pub extern "C" fn chainsim_schedule_new_standard(
    n_spins: usize,
    angle: f64,
    out: *mut *mut ChainsimSchedule,
) -> ChainsimStatus {
    if out.is_null() {
        return fail(ChainsimStatus::NullPointer, "out is null");
    }
    match chainsim::build_standard_schedule(n_spins, angle) {
        Ok(schedule) => {
            let events = schedule.events().to_vec();
            unsafe { *out = Box::into_raw(Box::new(ChainsimSchedule(events))) };
            ChainsimStatus::Ok
        }
        Err(e) => fail_from(e),
    }
}

/// Appends a kick: at `time`, rotate each spin in `targets` (1-based,
/// `n_targets` entries) about y by `sign * angle`. Events may be pushed in
/// any order; times are validated when the schedule is run.
#[no_mangle]
pub extern "C" fn chainsim_schedule_push(
    schedule: *mut ChainsimSchedule,
    time: f64,
    targets: *const usize,
    n_targets: usize,
    sign: i32,
    angle: f64,
) -> ChainsimStatus {
    let Some(schedule) = (unsafe { schedule.as_mut() }) else {
        return fail(ChainsimStatus::NullPointer, "schedule is null");
    };
    if targets.is_null() && n_targets > 0 {
        return fail(ChainsimStatus::NullPointer, "targets is null");
    }
    if !(time.is_finite() && angle.is_finite()) {
        return fail(
            ChainsimStatus::InvalidArgument,
            "time and angle must be finite",
        );
    }
    if sign != 1 && sign != -1 {
        return fail(ChainsimStatus::InvalidArgument, "sign must be +1 or -1");
    }
    let targets = unsafe { std::slice::from_raw_parts(targets, n_targets) }.to_vec();
    schedule.0.push(PulseEvent {
        time,
        targets,
        sign: sign as i8,
        angle_magnitude: angle,
    });
    ChainsimStatus::Ok
}

#[no_mangle]
pub extern "C" fn chainsim_schedule_free(schedule: *mut ChainsimSchedule) {
    if !schedule.is_null() {
        drop(unsafe { Box::from_raw(schedule) });
    }
}

/// Evolves the plus-product initial state under `config` and `schedule`,
/// sampling at the `n_times` strictly increasing `times`.
///
/// For each time and each of the `n_pairs` spin pairs `(pairs_i[k],
/// pairs_j[k])`, the pair concurrence is written to
/// `out_concurrence[t * n_pairs + k]`. If non-null, `out_purity` receives the
/// purity of the (first, last) pair's reduced state and `out_norm` the state
/// norm, one entry per time. Kicks scheduled exactly at a sample time are
/// applied before that sample is taken.
#[no_mangle]
pub extern "C" fn chainsim_run(
    config: *const ChainsimConfig,
    schedule: *const ChainsimSchedule,
    times: *const f64,
    n_times: usize,
    pairs_i: *const usize,
    pairs_j: *const usize,
    n_pairs: usize,
    out_concurrence: *mut f64,
    out_purity: *mut f64,
    out_norm: *mut f64,
) -> ChainsimStatus {
    let (Some(config), Some(schedule)) =
        (unsafe { config.as_ref() }, unsafe { schedule.as_ref() })
    else {
        return fail(ChainsimStatus::NullPointer, "config or schedule is null");
    };
    if times.is_null() || pairs_i.is_null() || pairs_j.is_null() || out_concurrence.is_null() {
        return fail(ChainsimStatus::NullPointer, "array argument is null");
    }
    if n_times == 0 || n_pairs == 0 {
        return fail(
            ChainsimStatus::InvalidArgument,
            "n_times and n_pairs must be positive",
        );
    }
    let times = unsafe { std::slice::from_raw_parts(times, n_times) };
    let pairs_i = unsafe { std::slice::from_raw_parts(pairs_i, n_pairs) };
    let pairs_j = unsafe { std::slice::from_raw_parts(pairs_j, n_pairs) };
    let pairs: Vec<(usize, usize)> = pairs_i.iter().copied().zip(pairs_j.iter().copied()).collect();

    let mut events = schedule.0.clone();
    events.sort_by(|a, b| a.time.total_cmp(&b.time));
    let schedule = match PulseSchedule::new(events) {
        Ok(s) => s,
        Err(e) => return fail_from(e),
    };
    let records = match run_schedule(&config.0, &schedule, times, &ObservableSet::pairs(pairs)) {
        Ok(r) => r,
        Err(e) => return fail_from(e),
    };
    for (t, rec) in records.iter().enumerate() {
        for (k, pc) in rec.pair_concurrences.iter().enumerate() {
            unsafe { *out_concurrence.add(t * n_pairs + k) = pc.value };
        }
        if !out_purity.is_null() {
            unsafe { *out_purity.add(t) = rec.purity_1n };
        }
        if !out_norm.is_null() {
            unsafe { *out_norm.add(t) = rec.norm };
        }
    }
    ChainsimStatus::Ok
}

/// Runs the built-in closed-form checks for an `n_spins` chain kicked with
/// `angle` and writes the largest deviation to `out_max_deviation` (if
/// non-null). Returns `VerifyFailed` when any check exceeds its tolerance.
#[no_mangle]
pub extern "C" fn chainsim_verify(
    n_spins: usize,
    angle: f64,
    out_max_deviation: *mut f64,
) -> ChainsimStatus {
    let report = match verify_against_oracles(n_spins, angle) {
        Ok(r) => r,
        Err(e) => return fail_from(e),
    };
    let worst = report
        .deviations
        .iter()
        .map(|d| d.max_deviation)
        .fold(0.0f64, f64::max);
    if !out_max_deviation.is_null() {
        unsafe { *out_max_deviation = worst };
    }
    if report.all_passed() {
        ChainsimStatus::Ok
    } else {
        fail(
            ChainsimStatus::VerifyFailed,
            &format!("closed-form checks failed, worst deviation {worst:.3e}"),
        )
    }
}
