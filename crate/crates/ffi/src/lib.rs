//! C ABI over `rsaint`.
//!
//! Every fallible function returns an [`RsaintStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`rsaint_last_error`]. Characters and prime tables are opaque
//! handles owned by the caller and released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rsaint::asymptotics::{ApproxContext, ApproximantModel, QuadratureConfig};
use rsaint::characters::{l_chi_s, MertensConfig, QuadraticCharacter};
use rsaint::counting::{count_pi2, count_rsa_classified, count_rsa_exact, RsaQuery};
use rsaint::primes::{sieve_primes, PrimeTable, SieveConfig};
use rsaint::{main_term, Error, Rational};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RsaintStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Domain = 3,
    Range = 4,
    Resource = 5,
    Contract = 6,
    Validation = 7,
    Parse = 8,
    Overflow = 9,
    Panic = 10,
}

impl From<&Error> for RsaintStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => RsaintStatus::Domain,
            Error::Range { .. } => RsaintStatus::Range,
            Error::Resource(_) => RsaintStatus::Resource,
            Error::Contract(_) => RsaintStatus::Contract,
            Error::Validation(_) => RsaintStatus::Validation,
            Error::Parse(_) => RsaintStatus::Parse,
            Error::Overflow(_) => RsaintStatus::Overflow,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(RsaintStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(RsaintStatus::from(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status plus a stored message.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RsaintStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RsaintStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside rsaint".into());
            RsaintStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(RsaintStatus::NullPointer, format!("{what} is null"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(RsaintStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn rational(num: u64, den: u64) -> Result<Rational, Failure> {
    Ok(Rational::new(num, den)?)
}

/// Message of the last failure on this thread, or null. Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rsaint_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rsaint_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Opaque quadratic character.
pub struct RsaintCharacter(QuadraticCharacter);

/// Opaque table of primes up to a limit.
pub struct RsaintPrimeTable(PrimeTable);

/// Parses `kronecker:D` or `table:Q:v0,v1,...`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_character_new(spec: *const c_char, out: *mut *mut RsaintCharacter) -> RsaintStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let chi: QuadraticCharacter = spec.parse()?;
        write(out, Box::into_raw(Box::new(RsaintCharacter(chi))), "out")
    })
}

/// # Safety
/// `chi` must come from [`rsaint_character_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rsaint_character_free(chi: *mut RsaintCharacter) {
    if !chi.is_null() {
        drop(Box::from_raw(chi));
    }
}

/// Modulus of the character, or 0 for a null handle.
///
/// # Safety
/// `chi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsaint_character_modulus(chi: *const RsaintCharacter) -> u64 {
    chi.as_ref().map_or(0, |c| c.0.modulus())
}

/// `χ(n)`, or 0 for a null handle.
///
/// # Safety
/// `chi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsaint_character_value(chi: *const RsaintCharacter, n: u64) -> i8 {
    chi.as_ref().map_or(0, |c| c.0.value(n))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_prime_table_new(limit: u64, out: *mut *mut RsaintPrimeTable) -> RsaintStatus {
    guard(|| {
        let table = sieve_primes(limit, &SieveConfig::default())?;
        write(out, Box::into_raw(Box::new(RsaintPrimeTable(table))), "out")
    })
}

/// # Safety
/// `table` must come from [`rsaint_prime_table_new`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rsaint_prime_table_free(table: *mut RsaintPrimeTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of primes in the table, or 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rsaint_prime_table_len(table: *const RsaintPrimeTable) -> u64 {
    table.as_ref().map_or(0, |t| t.0.len() as u64)
}

/// `π(n)` for `n` up to the table limit.
///
/// # Safety
/// `table` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_prime_table_pi(table: *const RsaintPrimeTable, n: u64, out: *mut u64) -> RsaintStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        write(out, t.0.pi(n)?, "out")
    })
}

/// The three prime sums and their combination `π₂(x; r)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RsaintCountBreakdown {
    pub sum_mid: u64,
    pub sum_small: u64,
    pub sum_sub: u64,
    pub total: u64,
}

/// `π₂(x; r)` with `r = r_num / r_den`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_count(x: u64, r_num: u64, r_den: u64, out: *mut RsaintCountBreakdown) -> RsaintStatus {
    guard(|| {
        let q = RsaQuery::new(x, rational(r_num, r_den)?)?;
        let b = count_rsa_exact(&q, &SieveConfig::default())?;
        write(
            out,
            RsaintCountBreakdown { sum_mid: b.sum_mid, sum_small: b.sum_small, sum_sub: b.sum_sub, total: b.total },
            "out",
        )
    })
}

/// `π₂(x)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_pi2(x: u64, out: *mut u64) -> RsaintStatus {
    guard(|| write(out, count_pi2(x, &SieveConfig::default())?, "out"))
}

/// Pair counts by `(χ(p), χ(q))`; index 0 is `+1`, index 1 is `−1`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RsaintClassifiedCount {
    pub by_sign: [[u64; 2]; 2],
    pub coprime_total: u64,
    pub raw_total: u64,
}

/// # Safety
/// `chi` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_count_classified(
    x: u64,
    r_num: u64,
    r_den: u64,
    chi: *const RsaintCharacter,
    out: *mut RsaintClassifiedCount,
) -> RsaintStatus {
    guard(|| {
        let chi = chi.as_ref().ok_or_else(|| null("chi"))?;
        let q = RsaQuery::new(x, rational(r_num, r_den)?)?;
        let c = count_rsa_classified(&q, &chi.0, &SieveConfig::default())?;
        write(
            out,
            RsaintClassifiedCount { by_sign: c.by_sign, coprime_total: c.coprime_total, raw_total: c.raw_total },
            "out",
        )
    })
}

/// `L_χ(s)` split into its head and tail.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RsaintBiasCoefficient {
    pub head: f64,
    pub tail: f64,
    pub value: f64,
    pub error_bound: f64,
}

/// `L_χ(s)` with `s = s_num / s_den ≥ 4`.
///
/// # Safety
/// `chi` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_l_chi_s(
    chi: *const RsaintCharacter,
    s_num: u64,
    s_den: u64,
    out: *mut RsaintBiasCoefficient,
) -> RsaintStatus {
    guard(|| {
        let chi = chi.as_ref().ok_or_else(|| null("chi"))?;
        let c = l_chi_s(&chi.0, &rational(s_num, s_den)?, &MertensConfig::default())?;
        write(
            out,
            RsaintBiasCoefficient { head: c.head, tail: c.tail, value: c.value, error_bound: c.error_bound },
            "out",
        )
    })
}

/// Main term of a named model at `(x, r_num / r_den)`.
///
/// `out_in_range` (may be null) receives whether `(x, r)` satisfies the model's
/// hypotheses. With `strict` set, a violation fails with `Range` instead.
///
/// # Safety
/// `model` must be a NUL-terminated string, `out_value` a valid pointer, `out_in_range` null or valid.
#[no_mangle]
pub unsafe extern "C" fn rsaint_main_term(
    model: *const c_char,
    x: f64,
    r_num: u64,
    r_den: u64,
    strict: bool,
    out_value: *mut f64,
    out_in_range: *mut bool,
) -> RsaintStatus {
    guard(|| {
        let model: ApproximantModel = read_str(model, "model")?.parse()?;
        let ctx = ApproxContext { strict, ..ApproxContext::default() };
        let term = main_term(model, x, &rational(r_num, r_den)?, &ctx)?;
        if !out_in_range.is_null() {
            out_in_range.write(term.range_warning.is_none());
        }
        write(out_value, term.value, "out_value")
    })
}

/// `loglog(xr) − loglog(x/r)` for `1 ≤ r ≤ x/4`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_loglog_diff(x: f64, r: f64, out: *mut f64) -> RsaintStatus {
    guard(|| write(out, rsaint::loglog_diff(x, r)?, "out"))
}

/// `Li(x) = ∫_2^x du / log u` with the default tolerances.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rsaint_li(x: f64, out: *mut f64) -> RsaintStatus {
    guard(|| write(out, rsaint::li(x, &QuadratureConfig::default())?, "out"))
}
