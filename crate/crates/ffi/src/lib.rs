//! C ABI over `fuskit`.
//!
//! Rings cross the boundary as opaque [`FuskitRing`] handles. Every function
//! returns a [`FuskitStatus`]; on anything but `FUSKIT_STATUS_OK` a message is stored
//! per thread and can be read with [`fuskit_last_error`]. Strings handed out
//! by the library are NUL-terminated UTF-8 and must be released with
//! [`fuskit_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fuskit::classify;
use fuskit::families::FamilySpec;
use fuskit::ring::{validate, FusionRing};
use fuskit::structure;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FuskitStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An input string was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Ring JSON or a family spec failed to parse or build.
    Parse = 3,
    /// A basis index was out of range.
    OutOfRange = 4,
    /// The computation is undefined for this ring, e.g. classification of a pointed ring.
    NotApplicable = 5,
    /// A numeric or internal failure inside the library.
    Internal = 6,
    /// The library panicked; the handle arguments should be considered poisoned.
    Panic = 7,
}

/// Opaque fusion ring handle.
pub struct FuskitRing {
    ring: FusionRing,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(FuskitStatus, String);

impl Failure {
    fn new(status: FuskitStatus, message: impl ToString) -> Self {
        Failure(status, message.to_string())
    }
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FuskitStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FuskitStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(&format!("panic: {message}"));
            FuskitStatus::Panic
        }
    }
}

unsafe fn input_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(FuskitStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure::new(FuskitStatus::InvalidUtf8, e))
}

unsafe fn ring_ref<'a>(ring: *const FuskitRing) -> Result<&'a FusionRing, Failure> {
    ring.as_ref().map(|h| &h.ring).ok_or_else(|| Failure::new(FuskitStatus::NullArgument, "null ring handle"))
}

unsafe fn out_ref<'a, T>(out: *mut T) -> Result<&'a mut T, Failure> {
    out.as_mut().ok_or_else(|| Failure::new(FuskitStatus::NullArgument, "null output pointer"))
}

fn owned_string(text: String) -> Result<*mut c_char, Failure> {
    CString::new(text).map(CString::into_raw).map_err(|e| Failure::new(FuskitStatus::Internal, e))
}

fn index(ring: &FusionRing, i: usize) -> Result<usize, Failure> {
    if i < ring.rank() {
        Ok(i)
    } else {
        Err(Failure::new(FuskitStatus::OutOfRange, format!("index {i} out of range for rank {}", ring.rank())))
    }
}

/// Stores a new handle in `out`, allocating only once `out` is known to be usable.
unsafe fn emit(ring: FusionRing, out: *mut *mut FuskitRing) -> Result<(), Failure> {
    let slot = out_ref(out)?;
    *slot = Box::into_raw(Box::new(FuskitRing { ring }));
    Ok(())
}

/// Message for the most recent failure on this thread, or null after a success.
/// The pointer stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn fuskit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fuskit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a ring in the JSON exchange format.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_from_json(json: *const c_char, out: *mut *mut FuskitRing) -> FuskitStatus {
    guard(|| {
        let text = input_str(json)?;
        let ring = FusionRing::from_json(text).map_err(|e| Failure::new(FuskitStatus::Parse, e))?;
        emit(ring, out)
    })
}

/// Builds a ring from a family spec, in JSON (`{"family":"psu2_6"}`) or
/// shorthand (`fib_extension(S3)`) form.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_construct(spec: *const c_char, out: *mut *mut FuskitRing) -> FuskitStatus {
    guard(|| {
        let text = input_str(spec)?;
        let ring = FamilySpec::parse(text).and_then(|s| s.build()).map_err(|e| Failure::new(FuskitStatus::Parse, e))?;
        emit(ring, out)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `ring` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_free(ring: *mut FuskitRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn fuskit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_rank(ring: *const FuskitRing, out: *mut usize) -> FuskitStatus {
    guard(|| {
        *out_ref(out)? = ring_ref(ring)?.rank();
        Ok(())
    })
}

/// Copies the label of basis element `i` into a new string.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_label(ring: *const FuskitRing, i: usize, out: *mut *mut c_char) -> FuskitStatus {
    guard(|| {
        let r = ring_ref(ring)?;
        *out_ref(out)? = owned_string(r.label(index(r, i)?).to_string())?;
        Ok(())
    })
}

/// `N_ij^k` by basis index.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_structure_constant(
    ring: *const FuskitRing,
    i: usize,
    j: usize,
    k: usize,
    out: *mut u32,
) -> FuskitStatus {
    guard(|| {
        let r = ring_ref(ring)?;
        *out_ref(out)? = r.n(index(r, i)?, index(r, j)?, index(r, k)?);
        Ok(())
    })
}

/// Checks the fusion-ring axioms; `pass` receives the verdict. When
/// `report` is non-null it receives the full JSON report.
///
/// # Safety
/// `ring` must be a live handle; `pass` must be writable; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_validate(
    ring: *const FuskitRing,
    pass: *mut bool,
    report: *mut *mut c_char,
) -> FuskitStatus {
    guard(|| {
        let result = validate(ring_ref(ring)?);
        *out_ref(pass)? = result.pass;
        if let Some(report) = report.as_mut() {
            let text = serde_json::to_string_pretty(&result).map_err(|e| Failure::new(FuskitStatus::Internal, e))?;
            *report = owned_string(text)?;
        }
        Ok(())
    })
}

/// Canonical JSON serialization.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_to_json(ring: *const FuskitRing, out: *mut *mut c_char) -> FuskitStatus {
    guard(|| {
        *out_ref(out)? = owned_string(ring_ref(ring)?.to_json())?;
        Ok(())
    })
}

/// Frobenius-Perron dimension of basis element `i`. `value` receives a
/// double; `exact`, when non-null, receives the exact form such as
/// `1/2+1/2*sqrt(5)`, or null if the dimension was not recognized exactly.
///
/// # Safety
/// `ring` must be a live handle; `value` must be writable; `exact` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_fpdim(
    ring: *const FuskitRing,
    i: usize,
    value: *mut f64,
    exact: *mut *mut c_char,
) -> FuskitStatus {
    guard(|| {
        let r = ring_ref(ring)?;
        let d = r.fpdim_simple(index(r, i)?).map_err(|e| Failure::new(FuskitStatus::Internal, e))?;
        *out_ref(value)? = d.to_f64();
        if let Some(exact) = exact.as_mut() {
            *exact = match d.exact() {
                Some(q) => owned_string(q.to_string())?,
                None => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// Classification summary as JSON, the same document `fuskit classify` prints.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_classify_json(ring: *const FuskitRing, out: *mut *mut c_char) -> FuskitStatus {
    guard(|| {
        let value = classify::classify(ring_ref(ring)?).map_err(|e| Failure::new(FuskitStatus::NotApplicable, e))?;
        let text = serde_json::to_string_pretty(&value).map_err(|e| Failure::new(FuskitStatus::Internal, e))?;
        *out_ref(out)? = owned_string(text)?;
        Ok(())
    })
}

/// Universal grading as JSON: grading group, components and trivial component.
///
/// # Safety
/// `ring` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_ring_grading_json(ring: *const FuskitRing, out: *mut *mut c_char) -> FuskitStatus {
    guard(|| {
        let grading =
            structure::universal_grading(ring_ref(ring)?).map_err(|e| Failure::new(FuskitStatus::NotApplicable, e))?;
        let text = serde_json::to_string_pretty(&grading).map_err(|e| Failure::new(FuskitStatus::Internal, e))?;
        *out_ref(out)? = owned_string(text)?;
        Ok(())
    })
}

/// Solutions `3 <= a <= b <= bound` of `cos²(π/a) + cos²(π/b) = (5+√5)/8`
/// and the three-term analogue, as `{"pairs":[[3,5]],"triples":[]}`.
/// Bounds below 10 are rejected with `FUSKIT_STATUS_NOT_APPLICABLE`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fuskit_cosine_search_json(bound: u32, out: *mut *mut c_char) -> FuskitStatus {
    guard(|| {
        let result = classify::lemma41_search(bound).map_err(|e| Failure::new(FuskitStatus::NotApplicable, e))?;
        let text = serde_json::to_string(&result).map_err(|e| Failure::new(FuskitStatus::Internal, e))?;
        *out_ref(out)? = owned_string(text)?;
        Ok(())
    })
}
