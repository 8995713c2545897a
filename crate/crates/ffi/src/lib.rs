//! C ABI for the `adrt` library.
//!
//! Images and transforms are opaque heap handles created by `adrt_*_new`,
//! `adrt_forward`, `adrt_inverse` or the file readers, and released with the
//! matching `*_free`. Every fallible call returns an [`AdrtStatus`]; on
//! failure [`adrt_last_error_message`] describes the most recent error on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use adrt::io::{read_image, read_transform, write_image, write_transform, RAW_QUADRANT};
use adrt::{AdrtError, Image, Quadrant, SectionedTransform};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdrtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Dimension = 3,
    NonFinite = 4,
    Index = 5,
    Structural = 6,
    Precondition = 7,
    Format = 8,
    UnsupportedVersion = 9,
    Io = 10,
    Internal = 11,
}

/// Opaque image handle.
pub struct AdrtImage {
    inner: Image,
}

/// Opaque handle to a level stack of section transforms plus its quadrant tag.
pub struct AdrtTransform {
    inner: SectionedTransform,
    quadrant: Option<Quadrant>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &AdrtError) -> AdrtStatus {
    match err {
        AdrtError::Dimension(_) => AdrtStatus::Dimension,
        AdrtError::NonFinite { .. } => AdrtStatus::NonFinite,
        AdrtError::Index(_) => AdrtStatus::Index,
        AdrtError::Structural(_) => AdrtStatus::Structural,
        AdrtError::Precondition(_) => AdrtStatus::Precondition,
        AdrtError::Missing(_) | AdrtError::Analysis(_) => AdrtStatus::InvalidArgument,
        AdrtError::Format { .. } => AdrtStatus::Format,
        AdrtError::UnsupportedVersion { .. } => AdrtStatus::UnsupportedVersion,
        AdrtError::Io { .. } => AdrtStatus::Io,
    }
}

struct Failure(AdrtStatus, String);

impl From<AdrtError> for Failure {
    fn from(e: AdrtError) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(AdrtStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(AdrtStatus::InvalidArgument, msg.into())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AdrtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AdrtStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AdrtStatus::Internal
        }
    }
}

unsafe fn path_arg(path: *const c_char) -> Result<PathBuf, Failure> {
    if path.is_null() {
        return Err(null("path"));
    }
    let s = CStr::from_ptr(path)
        .to_str()
        .map_err(|_| invalid("path is not valid UTF-8"))?;
    Ok(PathBuf::from(s))
}

unsafe fn slice_arg<'a>(data: *const f64, len: usize) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("values"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn out_arg<'a, T>(out: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    out.as_mut().ok_or_else(|| null(what))
}

fn quadrant_byte(q: Option<Quadrant>) -> u8 {
    q.map_or(RAW_QUADRANT, Quadrant::id)
}

fn quadrant_from_byte(q: u8) -> Result<Option<Quadrant>, Failure> {
    if q == RAW_QUADRANT {
        Ok(None)
    } else {
        Quadrant::from_id(q).map(Some).map_err(Failure::from)
    }
}

/// Message for the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn adrt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn adrt_status_string(status: AdrtStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AdrtStatus::Ok => c"ok",
        AdrtStatus::NullPointer => c"null pointer",
        AdrtStatus::InvalidArgument => c"invalid argument",
        AdrtStatus::Dimension => c"dimension error",
        AdrtStatus::NonFinite => c"non-finite value",
        AdrtStatus::Index => c"index out of range",
        AdrtStatus::Structural => c"structural error",
        AdrtStatus::Precondition => c"precondition violated",
        AdrtStatus::Format => c"format error",
        AdrtStatus::UnsupportedVersion => c"unsupported version",
        AdrtStatus::Io => c"i/o error",
        AdrtStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Creates a `2^n x 2^n` image from `len == 4^n` row-major values
/// (`j * 2^n + i`, row `j = 0` at the bottom).
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adrt_image_new(
    n: u32,
    values: *const f64,
    len: usize,
    out: *mut *mut AdrtImage,
) -> AdrtStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let values = slice_arg(values, len)?.to_vec();
        let inner = Image::from_values(n, values)?;
        *out = Box::into_raw(Box::new(AdrtImage { inner }));
        Ok(())
    })
}

/// # Safety
/// `img` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adrt_image_free(img: *mut AdrtImage) {
    if !img.is_null() {
        drop(Box::from_raw(img));
    }
}

/// Level exponent and pixel count of an image.
///
/// # Safety
/// `img` must be a live handle; `out_n` and `out_len` may be null.
#[no_mangle]
pub unsafe extern "C" fn adrt_image_shape(
    img: *const AdrtImage,
    out_n: *mut u32,
    out_len: *mut usize,
) -> AdrtStatus {
    guard(|| {
        let img = img.as_ref().ok_or_else(|| null("image"))?;
        if let Some(n) = out_n.as_mut() {
            *n = img.inner.level();
        }
        if let Some(len) = out_len.as_mut() {
            *len = img.inner.values().len();
        }
        Ok(())
    })
}

/// Copies the row-major pixel values into `out`, which must hold exactly
/// `len == 4^n` doubles.
///
/// # Safety
/// `img` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn adrt_image_copy_values(
    img: *const AdrtImage,
    out: *mut f64,
    len: usize,
) -> AdrtStatus {
    guard(|| {
        let img = img.as_ref().ok_or_else(|| null("image"))?;
        let values = img.inner.values();
        if len != values.len() {
            return Err(invalid(format!("buffer holds {len} values, image has {}", values.len())));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(values);
        Ok(())
    })
}

/// Reads an image; the format follows the extension (`.pgm`, `.csv`,
/// `.adri`/`.raw`).
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adrt_image_read(path: *const c_char, out: *mut *mut AdrtImage) -> AdrtStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let inner = read_image(&path_arg(path)?, None)?;
        *out = Box::into_raw(Box::new(AdrtImage { inner }));
        Ok(())
    })
}

/// Writes an image; the format follows the extension.
///
/// # Safety
/// `img` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn adrt_image_write(img: *const AdrtImage, path: *const c_char) -> AdrtStatus {
    guard(|| {
        let img = img.as_ref().ok_or_else(|| null("image"))?;
        write_image(&img.inner, &path_arg(path)?, None)?;
        Ok(())
    })
}

/// Single-quadrant transform of `img` after applying the symmetry of
/// `quadrant` (0..=3). Pass 255 for the untagged identity transform.
///
/// # Safety
/// `img` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adrt_forward(
    img: *const AdrtImage,
    quadrant: u8,
    out: *mut *mut AdrtTransform,
) -> AdrtStatus {
    guard(|| {
        let img = img.as_ref().ok_or_else(|| null("image"))?;
        let out = out_arg(out, "out")?;
        let quadrant = quadrant_from_byte(quadrant)?;
        let inner = match quadrant {
            Some(q) => adrt::adrt_single_quadrant(&q.apply(&img.inner)),
            None => adrt::adrt_single_quadrant(&img.inner),
        };
        *out = Box::into_raw(Box::new(AdrtTransform { inner, quadrant }));
        Ok(())
    })
}

/// Reconstructs the image, undoing the transform's quadrant symmetry.
/// `out_additions` and `out_subtractions` receive the operation counts and
/// may be null.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adrt_inverse(
    t: *const AdrtTransform,
    out: *mut *mut AdrtImage,
    out_additions: *mut u64,
    out_subtractions: *mut u64,
) -> AdrtStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        let out = out_arg(out, "out")?;
        let (img, ledger) = adrt::iadrt_with_ledger(&t.inner)?;
        let inner = match t.quadrant {
            Some(q) => q.invert(&img),
            None => img,
        };
        if let Some(a) = out_additions.as_mut() {
            *a = ledger.additions();
        }
        if let Some(s) = out_subtractions.as_mut() {
            *s = ledger.subtractions();
        }
        *out = Box::into_raw(Box::new(AdrtImage { inner }));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn adrt_transform_free(t: *mut AdrtTransform) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Wraps a raw payload laid out as in the transform file format
/// (section, then slope, then offset `p = h + s`). Nonzero padding is
/// rejected.
///
/// # Safety
/// `data` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adrt_transform_from_raw(
    n: u32,
    m: u32,
    quadrant: u8,
    data: *const f64,
    len: usize,
    out: *mut *mut AdrtTransform,
) -> AdrtStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let quadrant = quadrant_from_byte(quadrant)?;
        let values = slice_arg(data, len)?;
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Failure(AdrtStatus::NonFinite, format!("non-finite value at {k}")));
        }
        let inner = SectionedTransform::from_raw(n, m, values.to_vec())?;
        inner.validate_padding()?;
        *out = Box::into_raw(Box::new(AdrtTransform { inner, quadrant }));
        Ok(())
    })
}

/// Image level `n`, transform level `m`, quadrant byte (255 when untagged)
/// and raw payload length. Any output pointer may be null.
///
/// # Safety
/// `t` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn adrt_transform_shape(
    t: *const AdrtTransform,
    out_n: *mut u32,
    out_m: *mut u32,
    out_quadrant: *mut u8,
    out_len: *mut usize,
) -> AdrtStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        if let Some(n) = out_n.as_mut() {
            *n = t.inner.image_level();
        }
        if let Some(m) = out_m.as_mut() {
            *m = t.inner.level();
        }
        if let Some(q) = out_quadrant.as_mut() {
            *q = quadrant_byte(t.quadrant);
        }
        if let Some(len) = out_len.as_mut() {
            *len = t.inner.as_raw().len();
        }
        Ok(())
    })
}

/// Logical value `R(section, h, s)`; zero outside the support.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adrt_transform_get(
    t: *const AdrtTransform,
    section: usize,
    h: i64,
    s: usize,
    out: *mut f64,
) -> AdrtStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        let out = out_arg(out, "out")?;
        if section >= t.inner.section_count() || s >= t.inner.slope_count() {
            return Err(Failure(
                AdrtStatus::Index,
                format!("section {section} or slope {s} out of range"),
            ));
        }
        *out = t.inner.get(section, h, s);
        Ok(())
    })
}

/// Copies the raw payload, padding included.
///
/// # Safety
/// `t` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn adrt_transform_copy_raw(
    t: *const AdrtTransform,
    out: *mut f64,
    len: usize,
) -> AdrtStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        let raw = t.inner.as_raw();
        if len != raw.len() {
            return Err(invalid(format!("buffer holds {len} values, transform has {}", raw.len())));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(raw);
        Ok(())
    })
}

/// Reads a transform file. With `strict`, nonzero padding is an error;
/// otherwise it is cleared.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn adrt_transform_read(
    path: *const c_char,
    strict: bool,
    out: *mut *mut AdrtTransform,
) -> AdrtStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let file = read_transform(&path_arg(path)?, strict)?;
        let mut inner = file.transform;
        if file.padding_violations > 0 {
            inner.clear_padding();
        }
        *out = Box::into_raw(Box::new(AdrtTransform {
            inner,
            quadrant: file.quadrant,
        }));
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn adrt_transform_write(t: *const AdrtTransform, path: *const c_char) -> AdrtStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("transform"))?;
        write_transform(&path_arg(path)?, &t.inner, t.quadrant)?;
        Ok(())
    })
}

/// Additions plus subtractions of a full inversion at level `n`.
#[no_mangle]
pub extern "C" fn adrt_inverse_total(n: u32) -> u64 {
    if n > adrt::image::MAX_LEVEL {
        return 0;
    }
    adrt::inverse_total(n)
}

/// Additions of the fast forward transform at level `n`.
#[no_mangle]
pub extern "C" fn adrt_forward_additions(n: u32) -> u64 {
    if n > adrt::image::MAX_LEVEL {
        return 0;
    }
    adrt::forward_additions(n)
}
