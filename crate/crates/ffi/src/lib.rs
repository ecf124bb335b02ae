//! C ABI over `quadprompt`.
//!
//! Masks and prompt sets are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`QpStatus`]; on failure, [`qp_last_error`] describes the problem for the
//! calling thread. Panics are caught at the boundary and reported as
//! `QP_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use quadprompt::geometry::{concavity_index, convex_hull, iou, rasterize_hull, BinaryMask};
use quadprompt::prompt::{
    box_from_extreme, gen_extreme, gen_major_minor, gen_region_click, gen_tight_box, sample_refinement, PromptRole, PromptSet,
    ScoringParams, Strategy,
};
use quadprompt::segmenter::{sketch_from_box, sketch_from_extreme, sketch_from_majmin, PerturbedOracle};
use quadprompt::session::{run_session, SelectionPolicy, SessionConfig, SessionStrategy};
use quadprompt::Error;

pub struct QpMask(BinaryMask);

pub struct QpPromptSet(PromptSet);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    EmptyMask = 3,
    DimMismatch = 4,
    Degenerate = 5,
    Parse = 6,
    Io = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpPromptKind {
    Extreme = 0,
    MajorMinor = 1,
    /// Tight bounding box of the mask.
    Box = 2,
    /// Box derived from generated extreme points.
    ExtremeBox = 3,
    RegionClick = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpRole {
    Top = 0,
    Bottom = 1,
    Left = 2,
    Right = 3,
    Major = 4,
    Minor = 5,
    BoxCornerA = 6,
    BoxCornerB = 7,
    Positive = 8,
    Negative = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpSessionStrategy {
    RegionIterative = 0,
    Box = 1,
    ExtremeRefine = 2,
    MajorMinorRefine = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QpPoint {
    pub x: u32,
    pub y: u32,
    pub role: QpRole,
}

/// Scoring weights. A negative `top_k` or `dilation_radius` selects the
/// size-dependent default.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpScoring {
    pub w_main: f64,
    pub w_ortho: f64,
    pub top_k: i64,
    pub dilation_radius: i64,
}

impl From<PromptRole> for QpRole {
    fn from(r: PromptRole) -> Self {
        match r {
            PromptRole::Top => QpRole::Top,
            PromptRole::Bottom => QpRole::Bottom,
            PromptRole::Left => QpRole::Left,
            PromptRole::Right => QpRole::Right,
            PromptRole::Major => QpRole::Major,
            PromptRole::Minor => QpRole::Minor,
            PromptRole::BoxCornerA => QpRole::BoxCornerA,
            PromptRole::BoxCornerB => QpRole::BoxCornerB,
            PromptRole::Positive => QpRole::Positive,
            PromptRole::Negative => QpRole::Negative,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QpStatus {
    match e {
        Error::EmptyMask => QpStatus::EmptyMask,
        Error::DimMismatch { .. } => QpStatus::DimMismatch,
        Error::DegenerateInput(_) | Error::NoPrompt => QpStatus::Degenerate,
        Error::Parse { .. } => QpStatus::Parse,
        Error::Io { .. } | Error::MissingFile(_) => QpStatus::Io,
        _ => QpStatus::InvalidArgument,
    }
}

struct Fail(QpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QpStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QpStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("panic: {msg}"));
            QpStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Mask from `width * height` row-major bytes; nonzero is foreground.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` to writable storage.
#[no_mangle]
pub unsafe extern "C" fn qp_mask_from_bytes(width: u32, height: u32, data: *const u8, len: usize, out: *mut *mut QpMask) -> QpStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        if len != width as usize * height as usize {
            return Err(Fail(QpStatus::InvalidArgument, format!("expected {} bytes, got {len}", width as usize * height as usize)));
        }
        let bits = std::slice::from_raw_parts(data, len).iter().map(|&b| b != 0).collect();
        let mask = BinaryMask::from_bits(width, height, bits)?;
        write_out(out, boxed(QpMask(mask)))
    })
}

/// Load an 8-bit grayscale PNG mask (nonzero is foreground).
///
/// # Safety
/// `path` must be a NUL-terminated UTF-8 string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_mask_load_png(path: *const c_char, out: *mut *mut QpMask) -> QpStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path).to_str().map_err(|_| Fail(QpStatus::InvalidArgument, "path is not UTF-8".into()))?;
        let mask = quadprompt::io::load_mask_png(Path::new(path))?;
        write_out(out, boxed(QpMask(mask)))
    })
}

/// # Safety
/// `mask` must come from this library and not be used afterwards. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn qp_mask_free(mask: *mut QpMask) {
    if !mask.is_null() {
        drop(Box::from_raw(mask));
    }
}

/// # Safety
/// `mask` must be a live handle; `width`/`height` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_mask_dims(mask: *const QpMask, width: *mut u32, height: *mut u32) -> QpStatus {
    guard(|| {
        let (w, h) = deref(mask, "mask")?.0.dims();
        write_out(width, w)?;
        write_out(height, h)
    })
}

/// Copy the mask into `width * height` bytes (1 foreground, 0 background).
///
/// # Safety
/// `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn qp_mask_copy_bytes(mask: *const QpMask, buf: *mut u8, len: usize) -> QpStatus {
    guard(|| {
        let m = &deref(mask, "mask")?.0;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len != m.bits().len() {
            return Err(Fail(QpStatus::InvalidArgument, format!("buffer holds {len} bytes, mask has {}", m.bits().len())));
        }
        let dst = std::slice::from_raw_parts_mut(buf, len);
        for (d, &b) in dst.iter_mut().zip(m.bits()) {
            *d = b as u8;
        }
        Ok(())
    })
}

/// # Safety
/// `mask` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_mask_area(mask: *const QpMask, out: *mut usize) -> QpStatus {
    guard(|| write_out(out, deref(mask, "mask")?.0.foreground_count()))
}

/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_iou(a: *const QpMask, b: *const QpMask, out: *mut f64) -> QpStatus {
    guard(|| write_out(out, iou(&deref(a, "a")?.0, &deref(b, "b")?.0)?))
}

/// # Safety
/// `mask` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_concavity(mask: *const QpMask, out: *mut f64) -> QpStatus {
    guard(|| write_out(out, concavity_index(&deref(mask, "mask")?.0)?))
}

/// Rasterized convex hull of `mask`, as a new mask handle.
///
/// # Safety
/// `mask` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_canvas_target(mask: *const QpMask, out: *mut *mut QpMask) -> QpStatus {
    guard(|| {
        let m = &deref(mask, "mask")?.0;
        let filled = rasterize_hull(&convex_hull(m)?, m.width(), m.height())?;
        write_out(out, boxed(QpMask(filled)))
    })
}

#[no_mangle]
pub extern "C" fn qp_scoring_default() -> QpScoring {
    let d = ScoringParams::default();
    QpScoring { w_main: d.w_main, w_ortho: d.w_ortho, top_k: -1, dilation_radius: -1 }
}

fn scoring_from(s: &QpScoring) -> Result<ScoringParams, Fail> {
    fn opt<T: TryFrom<i64>>(v: i64, what: &str) -> Result<Option<T>, Fail> {
        if v < 0 {
            return Ok(None);
        }
        T::try_from(v).map(Some).map_err(|_| Fail(QpStatus::InvalidArgument, format!("{what} out of range")))
    }
    let p = ScoringParams { w_main: s.w_main, w_ortho: s.w_ortho, top_k: opt(s.top_k, "top_k")?, dilation_radius: opt(s.dilation_radius, "dilation_radius")? };
    p.validate()?;
    Ok(p)
}

/// Generate a prompt set for `mask`. `scoring` may be NULL for defaults.
///
/// # Safety
/// `mask` must be a live handle, `scoring` NULL or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_generate(
    mask: *const QpMask,
    kind: QpPromptKind,
    scoring: *const QpScoring,
    seed: u64,
    deterministic: bool,
    out: *mut *mut QpPromptSet,
) -> QpStatus {
    guard(|| {
        let m = &deref(mask, "mask")?.0;
        let params = match scoring.as_ref() {
            Some(s) => scoring_from(s)?,
            None => ScoringParams::default(),
        };
        let ps = match kind {
            QpPromptKind::Extreme => gen_extreme(m, &params, seed, deterministic)?,
            QpPromptKind::MajorMinor => gen_major_minor(m, &params, seed, deterministic)?,
            QpPromptKind::Box => gen_tight_box(m)?,
            QpPromptKind::ExtremeBox => box_from_extreme(&gen_extreme(m, &params, seed, deterministic)?)?,
            QpPromptKind::RegionClick => gen_region_click(m, seed)?,
        };
        write_out(out, boxed(QpPromptSet(ps)))
    })
}

/// # Safety
/// `ps` must come from this library and not be used afterwards. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn qp_prompt_set_free(ps: *mut QpPromptSet) {
    if !ps.is_null() {
        drop(Box::from_raw(ps));
    }
}

/// # Safety
/// `ps` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_prompt_set_len(ps: *const QpPromptSet, out: *mut usize) -> QpStatus {
    guard(|| write_out(out, deref(ps, "prompt set")?.0.points.len()))
}

/// # Safety
/// `ps` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_prompt_set_point(ps: *const QpPromptSet, index: usize, out: *mut QpPoint) -> QpStatus {
    guard(|| {
        let points = &deref(ps, "prompt set")?.0.points;
        let p = points.get(index).ok_or_else(|| Fail(QpStatus::InvalidArgument, format!("index {index} out of {}", points.len())))?;
        write_out(out, QpPoint { x: p.coord.x, y: p.coord.y, role: p.role.into() })
    })
}

/// Prompt set as a JSON object; free the string with [`qp_string_free`].
///
/// # Safety
/// `ps` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_prompt_set_to_json(ps: *const QpPromptSet, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        let json = serde_json::to_string(&deref(ps, "prompt set")?.0).map_err(|e| Fail(QpStatus::InvalidArgument, e.to_string()))?;
        write_out(out, CString::new(json).expect("json has no nul bytes").into_raw())
    })
}

/// # Safety
/// `s` must come from this library. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sketch a mask from an extreme, major/minor or box prompt set.
///
/// # Safety
/// `ps` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_sketch(ps: *const QpPromptSet, width: u32, height: u32, out: *mut *mut QpMask) -> QpStatus {
    guard(|| {
        let ps = &deref(ps, "prompt set")?.0;
        let mask = match ps.strategy {
            Strategy::Extreme => sketch_from_extreme(ps, width, height)?,
            Strategy::MajorMinor => sketch_from_majmin(ps, width, height)?,
            Strategy::Box => sketch_from_box(ps, width, height)?,
            Strategy::RegionClick => return Err(Fail(QpStatus::InvalidArgument, "region clicks cannot be sketched".into())),
        };
        write_out(out, boxed(QpMask(mask)))
    })
}

/// Draw a corrective click from the disagreement of `gt` and `pred`.
/// `*found` is false when the masks agree everywhere.
///
/// # Safety
/// `gt` and `pred` must be live handles; `out` and `found` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_sample_refinement(gt: *const QpMask, pred: *const QpMask, seed: u64, out: *mut QpPoint, found: *mut bool) -> QpStatus {
    guard(|| match sample_refinement(&deref(gt, "gt")?.0, &deref(pred, "pred")?.0, seed)? {
        Some(p) => {
            write_out(out, QpPoint { x: p.coord.x, y: p.coord.y, role: p.role.into() })?;
            write_out(found, true)
        }
        None => write_out(found, false),
    })
}

/// Simulate one interactive session against the perturbed-oracle segmenter
/// and report the final IoU.
///
/// # Safety
/// `gt` must be a live handle and `final_iou` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_run_session(
    gt: *const QpMask,
    strategy: QpSessionStrategy,
    budget: u32,
    seed: u64,
    oracle_selection: bool,
    final_iou: *mut f64,
) -> QpStatus {
    guard(|| {
        let strategy = match strategy {
            QpSessionStrategy::RegionIterative => SessionStrategy::RegionIterative,
            QpSessionStrategy::Box => SessionStrategy::Box,
            QpSessionStrategy::ExtremeRefine => SessionStrategy::ExtremeRefine,
            QpSessionStrategy::MajorMinorRefine => SessionStrategy::MajorMinorRefine,
        };
        let selection = if oracle_selection { SelectionPolicy::Oracle } else { SelectionPolicy::Predicted };
        let config = SessionConfig { selection, ..SessionConfig::new(strategy, budget, seed) };
        let trace = run_session(&deref(gt, "gt")?.0, &PerturbedOracle::default(), &config)?;
        write_out(final_iou, trace.final_iou)
    })
}
