//! C ABI for the gdconf computer-algebra library.
//!
//! Handles are opaque pointers; every entry point returns a status code and
//! reports are passed back as NUL-terminated strings that the caller must
//! release with [`gdc_string_free`]. All functions catch panics at the
//! boundary and report them as `GDC_INTERNAL`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gdconf::algfile::{load_algebra, parse_algebra, print_algebra, AlgebraFile};
use gdconf::cli::{run, Command, Options};
use gdconf::envelope::{speciality_kernel, Truncation};
use gdconf::gdcore::{check_gd, check_lie_super, check_novikov};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdcStatus {
    /// Success; all requested checks passed.
    GdcOk = 0,
    /// The computation ran but found a violation or certificate.
    GdcViolation = 1,
    /// Malformed input, unknown name, or unusable parameters.
    GdcInputError = 2,
    /// A required pointer argument was NULL.
    GdcNullPointer = 3,
    /// A string argument was not valid UTF-8.
    GdcUtf8Error = 4,
    /// Internal panic; this is a bug worth reporting.
    GdcInternal = 5,
}

/// Truncation window parameters for envelope-based entry points.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GdcWindow {
    /// Highest derivative order kept in the window (D ≥ 1).
    pub diff_order: u32,
    /// Highest monomial degree kept in the window (R ≥ 1).
    pub degree: u32,
    /// Highest bracket nesting depth (B).
    pub depth: u32,
}

impl GdcWindow {
    fn truncation(&self) -> Result<Truncation, gdconf::Error> {
        Truncation::new(self.diff_order, self.degree, self.depth)
    }
}

/// Opaque algebra handle.
pub struct GdcAlgebra {
    file: AlgebraFile,
}

fn cstr_arg<'a>(ptr: *const c_char) -> Result<&'a str, GdcStatus> {
    if ptr.is_null() {
        return Err(GdcStatus::GdcNullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| GdcStatus::GdcUtf8Error)
}

fn give_string(out: *mut *mut c_char, s: String) {
    if out.is_null() {
        return;
    }
    let c = CString::new(s.replace('\0', " ")).unwrap_or_default();
    unsafe { *out = c.into_raw() };
}

fn guard<F: FnOnce() -> GdcStatus>(f: F) -> GdcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => GdcStatus::GdcInternal,
    }
}

/// Parse an algebra definition from structured text. On success writes a
/// fresh handle to `out`; release it with [`gdc_algebra_free`].
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gdc_algebra_parse(
    text: *const c_char,
    out: *mut *mut GdcAlgebra,
) -> GdcStatus {
    guard(|| {
        if out.is_null() {
            return GdcStatus::GdcNullPointer;
        }
        let text = match cstr_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_algebra(text, "algebra") {
            Ok(file) => {
                let handle = Box::new(GdcAlgebra { file });
                unsafe { *out = Box::into_raw(handle) };
                GdcStatus::GdcOk
            }
            Err(_) => GdcStatus::GdcInputError,
        }
    })
}

/// Load a built-in fixture (`heisenberg3`, `virasoro-source`, `novikov2`,
/// `zero1`, `supernov2`) or a file path.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gdc_algebra_load(
    spec: *const c_char,
    out: *mut *mut GdcAlgebra,
) -> GdcStatus {
    guard(|| {
        if out.is_null() {
            return GdcStatus::GdcNullPointer;
        }
        let spec = match cstr_arg(spec) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match load_algebra(spec) {
            Ok(file) => {
                let handle = Box::new(GdcAlgebra { file });
                unsafe { *out = Box::into_raw(handle) };
                GdcStatus::GdcOk
            }
            Err(_) => GdcStatus::GdcInputError,
        }
    })
}

/// Release an algebra handle. NULL is ignored.
///
/// # Safety
/// `alg` must come from `gdc_algebra_parse`/`gdc_algebra_load` and must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gdc_algebra_free(alg: *mut GdcAlgebra) {
    if !alg.is_null() {
        drop(unsafe { Box::from_raw(alg) });
    }
}

/// Dimension of the underlying space, or −1 for NULL.
///
/// # Safety
/// `alg` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn gdc_algebra_dim(alg: *const GdcAlgebra) -> i32 {
    if alg.is_null() {
        return -1;
    }
    unsafe { &*alg }.file.algebra.dim() as i32
}

/// Deterministic textual form of the algebra (inverse of parsing).
///
/// # Safety
/// `alg` must be a live handle; `out` receives a string to free with
/// [`gdc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gdc_algebra_print(
    alg: *const GdcAlgebra,
    out: *mut *mut c_char,
) -> GdcStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            return GdcStatus::GdcNullPointer;
        }
        let file = &unsafe { &*alg }.file;
        give_string(out, print_algebra(file));
        GdcStatus::GdcOk
    })
}

/// Which axiom package to verify.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdcCheckKind {
    /// Super Novikov axioms of the ∘-product.
    GdcCheckNovikov = 0,
    /// Super Lie axioms of the bracket.
    GdcCheckLie = 1,
    /// Novikov + Lie + the five-term compatibility identity.
    GdcCheckGd = 2,
}

/// Run an axiom check; `GDC_OK` means every identity holds exactly.
/// A human-readable summary is written to `report` when non-NULL.
///
/// # Safety
/// `alg` must be a live handle; `report` may be NULL or a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn gdc_check(
    alg: *const GdcAlgebra,
    kind: GdcCheckKind,
    report: *mut *mut c_char,
) -> GdcStatus {
    guard(|| {
        if alg.is_null() {
            return GdcStatus::GdcNullPointer;
        }
        let a = &unsafe { &*alg }.file.algebra;
        let rep = match kind {
            GdcCheckKind::GdcCheckNovikov => check_novikov(a),
            GdcCheckKind::GdcCheckLie => check_lie_super(a),
            GdcCheckKind::GdcCheckGd => check_gd(a),
        };
        match rep {
            Ok(r) => {
                let mut text = format!("check = {}\npassed = {}\n", r.check, r.passed);
                for v in r.violations.iter().take(8) {
                    text.push_str(&format!("violation = {} at {}: {}\n", v.axiom, v.witness, v.residual));
                }
                give_string(report, text);
                if r.passed {
                    GdcStatus::GdcOk
                } else {
                    GdcStatus::GdcViolation
                }
            }
            Err(e) => {
                give_string(report, format!("error = {e}\n"));
                GdcStatus::GdcInputError
            }
        }
    })
}

/// Dimension of the exceptionality kernel inside the given window, written
/// to `kernel_dim`. `GDC_VIOLATION` means the kernel is nonzero (the
/// algebra is certified exceptional); `GDC_OK` means no certificate was
/// found at this window.
///
/// # Safety
/// `alg` must be a live handle; `window` and `kernel_dim` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gdc_speciality(
    alg: *const GdcAlgebra,
    window: *const GdcWindow,
    kernel_dim: *mut u32,
) -> GdcStatus {
    guard(|| {
        if alg.is_null() || window.is_null() || kernel_dim.is_null() {
            return GdcStatus::GdcNullPointer;
        }
        let a = &unsafe { &*alg }.file.algebra;
        let t = match unsafe { *window }.truncation() {
            Ok(t) => t,
            Err(_) => return GdcStatus::GdcInputError,
        };
        match speciality_kernel(a, t) {
            Ok(k) => {
                unsafe { *kernel_dim = k.len() as u32 };
                if k.is_empty() {
                    GdcStatus::GdcOk
                } else {
                    GdcStatus::GdcViolation
                }
            }
            Err(_) => GdcStatus::GdcInputError,
        }
    })
}

fn command_of(name: &str) -> Option<Command> {
    Some(match name {
        "check-novikov" => Command::CheckNovikov,
        "check-gd" => Command::CheckGd,
        "build-conformal" => Command::BuildConformal,
        "check-conformal" => Command::CheckConformal,
        "loop-oracle" => Command::LoopOracle,
        "check-lemmas" => Command::CheckLemmas,
        "build-envelope" => Command::BuildEnvelope,
        "speciality" => Command::Speciality,
        "build-ffr" => Command::BuildFfr,
        "check-repr" => Command::CheckRepr,
        "check-gc" => Command::CheckGc,
        _ => return None,
    })
}

/// Run a full pipeline by subcommand name with the same semantics as the
/// `gdconf` binary. The deterministic machine report is written to
/// `report`; the return value mirrors the process exit code
/// (`GDC_OK` / `GDC_VIOLATION` / `GDC_INPUT_ERROR`).
///
/// # Safety
/// `command` and `algebra_spec` must be NUL-terminated strings (the latter
/// may be NULL for commands that take no algebra); `window` may be NULL for
/// the default (D=2, R=4, B=2); `report` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn gdc_run(
    command: *const c_char,
    algebra_spec: *const c_char,
    window: *const GdcWindow,
    report: *mut *mut c_char,
) -> GdcStatus {
    guard(|| {
        let cmd_name = match cstr_arg(command) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let Some(cmd) = command_of(cmd_name) else {
            give_string(report, format!("error = unknown subcommand `{cmd_name}`\n"));
            return GdcStatus::GdcInputError;
        };
        let mut opts = Options::default();
        if !algebra_spec.is_null() {
            match cstr_arg(algebra_spec) {
                Ok(a) => opts.algebra = Some(a.to_string()),
                Err(s) => return s,
            }
        }
        if !window.is_null() {
            let w = unsafe { *window };
            opts.diff_order = w.diff_order;
            opts.degree = w.degree;
            opts.depth = w.depth;
        }
        let rep = run(cmd, &opts);
        give_string(report, rep.to_text());
        match rep.exit {
            0 => GdcStatus::GdcOk,
            1 => GdcStatus::GdcViolation,
            _ => GdcStatus::GdcInputError,
        }
    })
}

/// Release a string produced by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from a gdconf entry point and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gdc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn load_check_and_free() {
        let mut alg: *mut GdcAlgebra = ptr::null_mut();
        let spec = c("heisenberg3");
        let status = unsafe { gdc_algebra_load(spec.as_ptr(), &mut alg) };
        assert_eq!(status, GdcStatus::GdcOk);
        assert_eq!(unsafe { gdc_algebra_dim(alg) }, 3);
        let mut report: *mut c_char = ptr::null_mut();
        let status = unsafe { gdc_check(alg, GdcCheckKind::GdcCheckGd, &mut report) };
        assert_eq!(status, GdcStatus::GdcOk);
        let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_string();
        assert!(text.contains("passed = true"));
        unsafe { gdc_string_free(report) };
        unsafe { gdc_algebra_free(alg) };
    }

    #[test]
    fn parse_rejects_garbage() {
        let mut alg: *mut GdcAlgebra = ptr::null_mut();
        let text = c("[generators]\nuh oh what\n");
        let status = unsafe { gdc_algebra_parse(text.as_ptr(), &mut alg) };
        assert_eq!(status, GdcStatus::GdcInputError);
    }

    #[test]
    fn print_round_trips() {
        let mut alg: *mut GdcAlgebra = ptr::null_mut();
        let spec = c("novikov2");
        unsafe { gdc_algebra_load(spec.as_ptr(), &mut alg) };
        let mut printed: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { gdc_algebra_print(alg, &mut printed) }, GdcStatus::GdcOk);
        let text = unsafe { CStr::from_ptr(printed) }.to_str().unwrap().to_string();
        let mut alg2: *mut GdcAlgebra = ptr::null_mut();
        let ctext = c(&text);
        assert_eq!(unsafe { gdc_algebra_parse(ctext.as_ptr(), &mut alg2) }, GdcStatus::GdcOk);
        assert_eq!(unsafe { gdc_algebra_dim(alg2) }, 2);
        unsafe {
            gdc_string_free(printed);
            gdc_algebra_free(alg);
            gdc_algebra_free(alg2);
        }
    }

    #[test]
    fn speciality_certificate_through_the_abi() {
        let mut alg: *mut GdcAlgebra = ptr::null_mut();
        let spec = c("heisenberg3");
        unsafe { gdc_algebra_load(spec.as_ptr(), &mut alg) };
        let window = GdcWindow { diff_order: 2, degree: 4, depth: 2 };
        let mut dim = 0u32;
        let status = unsafe { gdc_speciality(alg, &window, &mut dim) };
        assert_eq!(status, GdcStatus::GdcViolation);
        assert_eq!(dim, 1);
        unsafe { gdc_algebra_free(alg) };
    }

    #[test]
    fn run_mirrors_cli_exit_codes() {
        let cmd = c("check-conformal");
        let alg = c("zero1");
        let mut report: *mut c_char = ptr::null_mut();
        let status =
            unsafe { gdc_run(cmd.as_ptr(), alg.as_ptr(), ptr::null(), &mut report) };
        assert_eq!(status, GdcStatus::GdcOk);
        let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_string();
        assert!(text.contains("verdict.skew = pass"));
        unsafe { gdc_string_free(report) };

        let bad = c("no-such-command");
        let status2 = unsafe { gdc_run(bad.as_ptr(), alg.as_ptr(), ptr::null(), ptr::null_mut()) };
        assert_eq!(status2, GdcStatus::GdcInputError);
    }

    #[test]
    fn null_safety() {
        assert_eq!(unsafe { gdc_algebra_dim(ptr::null()) }, -1);
        let status = unsafe { gdc_algebra_parse(ptr::null(), ptr::null_mut()) };
        assert_eq!(status, GdcStatus::GdcNullPointer);
        unsafe { gdc_algebra_free(ptr::null_mut()) };
        unsafe { gdc_string_free(ptr::null_mut()) };
    }
}
