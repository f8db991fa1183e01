//! C interface to `lexfst`.
//!
//! Machines are opaque `LexfstTransducer` handles. Every fallible function
//! returns a [`LexfstStatus`]; on failure a message is kept per thread and
//! can be read with [`lexfst_last_error_message`]. Strings and byte buffers
//! handed out by the library must be released with the matching free
//! function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lexfst::apply::{complete, encode_input, lookup};
use lexfst::io::{read_binary, read_file, read_text, write_binary, write_file, write_text};
use lexfst::lexicon::{Lexicon, Tokenize};
use lexfst::minimize::minimize_sequential;
use lexfst::push::push_outputs;
use lexfst::{compile, Error, Transducer};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexfstStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    /// Bad magic, unknown version, truncated or corrupt binary data.
    Format = 5,
    NonSubsequential = 6,
    AmbiguityExceeded = 7,
    EmptyInput = 8,
    NotFound = 9,
    /// The machine violates a structural requirement of the operation.
    Invalid = 10,
    Panic = 11,
}

/// Opaque transducer handle.
pub struct LexfstTransducer(Transducer);

/// Opaque list of strings returned by lookup.
pub struct LexfstStrings(Vec<CString>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> LexfstStatus {
    match e {
        Error::Parse { .. } => LexfstStatus::Parse,
        Error::Io(_) => LexfstStatus::Io,
        Error::BadMagic | Error::VersionMismatch(_) | Error::TruncatedFile | Error::Corrupt(_) => LexfstStatus::Format,
        Error::NonSubsequential(_) => LexfstStatus::NonSubsequential,
        Error::AmbiguityExceeded { .. } => LexfstStatus::AmbiguityExceeded,
        Error::EmptyLexicon | Error::EmptyLanguage => LexfstStatus::EmptyInput,
        Error::PrefixNotPresent => LexfstStatus::NotFound,
        _ => LexfstStatus::Invalid,
    }
}

struct Failure(LexfstStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LexfstStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LexfstStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LexfstStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(LexfstStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(LexfstStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(t: *const LexfstTransducer) -> Result<&'a Transducer, Failure> {
    t.as_ref().map(|h| &h.0).ok_or_else(|| null("transducer"))
}

unsafe fn put_handle(out: *mut *mut LexfstTransducer, t: Transducer) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(LexfstTransducer(t)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(LexfstStatus::Invalid, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn separator<'a>(sep: *const c_char) -> Result<&'a str, Failure> {
    if sep.is_null() {
        Ok("")
    } else {
        str_arg(sep, "separator")
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lexfst_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Compiles tab-separated `input<TAB>output` lines. Outputs are split into
/// characters, or on whitespace when `space_tokens` is non-zero. `p` bounds
/// the outputs per input; 0 uses the observed ambiguity.
///
/// # Safety
/// `tsv` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexfst_compile_tsv(
    tsv: *const c_char,
    space_tokens: i32,
    p: usize,
    out: *mut *mut LexfstTransducer,
) -> LexfstStatus {
    guard(|| {
        let text = str_arg(tsv, "tsv")?;
        let tokenize = if space_tokens != 0 { Tokenize::Space } else { Tokenize::Chars };
        let lex = Lexicon::parse(text, tokenize)?;
        let t = compile(&lex, (p > 0).then_some(p))?;
        put_handle(out, t)
    })
}

/// Reads a text or binary file, telling the formats apart by content.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexfst_read_file(path: *const c_char, out: *mut *mut LexfstTransducer) -> LexfstStatus {
    guard(|| {
        let t = read_file(str_arg(path, "path")?)?;
        put_handle(out, t)
    })
}

/// Writes binary when `path` ends in `.fstb`, text otherwise.
///
/// # Safety
/// `t` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lexfst_write_file(t: *const LexfstTransducer, path: *const c_char) -> LexfstStatus {
    guard(|| {
        write_file(str_arg(path, "path")?, handle(t)?)?;
        Ok(())
    })
}

/// Parses the text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexfst_from_text(text: *const c_char, out: *mut *mut LexfstTransducer) -> LexfstStatus {
    guard(|| {
        let t = read_text(str_arg(text, "text")?)?;
        put_handle(out, t)
    })
}

/// Renders the text format. Free the result with [`lexfst_string_free`].
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexfst_to_text(t: *const LexfstTransducer, out: *mut *mut c_char) -> LexfstStatus {
    guard(|| put_string(out, write_text(handle(t)?)))
}

/// Parses the binary format.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lexfst_from_bytes(
    data: *const u8,
    len: usize,
    out: *mut *mut LexfstTransducer,
) -> LexfstStatus {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        let t = read_binary(std::slice::from_raw_parts(data, len))?;
        put_handle(out, t)
    })
}

/// Serializes to the binary format. Free the buffer with
/// [`lexfst_bytes_free`], passing the same length.
///
/// # Safety
/// `t` must be a live handle; `out` and `len` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lexfst_to_bytes(
    t: *const LexfstTransducer,
    out: *mut *mut u8,
    len: *mut usize,
) -> LexfstStatus {
    guard(|| {
        if out.is_null() || len.is_null() {
            return Err(null("out"));
        }
        let bytes = write_binary(handle(t)?).into_boxed_slice();
        *len = bytes.len();
        *out = Box::into_raw(bytes) as *mut u8;
        Ok(())
    })
}

/// Minimizes into a new handle; `t` is left unchanged.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexfst_minimize(t: *const LexfstTransducer, out: *mut *mut LexfstTransducer) -> LexfstStatus {
    guard(|| {
        let m = minimize_sequential(handle(t)?)?;
        put_handle(out, m)
    })
}

/// Trims and pushes outputs into a new handle.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexfst_push(t: *const LexfstTransducer, out: *mut *mut LexfstTransducer) -> LexfstStatus {
    guard(|| {
        let p = push_outputs(&handle(t)?.trim_checked()?)?;
        put_handle(out, p)
    })
}

/// Looks up `word`, split into characters. Outputs are rendered with their
/// symbols joined by `separator` (NULL for none). A rejected word gives an
/// empty list.
///
/// # Safety
/// `t` must be a live handle, `word` a NUL-terminated string, `separator`
/// NULL or NUL-terminated, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lexfst_lookup(
    t: *const LexfstTransducer,
    word: *const c_char,
    separator: *const c_char,
    out: *mut *mut LexfstStrings,
) -> LexfstStatus {
    guard(|| {
        let t = handle(t)?;
        let word = str_arg(word, "word")?;
        let sep = self::separator(separator)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let outputs = encode_input(t, Tokenize::Chars.split(word))
            .map(|w| lookup(t, &w))
            .unwrap_or_default();
        let strings = outputs
            .iter()
            .map(|o| CString::new(t.output_symbols().render(o, sep)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure(LexfstStatus::Invalid, "output contains NUL".into()))?;
        *out = Box::into_raw(Box::new(LexfstStrings(strings)));
        Ok(())
    })
}

/// Output emitted along the path of `prefix`. Fails with
/// `LEXFST_STATUS_NOT_FOUND` when no word starts with `prefix`.
///
/// # Safety
/// As for [`lexfst_lookup`], with `out` receiving a string to release with
/// [`lexfst_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lexfst_complete(
    t: *const LexfstTransducer,
    prefix: *const c_char,
    separator: *const c_char,
    out: *mut *mut c_char,
) -> LexfstStatus {
    guard(|| {
        let t = handle(t)?;
        let prefix = str_arg(prefix, "prefix")?;
        let sep = self::separator(separator)?;
        let input = encode_input(t, Tokenize::Chars.split(prefix)).ok_or(Error::PrefixNotPresent)?;
        let c = complete(t, &input)?;
        put_string(out, t.output_symbols().render(&c, sep))
    })
}

/// Number of states, 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lexfst_num_states(t: *const LexfstTransducer) -> usize {
    t.as_ref().map_or(0, |h| h.0.num_states())
}

/// Number of transitions, 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lexfst_num_transitions(t: *const LexfstTransducer) -> usize {
    t.as_ref().map_or(0, |h| h.0.num_transitions())
}

/// # Safety
/// `s` must be NULL or a live list.
#[no_mangle]
pub unsafe extern "C" fn lexfst_strings_len(s: *const LexfstStrings) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// The `i`-th string, or NULL when out of range. Owned by the list.
///
/// # Safety
/// `s` must be NULL or a live list.
#[no_mangle]
pub unsafe extern "C" fn lexfst_strings_get(s: *const LexfstStrings, i: usize) -> *const c_char {
    s.as_ref()
        .and_then(|s| s.0.get(i))
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// # Safety
/// `s` must be NULL or a list from [`lexfst_lookup`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lexfst_strings_free(s: *mut LexfstStrings) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lexfst_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `data` and `len` must come from [`lexfst_to_bytes`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lexfst_bytes_free(data: *mut u8, len: usize) {
    if !data.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(data, len)));
    }
}

/// # Safety
/// `t` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lexfst_transducer_free(t: *mut LexfstTransducer) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}
