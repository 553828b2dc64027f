//! C ABI over the `hierarch` library.
//!
//! Conventions:
//! - Every fallible function returns a [`HierarchStatus`] and writes its
//!   result through an out pointer.
//! - On failure, [`hierarch_last_error`] returns a message for the calling
//!   thread.
//! - Objects are opaque handles created by `*_new`/`*_from_*` and released
//!   by the matching `*_free`.
//! - Strings returned to the caller are released with
//!   [`hierarch_string_free`].
//! - Panics never cross the boundary. They are reported as
//!   [`HierarchStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hierarch::corpus;
use hierarch::covering::{self, CoverError};
use hierarch::deciders::{self, DecideError};
use hierarch::lang::{compile_str, Alphabet, Dfa, LangError};
use hierarch::logic::{eval_tl, parse_tl, Env, LogicError, PointedWord};
use hierarch::monoid::{syntactic_morphism, MonoidError};
use hierarch::prevariety::{Oracle, PrevarietyError};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HierarchStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Unsupported = 4,
    SizeGuard = 5,
    InvalidInput = 6,
    Panic = 7,
}

/// A regular language, stored as a complete DFA.
pub struct HierarchLanguage {
    dfa: Dfa,
}

/// Named languages available to temporal formulas.
pub struct HierarchEnv {
    env: Env,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(HierarchStatus, String);

impl Failure {
    fn null(what: &str) -> Self {
        Failure(HierarchStatus::NullArgument, format!("{what} is null"))
    }
}

fn lang_status(e: &LangError) -> HierarchStatus {
    match e {
        LangError::Syntax { .. } => HierarchStatus::Parse,
        _ => HierarchStatus::InvalidInput,
    }
}

fn prevariety_status(e: &PrevarietyError) -> HierarchStatus {
    match e {
        PrevarietyError::Unsupported(_) => HierarchStatus::Unsupported,
        PrevarietyError::SizeGuard(_) => HierarchStatus::SizeGuard,
        PrevarietyError::Monoid(MonoidError::Lang(l)) => lang_status(l),
        _ => HierarchStatus::InvalidInput,
    }
}

macro_rules! failure_from {
    ($ty:ty, |$e:ident| $status:expr) => {
        impl From<$ty> for Failure {
            fn from($e: $ty) -> Self {
                let status = $status;
                Failure(status, $e.to_string())
            }
        }
    };
}

failure_from!(LangError, |e| lang_status(&e));
failure_from!(PrevarietyError, |e| prevariety_status(&e));
failure_from!(DecideError, |e| match &e {
    DecideError::Unsupported(_) => HierarchStatus::Unsupported,
    DecideError::BadSpec(_) => HierarchStatus::Parse,
    DecideError::Prevariety(p) => prevariety_status(p),
    DecideError::Lang(l) => lang_status(l),
    _ => HierarchStatus::InvalidInput,
});
failure_from!(CoverError, |e| match &e {
    CoverError::SizeGuard(_) => HierarchStatus::SizeGuard,
    CoverError::Unsupported(_) => HierarchStatus::Unsupported,
    CoverError::Prevariety(p) => prevariety_status(p),
    CoverError::Lang(l) => lang_status(l),
    _ => HierarchStatus::InvalidInput,
});
failure_from!(LogicError, |e| match &e {
    LogicError::Syntax { .. } => HierarchStatus::Parse,
    LogicError::SizeGuard(_) => HierarchStatus::SizeGuard,
    _ => HierarchStatus::InvalidInput,
});

/// Runs `f`, records any failure, and converts panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HierarchStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HierarchStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            HierarchStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(HierarchStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

/// Checks `out` before producing the value, so nothing owned leaks.
unsafe fn write<T>(out: *mut T, value: impl FnOnce() -> T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("output pointer"));
    }
    out.write(value());
    Ok(())
}

fn alphabet_of(letters: &str) -> Result<Alphabet, Failure> {
    Ok(Alphabet::from_str_letters(letters)?)
}

fn oracle_of(spec: &str) -> Result<Oracle, Failure> {
    Ok(Oracle::parse(spec)?)
}

fn boxed_language(dfa: Dfa) -> *mut HierarchLanguage {
    Box::into_raw(Box::new(HierarchLanguage { dfa }))
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn hierarch_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hierarch_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hierarch_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Compiles a regular expression over the letters of `alphabet`
/// (for example `"ab"`). `A` stands for any letter and `eps` for the empty
/// word.
///
/// # Safety
/// Pointers must be null or valid; `out` receives a new handle.
#[no_mangle]
pub unsafe extern "C" fn hierarch_language_from_regex(
    regex: *const c_char,
    alphabet: *const c_char,
    out: *mut *mut HierarchLanguage,
) -> HierarchStatus {
    guard(|| {
        let alphabet = alphabet_of(text(alphabet, "alphabet")?)?;
        let dfa = compile_str(text(regex, "regex")?, &alphabet)?;
        write(out, || boxed_language(dfa))
    })
}

/// Reads a DFA in the JSON automaton format. With `complete`, missing
/// transitions go to a fresh sink state.
///
/// # Safety
/// Pointers must be null or valid; `out` receives a new handle.
#[no_mangle]
pub unsafe extern "C" fn hierarch_language_from_json(
    json: *const c_char,
    complete: bool,
    out: *mut *mut HierarchLanguage,
) -> HierarchStatus {
    guard(|| {
        let dfa = Dfa::from_json(text(json, "json")?, complete)?;
        write(out, || boxed_language(dfa))
    })
}

/// One of the built-in example languages `F1`..`F6`; a `co` prefix gives the
/// complement.
///
/// # Safety
/// Pointers must be null or valid; `out` receives a new handle.
#[no_mangle]
pub unsafe extern "C" fn hierarch_language_fixture(
    name: *const c_char,
    out: *mut *mut HierarchLanguage,
) -> HierarchStatus {
    guard(|| {
        let name = text(name, "name")?;
        let dfa = corpus::fixture(name)
            .ok_or_else(|| Failure(HierarchStatus::InvalidInput, format!("unknown fixture {name:?}")))?;
        write(out, || boxed_language(dfa))
    })
}

/// Releases a language. Null is ignored.
///
/// # Safety
/// `lang` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hierarch_language_free(lang: *mut HierarchLanguage) {
    if !lang.is_null() {
        drop(Box::from_raw(lang));
    }
}

/// Number of states of the stored automaton.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_language_num_states(
    lang: *const HierarchLanguage,
    out: *mut usize,
) -> HierarchStatus {
    guard(|| {
        let n = handle(lang, "language")?.dfa.num_states();
        write(out, || n)
    })
}

/// Whether `word` belongs to the language.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_language_accepts(
    lang: *const HierarchLanguage,
    word: *const c_char,
    out: *mut bool,
) -> HierarchStatus {
    guard(|| {
        let accepted = handle(lang, "language")?.dfa.accepts_str(text(word, "word")?)?;
        write(out, || accepted)
    })
}

/// The automaton as JSON. Release with [`hierarch_string_free`].
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_language_to_json(
    lang: *const HierarchLanguage,
    out: *mut *mut c_char,
) -> HierarchStatus {
    guard(|| {
        let json = handle(lang, "language")?.dfa.to_json();
        write(out, || CString::new(json).expect("JSON has no NUL").into_raw())
    })
}

/// Size of the syntactic monoid.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_syntactic_size(lang: *const HierarchLanguage, out: *mut usize) -> HierarchStatus {
    guard(|| {
        let n = syntactic_morphism(&handle(lang, "language")?.dfa).size();
        write(out, || n)
    })
}

/// Membership in a class such as `"upol:at"` or `"fo2:st"`.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_member(
    lang: *const HierarchLanguage,
    class: *const c_char,
    out: *mut bool,
) -> HierarchStatus {
    guard(|| {
        let verdict = deciders::member(&handle(lang, "language")?.dfa, text(class, "class")?)?;
        write(out, || verdict.member)
    })
}

/// Membership verdict with its certificate, as JSON. Release with
/// [`hierarch_string_free`].
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_member_json(
    lang: *const HierarchLanguage,
    class: *const c_char,
    out: *mut *mut c_char,
) -> HierarchStatus {
    guard(|| {
        let verdict = deciders::member(&handle(lang, "language")?.dfa, text(class, "class")?)?;
        write(out, || CString::new(verdict.to_json()).expect("JSON has no NUL").into_raw())
    })
}

/// Whether some language of UPol(C) contains `l1` and avoids `l2`, where
/// `oracle` names C (`"st"`, `"at"`, `"mod"`, ...).
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_separate(
    l1: *const HierarchLanguage,
    l2: *const HierarchLanguage,
    oracle: *const c_char,
    out: *mut bool,
) -> HierarchStatus {
    guard(|| {
        let oracle = oracle_of(text(oracle, "oracle")?)?;
        let sep = covering::decide_separation(&handle(l1, "l1")?.dfa, &handle(l2, "l2")?.dfa, &oracle)?;
        write(out, || sep)
    })
}

/// Whether `l0` has a UPol(C)-cover in which no block meets all of the
/// `count` languages in `others`.
///
/// # Safety
/// `others` must point to `count` valid handles; other pointers must be
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_cover(
    l0: *const HierarchLanguage,
    others: *const *const HierarchLanguage,
    count: usize,
    oracle: *const c_char,
    out: *mut bool,
) -> HierarchStatus {
    guard(|| {
        let oracle = oracle_of(text(oracle, "oracle")?)?;
        if count > 0 && others.is_null() {
            return Err(Failure::null("others"));
        }
        let mut ls = Vec::with_capacity(count);
        for i in 0..count {
            ls.push(handle(*others.add(i), "others[i]")?.dfa.clone());
        }
        let coverable = covering::decide_cover(&handle(l0, "l0")?.dfa, &ls, &oracle)?;
        write(out, || coverable)
    })
}

/// An empty environment over the letters of `alphabet`.
///
/// # Safety
/// Pointers must be null or valid; `out` receives a new handle.
#[no_mangle]
pub unsafe extern "C" fn hierarch_env_new(alphabet: *const c_char, out: *mut *mut HierarchEnv) -> HierarchStatus {
    guard(|| {
        let env = Env::new(alphabet_of(text(alphabet, "alphabet")?)?);
        write(out, || Box::into_raw(Box::new(HierarchEnv { env })))
    })
}

/// Binds `name` to the language of `regex`.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_env_insert_regex(
    env: *mut HierarchEnv,
    name: *const c_char,
    regex: *const c_char,
) -> HierarchStatus {
    guard(|| {
        let env = env.as_mut().ok_or_else(|| Failure::null("env"))?;
        Ok(env.env.insert_regex(text(name, "name")?, text(regex, "regex")?)?)
    })
}

/// Releases an environment. Null is ignored.
///
/// # Safety
/// `env` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hierarch_env_free(env: *mut HierarchEnv) {
    if !env.is_null() {
        drop(Box::from_raw(env));
    }
}

/// Evaluates a temporal formula at `position` of `word`, where position 0
/// is the left marker and `len + 1` the right one.
///
/// # Safety
/// Pointers must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hierarch_tl_eval(
    env: *const HierarchEnv,
    formula: *const c_char,
    word: *const c_char,
    position: usize,
    out: *mut bool,
) -> HierarchStatus {
    guard(|| {
        let env = &handle(env, "env")?.env;
        let phi = parse_tl(text(formula, "formula")?, env)?;
        let letters = env.alphabet().encode(text(word, "word")?)?;
        let pw = PointedWord::new(letters, position)?;
        let holds = eval_tl(&phi, &pw, env)?;
        write(out, || holds)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message() -> String {
        unsafe { CStr::from_ptr(hierarch_last_error()) }.to_string_lossy().into_owned()
    }

    #[test]
    fn panics_become_a_status() {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let status = guard(|| panic!("boom"));
        std::panic::set_hook(prev);
        assert_eq!(status, HierarchStatus::Panic);
        assert_eq!(message(), "internal panic: boom");
    }

    #[test]
    fn nested_errors_keep_their_category() {
        let e = CoverError::Prevariety(PrevarietyError::Unsupported("gr".into()));
        assert_eq!(Failure::from(e).0, HierarchStatus::Unsupported);
        let e = DecideError::Lang(LangError::Syntax { position: 0, message: "x".into() });
        assert_eq!(Failure::from(e).0, HierarchStatus::Parse);
        assert_eq!(Failure::from(CoverError::SizeGuard("n".into())).0, HierarchStatus::SizeGuard);
    }

    #[test]
    fn interior_nul_in_messages_is_replaced() {
        set_error("a\0b");
        assert_eq!(message(), "a b");
    }
}
