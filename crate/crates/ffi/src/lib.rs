//! C ABI for tunnelkit: opaque handles, status codes, and owned C
//! strings. Every constructor has a matching free; every fallible call
//! returns a [`TkStatus`] and writes its result through an out-pointer.

use std::ffi::{c_char, CStr, CString};
use std::ptr;
use tunnelkit::dyck::DyckPath;
use tunnelkit::perm::{self, Permutation};
use tunnelkit::stats::StatProfile;
use tunnelkit::zigzag;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TkStatus {
    /// Success.
    TkOk = 0,
    /// A word or permutation failed to parse or validate.
    TkErrParse = 1,
    /// The offset parameter lies outside `0..=n`.
    TkErrRange = 2,
    /// The permutation contains the pattern required to be avoided.
    TkErrPattern = 3,
    /// A required pointer argument was null.
    TkErrNull = 4,
    /// A string argument was not valid UTF-8.
    TkErrUtf8 = 5,
}

/// Opaque Dyck path handle.
pub struct TkDyckPath(DyckPath);

/// Opaque permutation handle.
pub struct TkPermutation(Permutation);

/// Human-readable description of a status code. Static storage; do not
/// free.
#[no_mangle]
pub extern "C" fn tk_status_message(status: TkStatus) -> *const c_char {
    let message: &'static [u8] = match status {
        TkStatus::TkOk => b"ok\0",
        TkStatus::TkErrParse => b"parse or validation error\0",
        TkStatus::TkErrRange => b"offset out of range\0",
        TkStatus::TkErrPattern => b"pattern not avoided\0",
        TkStatus::TkErrNull => b"null pointer\0",
        TkStatus::TkErrUtf8 => b"invalid utf-8\0",
    };
    message.as_ptr() as *const c_char
}

/// Frees a string returned by any `tk_*` call.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, TkStatus> {
    if ptr.is_null() {
        return Err(TkStatus::TkErrNull);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| TkStatus::TkErrUtf8)
}

fn write_string(out: *mut *mut c_char, text: String) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            TkStatus::TkOk
        }
        Err(_) => TkStatus::TkErrParse,
    }
}

/// Parses a Dyck word (`u`/`d`, `U`/`D`, or `1`/`0`) into a new handle.
///
/// # Safety
/// `word` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_dyck_parse(
    word: *const c_char,
    out: *mut *mut TkDyckPath,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let text = match read_str(word) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match DyckPath::parse(text) {
        Ok(path) => {
            *out = Box::into_raw(Box::new(TkDyckPath(path)));
            TkStatus::TkOk
        }
        Err(_) => {
            *out = ptr::null_mut();
            TkStatus::TkErrParse
        }
    }
}

/// Frees a Dyck path handle.
///
/// # Safety
/// `path` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tk_dyck_free(path: *mut TkDyckPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Semilength of the path; 0 for a null handle.
///
/// # Safety
/// `path` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tk_dyck_semilength(path: *const TkDyckPath) -> usize {
    path.as_ref().map_or(0, |p| p.0.semilength())
}

/// Renders the canonical `u`/`d` word into a fresh string.
///
/// # Safety
/// `path` must be a live handle; `out` must be valid. Free the result
/// with [`tk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tk_dyck_render(
    path: *const TkDyckPath,
    out: *mut *mut c_char,
) -> TkStatus {
    match path.as_ref() {
        Some(p) => write_string(out, p.0.render()),
        None => TkStatus::TkErrNull,
    }
}

/// Serializes the full statistic profile of the path as JSON.
///
/// # Safety
/// `path` must be a live handle; `out` must be valid. Free the result
/// with [`tk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tk_dyck_stats_json(
    path: *const TkDyckPath,
    out: *mut *mut c_char,
) -> TkStatus {
    match path.as_ref() {
        Some(p) => {
            let mut value = serde_json::to_value(StatProfile::of(&p.0))
                .expect("profile serialization cannot fail");
            value["word"] = serde_json::Value::String(p.0.render());
            write_string(out, value.to_string())
        }
        None => TkStatus::TkErrNull,
    }
}

/// Applies the zigzag map with offset `r` to the path.
///
/// # Safety
/// `path` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_zigzag_map(
    path: *const TkDyckPath,
    r: usize,
    out: *mut *mut TkDyckPath,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let Some(p) = path.as_ref() else {
        return TkStatus::TkErrNull;
    };
    match zigzag::phi_r(&p.0, r) {
        Ok(image) => {
            *out = Box::into_raw(Box::new(TkDyckPath(image)));
            TkStatus::TkOk
        }
        Err(_) => {
            *out = ptr::null_mut();
            TkStatus::TkErrRange
        }
    }
}

/// Applies the inverse zigzag map with offset `r` to the path.
///
/// # Safety
/// `path` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_zigzag_unmap(
    path: *const TkDyckPath,
    r: usize,
    out: *mut *mut TkDyckPath,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let Some(p) = path.as_ref() else {
        return TkStatus::TkErrNull;
    };
    match zigzag::phi_r_inverse(&p.0, r) {
        Ok(preimage) => {
            *out = Box::into_raw(Box::new(TkDyckPath(preimage)));
            TkStatus::TkOk
        }
        Err(_) => {
            *out = ptr::null_mut();
            TkStatus::TkErrRange
        }
    }
}

/// Parses a permutation in one-line notation (digits for sizes up to 9,
/// comma-separated beyond).
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_perm_parse(
    text: *const c_char,
    out: *mut *mut TkPermutation,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match Permutation::parse(text) {
        Ok(pi) => {
            *out = Box::into_raw(Box::new(TkPermutation(pi)));
            TkStatus::TkOk
        }
        Err(_) => {
            *out = ptr::null_mut();
            TkStatus::TkErrParse
        }
    }
}

/// Frees a permutation handle.
///
/// # Safety
/// `pi` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tk_perm_free(pi: *mut TkPermutation) {
    if !pi.is_null() {
        drop(Box::from_raw(pi));
    }
}

/// Renders one-line notation into a fresh string.
///
/// # Safety
/// `pi` must be a live handle; `out` must be valid. Free the result
/// with [`tk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tk_perm_render(
    pi: *const TkPermutation,
    out: *mut *mut c_char,
) -> TkStatus {
    match pi.as_ref() {
        Some(p) => write_string(out, p.0.render()),
        None => TkStatus::TkErrNull,
    }
}

/// Serializes fixed points, excedances, and descents as JSON.
///
/// # Safety
/// `pi` must be a live handle; `out` must be valid. Free the result
/// with [`tk_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tk_perm_stats_json(
    pi: *const TkPermutation,
    out: *mut *mut c_char,
) -> TkStatus {
    match pi.as_ref() {
        Some(p) => {
            let mut value = serde_json::to_value(perm::stats(&p.0))
                .expect("stats serialization cannot fail");
            value["perm"] = serde_json::Value::String(p.0.render());
            value["n"] = serde_json::Value::from(p.0.len());
            write_string(out, value.to_string())
        }
        None => TkStatus::TkErrNull,
    }
}

/// Staircase walk: 321-avoiding permutation to Dyck path.
///
/// # Safety
/// `pi` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_rs_path(
    pi: *const TkPermutation,
    out: *mut *mut TkDyckPath,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let Some(p) = pi.as_ref() else {
        return TkStatus::TkErrNull;
    };
    match perm::rs(&p.0) {
        Ok(path) => {
            *out = Box::into_raw(Box::new(TkDyckPath(path)));
            TkStatus::TkOk
        }
        Err(_) => {
            *out = ptr::null_mut();
            TkStatus::TkErrPattern
        }
    }
}

/// Inverse staircase walk: Dyck path to 321-avoiding permutation.
///
/// # Safety
/// `path` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_rs_perm(
    path: *const TkDyckPath,
    out: *mut *mut TkPermutation,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let Some(p) = path.as_ref() else {
        return TkStatus::TkErrNull;
    };
    *out = Box::into_raw(Box::new(TkPermutation(perm::rs_inverse(&p.0))));
    TkStatus::TkOk
}

/// Array walk: 132-avoiding permutation to Dyck path.
///
/// # Safety
/// `pi` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_kra_path(
    pi: *const TkPermutation,
    out: *mut *mut TkDyckPath,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let Some(p) = pi.as_ref() else {
        return TkStatus::TkErrNull;
    };
    match perm::kra(&p.0) {
        Ok(path) => {
            *out = Box::into_raw(Box::new(TkDyckPath(path)));
            TkStatus::TkOk
        }
        Err(_) => {
            *out = ptr::null_mut();
            TkStatus::TkErrPattern
        }
    }
}

/// Inverse array walk: Dyck path to 132-avoiding permutation.
///
/// # Safety
/// `path` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_kra_perm(
    path: *const TkDyckPath,
    out: *mut *mut TkPermutation,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let Some(p) = path.as_ref() else {
        return TkStatus::TkErrNull;
    };
    *out = Box::into_raw(Box::new(TkPermutation(perm::kra_inverse(&p.0))));
    TkStatus::TkOk
}

/// The composite bijection from 132-avoiders to 321-avoiders with
/// offset `r`.
///
/// # Safety
/// `pi` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_composite(
    pi: *const TkPermutation,
    r: usize,
    out: *mut *mut TkPermutation,
) -> TkStatus {
    if out.is_null() {
        return TkStatus::TkErrNull;
    }
    let Some(p) = pi.as_ref() else {
        return TkStatus::TkErrNull;
    };
    match perm::composite(&p.0, r) {
        Ok(image) => {
            *out = Box::into_raw(Box::new(TkPermutation(image)));
            TkStatus::TkOk
        }
        Err(perm::PermError::ROutOfRange(_)) => {
            *out = ptr::null_mut();
            TkStatus::TkErrRange
        }
        Err(_) => {
            *out = ptr::null_mut();
            TkStatus::TkErrPattern
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    unsafe fn parse(word: &str) -> *mut TkDyckPath {
        let c = CString::new(word).unwrap();
        let mut out: *mut TkDyckPath = ptr::null_mut();
        assert_eq!(tk_dyck_parse(c.as_ptr(), &mut out), TkStatus::TkOk);
        assert!(!out.is_null());
        out
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        tk_string_free(ptr);
        s
    }

    #[test]
    fn parse_render_round_trip() {
        unsafe {
            let path = parse("uudd");
            assert_eq!(tk_dyck_semilength(path), 2);
            let mut rendered: *mut c_char = ptr::null_mut();
            assert_eq!(tk_dyck_render(path, &mut rendered), TkStatus::TkOk);
            assert_eq!(take_string(rendered), "uudd");
            tk_dyck_free(path);
        }
    }

    #[test]
    fn parse_rejects_bad_words() {
        unsafe {
            let c = CString::new("uddu").unwrap();
            let mut out: *mut TkDyckPath = ptr::null_mut();
            assert_eq!(tk_dyck_parse(c.as_ptr(), &mut out), TkStatus::TkErrParse);
            assert!(out.is_null());
            let mut out2: *mut TkDyckPath = ptr::null_mut();
            assert_eq!(
                tk_dyck_parse(ptr::null(), &mut out2),
                TkStatus::TkErrNull
            );
        }
    }

    #[test]
    fn zigzag_round_trip_through_the_abi() {
        unsafe {
            let path = parse("uuduudududddud");
            let mut image: *mut TkDyckPath = ptr::null_mut();
            assert_eq!(tk_zigzag_map(path, 0, &mut image), TkStatus::TkOk);
            let mut rendered: *mut c_char = ptr::null_mut();
            assert_eq!(tk_dyck_render(image, &mut rendered), TkStatus::TkOk);
            assert_eq!(take_string(rendered), "uuudddud" .to_owned() + "uudd" + "ud");
            let mut back: *mut TkDyckPath = ptr::null_mut();
            assert_eq!(tk_zigzag_unmap(image, 0, &mut back), TkStatus::TkOk);
            let mut word: *mut c_char = ptr::null_mut();
            assert_eq!(tk_dyck_render(back, &mut word), TkStatus::TkOk);
            assert_eq!(take_string(word), "uuduudududddud");
            tk_dyck_free(back);
            tk_dyck_free(image);
            tk_dyck_free(path);
        }
    }

    #[test]
    fn zigzag_range_error() {
        unsafe {
            let path = parse("ud");
            let mut image: *mut TkDyckPath = ptr::null_mut();
            assert_eq!(tk_zigzag_map(path, 5, &mut image), TkStatus::TkErrRange);
            assert!(image.is_null());
            tk_dyck_free(path);
        }
    }

    #[test]
    fn stats_json_contains_profile() {
        unsafe {
            let path = parse("uudd");
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(tk_dyck_stats_json(path, &mut json), TkStatus::TkOk);
            let text = take_string(json);
            let value: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert_eq!(value["ct"], 2);
            assert_eq!(value["cmt"], 2);
            assert_eq!(value["word"], "uudd");
            tk_dyck_free(path);
        }
    }

    #[test]
    fn bijections_through_the_abi() {
        unsafe {
            let c = CString::new("67435281").unwrap();
            let mut pi: *mut TkPermutation = ptr::null_mut();
            assert_eq!(tk_perm_parse(c.as_ptr(), &mut pi), TkStatus::TkOk);

            let mut path: *mut TkDyckPath = ptr::null_mut();
            assert_eq!(tk_kra_path(pi, &mut path), TkStatus::TkOk);
            let mut back: *mut TkPermutation = ptr::null_mut();
            assert_eq!(tk_kra_perm(path, &mut back), TkStatus::TkOk);
            let mut rendered: *mut c_char = ptr::null_mut();
            assert_eq!(tk_perm_render(back, &mut rendered), TkStatus::TkOk);
            assert_eq!(take_string(rendered), "67435281");

            // rs rejects a permutation containing the descending pattern.
            let mut rs_path: *mut TkDyckPath = ptr::null_mut();
            assert_eq!(tk_rs_path(pi, &mut rs_path), TkStatus::TkErrPattern);

            let mut composed: *mut TkPermutation = ptr::null_mut();
            assert_eq!(tk_composite(pi, 1, &mut composed), TkStatus::TkOk);
            let mut stats_json: *mut c_char = ptr::null_mut();
            assert_eq!(
                tk_perm_stats_json(composed, &mut stats_json),
                TkStatus::TkOk
            );
            let value: serde_json::Value =
                serde_json::from_str(&take_string(stats_json)).unwrap();
            assert_eq!(value["n"], 8);

            tk_perm_free(composed);
            tk_perm_free(back);
            tk_dyck_free(path);
            tk_perm_free(pi);
        }
    }

    #[test]
    fn status_messages_are_static() {
        unsafe {
            let msg = tk_status_message(TkStatus::TkErrRange);
            assert_eq!(CStr::from_ptr(msg).to_str().unwrap(), "offset out of range");
        }
    }
}
