//! C ABI for the treestack tree typesetter.
//!
//! The surface is a single opaque renderer handle plus status codes, so any
//! language with a C FFI can drive the engine:
//!
//! ```c
//! TsRenderer *r = ts_renderer_new();
//! ts_renderer_set_option(r, "font_size", "12");
//! char *svg = NULL;
//! TsStatus st = ts_renderer_render(r, "leaf \"NP\"\ntree\n",
//!                                  TS_SYNTAX_POSTFIX, TS_FORMAT_SVG, &svg);
//! if (st != TS_STATUS_OK) { fputs(ts_renderer_last_error(r), stderr); }
//! ts_string_free(svg);
//! ts_renderer_free(r);
//! ```
//!
//! A renderer must not be used from two threads at once; distinct renderers
//! are independent. Strings returned through `out` parameters are owned by
//! the caller and released with [`ts_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use treestack::backend::{emit_ascii, emit_json, emit_latex_picture, emit_qobitex, emit_svg};
use treestack::config::{apply_config, Settings};
use treestack::frontend::{compile_bracketed, parse_postfix, CompileOptions};
use treestack::layout::run_program;
use treestack::scene::Scene;

/// Result of an FFI call. Mirrors the CLI exit codes where they overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    /// Success.
    TsStatusOk = 0,
    /// The input program or an option value failed to parse.
    TsStatusSyntaxError = 1,
    /// Layout failed (underflow, overflow, arity) or the scene cannot be
    /// rendered in the requested format.
    TsStatusLayoutError = 2,
    /// A pointer argument was null or otherwise unusable.
    TsStatusInvalidArgument = 4,
    /// A string argument was not valid UTF-8.
    TsStatusInvalidUtf8 = 5,
}

/// Input syntax selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsSyntax {
    /// Postfix DSL: `leaf`/`branch`/`fake`/`tree` statements.
    TsSyntaxPostfix = 0,
    /// Bracketed notation: `(LABEL child child ...)`.
    TsSyntaxBracketed = 1,
}

/// Output format selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsFormat {
    TsFormatSvg = 0,
    TsFormatTex = 1,
    TsFormatAscii = 2,
    TsFormatJson = 3,
    TsFormatQobitex = 4,
}

/// Opaque renderer: configuration plus the last error message.
pub struct TsRenderer {
    settings: Settings,
    merge_preterminals: bool,
    last_error: CString,
}

impl TsRenderer {
    fn set_error(&mut self, message: String) {
        self.last_error = CString::new(message.replace('\0', "?"))
            .unwrap_or_else(|_| CString::new("error").unwrap());
    }
}

fn renderer<'a>(ptr: *mut TsRenderer) -> Option<&'a mut TsRenderer> {
    unsafe { ptr.as_mut() }
}

fn c_str<'a>(ptr: *const c_char) -> Result<Option<&'a str>, ()> {
    if ptr.is_null() {
        return Ok(None);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map(Some)
        .map_err(|_| ())
}

/// ABI version of this header; bumped on incompatible changes.
#[no_mangle]
pub extern "C" fn ts_abi_version() -> u32 {
    1
}

/// Create a renderer with default settings. Never returns null; release
/// with [`ts_renderer_free`].
#[no_mangle]
pub extern "C" fn ts_renderer_new() -> *mut TsRenderer {
    Box::into_raw(Box::new(TsRenderer {
        settings: Settings::default(),
        merge_preterminals: false,
        last_error: CString::new("").unwrap(),
    }))
}

/// Free a renderer. Null is a no-op.
///
/// # Safety
/// `r` must be a pointer returned by [`ts_renderer_new`] that has not been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn ts_renderer_free(r: *mut TsRenderer) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

/// Message of the last failed call on this renderer (empty if none). The
/// pointer stays valid until the next call on the same renderer.
///
/// # Safety
/// `r` must be a live renderer pointer or null.
#[no_mangle]
pub unsafe extern "C" fn ts_renderer_last_error(r: *const TsRenderer) -> *const c_char {
    match unsafe { r.as_ref() } {
        Some(renderer) => renderer.last_error.as_ptr(),
        None => ptr::null(),
    }
}

/// Set one configuration option. Keys and values use the config-file
/// grammar (`font_size`, `strict`, `width.A`, ...); additionally
/// `merge_preterminals` (true/false) controls the bracketed front end.
///
/// # Safety
/// `r` must be a live renderer pointer; `key` and `value` must be
/// nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ts_renderer_set_option(
    r: *mut TsRenderer,
    key: *const c_char,
    value: *const c_char,
) -> TsStatus {
    let Some(renderer) = renderer(r) else {
        return TsStatus::TsStatusInvalidArgument;
    };
    let (key, value) = match (c_str(key), c_str(value)) {
        (Ok(Some(k)), Ok(Some(v))) => (k, v),
        (Err(_), _) | (_, Err(_)) => {
            renderer.set_error("option key/value is not valid UTF-8".into());
            return TsStatus::TsStatusInvalidUtf8;
        }
        _ => {
            renderer.set_error("option key and value must not be null".into());
            return TsStatus::TsStatusInvalidArgument;
        }
    };
    if key == "merge_preterminals" {
        match value {
            "true" => renderer.merge_preterminals = true,
            "false" => renderer.merge_preterminals = false,
            _ => {
                renderer.set_error(format!(
                    "invalid boolean for `merge_preterminals`: `{value}`"
                ));
                return TsStatus::TsStatusSyntaxError;
            }
        }
        return TsStatus::TsStatusOk;
    }
    match apply_config(&mut renderer.settings, &format!("{key} = {value}")) {
        Ok(()) => TsStatus::TsStatusOk,
        Err(e) => {
            renderer.set_error(e.message);
            TsStatus::TsStatusSyntaxError
        }
    }
}

/// Parse, lay out, and render a program. On success `*out` receives a
/// newly allocated nul-terminated UTF-8 string (release it with
/// [`ts_string_free`]); on failure `*out` is untouched and
/// [`ts_renderer_last_error`] describes the problem. Several trees are
/// stacked vertically into one document.
///
/// # Safety
/// `r` must be a live renderer pointer; `input` must be a nul-terminated
/// string; `out` must be a valid pointer to a `char *`.
#[no_mangle]
pub unsafe extern "C" fn ts_renderer_render(
    r: *mut TsRenderer,
    input: *const c_char,
    syntax: TsSyntax,
    format: TsFormat,
    out: *mut *mut c_char,
) -> TsStatus {
    let Some(renderer) = renderer(r) else {
        return TsStatus::TsStatusInvalidArgument;
    };
    if out.is_null() {
        renderer.set_error("output pointer must not be null".into());
        return TsStatus::TsStatusInvalidArgument;
    }
    let text = match c_str(input) {
        Ok(Some(t)) => t,
        Ok(None) => {
            renderer.set_error("input must not be null".into());
            return TsStatus::TsStatusInvalidArgument;
        }
        Err(_) => {
            renderer.set_error("input is not valid UTF-8".into());
            return TsStatus::TsStatusInvalidUtf8;
        }
    };

    let commands = match syntax {
        TsSyntax::TsSyntaxPostfix => parse_postfix(text),
        TsSyntax::TsSyntaxBracketed => compile_bracketed(
            text,
            &CompileOptions {
                merge_preterminals: renderer.merge_preterminals,
            },
        ),
    };
    let commands = match commands {
        Ok(c) => c,
        Err(e) => {
            renderer.set_error(format!("syntax error: {e}"));
            return TsStatus::TsStatusSyntaxError;
        }
    };

    let rendered = if matches!(format, TsFormat::TsFormatQobitex) {
        emit_qobitex(&commands)
    } else {
        let output = match run_program(
            &commands,
            &renderer.settings.engine,
            &renderer.settings.metrics,
        ) {
            Ok(o) => o,
            Err(e) => {
                renderer.set_error(format!("layout error: {e}"));
                return TsStatus::TsStatusLayoutError;
            }
        };
        let scene = if output.scenes.len() == 1 {
            output.scenes.into_iter().next().unwrap()
        } else {
            Scene::stack(&output.scenes, renderer.settings.tree_gap)
        };
        let style = &renderer.settings.style;
        match format {
            TsFormat::TsFormatSvg => emit_svg(&scene, style),
            TsFormat::TsFormatAscii => emit_ascii(&scene, style),
            TsFormat::TsFormatJson => emit_json(&scene, style),
            TsFormat::TsFormatTex => match emit_latex_picture(&scene, style) {
                Ok(t) => t,
                Err(e) => {
                    renderer.set_error(format!("render error: {e}"));
                    return TsStatus::TsStatusLayoutError;
                }
            },
            TsFormat::TsFormatQobitex => unreachable!("handled above"),
        }
    };

    match CString::new(rendered) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            TsStatus::TsStatusOk
        }
        Err(_) => {
            renderer.set_error("rendered output contains an interior nul byte".into());
            TsStatus::TsStatusLayoutError
        }
    }
}

/// Free a string returned by [`ts_renderer_render`]. Null is a no-op.
///
/// # Safety
/// `s` must be a pointer previously returned through the `out` parameter
/// of [`ts_renderer_render`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
