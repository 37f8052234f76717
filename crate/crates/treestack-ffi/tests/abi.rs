//! Exercise the C ABI the way a foreign caller would: raw pointers,
//! status codes, and manual string ownership.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use treestack_ffi::{
    ts_abi_version, ts_renderer_free, ts_renderer_last_error, ts_renderer_new, ts_renderer_render,
    ts_renderer_set_option, ts_string_free, TsFormat, TsStatus, TsSyntax,
};

struct Renderer(*mut treestack_ffi::TsRenderer);

impl Renderer {
    fn new() -> Self {
        let r = ts_renderer_new();
        assert!(!r.is_null());
        Renderer(r)
    }

    fn set(&self, key: &str, value: &str) -> TsStatus {
        let key = CString::new(key).unwrap();
        let value = CString::new(value).unwrap();
        unsafe { ts_renderer_set_option(self.0, key.as_ptr(), value.as_ptr()) }
    }

    fn render(&self, input: &str, syntax: TsSyntax, format: TsFormat) -> Result<String, TsStatus> {
        let input = CString::new(input).unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        let status =
            unsafe { ts_renderer_render(self.0, input.as_ptr(), syntax, format, &mut out) };
        if status == TsStatus::TsStatusOk {
            assert!(!out.is_null());
            let s = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
            unsafe { ts_string_free(out) };
            Ok(s)
        } else {
            assert!(out.is_null(), "out must be untouched on failure");
            Err(status)
        }
    }

    fn last_error(&self) -> String {
        let p = unsafe { ts_renderer_last_error(self.0) };
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
    }
}

impl Drop for Renderer {
    fn drop(&mut self) {
        unsafe { ts_renderer_free(self.0) };
    }
}

#[test]
fn abi_version_is_stable() {
    assert_eq!(ts_abi_version(), 1);
}

#[test]
fn renders_the_same_bytes_as_the_library() {
    let r = Renderer::new();
    let program = "leaf \"NP\"\nleaf \"VP\"\nbranch 2 \"S\"\ntree\n";
    let got = r
        .render(program, TsSyntax::TsSyntaxPostfix, TsFormat::TsFormatJson)
        .unwrap();

    let commands = treestack::frontend::parse_postfix(program).unwrap();
    let out = treestack::layout::run_program(
        &commands,
        &treestack::layout::EngineConfig::default(),
        &treestack::metrics::MetricsConfig::default(),
    )
    .unwrap();
    let expect =
        treestack::backend::emit_json(&out.scenes[0], &treestack::backend::RenderStyle::default());
    assert_eq!(got, expect);
}

#[test]
fn options_flow_through() {
    let r = Renderer::new();
    assert_eq!(r.set("font_size", "12"), TsStatus::TsStatusOk);
    let got = r
        .render(
            "leaf \"A\"\ntree\n",
            TsSyntax::TsSyntaxPostfix,
            TsFormat::TsFormatJson,
        )
        .unwrap();
    assert!(got.contains("\"width\":7.2000"), "got: {got}");
}

#[test]
fn bracketed_and_merge_preterminals() {
    let r = Renderer::new();
    assert_eq!(r.set("merge_preterminals", "true"), TsStatus::TsStatusOk);
    let got = r
        .render(
            "(NP John)",
            TsSyntax::TsSyntaxBracketed,
            TsFormat::TsFormatQobitex,
        )
        .unwrap();
    assert_eq!(got, "\\leaf{NP\\\\John}\n\\tree\n");
}

#[test]
fn syntax_errors_set_status_and_message() {
    let r = Renderer::new();
    let err = r
        .render(
            "leap \"x\"",
            TsSyntax::TsSyntaxPostfix,
            TsFormat::TsFormatJson,
        )
        .unwrap_err();
    assert_eq!(err, TsStatus::TsStatusSyntaxError);
    assert!(r.last_error().contains("unknown command"));
}

#[test]
fn layout_errors_set_status_and_message() {
    let r = Renderer::new();
    let err = r
        .render(
            "branch 2 \"X\"",
            TsSyntax::TsSyntaxPostfix,
            TsFormat::TsFormatJson,
        )
        .unwrap_err();
    assert_eq!(err, TsStatus::TsStatusLayoutError);
    assert!(r.last_error().contains("underflow"));
}

#[test]
fn unknown_option_is_rejected() {
    let r = Renderer::new();
    assert_eq!(r.set("bogus", "1"), TsStatus::TsStatusSyntaxError);
    assert!(r.last_error().contains("unknown key"));
}

#[test]
fn null_pointers_are_rejected_not_crashed() {
    let r = Renderer::new();
    let mut out: *mut c_char = ptr::null_mut();
    let st = unsafe {
        ts_renderer_render(
            r.0,
            ptr::null(),
            TsSyntax::TsSyntaxPostfix,
            TsFormat::TsFormatJson,
            &mut out,
        )
    };
    assert_eq!(st, TsStatus::TsStatusInvalidArgument);
    let st = unsafe {
        ts_renderer_render(
            ptr::null_mut(),
            ptr::null(),
            TsSyntax::TsSyntaxPostfix,
            TsFormat::TsFormatJson,
            &mut out,
        )
    };
    assert_eq!(st, TsStatus::TsStatusInvalidArgument);
    unsafe { ts_renderer_free(ptr::null_mut()) };
    unsafe { ts_string_free(ptr::null_mut()) };
}

#[test]
fn invalid_utf8_is_rejected() {
    let r = Renderer::new();
    let bytes: &[u8] = b"leaf \"\xff\xfe\"\0";
    let mut out: *mut c_char = ptr::null_mut();
    let st = unsafe {
        ts_renderer_render(
            r.0,
            bytes.as_ptr() as *const c_char,
            TsSyntax::TsSyntaxPostfix,
            TsFormat::TsFormatJson,
            &mut out,
        )
    };
    assert_eq!(st, TsStatus::TsStatusInvalidUtf8);
}

#[test]
fn generated_header_declares_the_surface() {
    let header = include_str!("../include/treestack.h");
    for needle in [
        "typedef struct TsRenderer TsRenderer;",
        "ts_renderer_new",
        "ts_renderer_render",
        "ts_renderer_set_option",
        "ts_renderer_last_error",
        "ts_string_free",
        "TS_STATUS_LAYOUT_ERROR",
        "TS_FORMAT_QOBITEX",
    ] {
        assert!(header.contains(needle), "header is missing {needle}");
    }
}
