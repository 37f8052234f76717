/* treestack C API — see ts_renderer_new / ts_renderer_render. */

#ifndef TREESTACK_H
#define TREESTACK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of an FFI call. Mirrors the CLI exit codes where they overlap.
typedef enum TsStatus {
  // Success.
  TS_STATUS_OK = 0,
  // The input program or an option value failed to parse.
  TS_STATUS_SYNTAX_ERROR = 1,
  // Layout failed (underflow, overflow, arity) or the scene cannot be
  // rendered in the requested format.
  TS_STATUS_LAYOUT_ERROR = 2,
  // A pointer argument was null or otherwise unusable.
  TS_STATUS_INVALID_ARGUMENT = 4,
  // A string argument was not valid UTF-8.
  TS_STATUS_INVALID_UTF8 = 5,
} TsStatus;

// Input syntax selector.
typedef enum TsSyntax {
  // Postfix DSL: `leaf`/`branch`/`fake`/`tree` statements.
  TS_SYNTAX_POSTFIX = 0,
  // Bracketed notation: `(LABEL child child ...)`.
  TS_SYNTAX_BRACKETED = 1,
} TsSyntax;

// Output format selector.
typedef enum TsFormat {
  TS_FORMAT_SVG = 0,
  TS_FORMAT_TEX = 1,
  TS_FORMAT_ASCII = 2,
  TS_FORMAT_JSON = 3,
  TS_FORMAT_QOBITEX = 4,
} TsFormat;

// Opaque renderer: configuration plus the last error message.
typedef struct TsRenderer TsRenderer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// ABI version of this header; bumped on incompatible changes.
uint32_t ts_abi_version(void);

// Create a renderer with default settings. Never returns null; release
// with [`ts_renderer_free`].
struct TsRenderer *ts_renderer_new(void);

// Free a renderer. Null is a no-op.
//
// # Safety
// `r` must be a pointer returned by [`ts_renderer_new`] that has not been
// freed already.
void ts_renderer_free(struct TsRenderer *r);

// Message of the last failed call on this renderer (empty if none). The
// pointer stays valid until the next call on the same renderer.
//
// # Safety
// `r` must be a live renderer pointer or null.
const char *ts_renderer_last_error(const struct TsRenderer *r);

// Set one configuration option. Keys and values use the config-file
// grammar (`font_size`, `strict`, `width.A`, ...); additionally
// `merge_preterminals` (true/false) controls the bracketed front end.
//
// # Safety
// `r` must be a live renderer pointer; `key` and `value` must be
// nul-terminated strings.
enum TsStatus ts_renderer_set_option(struct TsRenderer *r, const char *key, const char *value);

// Parse, lay out, and render a program. On success `*out` receives a
// newly allocated nul-terminated UTF-8 string (release it with
// [`ts_string_free`]); on failure `*out` is untouched and
// [`ts_renderer_last_error`] describes the problem. Several trees are
// stacked vertically into one document.
//
// # Safety
// `r` must be a live renderer pointer; `input` must be a nul-terminated
// string; `out` must be a valid pointer to a `char *`.
enum TsStatus ts_renderer_render(struct TsRenderer *r,
                                 const char *input,
                                 enum TsSyntax syntax,
                                 enum TsFormat format,
                                 char **out);

// Free a string returned by [`ts_renderer_render`]. Null is a no-op.
//
// # Safety
// `s` must be a pointer previously returned through the `out` parameter
// of [`ts_renderer_render`], not yet freed.
void ts_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREESTACK_H */
