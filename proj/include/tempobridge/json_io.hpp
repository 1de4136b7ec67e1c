#pragma once

#include <string>

#include "tempobridge/structures.hpp"

namespace tempobridge {

// JSON interchange format. One object per structure:
//
//   {
//     "kind": "ks" | "lts" | "kts" | "kmts",
//     "states": ["s0", "s1", ...],
//     "actions": ["a", "b", ...],          // absent for ks; kmts uses "a!"/"a?"
//     "props": ["p", ...],                 // absent for lts
//     "transitions": [
//       {"src": "s0", "dst": "s1", "labels": ["a"]}   // ks omits "labels";
//     ],                                              // [] is the silent label
//     "labeling": {"s1": {"p": "true"}}    // absent for lts; values "true",
//   }                                      // "false", and (kmts only) "bot"
//
// Keys a kind does not use must be absent. "labeling" may be omitted or
// partial: unlisted (state, prop) pairs read as "false". Unknown keys and
// ill-typed values are rejected with the JSON path of the offender. The
// loaded structure is fully validated (see Structure::validate) before it
// is returned.
//
// Loading failures throw std::invalid_argument (malformed JSON, schema or
// validation errors) or std::runtime_error (unreadable file).

[[nodiscard]] Structure load_structure(const std::string& text);
[[nodiscard]] Structure load_structure_file(const std::string& path);

// Serializes with the key order shown above, a full labeling table, and
// 2-space indentation. load(save(m)) reproduces m exactly.
[[nodiscard]] std::string save_structure(const Structure& m);
void save_structure_file(const Structure& m, const std::string& path);

}  // namespace tempobridge
