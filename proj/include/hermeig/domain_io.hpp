#pragma once

#include <string>
#include <vector>

#include "hermeig/domain.hpp"

namespace hermeig {

// Parses a domain specification document (JSON syntax):
//   {"kind": "rectangle", "a": 1.0, "b": 0.5}
//   {"kind": "strip", "a": 1.0}
//   {"kind": "half_strip", "a": 1.0, "top": 0.0}
//   {"kind": "disk", "R": 1.0}
//   {"kind": "convex_polygon", "vertices": [[x, y], ...]}
//   {"kind": "profile", "a": 1.0, "p_poly": [c0, c1, ...],
//    "q": "mirror" | "unbounded"}           (p(x) = sum c_i x^i)
//   {"kind": "profile", "a": 1.0, "p_samples": [[x, y], ...], "q": ...}
//   {"kind": "dumbbell", "side": 1.0, "corridor_len": 1.0, "corridor_width": 0.2}
// An optional "id" overrides the generated identifier. The parsed domain is
// validated before being returned.
Domain domain_from_json(const std::string& json_text);
Domain load_domain_file(const std::string& path);

// All *.json domains in a directory, sorted by filename.
std::vector<Domain> load_domain_dir(const std::string& dir);

}  // namespace hermeig
