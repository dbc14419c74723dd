#pragma once

#include "lpaffine/body.hpp"

#include <string>

namespace lpaffine {

/// Builds a body from a JSON descriptor:
///   {"kind": "ball",         "params": {"radius": 1, "dim": 2}}
///   {"kind": "ellipsoid",    "params": {"matrix": [[2, 0], [0, 1]]}}
///   {"kind": "lr_ball",      "params": {"r": 3, "dim": 2}}
///   {"kind": "polytope",     "params": {"vertices": [[1, 1], [-1, 1], ...]}}
///   {"kind": "polar",        "body": {...}}
///   {"kind": "linear_image", "params": {"matrix": [[...]]}, "body": {...}}
/// Matrices are row-major lists of rows. Throws InvalidBody on malformed or
/// unknown descriptors.
ConvexBody parse_body(const std::string& json_text);

/// FNV-1a 64-bit hash of the descriptor's canonical serialization, as 16 hex
/// digits. Whitespace and key order do not change it.
std::string body_digest(const std::string& json_text);

}  // namespace lpaffine
