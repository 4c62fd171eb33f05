#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace simclust {

/// Cluster identifier. Non-negative values are real clusters numbered in
/// discovery order; negative values are pseudo-labels.
using ClusterId = std::int32_t;

inline constexpr ClusterId kNoise = -1;
/// Sankey target for users without any language-cluster label.
inline constexpr ClusterId kUndefined = -2;

/// id -> cluster label. Ordered so that every traversal is deterministic.
using LabelMap = std::map<std::string, ClusterId>;

inline std::string label_to_string(ClusterId id) {
    if (id == kNoise) return "NOISE";
    if (id == kUndefined) return "UNDEFINED";
    return std::to_string(id);
}

/// Inverse of label_to_string. Throws ValidationError on garbage.
ClusterId label_from_string(const std::string& text);

}  // namespace simclust
