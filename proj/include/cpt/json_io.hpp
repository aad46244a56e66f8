#pragma once

#include <string>

#include "cpt/tensor.hpp"

namespace cpt {

/// Tensor wire format: {"order": m, "dim": n, "entries": [{"idx": [...],
/// "val": x}, ...]}. idx is 1-based, strictly canonical (nondecreasing);
/// readers reject non-canonical tuples. Absent indices are zero.
std::string tensor_to_json(const SymmetricTensor& a);
SymmetricTensor tensor_from_json(const std::string& text);

SymmetricTensor load_tensor(const std::string& path);
void save_tensor(const SymmetricTensor& a, const std::string& path);

/// Decomposition wire format: {"weights": [...], "vectors": [[...], ...]}.
std::string decomposition_to_json(const RankOneDecomposition& d);
RankOneDecomposition decomposition_from_json(const std::string& text);

/// Generating vector file: {"base": 0, "values": [...]} or a bare array.
std::vector<double> generating_vector_from_json(const std::string& text);
std::string generating_vector_to_json(const std::vector<double>& values);

std::vector<double> load_vector(const std::string& path);

}  // namespace cpt
