#include "cpt/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cpt {

using nlohmann::json;

std::string tensor_to_json(const SymmetricTensor& a) {
  json entries = json::array();
  for (const auto& [k, v] : a.entries()) {
    entries.push_back({{"idx", k.indices()}, {"val", v}});
  }
  const json j{{"order", a.order()}, {"dim", a.dim()}, {"entries", entries}};
  return j.dump(2);
}

SymmetricTensor tensor_from_json(const std::string& text) {
  const json j = json::parse(text);
  SymmetricTensor a(j.at("order").get<int>(), j.at("dim").get<int>());
  for (const auto& e : j.at("entries")) {
    const auto idx = e.at("idx").get<std::vector<int>>();
    if (!std::is_sorted(idx.begin(), idx.end()))
      throw TensorError("non-canonical idx in tensor JSON (must be nondecreasing)");
    a.set(idx, e.at("val").get<double>());
  }
  return a;
}

SymmetricTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TensorError("cannot open tensor file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return tensor_from_json(buf.str());
}

void save_tensor(const SymmetricTensor& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TensorError("cannot write tensor file: " + path);
  out << tensor_to_json(a) << '\n';
}

std::string decomposition_to_json(const RankOneDecomposition& d) {
  json weights = json::array();
  json vectors = json::array();
  for (const RankOneTerm& t : d.terms()) {
    weights.push_back(t.weight);
    vectors.push_back(t.vector);
  }
  return json{{"weights", weights}, {"vectors", vectors}}.dump(2);
}

RankOneDecomposition decomposition_from_json(const std::string& text) {
  const json j = json::parse(text);
  const auto weights = j.at("weights").get<std::vector<double>>();
  const auto vectors = j.at("vectors").get<std::vector<std::vector<double>>>();
  if (weights.size() != vectors.size())
    throw TensorError("weights and vectors length mismatch in decomposition JSON");
  std::vector<RankOneTerm> terms;
  terms.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    terms.push_back({weights[i], vectors[i]});
  return RankOneDecomposition(std::move(terms));
}

std::vector<double> generating_vector_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.contains("base") && j.at("base").get<int>() != 0)
    throw TensorError("generating vector must declare base 0");
  return j.at("values").get<std::vector<double>>();
}

std::string generating_vector_to_json(const std::vector<double>& values) {
  return json{{"base", 0}, {"values", values}}.dump(2);
}

std::vector<double> load_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TensorError("cannot open vector file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return generating_vector_from_json(buf.str());
}

}  // namespace cpt
