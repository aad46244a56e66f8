#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cpt/multi_index.hpp"

namespace cpt {

enum class Status { CertifiedYes, CertifiedNo, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::CertifiedYes: return "CertifiedYes";
    case Status::CertifiedNo: return "CertifiedNo";
    default: return "Unknown";
  }
}

/// Witness payload for a CertifiedNo verdict: an index tuple that violates
/// an inequality, a direction vector, or an eigenpair (stored as lambda
/// followed by the vector).
struct IndexWitness {
  MultiIndex index;
  std::string detail;
};

struct VectorWitness {
  std::vector<double> x;
  double value = 0.0;
  std::string detail;
};

struct EigenWitness {
  double lambda = 0.0;
  std::vector<double> x;
  double residual = 0.0;
};

using Witness = std::variant<std::monostate, IndexWitness, VectorWitness, EigenWitness>;

/// Three-valued classification result with an evidence trail: the ordered
/// list of test names that fired on the way to the verdict.
struct Verdict {
  Status status = Status::Unknown;
  Witness witness;
  std::vector<std::string> evidence;

  static Verdict yes(std::string reason) {
    Verdict v;
    v.status = Status::CertifiedYes;
    v.evidence.push_back(std::move(reason));
    return v;
  }
  static Verdict no(Witness w, std::string reason) {
    Verdict v;
    v.status = Status::CertifiedNo;
    v.witness = std::move(w);
    v.evidence.push_back(std::move(reason));
    return v;
  }
  static Verdict unknown(std::string reason) {
    Verdict v;
    v.evidence.push_back(std::move(reason));
    return v;
  }
};

}  // namespace cpt
