#include "cpt/experiment.hpp"

#include <chrono>
#include <ctime>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cpt/structured.hpp"

namespace cpt {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

SampleRng::SampleRng(std::uint64_t master_seed, std::uint64_t sample_id) {
  // Mix the pair so that nearby (seed, id) combinations decorrelate.
  std::uint64_t s = master_seed;
  std::uint64_t a = splitmix64(s);
  s ^= sample_id * 0xD1B54A32D192ED03ull;
  std::uint64_t b = splitmix64(s);
  state_ = a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2));
}

std::uint64_t SampleRng::next_bits() { return splitmix64(state_); }

double SampleRng::uniform() {
  // 53-bit mantissa, strictly inside (0, 1).
  const std::uint64_t bits = next_bits() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double SampleRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

PreprocessReport preprocess_pipeline(const SymmetricTensor& a, double eps) {
  PreprocessReport report;
  const ClosureResult closure = zero_entry_closure(a, eps);
  report.step0_pass = !closure.changed;
  if (closure.changed) {
    if (closure.witness) report.step0_witness = closure.witness->second;
    return report;
  }
  const Verdict step1 = one_duplicated_check(a);
  report.step1_pass = step1.status != Status::CertifiedNo;
  if (!report.step1_pass) {
    if (const auto* w = std::get_if<IndexWitness>(&step1.witness)) {
      report.step1_witness = w->index;
    }
    return report;
  }
  report.forwarded = true;
  return report;
}

HankelSample hankel_from_nodes(const std::vector<double>& xi, int m, int n) {
  std::vector<double> weights(xi.size(), 1.0);
  VandermondeSum vs = vandermonde_sum(xi, weights, m, n);
  SymmetricTensor& b = vs.tensor;
  const double alpha = std::min(b.min_entry(), 0.0);
  SymmetricTensor a = b;
  if (alpha != 0.0) {
    a = b - SymmetricTensor::all_ones(m, n) * alpha;
  }
  HankelSample sample;
  sample.tensor = std::move(a);
  sample.alpha = alpha;
  sample.xi = xi;
  std::vector<RankOneTerm> terms = vs.decomposition.terms();
  if (alpha != 0.0) {
    terms.push_back({-alpha, std::vector<double>(static_cast<std::size_t>(n), 1.0)});
  }
  sample.shifted_decomposition = RankOneDecomposition(std::move(terms));
  return sample;
}

HankelSample sample_hankel(const ExperimentConfig& cfg, int sample_id) {
  SampleRng rng(cfg.seed, static_cast<std::uint64_t>(sample_id));
  std::vector<double> xi(static_cast<std::size_t>(cfg.r));
  for (double& v : xi) v = rng.normal();
  return hankel_from_nodes(xi, cfg.m, cfg.n);
}

SymmetricSample sample_symmetric(const ExperimentConfig& cfg, int sample_id) {
  SampleRng rng(cfg.seed, static_cast<std::uint64_t>(sample_id));
  SymmetricTensor b(cfg.m, cfg.n);
  const auto indices = canonical_indices(cfg.m, cfg.n);
  for (const MultiIndex& idx : indices) {
    const double coeff = rng.normal() + cfg.t;
    // (sum_j e^{(i_j)})^m expands over all order-m tuples drawn from the
    // multiset idx; accumulate by canonical representative with counts.
    // The entry of (sum_{i in S} e^{(i)})^m at tuple (j_1..j_m) is the
    // number of ways each j_k appears, i.e. 1 if every j_k is in S... but
    // with a multiset S the rank-one vector is v = sum of e^{(i_j)} with
    // multiplicity, so entries are v_{j_1}...v_{j_m}.
    std::vector<double> v(static_cast<std::size_t>(cfg.n), 0.0);
    for (const int i : idx.indices()) v[static_cast<std::size_t>(i - 1)] += 1.0;
    for (const MultiIndex& target : indices) {
      double prod = coeff;
      for (const int j : target.indices()) {
        prod *= v[static_cast<std::size_t>(j - 1)];
      }
      if (prod != 0.0) b.add(target.indices(), prod);
    }
  }
  const double rho = std::min(b.min_entry(), 0.0);
  SymmetricSample sample;
  sample.tensor = (rho != 0.0)
                      ? b - SymmetricTensor::all_ones(cfg.m, cfg.n) * rho
                      : b;
  sample.rho = rho;
  return sample;
}

namespace {

// Per-sample time is thread CPU time, not wall time: the CSV must be
// byte-identical for a fixed seed across worker counts, and wall time picks
// up scheduler preemption that would flip the ms column between runs.
long long thread_cpu_ns() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return ts.tv_sec * 1000000000LL + ts.tv_nsec;
}

ExperimentRecord run_one(const ExperimentConfig& cfg, int sample_id) {
  const long long start_ns = thread_cpu_ns();
  SymmetricTensor tensor(cfg.m, cfg.n);
  double alpha = 0.0;
  if (cfg.kind == ExperimentKind::Hankel) {
    HankelSample s = sample_hankel(cfg, sample_id);
    tensor = std::move(s.tensor);
    alpha = s.alpha;
  } else {
    SymmetricSample s = sample_symmetric(cfg, sample_id);
    tensor = std::move(s.tensor);
    alpha = s.rho;
  }
  const PreprocessReport report = preprocess_pipeline(tensor, cfg.eps);
  ExperimentRecord record;
  record.sample_id = sample_id;
  record.alpha = alpha;
  if (!report.step0_pass) {
    record.excluded_by = ExcludedBy::Step0;
  } else if (!report.step1_pass) {
    record.excluded_by = ExcludedBy::Step1;
  } else {
    record.excluded_by = ExcludedBy::None;
  }
  record.elapsed_ms =
      static_cast<long>((thread_cpu_ns() - start_ns) / 1000000);
  return record;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg,
                                 std::ostream& csv) {
  if (cfg.samples < 0) throw std::invalid_argument("samples must be >= 0");
  std::vector<ExperimentRecord> records(
      static_cast<std::size_t>(cfg.samples));
  const int workers = std::max(1, cfg.workers);
  if (workers == 1 || cfg.samples <= 1) {
    for (int i = 0; i < cfg.samples; ++i) {
      records[static_cast<std::size_t>(i)] = run_one(cfg, i);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < cfg.samples; i += workers) {
          records[static_cast<std::size_t>(i)] = run_one(cfg, i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  csv << "sample_id,alpha,excluded_by,elapsed_ms\n";
  ExperimentSummary summary;
  summary.samples = cfg.samples;
  for (const ExperimentRecord& rec : records) {
    std::ostringstream line;
    line.precision(17);
    line << rec.sample_id << ',' << rec.alpha << ','
         << to_string(rec.excluded_by) << ',' << rec.elapsed_ms << '\n';
    csv << line.str();
    if (rec.excluded_by == ExcludedBy::Step0) ++summary.excluded_step0;
    if (rec.excluded_by == ExcludedBy::Step1) ++summary.excluded_step1;
  }
  if (summary.samples > 0) {
    summary.excluded_fraction =
        static_cast<double>(summary.excluded_step0 + summary.excluded_step1) /
        static_cast<double>(summary.samples);
  }
  return summary;
}

TcpReport tcp_residual(const SymmetricTensor& a, const std::vector<double>& q,
                       const std::vector<double>& x, double tol) {
  const auto n = static_cast<std::size_t>(a.dim());
  if (q.size() != n || x.size() != n) {
    throw TensorError("tcp vectors must have length equal to the dimension");
  }
  const std::vector<double> ax = cpt::apply(a, x);
  bool feasible = true;
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = q[i] + ax[i];
    if (x[i] < -tol || w < -tol) feasible = false;
    gap += x[i] * w;
  }
  TcpReport report;
  report.feasible = feasible;
  report.complementarity_gap = std::abs(gap);
  report.solution = feasible && report.complementarity_gap <= tol;
  return report;
}

}  // namespace cpt
