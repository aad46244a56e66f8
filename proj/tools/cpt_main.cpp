#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpt/cp.hpp"
#include "cpt/experiment.hpp"
#include "cpt/json_io.hpp"
#include "cpt/spectral.hpp"
#include "cpt/structured.hpp"
#include "cpt/tensor.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertifiedNo = 2;
constexpr int kExitInputError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cpt::TensorError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw cpt::TensorError("cannot write file: " + path);
  out << text;
}

std::string describe_witness(const cpt::Witness& w) {
  std::ostringstream out;
  out.precision(12);
  if (const auto* iw = std::get_if<cpt::IndexWitness>(&w)) {
    out << "index (";
    const auto& idx = iw->index.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out << (i ? "," : "") << idx[i];
    }
    out << ")";
    if (!iw->detail.empty()) out << ": " << iw->detail;
  } else if (const auto* vw = std::get_if<cpt::VectorWitness>(&w)) {
    out << "vector [";
    for (std::size_t i = 0; i < vw->x.size(); ++i) {
      out << (i ? "," : "") << vw->x[i];
    }
    out << "] value " << vw->value;
    if (!vw->detail.empty()) out << ": " << vw->detail;
  } else if (const auto* ew = std::get_if<cpt::EigenWitness>(&w)) {
    out << "eigenpair lambda " << ew->lambda << ", x [";
    for (std::size_t i = 0; i < ew->x.size(); ++i) {
      out << (i ? "," : "") << ew->x[i];
    }
    out << "], residual " << ew->residual;
  } else {
    out << "(none)";
  }
  return out.str();
}

void print_verdict(const std::string& label, const cpt::Verdict& v) {
  std::cout << label << ": " << cpt::to_string(v.status) << "\n";
  if (v.status == cpt::Status::CertifiedNo) {
    std::cout << "  witness: " << describe_witness(v.witness) << "\n";
  }
  for (const std::string& e : v.evidence) {
    std::cout << "  evidence: " << e << "\n";
  }
}

/// Subprocess decomposer: tensor JSON on stdin, decomposition JSON or the
/// literal token NONE on stdout.
cpt::DecomposerHook subprocess_decomposer(std::string command) {
  return [command = std::move(command)](const cpt::SymmetricTensor& a)
             -> std::optional<cpt::RankOneDecomposition> {
    const std::string payload = cpt::tensor_to_json(a);
    const std::string tmp = "/tmp/cpt_decomposer_input.json";
    write_file(tmp, payload);
    const std::string full = command + " < " + tmp;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(full.c_str(), "r"),
                                               pclose);
    if (!pipe) return std::nullopt;
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe.get())) {
      out.append(buf, got);
    }
    const auto first = out.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return std::nullopt;
    const auto last = out.find_last_not_of(" \t\r\n");
    const std::string trimmed = out.substr(first, last - first + 1);
    if (trimmed == "NONE") return std::nullopt;
    try {
      return cpt::decomposition_from_json(trimmed);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
}

struct ConstructArgs {
  std::string kind;
  std::string out;
  int m = 3;
  int n = 3;
  std::string vector_file;   // hankel / cauchy generating vector
  std::string root_file;     // circulant root tensor
  std::string band_file;     // toeplitz band tensor JSON (offsets as idx)
  std::string graph_file;    // hypergraph text
  std::string decomposition_file;  // rank1 terms
  int i = 1;
  int j = 2;
  double alpha = 1.0;
  bool adjacency = false;
};

int run_construct(const ConstructArgs& args) {
  cpt::SymmetricTensor tensor(args.m, args.n);
  if (args.kind == "hankel") {
    tensor = cpt::hankel_from_vector(
        cpt::generating_vector_from_json(read_file(args.vector_file)), args.m,
        args.n);
  } else if (args.kind == "cauchy") {
    const std::vector<double> c =
        cpt::generating_vector_from_json(read_file(args.vector_file));
    tensor = cpt::cauchy_from_vector(c, args.m);
  } else if (args.kind == "hilbert") {
    tensor = cpt::hilbert_tensor(args.m, args.n);
  } else if (args.kind == "circulant") {
    const cpt::SymmetricTensor root =
        cpt::tensor_from_json(read_file(args.root_file));
    const cpt::CirculantResult res = cpt::circulant_from_root(root, args.n);
    if (!res.symmetric) {
      std::cerr << "circulant fill is not symmetric for this root\n";
      return kExitInputError;
    }
    tensor = *res.tensor;
  } else if (args.kind == "toeplitz") {
    const cpt::SymmetricTensor band =
        cpt::tensor_from_json(read_file(args.band_file));
    std::map<std::vector<int>, double> offsets;
    for (const auto& [idx, val] : band.entries()) {
      const auto& ids = idx.indices();
      std::vector<int> off;
      for (std::size_t k = 1; k < ids.size(); ++k) {
        off.push_back(ids[k] - ids[0]);
      }
      offsets[off] = val;
    }
    const cpt::ToeplitzResult res =
        cpt::toeplitz_from_band(offsets, args.m, args.n);
    if (!res.symmetric) {
      std::cerr << "toeplitz fill is not symmetric for this band\n";
      return kExitInputError;
    }
    tensor = *res.tensor;
  } else if (args.kind == "laplacian") {
    const cpt::Hypergraph g =
        cpt::Hypergraph::from_text(read_file(args.graph_file));
    const cpt::HypergraphTensors t = cpt::hypergraph_tensors(g);
    tensor = args.adjacency ? t.adjacency : t.signless_laplacian;
  } else if (args.kind == "gap") {
    tensor = cpt::gap_family(args.i, args.j, args.alpha, args.m, args.n).tensor;
  } else if (args.kind == "rank1") {
    const cpt::RankOneDecomposition d =
        cpt::decomposition_from_json(read_file(args.decomposition_file));
    tensor = cpt::make_from_rank_one(d.terms(), args.m);
  } else {
    std::cerr << "unknown kind: " << args.kind << "\n";
    return kExitInputError;
  }
  cpt::save_tensor(tensor, args.out);
  std::cout << "wrote " << args.out << " (order " << tensor.order() << ", dim "
            << tensor.dim() << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetric tensor construction, classification, and experiments"};
  app.require_subcommand(1);

  // construct
  ConstructArgs cargs;
  CLI::App* construct = app.add_subcommand("construct", "build a structured tensor");
  construct->add_option("--kind", cargs.kind, "family")
      ->required()
      ->check(CLI::IsMember({"hankel", "cauchy", "hilbert", "circulant",
                             "toeplitz", "laplacian", "gap", "rank1"}));
  construct->add_option("-o,--out", cargs.out, "output tensor JSON")->required();
  construct->add_option("--m", cargs.m, "order");
  construct->add_option("--n", cargs.n, "dimension");
  construct->add_option("--vector", cargs.vector_file, "generating vector JSON");
  construct->add_option("--root", cargs.root_file, "circulant root tensor JSON");
  construct->add_option("--band", cargs.band_file, "toeplitz band tensor JSON");
  construct->add_option("--graph", cargs.graph_file, "hypergraph text file");
  construct->add_option("--decomposition", cargs.decomposition_file,
                        "rank-one decomposition JSON");
  construct->add_option("--i", cargs.i, "gap family index i");
  construct->add_option("--j", cargs.j, "gap family index j");
  construct->add_option("--alpha", cargs.alpha, "gap family coefficient");
  construct->add_flag("--adjacency", cargs.adjacency,
                      "emit the adjacency tensor instead of the signless Laplacian");

  // classify
  std::string classify_path, checks = "dnn,cp", decomposer_cmd,
              attached_decomposition;
  double classify_tol = 1e-12;
  int restarts = 200;
  std::uint64_t seed = 0;
  bool strong = false, greedy = false;
  CLI::App* classify = app.add_subcommand("classify", "DNN/CP classification");
  classify->add_option("tensor", classify_path, "tensor JSON")->required();
  classify->add_option("--checks", checks, "comma list from {dnn,cp,sdnn,scp}");
  classify->add_option("--tol", classify_tol, "zero tolerance");
  classify->add_option("--restarts", restarts, "eigen search restarts");
  classify->add_option("--seed", seed, "eigen search seed");
  classify->add_option("--decomposer", decomposer_cmd,
                       "external decomposer command (tensor JSON on stdin, "
                       "decomposition JSON or NONE on stdout)");
  classify->add_option("--with-decomposition", attached_decomposition,
                       "attach a candidate decomposition JSON");
  classify->add_flag("--strong", strong, "strict variants (SDNN/SCP)");
  classify->add_flag("--greedy", greedy, "enable the greedy fitting fallback");

  // preprocess
  std::string pre_path;
  double pre_eps = 1e-12;
  CLI::App* preprocess = app.add_subcommand("preprocess", "dominance pipeline");
  preprocess->add_option("tensor", pre_path, "tensor JSON")->required();
  preprocess->add_option("--eps", pre_eps, "zero tolerance");

  // experiment
  cpt::ExperimentConfig cfg;
  std::string exp_kind, exp_out;
  CLI::App* experiment = app.add_subcommand("experiment", "randomized exclusion runs");
  experiment->add_option("kind", exp_kind, "hankel or symmetric")
      ->required()
      ->check(CLI::IsMember({"hankel", "symmetric"}));
  experiment->add_option("--m", cfg.m, "order")->required();
  experiment->add_option("--n", cfg.n, "dimension")->required();
  experiment->add_option("--r", cfg.r, "hankel node count");
  experiment->add_option("--t", cfg.t, "symmetric coefficient shift");
  experiment->add_option("--samples", cfg.samples, "sample count")->required();
  experiment->add_option("--seed", cfg.seed, "master seed");
  experiment->add_option("--workers", cfg.workers, "worker threads");
  experiment->add_option("--eps", cfg.eps, "zero tolerance");
  experiment->add_option("--out", exp_out, "CSV output path")->required();

  // tcp
  std::string tcp_path, tcp_q, tcp_x;
  double tcp_tol = 1e-8;
  CLI::App* tcp = app.add_subcommand("tcp", "complementarity residual check");
  tcp->add_option("tensor", tcp_path, "tensor JSON")->required();
  tcp->add_option("--q", tcp_q, "q vector file")->required();
  tcp->add_option("--x", tcp_x, "candidate solution file")->required();
  tcp->add_option("--tol", tcp_tol, "feasibility tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) {
      return run_construct(cargs);
    }

    if (classify->parsed()) {
      const cpt::SymmetricTensor tensor = cpt::load_tensor(classify_path);
      std::optional<cpt::RankOneDecomposition> attached;
      if (!attached_decomposition.empty()) {
        attached =
            cpt::decomposition_from_json(read_file(attached_decomposition));
      }
      bool any_no = false;
      std::stringstream list(checks);
      std::string item;
      while (std::getline(list, item, ',')) {
        if (item == "dnn" || item == "sdnn") {
          cpt::ClassifyOptions opts;
          opts.strong = strong || item == "sdnn";
          opts.decomposition = attached;
          opts.restarts = restarts;
          opts.seed = seed;
          const cpt::Verdict v = cpt::classify_dnn(tensor, opts);
          print_verdict(item, v);
          any_no = any_no || v.status == cpt::Status::CertifiedNo;
        } else if (item == "cp" || item == "scp") {
          cpt::CpOptions opts;
          opts.decomposition = attached;
          opts.eps = classify_tol;
          opts.greedy_fallback = greedy;
          if (!decomposer_cmd.empty()) {
            opts.decomposer = subprocess_decomposer(decomposer_cmd);
          }
          const cpt::CpResult res = cpt::classify_cp(tensor, opts);
          cpt::Verdict v = res.verdict;
          if (item == "scp" && v.status == cpt::Status::CertifiedYes) {
            const bool spans =
                res.decomposition && res.decomposition->spans_full_space();
            if (!spans) v = cpt::Verdict::unknown("CP certificate does not span");
          }
          print_verdict(item, v);
          if (v.status == cpt::Status::CertifiedYes && res.decomposition) {
            std::cout << "  decomposition terms: "
                      << res.decomposition->terms().size() << "\n";
          }
          any_no = any_no || v.status == cpt::Status::CertifiedNo;
        } else if (!item.empty()) {
          std::cerr << "unknown check: " << item << "\n";
          return kExitInputError;
        }
      }
      return any_no ? kExitCertifiedNo : kExitOk;
    }

    if (preprocess->parsed()) {
      const cpt::SymmetricTensor tensor = cpt::load_tensor(pre_path);
      const cpt::PreprocessReport report =
          cpt::preprocess_pipeline(tensor, pre_eps);
      std::cout << "step0: " << (report.step0_pass ? "pass" : "fail") << "\n";
      if (report.step0_witness) {
        std::cout << "  witness index: (";
        const auto& ids = report.step0_witness->indices();
        for (std::size_t i = 0; i < ids.size(); ++i) {
          std::cout << (i ? "," : "") << ids[i];
        }
        std::cout << ")\n";
      }
      if (report.step0_pass) {
        std::cout << "step1: " << (report.step1_pass ? "pass" : "fail") << "\n";
        if (report.step1_witness) {
          std::cout << "  witness index: (";
          const auto& ids = report.step1_witness->indices();
          for (std::size_t i = 0; i < ids.size(); ++i) {
            std::cout << (i ? "," : "") << ids[i];
          }
          std::cout << ")\n";
        }
      }
      std::cout << "forwarded: " << (report.forwarded ? "yes" : "no") << "\n";
      return report.forwarded ? kExitOk : kExitCertifiedNo;
    }

    if (experiment->parsed()) {
      cfg.kind = (exp_kind == "hankel") ? cpt::ExperimentKind::Hankel
                                        : cpt::ExperimentKind::Symmetric;
      std::ofstream csv(exp_out);
      if (!csv) {
        std::cerr << "cannot write " << exp_out << "\n";
        return kExitInputError;
      }
      const cpt::ExperimentSummary s = cpt::run_experiment(cfg, csv);
      std::cout.precision(4);
      std::cout << "samples: " << s.samples << "\n"
                << "excluded step0: " << s.excluded_step0 << "\n"
                << "excluded step1: " << s.excluded_step1 << "\n"
                << "excluded: " << 100.0 * s.excluded_fraction << "%\n";
      return kExitOk;
    }

    if (tcp->parsed()) {
      const cpt::SymmetricTensor tensor = cpt::load_tensor(tcp_path);
      const std::vector<double> q = cpt::load_vector(tcp_q);
      const std::vector<double> x = cpt::load_vector(tcp_x);
      const cpt::TcpReport report = cpt::tcp_residual(tensor, q, x, tcp_tol);
      std::cout.precision(12);
      std::cout << "feasible: " << (report.feasible ? "yes" : "no") << "\n"
                << "complementarity_gap: " << report.complementarity_gap << "\n"
                << "solution: " << (report.solution ? "yes" : "no") << "\n";
      return report.solution ? kExitOk : kExitCertifiedNo;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
