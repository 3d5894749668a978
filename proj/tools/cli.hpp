#pragma once

// Batch driver behind the `tropmorph` executable. Kept in a header so the
// integration tests can run it in-process.
//
// Exit codes: 0 success / all laws pass, 1 property violation, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tropmorph/tropmorph.hpp"

namespace tropmorph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct SourceOptions {
  std::string matrix_path;
  std::string se_path;
  std::optional<double> adaptive_lambda;
  int connectivity = 8;
  bool wrap = false;
  std::string input_path;
  double a = 0.0;
  double b = 255.0;
};

/// Input signal or image, with the lattice it lives in.
struct Signal {
  GridShape shape;
  std::vector<double> values;
  std::optional<std::size_t> pgm_maxval;
};

struct Problem {
  MaxPlusMatrix matrix;
  LatticeConfig config;
  std::optional<Signal> signal;
};

namespace detail {

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

inline Signal read_signal(const std::string& path) {
  auto in = open_in(path);
  if (ends_with(path, ".pgm")) {
    Image img = read_pgm(in);
    return {img.shape, std::move(img.pixels), img.maxval};
  }
  std::vector<double> v = read_vector_csv(in);
  if (v.empty()) throw InputError("'" + path + "' contains no values");
  const std::size_t n = v.size();
  return {GridShape{n, 1}, std::move(v), std::nullopt};
}

// Resolves --matrix / --se / --adaptive plus --input into a matrix and lattice.
inline Problem load_problem(const SourceOptions& opt, bool need_input) {
  const int sources = !opt.matrix_path.empty() + !opt.se_path.empty() + opt.adaptive_lambda.has_value();
  if (sources != 1) throw InputError("give exactly one of --matrix, --se, --adaptive");
  std::optional<Signal> signal;
  if (!opt.input_path.empty()) signal = read_signal(opt.input_path);
  if ((need_input || opt.matrix_path.empty()) && !signal) throw InputError("--input is required");

  if (!opt.matrix_path.empty()) {
    auto in = open_in(opt.matrix_path);
    MatrixFile mf = read_matrix_file(in);
    if (signal && signal->values.size() != mf.config.n()) {
      throw InputError("input has " + std::to_string(signal->values.size()) +
                       " values but the matrix has n=" + std::to_string(mf.config.n()));
    }
    return {std::move(mf.matrix), mf.config, std::move(signal)};
  }
  const double b = signal->pgm_maxval ? static_cast<double>(*signal->pgm_maxval) : opt.b;
  const LatticeConfig cfg(opt.a, b, signal->values.size());
  if (!opt.se_path.empty()) {
    auto in = open_in(opt.se_path);
    const StructuringFunction se = read_structuring_function(in);
    return {build_matrix_from_se(se, signal->shape, cfg, opt.wrap ? Boundary::kWrap : Boundary::kClip),
            cfg, std::move(signal)};
  }
  return {build_matrix_adaptive(signal->values, signal->shape, *opt.adaptive_lambda, opt.connectivity, cfg),
          cfg, std::move(signal)};
}

inline void write_result(const std::string& out_path, const Signal& signal, const LatticeVector& result,
                         std::ostream& out) {
  if (out_path.empty()) {
    write_vector_csv(out, result.values());
    return;
  }
  auto file = open_out(out_path);
  if (ends_with(out_path, ".pgm")) {
    const auto maxval = static_cast<std::size_t>(std::lround(result.config().b()));
    if (!is_integral_value(result.config().b()) || result.config().a() != 0.0) {
      throw InputError("PGM output needs a lattice [0, maxval] with integral maxval");
    }
    write_pgm(file, Image{signal.shape, maxval, {result.values().begin(), result.values().end()}});
  } else {
    write_vector_csv(file, result.values());
  }
}

inline nlohmann::json real_json(double v) {
  if (is_bottom(v)) return "-inf";
  return v;
}

inline void add_source_options(CLI::App& cmd, SourceOptions& opt) {
  cmd.add_option("--matrix", opt.matrix_path, "Matrix file (`n a b` header, `i j w` records)");
  cmd.add_option("--se", opt.se_path, "Structuring function file (`d w` or `dr dc w` per line)");
  cmd.add_option("--adaptive", opt.adaptive_lambda, "Build input-adapted weights -lambda*|g_i-g_j| from the input")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--neighborhood", opt.connectivity, "Grid connectivity for --adaptive")->check(CLI::IsMember({4, 8}));
  cmd.add_flag("--wrap", opt.wrap, "Wrap structuring functions around the grid instead of clipping");
  cmd.add_option("--input", opt.input_path, "Input signal (.csv, one value per line) or image (.pgm)");
  cmd.add_option("--a", opt.a, "Lattice bottom for CSV input without --matrix");
  cmd.add_option("--b", opt.b, "Lattice top for CSV input without --matrix");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-plus morphology on signals and images"};
  app.require_subcommand(1);

  SourceOptions src;
  std::string dot_path;
  auto* classify_cmd = app.add_subcommand("classify", "Asticity report as JSON");
  detail::add_source_options(*classify_cmd, src);
  classify_cmd->add_option("--dot", dot_path, "Also write the weighted graph in DOT format");

  std::size_t p = 1;
  bool integral = false;
  std::string out_path;
  std::vector<CLI::App*> op_cmds;
  for (const char* name : {"dilate", "erode", "open", "close"}) {
    auto* cmd = app.add_subcommand(name, std::string("Apply the ") + name + " operator");
    detail::add_source_options(*cmd, src);
    cmd->add_option("--p", p, "Iteration order")->check(CLI::PositiveNumber);
    cmd->add_flag("--integral", integral, "Use the sup/inf integrals S_p instead of W^p");
    cmd->add_option("--out", out_path, "Output file (.csv or .pgm); CSV on stdout otherwise");
    op_cmds.push_back(cmd);
  }

  std::size_t p_max = 8;
  auto* gran_cmd = app.add_subcommand("granulometry", "CSV of opening volumes for p = 1..p_max");
  detail::add_source_options(*gran_cmd, src);
  gran_cmd->add_option("--p-max", p_max, "Largest p")->check(CLI::PositiveNumber);
  gran_cmd->add_option("--out", out_path, "Output CSV; stdout otherwise");

  std::optional<std::size_t> spectral_p;
  auto* spec_cmd = app.add_subcommand("spectral", "Eigen-nodes as JSON and the eigenspace basis as CSV");
  detail::add_source_options(*spec_cmd, src);
  spec_cmd->add_option("--p", spectral_p, "Approximate the metric matrix by S_p (large n)")
      ->check(CLI::PositiveNumber);
  spec_cmd->add_option("--out,--basis-out", out_path, "Basis CSV file");

  std::size_t trials = 50;
  std::uint64_t seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Run the sampled property suite");
  verify_cmd->add_option("--matrix", src.matrix_path, "Also check this matrix");
  verify_cmd->add_option("--trials", trials, "Instances and samples per law")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed, "Random seed");

  std::vector<const char*> argv{"tropmorph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) {
      const Problem prob = detail::load_problem(src, false);
      const AsticityReport r = classify(prob.matrix, prob.config);
      nlohmann::ordered_json j;
      j["n"] = prob.config.n();
      j["a"] = prob.config.a();
      j["b"] = prob.config.b();
      j["row_0_astic"] = r.row_0_astic;
      j["column_0_astic"] = r.column_0_astic;
      j["doubly_0_astic"] = r.doubly_0_astic;
      j["zero_astic"] = r.zero_astic;
      j["cmw"] = r.cmw;
      j["definite"] = r.definite;
      j["max_circuit_weight"] = detail::real_json(r.max_circuit_weight);
      j["symmetric"] = prob.matrix.is_symmetric();
      if (auto row = first_non_zero_row(prob.matrix)) j["first_bad_row"] = *row + 1;
      if (auto col = first_non_zero_column(prob.matrix)) j["first_bad_column"] = *col + 1;
      out << j.dump(2) << '\n';
      if (!dot_path.empty()) {
        auto dot = detail::open_out(dot_path);
        write_dot(dot, WeightedDigraph(prob.matrix));
      }
      return kExitOk;
    }

    for (auto* cmd : op_cmds) {
      if (!cmd->parsed()) continue;
      const Problem prob = detail::load_problem(src, true);
      const LatticeVector x(prob.signal->values, prob.config);
      const std::string name = cmd->get_name();
      LatticeVector y = x;
      if (p == 1 && !integral && (name == "dilate" || name == "erode")) {
        // Single step: only the asticity the operator itself needs.
        y = name == "dilate" ? dilate(prob.matrix, x) : erode(prob.matrix, x);
      } else {
        const IteratedFamily fam(prob.matrix, prob.config, p, FamilyOptions{true});
        if (name == "dilate") y = integral ? integral_dilate(fam, p, x) : iterate_dilate(fam, p, x);
        if (name == "erode") y = integral ? integral_erode(fam, p, x) : iterate_erode(fam, p, x);
        if (name == "open") y = integral ? big_g_opening(fam, p, x) : gamma_opening(fam, p, x);
        if (name == "close") y = integral ? big_g_closing(fam, p, x) : gamma_closing(fam, p, x);
      }
      detail::write_result(out_path, *prob.signal, y, out);
      return kExitOk;
    }

    if (gran_cmd->parsed()) {
      const Problem prob = detail::load_problem(src, true);
      const LatticeVector x(prob.signal->values, prob.config);
      const IteratedFamily fam(prob.matrix, prob.config, p_max, FamilyOptions{true});
      std::ostringstream csv;
      csv << "p,gamma_volume,G_volume\n";
      auto volume = [](const LatticeVector& v) {
        double s = 0.0;
        for (double e : v.values()) s += e;
        return s;
      };
      std::vector<double> gammas;
      std::vector<double> bigs;
      for (std::size_t k = 1; k <= p_max; ++k) {
        gammas.push_back(volume(gamma_opening(fam, k, x)));
        bigs.push_back(volume(big_g_opening(fam, k, x)));
        csv << k << ',' << format_real(gammas.back()) << ',' << format_real(bigs.back()) << '\n';
      }
      if (out_path.empty()) {
        out << csv.str();
      } else {
        detail::open_out(out_path) << csv.str();
      }
      const double tol = kDefaultTolerance * static_cast<double>(x.size()) * std::max(1.0, prob.config.b());
      for (std::size_t k = 1; k < gammas.size(); ++k) {
        if (gammas[k] > gammas[k - 1] + tol || bigs[k] > bigs[k - 1] + tol) {
          err << "granulometry: opening volume increases at p=" << k + 1 << '\n';
          return kExitViolation;
        }
      }
      return kExitOk;
    }

    if (spec_cmd->parsed()) {
      const Problem prob = detail::load_problem(src, false);
      tropmorph::detail::require_doubly(prob.matrix, "spectral");
      const SpectralDecomposition dec = spectral_p ? decompose_approximate(prob.matrix, prob.config, *spectral_p)
                                                   : decompose(prob.matrix);
      nlohmann::ordered_json j;
      j["n"] = prob.config.n();
      j["approximate"] = spectral_p.has_value();
      if (spectral_p) j["p"] = std::min(*spectral_p, prob.config.n());
      auto one_based = [](const std::vector<std::size_t>& v) {
        std::vector<std::size_t> o;
        for (auto e : v) o.push_back(e + 1);
        return o;
      };
      j["eigen_nodes"] = one_based(dec.eigen_nodes);
      nlohmann::json classes = nlohmann::json::array();
      for (const auto& c : dec.classes) classes.push_back(one_based(c));
      j["classes"] = classes;
      // The exact route checks every fundamental eigenvector is a fixpoint of W.
      if (!spectral_p) fundamental_eigenvectors(dec);
      const auto basis = maximal_nonequivalent_set(dec);
      std::vector<std::size_t> basis_nodes;
      for (const auto& xi : basis) basis_nodes.push_back(xi.node + 1);
      j["basis_nodes"] = basis_nodes;
      out << j.dump(2) << '\n';
      if (!out_path.empty()) {
        auto csv = detail::open_out(out_path);
        write_basis_csv(csv, basis);
      }
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      std::optional<MatrixFile> user;
      if (!src.matrix_path.empty()) {
        auto in = detail::open_in(src.matrix_path);
        user = read_matrix_file(in);
      }
      bool all = true;
      for (const auto& law : run_property_suite(user, trials, seed)) {
        out << (law.passed ? "PASS " : "FAIL ") << law.name;
        if (!law.passed) out << ": " << law.detail;
        out << '\n';
        all = all && law.passed;
      }
      return all ? kExitOk : kExitViolation;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tropmorph::cli
