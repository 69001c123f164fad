#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dosc/coherent.hpp"
#include "dosc/errors.hpp"
#include "dosc/kernels.hpp"
#include "dosc/models.hpp"
#include "dosc/suites.hpp"
#include "json.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelArgs {
  std::string model = "meixner";
  double beta = 2.0;
  double gamma = 0.4;
  double mu = 1.0;
  double p = 0.5;
  int N = 16;
  std::optional<double> tail_tol;

  double tail() const { return tail_tol ? *tail_tol : dosc::default_tail_tol(); }
};

void add_model_flags(CLI::App* cmd, ModelArgs& m) {
  cmd->add_option("--beta", m.beta, "Meixner beta")->capture_default_str();
  cmd->add_option("--gamma", m.gamma, "Meixner gamma")->capture_default_str();
  cmd->add_option("--mu", m.mu, "Charlier mu")->capture_default_str();
  cmd->add_option("--p", m.p, "Kravchuk p")->capture_default_str();
  cmd->add_option("--N", m.N, "Kravchuk N")->capture_default_str();
  cmd->add_option("--tail-tol", m.tail_tol, "grid tail tolerance (default: DOSC_TAIL_TOL or 1e-14)");
}

dosc::ModelParams selected(const ModelArgs& a) {
  dosc::ModelParams m;
  if (a.model == "meixner") {
    m = dosc::MeixnerParams{a.beta, a.gamma};
  } else if (a.model == "charlier") {
    m = dosc::CharlierParams{a.mu};
  } else if (a.model == "kravchuk") {
    m = dosc::KravchukParams{a.p, a.N};
  } else {
    m = dosc::HermiteParams{};
  }
  dosc::validate(m);
  return m;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

// {"columns": [...], "rows": [[...], ...]} from a numeric CSV
std::string csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  nlohmann::ordered_json j;
  std::getline(in, line);
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  j["columns"] = split(line);
  j["rows"] = nlohmann::ordered_json::array();
  while (std::getline(in, line)) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& c : split(line)) row.push_back(std::stod(c));
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

struct TabulateArgs {
  ModelArgs model;
  int n_max = 8;
  std::string kind = "wavefunctions";
  double t_re = 0.5;
  double t_im = 0.0;
  int dim = 16;
  double z_re = 0.0;
  double z_im = 0.0;
  int count = 0;
  std::string format = "csv";
  std::string out;
};

int tabulate(const TabulateArgs& a) {
  const dosc::ModelParams model = selected(a.model);
  if (a.n_max < 0) throw dosc::ParameterError("nmax must be nonnegative");
  std::ostringstream csv;
  if (a.kind == "wavefunctions") {
    if (const auto* k = std::get_if<dosc::KravchukParams>(&model); k && a.n_max > k->N) {
      throw dosc::DegreeError("nmax must not exceed N for the Kravchuk model");
    }
    dosc::write_wavetable_csv(csv, dosc::build_wavetable(model, a.n_max, a.model.tail()));
  } else if (a.kind == "kernel") {
    if (std::holds_alternative<dosc::HermiteParams>(model)) {
      throw dosc::ParameterError("kernel tabulation needs a lattice model");
    }
    if (a.dim < 1) throw dosc::ParameterError("dim must be positive");
    dosc::write_kernel_csv(csv, dosc::kernel_matrix(model, dosc::cplx(a.t_re, a.t_im), a.dim));
  } else {
    const auto* m = std::get_if<dosc::MeixnerParams>(&model);
    if (!m) throw dosc::ParameterError("coherent states are built on the Meixner model");
    const dosc::Grid g = a.count > 0 ? dosc::lattice_grid(*m, a.count)
                                     : dosc::truncated_grid(*m, std::max(a.n_max, 40), a.model.tail());
    const dosc::cplx z(a.z_re, a.z_im);
    dosc::write_state_csv(csv, a.kind == "bg" ? dosc::bg_state(*m, z, g) : dosc::perelomov_state(*m, z, g));
  }
  emit(a.format == "json" ? csv_to_json(csv.str()) : csv.str(), a.out);
  return kPass;
}

struct VerifyArgs {
  ModelArgs model;
  std::string suite = "all";
  double t = 0.5;
  int n_max = 10;
  double tol_scale = 1.0;
  std::string report;
};

int verify(const VerifyArgs& a) {
  dosc::SuiteOptions opt;
  opt.meixner = {a.model.beta, a.model.gamma};
  opt.charlier = {a.model.mu};
  opt.kravchuk = {a.model.p, a.model.N};
  opt.t = a.t;
  opt.n_max = a.n_max;
  opt.tail_tol = a.model.tail();
  opt.tol_scale = a.tol_scale;
  const dosc::SuiteReport r = dosc::run_suite(a.suite, opt);

  const bool to_stdout = a.report.empty() || a.report == "-";
  std::ostream& summary = to_stdout ? std::cerr : std::cout;
  for (const auto& c : r.checks) {
    char line[64];
    std::snprintf(line, sizeof line, "%.3e <= %.1e", c.defect, c.tol);
    summary << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  " << line << '\n';
  }
  const auto failed = std::count_if(r.checks.begin(), r.checks.end(), [](const auto& c) { return !c.pass; });
  summary << r.suite << ": " << r.checks.size() - failed << "/" << r.checks.size() << " checks passed\n";
  emit(dosc::report_json(r), a.report);
  return r.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difference-oscillator models: tabulation and verification"};
  app.require_subcommand(1);

  TabulateArgs tab;
  auto* t = app.add_subcommand("tabulate", "write wavefunctions, kernels or coherent states");
  t->add_option("--model", tab.model.model, "model")
      ->check(CLI::IsMember({"meixner", "charlier", "kravchuk", "hermite"}))
      ->capture_default_str();
  add_model_flags(t, tab.model);
  t->add_option("--nmax", tab.n_max, "highest degree")->capture_default_str();
  t->add_option("--kind", tab.kind, "what to tabulate")
      ->check(CLI::IsMember({"wavefunctions", "kernel", "bg", "perelomov"}))
      ->capture_default_str();
  t->add_option("--t", tab.t_re, "kernel parameter, real part")->capture_default_str();
  t->add_option("--t-im", tab.t_im, "kernel parameter, imaginary part")->capture_default_str();
  t->add_option("--dim", tab.dim, "kernel matrix size")->capture_default_str();
  t->add_option("--z", tab.z_re, "coherent-state label, real part")->capture_default_str();
  t->add_option("--z-im", tab.z_im, "coherent-state label, imaginary part")->capture_default_str();
  t->add_option("--count", tab.count, "coherent-state grid points (default: truncated grid)");
  t->add_option("--format", tab.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  t->add_option("--out", tab.out, "output file (default: stdout)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "run a verification suite");
  v->add_option("--suite", ver.suite, "suite")
      ->check(CLI::IsMember({"orthogonality", "algebra", "coherent", "kernels", "limits", "all"}))
      ->capture_default_str();
  add_model_flags(v, ver.model);
  v->add_option("--t", ver.t, "kernel parameter")->capture_default_str();
  v->add_option("--nmax", ver.n_max, "highest degree for orthogonality")->capture_default_str();
  v->add_option("--tol-scale", ver.tol_scale, "multiplies every tolerance")->capture_default_str();
  v->add_option("--report", ver.report, "report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (t->parsed()) return tabulate(tab);
    return verify(ver);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const dosc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
