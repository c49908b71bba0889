#include "angleforge/bloch.hpp"
#include "angleforge/closure.hpp"
#include "angleforge/fit.hpp"
#include "angleforge/oracle.hpp"
#include "angleforge/report_io.hpp"
#include "angleforge/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace af = angleforge;

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::string read_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_verify(const std::string& lemma, const af::VerifyOptions& opt,
               const std::string& out_path, const std::string& format) {
  af::VerifyReport report;
  try {
    report = af::run_verification(lemma, opt);
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << "\nknown lemmas:";
    for (const auto& id : af::verification_registry()) std::cerr << " " << id;
    std::cerr << "\n";
    return 2;
  }
  write_output(out_path, format == "csv" ? af::report_to_csv(report)
                                         : af::report_to_json(report));
  std::cerr << "verify " << lemma << ": checked " << report.checked
            << ", disagreements " << report.disagreements << ", boundary skipped "
            << report.boundary_skipped << "\n";
  return report.ok() ? 0 : 1;
}

int run_closure(const std::string& alpha_text, const std::string& space, int dim,
                int max_steps, double threshold, const std::string& out_path) {
  double alpha = 0.0;
  try {
    alpha = af::parse_angle(alpha_text);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  af::ClosureContext context;
  if (space == "sphere-real") {
    context = af::ClosureContext::SphereReal;
  } else if (space == "proj-real") {
    context = af::ClosureContext::ProjReal;
  } else if (space == "proj-complex") {
    context = dim == 2 ? af::ClosureContext::ProjComplexDim2
                       : af::ClosureContext::ProjComplex;
  } else {
    std::cerr << "unknown space: " << space << "\n";
    return 2;
  }
  const auto cert = af::closure(alpha, context, dim, max_steps, threshold);
  write_output(out_path, af::serialize_certificate(cert));
  std::cerr << "closure: verdict " << af::verdict_name(cert.verdict) << " in "
            << cert.steps.size() << " steps\n";
  return cert.verdict == af::Verdict::Inconclusive ? 1 : 0;
}

int run_fit(const std::string& in_path, const std::string& out_path, double tol) {
  af::SampleFile sample;
  try {
    sample = af::load_sample_json(read_input(in_path));
  } catch (const std::exception& e) {
    std::cerr << "fit: " << e.what() << "\n";
    return 2;
  }
  const double consistency = tol > 0 ? tol : 1e-7;
  try {
    if (sample.field == af::Field::Real) {
      const auto fit = af::fit_isometry(sample.real_sample, consistency);
      write_output(out_path, af::save_fit_json(fit, af::Field::Real));
      std::cerr << "fit: kind " << af::kind_name(fit.kind) << " residual "
                << fit.residual << "\n";
    } else {
      const auto fit = af::fit_isometry(sample.complex_sample, consistency);
      write_output(out_path, af::save_fit_json(fit, af::Field::Complex));
      std::cerr << "fit: kind " << af::kind_name(fit.kind) << " residual "
                << fit.residual << "\n";
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "fit: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_curves(const std::string& which, const std::vector<std::string>& args,
               double alpha, const std::string& out_path) {
  std::ostringstream csv;
  auto emit_row = [&csv](std::initializer_list<double> vals) {
    bool first = true;
    for (double v : vals) {
      if (!first) csv << ",";
      csv << af::format_double(v);
      first = false;
    }
    csv << "\r\n";
  };

  const bool is_sequence = which == "case2" || which == "case5";
  int n = 0;
  double lo = 0.0, hi = 0.0;
  if (is_sequence) {
    if (args.size() != 1) throw std::runtime_error("usage: curves " + which + " -- N");
    n = std::stoi(args[0]);
  } else {
    if (args.size() != 3)
      throw std::runtime_error("usage: curves " + which + " LO HI N");
    lo = af::parse_angle(args[0]);
    hi = af::parse_angle(args[1]);
    n = std::stoi(args[2]);
  }
  if (n < 2 && !is_sequence) throw std::runtime_error("curves: need n >= 2");
  if (!is_sequence && !(lo < hi)) throw std::runtime_error("curves: empty range");

  if (which == "beta") {
    csv << "alpha,beta\r\n";
    for (int i = 0; i < n; ++i) {
      const double a = lo + (hi - lo) * i / (n - 1);
      emit_row({a, af::gamma0(std::min(std::max(a, 1e-12), af::kPi / 2 - 1e-12))});
    }
  } else if (which == "gamma0") {
    csv << "alpha,gamma0\r\n";
    for (int i = 0; i < n; ++i) {
      const double a = lo + (hi - lo) * i / (n - 1);
      emit_row({a, af::gamma0(a)});
    }
  } else if (which == "h") {
    csv << "gamma,h\r\n";
    for (int i = 0; i < n; ++i) {
      const double g = lo + (hi - lo) * i / (n - 1);
      emit_row({g, af::sphere_cap_diam(alpha, g)});
    }
  } else if (which == "projdiam") {
    csv << "gamma,diam\r\n";
    for (int i = 0; i < n; ++i) {
      const double g = lo + (hi - lo) * i / (n - 1);
      emit_row({g, af::proj_diam(alpha, g)});
    }
  } else if (which == "case4") {
    csv << "alpha,gamma\r\n";
    for (int i = 0; i < n; ++i) {
      const double a = lo + (hi - lo) * i / (n - 1);
      emit_row({a, af::case4_gamma(a)});
    }
  } else if (which == "betapair") {
    csv << "alpha,beta1,beta2\r\n";
    for (int i = 0; i < n; ++i) {
      const double a = lo + (hi - lo) * i / (n - 1);
      const auto [b1, b2] = af::beta_pair(a);
      emit_row({a, b1, b2});
    }
  } else if (which == "case2") {
    csv << "n,alpha\r\n";
    const auto seq = af::case2_recursion(n);
    for (int i = 0; i < n; ++i) emit_row({static_cast<double>(i + 1), seq[i]});
  } else if (which == "case5") {
    csv << "n,alpha\r\n";
    const auto seq = af::case5_recursion(n);
    for (int i = 0; i < n; ++i) emit_row({static_cast<double>(i + 1), seq[i]});
  } else {
    throw std::runtime_error("unknown curve: " + which);
  }
  write_output(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"angle-preserver rigidity toolkit"};
  app.require_subcommand(1);

  std::string lemma, out_path, format = "json";
  af::VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "check a lemma against its oracle");
  verify->add_option("lemma", lemma, "lemma id")->required();
  verify->add_option("--grid", vopt.grid, "grid points per parameter");
  verify->add_option("--resolution", vopt.resolution, "oracle resolution");
  verify->add_option("--seed", vopt.seed, "rng seed");
  verify->add_option("--tol", vopt.tol, "comparison tolerance (radians)");
  verify->add_option("--out", out_path, "output path (default stdout)");
  verify->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string alpha_text, space = "sphere-real", closure_out;
  int dim = 3, max_steps = 10000;
  double threshold = 1e-3;
  auto* closure = app.add_subcommand("closure", "derive a rigidity certificate");
  closure->add_option("--alpha", alpha_text, "seed angle (radians or pi fractions)")
      ->required();
  closure->add_option("--space", space, "sphere-real | proj-real | proj-complex")
      ->check(CLI::IsMember({"sphere-real", "proj-real", "proj-complex"}));
  closure->add_option("--dim", dim, "space dimension");
  closure->add_option("--max-steps", max_steps, "derivation step budget");
  closure->add_option("--threshold", threshold, "small-angle terminal threshold");
  closure->add_option("--out", closure_out, "certificate path (default stdout)");

  std::string fit_in, fit_out;
  double fit_tol = 0.0;
  auto* fit = app.add_subcommand("fit", "fit the isometry behind a sampled line map");
  fit->add_option("input", fit_in, "LineMapSample JSON file")->required();
  fit->add_option("--out", fit_out, "fitted-operator path (default stdout)");
  fit->add_option("--tol", fit_tol, "angle-consistency tolerance");

  std::string curve_which, curve_out;
  std::vector<std::string> curve_args;
  double curve_alpha = 0.5;
  auto* curves = app.add_subcommand("curves", "emit plot-ready data series");
  curves->add_option("which", curve_which,
                     "beta|gamma0|h|projdiam|case4|betapair|case2|case5")
      ->required();
  curves->add_option("range", curve_args, "LO HI N (or N for recursions)");
  curves->add_option("--alpha", curve_alpha, "level angle for h/projdiam");
  curves->add_option("--out", curve_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(lemma, vopt, out_path, format);
    if (closure->parsed())
      return run_closure(alpha_text, space, dim, max_steps, threshold, closure_out);
    if (fit->parsed()) return run_fit(fit_in, fit_out, fit_tol);
    if (curves->parsed())
      return run_curves(curve_which, curve_args, curve_alpha, curve_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
