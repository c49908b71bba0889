#pragma once

#include "angleforge/closure.hpp"
#include "angleforge/fit.hpp"

#include <iosfwd>
#include <string>
#include <variant>

namespace angleforge {

// "0.785398", "pi/4", "3pi/8", "pi", "2pi/3" -> radians. Throws on junk.
double parse_angle(const std::string& text);

std::string format_double(double v);  // 17 significant digits, locale-free

// --- rigidity certificates: structured text, one step per record -----------

std::string serialize_certificate(const RigidityCertificate& cert);
RigidityCertificate parse_certificate(const std::string& text);

// --- LineMapSample files ----------------------------------------------------
// JSON: {"field":"real"|"complex","dim":n,"pairs":[{"in":[...],"out":[...]}]}
// complex vectors are flat arrays of 2n numbers, re/im interleaved; vectors
// are normalized on load, zero vectors rejected.

struct SampleFile {
  Field field = Field::Real;
  int dim = 0;
  LineMapSample<double> real_sample;
  LineMapSample<Complex> complex_sample;
};

struct ParseError {
  std::string message;
  int line = 0;  // 1-based line in the input, when known
};

SampleFile load_sample_json(const std::string& text);
std::string save_sample_json(const LineMapSample<double>& s);
std::string save_sample_json(const LineMapSample<Complex>& s);

template <typename S>
std::string save_fit_json(const FittedIsometry<S>& fit, Field field);

// --- verification reports ---------------------------------------------------

struct ReportPoint {
  std::vector<std::pair<std::string, double>> params;
  std::string expected;
  std::string got;
  bool agree = true;
  bool boundary = false;
};

struct VerifyReport {
  std::string lemma;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<ReportPoint> points;
  long checked = 0;
  long disagreements = 0;
  long boundary_skipped = 0;
  double max_residual = 0.0;

  bool ok() const { return disagreements == 0; }
};

std::string report_to_json(const VerifyReport& r);
std::string report_to_csv(const VerifyReport& r);
VerifyReport report_from_json(const std::string& text);

}  // namespace angleforge
