#include "angleforge/report_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace angleforge {

using nlohmann::json;

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("parse_angle: empty angle");

  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("parse_angle: trailing junk in '" + text + "'");
    return v;
  }
  double mult = 1.0;
  if (pi_pos > 0) {
    const std::string head = s.substr(0, pi_pos);
    std::size_t used = 0;
    mult = std::stod(head, &used);
    if (used != head.size()) throw std::invalid_argument("parse_angle: bad multiplier in '" + text + "'");
  }
  double div = 1.0;
  const std::string tail = s.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail[0] != '/') throw std::invalid_argument("parse_angle: expected '/' in '" + text + "'");
    const std::string den = tail.substr(1);
    std::size_t used = 0;
    div = std::stod(den, &used);
    if (used != den.size() || div == 0.0)
      throw std::invalid_argument("parse_angle: bad divisor in '" + text + "'");
  }
  return mult * kPi / div;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// certificates

std::string serialize_certificate(const RigidityCertificate& cert) {
  std::ostringstream out;
  out << "angleforge-certificate v1\n";
  out << "context " << context_name(cert.context) << "\n";
  out << "dim " << cert.dim << "\n";
  out << "seed " << format_double(cert.seed) << "\n";
  out << "threshold " << format_double(cert.terminal_threshold) << "\n";
  out << "sphere-dim " << cert.sphere_dim << "\n";
  out << "steps " << cert.steps.size() << "\n";
  int idx = 0;
  for (const auto& s : cert.steps) {
    out << "step " << ++idx << " rule=" << rule_name(s.rule, s.j)
        << " case=" << s.case_label << " scope=" << (s.sphere_scope ? "sphere" : "proj")
        << " inputs=";
    for (std::size_t k = 0; k < s.inputs.size(); ++k)
      out << (k ? "," : "") << format_double(s.inputs[k]);
    out << " output=" << format_double(s.output) << " conds=";
    for (std::size_t k = 0; k < s.conditions.size(); ++k)
      out << (k ? ";" : "") << s.conditions[k].name << ":"
          << (s.conditions[k].holds ? "true" : "false");
    out << "\n";
  }
  out << "verdict " << verdict_name(cert.verdict) << "\n";
  if (!cert.note.empty()) out << "note " << cert.note << "\n";
  return out.str();
}

namespace {

// conds is the final field and may contain spaces; the other values are
// space-free tokens
std::string take_field(const std::string& line, const std::string& key) {
  const auto pos = line.find(" " + key + "=");
  if (pos == std::string::npos)
    throw std::invalid_argument("certificate: missing field " + key);
  const auto start = pos + key.size() + 2;
  if (key == "conds") return line.substr(start);
  auto end = line.find(' ', start);
  if (end == std::string::npos) end = line.size();
  return line.substr(start, end - start);
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

}  // namespace

RigidityCertificate parse_certificate(const std::string& text) {
  RigidityCertificate cert;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "angleforge-certificate v1")
    throw std::invalid_argument("certificate: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "context") {
      std::string v;
      ls >> v;
      if (!parse_context(v, cert.context))
        throw std::invalid_argument("certificate: bad context " + v);
    } else if (key == "dim") {
      ls >> cert.dim;
    } else if (key == "seed") {
      ls >> cert.seed;
    } else if (key == "threshold") {
      ls >> cert.terminal_threshold;
    } else if (key == "sphere-dim") {
      ls >> cert.sphere_dim;
    } else if (key == "steps") {
      // count is implied by the step records
    } else if (key == "step") {
      DerivationStep s;
      if (!parse_rule(take_field(line, "rule"), s.rule, s.j))
        throw std::invalid_argument("certificate: bad rule in '" + line + "'");
      s.case_label = take_field(line, "case");
      s.sphere_scope = take_field(line, "scope") == "sphere";
      s.inputs = split_doubles(take_field(line, "inputs"));
      s.output = std::stod(take_field(line, "output"));
      const std::string conds = take_field(line, "conds");
      std::stringstream cs(conds);
      std::string item;
      while (std::getline(cs, item, ';')) {
        const auto colon = item.rfind(':');
        if (colon == std::string::npos) continue;
        s.conditions.push_back({item.substr(0, colon), item.substr(colon + 1) == "true"});
      }
      cert.steps.push_back(std::move(s));
    } else if (key == "verdict") {
      std::string v;
      ls >> v;
      if (!parse_verdict(v, cert.verdict))
        throw std::invalid_argument("certificate: bad verdict " + v);
    } else if (key == "note") {
      cert.note = line.substr(5);
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------
// sample files

namespace {

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

template <typename S>
Vec<S> vector_from_flat(const json& arr, int dim);

template <>
Vec<double> vector_from_flat<double>(const json& arr, int dim) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
    throw std::invalid_argument("sample: real vector must have dim entries");
  Vec<double> v(dim);
  for (int i = 0; i < dim; ++i) v[i] = arr[i].get<double>();
  return v;
}

template <>
Vec<Complex> vector_from_flat<Complex>(const json& arr, int dim) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != 2 * dim)
    throw std::invalid_argument("sample: complex vector must have 2*dim entries");
  Vec<Complex> v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = Complex(arr[2 * i].get<double>(), arr[2 * i + 1].get<double>());
  return v;
}

template <typename S>
LineMapSample<S> sample_from_json(const json& doc, int dim) {
  LineMapSample<S> s;
  for (const auto& pair : doc.at("pairs")) {
    const Vec<S> vin = vector_from_flat<S>(pair.at("in"), dim);
    const Vec<S> vout = vector_from_flat<S>(pair.at("out"), dim);
    if (vin.norm() < 1e-12 || vout.norm() < 1e-12)
      throw std::invalid_argument("sample: zero vector rejected");
    s.in.emplace_back(vin);
    s.out.emplace_back(vout);
  }
  return s;
}

json flat_of(const RealVec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json flat_of(const ComplexVec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back(v[i].real());
    arr.push_back(v[i].imag());
  }
  return arr;
}

}  // namespace

SampleFile load_sample_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("sample: JSON parse error at line " +
                                std::to_string(line_of_offset(text, e.byte)) + ": " +
                                e.what());
  }
  SampleFile out;
  const std::string field = doc.at("field").get<std::string>();
  if (field == "real")
    out.field = Field::Real;
  else if (field == "complex")
    out.field = Field::Complex;
  else
    throw std::invalid_argument("sample: field must be real or complex");
  out.dim = doc.at("dim").get<int>();
  if (out.dim < 2 || out.dim > kMaxDim)
    throw std::invalid_argument("sample: dim out of range");
  if (out.field == Field::Real)
    out.real_sample = sample_from_json<double>(doc, out.dim);
  else
    out.complex_sample = sample_from_json<Complex>(doc, out.dim);
  return out;
}

namespace {

template <typename S>
std::string save_sample_impl(const LineMapSample<S>& s, const char* field) {
  json doc;
  doc["field"] = field;
  doc["dim"] = s.dim();
  doc["pairs"] = json::array();
  for (int i = 0; i < s.size(); ++i)
    doc["pairs"].push_back(
        {{"in", flat_of(s.in[i].rep())}, {"out", flat_of(s.out[i].rep())}});
  return doc.dump(2);
}

}  // namespace

std::string save_sample_json(const LineMapSample<double>& s) {
  return save_sample_impl(s, "real");
}
std::string save_sample_json(const LineMapSample<Complex>& s) {
  return save_sample_impl(s, "complex");
}

template <typename S>
std::string save_fit_json(const FittedIsometry<S>& fit, Field field) {
  json doc;
  doc["field"] = field_name(field);
  doc["kind"] = kind_name(fit.kind);
  doc["dim"] = fit.matrix.rows();
  doc["residual"] = fit.residual;
  json rows = json::array();
  for (Eigen::Index r = 0; r < fit.matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < fit.matrix.cols(); ++c) {
      if constexpr (Eigen::NumTraits<S>::IsComplex) {
        row.push_back(fit.matrix(r, c).real());
        row.push_back(fit.matrix(r, c).imag());
      } else {
        row.push_back(fit.matrix(r, c));
      }
    }
    rows.push_back(row);
  }
  doc["matrix"] = rows;
  return doc.dump(2);
}

template std::string save_fit_json<double>(const FittedIsometry<double>&, Field);
template std::string save_fit_json<Complex>(const FittedIsometry<Complex>&, Field);

// ---------------------------------------------------------------------------
// verification reports

std::string report_to_json(const VerifyReport& r) {
  json doc;
  doc["lemma"] = r.lemma;
  json cfg = json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  doc["config"] = cfg;
  doc["summary"] = {{"checked", r.checked},
                    {"disagreements", r.disagreements},
                    {"boundary_skipped", r.boundary_skipped},
                    {"max_residual", r.max_residual}};
  json pts = json::array();
  for (const auto& p : r.points) {
    json jp;
    json params = json::object();
    for (const auto& [k, v] : p.params) params[k] = v;
    jp["params"] = params;
    jp["expected"] = p.expected;
    jp["got"] = p.got;
    jp["agree"] = p.agree;
    jp["boundary"] = p.boundary;
    pts.push_back(jp);
  }
  doc["points"] = pts;
  return doc.dump(2);
}

VerifyReport report_from_json(const std::string& text) {
  const json doc = json::parse(text);
  VerifyReport r;
  r.lemma = doc.at("lemma").get<std::string>();
  for (const auto& [k, v] : doc.at("config").items())
    r.config.emplace_back(k, v.get<std::string>());
  r.checked = doc.at("summary").at("checked").get<long>();
  r.disagreements = doc.at("summary").at("disagreements").get<long>();
  r.boundary_skipped = doc.at("summary").at("boundary_skipped").get<long>();
  r.max_residual = doc.at("summary").at("max_residual").get<double>();
  for (const auto& jp : doc.at("points")) {
    ReportPoint p;
    for (const auto& [k, v] : jp.at("params").items())
      p.params.emplace_back(k, v.get<double>());
    p.expected = jp.at("expected").get<std::string>();
    p.got = jp.at("got").get<std::string>();
    p.agree = jp.at("agree").get<bool>();
    p.boundary = jp.at("boundary").get<bool>();
    r.points.push_back(std::move(p));
  }
  return r;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_csv(const VerifyReport& r) {
  std::ostringstream out;
  std::vector<std::string> param_names;
  for (const auto& p : r.points)
    for (const auto& [k, v] : p.params)
      if (std::find(param_names.begin(), param_names.end(), k) == param_names.end())
        param_names.push_back(k);
  out << "lemma";
  for (const auto& k : param_names) out << "," << csv_quote(k);
  out << ",expected,got,agree,boundary\r\n";
  for (const auto& p : r.points) {
    out << csv_quote(r.lemma);
    for (const auto& k : param_names) {
      out << ",";
      for (const auto& [pk, pv] : p.params)
        if (pk == k) out << format_double(pv);
    }
    out << "," << csv_quote(p.expected) << "," << csv_quote(p.got) << ","
        << (p.agree ? "true" : "false") << "," << (p.boundary ? "true" : "false")
        << "\r\n";
  }
  return out.str();
}

}  // namespace angleforge
