#include "convlimit/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace convlimit {

using nlohmann::json;

double parse_rational(const std::string& text) {
  const size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    size_t used_n = 0, used_d = 0;
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double n = static_cast<double>(std::stoll(num, &used_n));
    const double d = static_cast<double>(std::stoll(den, &used_d));
    if (used_n != num.size() || used_d != den.size() || d == 0.0)
      throw std::invalid_argument(text);
    return n / d;
  } catch (const std::exception&) {
    throw Error(Errc::InvalidArgument, "cannot parse number '" + text + "'");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

double number_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw Error(Errc::InvalidArgument, "expected a number or fraction string");
}

}  // namespace

ComplexSequence read_sequence_json(std::istream& in) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("bad sequence JSON: ") + e.what());
  }
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw Error(Errc::InvalidArgument, "sequence JSON needs an \"entries\" array");
  std::vector<std::pair<int, Complex>> entries;
  for (const json& e : doc["entries"]) {
    if (!e.is_array() || e.size() != 3)
      throw Error(Errc::InvalidArgument, "each entry must be [offset, re, im]");
    if (!e[0].is_number_integer())
      throw Error(Errc::InvalidArgument, "entry offset must be an integer");
    entries.emplace_back(e[0].get<int>(),
                         Complex(number_from_json(e[1]), number_from_json(e[2])));
  }
  return new_sequence(entries);
}

ComplexSequence read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path);
  return read_sequence_json(in);
}

void write_sequence_json(std::ostream& out, const ComplexSequence& a) {
  json entries = json::array();
  for (int j = a.support_min(); j <= a.support_max(); ++j) {
    const Complex c = a[j];
    if (c == Complex{}) continue;
    entries.push_back(json::array({j, c.real(), c.imag()}));
  }
  out << json{{"entries", entries}}.dump(2) << "\n";
}

void write_profile_json(std::ostream& out, const SymbolProfile& profile) {
  json points = json::array();
  for (const TangencyPoint& pt : profile.points) {
    points.push_back(json{{"kappa_re", pt.kappa.real()},
                          {"kappa_im", pt.kappa.imag()},
                          {"theta", pt.tau.imag()},
                          {"alpha", pt.alpha},
                          {"mu", pt.mu},
                          {"beta_re", pt.beta.real()},
                          {"beta_im", pt.beta.imag()},
                          {"case", case_tag_name(pt.case_tag)}});
  }
  json doc{{"h1", profile.report.h1},
           {"h2", profile.report.h2},
           {"h2_bis", profile.report.h2_bis},
           {"h3", profile.report.h3},
           {"points", points},
           {"notes", profile.report.notes}};
  if (profile.report.suggested_shift) doc["suggested_shift"] = *profile.report.suggested_shift;
  out << doc.dump(2) << "\n";
}

void write_polynomial_json(std::ostream& out, int sigma, const BivariatePolynomial& poly) {
  json terms = json::array();
  for (const auto& [key, c] : poly.terms)
    terms.push_back(json::array({key.first, key.second, c.real(), c.imag()}));
  out << json{{"sigma", sigma}, {"terms", terms}}.dump(2) << "\n";
}

void write_report_csv(std::ostream& out, const VerificationReport& report) {
  const size_t K = report.rows.empty() ? 0 : report.rows.front().X.size();
  out << "n,j,green_re,green_im,expansion_re,expansion_im,err_abs";
  for (size_t k = 1; k <= K; ++k) out << ",X_" << k;
  out << ",scaled_err\n";
  for (const ReportRow& r : report.rows) {
    out << r.n << ',' << r.j << ',' << format_double(r.green.real()) << ','
        << format_double(r.green.imag()) << ',' << format_double(r.expansion.real()) << ','
        << format_double(r.expansion.imag()) << ',' << format_double(r.err_abs);
    for (double x : r.X) out << ',' << format_double(x);
    out << ',' << format_double(r.scaled_err) << "\n";
  }
}

void write_summary_json(std::ostream& out, const VerificationReport& report,
                        const RemainderEnvelope& envelope,
                        const std::map<int, double>* berry_esseen) {
  json scaled = json::object();
  for (const auto& [n, v] : report.scaled_sup) scaled[std::to_string(n)] = v;
  json doc{{"scale_exponent", report.scale_exponent},
           {"s_per_point", report.s_per_point},
           {"scaled_sup", scaled},
           {"envelope",
            {{"C", envelope.C},
             {"c", envelope.c},
             {"c_per_point", envelope.c_per_point},
             {"C_lower_half", envelope.C_lower},
             {"C_upper_half", envelope.C_upper},
             {"ok", envelope.ok}}}};
  if (berry_esseen) {
    json be = json::object();
    for (const auto& [n, v] : *berry_esseen) be[std::to_string(n)] = v;
    doc["berry_esseen"] = be;
  }
  out << doc.dump(2) << "\n";
}

void write_green_csv(std::ostream& out,
                     const std::vector<std::pair<int, ComplexSequence>>& rows) {
  out << "n,j,re,im\n";
  for (const auto& [n, g] : rows)
    for (int j = g.support_min(); j <= g.support_max(); ++j)
      out << n << ',' << j << ',' << format_double(g[j].real()) << ','
          << format_double(g[j].imag()) << "\n";
}

}  // namespace convlimit
