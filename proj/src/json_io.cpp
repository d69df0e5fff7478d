#include "wharm/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "wharm/errors.hpp"

namespace wharm::json_io {

namespace {

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        write(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

double parse_double(std::string_view s) {
  const std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size()) throw DomainError("cannot parse number '" + str + "'");
  return v;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  write(j, out);
  out += '\n';
  return out;
}

Json complex_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

std::complex<double> parse_complex(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_double(text), 0.0};
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    out.push_back(parse_complex(text.substr(start, semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

Json poly_json(const BivarPoly& p) {
  Json arr = Json::array();
  for (const auto& [m, c] : p.terms())
    arr.push_back(Json{{"i", m.i}, {"j", m.j}, {"re", format_rational(c.re)}, {"im", format_rational(c.im)}});
  return arr;
}

Json family_json(const std::vector<angles::AngleEta>& pairs) {
  Json arr = Json::array();
  for (const auto& p : pairs) arr.push_back(Json{{"angle", angles::format_angle(p.angle)}, {"eta", p.eta}});
  return arr;
}

std::vector<angles::AngleEta> family_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("family must be a JSON array");
  std::vector<angles::AngleEta> out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("angle") || !e.contains("eta"))
      throw DomainError("family entries need 'angle' and 'eta'");
    const auto& eta = e.at("eta");
    if (!eta.is_number_integer() || eta.get<std::int64_t>() < 1)
      throw DomainError("eta must be a positive integer");
    out.push_back({angles::parse_angle(e.at("angle").get<std::string>()), eta.get<std::uint64_t>()});
  }
  return out;
}

}  // namespace wharm::json_io
