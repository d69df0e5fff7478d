#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wharm/json_io.hpp"

namespace wharm::verify {

struct CaseRecord {
  std::string name;
  bool pass = true;
  double residual = 0.0;
  std::string note;
};

struct RunReport {
  std::string suite;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  std::uint64_t seed = 0;
  std::vector<CaseRecord> details;

  void record(std::string name, bool pass, double residual = 0.0, std::string note = {});
  /// Appends another report's cases, prefixing their names with its suite.
  void merge(const RunReport& other);
};

struct Options {
  std::optional<double> tol;          // overrides the numeric tolerance of every check
  std::uint64_t seed = 1;
  std::optional<std::size_t> cases;   // overrides the number of random cases
};

/// hypergeom, poly-kernel, pullback, obstruction, zeros, angles.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws DomainError on an unknown name.
RunReport run_suite(std::string_view name, const Options& opts);

RunReport run_hypergeom(const Options& opts);
RunReport run_poly_kernel(const Options& opts);
RunReport run_pullback(const Options& opts);
RunReport run_obstruction(const Options& opts);
RunReport run_zeros(const Options& opts);
RunReport run_angles(const Options& opts);

json_io::Json to_json(const RunReport& r);

}  // namespace wharm::verify
