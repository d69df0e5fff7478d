#include "wharm/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wharm/angles.hpp"
#include "wharm/bivar_poly.hpp"
#include "wharm/errors.hpp"
#include "wharm/hypergeom.hpp"
#include "wharm/json_io.hpp"
#include "wharm/kernels.hpp"
#include "wharm/obstruction.hpp"
#include "wharm/verify.hpp"
#include "wharm/zeros.hpp"

namespace wharm::cli {

namespace {

using Complex = std::complex<double>;
using json_io::Json;

// Raised for malformed or missing flag values (exit code 2).
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out_path;
};

struct Inputs {
  std::string alpha = "0";
  std::string z;
  std::optional<std::uint32_t> k;
  std::optional<double> x;
  double a = 0.0, b = 0.0, c = 1.0;
  std::string coeffs;
  std::string v0;
  double shift = 0.0;
  std::optional<std::uint32_t> dirac;
  std::string trig;
  std::string angles;
  std::string tail;
  std::string family;
  std::optional<std::uint64_t> brute_force;
  std::optional<std::size_t> max_steps;
  std::optional<std::size_t> cases;
  std::string what = "ray";
  std::optional<double> theta;
  std::string angle;
  std::optional<double> geo_x;
  double t_min = 1.0, t_max = 1e3;
  std::size_t points = 20;
  std::optional<double> eta;
  std::uint32_t n_max = 5;
  double big_t = 1e3;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class F>
auto as_flag(const char* flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw FlagError(std::string(flag) + ": " + e.what());
  }
}

AlphaParam alpha_of(const Inputs& in) {
  return as_flag("--alpha", [&] { return AlphaParam::parse(in.alpha); });
}

Complex z_of(const Inputs& in) {
  if (in.z.empty()) throw FlagError("--z is required");
  return as_flag("--z", [&] { return json_io::parse_complex(in.z); });
}

std::uint32_t k_of(const Inputs& in) {
  if (!in.k) throw FlagError("--k is required");
  return *in.k;
}

// "k:re,im;k:re,im"
std::map<std::uint32_t, Complex> parse_indexed(const std::string& text, const char* flag) {
  std::map<std::uint32_t, Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw FlagError(std::string(flag) + ": expected k:re,im");
    try {
      const long k = std::stol(item.substr(0, colon));
      if (k < 0) throw FlagError(std::string(flag) + ": negative index");
      out[static_cast<std::uint32_t>(k)] += json_io::parse_complex(item.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw FlagError(std::string(flag) + ": bad index in '" + item + "'");
    } catch (const Error& e) {
      throw FlagError(std::string(flag) + ": " + e.what());
    }
  }
  return out;
}

obstruction::ObstructionFunction function_of(const Inputs& in) {
  if (!in.v0.empty() && !in.coeffs.empty()) throw FlagError("give either --coeffs or --v0");
  if (!in.v0.empty()) {
    auto terms = parse_indexed(in.v0, "--v0");
    if (terms.count(0)) throw FlagError("--v0: indices start at 1");
    return obstruction::from_v0_form(terms);
  }
  auto c = as_flag("--coeffs", [&] { return json_io::parse_complex_list(in.coeffs); });
  return obstruction::ObstructionFunction(alpha_of(in), std::move(c));
}

obstruction::HalfPlaneFunction shifted(const obstruction::ObstructionFunction& u, double shift) {
  if (shift == 0.0) return u.handle();
  return [u, shift](Complex z) { return u(z - shift); };
}

Json coeff_array(const std::vector<Complex>& v) {
  Json arr = Json::array();
  for (const auto& c : v) arr.push_back(json_io::complex_json(c));
  return arr;
}

std::vector<angles::AngleEta> family_of(const Inputs& in) {
  if (in.family.empty()) throw FlagError("--family is required");
  Json j;
  try {
    j = Json::parse(in.family);
  } catch (const Json::exception& e) {
    throw FlagError(std::string("--family: ") + e.what());
  }
  return as_flag("--family", [&] { return json_io::family_from_json(j); });
}

std::vector<angles::Angle> angle_list(const std::string& text) {
  std::vector<angles::Angle> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(as_flag("--angles", [&] { return angles::parse_angle(item); }));
  return out;
}

std::string method_name(angles::AdmissibilityReport::Method m) {
  switch (m) {
    case angles::AdmissibilityReport::Method::ExactRanges: return "ExactRanges";
    case angles::AdmissibilityReport::Method::BruteForce: return "BruteForce";
    case angles::AdmissibilityReport::Method::ConstructionTheorem: return "ConstructionTheorem";
  }
  return "";
}

Json report_json(const angles::AdmissibilityReport& r) {
  Json j{{"admissible", r.admissible}, {"method", method_name(r.method)}, {"limit", r.limit}};
  j["witness"] = r.witness_failure ? Json(*r.witness_failure) : Json(nullptr);
  return j;
}

struct Output {
  std::string text;
  int code = kOk;
};

Output json_out(const Json& j, int code = kOk) { return {json_io::canonical_dump(j), code}; }

// ---------------------------------------------------------------- commands

Output cmd_eval(const std::string& what, const Inputs& in) {
  auto value = [](Complex v) { return json_out(Json{{"value", json_io::complex_json(v)}}); };
  if (what == "kernel" || what == "kernel-series") {
    const kernels::DiscPoint p(z_of(in));
    return value(what == "kernel" ? kernels::poisson_kernel(alpha_of(in), p)
                                  : kernels::poisson_kernel_series(alpha_of(in), p));
  }
  if (what == "poisson") {
    const kernels::DiscPoint p(z_of(in));
    if (in.dirac && !in.trig.empty()) throw FlagError("give either --dirac or --trig");
    if (!in.trig.empty()) {
      kernels::TrigPoly tp;
      std::stringstream ss(in.trig);
      std::string item;
      while (std::getline(ss, item, ';')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw FlagError("--trig: expected k:re,im");
        try {
          tp.coeffs[std::stoll(item.substr(0, colon))] += json_io::parse_complex(item.substr(colon + 1));
        } catch (const std::logic_error&) {
          throw FlagError("--trig: bad index in '" + item + "'");
        } catch (const Error& e) {
          throw FlagError(std::string("--trig: ") + e.what());
        }
      }
      return value(kernels::poisson_integral(alpha_of(in), kernels::ToroidalDistribution(tp), p));
    }
    return value(kernels::poisson_integral(alpha_of(in), kernels::ToroidalDistribution::dirac(in.dirac.value_or(0)), p));
  }
  if (what == "ia-kernel") return value(kernels::ia_power_kernel(alpha_of(in), k_of(in), kernels::DiscPoint(z_of(in))));
  if (what == "mobius") return value(kernels::mobius(kernels::DiscPoint(z_of(in))));
  if (what == "f-factor") {
    if (!in.x) throw FlagError("--x is required");
    return value(hypergeom::f_factor(alpha_of(in).value(), k_of(in), *in.x));
  }
  if (what == "hyp2f1") {
    if (!in.x) throw FlagError("--x is required");
    return value(hypergeom::hyp2f1({in.a, in.b, in.c}, *in.x));
  }
  if (what == "p" || what == "s" || what == "h") {
    const AlphaParam alpha = alpha_of(in);
    const std::uint32_t k = k_of(in);
    const BivarPoly poly = what == "p" ? poly::p_poly(alpha, k)
                           : what == "s" ? poly::s_poly(alpha, k)
                                         : poly::h_poly(alpha, k);
    if (in.z.empty()) return json_out(Json{{"poly", json_io::poly_json(poly)}});
    return value(poly.evaluate(z_of(in)));
  }
  if (what == "obstruction") return value(shifted(function_of(in), in.shift)(z_of(in)));
  throw FlagError("unknown eval target '" + what + "'");
}

std::string verify_csv(const verify::RunReport& r) {
  std::string s = "name,pass,residual\n";
  for (const auto& c : r.details) s += c.name + "," + (c.pass ? "1" : "0") + "," + num(c.residual) + "\n";
  return s;
}

Output cmd_verify(const std::string& suite, const Inputs& in, const Globals& g) {
  verify::Options opts;
  opts.tol = g.tol;
  opts.seed = g.seed;
  opts.cases = in.cases;
  const auto known = verify::suite_names();
  if (suite != "all" && std::find(known.begin(), known.end(), suite) == known.end())
    throw FlagError("unknown suite '" + suite + "'");
  const auto rep = verify::run_suite(suite, opts);
  const int code = rep.failures == 0 ? kOk : kVerifyFailed;
  if (g.format == "csv") return {verify_csv(rep), code};
  return json_out(verify::to_json(rep), code);
}

Output cmd_foa(const std::string& action, const Inputs& in) {
  if (action == "construct") {
    const auto thetas = angle_list(in.angles);
    angles::FunctionOfAngles f = angles::FunctionOfAngles::finite({});
    std::vector<angles::AngleEta> pairs;
    if (in.tail.empty()) {
      if (thetas.empty()) throw FlagError("--angles is required");
      f = angles::construct_infinite(thetas);
      pairs = f.prefix(thetas.size());
    } else {
      f = angles::construct_finite(thetas, as_flag("--tail", [&] { return angles::parse_angle(in.tail); }));
      pairs = f.pairs();
    }
    Json eta = Json::array();
    for (const auto& p : pairs) eta.push_back(p.eta);
    Json j{{"family", json_io::family_json(pairs)}, {"eta", eta}, {"finite", f.is_finite()}};
    j["admissibility"] = report_json(angles::is_admissible(f));
    return json_out(j);
  }
  const auto pairs = family_of(in);
  const auto foa = angles::FunctionOfAngles::finite(pairs);
  if (action == "check") {
    const auto mode = in.brute_force ? angles::AdmissibilityMode::brute_force(*in.brute_force)
                                     : angles::AdmissibilityMode::exact();
    return json_out(report_json(angles::is_admissible(foa, mode)));
  }
  if (action == "minimize") return json_out(Json{{"minimal", angles::is_minimal(foa)}});
  if (action == "lower-bound") {
    const auto lb = angles::lower_bound(foa, in.max_steps.value_or(pairs.size() + 1));
    return json_out(Json{{"family", json_io::family_json(lb.pairs())},
                         {"leq", angles::leq(lb, foa)},
                         {"minimal", angles::is_minimal(lb)}});
  }
  throw FlagError("unknown foa action '" + action + "'");
}

Output cmd_roots(const Inputs& in, const Globals& g) {
  const auto c = as_flag("--coeffs", [&] { return json_io::parse_complex_list(in.coeffs); });
  if (c.empty()) throw FlagError("--coeffs is required");
  const auto r = zeros::roots(c);
  if (g.format == "csv") {
    std::string s = "re,im\n";
    for (const auto& z : r) s += num(z.real()) + "," + num(z.imag()) + "\n";
    return {s, kOk};
  }
  return json_out(Json{{"roots", coeff_array(r)}, {"residual", zeros::root_residual(c, r)}});
}

Output cmd_certify(const Inputs& in) {
  const AlphaParam alpha = alpha_of(in);
  const std::uint32_t k = k_of(in);
  const auto cert = zeros::certify_p_circle_free(alpha, k);
  Json j{{"r", cert.r},
         {"R", cert.R},
         {"verdict", zeros::to_string(cert.verdict)},
         {"min_modulus", zeros::min_modulus_on_circle(alpha.value(), k)}};
  if (cert.verdict == zeros::Verdict::Undecided) {
    std::vector<Complex> s(k + 1);
    for (std::uint32_t i = 0; i <= k; ++i) s[i] = poly::binomial_coefficient(alpha.value(), i);
    j["roots"] = coeff_array(zeros::roots(s));
  }
  return json_out(j);
}

Output cmd_trace(const Inputs& in, const Globals& g) {
  const auto u = function_of(in);
  const auto f = shifted(u, in.shift);
  if (!(in.t_min > 0.0 && in.t_max > in.t_min)) throw FlagError("need 0 < --t-min < --t-max");
  if (in.points < 2) throw FlagError("--points must be at least 2");
  std::vector<double> ts(in.points);
  for (std::size_t i = 0; i < in.points; ++i)
    ts[i] = in.t_min * std::pow(in.t_max / in.t_min, static_cast<double>(i) / (in.points - 1));

  const bool ray = in.what == "ray";
  if (!ray && in.what != "geodesic") throw FlagError("--what must be ray or geodesic");
  double theta = 0.0, x = 0.0, eta = 1.0;
  std::vector<Complex> values;
  if (ray) {
    if (in.theta && !in.angle.empty()) throw FlagError("give either --theta or --angle");
    if (in.theta) theta = *in.theta;
    else if (!in.angle.empty()) theta = as_flag("--angle", [&] { return angles::parse_angle(in.angle); }).value();
    else throw FlagError("--theta or --angle is required");
    eta = in.eta.value_or(u.is_zero() ? u.alpha().value() + 1.0 : *u.degree() + u.alpha().value() + 1.0);
    values = obstruction::sample_ray(f, theta, ts).u_values;
  } else {
    if (!in.geo_x) throw FlagError("--x is required for geodesic traces");
    x = *in.geo_x;
    eta = in.eta.value_or(1.0);
    for (double y : ts) values.push_back(f(Complex(x, y)));
  }

  if (g.format == "csv") {
    std::string s = ray ? "theta,t,re_u,im_u,re_norm,im_norm\n" : "x,y,re_u,im_u,re_norm,im_norm\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const Complex nrm = values[i] / std::pow(ts[i], eta);
      s += num(ray ? theta : x) + "," + num(ts[i]) + "," + num(values[i].real()) + "," + num(values[i].imag()) +
           "," + num(nrm.real()) + "," + num(nrm.imag()) + "\n";
    }
    return {s, kOk};
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < ts.size(); ++i)
    rows.push_back(Json{{"t", ts[i]},
                        {"u", json_io::complex_json(values[i])},
                        {"normalized", json_io::complex_json(values[i] / std::pow(ts[i], eta))}});
  Json j{{"what", in.what}, {"eta", eta}, {"samples", rows}};
  if (ray) j["theta"] = theta;
  else j["x"] = x;
  return json_out(j);
}

Output cmd_recover(const Inputs& in, const Globals& g) {
  const auto u = function_of(in);
  obstruction::RecoveryOptions opts;
  if (g.tol) opts.tol = *g.tol;
  opts.big_t = in.big_t;
  const auto res = obstruction::recover_coefficients(u.alpha(), shifted(u, in.shift), in.n_max,
                                                     obstruction::default_recovery_angles(), opts);
  return json_out(Json{{"coeffs", coeff_array(res.coeffs)},
                       {"angles_used", res.angle_used},
                       {"residual", res.residual},
                       {"extrapolation_gap", res.extrapolation_gap}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted harmonic functions: kernels, polynomial identities, uniqueness tests"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Inputs in;
  app.add_option("--tol", g.tol, "Numeric tolerance override")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for the mt19937_64 generator");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out_path, "Write output to this file");

  auto add_alpha = [&](CLI::App* c) { c->add_option("--alpha", in.alpha, "alpha as num/den or decimal"); };
  auto add_function = [&](CLI::App* c) {
    add_alpha(c);
    c->add_option("--coeffs", in.coeffs, "p-basis coefficients re,im;re,im;...");
    c->add_option("--v0", in.v0, "alpha = 0 terms k:re,im;... of sum c_k Im(z^k)");
    c->add_option("--shift", in.shift, "evaluate u(z - shift)");
  };

  std::string what, suite, action;
  auto* eval = app.add_subcommand("eval", "Evaluate a kernel, polynomial or hypergeometric factor");
  eval->add_option("target", what, "kernel|kernel-series|poisson|ia-kernel|mobius|f-factor|hyp2f1|p|s|h|obstruction")
      ->required();
  add_function(eval);
  eval->add_option("--z", in.z, "point re,im");
  eval->add_option("--k", in.k, "index");
  eval->add_option("--x", in.x, "argument in [0, 1)");
  eval->add_option("--a", in.a);
  eval->add_option("--b", in.b);
  eval->add_option("--c", in.c);
  eval->add_option("--dirac", in.dirac, "order m of the Dirac derivative");
  eval->add_option("--trig", in.trig, "trigonometric polynomial k:re,im;...");

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", suite, "hypergeom|poly-kernel|pullback|obstruction|zeros|angles|all")->required();
  ver->add_option("--cases", in.cases, "number of random cases");

  auto* foa = app.add_subcommand("foa", "Admissible functions of angles");
  foa->add_option("action", action, "construct|check|minimize|lower-bound")->required();
  foa->add_option("--angles", in.angles, "comma-separated angles m/n");
  foa->add_option("--tail", in.tail, "irrational tail irr:<label>:<approx>");
  foa->add_option("--family", in.family, "JSON [{\"angle\": \"m/n\", \"eta\": k}, ...]");
  foa->add_option("--brute-force", in.brute_force, "check every k up to this limit");
  foa->add_option("--max-steps", in.max_steps);

  auto* roots = app.add_subcommand("roots", "Roots of a0 + a1 z + ... + an z^n");
  roots->add_option("--coeffs", in.coeffs, "re,im;re,im;...")->required();

  auto* cert = app.add_subcommand("certify", "Zero-free certificate of p_{k,alpha} on the unit circle");
  add_alpha(cert);
  cert->add_option("--k", in.k)->required();

  auto* trace = app.add_subcommand("trace", "Sample u along a ray or a vertical geodesic");
  add_function(trace);
  trace->add_option("--what", in.what)->check(CLI::IsMember({"ray", "geodesic"}));
  trace->add_option("--theta", in.theta, "ray angle in radians");
  trace->add_option("--angle", in.angle, "ray angle as m/n (times pi)");
  trace->add_option("--x", in.geo_x, "abscissa of the geodesic");
  trace->add_option("--t-min", in.t_min);
  trace->add_option("--t-max", in.t_max);
  trace->add_option("--points", in.points);
  trace->add_option("--eta", in.eta, "normalizing exponent");

  auto* rec = app.add_subcommand("recover", "Recover p-basis coefficients from samples");
  add_function(rec);
  rec->add_option("--n-max", in.n_max);
  rec->add_option("--big-t", in.big_t);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kFlagError;
  }

  Output result;
  try {
    if (eval->parsed()) result = cmd_eval(what, in);
    else if (ver->parsed()) result = cmd_verify(suite, in, g);
    else if (foa->parsed()) result = cmd_foa(action, in);
    else if (roots->parsed()) result = cmd_roots(in, g);
    else if (cert->parsed()) result = cmd_certify(in);
    else if (trace->parsed()) result = cmd_trace(in, g);
    else result = cmd_recover(in, g);
  } catch (const FlagError& e) {
    err << "error: " << e.what() << "\n";
    return kFlagError;
  } catch (const HypothesisViolation& e) {
    result = json_out(Json{{"error", e.what()}, {"witness", e.index()}}, kDomainError);
    err << "error: " << e.what() << "\n";
  } catch (const NotAdmissible& e) {
    result = json_out(Json{{"error", e.what()}, {"witness", e.witness()}}, kDomainError);
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    result = json_out(Json{{"error", e.what()}}, kDomainError);
    err << "error: " << e.what() << "\n";
  }

  if (g.out_path.empty()) {
    out << result.text;
    return result.code;
  }
  std::ofstream file(g.out_path, std::ios::binary);
  if (!file || !(file << result.text) || !file.flush()) {
    err << "error: cannot write " << g.out_path << "\n";
    return kOutputError;
  }
  return result.code;
}

}  // namespace wharm::cli
