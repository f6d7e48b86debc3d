#include "greedylab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "greedylab/closedform.hpp"
#include "greedylab/constants.hpp"
#include "greedylab/error.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/instance.hpp"
#include "greedylab/verify.hpp"
#include "json.hpp"

namespace greedylab {

using nlohmann::ordered_json;

namespace {

struct Common {
  std::string in;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> max_scope;
  std::optional<std::size_t> samples;

  void attach(CLI::App& app) {
    app.add_option("--in", in, "Instance file (JSON)");
    app.add_option("--out", out, "Write output to FILE instead of stdout");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--tol", tol, "Comparison tolerance (absolute and relative)");
    app.add_option("--max-scope", max_scope, "Largest index scope for exact enumeration");
    app.add_option("--samples", samples, "Random sample count");
  }
  EnumerationLimits limits() const {
    EnumerationLimits l;
    if (max_scope) l.max_scope = *max_scope;
    return l;
  }
  Tolerance tolerance() const {
    Tolerance t;
    if (tol) t.abs = t.rel = *tol;
    return t;
  }
  InstanceFile instance() const { return in.empty() ? InstanceFile{} : load_instance(in); }
};

std::string cell(double v) { return format_double(v); }

std::string join(const IndexSet& s, const char* sep) {
  std::string r;
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? sep : "") + std::to_string(s[i]);
  return r;
}

Scope greedy_scope(const InstanceFile& inst, const CoeffVector& x, std::size_t m_max) {
  if (inst.scope) return *inst.scope;
  if (const auto* w = std::get_if<WeightedLp>(&inst.space.kind())) {
    return Scope::range(static_cast<Index>(w->weights.size()), true);
  }
  return Scope::range(x.max_index() + static_cast<Index>(m_max));
}

std::string cmd_greedy(const InstanceFile& inst, const std::string& name, std::size_t m_min,
                       std::optional<std::size_t> m_max_opt, const Common& c) {
  const CoeffVector* x = inst.find(name);
  if (!x) throw Error(ErrorKind::ParseError, "field 'vector': no vector named '" + name + "'");
  const std::size_t m_max = m_max_opt.value_or(x->support_size());
  const Scope scope = greedy_scope(inst, *x, m_max);
  const auto ordering = greedy_ordering(*x);
  const auto limits = c.limits();

  std::ostringstream os;
  os << "m,selected,residual,sigma,D,Dstar\n";
  for (std::size_t m = m_min; m <= m_max; ++m) {
    os << m << ',' << join(ordering.first(m), " ") << ',' << cell(greedy_residual_norm(inst.space, *x, m))
       << ',' << cell(sigma_m(inst.space, *x, m, scope, limits).value) << ',';
    if (m >= 1) {
      os << cell(indicator_distance(inst.space, *x, m, scope, limits).value) << ','
         << cell(signed_indicator_distance(inst.space, *x, m, scope, limits).value);
    } else {
      os << ',';
    }
    os << '\n';
  }
  return os.str();
}

std::string cmd_curve(double p, std::size_t n, std::size_t m_min, std::size_t m_max,
                      const Common& c) {
  if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorKind::DomainError, "field 'p': need 1 <= p < inf");
  if (n == 0) throw Error(ErrorKind::DomainError, "field 'N': must be positive");
  if (m_min == 0) throw Error(ErrorKind::DomainError, "field 'm-min': must be positive");
  const auto space = SpaceSpec::lp(p);
  IndexSet b;
  for (Index i = 1; i <= n; ++i) b.push_back(i);
  const auto x = indicator(b);
  const auto limits = c.limits();

  std::ostringstream os;
  os << "m,closed_form,D,Dstar,abs_delta\n";
  for (std::size_t m = m_min; m <= m_max; ++m) {
    const double cf = p == 1.0 ? l1_indicator_distance(n, m)
                               : lp_indicator_distance(LpIndicatorCase::make(p, n, m));
    const auto scope = Scope::range(static_cast<Index>(n + m));
    const double d = indicator_distance(space, x, m, scope, limits).value;
    const double ds = signed_indicator_distance(space, x, m, scope, limits).value;
    os << m << ',' << cell(cf) << ',' << cell(d) << ',' << cell(ds) << ','
       << cell(std::max(std::abs(cf - d), std::abs(cf - ds))) << '\n';
  }
  return os.str();
}

ordered_json vector_json(const CoeffVector& x) {
  ordered_json o = ordered_json::object();
  for (const auto& e : x.entries()) o[std::to_string(e.index)] = e.value;
  return o;
}

ordered_json signed_set_json(const SignedSet& s) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    a.push_back(s.signs()[i] < 0 ? -static_cast<long long>(s.indices()[i])
                                 : static_cast<long long>(s.indices()[i]));
  }
  return a;
}

ordered_json witness_json(const Witness& w) {
  ordered_json j;
  j["variant"] = w.variant;
  j["origin"] = w.origin;
  if (!w.x.empty()) j["x"] = vector_json(w.x);
  if (!w.y.empty()) j["y"] = vector_json(w.y);
  if (!w.z.empty()) j["z"] = vector_json(w.z);
  if (!w.a.empty()) j["A"] = signed_set_json(w.a);
  if (!w.b.empty()) j["B"] = signed_set_json(w.b);
  if (w.m) j["m"] = w.m;
  j["numerator"] = w.numerator;
  j["denominator"] = w.denominator;
  j["ratio"] = w.ratio();
  return j;
}

ordered_json estimate_json(const ConstantEstimate& e) {
  ordered_json j;
  j["name"] = e.name;
  if (!e.variant.empty()) j["variant"] = e.variant;
  j["lower_bound"] = e.lower_bound;
  j["method"] = e.method;
  j["evaluated"] = e.evaluated;
  j["segregated"] = e.segregated;
  if (e.index_scope) {
    j["index_scope"] = {{"universe", e.index_scope->size()},
                        {"exhaustive", e.index_scope->exhaustive}};
  }
  if (e.witness) j["witness"] = witness_json(*e.witness);
  if (!e.unbounded.empty()) {
    ordered_json u = ordered_json::array();
    for (const auto& w : e.unbounded) u.push_back(witness_json(w));
    j["unbounded"] = u;
  }
  if (!e.parts.empty()) {
    ordered_json parts = ordered_json::array();
    for (const auto& p : e.parts) parts.push_back(estimate_json(p));
    j["parts"] = parts;
  }
  return j;
}

std::string cmd_constants(const InstanceFile& inst, const Common& c) {
  if (!inst.family) throw Error(ErrorKind::ParseError, "field 'family': required for constants");
  InstanceFamily family = *inst.family;
  if (c.seed) family.rng_seed = *c.seed;
  if (c.samples) family.random_samples = *c.samples;
  EstimatorOptions opts;
  opts.tolerance = c.tolerance();
  opts.limits = c.limits();
  const auto report = theorem_harness(inst.space, family, inst.scope, opts);

  ordered_json j;
  j["space"] = inst.space.describe();
  ordered_json est = ordered_json::array();
  for (const auto& e : report.estimates) est.push_back(estimate_json(e));
  j["estimates"] = est;
  ordered_json rel = ordered_json::array();
  for (const auto& r : report.relations) {
    rel.push_back({{"target", r.target},
                   {"statement", r.statement},
                   {"implied", r.implied},
                   {"estimate", r.estimate},
                   {"consistent", r.consistent}});
  }
  j["relations"] = rel;
  j["exact_case"] = report.exact_case;
  j["failures"] = report.failures;
  j["verdict"] = report.verdict;
  return j.dump(2) + "\n";
}

int cmd_verify(const InstanceFile& source, const Common& c, std::string& text) {
  InstanceFile inst = source;
  VerifySettings v = inst.verify.value_or(VerifySettings{});
  if (c.samples) v.hilbert_samples = v.chain_samples = *c.samples;
  inst.verify = v;
  VerifyOptions opts;
  opts.seed = c.seed.value_or(0);
  opts.tolerance = c.tolerance();
  opts.limits = c.limits();
  const auto report = run_verify(inst, opts);
  text = report.render();
  return report.pass() ? exit_code::kOk : exit_code::kVerifyFailed;
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "field 'out': cannot write '" + c.out + "'");
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Greedy-algorithm constants and m-term approximation toolkit", "greedylab"};
  app.require_subcommand(1);

  Common greedy_c, curve_c, constants_c, verify_c;

  auto* greedy = app.add_subcommand("greedy", "Greedy residuals against sigma_m, D_m and D*_m");
  greedy_c.attach(*greedy);
  std::string vector_name;
  std::size_t g_min = 0;
  std::optional<std::size_t> g_max;
  greedy->add_option("--vector", vector_name, "Vector name in the instance")->required();
  greedy->add_option("--m-min", g_min, "First m");
  greedy->add_option("--m-max", g_max, "Last m (default: support size)");

  auto* curve = app.add_subcommand("curve", "Indicator curve D_m(1_B) in l^p");
  curve_c.attach(*curve);
  std::string p_text = "2";
  std::size_t n = 4, c_min = 1;
  std::optional<std::size_t> c_max;
  curve->add_option("--p", p_text, "Exponent p >= 1");
  curve->add_option("--N", n, "|B|");
  curve->add_option("--m-min", c_min, "First m");
  curve->add_option("--m-max", c_max, "Last m (default: 2N + 2)");

  auto* constants = app.add_subcommand("constants", "Constant lower bounds and harness verdicts");
  constants_c.attach(*constants);

  auto* verify = app.add_subcommand("verify", "Closed form and invariant cross-checks");
  verify_c.attach(*verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  try {
    if (greedy->parsed()) {
      const auto inst = greedy_c.instance();
      emit(cmd_greedy(inst, vector_name, g_min, g_max, greedy_c), greedy_c, out);
    } else if (curve->parsed()) {
      double p = 0.0;
      if (p_text == "inf") {
        p = kInfinity;
      } else {
        try {
          std::size_t used = 0;
          p = std::stod(p_text, &used);
          if (used != p_text.size()) throw std::invalid_argument(p_text);
        } catch (const std::exception&) {
          throw Error(ErrorKind::ParseError, "field 'p': not a number");
        }
      }
      emit(cmd_curve(p, n, c_min, c_max.value_or(2 * n + 2), curve_c), curve_c, out);
    } else if (constants->parsed()) {
      emit(cmd_constants(constants_c.instance(), constants_c), constants_c, out);
    } else if (verify->parsed()) {
      std::string text;
      const int code = cmd_verify(verify_c.instance(), verify_c, text);
      emit(text, verify_c, out);
      if (code != exit_code::kOk) {
        std::istringstream lines(text);
        for (std::string line; std::getline(lines, line);)
          if (line.rfind("  first failure: ", 0) == 0) {
            err << "verify failed:" << line.substr(16) << "\n";
            break;
          }
      }
      return code;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
      case ErrorKind::DomainError:
      case ErrorKind::InvalidVector:
      case ErrorKind::IncompleteSpec:
      case ErrorKind::EmptyFamily:
        return exit_code::kUsage;
      case ErrorKind::ScopeTooSmall:
      case ErrorKind::CapExceeded:
        return exit_code::kScope;
      default:
        return exit_code::kOther;
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_code::kOther;
  }
  return exit_code::kOk;
}

}  // namespace greedylab
