#include "greedylab/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "greedylab/error.hpp"
#include "json.hpp"

namespace greedylab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  return j;
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "expected a finite number");
  return v;
}

std::uint64_t get_count(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    fail(field, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& field) {
  if (!j.is_boolean()) fail(field, "expected true or false");
  return j.get<bool>();
}

std::vector<double> get_numbers(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

double get_exponent(const json& j, const std::string& field) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return INFINITY;
    fail(field, "expected a number or \"inf\"");
  }
  return get_number(j, field);
}

template <typename Fn>
auto wrap(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    fail(field, e.what());
  }
}

SpaceSpec parse_space(const json& j) {
  require_object(j, "space");
  reject_unknown(j, "space", {"kind", "p", "weights", "dim_hint"});
  if (!j.contains("kind") || !j["kind"].is_string()) fail("space.kind", "missing or not a string");
  const auto kind = j["kind"].get<std::string>();
  SpaceSpec s = wrap("space", [&] {
    if (kind == "lp") {
      if (!j.contains("p")) fail("space.p", "required for lp");
      if (j.contains("weights")) fail("space.weights", "not allowed for lp");
      return SpaceSpec::lp(get_exponent(j["p"], "space.p"));
    }
    if (kind == "weighted_lp") {
      if (!j.contains("p")) fail("space.p", "required for weighted_lp");
      if (!j.contains("weights")) fail("space.weights", "required for weighted_lp");
      return SpaceSpec::weighted_lp(get_exponent(j["p"], "space.p"),
                                    get_numbers(j["weights"], "space.weights"));
    }
    if (kind == "hilbert" || kind == "summing_c0") {
      if (j.contains("p")) fail("space.p", "not allowed for " + kind);
      if (j.contains("weights")) fail("space.weights", "not allowed for " + kind);
      return kind == "hilbert" ? SpaceSpec::hilbert() : SpaceSpec::summing_c0();
    }
    fail("space.kind", "unknown kind '" + kind + "'");
  });
  if (j.contains("dim_hint")) {
    const auto n = get_count(j["dim_hint"], "space.dim_hint");
    if (n == 0) fail("space.dim_hint", "must be positive");
    s.with_dim_hint(static_cast<Index>(n));
  }
  return s;
}

Index parse_index(const std::string& key, const std::string& field) {
  Index n = 0;
  const auto* end = key.data() + key.size();
  const auto [ptr, ec] = std::from_chars(key.data(), end, n);
  if (ec != std::errc{} || ptr != end || n == 0) fail(field, "index must be a positive integer");
  return n;
}

CoeffVector parse_vector(const json& j, const std::string& field) {
  return wrap(field, [&] {
    if (j.is_array()) {
      const auto v = get_numbers(j, field);
      return CoeffVector::dense(std::span<const double>(v));
    }
    if (j.is_object()) {
      std::vector<Entry> e;
      for (const auto& [key, value] : j.items()) {
        e.push_back({parse_index(key, field + "." + key), get_number(value, field + "." + key)});
      }
      return CoeffVector::sparse(std::move(e));
    }
    fail(field, "expected an array or an object of index: value");
  });
}

Scope parse_scope(const json& j) {
  require_object(j, "scope");
  reject_unknown(j, "scope", {"universe", "exhaustive"});
  if (!j.contains("universe")) fail("scope.universe", "required");
  const auto n = get_count(j["universe"], "scope.universe");
  const bool exhaustive = j.contains("exhaustive") && get_bool(j["exhaustive"], "scope.exhaustive");
  return Scope::range(static_cast<Index>(n), exhaustive);
}

InstanceFamily parse_family(const json& j) {
  require_object(j, "family");
  reject_unknown(j, "family",
                 {"universe", "x_grid", "y_grid", "max_set_size", "max_support", "random_samples",
                  "rng_seed", "delta", "greedy_universe"});
  InstanceFamily f;
  if (j.contains("universe")) f.universe = static_cast<Index>(get_count(j["universe"], "family.universe"));
  if (j.contains("x_grid")) f.x_grid = get_numbers(j["x_grid"], "family.x_grid");
  if (j.contains("y_grid")) f.y_grid = get_numbers(j["y_grid"], "family.y_grid");
  if (j.contains("max_set_size")) f.max_set_size = get_count(j["max_set_size"], "family.max_set_size");
  if (j.contains("max_support")) f.max_support = get_count(j["max_support"], "family.max_support");
  if (j.contains("random_samples")) f.random_samples = get_count(j["random_samples"], "family.random_samples");
  if (j.contains("rng_seed")) f.rng_seed = get_count(j["rng_seed"], "family.rng_seed");
  if (j.contains("delta")) f.delta = get_number(j["delta"], "family.delta");
  if (j.contains("greedy_universe")) {
    f.greedy_universe = static_cast<Index>(get_count(j["greedy_universe"], "family.greedy_universe"));
  }
  wrap("family", [&] {
    f.validate();
    return 0;
  });
  return f;
}

VerifySettings parse_verify(const json& j) {
  require_object(j, "verify");
  reject_unknown(j, "verify",
                 {"lp_exponents", "max_n", "max_m", "l1_max_n", "l1_max_m", "hilbert_samples",
                  "hilbert_dim", "hilbert_max_m", "chain_samples", "sup_lemma_max_set",
                  "closed_form_perturbation"});
  VerifySettings v;
  auto count = [&](const char* key, auto& dst) {
    if (j.contains(key)) {
      dst = static_cast<std::remove_reference_t<decltype(dst)>>(
          get_count(j[key], std::string("verify.") + key));
    }
  };
  if (j.contains("lp_exponents")) {
    v.lp_exponents = get_numbers(j["lp_exponents"], "verify.lp_exponents");
    for (double p : v.lp_exponents)
      if (!(p > 1.0)) fail("verify.lp_exponents", "exponents must exceed 1");
  }
  count("max_n", v.max_n);
  count("max_m", v.max_m);
  count("l1_max_n", v.l1_max_n);
  count("l1_max_m", v.l1_max_m);
  count("hilbert_samples", v.hilbert_samples);
  count("hilbert_dim", v.hilbert_dim);
  count("hilbert_max_m", v.hilbert_max_m);
  count("chain_samples", v.chain_samples);
  count("sup_lemma_max_set", v.sup_lemma_max_set);
  if (j.contains("closed_form_perturbation")) {
    v.closed_form_perturbation =
        get_number(j["closed_form_perturbation"], "verify.closed_form_perturbation");
  }
  if (v.hilbert_dim == 0) fail("verify.hilbert_dim", "must be positive");
  return v;
}

json number_or_inf(double p) { return std::isinf(p) ? json("inf") : json(p); }

json vector_json(const CoeffVector& x) {
  json o = json::object();
  for (const auto& e : x.entries()) o[std::to_string(e.index)] = e.value;
  return o;
}

}  // namespace

const CoeffVector* InstanceFile::find(std::string_view name) const {
  for (const auto& [n, v] : vectors)
    if (n == name) return &v;
  return nullptr;
}

InstanceFile parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("(root)", "expected an object");
  reject_unknown(doc, "", {"space", "vectors", "scope", "family", "verify"});
  if (!doc.contains("space")) fail("space", "required");

  InstanceFile inst;
  inst.space = parse_space(doc["space"]);
  if (doc.contains("vectors")) {
    require_object(doc["vectors"], "vectors");
    for (const auto& [name, value] : doc["vectors"].items()) {
      inst.vectors.emplace_back(name, parse_vector(value, "vectors." + name));
    }
    std::sort(inst.vectors.begin(), inst.vectors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  if (doc.contains("scope")) inst.scope = parse_scope(doc["scope"]);
  if (doc.contains("family")) inst.family = parse_family(doc["family"]);
  if (doc.contains("verify")) inst.verify = parse_verify(doc["verify"]);
  return inst;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read instance file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const InstanceFile& inst) {
  json doc = json::object();
  json space = json::object();
  const auto& kind = inst.space.kind();
  if (const auto* lp = std::get_if<Lp>(&kind)) {
    space["kind"] = "lp";
    space["p"] = number_or_inf(lp->p);
  } else if (const auto* w = std::get_if<WeightedLp>(&kind)) {
    space["kind"] = "weighted_lp";
    space["p"] = number_or_inf(w->p);
    space["weights"] = w->weights;
  } else if (std::holds_alternative<Hilbert>(kind)) {
    space["kind"] = "hilbert";
  } else {
    space["kind"] = "summing_c0";
  }
  if (inst.space.dim_hint()) space["dim_hint"] = *inst.space.dim_hint();
  doc["space"] = space;

  json vectors = json::object();
  for (const auto& [name, v] : inst.vectors) vectors[name] = vector_json(v);
  doc["vectors"] = vectors;

  if (inst.scope) {
    doc["scope"] = {{"universe", inst.scope->size()}, {"exhaustive", inst.scope->exhaustive}};
  }
  if (inst.family) {
    const auto& f = *inst.family;
    doc["family"] = {{"universe", f.universe},
                     {"x_grid", f.x_grid},
                     {"y_grid", f.y_grid},
                     {"max_set_size", f.max_set_size},
                     {"max_support", f.max_support},
                     {"random_samples", f.random_samples},
                     {"rng_seed", f.rng_seed},
                     {"delta", f.delta},
                     {"greedy_universe", f.greedy_universe}};
  }
  if (inst.verify) {
    const auto& v = *inst.verify;
    doc["verify"] = {{"lp_exponents", v.lp_exponents},
                     {"max_n", v.max_n},
                     {"max_m", v.max_m},
                     {"l1_max_n", v.l1_max_n},
                     {"l1_max_m", v.l1_max_m},
                     {"hilbert_samples", v.hilbert_samples},
                     {"hilbert_dim", v.hilbert_dim},
                     {"hilbert_max_m", v.hilbert_max_m},
                     {"chain_samples", v.chain_samples},
                     {"sup_lemma_max_set", v.sup_lemma_max_set},
                     {"closed_form_perturbation", v.closed_form_perturbation}};
  }
  return doc.dump(2) + "\n";
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace greedylab
