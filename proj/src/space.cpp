#include "greedylab/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace greedylab {

IndexSet make_index_set(std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && indices.front() == 0) {
    throw Error(ErrorKind::InvalidVector, "basis indices start at 1");
  }
  return indices;
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool are_disjoint(const IndexSet& a, const IndexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// CoeffVector

CoeffVector CoeffVector::sparse(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  CoeffVector out;
  out.entries_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (e.index == 0) throw Error(ErrorKind::InvalidVector, "basis indices start at 1");
    if (!std::isfinite(e.value)) {
      throw Error(ErrorKind::InvalidVector,
                  "non-finite coefficient at index " + std::to_string(e.index));
    }
    if (i > 0 && entries[i - 1].index == e.index) {
      throw Error(ErrorKind::InvalidVector, "repeated index " + std::to_string(e.index));
    }
    if (e.value != 0.0) out.entries_.push_back(e);
  }
  return out;
}

CoeffVector CoeffVector::dense(std::span<const double> values) {
  std::vector<Entry> entries;
  entries.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    entries.push_back({static_cast<Index>(i + 1), values[i]});
  }
  return sparse(std::move(entries));
}

IndexSet CoeffVector::support() const {
  IndexSet out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.index);
  return out;
}

double CoeffVector::coeff(Index n) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                             [](const Entry& e, Index k) { return e.index < k; });
  return (it != entries_.end() && it->index == n) ? it->value : 0.0;
}

double CoeffVector::sup_norm() const noexcept {
  double m = 0.0;
  for (const Entry& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

namespace {

template <typename Op>
CoeffVector merge(const CoeffVector& a, const CoeffVector& b, Op op) {
  std::vector<Entry> out;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  out.reserve(ea.size() + eb.size());
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].index < eb[j].index)) {
      out.push_back({ea[i].index, op(ea[i].value, 0.0)});
      ++i;
    } else if (i == ea.size() || eb[j].index < ea[i].index) {
      out.push_back({eb[j].index, op(0.0, eb[j].value)});
      ++j;
    } else {
      out.push_back({ea[i].index, op(ea[i].value, eb[j].value)});
      ++i;
      ++j;
    }
  }
  return CoeffVector::sparse(std::move(out));
}

}  // namespace

CoeffVector operator+(const CoeffVector& a, const CoeffVector& b) {
  return merge(a, b, [](double u, double v) { return u + v; });
}

CoeffVector operator-(const CoeffVector& a, const CoeffVector& b) {
  return merge(a, b, [](double u, double v) { return u - v; });
}

CoeffVector operator-(const CoeffVector& a) { return -1.0 * a; }

CoeffVector operator*(double s, const CoeffVector& a) {
  std::vector<Entry> out = a.entries();
  for (Entry& e : out) e.value *= s;
  return CoeffVector::sparse(std::move(out));
}

CoeffVector project(const CoeffVector& x, const IndexSet& indices) {
  std::vector<Entry> out;
  for (const Entry& e : x.entries()) {
    if (std::binary_search(indices.begin(), indices.end(), e.index)) out.push_back(e);
  }
  return CoeffVector::sparse(std::move(out));
}

// ---------------------------------------------------------------------------
// SignedSet

SignedSet::SignedSet(IndexSet indices)
    : indices_(make_index_set(std::move(indices))), signs_(indices_.size(), 1) {}

SignedSet::SignedSet(std::vector<Index> indices, std::vector<int> signs) {
  if (indices.size() != signs.size()) {
    throw Error(ErrorKind::DomainError, "signed set needs exactly one sign per index");
  }
  std::vector<std::pair<Index, int>> pairs;
  pairs.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) {
      throw Error(ErrorKind::DomainError, "signs must be +1 or -1");
    }
    if (indices[i] == 0) throw Error(ErrorKind::InvalidVector, "basis indices start at 1");
    pairs.emplace_back(indices[i], signs[i]);
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) {
      throw Error(ErrorKind::DomainError, "repeated index in signed set");
    }
  }
  for (const auto& [n, s] : pairs) {
    indices_.push_back(n);
    signs_.push_back(s);
  }
}

int SignedSet::sign_of(Index n) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), n);
  if (it == indices_.end() || *it != n) return 0;
  return signs_[static_cast<std::size_t>(it - indices_.begin())];
}

CoeffVector indicator(const SignedSet& set) {
  std::vector<Entry> out;
  out.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    out.push_back({set.indices()[i], static_cast<double>(set.signs()[i])});
  }
  return CoeffVector::sparse(std::move(out));
}

CoeffVector indicator(const IndexSet& set) { return indicator(SignedSet(set)); }

// ---------------------------------------------------------------------------
// SpaceSpec

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::DomainError, "exponent p must be >= 1");
}

// Scaled so that large and tiny coefficients neither overflow nor underflow.
double lp_norm(std::span<const double> values, double p) {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || std::isinf(p)) return scale;
  if (p == 1.0) {
    double s = 0.0;
    for (double v : values) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  if (p == 2.0) {
    for (double v : values) {
      const double r = v / scale;
      s += r * r;
    }
    return scale * std::sqrt(s);
  }
  for (double v : values) {
    if (v != 0.0) s += std::pow(std::abs(v) / scale, p);
  }
  return scale * std::pow(s, 1.0 / p);
}

}  // namespace

SpaceSpec SpaceSpec::lp(double p) {
  check_exponent(p);
  return SpaceSpec(Lp{p});
}

SpaceSpec SpaceSpec::weighted_lp(double p, std::vector<double> weights) {
  check_exponent(p);
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::DomainError, "weights must be positive and finite");
    }
  }
  return SpaceSpec(WeightedLp{p, std::move(weights)});
}

SpaceSpec SpaceSpec::hilbert() { return SpaceSpec(Hilbert{}); }
SpaceSpec SpaceSpec::summing_c0() { return SpaceSpec(SummingC0{}); }

bool SpaceSpec::is_lattice() const noexcept {
  return !std::holds_alternative<SummingC0>(kind_);
}

bool SpaceSpec::is_symmetric() const noexcept {
  return std::holds_alternative<Lp>(kind_) || std::holds_alternative<Hilbert>(kind_);
}

std::optional<double> SpaceSpec::exponent() const noexcept {
  if (const auto* lp = std::get_if<Lp>(&kind_)) return lp->p;
  if (const auto* w = std::get_if<WeightedLp>(&kind_)) return w->p;
  if (std::holds_alternative<Hilbert>(kind_)) return 2.0;
  return std::nullopt;
}

double SpaceSpec::norm(const CoeffVector& x) const {
  std::vector<Index> idx;
  std::vector<double> val;
  idx.reserve(x.support_size());
  val.reserve(x.support_size());
  for (const Entry& e : x.entries()) {
    idx.push_back(e.index);
    val.push_back(e.value);
  }
  return norm(idx, val);
}

double SpaceSpec::norm(std::span<const Index> indices, std::span<const double> values) const {
  if (const auto* lp = std::get_if<Lp>(&kind_)) return lp_norm(values, lp->p);

  if (const auto* w = std::get_if<WeightedLp>(&kind_)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0.0) continue;
      const Index n = indices[i];
      if (n == 0 || n > w->weights.size()) {
        throw Error(ErrorKind::IncompleteSpec, "no weight for index " + std::to_string(n));
      }
      const double wn = w->weights[n - 1];
      if (std::isinf(w->p)) {
        acc = std::max(acc, wn * std::abs(values[i]));
      } else if (w->p == 1.0) {
        acc += wn * std::abs(values[i]);
      } else {
        acc += wn * std::pow(std::abs(values[i]), w->p);
      }
    }
    if (std::isinf(w->p) || w->p == 1.0) return acc;
    return std::pow(acc, 1.0 / w->p);
  }

  if (std::holds_alternative<Hilbert>(kind_)) {
    // sqrt(<x, x>), scaled; deliberately a different route from lp_norm(.., 2).
    double scale = 0.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    const double inv = 1.0 / scale;
    double ip = 0.0;
    for (double v : values) ip = std::fma(v * inv, v * inv, ip);
    return scale * std::sqrt(ip);
  }

  // SummingC0
  double partial = 0.0;
  double best = 0.0;
  for (double v : values) {
    partial += v;
    best = std::max(best, std::abs(partial));
  }
  return best;
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  auto fmt_p = [](double p) { return std::isinf(p) ? std::string("inf") : std::to_string(p); };
  if (const auto* lp = std::get_if<Lp>(&kind_)) {
    os << "Lp(p=" << fmt_p(lp->p) << ")";
  } else if (const auto* w = std::get_if<WeightedLp>(&kind_)) {
    os << "WeightedLp(p=" << fmt_p(w->p) << ", " << w->weights.size() << " weights)";
  } else if (std::holds_alternative<Hilbert>(kind_)) {
    os << "Hilbert";
  } else {
    os << "SummingC0";
  }
  return os.str();
}

double inner(const CoeffVector& x, const CoeffVector& y) {
  const auto& a = x.entries();
  const auto& b = y.entries();
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index == b[j].index) {
      s += a[i].value * b[j].value;
      ++i;
      ++j;
    } else if (a[i].index < b[j].index) {
      ++i;
    } else {
      ++j;
    }
  }
  return s;
}

bool Tolerance::close(double a, double b) const {
  return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

bool Tolerance::leq(double a, double b) const {
  return a <= b + abs + rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace greedylab
