#include "symgrowth/growth.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include <boost/multiprecision/cpp_int.hpp>

#include "symgrowth/errors.hpp"

namespace symgrowth {

namespace {

using boost::multiprecision::cpp_rational;
using QPoly = std::vector<cpp_rational>;

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

// Quotient and remainder of a by a nonzero b.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  if (degree(a) < degree(b)) return {{}, a};
  QPoly q(a.size() - b.size() + 1, 0);
  for (int k = degree(a) - degree(b); k >= 0; --k) {
    cpp_rational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Connection polynomial and linear complexity of the shortest recurrence.
std::pair<QPoly, std::size_t> berlekamp_massey(const std::vector<cpp_rational>& s) {
  QPoly c{1}, b{1};
  std::size_t len = 0, shift = 1;
  cpp_rational last = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    cpp_rational d = s[n];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d += c[i] * s[n - i];
    if (d == 0) {
      ++shift;
      continue;
    }
    QPoly t = c;
    cpp_rational coef = d / last;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] -= coef * b[i];
    if (2 * len <= n) {
      len = n + 1 - len;
      b = std::move(t);
      last = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  trim(c);
  return {c, len};
}

std::optional<IntPoly> to_integers(const QPoly& f) {
  IntPoly out;
  for (const cpp_rational& c : f) {
    if (denominator(c) != 1) return std::nullopt;
    auto num = numerator(c);
    if (num > INT64_MAX || num < INT64_MIN) return std::nullopt;
    out.push_back(static_cast<std::int64_t>(num));
  }
  return out;
}

// Divides f by (t - 1) when f(1) = 0.
bool divide_by_t_minus_one(IntPoly& f) {
  trim(f);
  if (f.empty()) return false;
  std::int64_t sum = 0;
  for (auto c : f) sum += c;
  if (sum != 0) return false;
  IntPoly q(f.size() - 1, 0);
  std::int64_t carry = 0;
  for (std::size_t k = f.size() - 1; k >= 1; --k) {
    carry += f[k];
    q[k - 1] = carry;
  }
  f = std::move(q);
  return true;
}

// Exact division by a monic polynomial; false when the remainder is nonzero.
bool divide_exact(IntPoly& f, const IntPoly& g) {
  if (f.size() < g.size()) return false;
  IntPoly a = f;
  IntPoly q(a.size() - g.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::int64_t c = a[k + g.size() - 1];
    q[k] = c;
    for (std::size_t j = 0; j < g.size(); ++j) a[k + j] -= c * g[j];
  }
  if (std::any_of(a.begin(), a.end(), [](std::int64_t c) { return c != 0; })) return false;
  trim(q);
  f = std::move(q);
  return true;
}

IntPoly cyclotomic_uncached(std::size_t m, std::map<std::size_t, IntPoly>& cache);

IntPoly cyclotomic(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, IntPoly> cache;
  std::lock_guard lock(mutex);
  return cyclotomic_uncached(m, cache);
}

IntPoly cyclotomic_uncached(std::size_t m, std::map<std::size_t, IntPoly>& cache) {
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  IntPoly f(m + 1, 0);
  f[0] = -1;
  f[m] = 1;
  for (std::size_t d = 1; d < m; ++d)
    if (m % d == 0 && !divide_exact(f, cyclotomic_uncached(d, cache))) throw InternalFault("cyclotomic polynomial division failed");
  return cache.emplace(m, f).first->second;
}

}  // namespace

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
  IntPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

bool divides(const IntPoly& den, const IntPoly& num) {
  QPoly d(den.begin(), den.end()), n(num.begin(), num.end());
  trim(d);
  if (d.empty()) throw InternalFault("division by the zero polynomial");
  return divmod(n, d).second.empty();
}

std::vector<std::int64_t> RationalSeries::expand(std::size_t count) const {
  std::vector<std::int64_t> s(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::int64_t v = i < numerator.size() ? numerator[i] : 0;
    for (std::size_t j = 1; j < denominator.size() && j <= i; ++j) v -= denominator[j] * s[i - j];
    s[i] = v;
  }
  return s;
}

std::optional<RationalSeries> fit_rational(const std::vector<std::size_t>& seq, std::size_t guard) {
  const std::size_t len = seq.size();
  if (len < 2 * guard + 4) return std::nullopt;
  const std::size_t fit_len = len - guard;
  std::vector<cpp_rational> s(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(fit_len));
  auto [c, order] = berlekamp_massey(s);
  if (2 * order > fit_len) return std::nullopt;

  QPoly num(order, 0);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j <= i && j < c.size(); ++j) num[i] += c[j] * s[i - j];
  trim(num);
  QPoly den = c;
  QPoly g = gcd(num, den);
  if (!g.empty() && degree(g) > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  const cpp_rational lead = den.front();
  for (auto& x : num) x /= lead;
  for (auto& x : den) x /= lead;
  if (2 * static_cast<std::size_t>(degree(den)) > len - 2 * guard) return std::nullopt;

  auto n = to_integers(num);
  auto d = to_integers(den);
  if (!n || !d) return std::nullopt;
  RationalSeries out{*n, *d};
  auto check = out.expand(len);
  for (std::size_t i = 0; i < len; ++i)
    if (check[i] != static_cast<std::int64_t>(seq[i])) return std::nullopt;
  return out;
}

int pole_order_at_one(const RationalSeries& s) {
  auto multiplicity = [](IntPoly f) {
    int k = 0;
    while (divide_by_t_minus_one(f)) ++k;
    return k;
  };
  return std::max(0, multiplicity(s.denominator) - multiplicity(s.numerator));
}

bool is_cyclotomic_product(const IntPoly& poly) {
  IntPoly f = poly;
  trim(f);
  if (f.empty()) return false;
  const std::size_t deg = f.size() - 1;
  for (std::size_t m = 1; f.size() > 1 && m <= 2 * deg * deg + 2; ++m) {
    const IntPoly phi = cyclotomic(m);
    if (phi.size() > f.size()) continue;
    while (f.size() >= phi.size() && divide_exact(f, phi)) {
    }
  }
  return f.size() == 1 && (f[0] == 1 || f[0] == -1);
}

std::string Complexity::to_string() const {
  switch (kind) {
    case Kind::finite:
      return std::to_string(value);
    case Kind::exponential:
      return "exponential";
    case Kind::inconclusive:
      break;
  }
  return "inconclusive";
}

Complexity complexity(const std::vector<std::size_t>& seq, std::size_t guard) {
  Complexity out;
  if (auto fit = fit_rational(seq, guard)) {
    out.fit = fit;
    if (is_cyclotomic_product(fit->denominator)) {
      out.kind = Complexity::Kind::finite;
      out.value = pole_order_at_one(*fit);
    } else {
      out.kind = Complexity::Kind::exponential;
    }
    return out;
  }
  if (seq.size() < 6) return out;
  out.heuristic = true;

  bool growing = true;
  const std::size_t n = seq.size();
  for (std::size_t i = n - 6; i + 1 < n; ++i)
    if (seq[i] == 0 || 10 * seq[i + 1] <= 11 * seq[i]) growing = false;
  // Polynomial growth also has ratios above 1.1 early on, but they keep shrinking.
  if (growing) {
    const long double last = static_cast<long double>(seq[n - 1]) / seq[n - 2];
    const long double early = static_cast<long double>(seq[n - 5]) / seq[n - 6];
    growing = last >= 0.98L * early;
  }
  if (growing) {
    out.kind = Complexity::Kind::exponential;
    return out;
  }

  std::vector<std::int64_t> diff(seq.begin(), seq.end());
  for (int t = 0; diff.size() >= 3; ++t) {
    if (std::all_of(diff.end() - 3, diff.end(), [](std::int64_t v) { return v <= 0; })) {
      out.kind = Complexity::Kind::finite;
      out.value = t;
      return out;
    }
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  out.heuristic = false;
  return out;
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes:
      return "yes";
    case Tri::no:
      return "no";
    case Tri::inconclusive:
      break;
  }
  return "inconclusive";
}

Tri same_complexity(const Complexity& a, const Complexity& b) {
  using K = Complexity::Kind;
  if (a.heuristic || b.heuristic || a.kind == K::inconclusive || b.kind == K::inconclusive) return Tri::inconclusive;
  if (a.kind == K::finite && b.kind == K::finite) return a.value == b.value ? Tri::yes : Tri::no;
  if (a.kind != b.kind) return Tri::no;
  return Tri::inconclusive;
}

std::vector<std::size_t> positive_sequence(const BettiTable& t) {
  std::vector<std::size_t> s;
  for (int n = 0; n <= t.hi(); ++n) s.push_back(t.at(n));
  return s;
}

std::vector<std::size_t> negative_sequence(const BettiTable& t) {
  std::vector<std::size_t> s;
  for (int n = 0; n >= t.lo; --n) s.push_back(t.at(n));
  return s;
}

GrowthReport symmetric_growth_verdict(const FreeComplex& c, std::size_t guard) {
  return growth_of_table(betti(c), guard);
}

GrowthReport growth_of_table(const BettiTable& t, std::size_t guard) {
  if (t.lo > 0 || t.hi() < 0) throw PreconditionError("growth verdict needs a window containing index 0");
  GrowthReport r;
  r.guard = guard;
  r.steps = std::min(-t.lo, t.hi());
  r.betti_plus = positive_sequence(t);
  std::vector<std::size_t> minus = negative_sequence(t);
  r.betti_minus.assign(minus.begin() + 1, minus.end());
  r.cx_plus = complexity(r.betti_plus, guard);
  r.cx_minus = complexity(minus, guard);
  if (r.cx_plus.fit) r.pole_order_plus = pole_order_at_one(*r.cx_plus.fit);
  if (r.cx_minus.fit) r.pole_order_minus = pole_order_at_one(*r.cx_minus.fit);
  r.symmetric = same_complexity(r.cx_plus, r.cx_minus);
  return r;
}

void add_dual_comparison(GrowthReport& report, const FreeComplex& dual_complex) {
  BettiTable t = betti(dual_complex);
  report.cx_plus_dual = complexity(positive_sequence(t), report.guard);
  report.cx_minus_dual = complexity(negative_sequence(t), report.guard);
  const Complexity* all[] = {&report.cx_plus, &report.cx_minus, &*report.cx_plus_dual, &*report.cx_minus_dual};
  Tri v = Tri::yes;
  for (const Complexity* x : all) {
    Tri s = same_complexity(*all[0], *x);
    if (s == Tri::no) {
      v = Tri::no;
      break;
    }
    if (s == Tri::inconclusive) v = Tri::inconclusive;
  }
  report.four_way = v;
}

GrowthReport growth_report(const GradedModule& m, int steps, std::size_t guard) {
  CompleteResolution cr = complete_resolution(m, steps);
  GrowthReport r = symmetric_growth_verdict(cr.complex, guard);
  CompleteResolution dual_cr = complete_resolution(*cr.dual_module, steps);
  add_dual_comparison(r, dual_cr.complex);
  return r;
}

}  // namespace symgrowth
