#include "symgrowth/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "symgrowth/errors.hpp"

namespace symgrowth {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

namespace {

void fill_monomials(std::size_t n, std::size_t pos, int remaining, Exponent& cur, std::vector<Exponent>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    cur[pos] = a;
    fill_monomials(n, pos + 1, remaining - a, cur, out);
  }
}

// Graded-lex comparison: true when a comes before b (a is larger).
bool grlex_greater(const Exponent& a, const Exponent& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

}  // namespace

std::vector<Exponent> monomials_of_degree(std::size_t n, int d) {
  std::vector<Exponent> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponent cur(n, 0);
  fill_monomials(n, 0, d, cur, out);
  return out;
}

Polynomial Polynomial::monomial(const Exponent& e, Scalar coeff, Scalar p) {
  Polynomial f(e.size(), p);
  f.add_term(e, coeff);
  return f;
}

Polynomial Polynomial::constant(std::size_t nvars, Scalar c, Scalar p) {
  return monomial(Exponent(nvars, 0), c, p);
}

Scalar Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void Polynomial::add_term(const Exponent& e, Scalar c) {
  if (e.size() != nvars_) throw InternalFault("exponent length does not match variable count");
  c %= p_;
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second = fp::add(it->second, c, p_);
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = total_degree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total_degree(t.first) == d; });
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial out(nvars_, p_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) out.terms_.emplace(e, c);
  return out;
}

Polynomial Polynomial::padded(std::size_t total, std::size_t offset) const {
  if (offset + nvars_ > total) throw InternalFault("padding does not fit");
  Polynomial out(total, p_);
  for (const auto& [e, c] : terms_) {
    Exponent big(total, 0);
    std::copy(e.begin(), e.end(), big.begin() + static_cast<std::ptrdiff_t>(offset));
    out.terms_.emplace(std::move(big), c);
  }
  return out;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Scalar>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return grlex_greater(a.first, b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    std::int64_t v = fp::to_signed(c, p_);
    if (v < 0) {
      os << (first ? "-" : " - ");
      v = -v;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    bool is_const = total_degree(e) == 0;
    if (v != 1 || is_const) os << v;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, fp::neg(c, a.p_));
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.p_ != b.p_) throw InternalFault("polynomial ring mismatch");
  Polynomial out(a.nvars_, a.p_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, fp::mul(ca, cb, a.p_));
    }
  return out;
}

Polynomial Polynomial::scaled(Scalar s) const {
  Polynomial out(nvars_, p_);
  for (const auto& [e, c] : terms_) out.add_term(e, fp::mul(c, s, p_));
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& names, Scalar p)
      : text_(text), names_(names), p_(p) {
    order_.resize(names.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return names[a].size() > names[b].size(); });
  }

  Polynomial parse() {
    Polynomial result(names_.size(), p_);
    skip_ws();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < text_.size()) {
      Scalar sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = p_ - 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      result = result + parse_term().scaled(sign);
      skip_ws();
    }
    return result;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw InputError(msg, 0, pos_ + 1); }

  std::int64_t parse_integer() {
    std::int64_t v = 0;
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000'000'000LL) {
        pos_ = start;
        fail("integer too large");
      }
      ++pos_;
    }
    return v;
  }

  Polynomial parse_term() {
    Exponent e(names_.size(), 0);
    Scalar coeff = 1;
    bool any = false;
    while (true) {
      skip_ws();
      char c = peek();
      if (c == '\0' || c == '+' || c == '-') break;
      if (c == '*') {
        if (!any) fail("'*' without a left factor");
        ++pos_;
        skip_ws();
        char n = peek();
        if (n == '\0' || n == '+' || n == '-' || n == '*') fail("'*' without a right factor");
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff = fp::mul(coeff, fp::from_int(parse_integer(), p_), p_);
        any = true;
        continue;
      }
      std::size_t var = match_variable();
      skip_ws();
      int power = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent after '^'");
        std::int64_t v = parse_integer();
        if (v > 1000) fail("exponent too large");
        power = static_cast<int>(v);
      }
      e[var] += power;
      any = true;
    }
    if (!any) fail("expected a term");
    return Polynomial::monomial(e, coeff, p_);
  }

  std::size_t match_variable() {
    for (std::size_t idx : order_) {
      const std::string& name = names_[idx];
      if (!name.empty() && text_.substr(pos_, name.size()) == name) {
        pos_ += name.size();
        return idx;
      }
    }
    fail(std::string("unknown symbol '") + peek() + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  Scalar p_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> order_;
};

std::vector<std::string> default_names(std::size_t n) {
  if (n <= 3) {
    static const char* small[] = {"x", "y", "z"};
    return std::vector<std::string>(small, small + n);
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names, Scalar p) {
  return PolyParser(text, names, p).parse();
}

int default_degree_cap(std::size_t nvars, const std::vector<Polynomial>& relations) {
  if (relations.size() >= nvars) {
    int s = 0;
    for (const auto& f : relations) s += f.degree();
    return s + 2;
  }
  return 20;
}

AlgebraPtr GradedAlgebra::build(std::size_t nvars, Scalar p, std::vector<Polynomial> relations,
                                std::optional<int> degree_cap, std::vector<std::string> names) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  if (names.empty()) names = default_names(nvars);
  if (names.size() != nvars) throw InputError("variable name count does not match variable count");
  for (std::size_t r = 0; r < relations.size(); ++r) {
    const Polynomial& f = relations[r];
    std::string which = "relation " + std::to_string(r + 1);
    if (f.num_vars() != nvars || f.modulus() != p) throw InputError(which + " is over a different ring");
    if (f.is_zero()) throw InputError(which + " is zero");
    if (!f.is_homogeneous()) throw InputError(which + " is not homogeneous");
    if (f.degree() < 2) throw InputError(which + " has degree below 2");
  }
  int cap = degree_cap.value_or(default_degree_cap(nvars, relations));
  if (cap < 1) throw InputError("degree cap must be at least 1");

  std::shared_ptr<GradedAlgebra> a(new GradedAlgebra());
  a->nvars_ = nvars;
  a->p_ = p;
  a->relations_ = std::move(relations);
  a->names_ = std::move(names);

  int d = 0;
  for (;; ++d) {
    if (d > cap) throw InputError("not Artinian within cap " + std::to_string(cap));
    Piece piece;
    piece.monomials = monomials_of_degree(nvars, d);
    for (std::size_t i = 0; i < piece.monomials.size(); ++i) piece.monomial_index.emplace(piece.monomials[i], i);

    std::vector<Vector> rows;
    for (const auto& f : a->relations_) {
      int df = f.degree();
      for (const auto& m : monomials_of_degree(nvars, d - df)) {
        Vector row(piece.monomials.size(), 0);
        for (const auto& [e, c] : f.terms()) {
          Exponent prod = e;
          for (std::size_t i = 0; i < nvars; ++i) prod[i] += m[i];
          row[piece.monomial_index.at(prod)] = c;
        }
        rows.push_back(std::move(row));
      }
    }
    Matrix ideal(rows.size(), piece.monomials.size(), p);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) ideal(r, c) = rows[r][c];
    RowEchelon e = rref(ideal);
    std::vector<bool> is_pivot(piece.monomials.size(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> position(piece.monomials.size(), 0);
    for (std::size_t c = 0; c < piece.monomials.size(); ++c)
      if (!is_pivot[c]) {
        position[c] = piece.basis_columns.size();
        piece.basis_columns.push_back(c);
        piece.basis.push_back(piece.monomials[c]);
      }
    if (piece.basis.empty()) break;

    piece.normal_form = Matrix(piece.basis.size(), piece.monomials.size(), p);
    for (auto c : piece.basis_columns) piece.normal_form(position[c], c) = 1;
    // A leading monomial equals minus the rest of its reduced row.
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      for (auto c : piece.basis_columns)
        piece.normal_form(position[c], e.pivots[r]) = fp::neg(e.reduced(r, c), p);
    a->pieces_.push_back(std::move(piece));
  }
  if (d == 0) throw InputError("a relation is a unit; the quotient is zero");
  a->top_ = d - 1;

  for (int deg = 0; deg <= a->top_; ++deg)
    for (std::size_t i = 0; i < a->pieces_[deg].basis.size(); ++i) a->basis_lookup_.emplace(a->pieces_[deg].basis[i], i);

  a->var_action_.assign(nvars, {});
  for (std::size_t i = 0; i < nvars; ++i)
    for (int deg = 0; deg <= a->top_; ++deg) {
      Matrix m(a->dim(deg + 1), a->dim(deg), p);
      for (std::size_t j = 0; j < a->dim(deg); ++j) {
        Exponent e = a->pieces_[deg].basis[j];
        e[i] += 1;
        m.set_column(j, a->normal_form(Polynomial::monomial(e, 1, p), deg + 1));
      }
      a->var_action_[i].push_back(std::move(m));
    }

  a->divide_.assign(a->top_ + 1, {});
  for (int deg = 1; deg <= a->top_; ++deg)
    for (const auto& b : a->pieces_[deg].basis) {
      std::size_t i = 0;
      while (b[i] == 0) ++i;
      Exponent q = b;
      q[i] -= 1;
      auto idx = a->basis_index(q);
      if (!idx) throw InternalFault("standard monomials are not closed under division");
      a->divide_[deg].emplace_back(i, *idx);
    }

  a->mult_.assign(a->top_ + 1, {});
  for (int e = 0; e <= a->top_; ++e) {
    for (std::size_t b = 0; b < a->dim(e); ++b) {
      std::vector<Matrix> by_k;
      for (int k = 0; k <= a->top_; ++k) {
        Matrix m(a->dim(k + e), a->dim(k), p);
        for (std::size_t j = 0; j < a->dim(k); ++j) {
          Exponent prod = a->pieces_[e].basis[b];
          const Exponent& other = a->pieces_[k].basis[j];
          for (std::size_t i = 0; i < nvars; ++i) prod[i] += other[i];
          m.set_column(j, a->normal_form(Polynomial::monomial(prod, 1, p), k + e));
        }
        by_k.push_back(std::move(m));
      }
      a->mult_[e].push_back(std::move(by_k));
    }
  }
  return a;
}

std::size_t GradedAlgebra::dim(int d) const {
  if (d < 0 || d > top_) return 0;
  return pieces_[d].basis.size();
}

std::size_t GradedAlgebra::total_dim() const {
  std::size_t s = 0;
  for (int d = 0; d <= top_; ++d) s += dim(d);
  return s;
}

std::vector<std::size_t> GradedAlgebra::hilbert_function() const {
  std::vector<std::size_t> h;
  for (int d = 0; d <= top_; ++d) h.push_back(dim(d));
  return h;
}

const std::vector<Exponent>& GradedAlgebra::basis(int d) const {
  static const std::vector<Exponent> empty;
  if (d < 0 || d > top_) return empty;
  return pieces_[d].basis;
}

std::optional<std::size_t> GradedAlgebra::basis_index(const Exponent& e) const {
  auto it = basis_lookup_.find(e);
  if (it == basis_lookup_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::size_t, std::size_t> GradedAlgebra::divide_by_variable(int d, std::size_t index) const {
  return divide_.at(d).at(index);
}

Vector GradedAlgebra::normal_form(const Polynomial& f, int d) const {
  Vector out(dim(d), 0);
  if (d < 0 || d > top_) return out;
  const Piece& piece = pieces_[d];
  for (const auto& [e, c] : f.terms()) {
    if (total_degree(e) != d) continue;
    std::size_t col = piece.monomial_index.at(e);
    for (std::size_t r = 0; r < out.size(); ++r) {
      Scalar v = piece.normal_form(r, col);
      if (v != 0) out[r] = fp::add(out[r], fp::mul(v, c, p_), p_);
    }
  }
  return out;
}

Vector GradedAlgebra::normal_form(const Polynomial& f) const {
  Vector out;
  for (int d = 0; d <= top_; ++d) {
    Vector piece = normal_form(f, d);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

const Matrix& GradedAlgebra::variable_action(std::size_t i, int d) const {
  if (d < 0 || d > top_) throw InternalFault("variable action requested outside the algebra");
  return var_action_.at(i).at(d);
}

Matrix GradedAlgebra::multiplication_matrix(const Vector& a, int deg, int k) const {
  Matrix m(dim(k + deg), dim(k), p_);
  if (m.empty() || deg < 0) return m;
  for (std::size_t b = 0; b < a.size(); ++b)
    if (a[b] != 0) m.add_block(0, 0, mult_[deg][b][k], a[b]);
  return m;
}

Vector GradedAlgebra::multiply(const Vector& a, int da, const Vector& b, int db) const {
  return multiplication_matrix(a, da, db).apply(b);
}

Polynomial GradedAlgebra::lift(const Vector& a, int d) const {
  Polynomial f(nvars_, p_);
  const auto& b = basis(d);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) f.add_term(b[i], a[i]);
  return f;
}

std::string GradedAlgebra::element_to_string(const Vector& a, int d) const {
  return lift(a, d).to_string(names_);
}

Vector GradedAlgebra::one() const { return Vector{1}; }

Vector GradedAlgebra::variable(std::size_t i) const {
  Exponent e(nvars_, 0);
  e[i] = 1;
  return normal_form(Polynomial::monomial(e, 1, p_), 1);
}

std::optional<CIStructure> verify_ci(const GradedAlgebra& a) {
  if (a.relations().size() != a.num_vars()) return std::nullopt;
  CIStructure ci;
  ci.num_vars = a.num_vars();
  ci.relations = a.relations();
  int expected = 0;
  for (const auto& f : a.relations()) {
    ci.degrees.push_back(f.degree());
    expected += f.degree() - 1;
  }
  ci.socle_degree = a.top();
  if (a.top() != expected)
    throw InternalFault("socle degree " + std::to_string(a.top()) + " differs from the complete intersection value " +
                        std::to_string(expected));
  for (int d = 0; d <= a.top(); ++d)
    if (a.dim(d) != a.dim(a.top() - d)) throw InternalFault("Hilbert function of a complete intersection is not symmetric");
  return ci;
}

AlgebraPtr tensor_algebra(const GradedAlgebra& a1, const GradedAlgebra& a2) {
  if (a1.modulus() != a2.modulus()) throw InputError("tensor product of algebras over different moduli");
  std::size_t n1 = a1.num_vars(), n2 = a2.num_vars(), n = n1 + n2;
  std::vector<std::string> names = a1.names();
  for (const auto& name : a2.names()) {
    std::string candidate = name;
    while (std::find(names.begin(), names.end(), candidate) != names.end()) candidate += "2";
    names.push_back(candidate);
  }
  std::vector<Polynomial> rels;
  for (const auto& f : a1.relations()) rels.push_back(f.padded(n, 0));
  for (const auto& f : a2.relations()) rels.push_back(f.padded(n, n1));
  int cap = a1.top() + a2.top() + 2;
  return GradedAlgebra::build(n, a1.modulus(), std::move(rels), cap, std::move(names));
}

}  // namespace symgrowth
