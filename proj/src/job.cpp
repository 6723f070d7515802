#include "symgrowth/job.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "symgrowth/errors.hpp"

namespace symgrowth {

namespace {

struct Located {
  std::string text;
  std::size_t offset = 0;  // of text[0] inside the job
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] == '#') {
        while (i < text_.size() && text_[i] != '\n') text_[i++] = ' ';
        if (i < text_.size()) --i;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what, std::size_t offset) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(what, line, col);
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void skip_blank_in_line() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  Located identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                   text_[pos_] == '-'))
      ++pos_;
    if (start == pos_) fail("expected a name", start);
    return {std::string(text_.substr(start, pos_ - start)), start};
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // A value inside a block: up to ';', '}' or a newline outside brackets.
  Located block_value() {
    skip_blank_in_line();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (depth <= 0 && (c == ';' || c == '}' || (c == '\n' && !continues(start)))) break;
      ++pos_;
    }
    return trimmed(start, pos_);
  }

  // A top-level value: up to whitespace outside brackets, continuing after a trailing comma.
  Located top_value() {
    skip_blank_in_line();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (depth <= 0 && c == ';') break;
      if (depth <= 0 && std::isspace(static_cast<unsigned char>(c))) {
        std::size_t back = pos_;
        while (back > start && std::isspace(static_cast<unsigned char>(text_[back - 1]))) --back;
        std::size_t ahead = pos_;
        while (ahead < text_.size() && std::isspace(static_cast<unsigned char>(text_[ahead]))) ++ahead;
        const bool comma_before = back > start && text_[back - 1] == ',';
        const bool comma_after = ahead < text_.size() && text_[ahead] == ',';
        if (!comma_before && !comma_after) break;
        pos_ = ahead;
        continue;
      }
      ++pos_;
    }
    Located v = trimmed(start, pos_);
    if (pos_ < text_.size() && text_[pos_] == ';') ++pos_;
    return v;
  }

  void separators() {
    while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ';')) ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  // A newline inside a block value is kept when the value so far ends with a comma.
  bool continues(std::size_t start) const {
    std::size_t back = pos_;
    while (back > start && std::isspace(static_cast<unsigned char>(text_[back - 1]))) --back;
    return back > start && text_[back - 1] == ',';
  }

  Located trimmed(std::size_t a, std::size_t b) const {
    while (a < b && std::isspace(static_cast<unsigned char>(text_[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(text_[b - 1]))) --b;
    return {std::string(text_.substr(a, b - a)), a};
  }

  std::string text_;
  std::size_t pos_ = 0;
};

// Splits at commas outside brackets, keeping offsets.
std::vector<Located> split_list(const Located& v) {
  std::vector<Located> out;
  if (v.text.empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  auto push = [&](std::size_t a, std::size_t b) {
    while (a < b && std::isspace(static_cast<unsigned char>(v.text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(v.text[b - 1]))) --b;
    out.push_back({v.text.substr(a, b - a), v.offset + a});
  };
  for (std::size_t i = 0; i < v.text.size(); ++i) {
    if (v.text[i] == '[') ++depth;
    if (v.text[i] == ']') --depth;
    if (v.text[i] == ',' && depth == 0) {
      push(start, i);
      start = i + 1;
    }
  }
  push(start, v.text.size());
  return out;
}

// The inside of [ ... ].
Located unbracket(const Parser& p, const Located& v) {
  if (v.text.size() < 2 || v.text.front() != '[' || v.text.back() != ']') p.fail("expected a bracketed list", v.offset);
  return {v.text.substr(1, v.text.size() - 2), v.offset + 1};
}

std::int64_t parse_int(const Parser& p, const Located& v) {
  std::int64_t out = 0;
  const char* b = v.text.data();
  const char* e = b + v.text.size();
  if (!v.text.empty() && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || ptr != e || v.text.empty()) p.fail("expected an integer, got '" + v.text + "'", v.offset);
  return out;
}

Polynomial parse_poly(const Parser& p, const Located& v, const RingSpec& ring) {
  if (v.text.empty()) p.fail("empty polynomial", v.offset);
  try {
    return parse_polynomial(v.text, ring.vars, ring.p);
  } catch (const InputError& e) {
    p.fail(e.what(), v.offset + (e.column() > 0 ? e.column() - 1 : 0));
  }
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

using Entries = std::map<std::string, Located>;

Entries read_block(Parser& p) {
  Entries out;
  p.expect('{');
  p.separators();
  while (p.peek() != '}') {
    if (p.at_end()) p.fail("unterminated block", p.pos());
    Located key = p.identifier();
    p.expect('=');
    Located value = p.block_value();
    if (!out.emplace(key.text, value).second) p.fail("duplicate entry '" + key.text + "'", key.offset);
    p.separators();
  }
  p.expect('}');
  return out;
}

void reject_unknown(const Parser& p, const Entries& e, const std::set<std::string>& allowed, const std::string& block) {
  for (const auto& [k, v] : e)
    if (!allowed.count(k)) p.fail("unknown entry '" + k + "' in " + block + " block", v.offset);
}

RingSpec read_ring(const Parser& p, const Entries& e, std::size_t block_offset) {
  reject_unknown(p, e, {"p", "vars", "rels"}, "ring");
  RingSpec r;
  if (auto it = e.find("p"); it != e.end()) {
    std::int64_t v = parse_int(p, it->second);
    if (v < 2 || v >= (std::int64_t{1} << 31)) p.fail("modulus must lie in [2, 2^31)", it->second.offset);
    if (!is_prime(static_cast<std::uint64_t>(v))) p.fail("modulus " + it->second.text + " is not prime", it->second.offset);
    r.p = static_cast<Scalar>(v);
  }
  auto vars = e.find("vars");
  if (vars == e.end()) p.fail("ring block needs vars", block_offset);
  for (const Located& v : split_list(vars->second)) {
    if (!valid_name(v.text)) p.fail("invalid variable name '" + v.text + "'", v.offset);
    if (std::find(r.vars.begin(), r.vars.end(), v.text) != r.vars.end())
      p.fail("variable '" + v.text + "' declared twice", v.offset);
    r.vars.push_back(v.text);
  }
  if (r.vars.empty()) p.fail("ring block needs at least one variable", vars->second.offset);
  auto rels = e.find("rels");
  if (rels == e.end()) p.fail("ring block needs rels", block_offset);
  for (const Located& v : split_list(rels->second)) {
    Polynomial f = parse_poly(p, v, r);
    if (f.is_zero()) p.fail("relation '" + v.text + "' is zero", v.offset);
    if (!f.is_homogeneous()) p.fail("relation '" + v.text + "' is not homogeneous", v.offset);
    if (f.degree() < 2) p.fail("relation '" + v.text + "' has degree below 2", v.offset);
    r.rels.push_back(std::move(f));
  }
  if (r.rels.empty()) p.fail("ring block needs at least one relation", rels->second.offset);
  return r;
}

Twists read_twists(const Parser& p, const Located& v) {
  Twists out;
  for (const Located& x : split_list(unbracket(p, v))) {
    std::int64_t t = parse_int(p, x);
    if (t < -1000 || t > 1000) p.fail("twist out of range", x.offset);
    out.push_back(static_cast<int>(t));
  }
  return out;
}

ModuleSpec read_module(const Parser& p, const Entries& e, const RingSpec& ring, std::size_t block_offset) {
  reject_unknown(p, e, {"rows", "cols", "matrix"}, "module");
  ModuleSpec m;
  auto rows = e.find("rows");
  if (rows == e.end()) p.fail("module block needs rows", block_offset);
  m.rows = read_twists(p, rows->second);
  if (auto cols = e.find("cols"); cols != e.end()) m.cols = read_twists(p, cols->second);
  m.matrix.assign(m.rows.size(), std::vector<Polynomial>(m.cols.size(), Polynomial(ring.vars.size(), ring.p)));
  auto mat = e.find("matrix");
  if (mat == e.end()) {
    if (!m.cols.empty()) p.fail("module block with columns needs a matrix", block_offset);
    return m;
  }
  std::vector<Located> row_texts = split_list(unbracket(p, mat->second));
  if (row_texts.size() != m.rows.size() && !(m.cols.empty() && row_texts.empty()))
    p.fail("matrix has " + std::to_string(row_texts.size()) + " rows, expected " + std::to_string(m.rows.size()),
           mat->second.offset);
  for (std::size_t i = 0; i < row_texts.size(); ++i) {
    std::vector<Located> cells = split_list(unbracket(p, row_texts[i]));
    if (cells.size() != m.cols.size())
      p.fail("matrix row " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) + " entries, expected " +
                 std::to_string(m.cols.size()),
             row_texts[i].offset);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      Polynomial f = parse_poly(p, cells[j], ring);
      const int want = m.cols[j] - m.rows[i];
      if (!f.is_zero() && (!f.is_homogeneous() || f.degree() != want))
        p.fail("entry '" + cells[j].text + "' must be homogeneous of degree " + std::to_string(want) +
                   " (cols[" + std::to_string(j) + "] - rows[" + std::to_string(i) + "])",
               cells[j].offset);
      m.matrix[i][j] = std::move(f);
    }
  }
  return m;
}

std::string join_polys(const std::vector<Polynomial>& ps, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? ", " : "") + ps[i].to_string(names);
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out;
}

std::string ring_text(const std::string& key, const RingSpec& r) {
  std::string vars;
  for (std::size_t i = 0; i < r.vars.size(); ++i) vars += (i ? ", " : "") + r.vars[i];
  return key + " { p = " + std::to_string(r.p) + "; vars = " + vars + "; rels = " + join_polys(r.rels, r.vars) + " }\n";
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds{"resolve",   "complete",   "betti",         "poincare",
                                             "cx",        "symgrowth",  "gdim",          "operators",
                                             "duality-check", "reduce", "construct"};
  return cmds;
}

bool is_growth_command(const std::string& command) {
  return command == "poincare" || command == "cx" || command == "symgrowth" || command == "reduce" ||
         command == "construct";
}

JobSpec parse_job(std::string_view text) {
  Parser p(text);
  JobSpec job;
  std::optional<Entries> module_entries;
  std::size_t module_offset = 0;
  std::set<std::string> seen;
  while (!p.at_end()) {
    Located key = p.identifier();
    if (!seen.insert(key.text).second) p.fail("'" + key.text + "' given twice", key.offset);
    if (p.peek() == '{') {
      Entries e = read_block(p);
      if (key.text == "ring") {
        job.ring = read_ring(p, e, key.offset);
      } else if (key.text == "ring2") {
        job.ring2 = read_ring(p, e, key.offset);
      } else if (key.text == "module") {
        module_entries = std::move(e);
        module_offset = key.offset;
      } else {
        p.fail("unknown block '" + key.text + "'", key.offset);
      }
      continue;
    }
    p.expect('=');
    Located v = p.top_value();
    if (key.text == "cmd") {
      if (std::find(known_commands().begin(), known_commands().end(), v.text) == known_commands().end())
        p.fail("unknown command '" + v.text + "'", v.offset);
      job.command = v.text;
    } else if (key.text == "steps") {
      std::int64_t s = parse_int(p, v);
      if (s < 1 || s > 200) p.fail("steps must lie in [1, 200]", v.offset);
      job.steps = static_cast<int>(s);
    } else if (key.text == "tail") {
      std::int64_t t = parse_int(p, v);
      if (t < 1 || t > 200) p.fail("tail must lie in [1, 200]", v.offset);
      job.tail = static_cast<int>(t);
    } else if (key.text == "seed") {
      std::int64_t s = parse_int(p, v);
      if (s < 0) p.fail("seed must be nonnegative", v.offset);
      job.seed = static_cast<std::uint64_t>(s);
    } else if (key.text == "eta") {
      std::vector<std::int64_t> eta;
      for (const Located& x : split_list(v)) eta.push_back(parse_int(p, x));
      if (eta.empty()) p.fail("eta needs at least one coefficient", v.offset);
      job.eta = std::move(eta);
    } else if (key.text == "fixture") {
      const bool ok = !v.text.empty() && std::all_of(v.text.begin(), v.text.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
      });
      if (!ok) p.fail("invalid fixture name '" + v.text + "'", v.offset);
      job.fixture = v.text;
    } else {
      p.fail("unknown key '" + key.text + "'", key.offset);
    }
  }
  if (module_entries) {
    if (!job.ring) p.fail("module block needs a ring block", module_offset);
    job.module = read_module(p, *module_entries, *job.ring, module_offset);
  }
  if (job.fixture && (job.ring || job.module))
    p.fail("a job names either a fixture or a ring, not both", 0);
  if (job.ring2 && !job.ring) p.fail("ring2 needs a ring block", 0);
  return job;
}

std::string canonical_text(const JobSpec& job) {
  std::ostringstream out;
  if (job.fixture) out << "fixture = " << *job.fixture << "\n";
  if (job.ring) out << ring_text("ring", *job.ring);
  if (job.ring2) out << ring_text("ring2", *job.ring2);
  if (job.module) {
    const ModuleSpec& m = *job.module;
    out << "module { rows = [" << join_ints(m.rows) << "]; cols = [" << join_ints(m.cols) << "]";
    if (!m.cols.empty()) {
      out << "; matrix = [";
      for (std::size_t i = 0; i < m.matrix.size(); ++i)
        out << (i ? ", " : "") << "[" << join_polys(m.matrix[i], job.ring->vars) << "]";
      out << "]";
    }
    out << " }\n";
  }
  if (!job.command.empty()) out << "cmd = " << job.command << "\n";
  if (job.steps) out << "steps = " << *job.steps << "\n";
  if (job.tail) out << "tail = " << *job.tail << "\n";
  if (job.eta) {
    out << "eta = ";
    for (std::size_t i = 0; i < job.eta->size(); ++i) out << (i ? ", " : "") << (*job.eta)[i];
    out << "\n";
  }
  if (job.seed) out << "seed = " << *job.seed << "\n";
  return out.str();
}

RingSpec ring_spec_of(const GradedAlgebra& a) { return RingSpec{a.modulus(), a.names(), a.relations()}; }

ModuleSpec module_spec_of(const Presentation& p) { return ModuleSpec{p.rows, p.cols, p.entries}; }

AlgebraPtr build_ring(const RingSpec& r) {
  return GradedAlgebra::build(r.vars.size(), r.p, r.rels, std::nullopt, r.vars);
}

GradedModule build_module(const AlgebraPtr& ring, const std::optional<ModuleSpec>& m) {
  if (!m) return free_module(ring, {0});
  return from_presentation(ring, m->rows, m->cols, m->matrix);
}

}  // namespace symgrowth
