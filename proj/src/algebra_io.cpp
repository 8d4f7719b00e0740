#include "nilspec/algebra_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace nilspec {

const TwoForm* AlgebraDocument::twoform(const std::string& name) const {
  for (const auto& [n, f] : twoforms) {
    if (n == name) return &f;
  }
  return nullptr;
}

const Derivation* AlgebraDocument::derivation(const std::string& name) const {
  for (const auto& [n, d] : derivations) {
    if (n == name) return &d;
  }
  return nullptr;
}

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

Rational rational_at(const Token& t, int line) {
  try {
    return Rational::parse(t.text);
  } catch (const std::exception&) {
    throw ParseError(line, t.column, "expected a rational number, got '" + t.text + "'");
  }
}

int index_at(const Token& t, int line, int dim) {
  int v = 0;
  try {
    std::size_t pos = 0;
    v = std::stoi(t.text, &pos);
    if (pos != t.text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError(line, t.column, "expected an index, got '" + t.text + "'");
  }
  if (v < 1 || v > dim) throw ParseError(line, t.column, "index " + t.text + " out of range 1.." + std::to_string(dim));
  return v - 1;
}

}  // namespace

AlgebraDocument parse_algebra(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  int dim = -1;
  std::vector<std::string> names;
  bool header = false;
  AlgebraDocument doc;
  bool have_algebra = false;
  std::vector<std::tuple<int, int, QVec, int>> brackets;
  std::optional<QMatrix> metric;
  int metric_rows_pending = 0;
  enum class Block { None, TwoForm, Derivation } block = Block::None;
  std::string block_name;
  QMatrix block_matrix;
  int block_line = 0;

  auto ensure_algebra = [&](int line) {
    if (have_algebra) return;
    if (dim < 0) throw ParseError(line, 1, "'dim' must come before this line");
    doc.algebra = LieAlgebra(dim, names.empty() ? std::vector<std::string>{} : names);
    have_algebra = true;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    if (!header) {
      if (kw != "nilspec-algebra" || toks.size() != 2 || toks[1].text != "1") {
        throw ParseError(lineno, toks[0].column, "expected header 'nilspec-algebra 1'");
      }
      header = true;
      continue;
    }
    if (metric_rows_pending > 0) {
      if (static_cast<int>(toks.size()) != dim) throw ParseError(lineno, toks[0].column, "metric row needs " + std::to_string(dim) + " entries");
      int r = dim - metric_rows_pending;
      for (int c = 0; c < dim; ++c) (*metric)(r, c) = rational_at(toks[static_cast<std::size_t>(c)], lineno);
      --metric_rows_pending;
      continue;
    }
    if (block != Block::None) {
      if (kw == "end") {
        if (toks.size() != 1) throw ParseError(lineno, toks[1].column, "unexpected token after 'end'");
        if (block == Block::TwoForm) {
          doc.twoforms.emplace_back(block_name, TwoForm(block_matrix));
        } else {
          doc.derivations.emplace_back(block_name, Derivation(block_matrix));
        }
        block = Block::None;
        continue;
      }
      if (kw != "entry" || toks.size() != 4) throw ParseError(lineno, toks[0].column, "expected 'entry i j value' or 'end'");
      int i = index_at(toks[1], lineno, dim);
      int j = index_at(toks[2], lineno, dim);
      Rational v = rational_at(toks[3], lineno);
      if (block == Block::TwoForm) {
        if (i == j) throw ParseError(lineno, toks[1].column, "two-form diagonal entry must be omitted");
        block_matrix(i, j) = v;
        block_matrix(j, i) = -v;
      } else {
        block_matrix(i, j) = v;
      }
      continue;
    }
    if (kw == "dim") {
      if (dim >= 0) throw ParseError(lineno, toks[0].column, "duplicate 'dim'");
      if (toks.size() != 2) throw ParseError(lineno, toks[0].column, "expected 'dim N'");
      try {
        dim = std::stoi(toks[1].text);
      } catch (const std::exception&) {
        throw ParseError(lineno, toks[1].column, "bad dimension");
      }
      if (dim <= 0 || dim > 16) throw ParseError(lineno, toks[1].column, "dimension must be in 1..16");
    } else if (kw == "names") {
      if (dim < 0) throw ParseError(lineno, toks[0].column, "'dim' must come before 'names'");
      if (have_algebra) throw ParseError(lineno, toks[0].column, "'names' must come before brackets");
      if (static_cast<int>(toks.size()) != dim + 1) throw ParseError(lineno, toks[0].column, "expected " + std::to_string(dim) + " names");
      for (std::size_t k = 1; k < toks.size(); ++k) names.push_back(toks[k].text);
    } else if (kw == "bracket") {
      ensure_algebra(lineno);
      if (static_cast<int>(toks.size()) != dim + 3) throw ParseError(lineno, toks[0].column, "bracket needs i j and " + std::to_string(dim) + " coefficients");
      int i = index_at(toks[1], lineno, dim);
      int j = index_at(toks[2], lineno, dim);
      if (i == j) throw ParseError(lineno, toks[2].column, "bracket of a basis element with itself");
      QVec v;
      for (int k = 0; k < dim; ++k) v.push_back(rational_at(toks[static_cast<std::size_t>(k + 3)], lineno));
      doc.algebra.set_bracket(i, j, v);
    } else if (kw == "metric") {
      ensure_algebra(lineno);
      if (metric) throw ParseError(lineno, toks[0].column, "duplicate 'metric'");
      metric = QMatrix::identity(dim);
      if (toks.size() == 2 && toks[1].text == "identity") continue;
      if (toks.size() != 1) throw ParseError(lineno, toks[1].column, "expected 'metric identity' or 'metric' followed by rows");
      metric_rows_pending = dim;
    } else if (kw == "twoform" || kw == "derivation") {
      ensure_algebra(lineno);
      if (toks.size() != 2) throw ParseError(lineno, toks[0].column, "expected '" + kw + " NAME'");
      block = kw == "twoform" ? Block::TwoForm : Block::Derivation;
      block_name = toks[1].text;
      block_matrix = QMatrix(dim, dim);
      block_line = lineno;
    } else {
      throw ParseError(lineno, toks[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw ParseError(lineno + 1, 1, "empty input: missing 'nilspec-algebra 1' header");
  if (metric_rows_pending > 0) throw ParseError(lineno + 1, 1, "metric is missing rows");
  if (block != Block::None) throw ParseError(block_line, 1, "block '" + block_name + "' is not closed with 'end'");
  ensure_algebra(lineno + 1);
  if (metric) doc.algebra.set_metric(*metric);
  return doc;
}

std::string serialize_algebra(const AlgebraDocument& doc) {
  const LieAlgebra& g = doc.algebra;
  const int n = g.dim();
  std::ostringstream os;
  os << "nilspec-algebra 1\n";
  os << "dim " << n << "\n";
  os << "names";
  for (const auto& nm : g.names()) os << " " << nm;
  os << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const QVec& v = g.structure(i, j);
      if (is_zero_vec(v)) continue;
      os << "bracket " << i + 1 << " " << j + 1;
      for (const auto& c : v) os << " " << c;
      os << "\n";
    }
  }
  if (g.metric_is_identity()) {
    os << "metric identity\n";
  } else {
    os << "metric\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) os << (j ? " " : "") << g.metric()(i, j);
      os << "\n";
    }
  }
  for (const auto& [name, f] : doc.twoforms) {
    os << "twoform " << name << "\n";
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!f.matrix(i, j).is_zero()) os << "entry " << i + 1 << " " << j + 1 << " " << f.matrix(i, j) << "\n";
      }
    }
    os << "end\n";
  }
  for (const auto& [name, d] : doc.derivations) {
    os << "derivation " << name << "\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!d.matrix(i, j).is_zero()) os << "entry " << i + 1 << " " << j + 1 << " " << d.matrix(i, j) << "\n";
      }
    }
    os << "end\n";
  }
  return os.str();
}

AlgebraDocument load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

void save_algebra_file(const AlgebraDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_algebra(doc);
}

// ---- linear combinations

namespace {

class LinParser {
 public:
  explicit LinParser(std::string_view s) : s_(s) {}

  LinearCombination parse() {
    auto r = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(1, static_cast<int>(pos_) + 1, msg + " in '" + std::string(s_) + "'");
  }

  static void accumulate(LinearCombination& into, const LinearCombination& x, int sign) {
    for (const auto& [k, v] : x) {
      into[k] += sign > 0 ? v : -v;
      if (into[k].is_zero()) into.erase(k);
    }
  }

  LinearCombination sum() {
    LinearCombination acc;
    skip();
    int sign = 1;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    accumulate(acc, product(), sign);
    while (true) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
      accumulate(acc, product(), sign);
    }
    return acc;
  }

  LinearCombination product() {
    LinearCombination acc{{"", PiPoly(1)}};
    acc = times(acc, factor());
    while (true) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '*') break;
      ++pos_;
      acc = times(acc, factor());
    }
    return acc;
  }

  LinearCombination times(const LinearCombination& a, const LinearCombination& b) {
    // at most one side may carry symbols
    auto scalar_of = [](const LinearCombination& x) -> std::optional<PiPoly> {
      if (x.empty()) return PiPoly();
      if (x.size() == 1 && x.begin()->first.empty()) return x.begin()->second;
      return std::nullopt;
    };
    auto sa = scalar_of(a);
    auto sb = scalar_of(b);
    const LinearCombination* sym = nullptr;
    PiPoly c;
    if (sa) {
      c = *sa;
      sym = &b;
    } else if (sb) {
      c = *sb;
      sym = &a;
    } else {
      fail("product of two symbolic factors");
    }
    LinearCombination out;
    for (const auto& [k, v] : *sym) {
      PiPoly w = v * c;
      if (!w.is_zero()) out[k] = w;
    }
    return out;
  }

  LinearCombination factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      auto r = sum();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return r;
    }
    if (ch == '-') {
      ++pos_;
      auto r = factor();
      for (auto& [k, v] : r) v = -v;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      Rational q = Rational::parse(s_.substr(start, pos_ - start));
      if (q.is_zero()) return {};
      return {{"", PiPoly(q)}};
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "i") return {{"", PiPoly(GaussRational::i())}};
      if (name == "p") {
        int deg = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          std::size_t d0 = pos_;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
          if (d0 == pos_) fail("expected exponent");
          deg = std::stoi(std::string(s_.substr(d0, pos_ - d0)));
        }
        return {{"", PiPoly::monomial(deg)}};
      }
      return {{name, PiPoly(1)}};
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LinearCombination parse_linear_combination(std::string_view text) { return LinParser(text).parse(); }

}  // namespace nilspec
