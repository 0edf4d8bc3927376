#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "seqwalk/quiver.hpp"

namespace seqwalk {

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

struct ParsedInput {
  BoundQuiver quiver;
  bool truncation_given = false;
};

namespace detail {

inline bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '*' && c != '+' && c != '-' && c != '~' && c != '#' && c != '/';
}

struct Token {
  std::string text;
  int column = 0;
};

inline std::vector<Token> split_words(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

/// Relation expression parser: `2*a1*a2 - 1/3*b1*b2`.
class RelationParser {
 public:
  RelationParser(const std::string& text, int line, int col0, const Quiver& q, std::uint32_t p)
      : s_(text), line_(line), col0_(col0), q_(q), p_(p) {}

  LinComb parse() {
    LinComb out;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      Scalar sign(1);
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        if (s_[pos_] == '-') sign = Scalar(-1);
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      auto [coef, path] = term();
      try {
        out.add(path, Scalar::in_field((sign * coef).rational(), p_));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::EndpointMismatch) fail("relation paths must share source and target");
        throw;
      }
      first = false;
      skip();
    }
    if (first) fail("empty relation");
    if (out.is_zero()) fail("relation cancels to zero");
    return out;
  }

 private:
  std::pair<Scalar, Path> term() {
    Scalar coef(1);
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      coef = number();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '*') fail("expected '*' after coefficient");
      ++pos_;
      skip();
    }
    std::vector<int> arrows;
    for (;;) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
      if (start == pos_) fail("expected an arrow name");
      std::string name = s_.substr(start, pos_ - start);
      auto a = q_.find_arrow(name);
      if (!a) fail("unknown arrow '" + name + "'", start);
      arrows.push_back(*a);
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        skip();
        continue;
      }
      break;
    }
    if (arrows.size() < 2) fail("relation branch shorter than two");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
      if (q_.arrow(arrows[i]).target != q_.arrow(arrows[i + 1]).source) fail("relation branch arrows do not compose");
    return {coef, Path::from_arrows(q_, arrows)};
  }

  Scalar number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string num = s_.substr(start, pos_ - start);
    std::string den = "1";
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t d0 = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d0 == pos_) fail("malformed rational coefficient");
      den = s_.substr(d0, pos_ - d0);
    }
    mpz_class n(num), d(den);
    if (d == 0) fail("zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(q);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError(line_, col0_ + static_cast<int>(at), msg);
  }

  const std::string& s_;
  int line_, col0_;
  const Quiver& q_;
  std::uint32_t p_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the bound-quiver text format. Without a `truncate` line the
/// truncation defaults to longest branch + 2.
inline ParsedInput parse_bound_quiver(const std::string& text) {
  struct ArrowLine {
    std::string name, src, tgt;
    int line, col_src, col_tgt, col_name;
  };
  struct RelLine {
    std::string expr;
    int line, col;
  };
  std::string name = "Q";
  std::vector<std::string> points;
  int points_line = 0;
  std::vector<ArrowLine> arrows;
  std::vector<RelLine> rels;
  int truncation = 0;
  long field = 0;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    auto words = detail::split_words(line);
    if (words.empty()) continue;
    const std::string& kw = words[0].text;
    if (kw == "quiver") {
      if (words.size() != 2) throw ParseError(lineno, words[0].column, "expected: quiver <name>");
      name = words[1].text;
    } else if (kw == "points") {
      if (words.size() < 2) throw ParseError(lineno, words[0].column, "expected at least one point");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (std::find(points.begin(), points.end(), words[i].text) != points.end())
          throw ParseError(lineno, words[i].column, "duplicate point '" + words[i].text + "'");
        points.push_back(words[i].text);
      }
      points_line = lineno;
    } else if (kw == "arrow") {
      if (words.size() != 4) throw ParseError(lineno, words[0].column, "expected: arrow <name> <source> <target>");
      const std::string& an = words[1].text;
      if (std::isdigit(static_cast<unsigned char>(an[0])) ||
          !std::all_of(an.begin(), an.end(), detail::is_name_char))
        throw ParseError(lineno, words[1].column, "invalid arrow name '" + an + "'");
      for (const auto& a : arrows)
        if (a.name == an) throw ParseError(lineno, words[1].column, "duplicate arrow '" + an + "'");
      arrows.push_back({an, words[2].text, words[3].text, lineno, words[2].column, words[3].column, words[1].column});
    } else if (kw == "rel") {
      std::size_t at = line.find("rel") + 3;
      rels.push_back({line.substr(at), lineno, static_cast<int>(at) + 1});
    } else if (kw == "truncate") {
      if (words.size() != 2) throw ParseError(lineno, words[0].column, "expected: truncate <N>");
      try {
        std::size_t used = 0;
        truncation = std::stoi(words[1].text, &used);
        if (used != words[1].text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(lineno, words[1].column, "malformed truncation");
      }
      if (truncation < 2) throw ParseError(lineno, words[1].column, "truncation must be at least 2");
    } else if (kw == "field") {
      if (words.size() != 2) throw ParseError(lineno, words[0].column, "expected: field <p>");
      try {
        std::size_t used = 0;
        field = std::stol(words[1].text, &used);
        if (used != words[1].text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(lineno, words[1].column, "malformed field characteristic");
      }
      if (field < 0 || field > 2147483647 || (field != 0 && !is_prime(static_cast<std::uint32_t>(field))))
        throw ParseError(lineno, words[1].column, "field characteristic must be 0 or a prime");
    } else {
      throw ParseError(lineno, words[0].column, "unknown keyword '" + kw + "'");
    }
  }
  if (points.empty()) throw ParseError(points_line ? points_line : 1, 1, "no points declared");

  std::vector<Arrow> resolved;
  for (const auto& a : arrows) {
    auto find = [&](const std::string& p, int col) {
      auto it = std::find(points.begin(), points.end(), p);
      if (it == points.end()) throw ParseError(a.line, col, "undeclared point '" + p + "'");
      return static_cast<int>(it - points.begin());
    };
    resolved.push_back({a.name, find(a.src, a.col_src), find(a.tgt, a.col_tgt)});
  }
  ParsedInput out;
  out.quiver.name = name;
  out.quiver.quiver = Quiver(points, resolved);
  out.quiver.field_char = static_cast<std::uint32_t>(field);
  for (const auto& r : rels)
    out.quiver.relations.push_back(detail::RelationParser(r.expr, r.line, r.col, out.quiver.quiver, out.quiver.field_char).parse());
  out.truncation_given = truncation != 0;
  out.quiver.truncation = truncation != 0 ? truncation : std::max(2, static_cast<int>(out.quiver.longest_branch()) + 2);
  return out;
}

inline ParsedInput read_bound_quiver(const std::string& filename) {
  std::ifstream f(filename);
  if (!f) throw ParseError(0, 0, "cannot open " + filename);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_bound_quiver(ss.str());
}

inline std::string path_string(const Quiver& q, const Path& p) {
  if (p.is_trivial()) return "e" + q.point_name(p.source);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += "*";
    s += q.arrow(p.arrows[i]).name;
  }
  return s;
}

/// Relation in the input syntax, terms in path order.
inline std::string relation_string(const Quiver& q, const LinComb& r) {
  std::string s;
  bool first = true;
  for (const auto& [p, c] : r.terms()) {
    bool neg = c.characteristic() == 0 && sgn(c.rational()) < 0;
    Scalar mag = neg ? -c : c;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (!mag.is_one()) s += mag.to_string() + "*";
    s += path_string(q, p);
    first = false;
  }
  return s;
}

/// Writes the text format; parse_bound_quiver(emit(q)) reproduces q.
inline std::string emit_bound_quiver(const BoundQuiver& bq) {
  std::ostringstream os;
  os << "quiver " << bq.name << "\n";
  os << "points";
  for (const auto& p : bq.quiver.points()) os << " " << p;
  os << "\n";
  for (const auto& a : bq.quiver.arrows())
    os << "arrow " << a.name << " " << bq.quiver.point_name(a.source) << " " << bq.quiver.point_name(a.target) << "\n";
  for (const auto& r : bq.relations) os << "rel " << relation_string(bq.quiver, r) << "\n";
  os << "truncate " << bq.truncation << "\n";
  if (bq.field_char != 0) os << "field " << bq.field_char << "\n";
  return os.str();
}

/// Walk tokens: `a1 a2 ~b2 ~b1`; a lone `e<point>` is the trivial walk.
inline Walk parse_walk(const Quiver& q, const std::string& text) {
  std::vector<Letter> letters;
  auto words = detail::split_words(text);
  if (words.size() == 1 && words[0].text.size() > 1 && words[0].text[0] == 'e' && !q.find_arrow(words[0].text))
    if (auto x = q.find_point(words[0].text.substr(1))) return Walk::trivial(*x);
  for (const auto& tok : words) {
    std::string n = tok.text;
    int sign = 1;
    if (!n.empty() && n[0] == '~') {
      sign = -1;
      n = n.substr(1);
    }
    auto a = q.find_arrow(n);
    if (!a) throw ParseError(1, tok.column, "unknown arrow '" + n + "'");
    letters.push_back({*a, sign});
  }
  if (letters.empty()) throw ParseError(1, 1, "empty walk");
  try {
    return Walk::make(q, letters);
  } catch (const Error& e) {
    throw ParseError(1, 1, e.what());
  }
}

inline std::vector<std::string> walk_tokens(const Quiver& q, const Walk& w) {
  std::vector<std::string> out;
  for (const auto& l : w.letters()) out.push_back((l.sign < 0 ? "~" : "") + q.arrow(l.arrow).name);
  return out;
}

inline std::string walk_string(const Quiver& q, const Walk& w) {
  if (w.is_trivial()) return "e" + q.point_name(w.start());
  std::string s;
  for (const auto& t : walk_tokens(q, w)) s += (s.empty() ? "" : " ") + t;
  return s;
}

/// Graphviz rendering of the quiver.
inline std::string dot_string(const Quiver& q, const std::string& name = "Q") {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (const auto& p : q.points()) os << "  \"" << p << "\";\n";
  for (const auto& a : q.arrows())
    os << "  \"" << q.point_name(a.source) << "\" -> \"" << q.point_name(a.target) << "\" [label=\"" << a.name << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace seqwalk
