#include "dihedral/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dihedral {

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (line.compare(i, 2, "->") == 0) {
      i += 2;
    } else if (std::string("+-*[]").find(line[i]) != std::string::npos) {
      ++i;
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
             std::string("+*[]").find(line[i]) == std::string::npos &&
             line.compare(i, 2, "->") != 0 && !(line[i] == '-' && i > start))
        ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

struct Parser {
  ParsedAlgebra out;
  enum class Section { Header, Generators, Differential, Pi, Involution, Tau } section =
      Section::Header;
  int pi_n = 0;
  TauSignature tau_sig;
  int line_no = 0;
  bool ring_set = false;

  [[noreturn]] void fail(int col, const std::string& msg) const { throw ParseError(line_no, col, msg); }

  AInfAlgebraDesc& a() { return out.algebra; }

  int parse_int(const Token& t) const {
    try {
      std::size_t used = 0;
      int v = std::stoi(t.text, &used);
      if (used != t.text.size()) fail(t.column, "expected integer, got '" + t.text + "'");
      return v;
    } catch (const std::logic_error&) {
      fail(t.column, "expected integer, got '" + t.text + "'");
    }
  }

  int generator(const Token& t) {
    int g = a().index_of(t.text);
    if (g < 0) throw SemanticError("line " + std::to_string(line_no) + ": unknown generator '" + t.text + "'");
    return g;
  }

  mpq_class coefficient(const Token& t) const {
    mpq_class q;
    if (q.set_str(t.text, 10) != 0) fail(t.column, "bad coefficient '" + t.text + "'");
    q.canonicalize();
    return q;
  }

  static bool numeric(const std::string& s) {
    return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])));
  }

  Combination combination(const std::vector<Token>& toks, std::size_t from) {
    Combination c;
    if (from >= toks.size()) fail(toks.empty() ? 1 : toks.back().column, "missing right-hand side");
    if (toks.size() == from + 1 && toks[from].text == "0") return c;
    std::size_t i = from;
    bool first = true;
    while (i < toks.size()) {
      int sign = 1;
      if (toks[i].text == "+" || toks[i].text == "-") {
        sign = toks[i].text == "-" ? -1 : 1;
        ++i;
      } else if (!first) {
        fail(toks[i].column, "expected '+' or '-'");
      }
      if (i >= toks.size()) fail(toks.back().column, "dangling sign");
      mpq_class coef(sign);
      if (numeric(toks[i].text)) {
        coef *= coefficient(toks[i]);
        ++i;
        if (i >= toks.size() || toks[i].text != "*") fail(toks[i - 1].column, "expected '*' after coefficient");
        ++i;
        if (i >= toks.size()) fail(toks.back().column, "expected generator");
      }
      c.emplace_back(generator(toks[i]), coef);
      ++i;
      first = false;
    }
    return normalize(std::move(c), a().ring);
  }

  std::size_t arrow(const std::vector<Token>& toks) const {
    for (std::size_t i = 0; i < toks.size(); ++i)
      if (toks[i].text == "->") return i;
    fail(toks.back().column, "expected '->'");
  }

  void section_header(const std::vector<Token>& toks) {
    const std::string& k = toks[0].text;
    if (k == "generators") {
      section = Section::Generators;
    } else if (k == "differential") {
      section = Section::Differential;
    } else if (k == "involution") {
      section = Section::Involution;
    } else if (k == "pi") {
      if (toks.size() != 2) fail(toks[0].column, "expected 'pi <n>'");
      pi_n = parse_int(toks[1]);
      if (pi_n < 0) fail(toks[1].column, "pi index must be >= 0");
      auto& f = a().pi[pi_n];
      f.arity = pi_n + 2;
      f.degree = pi_n;
      section = Section::Pi;
    } else if (k == "tau") {
      if (toks.size() < 4 || toks[2].text != "[" || toks.back().text != "]")
        fail(toks[0].column, "expected 'tau <n> [j_q .. j_1]'");
      tau_sig = {};
      tau_sig.n = parse_int(toks[1]);
      for (std::size_t i = 3; i + 1 < toks.size(); ++i) tau_sig.js.push_back(parse_int(toks[i]));
      if (!out.hu) out.hu.emplace();
      auto& f = out.hu->tau[tau_sig];
      f.arity = tau_sig.arity();
      f.degree = tau_sig.degree();
      section = Section::Tau;
    } else {
      fail(toks[0].column, "unknown section '" + k + "'");
    }
  }

  bool header_line(const std::vector<Token>& toks) {
    const std::string& k = toks[0].text;
    if (k != "name" && k != "ring" && k != "rho" && k != "truncation") return false;
    if (section != Section::Header) fail(toks[0].column, "'" + k + "' must precede all sections");
    if (toks.size() != 2 && !(k == "rho" && toks.size() == 3))
      fail(toks[0].column, "expected '" + k + " <value>'");
    if (k == "name") {
      a().name = toks[1].text;
    } else if (k == "ring") {
      try {
        a().ring = RingSpec::parse(toks[1].text);
      } catch (const Error& e) {
        throw SemanticError("line " + std::to_string(line_no) + ": " + e.what());
      }
      ring_set = true;
    } else if (k == "rho") {
      std::string v = toks[1].text;
      if (toks.size() == 3) v += toks[2].text;
      if (v == "+1" || v == "1") a().rho = 1;
      else if (v == "-1") a().rho = -1;
      else fail(toks[1].column, "rho must be +1 or -1");
    } else {
      a().truncation = parse_int(toks[1]);
    }
    return true;
  }

  void body_line(const std::vector<Token>& toks) {
    switch (section) {
      case Section::Header:
        fail(toks[0].column, "expected a header keyword or section");
      case Section::Generators: {
        if (toks.size() != 2) fail(toks[0].column, "expected '<name> <degree>'");
        if (a().index_of(toks[0].text) >= 0)
          throw SemanticError("line " + std::to_string(line_no) + ": duplicate generator " + toks[0].text);
        a().generators.push_back({toks[0].text, parse_int(toks[1])});
        break;
      }
      case Section::Differential:
      case Section::Involution: {
        std::size_t ar = arrow(toks);
        if (ar != 1) fail(toks[0].column, "expected '<generator> -> <combination>'");
        int g = generator(toks[0]);
        auto& m = section == Section::Differential ? a().differential : a().involution;
        m[g] = combination(toks, 2);
        break;
      }
      case Section::Pi:
      case Section::Tau: {
        std::size_t ar = arrow(toks);
        std::vector<int> in;
        for (std::size_t i = 0; i < ar; ++i) in.push_back(generator(toks[i]));
        Combination c = combination(toks, ar + 1);
        auto& f = section == Section::Pi ? a().pi[pi_n] : out.hu->tau[tau_sig];
        if (static_cast<int>(in.size()) != f.arity)
          fail(toks[0].column, "entry has " + std::to_string(in.size()) + " inputs, arity is " +
                                   std::to_string(f.arity));
        if (f.table.count(in)) fail(toks[0].column, "duplicate entry");
        if (!c.empty()) f.table[in] = std::move(c);
        break;
      }
    }
  }

  void line(std::string text) {
    ++line_no;
    if (auto h = text.find('#'); h != std::string::npos) text.erase(h);
    auto toks = tokenize(text);
    if (toks.empty()) return;
    if (header_line(toks)) return;
    static const char* sections[] = {"generators", "differential", "involution", "pi", "tau"};
    for (const char* s : sections)
      if (toks[0].text == s) {
        section_header(toks);
        return;
      }
    body_line(toks);
  }
};

}  // namespace

ParsedAlgebra parse_algebra(std::istream& in) {
  Parser p;
  std::string text;
  while (std::getline(in, text)) p.line(text);
  if (p.a().generators.empty() && p.line_no == 0) throw ParseError(1, 1, "empty input");
  p.a().check_consistency();
  if (p.out.hu) p.out.hu->check_consistency(p.a());
  return std::move(p.out);
}

ParsedAlgebra parse_algebra_string(const std::string& text) {
  std::istringstream in(text);
  return parse_algebra(in);
}

ParsedAlgebra parse_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open " + path);
  return parse_algebra(in);
}

namespace {

std::string combo(const AInfAlgebraDesc& a, const Combination& c) {
  if (c.empty()) return "0";
  std::string s;
  for (const auto& [g, x] : c) {
    mpq_class v = abs(x);
    s += s.empty() ? (sgn(x) < 0 ? "-" : "") : (sgn(x) < 0 ? " - " : " + ");
    if (v != 1) s += v.get_str() + "*";
    s += a.generators[g].name;
  }
  return s;
}

void table(std::ostringstream& o, const AInfAlgebraDesc& a, const MultilinearMap& f) {
  for (const auto& [in, c] : f.table) {
    o << " ";
    for (int g : in) o << " " << a.generators[g].name;
    o << " -> " << combo(a, c) << "\n";
  }
}

}  // namespace

std::string serialize_algebra(const AInfAlgebraDesc& a, const HuStructureDesc* hu) {
  std::ostringstream o;
  if (!a.name.empty()) o << "name " << a.name << "\n";
  o << "ring " << a.ring.name() << "\n";
  o << "rho " << (a.rho > 0 ? "+1" : "-1") << "\n";
  o << "truncation " << a.truncation << "\n";
  o << "generators\n";
  for (const auto& g : a.generators) o << "  " << g.name << " " << g.degree << "\n";
  if (!a.differential.empty()) {
    o << "differential\n";
    for (const auto& [g, c] : a.differential)
      o << "  " << a.generators[g].name << " -> " << combo(a, c) << "\n";
  }
  for (const auto& [n, f] : a.pi) {
    o << "pi " << n << "\n";
    table(o, a, f);
  }
  if (!a.involution.empty()) {
    o << "involution\n";
    for (const auto& [g, c] : a.involution)
      o << "  " << a.generators[g].name << " -> " << combo(a, c) << "\n";
  }
  if (hu)
    for (const auto& [s, f] : hu->tau) {
      o << "tau " << s.n << " [";
      for (int j : s.js) o << " " << j;
      o << " ]\n";
      table(o, a, f);
    }
  return o.str();
}

}  // namespace dihedral
