#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fpure/errors.hpp"
#include "fpure/lang/ast.hpp"

namespace fpure::lang {

struct Token {
  enum class Kind { name, integer, symbol, end };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::string describe(const Token& t) {
  return t.kind == Token::Kind::end ? std::string("end of input") : "'" + t.text + "'";
}

/// Splits source text into tokens. `#` starts a comment running to the end
/// of the line.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Token::Kind::name, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::integer, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::string_view("=;[](),/*^+-").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Kind::symbol, std::string(1, static_cast<char>(c)), line, col});
      advance(1);
    } else {
      throw InputError(InputError::Kind::syntax, line, col,
                       "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
    }
  }
  out.push_back({Token::Kind::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  ProblemFile parse_file() {
    ProblemFile file;
    while (peek().kind != Token::Kind::end) file.statements.push_back(parse_statement(file));
    return file;
  }

  /// Comma-separated polynomial list over `ring`, consuming all input.
  std::vector<Polynomial> parse_polylist_only(const RingPtr& ring) {
    auto polys = parse_polylist(ring);
    if (peek().kind != Token::Kind::end) syntax("expected end of input, found " + describe(peek()));
    return polys;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_symbol(const char* s) const { return peek().kind == Token::Kind::symbol && peek().text == s; }
  bool at_name(const char* s) const { return peek().kind == Token::Kind::name && peek().text == s; }

  [[noreturn]] void syntax(const std::string& msg, const Token* at = nullptr) const {
    const Token& t = at ? *at : peek();
    throw InputError(InputError::Kind::syntax, t.line, t.column, msg);
  }
  [[noreturn]] void semantic(const Token& t, const std::string& msg) const {
    throw InputError(InputError::Kind::semantic, t.line, t.column, msg);
  }

  void expect_symbol(const char* s) {
    if (!at_symbol(s)) syntax(std::string("expected '") + s + "', found " + describe(peek()));
    next();
  }
  const Token& expect_name() {
    if (peek().kind != Token::Kind::name) syntax("expected a name, found " + describe(peek()));
    return next();
  }
  const Token& expect_integer() {
    if (peek().kind != Token::Kind::integer) syntax("expected an integer, found " + describe(peek()));
    return next();
  }

  static std::uint64_t to_u64(const Token& t, const Parser& self) {
    if (t.text.size() > 18) self.semantic(t, "integer " + t.text + " too large");
    return std::stoull(t.text);
  }

  void declare(const ProblemFile& file, const Token& name) const {
    if (file.declares(name.text)) semantic(name, "name " + name.text + " already declared");
  }

  Rational parse_rational() {
    const Token& num = expect_integer();
    BigInt n(num.text);
    BigInt d(1);
    if (at_symbol("/")) {
      next();
      const Token& den = expect_integer();
      d = BigInt(den.text);
      if (d == 0) semantic(den, "zero denominator");
    }
    return Rational(n, d);
  }

  Statement parse_statement(ProblemFile& file) {
    const Token& head = peek();
    if (head.kind != Token::Kind::name) syntax("expected a statement, found " + describe(head));
    if (head.text == "p" && peek(1).kind == Token::Kind::symbol && peek(1).text == "=") {
      next();
      next();
      const Token& v = expect_integer();
      expect_symbol(";");
      if (file.characteristic()) semantic(head, "characteristic declared twice");
      std::uint64_t p = to_u64(v, *this);
      if (p >= (std::uint64_t{1} << 32) || !is_prime_u32(p)) semantic(v, v.text + " is not prime");
      return CharDecl{p};
    }
    if (head.text == "ring") return parse_ring(file);
    if (head.text == "ideal") return parse_ideal(file);
    if (head.text == "pair") return parse_pair(file);
    if (head.text == "quotient") return parse_quotient(file);
    const auto& cmds = command_names();
    if (std::find(cmds.begin(), cmds.end(), head.text) != cmds.end()) return parse_command(file);
    syntax("unknown statement " + describe(head));
  }

  Statement parse_ring(ProblemFile& file) {
    const Token& kw = next();
    const Token& name = expect_name();
    declare(file, name);
    expect_symbol("=");
    expect_symbol("[");
    std::vector<std::string> vars;
    std::vector<const Token*> var_tokens;
    if (!at_symbol("]")) {
      var_tokens.push_back(&expect_name());
      while (at_symbol(",")) {
        next();
        var_tokens.push_back(&expect_name());
      }
    }
    expect_symbol("]");
    OrderKind kind = OrderKind::grevlex;
    if (at_name("order")) {
      next();
      const Token& ord = expect_name();
      if (!parse_order_kind(ord.text, kind)) semantic(ord, "unknown monomial order " + ord.text);
    }
    expect_symbol(";");
    auto p = file.characteristic();
    if (!p) semantic(kw, "ring declared before the characteristic");
    for (const Token* t : var_tokens) {
      if (std::find(vars.begin(), vars.end(), t->text) != vars.end()) semantic(*t, "duplicate variable " + t->text);
      vars.push_back(t->text);
    }
    current_ring_ = name.text;
    return RingDecl{name.text, make_ring(*p, std::move(vars), kind)};
  }

  Statement parse_ideal(ProblemFile& file) {
    const Token& kw = next();
    const Token& name = expect_name();
    declare(file, name);
    expect_symbol("=");
    if (current_ring_.empty()) semantic(kw, "ideal declared before any ring");
    RingPtr ring = file.ring(current_ring_);
    auto gens = parse_polylist(ring);
    expect_symbol(";");
    return IdealDecl{name.text, current_ring_, std::move(gens)};
  }

  Statement parse_pair(ProblemFile& file) {
    next();
    const Token& name = expect_name();
    declare(file, name);
    expect_symbol("=");
    PairDecl decl{name.text, {}};
    for (;;) {
      expect_symbol("(");
      const Token& base = expect_name();
      if (!file.find<IdealDecl>(base.text)) semantic(base, "unknown ideal " + base.text);
      if (file.ideal(base.text).is_zero()) semantic(base, "graded system base ideal " + base.text + " is zero");
      expect_symbol(",");
      Rational t = parse_rational();
      expect_symbol(")");
      decl.factors.push_back({base.text, t});
      if (!at_symbol("*")) break;
      next();
    }
    expect_symbol(";");
    return decl;
  }

  Statement parse_quotient(ProblemFile& file) {
    next();
    const Token& name = expect_name();
    declare(file, name);
    expect_symbol("=");
    const Token& ring = expect_name();
    expect_symbol("/");
    const Token& ideal = expect_name();
    expect_symbol(";");
    if (!file.find<RingDecl>(ring.text)) semantic(ring, "unknown ring " + ring.text);
    auto idecl = file.find<IdealDecl>(ideal.text);
    if (!idecl) semantic(ideal, "unknown ideal " + ideal.text);
    if (idecl->ring_name != ring.text) semantic(ideal, "ideal " + ideal.text + " does not live in " + ring.text);
    return QuotientDecl{name.text, ring.text, ideal.text};
  }

  Statement parse_command(ProblemFile& file) {
    const Token& head = next();
    Command cmd{head.text, {}, head.line};
    if (!at_symbol(";")) {
      cmd.args.push_back(parse_arg(file));
      while (at_symbol(",")) {
        next();
        cmd.args.push_back(parse_arg(file));
      }
    }
    expect_symbol(";");
    return cmd;
  }

  CommandArg parse_arg(const ProblemFile& file) {
    if (peek().kind == Token::Kind::name && peek(1).kind == Token::Kind::symbol && peek(1).text == "=") {
      const Token& key = next();
      next();
      if (peek().kind == Token::Kind::integer) return {key.text, rational_string(parse_rational())};
      const Token& v = expect_name();
      if (!file.declares(v.text)) semantic(v, "unknown name " + v.text);
      return {key.text, v.text};
    }
    const Token& v = expect_name();
    if (!file.declares(v.text)) semantic(v, "unknown name " + v.text);
    return {"", v.text};
  }

  std::vector<Polynomial> parse_polylist(const RingPtr& ring) {
    std::vector<Polynomial> out;
    auto push = [&](Polynomial f) {
      if (!f.is_zero()) out.push_back(std::move(f));
    };
    push(parse_polynomial(ring));
    while (at_symbol(",")) {
      next();
      push(parse_polynomial(ring));
    }
    return out;
  }

  Polynomial parse_polynomial(const RingPtr& ring) {
    const PrimeField& F = ring->field();
    std::vector<Term> terms;
    bool negative = false;
    if (at_symbol("+") || at_symbol("-")) negative = next().text == "-";
    for (;;) {
      Term t = parse_term(ring);
      if (negative) t.coeff = F.neg(t.coeff);
      terms.push_back(std::move(t));
      if (!(at_symbol("+") || at_symbol("-"))) break;
      negative = next().text == "-";
    }
    return Polynomial(ring, std::move(terms));
  }

  Term parse_term(const RingPtr& ring) {
    const PrimeField& F = ring->field();
    Residue coeff = F.one();
    Monomial mono(ring->nvars());
    bool have_coeff = false;
    if (peek().kind == Token::Kind::integer) {
      const Token& c = next();
      coeff = residue_of(c.text, F);
      have_coeff = true;
      if (at_symbol("*")) {
        next();
        if (peek().kind != Token::Kind::name) syntax("expected a variable after '*', found " + describe(peek()));
      }
    }
    if (peek().kind != Token::Kind::name) {
      if (!have_coeff) syntax("expected a term, found " + describe(peek()));
      return Term{mono, coeff};
    }
    parse_factor(ring, mono);
    for (;;) {
      if (at_symbol("*")) {
        next();
        if (peek().kind != Token::Kind::name) syntax("expected a variable after '*', found " + describe(peek()));
        parse_factor(ring, mono);
      } else if (peek().kind == Token::Kind::name) {
        if (!single_letter(ring)) syntax("juxtaposition requires '*' between variables");
        parse_factor(ring, mono);
      } else {
        break;
      }
    }
    return Term{mono, coeff};
  }

  static Residue residue_of(const std::string& digits, const PrimeField& F) {
    std::uint64_t r = 0;
    for (char ch : digits) r = (r * 10 + static_cast<std::uint64_t>(ch - '0')) % F.characteristic();
    return Residue{static_cast<std::uint32_t>(r)};
  }

  static bool single_letter(const RingPtr& ring) {
    for (const std::string& v : ring->variables())
      if (v.size() != 1) return false;
    return true;
  }

  // NAME ("^" INT)?, where in single-letter rings NAME may be a run of
  // variable letters; the exponent binds to the last one.
  void parse_factor(const RingPtr& ring, Monomial& mono) {
    const Token& name = expect_name();
    std::vector<std::size_t> idx;
    if (auto i = ring->index_of(name.text); i >= 0) {
      idx.push_back(static_cast<std::size_t>(i));
    } else if (single_letter(ring)) {
      for (char ch : name.text) {
        auto j = ring->index_of(std::string(1, ch));
        if (j < 0) semantic(name, "unknown variable " + name.text);
        idx.push_back(static_cast<std::size_t>(j));
      }
    } else {
      semantic(name, "unknown variable " + name.text);
    }
    std::uint64_t e = 1;
    if (at_symbol("^")) {
      next();
      if (at_symbol("-")) semantic(peek(), "negative exponent");
      const Token& et = expect_integer();
      e = to_u64(et, *this);
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
      std::uint64_t add = (k + 1 == idx.size()) ? e : 1;
      mono[idx[k]] = checked_exponent(std::uint64_t{mono[idx[k]]} + add);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string current_ring_;
};

inline ProblemFile parse(std::string_view source) { return Parser(source).parse_file(); }

/// Parses "f1, f2, ..." over `ring`.
inline std::vector<Polynomial> parse_polynomials(const RingPtr& ring, std::string_view text) {
  return Parser(text).parse_polylist_only(ring);
}

inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  auto polys = parse_polynomials(ring, text);
  if (polys.size() > 1) throw InputError(InputError::Kind::syntax, 0, 0, "expected a single polynomial");
  return polys.empty() ? Polynomial::zero(ring) : polys.front();
}

inline Ideal parse_ideal(const RingPtr& ring, std::string_view text) {
  return Ideal(ring, parse_polynomials(ring, text));
}

}  // namespace fpure::lang
