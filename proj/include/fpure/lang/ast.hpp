#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpure/ideal_ops.hpp"

namespace fpure::lang {

struct CharDecl {
  std::uint64_t p = 0;
  friend bool operator==(const CharDecl&, const CharDecl&) = default;
};

struct RingDecl {
  std::string name;
  RingPtr ring;

  friend bool operator==(const RingDecl& a, const RingDecl& b) {
    return a.name == b.name && same_ring(a.ring, b.ring);
  }
};

struct IdealDecl {
  std::string name;
  std::string ring_name;
  std::vector<Polynomial> generators;  // canonical, nonzero
  friend bool operator==(const IdealDecl&, const IdealDecl&) = default;
};

struct PairDecl {
  struct Factor {
    std::string ideal;
    Rational exponent;
    friend bool operator==(const Factor&, const Factor&) = default;
  };
  std::string name;
  std::vector<Factor> factors;
  friend bool operator==(const PairDecl&, const PairDecl&) = default;
};

struct QuotientDecl {
  std::string name;
  std::string ring_name;
  std::string ideal_name;
  friend bool operator==(const QuotientDecl&, const QuotientDecl&) = default;
};

/// `key=value` or, with an empty key, a positional name.
struct CommandArg {
  std::string key;
  std::string value;
  friend bool operator==(const CommandArg&, const CommandArg&) = default;
};

struct Command {
  std::string name;
  std::vector<CommandArg> args;
  std::size_t line = 0;

  std::vector<std::string> positional() const {
    std::vector<std::string> out;
    for (const CommandArg& a : args)
      if (a.key.empty()) out.push_back(a.value);
    return out;
  }
  std::optional<std::string> option(const std::string& key) const {
    for (const CommandArg& a : args)
      if (a.key == key) return a.value;
    return std::nullopt;
  }

  friend bool operator==(const Command& a, const Command& b) { return a.name == b.name && a.args == b.args; }
};

using Statement = std::variant<CharDecl, RingDecl, IdealDecl, PairDecl, QuotientDecl, Command>;

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"check_fpure", "check_sharp_fpure", "compatible", "test_ideal",
                                                 "splitting_prime", "lattice", "nu", "fpt"};
  return names;
}

/// Parsed `.fpure` problem file. Statements keep source order; the lookup
/// helpers resolve names against them.
struct ProblemFile {
  std::vector<Statement> statements;

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;

  std::optional<std::uint64_t> characteristic() const {
    for (const Statement& s : statements)
      if (auto c = std::get_if<CharDecl>(&s)) return c->p;
    return std::nullopt;
  }

  template <class Decl>
  const Decl* find(const std::string& name) const {
    for (const Statement& s : statements)
      if (auto d = std::get_if<Decl>(&s); d && d->name == name) return d;
    return nullptr;
  }

  bool declares(const std::string& name) const {
    return find<RingDecl>(name) || find<IdealDecl>(name) || find<PairDecl>(name) || find<QuotientDecl>(name);
  }

  RingPtr ring(const std::string& name) const {
    if (auto d = find<RingDecl>(name)) return d->ring;
    throw UsageError("unknown ring " + name);
  }

  Ideal ideal(const std::string& name) const {
    auto d = find<IdealDecl>(name);
    if (!d) throw UsageError("unknown ideal " + name);
    return Ideal(ring(d->ring_name), d->generators);
  }

  PairSpec pair(const std::string& name) const {
    auto d = find<PairDecl>(name);
    if (!d) throw UsageError("unknown pair " + name);
    std::vector<PairSpec::Factor> fs;
    for (const auto& f : d->factors) fs.push_back({ideal(f.ideal), f.exponent});
    return PairSpec(std::move(fs));
  }

  RingPresentation quotient(const std::string& name) const {
    auto d = find<QuotientDecl>(name);
    if (!d) throw UsageError("unknown quotient " + name);
    return RingPresentation(ring(d->ring_name), ideal(d->ideal_name));
  }

  std::vector<const Command*> commands() const {
    std::vector<const Command*> out;
    for (const Statement& s : statements)
      if (auto c = std::get_if<Command>(&s)) out.push_back(c);
    return out;
  }
};

// Printing ----------------------------------------------------------------

inline std::string print_polynomial_list(const std::vector<Polynomial>& gens) {
  if (gens.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    out += gens[i].to_string();
  }
  return out;
}

struct StatementPrinter {
  std::string operator()(const CharDecl& d) const { return "p = " + std::to_string(d.p) + ";"; }
  std::string operator()(const RingDecl& d) const {
    std::string out = "ring " + d.name + " = [";
    for (std::size_t i = 0; i < d.ring->nvars(); ++i) {
      if (i) out += ", ";
      out += d.ring->variable(i);
    }
    return out + "] order " + std::string(to_string(d.ring->order().kind)) + ";";
  }
  std::string operator()(const IdealDecl& d) const {
    return "ideal " + d.name + " = " + print_polynomial_list(d.generators) + ";";
  }
  std::string operator()(const PairDecl& d) const {
    std::string out = "pair " + d.name + " = ";
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      if (i) out += " * ";
      out += "(" + d.factors[i].ideal + ", " + rational_string(d.factors[i].exponent) + ")";
    }
    return out + ";";
  }
  std::string operator()(const QuotientDecl& d) const {
    return "quotient " + d.name + " = " + d.ring_name + " / " + d.ideal_name + ";";
  }
  std::string operator()(const Command& c) const {
    std::string out = c.name;
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      out += i ? ", " : " ";
      if (!c.args[i].key.empty()) out += c.args[i].key + "=";
      out += c.args[i].value;
    }
    return out + ";";
  }
};

/// Canonical text: one statement per line.
inline std::string print(const ProblemFile& file) {
  std::string out;
  for (const Statement& s : file.statements) out += std::visit(StatementPrinter{}, s) + "\n";
  return out;
}

}  // namespace fpure::lang
