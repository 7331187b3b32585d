#pragma once

// Umbral Bernoulli (B), Euler (E) and uniform (U) symbols, evaluated only
// through their exponential generating functions:
//
//   e^{tB} = t / (e^t - 1),   e^{tE} = 2 / (e^t + 1),   e^{tU} = (e^t - 1) / t.
//
// A SymbolCombo is x + sum_i c_i S_i^{(p_i)}; every listed term is an
// independent symbol group, and order p means a sum of p independent copies.
// Its moment (x + sum c_i S_i)^n is n! [w^n] of the product of the factors.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "loopwalk/report.hpp"
#include "loopwalk/series.hpp"

namespace loopwalk {

enum class SymbolKind { Bernoulli, Euler, Uniform };

inline char symbol_letter(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Bernoulli: return 'B';
    case SymbolKind::Euler: return 'E';
    case SymbolKind::Uniform: return 'U';
  }
  return '?';
}

struct SymbolTerm {
  SymbolKind kind;
  std::size_t order = 1;
  Rational scale = 1;

  friend bool operator==(const SymbolTerm&, const SymbolTerm&) = default;
};

struct SymbolCombo {
  Rational offset = 0;
  std::vector<SymbolTerm> terms;

  /// Union of independent term lists; offsets add.
  friend SymbolCombo operator+(SymbolCombo a, const SymbolCombo& b) {
    a.offset += b.offset;
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
  }
  friend bool operator==(const SymbolCombo&, const SymbolCombo&) = default;
};

/// EGF of a single symbol S with argument scaled by c: e^{c w S}.
inline Series symbol_egf(SymbolKind kind, const Rational& c, std::size_t order) {
  switch (kind) {
    case SymbolKind::Bernoulli:
      return reciprocal(exprel_series(c, order));
    case SymbolKind::Euler: {
      // (e^{cw} + 1) / 2 = 1 + (c/2) w * exprel(cw)
      Series half_sum = multiply_by_w_power(exprel_series(c, order) * (c / 2), 1).truncated(order);
      half_sum[0] = 1;
      return reciprocal(half_sum);
    }
    case SymbolKind::Uniform:
      return exprel_series(c, order);
  }
  throw PreconditionError("unknown symbol kind");
}

inline Series combo_egf(const SymbolCombo& combo, std::size_t order) {
  Series egf = exp_series(combo.offset, order);
  for (const auto& term : combo.terms) {
    if (term.scale == 0 || term.order == 0) continue;
    egf *= pow(symbol_egf(term.kind, term.scale, order), term.order);
  }
  return egf;
}

inline Rational combo_moment(const SymbolCombo& combo, std::size_t n) {
  return egf_coeff(combo_egf(combo, n), n);
}

inline VerificationReport verify_symbol_identity(const SymbolCombo& lhs, const SymbolCombo& rhs,
                                                 std::size_t order) {
  return compare_series(combo_egf(lhs, order), combo_egf(rhs, order));
}

/// Canonical text form, e.g. "1/3 + 2*B^1 - E^3". Parses back with parse_combo().
inline std::string to_string(const SymbolCombo& combo) {
  std::string out;
  auto append_signed = [&out](const Rational& value, const std::string& body) {
    if (out.empty()) {
      if (value < 0) out += "-";
    } else {
      out += value < 0 ? " - " : " + ";
    }
    out += body;
  };
  if (combo.offset != 0 || combo.terms.empty()) {
    append_signed(combo.offset, to_string(Rational(abs(combo.offset))));
  }
  for (const auto& term : combo.terms) {
    Rational magnitude = abs(term.scale);
    std::string body = magnitude == 1 ? "" : to_string(magnitude) + "*";
    body += symbol_letter(term.kind);
    body += "^" + std::to_string(term.order);
    append_signed(term.scale, body);
  }
  return out;
}

/// Parses a combo expression.
///
///   combo  := ['+'|'-'] term (('+'|'-') term)*
///   term   := rational | [rational '*'] atom
///   atom   := 'x' | ('B'|'E'|'U') ['^' order]
///
/// 'x' stands for the supplied value of x. Whitespace is ignored. Example:
/// "x + 2*B^1 + E^3 - 1/2*U".
inline SymbolCombo parse_combo(std::string_view text, const Rational& x = 0) {
  std::string src;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) src += c;
  }
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("combo '" + std::string(text) + "': " + what + " at position " +
                      std::to_string(pos));
  };
  auto read_digits = [&]() {
    std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    return src.substr(start, pos - start);
  };

  SymbolCombo combo;
  if (src.empty()) throw fail("empty expression");
  bool first = true;
  while (pos < src.size()) {
    int sign = 1;
    if (src[pos] == '+' || src[pos] == '-') {
      sign = src[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    first = false;

    Rational coef = 1;
    bool has_coef = false;
    if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      std::string literal = read_digits();
      if (pos < src.size() && src[pos] == '/') {
        ++pos;
        std::string den = read_digits();
        if (den.empty()) throw fail("missing denominator");
        literal += "/" + den;
      }
      coef = parse_rational(literal);
      has_coef = true;
      if (pos < src.size() && src[pos] == '*') {
        ++pos;
      } else {
        combo.offset += sign * coef;
        continue;
      }
    }
    if (pos >= src.size()) throw fail(has_coef ? "missing symbol after '*'" : "missing term");
    const char atom = src[pos++];
    if (atom == 'x') {
      combo.offset += sign * coef * x;
      continue;
    }
    SymbolTerm term{SymbolKind::Bernoulli, 1, sign * coef};
    switch (atom) {
      case 'B': term.kind = SymbolKind::Bernoulli; break;
      case 'E': term.kind = SymbolKind::Euler; break;
      case 'U': term.kind = SymbolKind::Uniform; break;
      default: --pos; throw fail(std::string("unknown symbol '") + atom + "'");
    }
    if (pos < src.size() && src[pos] == '^') {
      ++pos;
      std::string digits = read_digits();
      if (digits.empty()) throw fail("missing order after '^'");
      term.order = std::stoul(digits);
      if (term.order == 0) throw fail("symbol order must be >= 1");
    }
    combo.terms.push_back(term);
  }
  return combo;
}

}  // namespace loopwalk
