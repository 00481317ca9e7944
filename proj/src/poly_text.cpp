#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "ldt/poly.hpp"

namespace ldt {
namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  s = strip(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::string to_text(const SparsePolynomial& f) {
  std::ostringstream os;
  os << "q=" << f.field()->q() << " n=" << f.arity() << ";";
  if (f.is_zero()) {
    os << " 0";
    return os.str();
  }
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    os << (first ? " " : " + ") << c.idx;
    first = false;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) os << "*x" << (i + 1) << '^' << e[i];
  }
  return os.str();
}

SparsePolynomial parse_polynomial(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw std::invalid_argument("polynomial text needs a 'q=.. n=..;' header");
  std::uint64_t q = 0, n = 0;
  bool have_q = false, have_n = false;
  std::istringstream header(text.substr(0, semi));
  std::string tok;
  while (header >> tok) {
    if (tok.rfind("q=", 0) == 0) {
      q = parse_uint(std::string_view(tok).substr(2), "field order");
      have_q = true;
    } else if (tok.rfind("n=", 0) == 0) {
      n = parse_uint(std::string_view(tok).substr(2), "arity");
      have_n = true;
    } else {
      throw std::invalid_argument("unknown header token '" + tok + "'");
    }
  }
  if (!have_q || !have_n) throw std::invalid_argument("header must give both q and n");
  const auto [p, ell] = prime_power_split(q);
  auto field = make_field(p, ell);
  SparsePolynomial f(field, n);

  const std::string_view body = strip(std::string_view(text).substr(semi + 1));
  if (body.empty()) return f;
  for (std::string_view term : split(body, '+')) {
    term = strip(term);
    if (term.empty()) throw std::invalid_argument("empty term in polynomial text");
    Elem coef = Field::one();
    Exponent e(n, 0);
    for (std::string_view factor : split(term, '*')) {
      factor = strip(factor);
      if (factor.empty()) throw std::invalid_argument("empty factor in term '" + std::string(term) + "'");
      if (factor.front() == 'x') {
        const auto caret = factor.find('^');
        const auto var = parse_uint(factor.substr(1, caret == std::string_view::npos ? factor.npos : caret - 1),
                                    "variable index");
        if (var < 1 || var > n) throw std::invalid_argument("variable x" + std::to_string(var) + " out of range");
        const std::uint64_t a =
            caret == std::string_view::npos ? 1 : parse_uint(factor.substr(caret + 1), "exponent");
        e[var - 1] = static_cast<std::uint32_t>(
            reduce_exponent(reduce_exponent(e[var - 1], static_cast<std::uint32_t>(q)) + a, static_cast<std::uint32_t>(q)));
      } else {
        const auto c = parse_uint(factor, "coefficient");
        if (c >= q) throw std::invalid_argument("coefficient " + std::to_string(c) + " is not an element index");
        coef = field->mul(coef, Elem{static_cast<std::uint32_t>(c)});
      }
    }
    f.add_term(std::move(e), coef);
  }
  return f;
}

}  // namespace ldt
