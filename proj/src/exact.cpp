#include "sfmotif/exact.hpp"

#include <charconv>
#include <sstream>

#include "sfmotif/error.hpp"

namespace sfmotif {

namespace {

std::int64_t parse_i64(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("bad rational '" + std::string(s) + "'");
  }
  return v;
}

// Appends one signed term "coef·unit" to out. unit is "" (constant), "τ" or
// "/(τ-1)".
void append_term(std::string& out, const Rational& coef, std::string_view unit) {
  if (coef.numerator() == 0) return;
  const bool negative = coef < 0;
  const Rational mag = negative ? -coef : coef;
  if (negative) {
    out += '-';
  } else if (!out.empty()) {
    out += '+';
  }
  const auto num = mag.numerator();
  const auto den = mag.denominator();
  if (unit.empty()) {
    out += std::to_string(num);
    if (den != 1) out += "/" + std::to_string(den);
  } else if (unit == "τ") {
    if (num != 1) out += std::to_string(num);
    out += "τ";
    if (den != 1) out += "/" + std::to_string(den);
  } else {
    // (num/den)/(τ-1) renders as num/(den·τ-den).
    out += std::to_string(num);
    out += "/(";
    if (den != 1) out += std::to_string(den);
    out += "τ-";
    out += std::to_string(den);
    out += ')';
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_i64(text));
  const auto den = parse_i64(text.substr(slash + 1));
  if (den == 0) throw ParseError("bad rational '" + std::string(text) + "': zero denominator");
  return Rational(parse_i64(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Tau::Tau(Rational value) : value_(value) {
  if (!(value_ > 2 && value_ < 3)) {
    throw PreconditionError("tau must lie strictly between 2 and 3, got " + to_string(value_));
  }
}

std::string to_string(const Tau& tau) { return to_string(tau.value()); }

std::string LinearInTauInv::text() const {
  std::string out;
  append_term(out, a, "");
  append_term(out, b, "/(τ-1)");
  return out.empty() ? "0" : out;
}

std::string ExponentForm::text() const {
  std::string out;
  append_term(out, c0, "");
  append_term(out, c_tau, "τ");
  append_term(out, c_inv, "/(τ-1)");
  return out.empty() ? "0" : out;
}

ExponentForm parse_exponent(std::string_view raw) {
  // Normalize the τ spellings to a single 't'.
  std::string s;
  for (std::size_t i = 0; i < raw.size();) {
    if (raw.compare(i, 3, "tau") == 0) {
      s += 't';
      i += 3;
    } else if (raw.compare(i, 2, "τ") == 0) {
      s += 't';
      i += 2;
    } else if (raw[i] == ' ') {
      ++i;
    } else {
      s += raw[i++];
    }
  }
  if (s.empty()) throw ParseError("empty exponent");

  ExponentForm form{};
  std::size_t i = 0;
  auto read_int = [&](std::int64_t& v) {
    const std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (start == i) return false;
    v = parse_i64(std::string_view(s).substr(start, i - start));
    return true;
  };
  auto expect = [&](char c) {
    if (i >= s.size() || s[i] != c) throw ParseError("bad exponent '" + std::string(raw) + "'");
    ++i;
  };
  if (s == "0") return form;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::int64_t num = 1;
    const bool has_num = read_int(num);
    if (i < s.size() && s[i] == 't') {
      ++i;
      std::int64_t den = 1;
      if (i < s.size() && s[i] == '/') {
        ++i;
        if (!read_int(den)) throw ParseError("bad exponent '" + std::string(raw) + "'");
      }
      form.c_tau += Rational(sign * num, den);
    } else if (i + 1 < s.size() && s[i] == '/' && s[i + 1] == '(') {
      if (!has_num) throw ParseError("bad exponent '" + std::string(raw) + "'");
      i += 2;
      std::int64_t den = 1;
      read_int(den);
      expect('t');
      expect('-');
      std::int64_t den2 = 0;
      if (!read_int(den2) || den2 != den) throw ParseError("bad exponent '" + std::string(raw) + "'");
      expect(')');
      form.c_inv += Rational(sign * num, den);
    } else {
      if (!has_num) throw ParseError("bad exponent '" + std::string(raw) + "'");
      std::int64_t den = 1;
      if (i < s.size() && s[i] == '/') {
        ++i;
        if (!read_int(den)) throw ParseError("bad exponent '" + std::string(raw) + "'");
      }
      form.c0 += Rational(sign * num, den);
    }
  }
  return form;
}

}  // namespace sfmotif
