#include "nctorus/spec_parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "nctorus/errors.hpp"

namespace nct {

namespace {

class Cursor {
 public:
  Cursor(std::string_view src, std::size_t base = 0) : src_(src), base_(base) {}

  std::size_t pos() const { return base_ + i_; }
  bool done() {
    skip_ws();
    return i_ >= src_.size();
  }
  char peek() {
    skip_ws();
    return i_ < src_.size() ? src_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  bool accept(std::string_view word) {
    skip_ws();
    if (src_.substr(i_, word.size()) != word) return false;
    i_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos()); }

  bool at_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  /// Unsigned decimal literal.
  double number() {
    skip_ws();
    double x = 0.0;
    const char* first = src_.data() + i_;
    const auto [ptr, ec] = std::from_chars(first, src_.data() + src_.size(), x);
    if (ec != std::errc() || !at_number()) fail("expected a number");
    i_ += static_cast<std::size_t>(ptr - first);
    return x;
  }

  std::int64_t integer() {
    skip_ws();
    std::int64_t x = 0;
    const char* first = src_.data() + i_;
    const auto [ptr, ec] = std::from_chars(first, src_.data() + src_.size(), x);
    if (ec != std::errc()) fail("expected an integer");
    i_ += static_cast<std::size_t>(ptr - first);
    return x;
  }

  /// Signed real: number, `pi`, `<number>[*]pi`.
  double real() {
    double sign = 1.0;
    while (peek() == '-' || peek() == '+') {
      if (src_[i_++] == '-') sign = -sign;
    }
    double x = 1.0;
    bool any = false;
    if (at_number()) {
      x = number();
      any = true;
    }
    const std::size_t save = i_;
    const bool star = accept('*');
    if (accept("pi")) {
      x *= kPi;
      any = true;
    } else if (star) {
      i_ = save;
    }
    if (!any) fail("expected a real number");
    return sign * x;
  }

  cplx complex_value() {
    if (accept("cis")) {
      expect('(');
      const double t = real();
      expect(')');
      return unit(t);
    }
    double sign = 1.0;
    if (accept('-')) sign = -1.0;
    else accept('+');
    if (accept('i')) return {0.0, sign};
    const double a = sign * real_unsigned();
    if (accept('i')) return {0.0, a};
    const char c = peek();
    if (c != '+' && c != '-') return {a, 0.0};
    ++i_;
    const double s = c == '-' ? -1.0 : 1.0;
    if (accept('i')) return {a, s};
    const double b = s * real_unsigned();
    expect('i');
    return {a, b};
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = i_;
    while (i_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_' || src_[i_] == '-')) {
      ++i_;
    }
    if (i_ == start) fail("expected a name");
    return src_.substr(start, i_ - start);
  }

  /// Raw text up to the next top-level ',' (parentheses nest).
  std::pair<std::string_view, std::size_t> field() {
    skip_ws();
    const std::size_t start = i_;
    int depth = 0;
    while (i_ < src_.size() && (depth > 0 || src_[i_] != ',')) {
      if (src_[i_] == '(') ++depth;
      if (src_[i_] == ')') --depth;
      ++i_;
    }
    return {src_.substr(start, i_ - start), base_ + start};
  }

 private:
  double real_unsigned() {
    const char c = peek();
    if (c == '-' || c == '+') fail("unexpected sign");
    return real();
  }
  void skip_ws() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  std::string_view src_;
  std::size_t base_;
  std::size_t i_ = 0;
};

template <class F>
auto parse_whole(std::string_view s, std::size_t base, F&& f) {
  Cursor c(s, base);
  auto v = f(c);
  c.expect_end();
  return v;
}

/// `key=value,...` with every key known and given at most once.
struct Fields {
  std::map<std::string, std::pair<std::string_view, std::size_t>, std::less<>> values;

  bool has(std::string_view k) const { return values.find(k) != values.end(); }
  double real(std::string_view k, double fallback) const {
    const auto it = values.find(k);
    if (it == values.end()) return fallback;
    return parse_whole(it->second.first, it->second.second, [](Cursor& c) { return c.real(); });
  }
  std::int64_t integer(std::string_view k, std::int64_t fallback) const {
    const auto it = values.find(k);
    if (it == values.end()) return fallback;
    return parse_whole(it->second.first, it->second.second, [](Cursor& c) { return c.integer(); });
  }
  cplx complex_value(std::string_view k, cplx fallback) const {
    const auto it = values.find(k);
    if (it == values.end()) return fallback;
    return parse_whole(it->second.first, it->second.second,
                       [](Cursor& c) { return c.complex_value(); });
  }
};

Fields parse_fields(Cursor& c, std::initializer_list<std::string_view> known,
                    std::initializer_list<std::string_view> required) {
  Fields out;
  if (c.done()) {
    for (auto r : required) c.fail("missing key '" + std::string(r) + "'");
    return out;
  }
  do {
    const std::size_t at = c.pos();
    const std::string key(c.identifier());
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown key '" + key + "'", at);
    }
    if (out.has(key)) throw ParseError("duplicate key '" + key + "'", at);
    c.expect('=');
    out.values.emplace(key, c.field());
  } while (c.accept(','));
  c.expect_end();
  for (auto r : required) {
    if (!out.has(r)) c.fail("missing key '" + std::string(r) + "'");
  }
  return out;
}

NCPoly word(Cursor& c, double alpha) {
  NCPoly x = NCPoly::one(alpha);
  bool any = false;
  while (true) {
    const char g = c.peek();
    if (g != 'U' && g != 'V') break;
    c.accept(g);
    std::int64_t e = 1;
    if (c.accept('^')) {
      const bool paren = c.accept('(') || c.accept('{');
      e = c.integer();
      if (paren && !c.accept(')')) c.expect('}');
    }
    x = x * (g == 'U' ? NCPoly::monomial(alpha, e, 0) : NCPoly::monomial(alpha, 0, e));
    any = true;
  }
  if (!any) c.fail("expected U, V or 1");
  return x;
}

}  // namespace

double parse_real(std::string_view s) {
  return parse_whole(s, 0, [](Cursor& c) { return c.real(); });
}

cplx parse_complex(std::string_view s) {
  return parse_whole(s, 0, [](Cursor& c) { return c.complex_value(); });
}

double parse_theta(std::string_view s) {
  Cursor c(s);
  if (c.accept("golden")) {
    c.expect_end();
    return kGoldenTheta;
  }
  if (c.accept("liouville")) {
    c.expect(':');
    const Fields f = parse_fields(c, {"levels", "seed"}, {"levels"});
    const auto levels = f.integer("levels", 4);
    return liouville_theta(static_cast<int>(levels), {Growth::Liouville, f.integer("seed", 3)}).theta;
  }
  const double x = c.real();
  c.expect_end();
  return x;
}

double parse_alpha(std::string_view s) {
  Cursor c(s);
  if (c.accept("golden")) {
    c.expect_end();
    return std::numbers::phi - 1.0;
  }
  const double x = c.real();
  if (c.accept('/')) {
    const std::size_t at = c.pos();
    const double q = c.real();
    if (q == 0.0) throw ParseError("zero denominator", at);
    c.expect_end();
    return x / q;
  }
  c.expect_end();
  return x;
}

cplx parse_lambda(std::string_view s, double theta, double nu) {
  Cursor c(s);
  if (c.accept("theta")) {
    c.expect_end();
    return unit(theta);
  }
  if (c.accept("nu")) {
    c.expect_end();
    return unit(nu);
  }
  const cplx z = c.complex_value();
  c.expect_end();
  return z;
}

Angle parse_lambda_angle(std::string_view s, double theta, double nu) {
  Cursor c(s);
  if (c.accept("theta")) {
    c.expect_end();
    return reduce(theta);
  }
  if (c.accept("nu")) {
    c.expect_end();
    return reduce(nu);
  }
  if (c.accept("cis")) {
    c.expect('(');
    const double t = c.real();
    c.expect(')');
    c.expect_end();
    return reduce(t);
  }
  const cplx z = c.complex_value();
  c.expect_end();
  if (std::abs(std::abs(z) - 1.0) > 1e-12) throw ParseError("lambda must have modulus 1", 0);
  return reduce(std::arg(z));
}

NCPoly parse_poly(std::string_view s, double alpha) {
  Cursor c(s);
  NCPoly x(alpha);
  bool first = true;
  while (!c.done()) {
    double sign = 1.0;
    if (c.accept('-')) sign = -1.0;
    else if (!c.accept('+') && !first) c.fail("expected '+' or '-'");
    first = false;

    // term := factor ('*' factor)*, factor := word | real | i | cis(..) | (complex)
    cplx coef = 1.0;
    NCPoly term = NCPoly::one(alpha);
    while (true) {
      const char g = c.peek();
      if (g == 'U' || g == 'V') {
        term = term * word(c, alpha);
      } else if (c.accept('(')) {
        coef *= c.complex_value();
        c.expect(')');
      } else if (g == 'c') {
        coef *= c.complex_value();
      } else if (c.accept('i')) {
        coef *= cplx(0.0, 1.0);
      } else if (c.at_number() || g == 'p') {
        coef *= c.real();
      } else {
        c.fail("expected a term");
      }
      if (c.accept('*')) continue;
      // A coefficient directly followed by a word binds like a product: 2UV.
      const char n = c.peek();
      if ((n == 'U' || n == 'V') && g != 'U' && g != 'V') continue;
      break;
    }
    x += term * (sign * coef);
  }
  if (first) c.fail("empty polynomial");
  return x.prune();
}

MapSpec parse_map(std::string_view s) {
  Cursor c(s);
  const std::size_t at = c.pos();
  const std::string kind(c.identifier());
  c.expect(':');
  MapSpec out;
  out.kind = kind;
  if (kind == "char") {
    const Fields f = parse_fields(c, {"z0", "w"}, {});
    const cplx z0 = f.complex_value("z0", 1.0);
    if (std::abs(std::abs(z0) - 1.0) > 1e-12) {
      throw ParseError("z0 must have modulus 1", f.values.at("z0").second);
    }
    out.f = WindingMap::character(z0, f.integer("w", 1));
  } else if (kind == "exp-sin") {
    const Fields f = parse_fields(c, {"amp", "freq", "w"}, {"amp"});
    const double amp = f.real("amp", 0.0);
    const std::int64_t freq = f.integer("freq", 1);
    if (freq <= 0) throw ParseError("freq must be positive", f.values.at("freq").second);
    TrigPoly h;
    h.set(freq, cplx(0.0, -amp / 2.0));
    h.set(-freq, cplx(0.0, amp / 2.0));
    out.f = WindingMap(f.integer("w", 0), h);
  } else if (kind == "furstenberg") {
    const Fields f = parse_fields(c, {"levels", "seed", "nu", "tilde"}, {"levels"});
    const auto levels = f.integer("levels", 4);
    if (levels < 1) throw ParseError("levels must be positive", f.values.at("levels").second);
    const double nu = f.real("nu", kDefaultNu);
    try {
      const LiouvilleAngle L =
          liouville_theta(static_cast<int>(levels), {Growth::Liouville, f.integer("seed", 3)});
      const RoughSolution g = rough_solution(L);
      const FurstenbergMap fm = furstenberg_f(L.theta, g, nu);
      out.f = f.integer("tilde", 1) != 0 ? fm.f_tilde : fm.f;
      out.theta = L.theta;
      out.nu = nu;
      out.construction = construction_json(L, g, nu, fm);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), f.values.at("levels").second);
    }
  } else {
    throw ParseError("unknown map kind '" + kind + "'", at);
  }
  return out;
}

}  // namespace nct
