#include <chenciner/series.hpp>

#include <chenciner/errors.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace chenciner {

namespace {

int check_order(int order) {
  if (order < 0) throw ConfigError("series order must be nonnegative");
  return order;
}

}  // namespace

BivariateSeries::BivariateSeries(int order) : order_(check_order(order)) {}

void BivariateSeries::set(int i, int j, Rational c) {
  if (i < 0 || j < 0 || i + j > order_)
    throw ConfigError("series term exponent (" + std::to_string(i) + "," + std::to_string(j) +
                      ") exceeds truncation order " + std::to_string(order_));
  if (c == 0)
    terms_.erase({i, j});
  else
    terms_[{i, j}] = std::move(c);
}

BivariateSeries BivariateSeries::constant(const Rational& c, int order) {
  BivariateSeries s(order);
  s.set(0, 0, c);
  return s;
}

BivariateSeries BivariateSeries::variable(int which, int order) {
  if (which != 1 && which != 2) throw ConfigError("variable index must be 1 or 2");
  BivariateSeries s(order);
  s.set(which == 1 ? 1 : 0, which == 1 ? 0 : 1, Rational(1));
  return s;
}

BivariateSeries BivariateSeries::from_terms(int order, std::initializer_list<SeriesTerm> terms) {
  return from_terms(order, std::vector<SeriesTerm>(terms));
}

BivariateSeries BivariateSeries::from_terms(int order, const std::vector<SeriesTerm>& terms) {
  BivariateSeries s(order);
  for (const auto& t : terms) s.set(t.i, t.j, s.coeff(t.i, t.j) + t.coeff);
  return s;
}

Rational BivariateSeries::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

BivariateSeries BivariateSeries::truncated(int new_order) const {
  BivariateSeries out(new_order);
  for (const auto& [ij, c] : terms_)
    if (ij.first + ij.second <= new_order) out.terms_[ij] = c;
  return out;
}

BivariateSeries BivariateSeries::operator-() const {
  BivariateSeries out(order_);
  for (const auto& [ij, c] : terms_) out.terms_[ij] = -c;
  return out;
}

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
  const int order = std::min(a.order_, b.order_);
  BivariateSeries out(order);
  for (const auto& [ij, c] : a.terms_)
    if (ij.first + ij.second <= order) out.set(ij.first, ij.second, c);
  for (const auto& [ij, c] : b.terms_)
    if (ij.first + ij.second <= order) out.set(ij.first, ij.second, out.coeff(ij.first, ij.second) + c);
  return out;
}

BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) { return a + (-b); }

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
  const int order = std::min(a.order_, b.order_);
  BivariateSeries out(order);
  for (const auto& [ija, ca] : a.terms_) {
    for (const auto& [ijb, cb] : b.terms_) {
      const int i = ija.first + ijb.first;
      const int j = ija.second + ijb.second;
      if (i + j > order) continue;
      out.set(i, j, out.coeff(i, j) + ca * cb);
    }
  }
  return out;
}

BivariateSeries operator*(const Rational& c, const BivariateSeries& a) {
  BivariateSeries out(a.order_);
  if (c == 0) return out;
  for (const auto& [ij, ca] : a.terms_) out.terms_[ij] = c * ca;
  return out;
}

bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
  return a.order_ == b.order_ && a.terms_ == b.terms_;
}

BivariateSeries BivariateSeries::compose(const BivariateSeries& sub1,
                                         const BivariateSeries& sub2) const {
  if (sub1.coeff(0, 0) != 0 || sub2.coeff(0, 0) != 0)
    throw ConfigError("composition requires substitutions with zero constant term");
  const int order = std::min({order_, sub1.order_, sub2.order_});

  int max_i = 0, max_j = 0;
  for (const auto& [ij, c] : terms_) {
    max_i = std::max(max_i, ij.first);
    max_j = std::max(max_j, ij.second);
  }

  const BivariateSeries one = constant(Rational(1), order);
  std::vector<BivariateSeries> pow1{one}, pow2{one};
  for (int i = 1; i <= max_i; ++i) pow1.push_back(pow1.back() * sub1.truncated(order));
  for (int j = 1; j <= max_j; ++j) pow2.push_back(pow2.back() * sub2.truncated(order));

  BivariateSeries out(order);
  for (const auto& [ij, c] : terms_) {
    // A substitution with zero constant term contributes nothing beyond the
    // truncation order once its monomial degree alone exceeds it.
    if (ij.first + ij.second > order) continue;
    out = out + c * (pow1[ij.first] * pow2[ij.second]);
  }
  return out;
}

BivariateSeries BivariateSeries::reciprocal() const {
  const Rational c0 = coeff(0, 0);
  if (c0 == 0) throw GenericityError("series reciprocal requires a nonzero constant term");
  // 1/(c0(1+u)) with u = s/c0 - 1: geometric sum of (-u)^p, p <= order.
  const BivariateSeries u = Rational(1) / c0 * *this - constant(Rational(1), order_);
  BivariateSeries sum = constant(Rational(1), order_);
  BivariateSeries upow = constant(Rational(1), order_);
  for (int p = 1; p <= order_; ++p) {
    upow = upow * (-u);
    sum = sum + upow;
  }
  return Rational(1) / c0 * sum;
}

BivariateSeries BivariateSeries::derivative(int var) const {
  if (var != 1 && var != 2) throw ConfigError("derivative variable must be 1 or 2");
  BivariateSeries out(std::max(order_ - 1, 0));
  for (const auto& [ij, c] : terms_) {
    const int e = var == 1 ? ij.first : ij.second;
    if (e == 0) continue;
    const int i = var == 1 ? ij.first - 1 : ij.first;
    const int j = var == 1 ? ij.second : ij.second - 1;
    if (i + j > out.order_) continue;
    out.set(i, j, out.coeff(i, j) + Rational(e) * c);
  }
  return out;
}

double BivariateSeries::eval(double x1, double x2) const {
  double sum = 0.0;
  for (const auto& [ij, c] : terms_)
    sum += to_double(c) * std::pow(x1, ij.first) * std::pow(x2, ij.second);
  return sum;
}

Rational BivariateSeries::eval_exact(const Rational& x1, const Rational& x2) const {
  auto power = [](const Rational& base, int e) {
    Rational p(1);
    for (int n = 0; n < e; ++n) p *= base;
    return p;
  };
  Rational sum(0);
  for (const auto& [ij, c] : terms_) sum += c * power(x1, ij.first) * power(x2, ij.second);
  return sum;
}

std::string BivariateSeries::str(std::string_view name1, std::string_view name2) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [ij, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    const bool bare = ij.first == 0 && ij.second == 0;
    if (mag != 1 || bare) {
      out << fraction_string(mag);
      if (!bare) out << "*";
    }
    if (ij.first > 0) {
      out << name1;
      if (ij.first > 1) out << "^" << ij.first;
      if (ij.second > 0) out << "*";
    }
    if (ij.second > 0) {
      out << name2;
      if (ij.second > 1) out << "^" << ij.second;
    }
  }
  return out.str();
}

// Literal parser. Grammar, whitespace-insensitive:
//   series := [+|-] term ((+|-) term)*
//   term   := coeff | coeff '*' factors | factors
//   factors:= var ['^' int] ('*' var ['^' int])*
//   coeff  := int | int '/' int | decimal | '(' coeff ')'
namespace {

struct Lexer {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ConfigError("series literal: " + what + " at offset " + std::to_string(pos) + " in \"" +
                      std::string(text) + "\"");
  }

  std::string number() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      ++pos;
    }
    // Exponent tail of a decimal, e.g. "1e-3".
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E') && pos > start) {
      size_t mark = pos + 1;
      if (mark < text.size() && (text[mark] == '+' || text[mark] == '-')) ++mark;
      if (mark < text.size() && std::isdigit(static_cast<unsigned char>(text[mark]))) {
        pos = mark;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      }
    }
    if (pos == start) fail("expected a number");
    return std::string(text.substr(start, pos - start));
  }

  std::string identifier() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    if (pos == start) fail("expected a variable name");
    return std::string(text.substr(start, pos - start));
  }

  int integer() {
    const std::string n = number();
    if (n.find_first_not_of("0123456789") != std::string::npos) fail("expected an integer");
    return std::stoi(n);
  }

  Rational coefficient() {
    if (consume('(')) {
      Rational q = coefficient();
      if (!consume(')')) fail("expected ')'");
      return q;
    }
    Rational q = rational_from_string(number());
    if (consume('/')) q /= rational_from_string(number());
    return q;
  }
};

int var_index(const std::string& name, const std::vector<std::string>& var1,
              const std::vector<std::string>& var2) {
  if (std::find(var1.begin(), var1.end(), name) != var1.end()) return 1;
  if (std::find(var2.begin(), var2.end(), name) != var2.end()) return 2;
  return 0;
}

}  // namespace

BivariateSeries BivariateSeries::parse(std::string_view text, int order,
                                       const std::vector<std::string>& var1,
                                       const std::vector<std::string>& var2) {
  Lexer lex{text};
  BivariateSeries out(order);
  bool negate = lex.consume('-');
  if (!negate) lex.consume('+');
  if (lex.eof()) lex.fail("empty series");

  while (true) {
    Rational c(1);
    int i = 0, j = 0;
    bool saw_factor = false;

    const char head = lex.peek();
    if (std::isdigit(static_cast<unsigned char>(head)) || head == '(' || head == '.') {
      c = lex.coefficient();
      saw_factor = true;
      if (lex.consume('*')) saw_factor = false;  // factors follow
    }
    if (!saw_factor || (!lex.eof() && lex.peek() != '+' && lex.peek() != '-')) {
      while (true) {
        const std::string name = lex.identifier();
        const int which = var_index(name, var1, var2);
        if (which == 0) lex.fail("unknown variable \"" + name + "\"");
        int e = 1;
        if (lex.consume('^')) e = lex.integer();
        (which == 1 ? i : j) += e;
        if (!lex.consume('*')) break;
        // A trailing numeric factor ("a1*2") is accepted for symmetry.
        const char next = lex.peek();
        if (std::isdigit(static_cast<unsigned char>(next)) || next == '(' || next == '.') {
          c *= lex.coefficient();
          if (!lex.consume('*')) break;
        }
      }
    }
    if (negate) c = -c;
    if (i + j > order)
      lex.fail("term degree " + std::to_string(i + j) + " exceeds order " + std::to_string(order));
    out.set(i, j, out.coeff(i, j) + c);

    if (lex.eof()) break;
    if (lex.consume('+'))
      negate = false;
    else if (lex.consume('-'))
      negate = true;
    else
      lex.fail("expected '+' or '-'");
  }
  return out;
}

}  // namespace chenciner
