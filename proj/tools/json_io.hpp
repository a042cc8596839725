#pragma once
// JSON/CSV serialization and the small expression grammars used by the CLI:
// rationals (including exact decimals like "0.2" and "1e-6"), sums of
// rational multiples of log(<integer>), weight descriptors, radical literals
// like "5/7^1/2", matrices, tower specifications, and per-level tables.
//
// Conventions: exact integers and rationals travel as strings ("num/den"),
// floating approximations are rounded to 12 significant digits, and every
// numeric object carries its exact form whenever the value is a rational
// combination of logarithms of primes (an "exact" string plus a "terms"
// list); values outside that algebra keep is_exact with the approximation.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "northcott/errors.hpp"
#include "northcott/estimator.hpp"
#include "northcott/galois.hpp"
#include "northcott/heights.hpp"
#include "northcott/loglinear.hpp"
#include "northcott/matrix_heights.hpp"
#include "northcott/radical.hpp"
#include "northcott/tower.hpp"
#include "northcott/value.hpp"
#include "northcott/weights.hpp"

namespace northcott::io {

using json = nlohmann::ordered_json;

// --- numeric formatting ----------------------------------------------------

// Round to 12 significant digits so serialized floats are stable.
inline double approx12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline json z_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

inline mpz_class z_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  fail(ErrorCode::InvalidInput, std::string(what) + ": expected an integer");
}

// --- rationals -------------------------------------------------------------

// "a/b", "a", or an exact decimal with optional exponent ("0.2", "1e-6").
inline mpq_class parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) fail(ErrorCode::InvalidInput, "empty rational literal");
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find('E') == std::string::npos) {
    try {
      mpq_class q(s);
      if (q.get_den() == 0) fail(ErrorCode::InvalidInput, "zero denominator in: " + text);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      fail(ErrorCode::InvalidInput, "bad rational literal: " + text);
    }
  }
  // Exact decimal: sign, digits, optional fraction, optional exponent.
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
  std::string digits;
  long frac_len = 0;
  bool seen_digit = false, seen_dot = false;
  for (; pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.');
       ++pos) {
    if (s[pos] == '.') {
      if (seen_dot) fail(ErrorCode::InvalidInput, "bad decimal literal: " + text);
      seen_dot = true;
    } else {
      digits.push_back(s[pos]);
      seen_digit = true;
      if (seen_dot) ++frac_len;
    }
  }
  if (!seen_digit) fail(ErrorCode::InvalidInput, "bad decimal literal: " + text);
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    if (pos >= s.size()) fail(ErrorCode::InvalidInput, "bad exponent in: " + text);
    long e = 0;
    for (; pos < s.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(s[pos]))) {
        fail(ErrorCode::InvalidInput, "bad exponent in: " + text);
      }
      e = e * 10 + (s[pos] - '0');
      if (e > 1000000) fail(ErrorCode::InvalidInput, "exponent out of range: " + text);
    }
    exp10 = eneg ? -e : e;
  }
  if (pos != s.size()) fail(ErrorCode::InvalidInput, "bad rational literal: " + text);
  mpz_class mant(digits.empty() ? "0" : digits);
  long net = exp10 - frac_len;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  mpq_class q = net < 0 ? mpq_class(mant, pow10) : mpq_class(mant * pow10);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

inline mpq_class q_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorCode::InvalidInput, std::string(what) + ": expected \"num/den\"");
}

// --- exact log-linear values ----------------------------------------------

// Human-readable exact form: "0", "log(2)", "log(7)/2", "3*log(2)/4",
// terms joined with " + " / " - ".
inline std::string ll_to_string(const LogLinear& l) {
  if (l.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : l.terms()) {
    mpz_class num = c.get_num();
    mpz_class den = c.get_den();
    bool neg = num < 0;
    mpz_class mag = abs(num);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "log(" + p.get_str() + ")";
    if (den != 1) out += "/" + den.get_str();
    first = false;
  }
  return out;
}

inline json ll_to_json(const LogLinear& l) {
  json terms = json::array();
  for (const auto& [p, c] : l.terms()) {
    terms.push_back(json::array({z_json(p), c.get_str()}));
  }
  json j;
  j["terms"] = std::move(terms);
  j["exact"] = ll_to_string(l);
  j["approx"] = approx12(l.is_zero() ? 0.0 : l.eval(192).mid());
  return j;
}

inline LogLinear ll_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    fail(ErrorCode::InvalidInput, "expected an object with a terms array");
  }
  LogLinear out;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 2) {
      fail(ErrorCode::InvalidInput, "each term must be [prime, \"num/den\"]");
    }
    mpz_class p = z_from_json(t[0], "term prime");
    out += LogLinear::log_of_prime(p, q_from_json(t[1], "term coefficient"));
  }
  return out;
}

// Exact value plus approximation. Rational and log-linear quantities carry
// their exact forms; anything else keeps is_exact and the approximation.
inline json quantity_to_json(const Quantity& q) {
  json j;
  j["is_exact"] = q.is_exact();
  if (q.is_exact() && q.den_is_one()) {
    if (auto r = q.num().as_rational()) {
      j["exact"] = r->get_str();
    } else if (auto l = q.num().as_loglinear()) {
      j["exact"] = ll_to_string(*l);
      json terms = json::array();
      for (const auto& [p, c] : l->terms()) {
        terms.push_back(json::array({z_json(p), c.get_str()}));
      }
      j["terms"] = std::move(terms);
    }
  }
  j["approx"] = approx12(q.approx());
  return j;
}

// --- expression grammars ---------------------------------------------------

namespace grammar {

struct Term {
  bool negative = false;
  std::string body;  // the term with surrounding whitespace removed
};

// Split "a + b - c" into signed top-level terms. A sign directly after
// 'e'/'E' belongs to a decimal exponent; a sign before any term content is
// the leading sign of that term.
inline std::vector<Term> split_terms(const std::string& expr) {
  std::vector<Term> out;
  std::string cur;  // accumulated term body, whitespace dropped
  bool neg = false;
  int depth = 0;
  auto flush = [&]() {
    if (cur.empty()) fail(ErrorCode::InvalidInput, "empty term in: " + expr);
    out.push_back(Term{neg, cur});
    cur.clear();
  };
  for (std::size_t i = 0; i < expr.size(); ++i) {
    char ch = expr[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      bool in_exponent = !cur.empty() && (cur.back() == 'e' || cur.back() == 'E');
      if (!in_exponent) {
        if (cur.empty()) {
          if (!out.empty()) fail(ErrorCode::InvalidInput, "dangling sign in: " + expr);
          if (ch == '-') neg = !neg;  // leading sign of the first term
        } else {
          flush();
          neg = ch == '-';
        }
        continue;
      }
    }
    cur.push_back(ch);
  }
  flush();
  return out;
}

// One term of a log expression: [<rat>*]log(<int>)[/<int>], or a plain
// rational when allow_rational is set.
struct LogTerm {
  bool is_log = false;
  mpq_class coeff = 1;   // rational coefficient (log terms) or the value itself
  mpz_class argument = 1;  // the integer under the log
};

inline LogTerm parse_log_term(const std::string& body, bool allow_rational) {
  LogTerm out;
  std::string s = body;
  std::size_t lp = s.find("log(");
  if (lp == std::string::npos) {
    if (!allow_rational) {
      fail(ErrorCode::InvalidInput, "expected a log(<integer>) term, got: " + body);
    }
    out.coeff = parse_rational(s);
    return out;
  }
  out.is_log = true;
  mpq_class coeff = 1;
  if (lp > 0) {
    if (s[lp - 1] != '*') {
      fail(ErrorCode::InvalidInput, "expected <rational>*log(...) in: " + body);
    }
    coeff = parse_rational(s.substr(0, lp - 1));
  }
  std::size_t rp = s.find(')', lp);
  if (rp == std::string::npos) fail(ErrorCode::InvalidInput, "missing ')' in: " + body);
  std::string inner = s.substr(lp + 4, rp - lp - 4);
  if (inner.empty()) fail(ErrorCode::InvalidInput, "empty log argument in: " + body);
  mpz_class n;
  try {
    n = mpz_class(inner);
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::InvalidInput, "log argument must be an integer: " + body);
  }
  if (n < 2) fail(ErrorCode::InvalidInput, "log argument must be at least 2: " + body);
  std::string tail = s.substr(rp + 1);
  if (!tail.empty()) {
    if (tail[0] != '/' || tail.size() < 2) {
      fail(ErrorCode::InvalidInput, "unexpected trailing text in: " + body);
    }
    mpq_class d = parse_rational(tail.substr(1));
    if (d <= 0) fail(ErrorCode::InvalidInput, "division by a nonpositive value in: " + body);
    coeff /= d;
  }
  coeff.canonicalize();
  out.coeff = coeff;
  out.argument = n;
  return out;
}

}  // namespace grammar

// Sum of rational multiples of logs of integers, e.g. "log(2)",
// "3*log(2)/4 + log(5)".
inline LogLinear parse_log_expr(const std::string& expr) {
  LogLinear out;
  for (const auto& term : grammar::split_terms(expr)) {
    grammar::LogTerm t = grammar::parse_log_term(term.body, /*allow_rational=*/false);
    mpq_class c = term.negative ? mpq_class(-t.coeff) : t.coeff;
    LogLinear piece = LogLinear::log_of_rational(mpq_class(t.argument));
    piece *= c;
    out += piece;
  }
  return out;
}

// Bound expression: sum of log terms and exact rational/decimal terms,
// e.g. "0.2", "log(2) + 1e-6".
inline Quantity parse_bound_expr(const std::string& expr) {
  Quantity out = Quantity::from_rational(0);
  for (const auto& term : grammar::split_terms(expr)) {
    grammar::LogTerm t = grammar::parse_log_term(term.body, /*allow_rational=*/true);
    mpq_class sign(term.negative ? -1 : 1);
    if (t.is_log) {
      LogLinear piece = LogLinear::log_of_rational(mpq_class(t.argument));
      piece *= t.coeff * sign;
      out = out + Quantity::from_loglinear(piece);
    } else {
      out = out + Quantity::from_rational(t.coeff * sign);
    }
  }
  return out;
}

// --- weights ---------------------------------------------------------------

// Descriptor grammar: const:<rat>, gamma:<rat>, gamma-over-log:<rat>,
// gamma-times-log:<rat>, dobrowolski, over-log-squared, self-power-decay.
inline Weight parse_weight_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string param = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto need_param = [&]() {
    if (param.empty()) fail(ErrorCode::InvalidInput, "weight " + head + " needs a parameter");
    return parse_rational(param);
  };
  if (head == "const") return Weight::constant(need_param());
  if (head == "gamma") return Weight::power(need_param());
  if (head == "gamma-over-log") return Weight::power_over_log(need_param());
  if (head == "gamma-times-log") return Weight::power_times_log(need_param());
  if (!param.empty()) fail(ErrorCode::InvalidInput, "weight " + head + " takes no parameter");
  if (head == "dobrowolski") return Weight::dobrowolski();
  if (head == "over-log-squared") return Weight::over_log_squared();
  if (head == "self-power-decay") return Weight::self_power_decay();
  fail(ErrorCode::InvalidInput, "unknown weight descriptor: " + spec);
}

inline json weight_to_json(const Weight& w) {
  json j;
  switch (w.kind()) {
    case Weight::Kind::Constant:
      j["kind"] = "const";
      j["value"] = w.parameter().get_str();
      break;
    case Weight::Kind::PowerGamma:
      j["kind"] = "gamma";
      j["gamma"] = w.parameter().get_str();
      break;
    case Weight::Kind::PowerOverLog:
      j["kind"] = "gamma-over-log";
      j["gamma"] = w.parameter().get_str();
      break;
    case Weight::Kind::PowerTimesLog:
      j["kind"] = "gamma-times-log";
      j["gamma"] = w.parameter().get_str();
      break;
    case Weight::Kind::Dobrowolski:
      j["kind"] = "dobrowolski";
      break;
    case Weight::Kind::OverLogSquared:
      j["kind"] = "over-log-squared";
      break;
    case Weight::Kind::SelfPowerDecay:
      j["kind"] = "self-power-decay";
      break;
    case Weight::Kind::Staircase: {
      j["kind"] = "staircase";
      json steps = json::array();
      for (const auto& [d, h] : w.staircase_table()) {
        steps.push_back(json::array({z_json(d), ll_to_json(h)}));
      }
      j["steps"] = std::move(steps);
      j["tail"] = w.staircase_tail() == StairTail::HoldLast ? "hold" : "none";
      j["unit_below_first"] = w.staircase_unit_below_first();
      break;
    }
  }
  j["display"] = w.to_string();
  return j;
}

inline Weight weight_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    fail(ErrorCode::InvalidInput, "weight JSON needs a kind field");
  }
  std::string kind = j["kind"].get<std::string>();
  auto param = [&](const char* key) {
    if (!j.contains(key)) fail(ErrorCode::InvalidInput, "weight JSON missing " + std::string(key));
    return q_from_json(j[key], key);
  };
  if (kind == "const") return Weight::constant(param("value"));
  if (kind == "gamma") return Weight::power(param("gamma"));
  if (kind == "gamma-over-log") return Weight::power_over_log(param("gamma"));
  if (kind == "gamma-times-log") return Weight::power_times_log(param("gamma"));
  if (kind == "dobrowolski") return Weight::dobrowolski();
  if (kind == "over-log-squared") return Weight::over_log_squared();
  if (kind == "self-power-decay") return Weight::self_power_decay();
  if (kind == "staircase") {
    if (!j.contains("steps") || !j["steps"].is_array()) {
      fail(ErrorCode::InvalidInput, "staircase weight needs a steps array");
    }
    std::map<mpz_class, LogLinear> steps;
    for (const auto& s : j["steps"]) {
      if (!s.is_array() || s.size() != 2) {
        fail(ErrorCode::InvalidInput, "each step must be [degree, height]");
      }
      steps[z_from_json(s[0], "step degree")] = ll_from_json(s[1]);
    }
    StairTail tail = StairTail::HoldLast;
    if (j.contains("tail")) {
      std::string t = j["tail"].get<std::string>();
      if (t == "hold") {
        tail = StairTail::HoldLast;
      } else if (t == "none") {
        tail = StairTail::None;
      } else {
        fail(ErrorCode::InvalidInput, "staircase tail must be hold or none");
      }
    }
    bool unit = j.contains("unit_below_first") && j["unit_below_first"].get<bool>();
    return Weight::staircase(std::move(steps), tail, unit);
  }
  fail(ErrorCode::InvalidInput, "unknown weight kind: " + kind);
}

// Weight argument: a descriptor string, or @file pointing at weight JSON.
inline Weight parse_weight_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) fail(ErrorCode::InvalidInput, "cannot open weight file " + arg.substr(1));
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      fail(ErrorCode::InvalidInput, std::string("bad weight JSON: ") + e.what());
    }
    // Accept either a bare weight object or a report wrapping one.
    if (j.is_object() && !j.contains("kind") && j.contains("weight")) j = j["weight"];
    return weight_from_json(j);
  }
  return parse_weight_spec(arg);
}

// --- radicals --------------------------------------------------------------

// "5/7^1/2" -> (5/7)^(1/2); a plain rational stands for itself.
inline RadicalMonomial parse_radical_literal(const std::string& text) {
  auto caret = text.find('^');
  if (caret == std::string::npos) {
    mpq_class r = parse_rational(text);
    if (r == 0) fail(ErrorCode::InvalidInput, "radical literal must be nonzero");
    return RadicalMonomial::from_rational(r);
  }
  mpq_class base = parse_rational(text.substr(0, caret));
  mpq_class expo = parse_rational(text.substr(caret + 1));
  return RadicalMonomial::rational_power(base, expo);
}

inline json radical_to_json(const RadicalMonomial& a) {
  json j;
  j["zeta"] = json::array({a.zeta_order(), a.zeta_exp()});
  j["scalar"] = a.scalar().get_str();
  json factors = json::array();
  for (const auto& [p, e] : a.exponents()) {
    factors.push_back(json::array({z_json(p), e.get_str()}));
  }
  j["factors"] = std::move(factors);
  return j;
}

inline RadicalMonomial radical_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidInput, "radical JSON must be an object");
  unsigned long zo = 1, ze = 0;
  if (j.contains("zeta")) {
    const auto& z = j["zeta"];
    if (!z.is_array() || z.size() != 2) {
      fail(ErrorCode::InvalidInput, "zeta must be [order, exponent]");
    }
    zo = z[0].get<unsigned long>();
    ze = z[1].get<unsigned long>();
  }
  mpq_class scalar = j.contains("scalar") ? q_from_json(j["scalar"], "scalar") : mpq_class(1);
  RadicalMonomial::Exponents exps;
  if (j.contains("factors")) {
    for (const auto& f : j["factors"]) {
      if (!f.is_array() || f.size() != 2) {
        fail(ErrorCode::InvalidInput, "each factor must be [prime, \"num/den\"]");
      }
      exps[z_from_json(f[0], "factor prime")] = q_from_json(f[1], "factor exponent");
    }
  }
  return RadicalMonomial::from_parts(zo, ze, scalar, exps);
}

// --- matrices --------------------------------------------------------------

inline StructuredMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("shape")) {
    fail(ErrorCode::InvalidInput, "matrix JSON needs a shape field");
  }
  std::string shape = j["shape"].get<std::string>();
  if (shape == "rational") {
    if (!j.contains("rows") || !j["rows"].is_array()) {
      fail(ErrorCode::InvalidInput, "rational matrix needs a rows array");
    }
    RationalDense m;
    for (const auto& row : j["rows"]) {
      if (!row.is_array()) fail(ErrorCode::InvalidInput, "each row must be an array");
      std::vector<mpq_class> r;
      for (const auto& e : row) r.push_back(q_from_json(e, "matrix entry"));
      m.rows.push_back(std::move(r));
    }
    return StructuredMatrix{std::move(m)};
  }
  if (shape == "diagonal") {
    if (!j.contains("entries") || !j["entries"].is_array()) {
      fail(ErrorCode::InvalidInput, "diagonal matrix needs an entries array");
    }
    RadicalDiagonal m;
    for (const auto& e : j["entries"]) m.entries.push_back(radical_from_json(e));
    return StructuredMatrix{std::move(m)};
  }
  if (shape == "companion") {
    if (!j.contains("n") || !j.contains("alpha")) {
      fail(ErrorCode::InvalidInput, "companion matrix needs n and alpha");
    }
    CompanionBlock m;
    m.n = j["n"].get<unsigned long>();
    m.alpha = radical_from_json(j["alpha"]);
    return StructuredMatrix{std::move(m)};
  }
  fail(ErrorCode::InvalidInput, "unknown matrix shape: " + shape);
}

// --- tower specifications --------------------------------------------------

inline json tower_spec_to_json(const TowerSpec& spec) {
  json j;
  j["c"] = ll_to_json(spec.c);
  j["n"] = spec.n;
  j["weight"] = weight_to_json(spec.w);
  j["d0"] = z_json(spec.d0);
  j["d1_above_n"] = spec.d1_above_n;
  json levels = json::array();
  for (const LevelRecord& lvl : spec.levels) {
    json l;
    l["index"] = lvl.index;
    l["d"] = z_json(lvl.d);
    l["p"] = z_json(lvl.p);
    l["q"] = z_json(lvl.q);
    l["big_d"] = z_json(lvl.big_d);
    l["threshold_log"] = quantity_to_json(lvl.threshold_log);
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  return j;
}

// Rebuilds the tower from its defining data and confirms the recorded level
// primes match; serialized thresholds are advisory, the rebuilt exact values
// are authoritative.
inline TowerSpec tower_spec_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidInput, "tower spec must be a JSON object");
  for (const char* key : {"c", "n", "weight", "levels"}) {
    if (!j.contains(key)) {
      fail(ErrorCode::InvalidInput, std::string("tower spec missing field ") + key);
    }
  }
  LogLinear c = ll_from_json(j["c"]);
  unsigned long n = j["n"].get<unsigned long>();
  Weight w = weight_from_json(j["weight"]);
  bool d1_above_n = j.contains("d1_above_n") && j["d1_above_n"].get<bool>();
  const json& levels = j["levels"];
  if (!levels.is_array() || levels.empty()) {
    fail(ErrorCode::InvalidInput, "tower spec needs a nonempty levels array");
  }
  TowerSpec spec = build_tower(c, n, w, levels.size(), d1_above_n);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const json& l = levels[i];
    const LevelRecord& built = spec.levels[i];
    auto check = [&](const char* key, const mpz_class& want) {
      if (!l.contains(key)) {
        fail(ErrorCode::InvalidInput,
             "level " + std::to_string(i + 1) + " missing field " + key);
      }
      mpz_class got = z_from_json(l[key], key);
      if (got != want) {
        fail(ErrorCode::N0Violation,
             "level " + std::to_string(i + 1) + " field " + key + " = " + got.get_str() +
                 " does not match the rebuilt value " + want.get_str());
      }
    };
    check("d", built.d);
    check("p", built.p);
    check("q", built.q);
    if (l.contains("big_d")) check("big_d", built.big_d);
  }
  return spec;
}

inline TowerSpec load_tower_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open tower spec " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput, std::string("bad tower spec JSON: ") + e.what());
  }
  return tower_spec_from_json(j);
}

// --- per-level tables and reports -----------------------------------------

inline std::string bracket_to_csv(const TowerSpec& spec, const NorBracket& br) {
  std::ostringstream out;
  out << "i,d,p,q,lower,upper\n";
  for (const NorBracketLevel& lvl : br.levels) {
    const LevelRecord& rec = spec.levels[lvl.index - 1];
    out << lvl.index << ',' << rec.d.get_str() << ',' << rec.p.get_str() << ','
        << rec.q.get_str() << ',' << format12(lvl.lower.approx()) << ','
        << format12(lvl.upper.approx()) << '\n';
  }
  return out.str();
}

inline json enumeration_to_json(unsigned long max_degree, const Quantity& bound,
                                const EnumerationResult& res) {
  json j;
  j["degree_cap"] = max_degree;
  j["bound"] = quantity_to_json(bound);
  j["total"] = res.total;
  json elems = json::array();
  for (const BoundedElement& e : res.elements) {
    json el;
    json coeffs = json::array();
    for (const mpz_class& c : e.min_poly.coeffs()) coeffs.push_back(z_json(c));
    el["min_poly"] = std::move(coeffs);
    el["degree"] = e.min_poly.degree();
    el["root_count"] = e.root_count;
    elems.push_back(std::move(el));
  }
  j["elements"] = std::move(elems);
  return j;
}

inline json census_to_json(const SubgroupCensus& c) {
  json j;
  j["d"] = c.d;
  j["subgroup_count"] = c.subgroups.size();
  json counts = json::array();
  for (const auto& [order, count] : c.counts) {
    counts.push_back(json::array({order, count}));
  }
  j["counts"] = std::move(counts);
  j["unique_order_d"] = c.unique_order_d;
  j["d_many_order_dm1"] = c.d_many_order_dm1;
  j["divisible_contains_kernel"] = c.divisible_contains_kernel;
  j["coprime_inside_stabilizer"] = c.coprime_inside_stabilizer;
  j["kernel_is_translations"] = c.kernel_is_translations;
  return j;
}

inline json family_report_to_json(const FamilyWeightReport& rep) {
  json j;
  j["weight"] = weight_to_json(rep.weight);
  j["heights_at_least_one"] = rep.heights_at_least_one;
  j["equality_on_minima"] = rep.equality_on_minima;
  return j;
}

inline std::vector<FamilySample> family_samples_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::InvalidInput, "samples must be a JSON array");
  std::vector<FamilySample> out;
  for (const auto& s : j) {
    if (!s.is_object() || !s.contains("degree") || !s.contains("height")) {
      fail(ErrorCode::InvalidInput, "each sample needs degree and height fields");
    }
    FamilySample fs;
    fs.degree = z_from_json(s["degree"], "sample degree");
    if (s["height"].is_string()) {
      fs.height = parse_log_expr(s["height"].get<std::string>());
    } else {
      fs.height = ll_from_json(s["height"]);
    }
    out.push_back(std::move(fs));
  }
  return out;
}

inline json nor_bracket_to_json(const NorBracket& br) {
  json j;
  json levels = json::array();
  for (const NorBracketLevel& lvl : br.levels) {
    json l;
    l["index"] = lvl.index;
    l["lower"] = quantity_to_json(lvl.lower);
    l["upper"] = quantity_to_json(lvl.upper);
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["lower_estimate"] = quantity_to_json(br.lower_estimate);
  j["upper_estimate"] = quantity_to_json(br.upper_estimate);
  return j;
}

inline json opnorth_report_to_json(const OpNorthReport& rep) {
  json j;
  j["n"] = rep.n;
  json levels = json::array();
  for (const OpNorthLevel& lvl : rep.levels) {
    json l;
    l["index"] = lvl.index;
    l["value"] = quantity_to_json(lvl.value);
    l["matches_closed_form"] = lvl.matches_closed_form;
    l["above_half_floor"] = lvl.above_half_floor;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["half_floor"] = quantity_to_json(rep.half_floor);
  j["bracket"] = nor_bracket_to_json(rep.nor);
  return j;
}

inline json spectral_report_to_json(const PropSpectralReport& rep) {
  json j;
  j["n"] = rep.n;
  json levels = json::array();
  for (const PropSpectralLevel& lvl : rep.levels) {
    json l;
    l["index"] = lvl.index;
    l["bracket_lower"] = quantity_to_json(lvl.bracket_lower);
    l["bracket_upper"] = quantity_to_json(lvl.bracket_upper);
    l["rhs"] = quantity_to_json(lvl.rhs);
    l["upper_within"] = lvl.upper_within;
    l["equality"] = lvl.equality;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["left_constant_known"] = rep.left_constant_known;
  if (rep.left_constant_known) j["left_constant"] = quantity_to_json(rep.left_constant);
  j["bracket"] = nor_bracket_to_json(rep.nor);
  return j;
}

// --- file helpers ----------------------------------------------------------

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidInput, std::string("bad JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::InvalidInput, "failed writing " + path);
}

inline void write_json(const std::string& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace northcott::io
