// Copyright 2026 The npball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "npball/literal.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

#include "npball/errors.hpp"

namespace npball {
namespace {

class PolynomialParser {
 public:
  PolynomialParser(const std::string& text, int n) : s_(text), n_(n) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "function literal \"" << s_ << "\": " << what << " at offset " << pos_;
    throw UsageError(os.str());
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_atom() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i' || c == 'z' ||
           c == '(';
  }

  Polynomial expression() {
    Polynomial acc(n_);
    bool first = true;
    while (true) {
      char c = peek();
      double sign = 1.0;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        break;
      }
      acc = acc + term().scaled(sign);
      first = false;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos_;
        skip_space();
        const Complex d = number();
        if (d == Complex(0.0)) fail("division by zero");
        acc = acc.scaled(1.0 / d);
      } else if (starts_atom()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      const int k = std::atoi(s_.substr(start, pos_ - start).c_str());
      base = base.pow(k);
    }
    return base;
  }

  Complex number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    // an "i" directly after the digits (or after spaces) makes it imaginary,
    // unless it starts an identifier
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        !(pos_ + 1 < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return Complex(0.0, v);
    }
    return Complex(v, 0.0);
  }

  Polynomial atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return Polynomial::constant(n_, number());
    }
    if (c == 'i') {
      ++pos_;
      return Polynomial::constant(n_, Complex(0.0, 1.0));
    }
    if (c == 'z') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      int index = 1;
      if (start == pos_) {
        if (n_ != 1) fail("bare z is only allowed for n = 1; use z1..z" + std::to_string(n_));
      } else {
        index = std::atoi(s_.substr(start, pos_ - start).c_str());
      }
      if (index < 1 || index > n_) fail("variable index outside 1.." + std::to_string(n_));
      return Polynomial::variable(n_, index - 1);
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0') throw UsageError("gap literal: bad value for " + key);
  return v;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, int n) {
  if (n < 1) throw UsageError("parse_polynomial: n must be at least 1");
  if (trim(text).empty()) throw UsageError("function literal is empty");
  return PolynomialParser(text, n).parse();
}

GapLiteral parse_gap_literal(const std::string& text, int n) {
  std::vector<std::string> parts;
  std::stringstream ss(trim(text));
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(trim(part));
  if (parts.size() < 2 || parts[0] != "gap") {
    throw UsageError("gap literal must look like gap:<rule>[:key=value]...");
  }
  std::map<std::string, std::string> kv;
  for (std::size_t i = 2; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw UsageError("gap literal: expected key=value, got " + parts[i]);
    kv[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
  }
  auto take = [&](const std::string& key) -> std::optional<double> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    const double v = parse_double(key, it->second);
    kv.erase(it);
    return v;
  };

  GapLiteral out;
  out.spec.n = n;
  const std::string& rule = parts[1];
  if (rule == "f1") {
    out.spec.b.beta = 0.5 * (n + 1);
  } else if (rule == "f2") {
    const auto p1 = take("p1");
    if (!p1) throw UsageError("gap:f2 needs p1=<value>");
    if (!(*p1 > 0.0)) throw UsageError("gap:f2 needs p1 > 0");
    out.spec.b.beta = 0.5 * (1.0 + *p1);
  } else if (rule == "power") {
    const auto beta = take("beta");
    if (!beta) throw UsageError("gap:power needs beta=<value>");
    out.spec.b.beta = *beta;
  } else {
    throw UsageError("gap literal: unknown rule '" + rule + "'");
  }
  if (auto v = take("scale")) out.spec.b.scale = *v;
  if (auto v = take("base")) out.spec.m.base = static_cast<std::int64_t>(*v);
  if (auto v = take("start")) out.spec.m.start = static_cast<std::int64_t>(*v);
  out.spec.c = static_cast<double>(out.spec.m.base);
  if (auto v = take("c")) out.spec.c = *v;
  const auto K = take("K");
  if (!K) throw UsageError("gap literal needs K=<terms>");
  out.K = static_cast<int>(*K);
  if (!kv.empty()) throw UsageError("gap literal: unknown key '" + kv.begin()->first + "'");
  out.spec.truncations = {out.K};
  out.spec.validate();
  if (out.K < 1 || out.K > out.spec.max_terms()) throw UsageError("gap literal: K out of range");
  return out;
}

FunctionLiteral parse_function(const std::string& text, int n) {
  const std::string t = trim(text);
  FunctionLiteral out;
  out.text = t;
  if (!t.empty() && t[0] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("function literal: invalid JSON: ") + e.what());
    }
    try {
      if (j.contains("gap")) {
        const auto& g = j.at("gap");
        GapLiteral lit;
        lit.spec = g.get<GapSpec>();
        lit.K = g.at("K").get<int>();
        if (lit.spec.n != n) throw UsageError("function literal: gap dimension differs from --n");
        out.f = gap_function(lit.spec, lit.K);
        out.gap = lit;
        return out;
      }
      const int dim = j.value("n", n);
      if (dim != n) throw UsageError("function literal: dimension differs from --n");
      std::vector<std::pair<MultiIndex, Complex>> terms;
      for (const auto& term : j.at("terms")) {
        MultiIndex alpha = term.at("alpha").get<MultiIndex>();
        if (static_cast<int>(alpha.size()) != n) throw UsageError("function literal: alpha length");
        terms.emplace_back(std::move(alpha),
                           Complex(term.value("re", 0.0), term.value("im", 0.0)));
      }
      out.f = HoloFunction::polynomial(Polynomial(n, terms));
      return out;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("function literal: ") + e.what());
    }
  }
  if (t.rfind("gap:", 0) == 0) {
    GapLiteral lit = parse_gap_literal(t, n);
    out.f = gap_function(lit.spec, lit.K);
    out.gap = lit;
    return out;
  }
  out.f = HoloFunction::polynomial(parse_polynomial(t, n));
  return out;
}

}  // namespace npball
