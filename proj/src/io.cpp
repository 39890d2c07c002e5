#include "gjac/io.hpp"

#include <regex>
#include <sstream>

#include "gjac/numtheory.hpp"

namespace gjac {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_spaces(const std::string& s) {
  std::string t;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r') t += c;
  }
  return t;
}

ParseError at_line(int line, const std::string& msg) { return ParseError("line " + std::to_string(line) + ": " + msg); }

}  // namespace

std::vector<std::pair<int, mpz_class>> parse_poly_terms(const std::string& text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty polynomial");
  static const std::regex term(R"(^(?:(\d+)(?:\*x(?:\^(\d+))?)?|x(?:\^(\d+))?)$)");
  std::vector<std::pair<int, mpz_class>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw ParseError("expected '+' or '-' in polynomial '" + text + "'");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string tok = s.substr(i, j - i);
    std::smatch m;
    if (!std::regex_match(tok, m, term)) throw ParseError("bad term '" + tok + "' in polynomial '" + text + "'");
    mpz_class c = 1;
    int e = 0;
    if (m[1].matched) {
      c.set_str(m[1].str(), 10);
      if (m[0].str().find('x') != std::string::npos) e = m[2].matched ? std::stoi(m[2].str()) : 1;
    } else {
      e = m[3].matched ? std::stoi(m[3].str()) : 1;
    }
    if (e > 10000) throw ParseError("exponent too large in '" + tok + "'");
    out.emplace_back(e, sign * c);
    i = j;
  }
  return out;
}

std::vector<std::string> split_points(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::string s = text;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t' || s[i] == '\r') {
      ++i;
      continue;
    }
    if (s[i] == '(') {
      const auto close = s.find(')', i);
      if (close == std::string::npos) throw ParseError("unbalanced '(' in '" + text + "'");
      out.push_back(strip_spaces(s.substr(i, close - i + 1)));
      i = close + 1;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '(') ++j;
    const std::string tok = s.substr(i, j - i);
    if (tok != "inf" && tok != "inf+" && tok != "inf-") throw ParseError("bad point token '" + tok + "'");
    out.push_back(tok);
    i = j;
  }
  return out;
}

CurveFile parse_curve_file(std::istream& in) {
  CurveFile f;
  bool have_curve = false;
  std::string raw;
  int n = 0;
  static const std::regex curve_re(R"(^curve\s+(Q|F(\d+))\s*:\s*y\s*\^\s*2\s*=(.*)$)");
  while (std::getline(in, raw)) {
    ++n;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.rfind("curve", 0) == 0) {
      if (have_curve) throw at_line(n, "second curve line");
      std::smatch m;
      if (!std::regex_match(line, m, curve_re)) throw at_line(n, "expected 'curve Q: y^2 = ...' or 'curve F<p>: y^2 = ...'");
      f.field_token = m[1].str();
      if (m[2].matched) {
        const std::string digits = m[2].str();
        if (digits.size() > 18) throw at_line(n, "prime too large");
        f.p = std::stoull(digits);
        if (f.p == 2) throw at_line(n, "characteristic 2 is not supported");
        if (!is_prime(f.p)) throw at_line(n, "F" + digits + ": modulus is not prime");
      }
      try {
        f.terms = parse_poly_terms(m[3].str());
      } catch (const ParseError& e) {
        throw at_line(n, e.what());
      }
      f.curve_line = line;
      have_curve = true;
      continue;
    }
    if (!have_curve) throw at_line(n, "the curve line must come first");
    try {
      if (line.rfind("glue:", 0) == 0) {
        f.glue.push_back(split_points(line.substr(5)));
      } else if (line.rfind("points:", 0) == 0) {
        for (auto& t : split_points(line.substr(7))) f.points.push_back(std::move(t));
      } else {
        throw ParseError("unknown line '" + line + "'");
      }
    } catch (const ParseError& e) {
      throw at_line(n, e.what());
    }
  }
  if (!have_curve) throw ParseError("no curve line");
  return f;
}

CurveFile parse_curve_text(const std::string& text) {
  std::istringstream in(text);
  return parse_curve_file(in);
}

}  // namespace gjac
