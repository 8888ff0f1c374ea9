#pragma once

// Matrix ingestion (JSON / CSV, floating or exact rational) and report
// serialization. All JSON documents carry "schema": "ddsing/1". Indices in
// JSON output are 1-based.

#include "ddsing/oracle.hpp"
#include "ddsing/verdict.hpp"

#include <json.hpp>

#include <charconv>
#include <cctype>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ddsing {

using json = nlohmann::json;

inline constexpr const char* kSchema = "ddsing/1";

enum class MatrixFormat { Json, Csv };

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& msg) {
  throw Error(Errc::ParseError, where + ": " + msg);
}

inline std::string cell_where(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row + 1) + ", column " + std::to_string(col + 1);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Unsigned decimal number at the front of s; advances s.
inline std::optional<double> take_number(std::string_view& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr == s.data()) return std::nullopt;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return v;
}

// One term "[+-]number[i]" or "[+-]i". Sets `imag` when the term ends in i.
inline std::optional<double> take_term(std::string_view& s, bool& imag) {
  double sign = 1.0;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    sign = s.front() == '-' ? -1.0 : 1.0;
    s.remove_prefix(1);
  }
  imag = false;
  if (!s.empty() && s.front() == 'i') {
    s.remove_prefix(1);
    imag = true;
    return sign;
  }
  auto v = take_number(s);
  if (!v) return std::nullopt;
  if (!s.empty() && s.front() == 'i') {
    s.remove_prefix(1);
    imag = true;
  }
  return sign * *v;
}

}  // namespace detail

/// Complex literal: "a", "bi", "a+bi", "a-bi" (also "i", "-i", "1+i"), or
/// a real fraction "p/q".
inline Complex parse_complex_literal(std::string_view text, const std::string& where = "literal") {
  std::string_view s = detail::trim(text);
  if (s.empty()) detail::parse_fail(where, "empty entry");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = detail::trim(s.substr(0, slash)), den = detail::trim(s.substr(slash + 1));
    bool im = false;
    auto p = detail::take_term(num, im);
    bool im2 = false;
    auto q = detail::take_term(den, im2);
    if (!p || !q || im || im2 || !num.empty() || !den.empty() || *q == 0.0)
      detail::parse_fail(where, "malformed fraction '" + std::string(text) + "'");
    return {*p / *q, 0.0};
  }
  bool imag1 = false;
  auto first = detail::take_term(s, imag1);
  if (!first) detail::parse_fail(where, "malformed complex literal '" + std::string(text) + "'");
  Complex z = imag1 ? Complex{0.0, *first} : Complex{*first, 0.0};
  if (!s.empty()) {
    if (imag1 || (s.front() != '+' && s.front() != '-'))
      detail::parse_fail(where, "malformed complex literal '" + std::string(text) + "'");
    bool imag2 = false;
    auto second = detail::take_term(s, imag2);
    if (!second || !imag2 || !s.empty())
      detail::parse_fail(where, "malformed complex literal '" + std::string(text) + "'");
    z.imag(*second);
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) detail::parse_fail(where, "non-finite entry");
  return z;
}

/// Exact real literal: integer, "p/q", or decimal "1.25" / "-3e-2".
inline Rational parse_rational_literal(std::string_view text, const std::string& where = "literal") {
  std::string_view s = detail::trim(text);
  auto fail = [&](const char* why) { detail::parse_fail(where, std::string(why) + " '" + std::string(text) + "'"); };
  if (s.empty()) fail("empty entry");
  if (s.find('i') != std::string_view::npos) fail("exact mode accepts real entries only, got");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string num(detail::trim(s.substr(0, slash))), den(detail::trim(s.substr(slash + 1)));
    auto integral = [](const std::string& t) {
      std::size_t k = (!t.empty() && (t[0] == '+' || t[0] == '-')) ? 1 : 0;
      if (k == t.size()) return false;
      for (; k < t.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
      return true;
    };
    if (!integral(num) || !integral(den)) fail("malformed rational literal");
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    boost::multiprecision::cpp_int p(num), q(den);
    if (q == 0) fail("zero denominator in");
    return Rational(p, q);
  }

  // decimal with optional fraction and exponent
  std::size_t k = 0;
  bool negative = false;
  if (s[k] == '+' || s[k] == '-') negative = s[k++] == '-';
  std::string digits;
  long exponent = 0;
  bool any = false;
  for (; k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); ++k) digits += s[k], any = true;
  if (k < s.size() && s[k] == '.') {
    for (++k; k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); ++k) digits += s[k], --exponent, any = true;
  }
  if (!any) fail("malformed number");
  if (k < s.size() && (s[k] == 'e' || s[k] == 'E')) {
    ++k;
    long e = 0;
    auto [ptr, ec] = std::from_chars(s.data() + k + (k < s.size() && s[k] == '+'), s.data() + s.size(), e);
    if (ec != std::errc{}) fail("malformed exponent in");
    k = static_cast<std::size_t>(ptr - s.data());
    exponent += e;
  }
  if (k != s.size()) fail("trailing characters in");
  if (exponent > 4096 || exponent < -4096) fail("exponent out of range in");
  boost::multiprecision::cpp_int mant(digits), ten = 10, scale = 1;
  for (long e = 0; e < std::labs(exponent); ++e) scale *= ten;
  Rational r = exponent >= 0 ? Rational(mant * scale) : Rational(mant, scale);
  return negative ? Rational(-r) : r;
}

namespace detail {

// SAX front end that keeps the source text of floating-point literals, so
// exact mode can read "0.1" as 1/10.
class RawNumberSax {
 public:
  explicit RawNumberSax(json& root) : dom_(root, false) {}

  bool null() { return dom_.null(); }
  bool boolean(bool v) { return dom_.boolean(v); }
  bool number_integer(json::number_integer_t v) { return dom_.number_integer(v); }
  bool number_unsigned(json::number_unsigned_t v) { return dom_.number_unsigned(v); }
  bool number_float(json::number_float_t, const json::string_t& s) {
    json::string_t copy = s;
    return dom_.string(copy);
  }
  bool string(json::string_t& v) { return dom_.string(v); }
  bool binary(json::binary_t& v) { return dom_.binary(v); }
  bool start_object(std::size_t n) { return dom_.start_object(n); }
  bool key(json::string_t& k) { return dom_.key(k); }
  bool end_object() { return dom_.end_object(); }
  bool start_array(std::size_t n) { return dom_.start_array(n); }
  bool end_array() { return dom_.end_array(); }
  bool parse_error(std::size_t pos, const std::string& tok, const nlohmann::detail::exception& ex) {
    return dom_.parse_error(pos, tok, ex);
  }

 private:
  nlohmann::detail::json_sax_dom_parser<json> dom_;
};

inline json parse_json_text(std::string_view text, bool keep_raw_numbers) {
  try {
    if (!keep_raw_numbers) return json::parse(text);
    json root;
    RawNumberSax sax(root);
    json::sax_parse(text, &sax);
    return root;
  } catch (const json::exception& e) {
    parse_fail("JSON", e.what());
  }
}

inline std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

template <class T, class CellParser>
Matrix<T> parse_matrix_impl(std::string_view text, MatrixFormat format, CellParser&& cell) {
  if (format == MatrixFormat::Csv) {
    const auto rows = split_csv(text);
    const std::size_t n = rows.size();
    if (n == 0) parse_fail("CSV", "no rows");
    std::vector<T> entries;
    entries.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n)
        throw Error(Errc::DimensionMismatch, "CSV row " + std::to_string(r + 1) + " has " +
                                                 std::to_string(rows[r].size()) + " entries, expected " +
                                                 std::to_string(n));
      for (std::size_t c = 0; c < n; ++c) entries.push_back(cell(json(rows[r][c]), cell_where(r, c)));
    }
    return Matrix<T>(n, std::move(entries));
  }

  const json doc = parse_json_text(text, is_exact_v<T>);
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries"))
    parse_fail("JSON", "expected an object with \"n\" and \"entries\"");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) parse_fail("JSON", "\"n\" must be a positive integer");
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  const json& e = doc["entries"];
  if (!e.is_array()) parse_fail("JSON", "\"entries\" must be an array");
  if (e.size() != n * n)
    throw Error(Errc::DimensionMismatch, "\"entries\" has " + std::to_string(e.size()) + " items, expected n^2 = " +
                                             std::to_string(n * n));
  std::vector<T> entries;
  entries.reserve(n * n);
  for (std::size_t k = 0; k < e.size(); ++k) entries.push_back(cell(e[k], cell_where(k / n, k % n)));
  return Matrix<T>(n, std::move(entries));
}

inline double json_real(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  parse_fail(where, "expected a number");
}

}  // namespace detail

/// Parse a floating-point complex matrix. JSON entries are [re, im] pairs
/// (or bare reals, or complex literal strings); CSV cells are complex
/// literals.
inline ComplexMatrix parse_matrix(std::string_view text, MatrixFormat format) {
  return detail::parse_matrix_impl<Complex>(text, format, [](const json& v, const std::string& where) -> Complex {
    if (v.is_string()) return parse_complex_literal(v.get<std::string>(), where);
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2) return {detail::json_real(v[0], where), detail::json_real(v[1], where)};
    detail::parse_fail(where, "expected [re, im]");
  });
}

/// Parse an exact real matrix. Literals keep their decimal or p/q value
/// exactly; any nonzero imaginary part is rejected.
inline RationalMatrix parse_matrix_exact(std::string_view text, MatrixFormat format) {
  auto real_of = [](const json& v, const std::string& where) -> Rational {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return parse_rational_literal(v.get<std::string>(), where);
    detail::parse_fail(where, "expected a real literal");
  };
  return detail::parse_matrix_impl<Rational>(text, format, [&](const json& v, const std::string& where) -> Rational {
    if (v.is_array()) {
      if (v.size() != 2) detail::parse_fail(where, "expected [re, im]");
      if (real_of(v[1], where) != 0) detail::parse_fail(where, "exact mode accepts real entries only");
      return real_of(v[0], where);
    }
    return real_of(v, where);
  });
}

/// Weights: a JSON array, or comma/whitespace separated values.
template <class R>
std::vector<R> parse_weights(std::string_view text) {
  std::vector<R> out;
  const auto t = detail::trim(text);
  if (!t.empty() && t.front() == '[') {
    const json doc = detail::parse_json_text(t, std::is_same_v<R, Rational>);
    for (std::size_t k = 0; k < doc.size(); ++k) {
      const std::string where = "weight " + std::to_string(k + 1);
      if constexpr (std::is_same_v<R, Rational>)
        out.push_back(doc[k].is_string() ? parse_rational_literal(doc[k].get<std::string>(), where)
                                         : Rational(doc[k].get<long long>()));
      else
        out.push_back(detail::json_real(doc[k], where));
    }
    return out;
  }
  std::string s(t);
  for (auto& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '\t') ch = ' ';
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    const std::string where = "weight " + std::to_string(out.size() + 1);
    if constexpr (std::is_same_v<R, Rational>)
      out.push_back(parse_rational_literal(tok, where));
    else {
      const Complex z = parse_complex_literal(tok, where);
      if (z.imag() != 0.0) detail::parse_fail(where, "weights must be real");
      out.push_back(z.real());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON emission

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json complex_vector_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(complex_json(z));
  return a;
}

inline std::vector<Complex> complex_vector_from(const json& a) {
  std::vector<Complex> v;
  for (const auto& z : a) v.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  return v;
}

inline json matrix_json(const ComplexMatrix& a) {
  json entries = json::array();
  for (const auto& z : a.entries()) entries.push_back(complex_json(z));
  return {{"schema", kSchema}, {"n", a.size()}, {"entries", entries}};
}

inline json real_matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  return rows;
}

inline RealMatrix real_matrix_from(const json& rows) {
  RealMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows.at(i).at(j).get<double>();
  return m;
}

inline json one_based(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x + 1);
  return a;
}

inline std::vector<std::size_t> zero_based(const json& a) {
  std::vector<std::size_t> v;
  for (const auto& x : a) v.push_back(x.get<std::size_t>() - 1);
  return v;
}

inline json consistency_json(const ConsistencyReport& r) {
  json viol = json::array();
  for (const auto& e : r.violations)
    viol.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"residual", e.residual}, {"marginal", e.marginal}});
  return {{"max_residual", r.max_residual}, {"violations", viol}};
}

inline ConsistencyReport consistency_from(const json& j) {
  ConsistencyReport r;
  r.max_residual = j.at("max_residual").get<double>();
  for (const auto& e : j.at("violations"))
    r.violations.push_back({e.at("i").get<std::size_t>() - 1, e.at("j").get<std::size_t>() - 1,
                            e.at("residual").get<double>(), e.value("marginal", false)});
  return r;
}

inline json frobenius_json(const FrobeniusForm& f) {
  json blocks = json::array();
  for (const auto& b : f.blocks) blocks.push_back(one_based(b));
  return {{"permutation", one_based(f.permutation)},
          {"blocks", blocks},
          {"independent", f.independent},
          {"independent_count", f.independent_count},
          {"dependent_count", f.dependent_count}};
}

inline FrobeniusForm frobenius_from(const json& j) {
  FrobeniusForm f;
  f.permutation = zero_based(j.at("permutation"));
  for (const auto& b : j.at("blocks")) f.blocks.push_back(zero_based(b));
  f.independent = j.at("independent").get<std::vector<bool>>();
  f.independent_count = j.at("independent_count").get<std::size_t>();
  f.dependent_count = j.at("dependent_count").get<std::size_t>();
  return f;
}

inline json certificate_json(const SingularCertificate& c) {
  json j = {{"block", c.block + 1},
            {"gamma", complex_vector_json(c.gamma)},
            {"rho", complex_vector_json(c.rho)},
            {"rho_normalization", "p_1 = 1"},
            {"right_residual", c.right_residual},
            {"left_residual", c.left_residual},
            {"witness_residual", c.witness_residual},
            {"normalized_witness_residual", c.normalized_witness_residual},
            {"b_residual", c.b_residual},
            {"null_vector", complex_vector_json(c.null_vector)}};
  if (c.markov)
    j["markov"] = {{"diag", complex_vector_json(c.markov->diag)},
                   {"S", real_matrix_json(c.markov->S)},
                   {"residual", c.markov->residual}};
  else
    j["markov"] = nullptr;
  return j;
}

inline SingularCertificate certificate_from(const json& j) {
  SingularCertificate c;
  c.block = j.at("block").get<std::size_t>() - 1;
  c.gamma = complex_vector_from(j.at("gamma"));
  c.rho = complex_vector_from(j.at("rho"));
  c.right_residual = j.at("right_residual").get<double>();
  c.left_residual = j.at("left_residual").get<double>();
  c.witness_residual = j.at("witness_residual").get<double>();
  c.normalized_witness_residual = j.at("normalized_witness_residual").get<double>();
  c.b_residual = j.at("b_residual").get<double>();
  c.null_vector = complex_vector_from(j.at("null_vector"));
  if (!j.at("markov").is_null()) {
    const auto& m = j.at("markov");
    c.markov = MarkovDecomposition{complex_vector_from(m.at("diag")), real_matrix_from(m.at("S")),
                                   m.at("residual").get<double>()};
  }
  return c;
}

inline RowClass row_class_from(const std::string& s) {
  if (s == "strict") return RowClass::Strict;
  if (s == "weak") return RowClass::Weak;
  if (s == "violated") return RowClass::Violated;
  throw Error(Errc::ParseError, "unknown row class '" + s + "'");
}

inline BlockReason reason_from(const json& j) {
  if (j.is_null()) return BlockReason::None;
  const auto s = j.get<std::string>();
  for (auto r : {BlockReason::StrictRow, BlockReason::AngleInconsistent, BlockReason::DependentBlock})
    if (s == to_string(r)) return r;
  throw Error(Errc::ParseError, "unknown block reason '" + s + "'");
}

inline json block_json(const BlockVerdict& b) {
  json dom = json::array();
  for (auto c : b.dominance) dom.push_back(to_string(c));
  json j = {{"id", b.id + 1},
            {"independent", b.independent},
            {"size", b.size()},
            {"indices", one_based(b.indices)},
            {"verdict", b.singular ? "singular" : "nonsingular"},
            {"reason", b.reason == BlockReason::None ? json(nullptr) : json(to_string(b.reason))},
            {"dominance", dom},
            {"thetas", b.assignment ? json(b.assignment->thetas) : json(nullptr)},
            {"anchor", b.assignment ? json(b.assignment->anchor + 1) : json(nullptr)},
            {"consistency", b.angle_report ? consistency_json(*b.angle_report) : json(nullptr)},
            {"certificate", b.certificate ? json(*b.certificate + 1) : json(nullptr)}};
  if (!b.certificate_error.empty()) j["certificate_error"] = b.certificate_error;
  return j;
}

inline BlockVerdict block_from(const json& j) {
  BlockVerdict b;
  b.id = j.at("id").get<std::size_t>() - 1;
  b.independent = j.at("independent").get<bool>();
  b.indices = zero_based(j.at("indices"));
  b.singular = j.at("verdict").get<std::string>() == "singular";
  b.reason = reason_from(j.at("reason"));
  for (const auto& c : j.at("dominance")) b.dominance.push_back(row_class_from(c.get<std::string>()));
  if (!j.at("thetas").is_null())
    b.assignment = AngleAssignment{j.at("thetas").get<std::vector<double>>(), j.at("anchor").get<std::size_t>() - 1};
  if (!j.at("consistency").is_null()) b.angle_report = consistency_from(j.at("consistency"));
  if (!j.at("certificate").is_null()) b.certificate = j.at("certificate").get<std::size_t>() - 1;
  b.certificate_error = j.value("certificate_error", std::string{});
  return b;
}

inline json report_json(const MatrixVerdict& v, bool include_certificates = true) {
  json blocks = json::array();
  for (const auto& b : v.blocks) blocks.push_back(block_json(b));
  json certs = json::array();
  if (include_certificates)
    for (const auto& c : v.certificates) certs.push_back(certificate_json(c));
  return {{"schema", kSchema},
          {"applicable", v.applicable},
          {"violated_rows", one_based(v.violated_rows)},
          {"singular", v.singular},
          {"nullity", v.nullity},
          {"exact", v.exact},
          {"weighted", v.weighted},
          {"frobenius", v.form ? frobenius_json(*v.form) : json(nullptr)},
          {"blocks", blocks},
          {"certificates", certs},
          {"tolerances",
           {{"dominance", v.tolerances.tol_dom}, {"angle", v.tolerances.tol_angle}, {"residual", v.tolerances.tol_res}}}};
}

inline MatrixVerdict report_from_json(const json& j) {
  if (j.value("schema", std::string{}) != kSchema) throw Error(Errc::ParseError, "unsupported report schema");
  MatrixVerdict v;
  v.applicable = j.at("applicable").get<bool>();
  v.violated_rows = zero_based(j.at("violated_rows"));
  v.singular = j.at("singular").get<bool>();
  v.nullity = j.at("nullity").get<std::size_t>();
  v.exact = j.at("exact").get<bool>();
  v.weighted = j.at("weighted").get<bool>();
  if (!j.at("frobenius").is_null()) v.form = frobenius_from(j.at("frobenius"));
  for (const auto& b : j.at("blocks")) v.blocks.push_back(block_from(b));
  for (const auto& c : j.at("certificates")) v.certificates.push_back(certificate_from(c));
  const auto& t = j.at("tolerances");
  v.tolerances = {t.at("dominance").get<double>(), t.at("angle").get<double>(), t.at("residual").get<double>()};
  return v;
}

inline json oracle_json(const OracleResult& r, std::size_t n) {
  json basis = json::array();
  for (const auto& v : r.null_basis) basis.push_back(complex_vector_json(v));
  return {{"schema", kSchema}, {"n", n},           {"rank", r.rank},
          {"singular", r.singular(n)}, {"det", complex_json(r.det)}, {"null_basis", basis}};
}

namespace detail {

inline std::string fmt_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(6) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::fabs(z.imag()) << "i";
  return os.str();
}

}  // namespace detail

/// Human-readable summary with a per-block table.
inline std::string report_text(const MatrixVerdict& v, bool include_certificates = true) {
  std::ostringstream os;
  if (!v.applicable) {
    os << "verdict: not diagonally dominant (no verdict)\nviolated rows:";
    for (auto r : v.violated_rows) os << ' ' << r + 1;
    os << '\n';
    return os.str();
  }
  os << "verdict: " << (v.singular ? "singular" : "nonsingular") << "\n";
  os << "nullity: " << v.nullity << "\n";
  os << "mode: " << (v.exact ? "exact" : "floating") << (v.weighted ? ", column-weighted" : "") << "\n";
  os << "blocks: " << v.blocks.size() << " (" << (v.form ? v.form->independent_count : 0) << " independent)\n\n";
  os << std::left << std::setw(6) << "block" << std::setw(13) << "kind" << std::setw(6) << "size" << std::setw(13)
     << "verdict" << std::setw(20) << "reason"
     << "rows\n";
  for (const auto& b : v.blocks) {
    std::ostringstream rows;
    for (std::size_t k = 0; k < b.indices.size(); ++k) rows << (k ? "," : "") << b.indices[k] + 1;
    os << std::setw(6) << b.id + 1 << std::setw(13) << (b.independent ? "independent" : "dependent") << std::setw(6)
       << b.size() << std::setw(13) << (b.singular ? "singular" : "nonsingular") << std::setw(20)
       << (b.reason == BlockReason::None ? "-" : to_string(b.reason)) << rows.str() << "\n";
    if (!b.certificate_error.empty()) os << "      certificate error: " << b.certificate_error << "\n";
  }
  if (include_certificates)
    for (const auto& c : v.certificates) {
      os << "\ncertificate for block " << c.block + 1 << ":\n  gamma:";
      for (const auto& z : c.gamma) os << "  " << detail::fmt_complex(z);
      os << "\n  rho:  ";
      for (const auto& z : c.rho) os << "  " << detail::fmt_complex(z);
      os << std::setprecision(3) << std::scientific << "\n  residuals: right " << c.right_residual << ", left "
         << c.left_residual << ", witness " << c.witness_residual << ", B " << c.b_residual << "\n"
         << std::defaultfloat;
    }
  return os.str();
}

}  // namespace ddsing
